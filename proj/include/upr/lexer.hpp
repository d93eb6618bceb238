#pragma once

#include <array>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "upr/errors.hpp"
#include "upr/source.hpp"

namespace upr {

enum class TokKind { identifier, keyword, number, string_lit, char_lit, punct, eof };

struct Token {
  TokKind kind = TokKind::eof;
  std::string text;
  std::size_t offset = 0;  // byte offset of first char
  int line = 0;
  int col = 0;

  bool is(TokKind k) const { return kind == k; }
  bool is_punct(std::string_view p) const { return kind == TokKind::punct && text == p; }
  bool is_keyword(std::string_view k) const { return kind == TokKind::keyword && text == k; }
};

inline bool is_c_keyword(std::string_view s) {
  static const char* kw[] = {
      "auto", "break", "case", "char", "const", "continue", "default", "do",
      "double", "else", "enum", "extern", "float", "for", "goto", "if",
      "inline", "int", "long", "register", "restrict", "return", "short",
      "signed", "sizeof", "static", "struct", "switch", "typedef", "union",
      "unsigned", "void", "volatile", "while"};
  for (auto* k : kw)
    if (s == k) return true;
  return false;
}

// Tokenizes the supported C subset. Comments are skipped; preprocessor
// directives are treated as blank lines (line numbering stays intact
// because positions are byte offsets into the untouched text).
inline std::vector<Token> lex(const SourceUnit& unit) {
  // Multi-char operators, longest first.
  static const std::array<std::string_view, 19> ops3_2 = {
      "<<=", ">>=", "->", "++", "--", "<<", ">>", "<=", ">=", "==",
      "!=",  "&&",  "||", "+=", "-=", "*=", "/=", "%=", "&="};
  static const std::array<std::string_view, 2> ops2b = {"|=", "^="};

  const std::string& s = unit.text;
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = s.size();
  bool at_line_start = true;

  auto make = [&](TokKind k, std::size_t begin, std::size_t end) {
    Token t;
    t.kind = k;
    t.text = s.substr(begin, end - begin);
    t.offset = begin;
    t.line = unit.line_of(begin);
    t.col = unit.col_of(begin);
    out.push_back(std::move(t));
  };

  while (i < n) {
    char c = s[i];
    if (c == '\n') { at_line_start = true; ++i; continue; }
    if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
    if (c == '#' && at_line_start) {
      // directive: skip to end of line, honoring backslash continuations
      while (i < n && s[i] != '\n') {
        if (s[i] == '\\' && i + 1 < n && s[i + 1] == '\n') i += 2;
        else ++i;
      }
      continue;
    }
    at_line_start = false;
    if (c == '/' && i + 1 < n && s[i + 1] == '/') {
      while (i < n && s[i] != '\n') ++i;
      continue;
    }
    if (c == '/' && i + 1 < n && s[i + 1] == '*') {
      std::size_t start = i;
      i += 2;
      while (i + 1 < n && !(s[i] == '*' && s[i + 1] == '/')) ++i;
      if (i + 1 >= n)
        throw syntax_error("unterminated block comment", unit.line_of(start), unit.col_of(start));
      i += 2;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t begin = i;
      while (i < n && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      std::string_view word(&s[begin], i - begin);
      make(is_c_keyword(word) ? TokKind::keyword : TokKind::identifier, begin, i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && i + 1 < n && std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
      std::size_t begin = i;
      ++i;
      while (i < n) {
        char d = s[i];
        if (std::isalnum(static_cast<unsigned char>(d)) || d == '.' || d == '_') { ++i; continue; }
        if ((d == '+' || d == '-') && (s[i - 1] == 'e' || s[i - 1] == 'E') &&
            !(s[begin] == '0' && begin + 1 < n && (s[begin + 1] == 'x' || s[begin + 1] == 'X'))) {
          ++i;
          continue;
        }
        break;
      }
      make(TokKind::number, begin, i);
      continue;
    }
    if (c == '"' || c == '\'') {
      std::size_t begin = i;
      char quote = c;
      ++i;
      while (i < n && s[i] != quote) {
        if (s[i] == '\\' && i + 1 < n) i += 2;
        else if (s[i] == '\n') break;
        else ++i;
      }
      if (i >= n || s[i] != quote)
        throw syntax_error(quote == '"' ? "unterminated string literal" : "unterminated char literal",
                           unit.line_of(begin), unit.col_of(begin));
      ++i;
      make(quote == '"' ? TokKind::string_lit : TokKind::char_lit, begin, i);
      continue;
    }
    // operators and punctuation, longest match first
    bool matched = false;
    if (i + 2 < n) {
      std::string_view three(&s[i], 3);
      if (three == "<<=" || three == ">>=" || three == "...") {
        make(TokKind::punct, i, i + 3);
        i += 3;
        matched = true;
      }
    }
    if (!matched && i + 1 < n) {
      std::string_view two(&s[i], 2);
      for (auto op : ops3_2)
        if (op.size() == 2 && two == op) { matched = true; break; }
      if (!matched)
        for (auto op : ops2b)
          if (two == op) { matched = true; break; }
      if (matched) {
        make(TokKind::punct, i, i + 2);
        i += 2;
      }
    }
    if (!matched) {
      static const std::string singles = "+-*/%!~&|^<>=?:;,.()[]{}";
      if (singles.find(c) == std::string::npos)
        throw syntax_error(std::string("unexpected character '") + c + "'",
                           unit.line_of(i), unit.col_of(i));
      make(TokKind::punct, i, i + 1);
      ++i;
    }
  }
  Token eof;
  eof.kind = TokKind::eof;
  eof.offset = n;
  eof.line = unit.line_of(n ? n - 1 : 0);
  eof.col = 1;
  out.push_back(std::move(eof));
  return out;
}

}  // namespace upr

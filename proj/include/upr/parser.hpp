#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "upr/ast.hpp"
#include "upr/errors.hpp"
#include "upr/lexer.hpp"
#include "upr/source.hpp"

namespace upr {

// Recursive-descent parser for a practical C subset: function definitions,
// file-scope declarations, typedefs, struct/union/enum shells, and inside
// bodies: declarations, assignments (incl. compound and ++/--), calls,
// if/else, while/for/do, switch/case, return, goto/label, break/continue,
// and the usual expression forms (unary/binary/ternary, address-of,
// dereference, member and array access, casts, sizeof).
//
// Unknown-type declarations are handled with the classic heuristic: an
// identifier followed by another identifier (optionally through '*') opens
// a declaration, so `uid_t u;` parses without a typedef table entry.
class Parser {
public:
  Parser(const SourceUnit& unit) : unit_(unit), toks_(lex(unit)) {}

  UnitAst parse() {
    UnitAst out;
    while (!at(TokKind::eof)) {
      std::size_t before = pos_;
      try {
        parse_top_level(out);
      } catch (const syntax_error& e) {
        out.errors.push_back({e.what(), current_function_, e.line, e.col});
        recover_top_level(before);
      }
      if (pos_ == before && !at(TokKind::eof)) ++pos_;  // never stall
    }
    return out;
  }

private:
  const SourceUnit& unit_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::set<std::string> typedefs_;
  std::string current_function_;

  // ---- token helpers -------------------------------------------------

  const Token& tok(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  bool at(TokKind k) const { return tok().kind == k; }
  bool at_punct(std::string_view p) const { return tok().is_punct(p); }
  bool at_keyword(std::string_view k) const { return tok().is_keyword(k); }
  const Token& advance() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = tok();
    throw syntax_error(msg + " (got '" + (t.kind == TokKind::eof ? "<eof>" : t.text) + "')",
                       t.line, t.col);
  }

  const Token& expect_punct(std::string_view p) {
    if (!at_punct(p)) fail(std::string("expected '") + std::string(p) + "'");
    return advance();
  }
  const Token& expect_ident() {
    if (!at(TokKind::identifier)) fail("expected identifier");
    return advance();
  }

  std::size_t tok_end(const Token& t) const { return t.offset + t.text.size(); }

  Span span_from(const Token& first, const Token& last) const {
    Span s;
    s.begin = first.offset;
    s.end = tok_end(last);
    s.line_begin = first.line;
    s.line_end = last.line;
    return s;
  }

  // ---- declaration recognition ---------------------------------------

  static bool is_type_keyword(const Token& t) {
    if (t.kind != TokKind::keyword) return false;
    static const char* kw[] = {"void", "char",  "short",    "int",      "long",
                               "float", "double", "signed",  "unsigned", "struct",
                               "union", "enum",  "const",    "volatile", "static",
                               "extern", "register", "inline", "typedef"};
    for (auto* k : kw)
      if (t.text == k) return true;
    return false;
  }

  bool looks_like_decl() const {
    const Token& t = tok();
    if (is_type_keyword(t)) return true;
    if (t.kind != TokKind::identifier) return false;
    if (typedefs_.count(t.text)) return true;
    // ident (*)* ident  =>  treat leading ident as a type name
    std::size_t k = 1;
    while (tok(k).is_punct("*")) ++k;
    return tok(k).kind == TokKind::identifier;
  }

  // Consume declaration specifiers; returns their source text.
  std::string parse_specifiers(bool* saw_typedef = nullptr) {
    const Token& first = tok();
    std::size_t begin = pos_;
    bool any = false;
    while (true) {
      const Token& t = tok();
      if (is_type_keyword(t)) {
        if (t.text == "typedef" && saw_typedef) *saw_typedef = true;
        if (t.text == "struct" || t.text == "union" || t.text == "enum") {
          advance();
          if (at(TokKind::identifier)) advance();  // tag
          if (at_punct("{")) skip_braces();
          any = true;
          continue;
        }
        advance();
        any = true;
        continue;
      }
      if (t.kind == TokKind::identifier && !any) {
        // leading typedef-name / unknown-type heuristic
        advance();
        any = true;
        continue;
      }
      break;
    }
    if (!any) fail("expected declaration specifiers");
    std::size_t endpos = pos_ ? tok_end(toks_[pos_ - 1]) : first.offset;
    return unit_.slice(first.offset, endpos);
  }

  void skip_braces() {
    expect_punct("{");
    int depth = 1;
    while (depth > 0) {
      if (at(TokKind::eof)) fail("unbalanced '{'");
      if (at_punct("{")) ++depth;
      if (at_punct("}")) --depth;
      advance();
    }
  }

  void skip_parens() {
    expect_punct("(");
    int depth = 1;
    while (depth > 0) {
      if (at(TokKind::eof)) fail("unbalanced '('");
      if (at_punct("(")) ++depth;
      if (at_punct(")")) --depth;
      advance();
    }
  }

  // ---- top level -------------------------------------------------------

  void parse_top_level(UnitAst& out) {
    current_function_.clear();
    if (at_punct(";")) { advance(); return; }

    bool is_typedef = false;
    std::string spec_text = parse_specifiers(&is_typedef);

    // `struct foo { ... };` with no declarator
    if (at_punct(";")) { advance(); return; }

    // pointer stars belong to the declarator
    std::string stars;
    while (at_punct("*")) { stars += advance().text; }

    const Token& name_tok = expect_ident();
    std::string name = name_tok.text;

    if (is_typedef) {
      typedefs_.insert(name);
      while (!at_punct(";") && !at(TokKind::eof)) advance();
      expect_punct(";");
      return;
    }

    if (at_punct("(")) {
      // function definition or prototype
      current_function_ = name;
      std::vector<Param> params = parse_params();
      if (at_punct(";")) {
        advance();
        out.function_names.insert(name);
        current_function_.clear();
        return;
      }
      if (!at_punct("{")) fail("expected function body");
      FunctionAst fn;
      fn.name = name;
      fn.params = std::move(params);
      check_param_uniqueness(fn);
      const Token& open = tok();
      fn.body = parse_block();
      const Token& close = toks_[pos_ - 1];
      fn.span = span_from(name_tok, close);
      (void)open;
      out.function_names.insert(name);
      out.functions.push_back(std::move(fn));
      current_function_.clear();
      return;
    }

    // global variable declaration (one or more declarators)
    while (true) {
      GlobalDecl g;
      g.name = name;
      g.type_text = spec_text + stars;
      g.line = name_tok.line;
      // array suffix / initializer
      while (at_punct("[")) skip_brackets();
      if (at_punct("=")) {
        advance();
        if (at_punct("{")) skip_braces();
        else parse_assignment();
      }
      out.globals.push_back(std::move(g));
      if (at_punct(",")) {
        advance();
        stars.clear();
        while (at_punct("*")) stars += advance().text;
        const Token& next_name = expect_ident();
        name = next_name.text;
        continue;
      }
      break;
    }
    expect_punct(";");
  }

  void skip_brackets() {
    expect_punct("[");
    int depth = 1;
    while (depth > 0) {
      if (at(TokKind::eof)) fail("unbalanced '['");
      if (at_punct("[")) ++depth;
      if (at_punct("]")) --depth;
      advance();
    }
  }

  void check_param_uniqueness(const FunctionAst& fn) {
    std::set<std::string> seen;
    for (const auto& p : fn.params)
      if (!p.name.empty() && !seen.insert(p.name).second)
        throw syntax_error("duplicate parameter '" + p.name + "' in function " + fn.name,
                           fn.params.front().span.line_begin, 1);
  }

  std::vector<Param> parse_params() {
    expect_punct("(");
    std::vector<Param> params;
    if (at_punct(")")) { advance(); return params; }
    if (at_keyword("void") && tok(1).is_punct(")")) {
      advance();
      advance();
      return params;
    }
    while (true) {
      const Token& first = tok();
      std::string spec = parse_specifiers();
      std::string stars;
      while (at_punct("*")) stars += advance().text;
      Param p;
      p.type_text = spec + stars;
      if (at(TokKind::identifier)) {
        const Token& nt = advance();
        p.name = nt.text;
        p.span = span_from(first, nt);
      } else {
        p.span = span_from(first, first);  // unnamed (prototype style)
      }
      while (at_punct("[")) skip_brackets();
      params.push_back(std::move(p));
      if (at_punct(",")) { advance(); continue; }
      break;
    }
    expect_punct(")");
    return params;
  }

  void recover_top_level(std::size_t before) {
    // Skip to the end of the current top-level item: past the next balanced
    // '{...}' or past the next ';' at depth 0.
    pos_ = std::max(pos_, before);
    int depth = 0;
    while (!at(TokKind::eof)) {
      if (at_punct("{")) ++depth;
      else if (at_punct("}")) {
        --depth;
        if (depth <= 0) { advance(); return; }
      } else if (at_punct(";") && depth == 0) {
        advance();
        return;
      }
      advance();
    }
  }

  // ---- statements ------------------------------------------------------

  std::vector<StmtPtr> parse_block() {
    expect_punct("{");
    std::vector<StmtPtr> body;
    while (!at_punct("}")) {
      if (at(TokKind::eof)) fail("unterminated block");
      body.push_back(parse_statement());
    }
    advance();  // '}'
    return body;
  }

  std::vector<StmtPtr> parse_body_or_single() {
    if (at_punct("{")) return parse_block();
    std::vector<StmtPtr> body;
    body.push_back(parse_statement());
    return body;
  }

  StmtPtr parse_statement() {
    const Token& first = tok();

    if (at_punct(";")) {
      advance();
      return make_stmt(Stmt::Kind::empty, first, first);
    }
    if (at_punct("{")) {
      auto s = std::make_unique<Stmt>();
      s->kind = Stmt::Kind::block;
      const Token& open = tok();
      s->kids = parse_block();
      s->span = span_from(open, toks_[pos_ - 1]);
      return s;
    }
    if (at_keyword("if")) return parse_if();
    if (at_keyword("while")) return parse_while();
    if (at_keyword("do")) return parse_do();
    if (at_keyword("for")) return parse_for();
    if (at_keyword("switch")) return parse_switch();
    if (at_keyword("return")) {
      advance();
      auto s = std::make_unique<Stmt>();
      s->kind = Stmt::Kind::return_;
      if (!at_punct(";")) s->expr = parse_expression();
      const Token& semi = expect_punct(";");
      s->span = span_from(first, semi);
      return s;
    }
    if (at_keyword("goto")) {
      advance();
      auto s = std::make_unique<Stmt>();
      s->kind = Stmt::Kind::goto_;
      s->label = expect_ident().text;
      const Token& semi = expect_punct(";");
      s->span = span_from(first, semi);
      return s;
    }
    if (at_keyword("break") || at_keyword("continue")) {
      bool is_break = tok().text == "break";
      advance();
      const Token& semi = expect_punct(";");
      auto s = std::make_unique<Stmt>();
      s->kind = is_break ? Stmt::Kind::break_ : Stmt::Kind::continue_;
      s->span = span_from(first, semi);
      return s;
    }
    // label: identifier ':'  (but not `default:`/`case`, handled by switch)
    if (at(TokKind::identifier) && tok(1).is_punct(":")) {
      auto s = std::make_unique<Stmt>();
      s->kind = Stmt::Kind::label;
      s->label = advance().text;
      const Token& colon = advance();
      s->span = span_from(first, colon);
      return s;
    }
    if (looks_like_decl()) return parse_decl_statement();
    return parse_expr_statement();
  }

  StmtPtr make_stmt(Stmt::Kind k, const Token& first, const Token& last) {
    auto s = std::make_unique<Stmt>();
    s->kind = k;
    s->span = span_from(first, last);
    return s;
  }

  StmtPtr parse_decl_statement() {
    const Token& first = tok();
    std::string spec = parse_specifiers();
    auto s = std::make_unique<Stmt>();
    s->kind = Stmt::Kind::decl;
    s->type_text = spec;
    while (true) {
      Declarator d;
      const Token& dfirst = tok();
      std::string stars;
      while (at_punct("*")) stars += advance().text;
      const Token& name_tok = expect_ident();
      d.name = name_tok.text;
      d.name_span = span_from(name_tok, name_tok);
      while (at_punct("[")) {
        std::size_t b = tok().offset;
        skip_brackets();
        d.suffix += unit_.slice(b, tok_end(toks_[pos_ - 1]));
      }
      if (at_punct("=")) {
        advance();
        if (at_punct("{")) {
          d.init = parse_brace_init();
        } else {
          d.init = parse_assignment();
        }
      }
      d.span = span_from(dfirst, toks_[pos_ - 1]);
      (void)stars;
      s->decls.push_back(std::move(d));
      if (at_punct(",")) { advance(); continue; }
      break;
    }
    const Token& semi = expect_punct(";");
    s->span = span_from(first, semi);
    return s;
  }

  ExprPtr parse_brace_init() {
    const Token& open = tok();
    auto e = std::make_unique<Expr>();
    e->kind = Expr::Kind::init_list;
    expect_punct("{");
    if (!at_punct("}")) {
      while (true) {
        if (at_punct("{")) e->kids.push_back(parse_brace_init());
        else e->kids.push_back(parse_assignment());
        if (at_punct(",")) {
          advance();
          if (at_punct("}")) break;  // trailing comma
          continue;
        }
        break;
      }
    }
    const Token& close = expect_punct("}");
    e->span = span_from(open, close);
    return e;
  }

  StmtPtr parse_expr_statement() {
    const Token& first = tok();
    auto s = std::make_unique<Stmt>();
    s->kind = Stmt::Kind::expr;
    s->expr = parse_expression();
    const Token& semi = expect_punct(";");
    s->span = span_from(first, semi);
    return s;
  }

  StmtPtr parse_if() {
    const Token& kw = advance();  // if
    auto s = std::make_unique<Stmt>();
    s->kind = Stmt::Kind::if_;
    expect_punct("(");
    s->expr = parse_expression();
    const Token& close = expect_punct(")");
    s->head_span = span_from(kw, close);
    s->kids = parse_body_or_single();
    if (at_keyword("else")) {
      advance();
      s->else_kids = parse_body_or_single();
    }
    s->span = span_from(kw, toks_[pos_ - 1]);
    return s;
  }

  StmtPtr parse_while() {
    const Token& kw = advance();
    auto s = std::make_unique<Stmt>();
    s->kind = Stmt::Kind::while_;
    expect_punct("(");
    s->expr = parse_expression();
    const Token& close = expect_punct(")");
    s->head_span = span_from(kw, close);
    s->kids = parse_body_or_single();
    s->span = span_from(kw, toks_[pos_ - 1]);
    return s;
  }

  StmtPtr parse_do() {
    const Token& kw = advance();
    auto s = std::make_unique<Stmt>();
    s->kind = Stmt::Kind::do_;
    s->kids = parse_body_or_single();
    if (!at_keyword("while")) fail("expected 'while' after do-body");
    const Token& wkw = advance();
    expect_punct("(");
    s->expr = parse_expression();
    const Token& close = expect_punct(")");
    s->head_span = span_from(wkw, close);
    const Token& semi = expect_punct(";");
    s->span = span_from(kw, semi);
    return s;
  }

  StmtPtr parse_for() {
    const Token& kw = advance();
    auto s = std::make_unique<Stmt>();
    s->kind = Stmt::Kind::for_;
    expect_punct("(");
    // init
    if (!at_punct(";")) {
      if (looks_like_decl()) {
        s->init_stmts.push_back(parse_decl_statement());
      } else {
        const Token& ifirst = tok();
        ExprPtr e = parse_expression_no_comma_top(s->init_stmts);
        if (e) {
          auto es = std::make_unique<Stmt>();
          es->kind = Stmt::Kind::expr;
          es->expr = std::move(e);
          es->span = span_from(ifirst, toks_[pos_ - 1]);
          s->init_stmts.push_back(std::move(es));
        }
        expect_punct(";");
      }
    } else {
      advance();
    }
    // condition
    if (!at_punct(";")) {
      const Token& cfirst = tok();
      s->expr = parse_expression();
      s->head_span = span_from(cfirst, toks_[pos_ - 1]);
    }
    expect_punct(";");
    // update
    if (!at_punct(")")) {
      const Token& ufirst = tok();
      ExprPtr e = parse_expression_no_comma_top(s->update_stmts);
      if (e) {
        auto es = std::make_unique<Stmt>();
        es->kind = Stmt::Kind::expr;
        es->expr = std::move(e);
        es->span = span_from(ufirst, toks_[pos_ - 1]);
        s->update_stmts.push_back(std::move(es));
      }
    }
    expect_punct(")");
    s->kids = parse_body_or_single();
    s->span = span_from(kw, toks_[pos_ - 1]);
    return s;
  }

  // for-init/-update lists: `i = 0, j = 1` becomes separate statements so
  // the lowering stays at one simple statement per node.
  ExprPtr parse_expression_no_comma_top(std::vector<StmtPtr>& extra) {
    const Token& first = tok();
    ExprPtr e = parse_assignment();
    while (at_punct(",")) {
      auto es = std::make_unique<Stmt>();
      es->kind = Stmt::Kind::expr;
      es->expr = std::move(e);
      es->span = span_from(first, toks_[pos_ - 1]);
      extra.push_back(std::move(es));
      advance();
      e = parse_assignment();
    }
    return e;
  }

  StmtPtr parse_switch() {
    const Token& kw = advance();
    auto s = std::make_unique<Stmt>();
    s->kind = Stmt::Kind::switch_;
    expect_punct("(");
    s->expr = parse_expression();
    const Token& close = expect_punct(")");
    s->head_span = span_from(kw, close);
    expect_punct("{");
    while (!at_punct("}")) {
      if (at(TokKind::eof)) fail("unterminated switch");
      SwitchCase c;
      if (at_keyword("case")) {
        advance();
        parse_ternary();  // case label expression (constant); value unused
        expect_punct(":");
      } else if (at_keyword("default")) {
        advance();
        expect_punct(":");
        c.is_default = true;
      } else {
        fail("expected 'case' or 'default' in switch body");
      }
      // consecutive labels share one (possibly empty) body
      while (at_keyword("case") || at_keyword("default")) {
        if (at_keyword("default")) c.is_default = true;
        advance();
        if (toks_[pos_ - 1].text == "case") {
          parse_ternary();
        }
        expect_punct(":");
      }
      while (!at_keyword("case") && !at_keyword("default") && !at_punct("}")) {
        if (at(TokKind::eof)) fail("unterminated switch");
        c.body.push_back(parse_statement());
      }
      s->cases.push_back(std::move(c));
    }
    const Token& closeb = advance();
    s->span = span_from(kw, closeb);
    return s;
  }

  // ---- expressions -----------------------------------------------------

  ExprPtr parse_expression() {
    ExprPtr e = parse_assignment();
    if (!at_punct(",")) return e;
    auto seq = std::make_unique<Expr>();
    seq->kind = Expr::Kind::comma;
    seq->span = e->span;
    seq->kids.push_back(std::move(e));
    while (at_punct(",")) {
      advance();
      seq->kids.push_back(parse_assignment());
    }
    seq->span.end = seq->kids.back()->span.end;
    seq->span.line_end = seq->kids.back()->span.line_end;
    return seq;
  }

  ExprPtr parse_assignment() {
    ExprPtr lhs = parse_ternary();
    static const char* ops[] = {"=", "+=", "-=", "*=", "/=", "%=",
                                "&=", "|=", "^=", "<<=", ">>="};
    for (auto* op : ops) {
      if (at_punct(op)) {
        advance();
        auto e = std::make_unique<Expr>();
        e->kind = Expr::Kind::assign;
        e->text = op;
        e->span = lhs->span;
        e->kids.push_back(std::move(lhs));
        e->kids.push_back(parse_assignment());
        e->span.end = e->kids.back()->span.end;
        e->span.line_end = e->kids.back()->span.line_end;
        return e;
      }
    }
    return lhs;
  }

  ExprPtr parse_ternary() {
    ExprPtr cond = parse_binary(0);
    if (!at_punct("?")) return cond;
    advance();
    auto e = std::make_unique<Expr>();
    e->kind = Expr::Kind::ternary;
    e->span = cond->span;
    e->kids.push_back(std::move(cond));
    e->kids.push_back(parse_assignment());
    expect_punct(":");
    e->kids.push_back(parse_assignment());
    e->span.end = e->kids.back()->span.end;
    e->span.line_end = e->kids.back()->span.line_end;
    return e;
  }

  struct OpLevel {
    std::vector<std::string_view> ops;
  };

  static const std::vector<OpLevel>& binary_levels() {
    static const std::vector<OpLevel> levels = {
        {{"||"}},
        {{"&&"}},
        {{"|"}},
        {{"^"}},
        {{"&"}},
        {{"==", "!="}},
        {{"<", ">", "<=", ">="}},
        {{"<<", ">>"}},
        {{"+", "-"}},
        {{"*", "/", "%"}},
    };
    return levels;
  }

  ExprPtr parse_binary(std::size_t level) {
    const auto& levels = binary_levels();
    if (level >= levels.size()) return parse_unary();
    ExprPtr lhs = parse_binary(level + 1);
    while (true) {
      bool matched = false;
      for (auto op : levels[level].ops) {
        if (at_punct(op)) {
          // `&` and `*` at this point are binary: operand follows
          advance();
          auto e = std::make_unique<Expr>();
          e->kind = Expr::Kind::binary;
          e->text = std::string(op);
          e->span = lhs->span;
          e->kids.push_back(std::move(lhs));
          e->kids.push_back(parse_binary(level + 1));
          e->span.end = e->kids.back()->span.end;
          e->span.line_end = e->kids.back()->span.line_end;
          lhs = std::move(e);
          matched = true;
          break;
        }
      }
      if (!matched) return lhs;
    }
  }

  bool at_cast() const {
    // '(' followed by a type-ish token then ')' or '*...)'
    if (!at_punct("(")) return false;
    const Token& t1 = tok(1);
    bool type_ish = is_type_keyword(t1) ||
                    (t1.kind == TokKind::identifier && typedefs_.count(t1.text));
    if (!type_ish) return false;
    std::size_t k = 2;
    while (tok(k).kind == TokKind::keyword || tok(k).is_punct("*") ||
           (tok(k).kind == TokKind::identifier && typedefs_.count(tok(k).text)))
      ++k;
    return tok(k).is_punct(")");
  }

  ExprPtr parse_unary() {
    const Token& first = tok();
    if (at_punct("++") || at_punct("--")) {
      std::string op = advance().text;
      auto e = std::make_unique<Expr>();
      e->kind = Expr::Kind::incdec;
      e->text = op;
      e->prefix = true;
      e->kids.push_back(parse_unary());
      e->span = span_from(first, toks_[pos_ - 1]);
      return e;
    }
    for (const char* op : {"!", "~", "-", "+", "*", "&"}) {
      if (at_punct(op)) {
        advance();
        auto e = std::make_unique<Expr>();
        e->kind = Expr::Kind::unary;
        e->text = op;
        e->prefix = true;
        e->kids.push_back(parse_unary());
        e->span = span_from(first, toks_[pos_ - 1]);
        return e;
      }
    }
    if (at_keyword("sizeof")) {
      advance();
      auto e = std::make_unique<Expr>();
      e->kind = Expr::Kind::sizeof_expr;
      if (at_cast()) {
        const Token& open = advance();
        std::size_t b = tok().offset;
        while (!at_punct(")")) advance();
        e->text = unit_.slice(b, tok().offset);
        advance();
        (void)open;
      } else {
        e->kids.push_back(parse_unary());
      }
      e->span = span_from(first, toks_[pos_ - 1]);
      return e;
    }
    if (at_cast()) {
      advance();  // '('
      std::size_t b = tok().offset;
      while (!at_punct(")")) advance();
      std::string type_text = unit_.slice(b, tok().offset);
      advance();  // ')'
      auto e = std::make_unique<Expr>();
      e->kind = Expr::Kind::cast;
      e->text = type_text;
      e->kids.push_back(parse_unary());
      e->span = span_from(first, toks_[pos_ - 1]);
      return e;
    }
    return parse_postfix();
  }

  ExprPtr parse_postfix() {
    ExprPtr e = parse_primary();
    while (true) {
      if (at_punct("(")) {
        advance();
        auto call = std::make_unique<Expr>();
        call->kind = Expr::Kind::call;
        call->span = e->span;
        call->kids.push_back(std::move(e));
        if (!at_punct(")")) {
          while (true) {
            call->kids.push_back(parse_assignment());
            if (at_punct(",")) { advance(); continue; }
            break;
          }
        }
        const Token& close = expect_punct(")");
        call->span.end = tok_end(close);
        call->span.line_end = close.line;
        e = std::move(call);
        continue;
      }
      if (at_punct("[")) {
        advance();
        auto idx = std::make_unique<Expr>();
        idx->kind = Expr::Kind::index;
        idx->span = e->span;
        idx->kids.push_back(std::move(e));
        idx->kids.push_back(parse_expression());
        const Token& close = expect_punct("]");
        idx->span.end = tok_end(close);
        idx->span.line_end = close.line;
        e = std::move(idx);
        continue;
      }
      if (at_punct(".") || at_punct("->")) {
        bool arrow = tok().text == "->";
        advance();
        const Token& field = expect_ident();
        auto m = std::make_unique<Expr>();
        m->kind = Expr::Kind::member;
        m->text = field.text;
        m->arrow = arrow;
        m->span = e->span;
        m->span.end = tok_end(field);
        m->span.line_end = field.line;
        m->kids.push_back(std::move(e));
        e = std::move(m);
        continue;
      }
      if (at_punct("++") || at_punct("--")) {
        std::string op = advance().text;
        auto p = std::make_unique<Expr>();
        p->kind = Expr::Kind::incdec;
        p->text = op;
        p->prefix = false;
        p->span = e->span;
        p->span.end = tok_end(toks_[pos_ - 1]);
        p->kids.push_back(std::move(e));
        e = std::move(p);
        continue;
      }
      return e;
    }
  }

  ExprPtr parse_primary() {
    const Token& t = tok();
    if (t.kind == TokKind::identifier) {
      advance();
      auto e = std::make_unique<Expr>();
      e->kind = Expr::Kind::identifier;
      e->text = t.text;
      e->span = span_from(t, t);
      return e;
    }
    if (t.kind == TokKind::number || t.kind == TokKind::string_lit ||
        t.kind == TokKind::char_lit) {
      advance();
      auto e = std::make_unique<Expr>();
      e->kind = t.kind == TokKind::number    ? Expr::Kind::number
                : t.kind == TokKind::string_lit ? Expr::Kind::string_lit
                                               : Expr::Kind::char_lit;
      e->text = t.text;
      e->span = span_from(t, t);
      return e;
    }
    if (t.is_punct("(")) {
      advance();
      ExprPtr e = parse_expression();
      expect_punct(")");
      return e;
    }
    fail("expected expression");
  }
};

inline UnitAst parse_unit(const SourceUnit& unit) { return Parser(unit).parse(); }

}  // namespace upr

#pragma once

#include <stdexcept>
#include <string>

namespace upr {

// Lexing/parsing failure with a source location. Parsing is fault-isolated
// per function: parse_unit catches these, records them, and moves on.
class syntax_error : public std::runtime_error {
public:
  syntax_error(const std::string& msg, int line, int col)
      : std::runtime_error(msg), line(line), col(col) {}
  int line;
  int col;
};

// Structural failure while flattening an AST into simple statements,
// e.g. a goto whose label does not exist.
class lowering_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A rating reply with no usable integer in 0..10.
class reply_parse_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Provider unreachable (or closed-world replay miss) after retries.
class transport_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Too many statements ended flagged for the run to be trusted.
class provider_failure : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace upr

#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

namespace upr {

// Byte span [begin, end) plus 1-based line range.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
  int line_begin = 0;
  int line_end = 0;
};

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

// Single tagged node type; `text` holds the identifier/literal/operator/
// field/cast-type depending on kind. Small enough here that a class
// hierarchy would just be ceremony.
struct Expr {
  enum class Kind {
    identifier,   // text = name
    number,       // text = literal
    string_lit,   // text = literal incl. quotes
    char_lit,     // text = literal incl. quotes
    unary,        // text = op; kids[0]; prefix flag
    binary,       // text = op; kids[0], kids[1]
    assign,       // text = "=", "+=", ...; kids[0]=lhs, kids[1]=rhs
    incdec,       // text = "++"/"--"; kids[0]; prefix flag
    ternary,      // kids[0] ? kids[1] : kids[2]
    call,         // kids[0]=callee, kids[1..]=args
    index,        // kids[0]=base, kids[1]=subscript
    member,       // kids[0]=base; text=field; arrow flag
    cast,         // text=type text; kids[0]
    sizeof_expr,  // kids[0] when operand is an expr, else text=type text
    init_list,    // kids = elements
    comma         // kids = sequence
  };
  Kind kind;
  std::string text;
  bool arrow = false;
  bool prefix = false;
  std::vector<ExprPtr> kids;
  Span span;
};

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

struct Declarator {
  std::string name;
  Span name_span;
  std::string suffix;  // array brackets, textual
  ExprPtr init;        // null when there is no initializer
  Span span;           // covers declarator and initializer
};

struct SwitchCase {
  bool is_default = false;
  std::vector<StmtPtr> body;
};

struct Stmt {
  enum class Kind {
    expr,      // expr statement: assignment / call / incdec
    decl,      // local declaration, possibly several declarators
    if_,
    while_,
    do_,
    for_,
    switch_,
    return_,   // expr may be null
    goto_,     // label in `label`
    break_,
    continue_,
    label,     // label in `label`, no body (binds to the following stmt)
    block,
    empty
  };
  Kind kind;
  std::string type_text;             // decl
  std::vector<Declarator> decls;     // decl
  ExprPtr expr;                      // expr stmt / condition / return value
  std::vector<StmtPtr> kids;         // block body, if-then, loop body
  std::vector<StmtPtr> else_kids;    // if-else
  std::vector<StmtPtr> init_stmts;   // for
  std::vector<StmtPtr> update_stmts; // for
  std::vector<SwitchCase> cases;     // switch
  std::string label;                 // goto_/label
  Span span;
  Span head_span;  // keyword..')' for if/while/do/switch; condition expr for `for`
};

struct Param {
  std::string name;
  std::string type_text;
  Span span;
};

struct FunctionAst {
  std::string name;
  std::vector<Param> params;
  std::vector<StmtPtr> body;
  Span span;
};

struct ParseIssue {
  std::string message;
  std::string function;  // empty when the failure is outside any function
  int line = 0;
  int col = 0;
};

struct GlobalDecl {
  std::string name;
  std::string type_text;
  int line = 0;
};

// Parse result for one source unit. Functions that failed to parse are
// reported in `errors` and omitted from `functions`.
struct UnitAst {
  std::vector<FunctionAst> functions;
  std::vector<GlobalDecl> globals;
  std::set<std::string> typedef_names;
  std::set<std::string> function_names;  // defined or declared in this unit
  std::vector<ParseIssue> errors;
};

}  // namespace upr

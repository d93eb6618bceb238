#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "upr/ast.hpp"
#include "upr/errors.hpp"
#include "upr/source.hpp"

namespace upr {

inline constexpr int kCfgEntry = -1;
inline constexpr int kCfgExit = -2;

// Scope sentinel for file-scope variables.
inline const std::string kGlobalScope = "GLOBAL";

// (function, name) uniquely identifies a variable program-wide. Field and
// array accesses collapse to the base identifier; `*p = ...` writes the
// pseudo-variable named "*p".
struct VariableKey {
  std::string function;
  std::string name;

  auto operator<=>(const VariableKey&) const = default;
  std::string str() const { return function + ":" + name; }
};

enum class StatementKind {
  assignment,
  call,
  assertion,
  goto_,
  return_,
  condition,
  declaration_with_init,
};

inline const char* to_string(StatementKind k) {
  switch (k) {
    case StatementKind::assignment: return "assignment";
    case StatementKind::call: return "call";
    case StatementKind::assertion: return "assertion";
    case StatementKind::goto_: return "goto";
    case StatementKind::return_: return "return";
    case StatementKind::condition: return "condition";
    case StatementKind::declaration_with_init: return "declaration-with-init";
  }
  return "?";
}

inline std::optional<StatementKind> statement_kind_from(const std::string& s) {
  for (auto k : {StatementKind::assignment, StatementKind::call, StatementKind::assertion,
                 StatementKind::goto_, StatementKind::return_, StatementKind::condition,
                 StatementKind::declaration_with_init})
    if (s == to_string(k)) return k;
  return std::nullopt;
}

enum class CondOrigin { none, if_, while_, for_, do_, switch_ };

struct CallSite {
  std::string callee;
  std::set<VariableKey> arg_vars;
};

// One simple statement: the PDG node payload and the unit of rating.
struct Statement {
  int id = 0;
  StatementKind kind = StatementKind::assignment;
  std::string text;       // exact source slice
  std::string norm_text;  // whitespace-normalized
  std::set<VariableKey> defs;
  std::set<VariableKey> uses;
  std::set<VariableKey> strong_defs;  // whole-variable writes; these kill
  int line_begin = 0;
  int line_end = 0;
  CondOrigin cond_origin = CondOrigin::none;
  int governor = -1;  // id of the innermost governing condition, -1 = none
  std::vector<CallSite> calls;
};

// Leading/trailing whitespace stripped, runs collapsed to one space.
inline std::string normalize_text(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  bool in_space = false;
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f') {
      in_space = true;
      continue;
    }
    if (in_space && !out.empty()) out.push_back(' ');
    in_space = false;
    out.push_back(c);
  }
  return out;
}

struct Cfg {
  int statement_count = 0;
  std::map<int, std::set<int>> succ;
  std::map<int, std::set<int>> pred;

  void add_edge(int a, int b) {
    succ[a].insert(b);
    pred[b].insert(a);
  }
  const std::set<int>& successors(int n) const {
    static const std::set<int> empty;
    auto it = succ.find(n);
    return it == succ.end() ? empty : it->second;
  }
  const std::set<int>& predecessors(int n) const {
    static const std::set<int> empty;
    auto it = pred.find(n);
    return it == pred.end() ? empty : it->second;
  }
};

// Per-function result of statement lowering.
struct FunctionAnalysis {
  std::string function;
  std::string file;
  std::vector<Statement> statements;
  Cfg cfg;
  std::set<std::string> local_names;    // params + declared locals
  std::set<VariableKey> declared_keys;  // every declared local/param key
};

namespace detail {

// Accumulates def/use/call info for the statement being built.
struct DefUseAccum {
  const std::string* function;
  const std::set<std::string>* locals;
  const std::set<std::string>* globals;
  const std::set<std::string>* function_names;
  Statement* stmt;

  VariableKey resolve(const std::string& name) const {
    if (locals->count(name)) return {*function, name};
    return {kGlobalScope, name};
  }

  bool is_function_name(const std::string& name) const {
    return function_names->count(name) > 0;
  }

  void add_use(const VariableKey& k) { stmt->uses.insert(k); }
  void add_def(const VariableKey& k, bool strong) {
    stmt->defs.insert(k);
    if (strong) stmt->strong_defs.insert(k);
  }
};

// Base identifier of an lvalue-ish expression: a[i].f -> a, *(p+1) -> p.
inline const Expr* base_identifier(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::identifier: return &e;
    case Expr::Kind::index:
    case Expr::Kind::member:
    case Expr::Kind::cast: return base_identifier(*e.kids[0]);
    case Expr::Kind::unary:
      if (e.text == "*" || e.text == "&") return base_identifier(*e.kids[0]);
      return nullptr;
    default: return nullptr;
  }
}

void collect_reads(const Expr& e, DefUseAccum& acc);

// Writes through an lvalue: bare identifier is a strong (killing) def;
// array/member writes are weak defs of the base; *p defs pseudo "*p".
inline void collect_write(const Expr& e, DefUseAccum& acc, bool also_read) {
  switch (e.kind) {
    case Expr::Kind::identifier: {
      if (acc.is_function_name(e.text)) return;
      VariableKey k = acc.resolve(e.text);
      acc.add_def(k, /*strong=*/true);
      if (also_read) acc.add_use(k);
      return;
    }
    case Expr::Kind::index: {
      // base[i] = ...: weak update of base; subscript and base are read
      if (const Expr* base = base_identifier(*e.kids[0])) {
        if (!acc.is_function_name(base->text)) {
          VariableKey k = acc.resolve(base->text);
          acc.add_def(k, /*strong=*/false);
          acc.add_use(k);
        }
      }
      for (std::size_t i = 1; i < e.kids.size(); ++i) collect_reads(*e.kids[i], acc);
      return;
    }
    case Expr::Kind::member: {
      if (const Expr* base = base_identifier(*e.kids[0])) {
        if (!acc.is_function_name(base->text)) {
          VariableKey k = acc.resolve(base->text);
          acc.add_def(k, /*strong=*/false);
          acc.add_use(k);
        }
      }
      return;
    }
    case Expr::Kind::unary:
      if (e.text == "*") {
        // *p = ...: defs the pseudo-key "*p", reads p
        if (const Expr* base = base_identifier(*e.kids[0])) {
          VariableKey pk = acc.resolve(base->text);
          acc.add_def({pk.function, "*" + pk.name}, /*strong=*/true);
        }
        collect_reads(*e.kids[0], acc);
        return;
      }
      collect_reads(e, acc);
      return;
    case Expr::Kind::cast:
      collect_write(*e.kids[0], acc, also_read);
      return;
    default:
      // not a recognizable lvalue; treat as reads
      collect_reads(e, acc);
      return;
  }
}

inline void collect_call(const Expr& e, DefUseAccum& acc) {
  CallSite site;
  const Expr& callee = *e.kids[0];
  if (callee.kind == Expr::Kind::identifier) {
    site.callee = callee.text;
  } else {
    collect_reads(callee, acc);
  }
  std::size_t before_uses = acc.stmt->uses.size();
  (void)before_uses;
  for (std::size_t i = 1; i < e.kids.size(); ++i) {
    const Expr& arg = *e.kids[i];
    if (arg.kind == Expr::Kind::unary && arg.text == "&") {
      // &x as a call argument: conservative out-parameter, def + use
      if (const Expr* base = base_identifier(*arg.kids[0])) {
        if (!acc.is_function_name(base->text)) {
          VariableKey k = acc.resolve(base->text);
          acc.add_def(k, /*strong=*/false);
          acc.add_use(k);
          site.arg_vars.insert(k);
        }
      }
      // subscripts etc. inside the &-operand are ordinary reads
      std::size_t pre = acc.stmt->uses.size();
      collect_reads(*arg.kids[0], acc);
      (void)pre;
    } else {
      std::set<VariableKey> snapshot = acc.stmt->uses;
      collect_reads(arg, acc);
      for (const auto& k : acc.stmt->uses)
        if (!snapshot.count(k)) site.arg_vars.insert(k);
    }
  }
  acc.stmt->calls.push_back(std::move(site));
}

inline void collect_reads(const Expr& e, DefUseAccum& acc) {
  switch (e.kind) {
    case Expr::Kind::identifier:
      if (!acc.is_function_name(e.text)) acc.add_use(acc.resolve(e.text));
      return;
    case Expr::Kind::number:
    case Expr::Kind::string_lit:
    case Expr::Kind::char_lit:
      return;
    case Expr::Kind::assign: {
      collect_reads(*e.kids[1], acc);
      bool compound = e.text != "=";
      collect_write(*e.kids[0], acc, /*also_read=*/compound);
      return;
    }
    case Expr::Kind::incdec:
      collect_write(*e.kids[0], acc, /*also_read=*/true);
      return;
    case Expr::Kind::call:
      collect_call(e, acc);
      return;
    case Expr::Kind::unary:
      if (e.text == "*") {
        // value read through a pointer: reads p and the pseudo "*p"
        if (const Expr* base = base_identifier(*e.kids[0])) {
          if (!acc.is_function_name(base->text)) {
            VariableKey pk = acc.resolve(base->text);
            acc.add_use({pk.function, "*" + pk.name});
          }
        }
      }
      collect_reads(*e.kids[0], acc);
      return;
    case Expr::Kind::member:
      if (const Expr* base = base_identifier(*e.kids[0])) {
        if (!acc.is_function_name(base->text)) acc.add_use(acc.resolve(base->text));
        return;
      }
      collect_reads(*e.kids[0], acc);
      return;
    case Expr::Kind::index:
      collect_reads(*e.kids[0], acc);
      for (std::size_t i = 1; i < e.kids.size(); ++i) collect_reads(*e.kids[i], acc);
      return;
    case Expr::Kind::sizeof_expr:
    case Expr::Kind::cast:
    case Expr::Kind::binary:
    case Expr::Kind::ternary:
    case Expr::Kind::comma:
    case Expr::Kind::init_list:
      for (const auto& kid : e.kids) collect_reads(*kid, acc);
      return;
  }
}

inline bool contains_assignment(const Expr& e) {
  if (e.kind == Expr::Kind::assign || e.kind == Expr::Kind::incdec) return true;
  for (const auto& kid : e.kids)
    if (contains_assignment(*kid)) return true;
  return false;
}

inline bool contains_call(const Expr& e) {
  if (e.kind == Expr::Kind::call) return true;
  for (const auto& kid : e.kids)
    if (contains_call(*kid)) return true;
  return false;
}

inline const Expr* top_call(const Expr& e) {
  if (e.kind == Expr::Kind::call) return &e;
  if (e.kind == Expr::Kind::comma && !e.kids.empty()) return top_call(*e.kids[0]);
  return nullptr;
}

}  // namespace detail

// Flattens a parsed function into simple statements plus a CFG. Every
// simple statement is one node; branch/loop/switch conditions are nodes of
// kind `condition`; block structure disappears apart from the governor
// links used for control dependence.
class Lowerer {
public:
  Lowerer(const FunctionAst& fn, const SourceUnit& unit,
          const std::set<std::string>& global_names,
          const std::set<std::string>& function_names)
      : fn_(fn), unit_(unit), globals_(global_names), fnames_(function_names) {}

  FunctionAnalysis run() {
    out_.function = fn_.name;
    out_.file = unit_.path;
    for (const auto& p : fn_.params) {
      if (p.name.empty()) continue;
      out_.local_names.insert(p.name);
      out_.declared_keys.insert({fn_.name, p.name});
    }
    std::vector<int> ends = lower_body(fn_.body, {kCfgEntry});
    for (int e : ends) out_.cfg.add_edge(e, kCfgExit);
    // labels with no following statement fall through to EXIT
    for (const auto& name : pending_labels_) labels_[name] = kCfgExit;
    for (const auto& [id, label] : goto_fixups_) {
      auto it = labels_.find(label);
      if (it == labels_.end())
        throw lowering_error("goto targets missing label '" + label + "' in function " +
                             fn_.name);
      out_.cfg.add_edge(id, it->second);
    }
    out_.cfg.statement_count = static_cast<int>(out_.statements.size());
    if (out_.statements.empty()) out_.cfg.add_edge(kCfgEntry, kCfgExit);
    return std::move(out_);
  }

private:
  const FunctionAst& fn_;
  const SourceUnit& unit_;
  const std::set<std::string>& globals_;
  const std::set<std::string>& fnames_;
  FunctionAnalysis out_;

  std::vector<int> cond_stack_;  // innermost governing condition ids
  std::vector<std::string> pending_labels_;
  std::map<std::string, int> labels_;
  std::vector<std::pair<int, std::string>> goto_fixups_;

  struct LoopCtx {
    std::vector<int>* break_jumps;
    int continue_target;  // statement id; kCfgExit never valid here
  };
  std::vector<LoopCtx> loops_;
  std::vector<std::vector<int>*> switch_breaks_;

  int emit(StatementKind kind, const Span& text_span, const Stmt* src,
           const Expr* defuse_expr = nullptr) {
    Statement st;
    st.id = static_cast<int>(out_.statements.size());
    st.kind = kind;
    st.text = unit_.slice(text_span.begin, text_span.end);
    st.norm_text = normalize_text(st.text);
    st.line_begin = text_span.line_begin;
    st.line_end = text_span.line_end;
    st.governor = cond_stack_.empty() ? -1 : cond_stack_.back();
    out_.statements.push_back(std::move(st));
    Statement& ref = out_.statements.back();
    if (defuse_expr) {
      detail::DefUseAccum acc{&fn_.name, &out_.local_names, &globals_, &fnames_, &ref};
      detail::collect_reads(*defuse_expr, acc);
    }
    for (const auto& label : pending_labels_) labels_[label] = ref.id;
    pending_labels_.clear();
    (void)src;
    return ref.id;
  }

  void connect(const std::vector<int>& incoming, int id) {
    for (int p : incoming) out_.cfg.add_edge(p, id);
  }

  std::vector<int> lower_body(const std::vector<StmtPtr>& body, std::vector<int> incoming) {
    for (const auto& s : body) incoming = lower_stmt(*s, std::move(incoming));
    return incoming;
  }

  std::vector<int> lower_stmt(const Stmt& s, std::vector<int> incoming) {
    switch (s.kind) {
      case Stmt::Kind::empty:
        return incoming;
      case Stmt::Kind::block:
        return lower_body(s.kids, std::move(incoming));
      case Stmt::Kind::label:
        // bind to the next emitted statement (or EXIT at function end)
        pending_labels_.push_back(s.label);
        return incoming;
      case Stmt::Kind::decl:
        return lower_decl(s, std::move(incoming));
      case Stmt::Kind::expr:
        return lower_expr_stmt(s, std::move(incoming));
      case Stmt::Kind::return_: {
        int id = emit(StatementKind::return_, s.span, &s, s.expr.get());
        connect(incoming, id);
        out_.cfg.add_edge(id, kCfgExit);
        return {};
      }
      case Stmt::Kind::goto_: {
        int id = emit(StatementKind::goto_, s.span, &s);
        connect(incoming, id);
        goto_fixups_.emplace_back(id, s.label);
        return {};
      }
      case Stmt::Kind::break_: {
        int id = emit(StatementKind::goto_, s.span, &s);
        connect(incoming, id);
        std::vector<int>* sink = nullptr;
        if (!switch_breaks_.empty() || !loops_.empty()) {
          // break binds to the innermost enclosing loop or switch
          sink = innermost_break_sink();
        }
        if (!sink) throw lowering_error("break outside loop/switch in " + fn_.name);
        sink->push_back(id);
        return {};
      }
      case Stmt::Kind::continue_: {
        int id = emit(StatementKind::goto_, s.span, &s);
        connect(incoming, id);
        if (loops_.empty()) throw lowering_error("continue outside loop in " + fn_.name);
        out_.cfg.add_edge(id, loops_.back().continue_target);
        return {};
      }
      case Stmt::Kind::if_:
        return lower_if(s, std::move(incoming));
      case Stmt::Kind::while_:
        return lower_while(s, std::move(incoming));
      case Stmt::Kind::do_:
        return lower_do(s, std::move(incoming));
      case Stmt::Kind::for_:
        return lower_for(s, std::move(incoming));
      case Stmt::Kind::switch_:
        return lower_switch(s, std::move(incoming));
    }
    return incoming;
  }

  // break targets stack in source-nesting order; the most recently opened
  // loop/switch wins
  std::vector<int>* break_stack_top_ = nullptr;
  std::vector<std::pair<bool, std::vector<int>*>> break_nesting_;  // (is_switch, sink)

  std::vector<int>* innermost_break_sink() {
    return break_nesting_.empty() ? nullptr : break_nesting_.back().second;
  }

  std::vector<int> lower_decl(const Stmt& s, std::vector<int> incoming) {
    for (const auto& d : s.decls) {
      if (d.init) {
        Span text_span = s.decls.size() == 1 ? s.span : d.span;
        int id;
        if (s.decls.size() == 1) {
          id = emit(StatementKind::declaration_with_init, text_span, &s);
        } else {
          // synthesize "<type> <declarator>;" for multi-declarator lines
          id = emit(StatementKind::declaration_with_init, text_span, &s);
          Statement& st = out_.statements[id];
          st.text = normalize_text(s.type_text) + " " +
                    unit_.slice(d.span.begin, d.span.end) + ";";
          st.norm_text = normalize_text(st.text);
        }
        Statement& st = out_.statements[id];
        detail::DefUseAccum acc{&fn_.name, &out_.local_names, &globals_, &fnames_, &st};
        detail::collect_reads(*d.init, acc);
        connect(incoming, id);
        incoming = {id};
        // the declared name becomes local only now; the init may read an
        // outer variable of the same name
        out_.local_names.insert(d.name);
        out_.declared_keys.insert({fn_.name, d.name});
        st.defs.insert({fn_.name, d.name});
        st.strong_defs.insert({fn_.name, d.name});
      } else {
        out_.local_names.insert(d.name);
        out_.declared_keys.insert({fn_.name, d.name});
      }
    }
    return incoming;
  }

  std::vector<int> lower_expr_stmt(const Stmt& s, std::vector<int> incoming) {
    const Expr& e = *s.expr;
    StatementKind kind;
    if (e.kind == Expr::Kind::assign || e.kind == Expr::Kind::incdec ||
        detail::contains_assignment(e)) {
      kind = StatementKind::assignment;
    } else if (const Expr* call = detail::top_call(e)) {
      const Expr& callee = *call->kids[0];
      kind = (callee.kind == Expr::Kind::identifier && callee.text == "assert")
                 ? StatementKind::assertion
                 : StatementKind::call;
    } else if (detail::contains_call(e)) {
      kind = StatementKind::call;
    } else {
      throw lowering_error("expression statement with no effect in " + fn_.name);
    }
    int id = emit(kind, s.span, &s, s.expr.get());
    connect(incoming, id);
    return {id};
  }

  int emit_condition(const Stmt& s, CondOrigin origin) {
    int id = emit(StatementKind::condition, s.head_span, &s, s.expr.get());
    out_.statements[id].cond_origin = origin;
    return id;
  }

  std::vector<int> lower_if(const Stmt& s, std::vector<int> incoming) {
    int cond = emit_condition(s, CondOrigin::if_);
    connect(incoming, cond);
    cond_stack_.push_back(cond);
    std::vector<int> then_ends = lower_body(s.kids, {cond});
    std::vector<int> ends;
    if (!s.else_kids.empty()) {
      std::vector<int> else_ends = lower_body(s.else_kids, {cond});
      ends = std::move(then_ends);
      ends.insert(ends.end(), else_ends.begin(), else_ends.end());
    } else {
      ends = std::move(then_ends);
      ends.push_back(cond);
    }
    cond_stack_.pop_back();
    return ends;
  }

  std::vector<int> lower_while(const Stmt& s, std::vector<int> incoming) {
    int cond = emit_condition(s, CondOrigin::while_);
    connect(incoming, cond);
    std::vector<int> breaks;
    cond_stack_.push_back(cond);
    loops_.push_back({&breaks, cond});
    break_nesting_.push_back({false, &breaks});
    std::vector<int> body_ends = lower_body(s.kids, {cond});
    break_nesting_.pop_back();
    loops_.pop_back();
    cond_stack_.pop_back();
    for (int e : body_ends) out_.cfg.add_edge(e, cond);  // back edge
    std::vector<int> ends = {cond};
    ends.insert(ends.end(), breaks.begin(), breaks.end());
    return ends;
  }

  std::vector<int> lower_do(const Stmt& s, std::vector<int> incoming) {
    // body first, condition after (source order); body statements are
    // governed by the condition, so patch governors once its id exists
    std::size_t body_first = out_.statements.size();
    constexpr int kPendingGovernor = -100;
    cond_stack_.push_back(kPendingGovernor);
    std::vector<int> breaks;
    std::vector<int> continues;  // resolved to cond after emission
    LoopCtx ctx{&breaks, kPendingGovernor};
    loops_.push_back(ctx);
    break_nesting_.push_back({false, &breaks});

    // continue inside do-while targets the condition; capture and fix up
    std::size_t fixup_start = do_continue_fixups_.size();
    do_continue_depth_.push_back(loops_.size() - 1);
    std::vector<int> body_ends = lower_body(s.kids, std::move(incoming), /*do_ctx=*/true);
    do_continue_depth_.pop_back();

    break_nesting_.pop_back();
    loops_.pop_back();
    cond_stack_.pop_back();

    int cond = emit_condition(s, CondOrigin::do_);
    for (int e : body_ends) out_.cfg.add_edge(e, cond);
    // resolve pending continue edges and governors
    for (std::size_t i = fixup_start; i < do_continue_fixups_.size(); ++i)
      out_.cfg.add_edge(do_continue_fixups_[i], cond);
    do_continue_fixups_.resize(fixup_start);
    for (std::size_t i = body_first; i < out_.statements.size(); ++i)
      if (out_.statements[i].governor == kPendingGovernor)
        out_.statements[i].governor = cond;
    int body_entry = body_first < out_.statements.size()
                         ? static_cast<int>(body_first)
                         : cond;  // empty body: condition loops on itself
    out_.cfg.add_edge(cond, body_entry);
    std::vector<int> ends = {cond};
    ends.insert(ends.end(), breaks.begin(), breaks.end());
    return ends;
  }

  std::vector<int> do_continue_fixups_;
  std::vector<std::size_t> do_continue_depth_;

  std::vector<int> lower_body(const std::vector<StmtPtr>& body, std::vector<int> incoming,
                              bool do_ctx) {
    (void)do_ctx;
    return lower_body(body, std::move(incoming));
  }

  std::vector<int> lower_for(const Stmt& s, std::vector<int> incoming) {
    incoming = lower_body(s.init_stmts, std::move(incoming));
    int cond = -1;
    if (s.expr) {
      cond = emit_condition(s, CondOrigin::for_);
      connect(incoming, cond);
      cond_stack_.push_back(cond);
    }
    // update statements sit between condition and body in source order
    std::vector<int> update_ids;
    std::size_t upd_first = out_.statements.size();
    lower_body(s.update_stmts, {});
    for (std::size_t i = upd_first; i < out_.statements.size(); ++i)
      update_ids.push_back(static_cast<int>(i));

    int continue_target = !update_ids.empty() ? update_ids.front() : cond;
    std::vector<int> breaks;
    bool infinite = cond < 0;
    std::size_t body_first = out_.statements.size();
    loops_.push_back({&breaks, continue_target});
    break_nesting_.push_back({false, &breaks});
    std::vector<int> body_ends =
        lower_body(s.kids, cond >= 0 ? std::vector<int>{cond} : std::move(incoming));
    break_nesting_.pop_back();
    loops_.pop_back();
    if (s.expr) cond_stack_.pop_back();

    int loop_head = cond >= 0 ? cond
                    : body_first < out_.statements.size() ? static_cast<int>(body_first)
                    : !update_ids.empty()                 ? update_ids.front()
                                                          : kCfgExit;
    if (!update_ids.empty()) {
      for (int e : body_ends) out_.cfg.add_edge(e, update_ids.front());
      out_.cfg.add_edge(update_ids.back(), loop_head == kCfgExit ? update_ids.front() : loop_head);
    } else {
      for (int e : body_ends)
        out_.cfg.add_edge(e, loop_head == kCfgExit ? e : loop_head);
    }
    std::vector<int> ends;
    if (cond >= 0) ends.push_back(cond);
    ends.insert(ends.end(), breaks.begin(), breaks.end());
    if (infinite && ends.empty()) return {};  // for(;;) with no break never exits
    return ends;
  }

  std::vector<int> lower_switch(const Stmt& s, std::vector<int> incoming) {
    int cond = emit_condition(s, CondOrigin::switch_);
    connect(incoming, cond);
    std::vector<int> breaks;
    break_nesting_.push_back({true, &breaks});
    cond_stack_.push_back(cond);
    bool has_default = false;
    std::vector<int> fall;  // dangling ends of the previous case body
    for (const auto& c : s.cases) {
      if (c.is_default) has_default = true;
      std::vector<int> entry = fall;
      entry.push_back(cond);
      fall = lower_body(c.body, std::move(entry));
    }
    cond_stack_.pop_back();
    break_nesting_.pop_back();
    std::vector<int> ends = std::move(fall);
    ends.insert(ends.end(), breaks.begin(), breaks.end());
    if (!has_default) ends.push_back(cond);
    return ends;
  }
};

inline FunctionAnalysis lower_to_statements(const FunctionAst& fn, const SourceUnit& unit,
                                            const std::set<std::string>& global_names,
                                            const std::set<std::string>& function_names) {
  return Lowerer(fn, unit, global_names, function_names).run();
}

// Every variable referenced by any statement of the function (globals keyed
// with the GLOBAL sentinel). Function names and literals never appear here.
inline std::set<VariableKey> extract_variables(const FunctionAnalysis& fa) {
  std::set<VariableKey> out;
  for (const auto& st : fa.statements) {
    out.insert(st.defs.begin(), st.defs.end());
    out.insert(st.uses.begin(), st.uses.end());
  }
  return out;
}

}  // namespace upr

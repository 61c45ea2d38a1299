#include "cqp/lang/typecheck.hpp"

#include <algorithm>
#include <optional>
#include <map>
#include <set>

#include "cqp/lang/pretty.hpp"
#include "cqp/lang/subst.hpp"

namespace cqp::lang {

const char* diagnostic_kind_name(DiagnosticKind kind) {
    switch (kind) {
    case DiagnosticKind::ArityMismatch: return "ArityMismatch";
    case DiagnosticKind::TypeMismatch: return "TypeMismatch";
    case DiagnosticKind::CloningViolation: return "CloningViolation";
    case DiagnosticKind::UnknownName: return "UnknownName";
    }
    return "?";
}

std::string diagnostic_to_string(const Diagnostic& d) {
    return std::to_string(d.loc.line) + ":" + std::to_string(d.loc.col) + ": " +
           diagnostic_kind_name(d.kind) + ": " + d.message;
}

namespace {

struct Checker {
    const Program& prog;
    std::vector<Diagnostic> diags;
    // per-definition implicit qudit parameters (free names used as qudits),
    // closed under calls
    std::map<std::string, std::set<std::string>> implicits;
    std::set<std::string> recursive;

    explicit Checker(const Program& p) : prog(p) {}

    void report(DiagnosticKind kind, SourceLoc loc, std::string msg) {
        for (const auto& d : diags)
            if (d.kind == kind && d.loc.line == loc.line && d.loc.col == loc.col &&
                d.message == msg)
                return;
        diags.push_back({kind, loc, std::move(msg)});
    }

    // ---- implicit qudit inference -------------------------------------

    void compute_implicits() {
        std::set<std::string> in_progress, done;
        for (const auto& def : prog.definitions)
            implicits_of(def.name, in_progress, done);
    }

    const std::set<std::string>& implicits_of(const std::string& name,
                                              std::set<std::string>& in_progress,
                                              std::set<std::string>& done) {
        static const std::set<std::string> empty;
        auto& slot = implicits[name];
        if (done.count(name)) return slot;
        const Definition* def = prog.find(name);
        if (!def) return empty;
        if (in_progress.count(name)) {
            recursive.insert(name);
            return slot;
        }
        in_progress.insert(name);
        std::set<std::string> bound;
        for (const auto& p : def->params) bound.insert(p.name);
        collect_implicits(def->body, bound, slot, in_progress, done);
        in_progress.erase(name);
        done.insert(name);
        return slot;
    }

    void collect_implicits(const TermPtr& t, std::set<std::string> bound,
                           std::set<std::string>& out,
                           std::set<std::string>& in_progress,
                           std::set<std::string>& done) {
        if (!t) return;
        auto qudit_use = [&](const std::string& n) {
            if (!bound.count(n)) out.insert(n);
        };
        switch (t->kind) {
        case ProcessTerm::Kind::Nil: return;
        case ProcessTerm::Kind::Input:
            for (const auto& p : t->params) bound.insert(p.name);
            collect_implicits(t->cont, std::move(bound), out, in_progress, done);
            return;
        case ProcessTerm::Kind::Output:
            for (const auto& a : t->args) expr_implicits(a, bound, out);
            collect_implicits(t->cont, std::move(bound), out, in_progress, done);
            return;
        case ProcessTerm::Kind::Action:
            for (const auto& n : t->targets) qudit_use(n);
            expr_implicits(t->gate.exponent, bound, out);
            collect_implicits(t->cont, std::move(bound), out, in_progress, done);
            return;
        case ProcessTerm::Kind::QditAlloc:
            for (const auto& n : t->names) bound.insert(n);
            collect_implicits(t->cont, std::move(bound), out, in_progress, done);
            return;
        case ProcessTerm::Kind::NewChan:
            bound.insert(t->name);
            collect_implicits(t->cont, std::move(bound), out, in_progress, done);
            return;
        case ProcessTerm::Kind::Parallel:
            collect_implicits(t->left, bound, out, in_progress, done);
            collect_implicits(t->right, std::move(bound), out, in_progress, done);
            return;
        case ProcessTerm::Kind::Call: {
            for (const auto& a : t->args) expr_implicits(a, bound, out);
            for (const auto& n : implicits_of(t->name, in_progress, done))
                if (!bound.count(n)) out.insert(n);
            return;
        }
        }
    }

    void expr_implicits(const ExprPtr& e, const std::set<std::string>& bound,
                        std::set<std::string>& out) {
        if (!e) return;
        if (e->kind == Expr::Kind::Measure) {
            for (const auto& n : e->targets)
                if (!bound.count(n)) out.insert(n);
        } else if (e->kind == Expr::Kind::Plus) {
            expr_implicits(e->lhs, bound, out);
            expr_implicits(e->rhs, bound, out);
        }
    }

    // ---- per-definition structural checks ------------------------------

    struct Env {
        std::map<std::string, TypeExpr> bindings;

        const TypeExpr* lookup(const std::string& n) const {
            auto it = bindings.find(n);
            return it == bindings.end() ? nullptr : &it->second;
        }
        void bind(const std::string& n, TypeExpr t) { bindings[n] = std::move(t); }
    };

    void check_definition(const Definition& def) {
        Env env;
        std::set<std::string> seen;
        for (const auto& p : def.params) {
            if (!seen.insert(p.name).second)
                report(DiagnosticKind::TypeMismatch, p.loc,
                       "duplicate parameter '" + p.name + "' in " + def.name);
            env.bind(p.name, p.type);
        }
        for (const auto& n : implicits[def.name])
            if (!env.lookup(n)) env.bind(n, TypeExpr::qdit());
        check_term(def.body, env);
    }

    void require_distinct_binders(const std::vector<std::string>& names,
                                  SourceLoc loc) {
        std::set<std::string> seen;
        for (const auto& n : names)
            if (!seen.insert(n).second)
                report(DiagnosticKind::TypeMismatch, loc,
                       "name '" + n + "' bound twice in one binder");
    }

    void check_qudit_ref(const std::string& n, const Env& env, SourceLoc loc) {
        const TypeExpr* t = env.lookup(n);
        if (!t) {
            report(DiagnosticKind::UnknownName, loc, "unknown qudit '" + n + "'");
        } else if (t->kind != TypeExpr::Kind::Qdit) {
            report(DiagnosticKind::TypeMismatch, loc,
                   "'" + n + "' has type " + type_to_string(*t) + ", expected Qdit");
        }
    }

    // expression type, reporting problems; nullopt on error
    std::optional<TypeExpr> expr_type(const ExprPtr& e, const Env& env) {
        switch (e->kind) {
        case Expr::Kind::Literal: return TypeExpr::val();
        case Expr::Kind::Var: {
            const TypeExpr* t = env.lookup(e->name);
            if (!t) {
                report(DiagnosticKind::UnknownName, e->loc,
                       "unknown name '" + e->name + "'");
                return std::nullopt;
            }
            return *t;
        }
        case Expr::Kind::Plus: {
            for (const ExprPtr& side : {e->lhs, e->rhs}) {
                auto t = expr_type(side, env);
                if (t && t->kind != TypeExpr::Kind::Val)
                    report(DiagnosticKind::TypeMismatch, side->loc,
                           "operand of + must be Val, got " + type_to_string(*t));
            }
            return TypeExpr::val();
        }
        case Expr::Kind::Measure: {
            if (e->targets.empty())
                report(DiagnosticKind::ArityMismatch, e->loc, "measure of nothing");
            std::set<std::string> seen;
            for (const auto& n : e->targets) {
                if (!seen.insert(n).second)
                    report(DiagnosticKind::CloningViolation, e->loc,
                           "qudit '" + n + "' measured twice in one measure");
                check_qudit_ref(n, env, e->loc);
            }
            return TypeExpr::val();
        }
        }
        return std::nullopt;
    }

    void check_payload(const TypeExpr& chan_type, const std::string& chan,
                       std::size_t got, SourceLoc loc) {
        if (chan_type.payload.size() != got)
            report(DiagnosticKind::ArityMismatch, loc,
                   "channel '" + chan + "' carries " +
                       std::to_string(chan_type.payload.size()) + " value(s), got " +
                       std::to_string(got));
    }

    const TypeExpr* channel_type(const std::string& chan, const Env& env,
                                 SourceLoc loc) {
        const TypeExpr* t = env.lookup(chan);
        if (!t) {
            report(DiagnosticKind::UnknownName, loc, "unknown channel '" + chan + "'");
            return nullptr;
        }
        if (t->kind != TypeExpr::Kind::Chan) {
            report(DiagnosticKind::TypeMismatch, loc,
                   "'" + chan + "' has type " + type_to_string(*t) +
                       ", expected a channel");
            return nullptr;
        }
        return t;
    }

    void check_term(const TermPtr& t, Env env) {
        if (!t) return;
        switch (t->kind) {
        case ProcessTerm::Kind::Nil: return;
        case ProcessTerm::Kind::Input: {
            if (const TypeExpr* ct = channel_type(t->chan, env, t->loc)) {
                check_payload(*ct, t->chan, t->params.size(), t->loc);
                for (std::size_t i = 0;
                     i < t->params.size() && i < ct->payload.size(); ++i)
                    if (!(t->params[i].type == ct->payload[i]))
                        report(DiagnosticKind::TypeMismatch, t->params[i].loc,
                               "input binds '" + t->params[i].name + "' at " +
                                   type_to_string(t->params[i].type) +
                                   " but channel '" + t->chan + "' carries " +
                                   type_to_string(ct->payload[i]));
            }
            std::vector<std::string> names;
            for (const auto& p : t->params) names.push_back(p.name);
            require_distinct_binders(names, t->loc);
            for (const auto& p : t->params) env.bind(p.name, p.type);
            check_term(t->cont, std::move(env));
            return;
        }
        case ProcessTerm::Kind::Output: {
            if (const TypeExpr* ct = channel_type(t->chan, env, t->loc)) {
                check_payload(*ct, t->chan, t->args.size(), t->loc);
                // slot alignment is meaningless when the arity is off
                for (std::size_t i = 0; ct->payload.size() == t->args.size() &&
                                        i < t->args.size();
                     ++i) {
                    const TypeExpr& want = ct->payload[i];
                    const ExprPtr& arg = t->args[i];
                    if (want.kind == TypeExpr::Kind::Qdit) {
                        if (arg->kind != Expr::Kind::Var)
                            report(DiagnosticKind::TypeMismatch, arg->loc,
                                   "a qudit slot needs a qudit name");
                        else
                            check_qudit_ref(arg->name, env, arg->loc);
                    } else {
                        auto at = expr_type(arg, env);
                        if (at && !(at->kind == want.kind))
                            report(DiagnosticKind::TypeMismatch, arg->loc,
                                   "payload slot " + std::to_string(i + 1) + " of '" +
                                       t->chan + "' wants " + type_to_string(want) +
                                       ", got " + type_to_string(*at));
                    }
                }
            } else {
                for (const auto& a : t->args) expr_type(a, env);
            }
            check_term(t->cont, std::move(env));
            return;
        }
        case ProcessTerm::Kind::Action: {
            if (static_cast<int>(t->targets.size()) != t->gate.arity())
                report(DiagnosticKind::ArityMismatch, t->loc,
                       "gate " + pretty_gate(t->gate) + " takes " +
                           std::to_string(t->gate.arity()) + " target(s), got " +
                           std::to_string(t->targets.size()));
            std::set<std::string> seen;
            for (const auto& n : t->targets) {
                if (!seen.insert(n).second)
                    report(DiagnosticKind::CloningViolation, t->loc,
                           "qudit '" + n + "' used twice in one gate");
                check_qudit_ref(n, env, t->loc);
            }
            if (t->gate.exponent) {
                auto et = expr_type(t->gate.exponent, env);
                if (et && et->kind != TypeExpr::Kind::Val)
                    report(DiagnosticKind::TypeMismatch, t->gate.exponent->loc,
                           "gate exponent must be Val");
            }
            check_term(t->cont, std::move(env));
            return;
        }
        case ProcessTerm::Kind::QditAlloc: {
            require_distinct_binders(t->names, t->loc);
            for (const auto& n : t->names) env.bind(n, TypeExpr::qdit());
            check_term(t->cont, std::move(env));
            return;
        }
        case ProcessTerm::Kind::NewChan: {
            if (t->chan_type.kind != TypeExpr::Kind::Chan)
                report(DiagnosticKind::TypeMismatch, t->loc,
                       "new binds '" + t->name + "' at non-channel type " +
                           type_to_string(t->chan_type));
            env.bind(t->name, t->chan_type);
            check_term(t->cont, std::move(env));
            return;
        }
        case ProcessTerm::Kind::Parallel:
            check_term(t->left, env);
            check_term(t->right, std::move(env));
            return;
        case ProcessTerm::Kind::Call: {
            const Definition* callee = prog.find(t->name);
            if (!callee) {
                report(DiagnosticKind::UnknownName, t->loc,
                       "call to undefined process '" + t->name + "'");
                return;
            }
            if (recursive.count(t->name))
                report(DiagnosticKind::TypeMismatch, t->loc,
                       "recursive process definitions are not supported ('" +
                           t->name + "')");
            if (callee->params.size() != t->args.size()) {
                report(DiagnosticKind::ArityMismatch, t->loc,
                       "'" + t->name + "' takes " +
                           std::to_string(callee->params.size()) +
                           " argument(s), got " + std::to_string(t->args.size()));
                return;
            }
            for (std::size_t i = 0; i < t->args.size(); ++i) {
                const TypeExpr& want = callee->params[i].type;
                const ExprPtr& arg = t->args[i];
                if (want.kind == TypeExpr::Kind::Qdit) {
                    if (arg->kind != Expr::Kind::Var)
                        report(DiagnosticKind::TypeMismatch, arg->loc,
                               "a Qdit parameter needs a qudit name");
                    else
                        check_qudit_ref(arg->name, env, arg->loc);
                } else if (want.kind == TypeExpr::Kind::Val) {
                    auto at = expr_type(arg, env);
                    if (at && at->kind != TypeExpr::Kind::Val)
                        report(DiagnosticKind::TypeMismatch, arg->loc,
                               "argument " + std::to_string(i + 1) + " of '" +
                                   t->name + "' must be Val");
                } else {
                    if (arg->kind != Expr::Kind::Var) {
                        report(DiagnosticKind::TypeMismatch, arg->loc,
                               "a channel parameter needs a channel name");
                    } else if (const TypeExpr* at = env.lookup(arg->name)) {
                        if (!(*at == want))
                            report(DiagnosticKind::TypeMismatch, arg->loc,
                                   "channel '" + arg->name + "' has type " +
                                       type_to_string(*at) + ", parameter wants " +
                                       type_to_string(want));
                    } else {
                        report(DiagnosticKind::UnknownName, arg->loc,
                               "unknown channel '" + arg->name + "'");
                    }
                }
            }
            // the callee's implicit qudits are captured here, so they must
            // be qudits in scope at the call site
            for (const auto& n : implicits[t->name])
                check_qudit_ref(n, env, t->loc);
            return;
        }
        }
    }

    // ---- linearity on the expanded entry term ---------------------------

    struct LinearState {
        std::set<std::string> owned;
        std::set<std::string> sent;
    };

    void use_qudit(const std::string& n, LinearState& st, SourceLoc loc,
                   bool consume) {
        if (st.sent.count(n)) {
            report(DiagnosticKind::CloningViolation, loc,
                   "qudit '" + n + "' referenced after being sent");
            return;
        }
        if (!st.owned.count(n)) return; // non-qudit or unknown, reported elsewhere
        if (consume) {
            st.owned.erase(n);
            st.sent.insert(n);
        }
    }

    void expr_linear(const ExprPtr& e, LinearState& st) {
        if (!e) return;
        if (e->kind == Expr::Kind::Measure) {
            for (const auto& n : e->targets) use_qudit(n, st, e->loc, false);
        } else if (e->kind == Expr::Kind::Plus) {
            expr_linear(e->lhs, st);
            expr_linear(e->rhs, st);
        } else if (e->kind == Expr::Kind::Var) {
            use_qudit(e->name, st, e->loc, false);
        }
    }

    void check_linear(const TermPtr& t, LinearState st) {
        if (!t) return;
        switch (t->kind) {
        case ProcessTerm::Kind::Nil: return;
        case ProcessTerm::Kind::Input:
            for (const auto& p : t->params)
                if (p.type.kind == TypeExpr::Kind::Qdit) {
                    st.owned.insert(p.name);
                    st.sent.erase(p.name);
                }
            check_linear(t->cont, std::move(st));
            return;
        case ProcessTerm::Kind::Output:
            for (const auto& a : t->args) {
                if (a->kind == Expr::Kind::Var && (st.owned.count(a->name) ||
                                                   st.sent.count(a->name)))
                    use_qudit(a->name, st, a->loc, true);
                else
                    expr_linear(a, st);
            }
            check_linear(t->cont, std::move(st));
            return;
        case ProcessTerm::Kind::Action:
            for (const auto& n : t->targets) use_qudit(n, st, t->loc, false);
            expr_linear(t->gate.exponent, st);
            check_linear(t->cont, std::move(st));
            return;
        case ProcessTerm::Kind::QditAlloc:
            for (const auto& n : t->names) {
                st.owned.insert(n);
                st.sent.erase(n);
            }
            check_linear(t->cont, std::move(st));
            return;
        case ProcessTerm::Kind::NewChan:
            check_linear(t->cont, std::move(st));
            return;
        case ProcessTerm::Kind::Parallel: {
            std::set<std::string> lnames, rnames;
            for (const auto& n : free_names(t->left))
                if (st.owned.count(n) || st.sent.count(n)) lnames.insert(n);
            for (const auto& n : free_names(t->right))
                if (st.owned.count(n) || st.sent.count(n)) rnames.insert(n);
            for (const auto& n : lnames)
                if (rnames.count(n) && st.owned.count(n))
                    report(DiagnosticKind::CloningViolation, t->loc,
                           "qudit '" + n + "' shared by both sides of a parallel");
            LinearState lst{{}, st.sent}, rst{{}, st.sent};
            for (const auto& n : lnames)
                if (st.owned.count(n)) lst.owned.insert(n);
            for (const auto& n : rnames)
                if (st.owned.count(n) && !lst.owned.count(n)) rst.owned.insert(n);
            check_linear(t->left, std::move(lst));
            check_linear(t->right, std::move(rst));
            return;
        }
        case ProcessTerm::Kind::Call:
            return; // expanded before this pass; unresolved calls reported above
        }
    }
};

TermPtr inline_calls(const Program& prog, const TermPtr& t,
                     std::set<std::string> stack) {
    if (!t) return t;
    switch (t->kind) {
    case ProcessTerm::Kind::Call: {
        const Definition* callee = prog.find(t->name);
        if (!callee) throw std::runtime_error("call to undefined process '" + t->name + "'");
        if (stack.count(t->name))
            throw std::runtime_error("recursive process definitions are not supported ('" +
                                     t->name + "')");
        if (callee->params.size() != t->args.size())
            throw std::runtime_error("'" + t->name + "' called with wrong arity");
        Subst s;
        std::set<std::string> range;
        for (std::size_t i = 0; i < t->args.size(); ++i) {
            const ExprPtr& arg = t->args[i];
            if (arg->kind == Expr::Kind::Var) {
                s[callee->params[i].name] = arg->name;
                range.insert(arg->name);
            } else if (arg->kind == Expr::Kind::Literal) {
                s[callee->params[i].name] = arg->value;
            } else {
                throw std::runtime_error("'" + t->name +
                                         "' called with a non-atomic argument");
            }
        }
        stack.insert(t->name);
        TermPtr body = rename_binders_avoiding(callee->body, range);
        return inline_calls(prog, substitute(body, s), std::move(stack));
    }
    case ProcessTerm::Kind::Input:
        return ProcessTerm::input(t->chan, t->params,
                                  inline_calls(prog, t->cont, stack), t->loc);
    case ProcessTerm::Kind::Output:
        return ProcessTerm::output(t->chan, t->args,
                                   inline_calls(prog, t->cont, stack), t->loc);
    case ProcessTerm::Kind::Action:
        return ProcessTerm::action(t->targets, t->gate,
                                   inline_calls(prog, t->cont, stack), t->loc);
    case ProcessTerm::Kind::QditAlloc:
        return ProcessTerm::qdit_alloc(t->names, inline_calls(prog, t->cont, stack),
                                       t->loc);
    case ProcessTerm::Kind::NewChan:
        return ProcessTerm::new_chan(t->name, t->chan_type,
                                     inline_calls(prog, t->cont, stack), t->loc);
    case ProcessTerm::Kind::Parallel:
        return ProcessTerm::parallel(inline_calls(prog, t->left, stack),
                                     inline_calls(prog, t->right, stack), t->loc);
    default: return t;
    }
}

} // namespace

TermPtr inline_entry(const Program& p) {
    std::vector<ExprPtr> args = p.entry_args;
    return inline_calls(p, ProcessTerm::call(p.entry, std::move(args)), {});
}

std::vector<Diagnostic> typecheck(const Program& p) {
    Checker checker(p);
    checker.compute_implicits();

    if (!p.find(p.entry))
        checker.report(DiagnosticKind::UnknownName, {},
                       "entry process '" + p.entry + "' is not defined");

    for (const auto& def : p.definitions) checker.check_definition(def);

    // entry arguments: free names become external channels with the type the
    // parameter demands; only channels and Val literals are supported
    if (const Definition* entry = p.find(p.entry)) {
        if (entry->params.size() != p.entry_args.size()) {
            checker.report(DiagnosticKind::ArityMismatch, entry->loc,
                           "entry '" + p.entry + "' takes " +
                               std::to_string(entry->params.size()) +
                               " argument(s), got " +
                               std::to_string(p.entry_args.size()));
        } else {
            std::map<std::string, TypeExpr> external;
            for (std::size_t i = 0; i < p.entry_args.size(); ++i) {
                const ExprPtr& arg = p.entry_args[i];
                const TypeExpr& want = entry->params[i].type;
                if (arg->kind == Expr::Kind::Literal) {
                    if (want.kind != TypeExpr::Kind::Val)
                        checker.report(DiagnosticKind::TypeMismatch, arg->loc,
                                       "entry argument " + std::to_string(i + 1) +
                                           " must be a channel name");
                } else if (arg->kind == Expr::Kind::Var) {
                    if (want.kind == TypeExpr::Kind::Qdit) {
                        checker.report(DiagnosticKind::TypeMismatch, arg->loc,
                                       "the entry process cannot take qudit "
                                       "arguments");
                    } else {
                        auto it = external.find(arg->name);
                        if (it != external.end() && !(it->second == want))
                            checker.report(DiagnosticKind::TypeMismatch, arg->loc,
                                           "external name '" + arg->name +
                                               "' used at two different types");
                        external.emplace(arg->name, want);
                    }
                } else {
                    checker.report(DiagnosticKind::TypeMismatch, arg->loc,
                                   "entry arguments must be names or literals");
                }
            }
        }
        // with an explicit main there is no call site to capture the entry's
        // implicit qudits; a headless file is checked like a lone definition
        if (p.explicit_main)
            for (const auto& n : checker.implicits[p.entry])
                checker.report(DiagnosticKind::UnknownName, entry->loc,
                               "qudit '" + n + "' is free in the entry process");
    }

    // linearity over the expanded entry, then over every definition not
    // reachable from it (checked standalone with its parameters granted)
    std::set<std::string> reachable;
    try {
        TermPtr expanded = inline_entry(p);
        Checker::LinearState st;
        for (const auto& n : checker.implicits[p.entry]) st.owned.insert(n);
        checker.check_linear(expanded, std::move(st));
        std::vector<std::string> work{p.entry};
        while (!work.empty()) {
            std::string cur = work.back();
            work.pop_back();
            if (!reachable.insert(cur).second) continue;
            if (const Definition* def = p.find(cur)) {
                std::vector<const ProcessTerm*> stack{def->body.get()};
                while (!stack.empty()) {
                    const ProcessTerm* t = stack.back();
                    stack.pop_back();
                    if (!t) continue;
                    if (t->kind == ProcessTerm::Kind::Call) work.push_back(t->name);
                    if (t->cont) stack.push_back(t->cont.get());
                    if (t->left) stack.push_back(t->left.get());
                    if (t->right) stack.push_back(t->right.get());
                }
            }
        }
    } catch (const std::runtime_error&) {
        // recursion or a bad call; already reported structurally
    }
    for (const auto& def : p.definitions) {
        if (reachable.count(def.name)) continue;
        try {
            TermPtr expanded = inline_calls(p, def.body, {def.name});
            Checker::LinearState st;
            for (const auto& param : def.params)
                if (param.type.kind == TypeExpr::Kind::Qdit)
                    st.owned.insert(param.name);
            for (const auto& n : checker.implicits[def.name]) st.owned.insert(n);
            checker.check_linear(expanded, std::move(st));
        } catch (const std::runtime_error&) {
        }
    }

    return checker.diags;
}

} // namespace cqp::lang

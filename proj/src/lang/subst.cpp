#include "cqp/lang/subst.hpp"

#include <set>

namespace cqp::lang {

namespace {

std::string subst_name(const std::string& name, const Subst& s) {
    auto it = s.find(name);
    if (it == s.end()) return name;
    if (const auto* n = std::get_if<std::string>(&it->second)) return *n;
    return name; // integer substitution cannot land in a name position
}

std::vector<std::string> subst_names(const std::vector<std::string>& names,
                                     const Subst& s) {
    std::vector<std::string> out;
    out.reserve(names.size());
    for (const auto& n : names) out.push_back(subst_name(n, s));
    return out;
}

Subst without(Subst s, const std::vector<std::string>& bound) {
    for (const auto& b : bound) s.erase(b);
    return s;
}

} // namespace

ExprPtr substitute_expr(const ExprPtr& expr, const Subst& s) {
    if (!expr || s.empty()) return expr;
    switch (expr->kind) {
    case Expr::Kind::Literal: return expr;
    case Expr::Kind::Var: {
        auto it = s.find(expr->name);
        if (it == s.end()) return expr;
        if (const auto* n = std::get_if<std::string>(&it->second))
            return *n == expr->name ? expr : Expr::var(*n, expr->loc);
        return Expr::literal(std::get<long>(it->second), expr->loc);
    }
    case Expr::Kind::Plus:
        return Expr::plus(substitute_expr(expr->lhs, s), substitute_expr(expr->rhs, s),
                          expr->loc);
    case Expr::Kind::Measure:
        return Expr::measure(subst_names(expr->targets, s), expr->loc);
    }
    return expr;
}

TermPtr substitute(const TermPtr& term, const Subst& s) {
    if (!term || s.empty()) return term;
    switch (term->kind) {
    case ProcessTerm::Kind::Nil: return term;
    case ProcessTerm::Kind::Input: {
        std::vector<std::string> bound;
        for (const auto& p : term->params) bound.push_back(p.name);
        Subst inner = without(s, bound);
        return ProcessTerm::input(subst_name(term->chan, s), term->params,
                                  substitute(term->cont, inner), term->loc);
    }
    case ProcessTerm::Kind::Output: {
        std::vector<ExprPtr> args;
        args.reserve(term->args.size());
        for (const auto& a : term->args) args.push_back(substitute_expr(a, s));
        return ProcessTerm::output(subst_name(term->chan, s), std::move(args),
                                   substitute(term->cont, s), term->loc);
    }
    case ProcessTerm::Kind::Action: {
        GateRef gate = term->gate;
        gate.exponent = substitute_expr(gate.exponent, s);
        return ProcessTerm::action(subst_names(term->targets, s), std::move(gate),
                                   substitute(term->cont, s), term->loc);
    }
    case ProcessTerm::Kind::QditAlloc: {
        Subst inner = without(s, term->names);
        return ProcessTerm::qdit_alloc(term->names, substitute(term->cont, inner),
                                       term->loc);
    }
    case ProcessTerm::Kind::NewChan: {
        Subst inner = without(s, {term->name});
        return ProcessTerm::new_chan(term->name, term->chan_type,
                                     substitute(term->cont, inner), term->loc);
    }
    case ProcessTerm::Kind::Parallel:
        return ProcessTerm::parallel(substitute(term->left, s),
                                     substitute(term->right, s), term->loc);
    case ProcessTerm::Kind::Call: {
        std::vector<ExprPtr> args;
        args.reserve(term->args.size());
        for (const auto& a : term->args) args.push_back(substitute_expr(a, s));
        return ProcessTerm::call(term->name, std::move(args), term->loc);
    }
    }
    return term;
}

namespace {

void expr_names(const ExprPtr& e, const std::set<std::string>& bound,
                std::set<std::string>& out) {
    if (!e) return;
    switch (e->kind) {
    case Expr::Kind::Literal: break;
    case Expr::Kind::Var:
        if (!bound.count(e->name)) out.insert(e->name);
        break;
    case Expr::Kind::Plus:
        expr_names(e->lhs, bound, out);
        expr_names(e->rhs, bound, out);
        break;
    case Expr::Kind::Measure:
        for (const auto& n : e->targets)
            if (!bound.count(n)) out.insert(n);
        break;
    }
}

void term_names(const TermPtr& t, std::set<std::string> bound,
                std::set<std::string>& out) {
    if (!t) return;
    switch (t->kind) {
    case ProcessTerm::Kind::Nil: return;
    case ProcessTerm::Kind::Input:
        if (!bound.count(t->chan)) out.insert(t->chan);
        for (const auto& p : t->params) bound.insert(p.name);
        term_names(t->cont, std::move(bound), out);
        return;
    case ProcessTerm::Kind::Output:
        if (!bound.count(t->chan)) out.insert(t->chan);
        for (const auto& a : t->args) expr_names(a, bound, out);
        term_names(t->cont, std::move(bound), out);
        return;
    case ProcessTerm::Kind::Action:
        for (const auto& n : t->targets)
            if (!bound.count(n)) out.insert(n);
        expr_names(t->gate.exponent, bound, out);
        term_names(t->cont, std::move(bound), out);
        return;
    case ProcessTerm::Kind::QditAlloc:
        for (const auto& n : t->names) bound.insert(n);
        term_names(t->cont, std::move(bound), out);
        return;
    case ProcessTerm::Kind::NewChan:
        bound.insert(t->name);
        term_names(t->cont, std::move(bound), out);
        return;
    case ProcessTerm::Kind::Parallel:
        term_names(t->left, bound, out);
        term_names(t->right, std::move(bound), out);
        return;
    case ProcessTerm::Kind::Call:
        for (const auto& a : t->args) expr_names(a, bound, out);
        return;
    }
}

} // namespace

std::vector<std::string> free_names(const TermPtr& term) {
    std::set<std::string> out;
    term_names(term, {}, out);
    return {out.begin(), out.end()};
}

namespace {

struct Renamer {
    const std::set<std::string>& avoid;
    std::set<std::string> taken;
    int counter = 0;

    std::string fresh(const std::string& base) {
        std::string cand;
        do {
            cand = base + "_" + std::to_string(++counter);
        } while (avoid.count(cand) || taken.count(cand));
        taken.insert(cand);
        return cand;
    }

    TermPtr walk(const TermPtr& t) {
        if (!t) return t;
        switch (t->kind) {
        case ProcessTerm::Kind::Nil:
        case ProcessTerm::Kind::Call: return t;
        case ProcessTerm::Kind::Input: {
            Subst ren;
            std::vector<Param> params = t->params;
            for (auto& p : params)
                if (avoid.count(p.name)) {
                    std::string nn = fresh(p.name);
                    ren[p.name] = nn;
                    p.name = nn;
                }
            TermPtr cont = walk(ren.empty() ? t->cont : substitute(t->cont, ren));
            return ProcessTerm::input(t->chan, std::move(params), std::move(cont),
                                      t->loc);
        }
        case ProcessTerm::Kind::Output:
            return ProcessTerm::output(t->chan, t->args, walk(t->cont), t->loc);
        case ProcessTerm::Kind::Action:
            return ProcessTerm::action(t->targets, t->gate, walk(t->cont), t->loc);
        case ProcessTerm::Kind::QditAlloc: {
            Subst ren;
            std::vector<std::string> names = t->names;
            for (auto& n : names)
                if (avoid.count(n)) {
                    std::string nn = fresh(n);
                    ren[n] = nn;
                    n = nn;
                }
            TermPtr cont = walk(ren.empty() ? t->cont : substitute(t->cont, ren));
            return ProcessTerm::qdit_alloc(std::move(names), std::move(cont), t->loc);
        }
        case ProcessTerm::Kind::NewChan: {
            if (!avoid.count(t->name))
                return ProcessTerm::new_chan(t->name, t->chan_type, walk(t->cont),
                                             t->loc);
            std::string nn = fresh(t->name);
            Subst ren{{t->name, SubstVal{nn}}};
            return ProcessTerm::new_chan(nn, t->chan_type,
                                         walk(substitute(t->cont, ren)), t->loc);
        }
        case ProcessTerm::Kind::Parallel:
            return ProcessTerm::parallel(walk(t->left), walk(t->right), t->loc);
        }
        return t;
    }
};

} // namespace

TermPtr rename_binders_avoiding(const TermPtr& term,
                                const std::set<std::string>& avoid) {
    if (avoid.empty()) return term;
    Renamer r{avoid, {}, 0};
    return r.walk(term);
}

} // namespace cqp::lang

#include "cqp/lang/ast.hpp"

#include <algorithm>

namespace cqp::lang {

std::string type_to_string(const TypeExpr& t) {
    switch (t.kind) {
    case TypeExpr::Kind::Qdit: return "Qdit";
    case TypeExpr::Kind::Val: return "Val";
    case TypeExpr::Kind::Chan: {
        std::string out = "^[";
        for (std::size_t i = 0; i < t.payload.size(); ++i) {
            if (i) out += ",";
            out += type_to_string(t.payload[i]);
        }
        return out + "]";
    }
    }
    return "?";
}

ExprPtr Expr::literal(long v, SourceLoc loc) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Literal;
    e->value = v;
    e->loc = loc;
    return e;
}

ExprPtr Expr::var(std::string name, SourceLoc loc) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Var;
    e->name = std::move(name);
    e->loc = loc;
    return e;
}

ExprPtr Expr::plus(ExprPtr l, ExprPtr r, SourceLoc loc) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Plus;
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    e->loc = loc;
    return e;
}

ExprPtr Expr::measure(std::vector<std::string> targets, SourceLoc loc) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Measure;
    e->targets = std::move(targets);
    e->loc = loc;
    return e;
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
    case Expr::Kind::Literal: return a->value == b->value;
    case Expr::Kind::Var: return a->name == b->name;
    case Expr::Kind::Plus:
        return expr_equal(a->lhs, b->lhs) && expr_equal(a->rhs, b->rhs);
    case Expr::Kind::Measure: return a->targets == b->targets;
    }
    return false;
}

bool gate_equal(const GateRef& a, const GateRef& b) {
    return a.kind == b.kind && a.negated == b.negated &&
           ((a.exponent == nullptr) == (b.exponent == nullptr)) &&
           (a.exponent == nullptr || expr_equal(a.exponent, b.exponent));
}

namespace {
bool params_equal(const std::vector<Param>& a, const std::vector<Param>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].name != b[i].name || !(a[i].type == b[i].type)) return false;
    return true;
}

bool exprs_equal(const std::vector<ExprPtr>& a, const std::vector<ExprPtr>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!expr_equal(a[i], b[i])) return false;
    return true;
}
} // namespace

TermPtr ProcessTerm::nil(SourceLoc loc) {
    auto t = std::make_shared<ProcessTerm>();
    t->kind = Kind::Nil;
    t->loc = loc;
    return t;
}

TermPtr ProcessTerm::input(std::string chan, std::vector<Param> params,
                           TermPtr cont, SourceLoc loc) {
    auto t = std::make_shared<ProcessTerm>();
    t->kind = Kind::Input;
    t->chan = std::move(chan);
    t->params = std::move(params);
    t->cont = std::move(cont);
    t->loc = loc;
    return t;
}

TermPtr ProcessTerm::output(std::string chan, std::vector<ExprPtr> args,
                            TermPtr cont, SourceLoc loc) {
    auto t = std::make_shared<ProcessTerm>();
    t->kind = Kind::Output;
    t->chan = std::move(chan);
    t->args = std::move(args);
    t->cont = std::move(cont);
    t->loc = loc;
    return t;
}

TermPtr ProcessTerm::action(std::vector<std::string> targets, GateRef gate,
                            TermPtr cont, SourceLoc loc) {
    auto t = std::make_shared<ProcessTerm>();
    t->kind = Kind::Action;
    t->targets = std::move(targets);
    t->gate = std::move(gate);
    t->cont = std::move(cont);
    t->loc = loc;
    return t;
}

TermPtr ProcessTerm::qdit_alloc(std::vector<std::string> names, TermPtr cont,
                                SourceLoc loc) {
    auto t = std::make_shared<ProcessTerm>();
    t->kind = Kind::QditAlloc;
    t->names = std::move(names);
    t->cont = std::move(cont);
    t->loc = loc;
    return t;
}

TermPtr ProcessTerm::new_chan(std::string name, TypeExpr type, TermPtr cont,
                              SourceLoc loc) {
    auto t = std::make_shared<ProcessTerm>();
    t->kind = Kind::NewChan;
    t->name = std::move(name);
    t->chan_type = std::move(type);
    t->cont = std::move(cont);
    t->loc = loc;
    return t;
}

TermPtr ProcessTerm::parallel(TermPtr left, TermPtr right, SourceLoc loc) {
    auto t = std::make_shared<ProcessTerm>();
    t->kind = Kind::Parallel;
    t->left = std::move(left);
    t->right = std::move(right);
    t->loc = loc;
    return t;
}

TermPtr ProcessTerm::call(std::string name, std::vector<ExprPtr> args,
                          SourceLoc loc) {
    auto t = std::make_shared<ProcessTerm>();
    t->kind = Kind::Call;
    t->name = std::move(name);
    t->args = std::move(args);
    t->loc = loc;
    return t;
}

bool term_equal(const TermPtr& a, const TermPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
    case ProcessTerm::Kind::Nil: return true;
    case ProcessTerm::Kind::Input:
        return a->chan == b->chan && params_equal(a->params, b->params) &&
               term_equal(a->cont, b->cont);
    case ProcessTerm::Kind::Output:
        return a->chan == b->chan && exprs_equal(a->args, b->args) &&
               term_equal(a->cont, b->cont);
    case ProcessTerm::Kind::Action:
        return a->targets == b->targets && gate_equal(a->gate, b->gate) &&
               term_equal(a->cont, b->cont);
    case ProcessTerm::Kind::QditAlloc:
        return a->names == b->names && term_equal(a->cont, b->cont);
    case ProcessTerm::Kind::NewChan:
        return a->name == b->name && a->chan_type == b->chan_type &&
               term_equal(a->cont, b->cont);
    case ProcessTerm::Kind::Parallel:
        return term_equal(a->left, b->left) && term_equal(a->right, b->right);
    case ProcessTerm::Kind::Call:
        return a->name == b->name && exprs_equal(a->args, b->args);
    }
    return false;
}

const Definition* Program::find(const std::string& name) const {
    for (const auto& def : definitions)
        if (def.name == name) return &def;
    return nullptr;
}

bool program_equal(const Program& a, const Program& b) {
    if (a.definitions.size() != b.definitions.size()) return false;
    for (std::size_t i = 0; i < a.definitions.size(); ++i) {
        const auto& da = a.definitions[i];
        const auto& db = b.definitions[i];
        if (da.name != db.name || !params_equal(da.params, db.params) ||
            !term_equal(da.body, db.body))
            return false;
    }
    return a.entry == b.entry && exprs_equal(a.entry_args, b.entry_args);
}

} // namespace cqp::lang

#include "cqp/lang/pretty.hpp"

namespace cqp::lang {

namespace {

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::string params_str(const std::vector<Param>& params) {
    std::string out;
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (i) out += ", ";
        out += params[i].name + ":" + type_to_string(params[i].type);
    }
    return out;
}

std::string exprs_str(const std::vector<ExprPtr>& exprs, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < exprs.size(); ++i) {
        if (i) out += sep;
        out += pretty_expr(exprs[i]);
    }
    return out;
}

// continuations and binder bodies need parentheses around '|'
std::string cont_str(const TermPtr& t) {
    std::string s = pretty_term(t);
    if (t->kind == ProcessTerm::Kind::Parallel) return "(" + s + ")";
    return s;
}

} // namespace

std::string pretty_expr(const ExprPtr& expr) {
    switch (expr->kind) {
    case Expr::Kind::Literal: return std::to_string(expr->value);
    case Expr::Kind::Var: return expr->name;
    case Expr::Kind::Plus: {
        auto side = [](const ExprPtr& e) {
            std::string s = pretty_expr(e);
            return e->kind == Expr::Kind::Plus ? "(" + s + ")" : s;
        };
        return side(expr->lhs) + " + " + side(expr->rhs);
    }
    case Expr::Kind::Measure:
        if (expr->targets.size() == 1) return "measure " + expr->targets[0];
        return "measure(" + join(expr->targets, ",") + ")";
    }
    return "?";
}

std::string pretty_gate(const GateRef& gate) {
    switch (gate.kind) {
    case GateRef::Kind::Hadamard: return "H";
    case GateRef::Kind::CnotRight: return "Rc";
    case GateRef::Kind::CnotLeft: return "Lc";
    case GateRef::Kind::ShiftX:
    case GateRef::Kind::PhaseZ: {
        std::string out = gate.kind == GateRef::Kind::ShiftX ? "X" : "Z";
        out += "^";
        if (gate.negated) out += "-";
        std::string e = pretty_expr(gate.exponent);
        if (gate.exponent->kind == Expr::Kind::Plus ||
            gate.exponent->kind == Expr::Kind::Measure)
            e = "(" + e + ")";
        return out + e;
    }
    }
    return "?";
}

std::string pretty_term(const TermPtr& term) {
    switch (term->kind) {
    case ProcessTerm::Kind::Nil: return "0";
    case ProcessTerm::Kind::Input:
        return term->chan + "?[" + params_str(term->params) + "]." +
               cont_str(term->cont);
    case ProcessTerm::Kind::Output:
        return term->chan + "![" + exprs_str(term->args, ", ") + "]." +
               cont_str(term->cont);
    case ProcessTerm::Kind::Action:
        return "{" + join(term->targets, ",") + " *= " + pretty_gate(term->gate) +
               "}." + cont_str(term->cont);
    case ProcessTerm::Kind::QditAlloc:
        return "(qdit " + join(term->names, ",") + ")" + cont_str(term->cont);
    case ProcessTerm::Kind::NewChan:
        return "(new " + term->name + ":" + type_to_string(term->chan_type) + ")" +
               cont_str(term->cont);
    case ProcessTerm::Kind::Parallel: {
        auto side = [](const TermPtr& t, bool right) {
            std::string s = pretty_term(t);
            // '|' is printed right-nested; a left-nested parallel needs parens
            if (t->kind == ProcessTerm::Kind::Parallel && !right) return "(" + s + ")";
            return s;
        };
        return side(term->left, false) + " | " + side(term->right, true);
    }
    case ProcessTerm::Kind::Call:
        return term->name + "(" + exprs_str(term->args, ",") + ")";
    }
    return "?";
}

std::string pretty(const Program& p) {
    std::string out;
    for (const auto& def : p.definitions) {
        out += def.name + "(" + params_str(def.params) + ") = " +
               pretty_term(def.body) + "\n";
    }
    out += "main = " + p.entry + "(";
    out += exprs_str(p.entry_args, ",");
    out += ")\n";
    return out;
}

} // namespace cqp::lang

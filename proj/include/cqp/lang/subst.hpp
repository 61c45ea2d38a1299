#pragma once

#include <map>
#include <set>
#include <string>
#include <variant>

#include "cqp/lang/ast.hpp"

namespace cqp::lang {

// A name is replaced either by another name (qudit/channel) or by an integer.
using SubstVal = std::variant<std::string, long>;
using Subst = std::map<std::string, SubstVal>;

// Capture-naive binder-respecting substitution: replacement stops below any
// binder that rebinds the name. Callers keep replacement names fresh.
TermPtr substitute(const TermPtr& term, const Subst& s);
ExprPtr substitute_expr(const ExprPtr& expr, const Subst& s);

// Free names of a term (variables, qudit names and channels alike), i.e.
// names not bound by an enclosing input, qdit or new binder within the term.
std::vector<std::string> free_names(const TermPtr& term);

// Alpha-rename every binder whose name is in `avoid`, so a later
// substitution with those names in its range cannot be captured.
TermPtr rename_binders_avoiding(const TermPtr& term,
                                const std::set<std::string>& avoid);

} // namespace cqp::lang

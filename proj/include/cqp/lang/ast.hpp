#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cqp/core/gates.hpp"

namespace cqp::lang {

struct SourceLoc {
    int line = 0;
    int col = 0;
};

// Qdit | Val | ^[T1,...,Tk] (channel carrying a tuple).
struct TypeExpr {
    enum class Kind { Qdit, Val, Chan };
    Kind kind = Kind::Val;
    std::vector<TypeExpr> payload; // Chan only, non-empty

    static TypeExpr qdit() { return {Kind::Qdit, {}}; }
    static TypeExpr val() { return {Kind::Val, {}}; }
    static TypeExpr chan(std::vector<TypeExpr> payload) {
        return {Kind::Chan, std::move(payload)};
    }
    bool operator==(const TypeExpr&) const = default;
};

std::string type_to_string(const TypeExpr& t);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Value expressions: integer literals, variables, sums, and standard-basis
// measurement of one or more qudits.
struct Expr {
    enum class Kind { Literal, Var, Plus, Measure };
    Kind kind = Kind::Literal;
    long value = 0;                   // Literal
    std::string name;                 // Var
    ExprPtr lhs, rhs;                 // Plus
    std::vector<std::string> targets; // Measure, non-empty
    SourceLoc loc;

    static ExprPtr literal(long v, SourceLoc loc = {});
    static ExprPtr var(std::string name, SourceLoc loc = {});
    static ExprPtr plus(ExprPtr l, ExprPtr r, SourceLoc loc = {});
    static ExprPtr measure(std::vector<std::string> targets, SourceLoc loc = {});
};

bool expr_equal(const ExprPtr& a, const ExprPtr& b);

// Surface gate reference; the exponent is an expression evaluated mod d at
// execution time, with an optional leading minus (X^-m1).
struct GateRef {
    enum class Kind { Hadamard, ShiftX, PhaseZ, CnotRight, CnotLeft };
    Kind kind = Kind::Hadamard;
    bool negated = false;
    ExprPtr exponent; // null means exponent 1 (or n/a for H, Rc, Lc)

    int arity() const {
        return (kind == Kind::CnotRight || kind == Kind::CnotLeft) ? 2 : 1;
    }
};

bool gate_equal(const GateRef& a, const GateRef& b);

struct Param {
    std::string name;
    TypeExpr type;
    SourceLoc loc;
};

struct ProcessTerm;
using TermPtr = std::shared_ptr<const ProcessTerm>;

struct ProcessTerm {
    enum class Kind {
        Nil,       // 0
        Input,     // chan?[x1:T1,...].cont
        Output,    // chan![e1,...].cont
        Action,    // {t1,...,tk *= gate}.cont
        QditAlloc, // (qdit n1,...,nk)cont
        NewChan,   // (new name:T)cont
        Parallel,  // left | right
        Call,      // Name(a1,...,ak)
    };

    Kind kind = Kind::Nil;
    std::string chan;                 // Input, Output
    std::vector<Param> params;        // Input
    std::vector<ExprPtr> args;        // Output payload, Call arguments
    std::vector<std::string> targets; // Action
    GateRef gate;                     // Action
    std::vector<std::string> names;   // QditAlloc
    std::string name;                 // NewChan, Call
    TypeExpr chan_type;               // NewChan
    TermPtr cont;                     // all prefixes and binders
    TermPtr left, right;              // Parallel
    SourceLoc loc;

    static TermPtr nil(SourceLoc loc = {});
    static TermPtr input(std::string chan, std::vector<Param> params, TermPtr cont,
                         SourceLoc loc = {});
    static TermPtr output(std::string chan, std::vector<ExprPtr> args, TermPtr cont,
                          SourceLoc loc = {});
    static TermPtr action(std::vector<std::string> targets, GateRef gate,
                          TermPtr cont, SourceLoc loc = {});
    static TermPtr qdit_alloc(std::vector<std::string> names, TermPtr cont,
                              SourceLoc loc = {});
    static TermPtr new_chan(std::string name, TypeExpr type, TermPtr cont,
                            SourceLoc loc = {});
    static TermPtr parallel(TermPtr left, TermPtr right, SourceLoc loc = {});
    static TermPtr call(std::string name, std::vector<ExprPtr> args,
                        SourceLoc loc = {});
};

bool term_equal(const TermPtr& a, const TermPtr& b);

struct Definition {
    std::string name;
    std::vector<Param> params;
    TermPtr body;
    SourceLoc loc;
};

// A source file: named process definitions plus the entry call. When the
// source has no explicit `main = ...`, the first definition is the entry and
// its parameter names double as the external channel names.
struct Program {
    std::vector<Definition> definitions;
    std::string entry;
    std::vector<ExprPtr> entry_args;
    // whether the source spelled out `main = ...` (not part of equality)
    bool explicit_main = false;

    const Definition* find(const std::string& name) const;
};

bool program_equal(const Program& a, const Program& b);

} // namespace cqp::lang

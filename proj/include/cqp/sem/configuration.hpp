#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "cqp/core/state.hpp"
#include "cqp/lang/ast.hpp"
#include "cqp/sem/error.hpp"

namespace cqp::sem {

// A value carried by a transition: a classical integer or the name of a
// qudit handed over.
struct Value {
    enum class Kind { Int, Name };
    Kind kind = Kind::Int;
    long num = 0;
    std::string name;

    static Value of(long v) { return {Kind::Int, v, {}}; }
    static Value of_name(std::string n) { return {Kind::Name, 0, std::move(n)}; }

    bool operator==(const Value&) const = default;
    bool operator<(const Value& o) const {
        if (kind != o.kind) return kind < o.kind;
        if (kind == Kind::Int) return num < o.num;
        return name < o.name;
    }
};

using ValueTuple = std::vector<Value>;

std::string value_to_string(const Value& v);
std::string tuple_to_string(const ValueTuple& t);

struct TransitionLabel {
    enum class Kind { Input, Output, Tau, ProbBranch };
    Kind kind = Kind::Tau;
    std::string chan;               // Input / Output
    std::vector<ValueTuple> tuples; // Input: one tuple; Output: the set of
                                    // possible tuples (sorted, deduplicated)
    double prob = 0.0;              // ProbBranch
    std::string detail;             // what the internal step did

    static TransitionLabel tau(std::string detail);
    static TransitionLabel input(std::string chan, ValueTuple values);
    static TransitionLabel output(std::string chan, std::vector<ValueTuple> tuples);
    static TransitionLabel prob_branch(double p, std::string detail);
};

std::string label_to_string(const TransitionLabel& l);

// One weighted component of a mixed configuration: its share of the mixture,
// its quantum state, and the values its abstracted placeholders take.
struct Component {
    double weight;
    core::QuantumState sigma;
    std::vector<long> values;
};

// A configuration (sigma; omega; P), generalized to a weighted mixture of
// components that share one term skeleton. A pure configuration is the
// single-component, no-placeholder case. Immutable; transitions build new
// configurations.
class Configuration {
public:
    Configuration(int dimension, std::vector<Component> components,
                  std::vector<std::string> abstracted, lang::TermPtr term,
                  std::vector<std::string> omega,
                  std::set<std::string> private_channels = {},
                  std::set<std::string> used_names = {}, int fresh_counter = 0);

    // (sigma; omega; term) with no mixture structure.
    static Configuration pure(int dimension, core::QuantumState sigma,
                              std::vector<std::string> omega, lang::TermPtr term);

    // Entry configuration of a program: empty quantum store, the entry
    // process expanded. Throws on recursive or undefined calls.
    static Configuration initial(const lang::Program& program, int dimension);

    int dimension() const { return d_; }
    const std::vector<Component>& components() const { return comps_; }
    const std::vector<std::string>& abstracted() const { return abstracted_; }
    const lang::TermPtr& term() const { return term_; }
    const std::vector<std::string>& omega() const { return omega_; }
    const std::set<std::string>& private_channels() const { return private_; }
    const std::set<std::string>& used_names() const { return used_; }
    int fresh_counter() const { return fresh_; }

    bool is_pure() const { return comps_.size() == 1 && abstracted_.empty(); }
    // term is 0, possibly a parallel composition of 0s
    bool is_terminated() const;
    bool owns(const std::string& qudit) const;

    // component's term with its placeholder values substituted in
    lang::TermPtr resolved_term(std::size_t comp) const;

    // stable content hash (hex) over dimension, mixture, term and ownership
    std::string digest() const;
    std::string to_string() const;

private:
    int d_;
    std::vector<Component> comps_;
    std::vector<std::string> abstracted_;
    lang::TermPtr term_;
    std::vector<std::string> omega_;
    std::set<std::string> private_;
    std::set<std::string> used_;
    int fresh_ = 0;
};

// Probabilistic branching produced when measurement results become visible
// on an output: one branch per distinct emitted tuple.
struct ProbDistribution {
    std::vector<std::pair<double, Configuration>> branches;
};

using Successor = std::variant<Configuration, ProbDistribution>;

struct Transition {
    TransitionLabel label;
    Successor next;
};

// What the environment feeds external inputs, keyed by the binder name in
// the receiving input prefix. Qudit slots take a d-entry amplitude vector.
struct EnvironmentInputs {
    std::map<std::string, long> vals;
    std::map<std::string, std::vector<core::cx>> states;
    // when set, missing bindings default to 0 / |0>; used by generated-test
    // drivers
    bool default_missing = false;

    std::optional<long> val_for(const std::string& name) const;
    std::optional<std::vector<core::cx>> state_for(const std::string& name,
                                                   int d) const;
};

} // namespace cqp::sem

#include "cqp/sem/configuration.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>

#include "cqp/lang/pretty.hpp"
#include "cqp/lang/subst.hpp"
#include "cqp/lang/typecheck.hpp"

namespace cqp::sem {

namespace {

constexpr double kWeightTol = 1e-9;

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::uint64_t fnv1a(const std::string& data, std::uint64_t h) {
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace

std::string value_to_string(const Value& v) {
    return v.kind == Value::Kind::Int ? std::to_string(v.num) : v.name;
}

std::string tuple_to_string(const ValueTuple& t) {
    std::string out;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) out += ",";
        out += value_to_string(t[i]);
    }
    return out;
}

TransitionLabel TransitionLabel::tau(std::string detail) {
    TransitionLabel l;
    l.kind = Kind::Tau;
    l.detail = std::move(detail);
    return l;
}

TransitionLabel TransitionLabel::input(std::string chan, ValueTuple values) {
    TransitionLabel l;
    l.kind = Kind::Input;
    l.chan = std::move(chan);
    l.tuples = {std::move(values)};
    return l;
}

TransitionLabel TransitionLabel::output(std::string chan,
                                        std::vector<ValueTuple> tuples) {
    TransitionLabel l;
    l.kind = Kind::Output;
    l.chan = std::move(chan);
    l.tuples = std::move(tuples);
    return l;
}

TransitionLabel TransitionLabel::prob_branch(double p, std::string detail) {
    TransitionLabel l;
    l.kind = Kind::ProbBranch;
    l.prob = p;
    l.detail = std::move(detail);
    return l;
}

std::string label_to_string(const TransitionLabel& l) {
    switch (l.kind) {
    case TransitionLabel::Kind::Tau: return "tau(" + l.detail + ")";
    case TransitionLabel::Kind::Input:
        return l.chan + "?[" + tuple_to_string(l.tuples.at(0)) + "]";
    case TransitionLabel::Kind::Output: {
        std::string payload;
        if (l.tuples.size() == 1) {
            payload = tuple_to_string(l.tuples[0]);
        } else {
            payload = "{";
            for (std::size_t i = 0; i < l.tuples.size(); ++i) {
                if (i) payload += "; ";
                payload += tuple_to_string(l.tuples[i]);
            }
            payload += "}";
        }
        return l.chan + "![" + payload + "]";
    }
    case TransitionLabel::Kind::ProbBranch:
        return "prob(" + fmt_double(l.prob) + (l.detail.empty() ? "" : ", " + l.detail) +
               ")";
    }
    return "?";
}

Configuration::Configuration(int dimension, std::vector<Component> components,
                             std::vector<std::string> abstracted,
                             lang::TermPtr term, std::vector<std::string> omega,
                             std::set<std::string> private_channels,
                             std::set<std::string> used_names, int fresh_counter)
    : d_(dimension), comps_(std::move(components)),
      abstracted_(std::move(abstracted)), term_(std::move(term)),
      omega_(std::move(omega)), private_(std::move(private_channels)),
      used_(std::move(used_names)), fresh_(fresh_counter) {
    if (comps_.empty())
        sem_fail(SemErrorKind::StuckComponent, "configuration with no components");
    double total = 0.0;
    for (const auto& c : comps_) {
        if (c.weight <= 0.0 || c.weight > 1.0 + kWeightTol)
            sem_fail(SemErrorKind::StuckComponent,
                     "component weight " + fmt_double(c.weight) + " outside (0,1]");
        if (c.values.size() != abstracted_.size())
            sem_fail(SemErrorKind::StuckComponent,
                     "component carries " + std::to_string(c.values.size()) +
                         " values for " + std::to_string(abstracted_.size()) +
                         " placeholders");
        if (c.sigma.dimension() != d_)
            sem_fail(SemErrorKind::StuckComponent, "component dimension mismatch");
        if (c.sigma.qudit_names() != comps_.front().sigma.qudit_names())
            sem_fail(SemErrorKind::StuckComponent,
                     "components disagree on the quantum store layout");
        total += c.weight;
    }
    if (std::abs(total - 1.0) > kWeightTol)
        sem_fail(SemErrorKind::StuckComponent,
                 "mixture weights sum to " + fmt_double(total));
    for (const auto& q : omega_)
        if (!comps_.front().sigma.has_qudit(q))
            sem_fail(SemErrorKind::UnknownQudit,
                     "owned qudit '" + q + "' is not in the quantum store");
    // names the run has already minted stay reserved even if they drop out
    // of sight
    for (const auto& n : comps_.front().sigma.qudit_names()) used_.insert(n);
    for (const auto& n : private_) used_.insert(n);
}

Configuration Configuration::pure(int dimension, core::QuantumState sigma,
                                  std::vector<std::string> omega,
                                  lang::TermPtr term) {
    std::vector<Component> comps;
    comps.push_back(Component{1.0, std::move(sigma), {}});
    return Configuration(dimension, std::move(comps), {}, std::move(term),
                         std::move(omega));
}

Configuration Configuration::initial(const lang::Program& program, int dimension) {
    lang::TermPtr term = lang::inline_entry(program);
    core::QuantumState empty(dimension, {}, {core::cx(1.0, 0.0)});
    return pure(dimension, std::move(empty), {}, std::move(term));
}

bool Configuration::is_terminated() const {
    auto nil_like = [](const lang::TermPtr& t, auto&& self) -> bool {
        if (!t) return true;
        if (t->kind == lang::ProcessTerm::Kind::Nil) return true;
        if (t->kind == lang::ProcessTerm::Kind::Parallel)
            return self(t->left, self) && self(t->right, self);
        return false;
    };
    return nil_like(term_, nil_like);
}

bool Configuration::owns(const std::string& qudit) const {
    for (const auto& q : omega_)
        if (q == qudit) return true;
    return false;
}

lang::TermPtr Configuration::resolved_term(std::size_t comp) const {
    const Component& c = comps_.at(comp);
    lang::Subst s;
    for (std::size_t i = 0; i < abstracted_.size(); ++i)
        s[abstracted_[i]] = c.values[i];
    return lang::substitute(term_, s);
}

std::string Configuration::digest() const {
    std::uint64_t h = 1469598103934665603ull;
    h = fnv1a("d=" + std::to_string(d_), h);
    h = fnv1a("term=" + lang::pretty_term(term_), h);
    for (const auto& a : abstracted_) h = fnv1a("x=" + a, h);
    for (const auto& q : omega_) h = fnv1a("w=" + q, h);
    for (const auto& p : private_) h = fnv1a("p=" + p, h);
    for (const auto& c : comps_) {
        h = fnv1a("g=" + fmt_double(c.weight), h);
        for (long v : c.values) h = fnv1a("v=" + std::to_string(v), h);
        for (const auto& a : c.sigma.amplitudes())
            h = fnv1a(fmt_double(a.real()) + "," + fmt_double(a.imag()), h);
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string Configuration::to_string() const {
    std::string out;
    if (comps_.size() == 1 && abstracted_.empty()) {
        out = "(sigma[" ;
    } else {
        out = "mix{" + std::to_string(comps_.size()) + "}(sigma[";
    }
    const auto& names = comps_.front().sigma.qudit_names();
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out += ",";
        out += names[i];
    }
    out += "]; omega[";
    for (std::size_t i = 0; i < omega_.size(); ++i) {
        if (i) out += ",";
        out += omega_[i];
    }
    out += "]; " + lang::pretty_term(term_) + ")";
    return out;
}

std::optional<long> EnvironmentInputs::val_for(const std::string& name) const {
    auto it = vals.find(name);
    if (it != vals.end()) return it->second;
    if (default_missing) return 0;
    return std::nullopt;
}

std::optional<std::vector<core::cx>>
EnvironmentInputs::state_for(const std::string& name, int d) const {
    auto it = states.find(name);
    if (it != states.end()) return it->second;
    if (default_missing) {
        std::vector<core::cx> amps(static_cast<std::size_t>(d), core::cx(0.0, 0.0));
        amps[0] = core::cx(1.0, 0.0);
        return amps;
    }
    return std::nullopt;
}

} // namespace cqp::sem

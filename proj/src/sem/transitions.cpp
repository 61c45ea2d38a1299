#include "cqp/sem/transitions.hpp"

#include <algorithm>
#include <map>

#include "cqp/lang/pretty.hpp"
#include "cqp/lang/subst.hpp"

namespace cqp::sem {

namespace {

using lang::Expr;
using lang::ExprPtr;
using lang::GateRef;
using lang::ProcessTerm;
using lang::TermPtr;

std::string join(const std::vector<std::string>& v, const char* sep = ",") {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += v[i];
    }
    return out;
}

// ---- sites: leaves of the parallel structure ----------------------------

struct Site {
    std::vector<bool> path; // false = left child, true = right child
    TermPtr leaf;
};

void collect_sites(const TermPtr& t, std::vector<bool>& path,
                   std::vector<Site>& out) {
    if (t->kind == ProcessTerm::Kind::Parallel) {
        path.push_back(false);
        collect_sites(t->left, path, out);
        path.back() = true;
        collect_sites(t->right, path, out);
        path.pop_back();
        return;
    }
    out.push_back(Site{path, t});
}

TermPtr rebuild_at(const TermPtr& t, const std::vector<bool>& path,
                   std::size_t depth, const TermPtr& sub) {
    if (depth == path.size()) return sub;
    if (path[depth])
        return ProcessTerm::parallel(t->left,
                                     rebuild_at(t->right, path, depth + 1, sub),
                                     t->loc);
    return ProcessTerm::parallel(rebuild_at(t->left, path, depth + 1, sub),
                                 t->right, t->loc);
}

// rebuild two disjoint sites at once (for communication)
TermPtr rebuild_two(const TermPtr& root, const Site& a, const TermPtr& sa,
                    const Site& b, const TermPtr& sb) {
    return rebuild_at(rebuild_at(root, a.path, 0, sa), b.path, 0, sb);
}

// ---- expression focusing -------------------------------------------------

// path to the leftmost reducible expression, as child indices through Plus
// nodes; empty path means the root expression is the redex
bool is_value_expr(const ExprPtr& e) {
    return e->kind == Expr::Kind::Literal || e->kind == Expr::Kind::Var;
}

bool find_redex(const ExprPtr& e, std::vector<int>& path) {
    switch (e->kind) {
    case Expr::Kind::Literal:
    case Expr::Kind::Var: return false;
    case Expr::Kind::Measure: return true;
    case Expr::Kind::Plus:
        if (!is_value_expr(e->lhs)) {
            path.push_back(0);
            return find_redex(e->lhs, path);
        }
        if (!is_value_expr(e->rhs)) {
            path.push_back(1);
            return find_redex(e->rhs, path);
        }
        return true; // sum of two values
    }
    return false;
}

const ExprPtr& expr_at(const ExprPtr& e, const std::vector<int>& path,
                       std::size_t depth) {
    if (depth == path.size()) return e;
    return expr_at(path[depth] == 0 ? e->lhs : e->rhs, path, depth + 1);
}

ExprPtr replace_at(const ExprPtr& e, const std::vector<int>& path,
                   std::size_t depth, const ExprPtr& sub) {
    if (depth == path.size()) return sub;
    if (path[depth] == 0)
        return Expr::plus(replace_at(e->lhs, path, depth + 1, sub), e->rhs, e->loc);
    return Expr::plus(e->lhs, replace_at(e->rhs, path, depth + 1, sub), e->loc);
}

// ---- the step engine -----------------------------------------------------

struct Engine {
    const Configuration& cfg;
    const EnvironmentInputs& env;

    int d() const { return cfg.dimension(); }

    // -- helpers ----------------------------------------------------------

    long eval_value(const ExprPtr& e, const Component& comp) const {
        switch (e->kind) {
        case Expr::Kind::Literal: return e->value;
        case Expr::Kind::Var: {
            for (std::size_t i = 0; i < cfg.abstracted().size(); ++i)
                if (cfg.abstracted()[i] == e->name) return comp.values[i];
            if (comp.sigma.has_qudit(e->name))
                sem_fail(SemErrorKind::TypeViolation,
                         "qudit '" + e->name + "' used as a classical value");
            sem_fail(SemErrorKind::UnboundName,
                     "unbound value '" + e->name + "' at evaluation");
        }
        case Expr::Kind::Plus:
            return eval_value(e->lhs, comp) + eval_value(e->rhs, comp);
        case Expr::Kind::Measure:
            sem_fail(SemErrorKind::NotReady, "measure is not a value");
        }
        sem_fail(SemErrorKind::NotReady, "unevaluable expression");
    }

    bool is_placeholder(const std::string& name) const {
        return std::find(cfg.abstracted().begin(), cfg.abstracted().end(), name) !=
               cfg.abstracted().end();
    }

    void require_owned(const std::vector<std::string>& targets,
                       const char* what) const {
        const auto& sigma = cfg.components().front().sigma;
        for (const auto& t : targets) {
            if (!sigma.has_qudit(t))
                sem_fail(SemErrorKind::UnknownQudit,
                         std::string(what) + ": no qudit '" + t + "' in the store");
            if (!cfg.owns(t))
                sem_fail(SemErrorKind::OwnershipViolation,
                         std::string(what) + ": qudit '" + t +
                             "' is not owned by the term");
        }
    }

    // names a freshly bound qudit/channel must not collide with: everything
    // the run ever minted, everything visible in the store, plus the free
    // names of the whole term (a sibling site may refer to them)
    std::set<std::string> avoid_set() const {
        std::set<std::string> avoid = cfg.used_names();
        for (const auto& n : lang::free_names(cfg.term())) avoid.insert(n);
        for (const auto& a : cfg.abstracted()) avoid.insert(a);
        return avoid;
    }

    std::string fresh_name(const std::string& base, std::set<std::string>& avoid,
                           int& counter) const {
        if (!avoid.count(base)) {
            avoid.insert(base);
            return base;
        }
        std::string cand;
        do {
            cand = base + "#" + std::to_string(++counter);
        } while (avoid.count(cand));
        avoid.insert(cand);
        return cand;
    }

    Configuration make(std::vector<Component> comps,
                       std::vector<std::string> abstracted, TermPtr term,
                       std::vector<std::string> omega,
                       std::set<std::string> priv, std::set<std::string> used,
                       int counter) const {
        return Configuration(d(), std::move(comps), std::move(abstracted),
                             std::move(term), std::move(omega), std::move(priv),
                             std::move(used), counter);
    }

    Configuration with_term_comps(TermPtr term, std::vector<Component> comps,
                                  std::vector<std::string> abstracted) const {
        return make(std::move(comps), std::move(abstracted), std::move(term),
                    cfg.omega(), cfg.private_channels(), cfg.used_names(),
                    cfg.fresh_counter());
    }

    // -- per-site internal steps ------------------------------------------

    std::optional<Transition> site_internal(const Site& site) const {
        switch (site.leaf->kind) {
        case ProcessTerm::Kind::QditAlloc: return alloc_step(site);
        case ProcessTerm::Kind::NewChan: return newchan_step(site);
        case ProcessTerm::Kind::Action: return action_step(site);
        case ProcessTerm::Kind::Output: return output_expr_step(site);
        case ProcessTerm::Kind::Call:
            sem_fail(SemErrorKind::UnboundName,
                     "unexpanded call to '" + site.leaf->name + "'");
        default: return std::nullopt;
        }
    }

    Transition alloc_step(const Site& site) const {
        const auto& leaf = site.leaf;
        std::set<std::string> avoid = avoid_set();
        std::set<std::string> used = cfg.used_names();
        int counter = cfg.fresh_counter();
        lang::Subst ren;
        std::vector<std::string> fresh;
        for (const auto& n : leaf->names) {
            std::string name = fresh_name(n, avoid, counter);
            used.insert(name);
            if (name != n) ren[n] = name;
            fresh.push_back(std::move(name));
        }
        core::QuantumState zeros = core::make_state(d(), fresh);
        std::vector<Component> comps;
        comps.reserve(cfg.components().size());
        for (const auto& c : cfg.components())
            comps.push_back(Component{c.weight, core::join(c.sigma, zeros), c.values});
        TermPtr cont = leaf->cont;
        if (!ren.empty()) {
            std::set<std::string> range;
            for (const auto& [k, v] : ren) range.insert(std::get<std::string>(v));
            cont = lang::substitute(lang::rename_binders_avoiding(cont, range), ren);
        }
        std::vector<std::string> omega = cfg.omega();
        for (const auto& n : fresh) omega.push_back(n);
        TermPtr term = rebuild_at(cfg.term(), site.path, 0, cont);
        return Transition{
            TransitionLabel::tau("qdit " + join(fresh)),
            make(std::move(comps), cfg.abstracted(), std::move(term),
                 std::move(omega), cfg.private_channels(), std::move(used), counter)};
    }

    Transition newchan_step(const Site& site) const {
        const auto& leaf = site.leaf;
        std::set<std::string> avoid = avoid_set();
        std::set<std::string> used = cfg.used_names();
        int counter = cfg.fresh_counter();
        std::string name = fresh_name(leaf->name, avoid, counter);
        used.insert(name);
        TermPtr cont = leaf->cont;
        if (name != leaf->name) {
            cont = lang::rename_binders_avoiding(cont, {name});
            cont = lang::substitute(cont, {{leaf->name, name}});
        }
        std::set<std::string> priv = cfg.private_channels();
        priv.insert(name);
        TermPtr term = rebuild_at(cfg.term(), site.path, 0, cont);
        return Transition{TransitionLabel::tau("new " + name),
                          make(cfg.components(), cfg.abstracted(), std::move(term),
                               cfg.omega(), std::move(priv), std::move(used),
                               counter)};
    }

    // gate application, or evaluation inside the gate exponent
    Transition action_step(const Site& site) const {
        const auto& leaf = site.leaf;
        if (leaf->gate.exponent) {
            std::vector<int> path;
            if (find_redex(leaf->gate.exponent, path))
                return expr_transition(site, ExprSlot{true, 0}, path);
        }
        require_owned(leaf->targets, "transform");

        GateRef ref = leaf->gate;
        auto spec_for = [&](const Component& comp) {
            long e = ref.exponent ? eval_value(ref.exponent, comp) : 1;
            if (ref.negated) e = -e;
            switch (ref.kind) {
            case GateRef::Kind::Hadamard: return core::GateSpec::hadamard();
            case GateRef::Kind::ShiftX: return core::GateSpec::shift_x(e);
            case GateRef::Kind::PhaseZ: return core::GateSpec::phase_z(e);
            case GateRef::Kind::CnotRight: return core::GateSpec::cnot_right();
            case GateRef::Kind::CnotLeft: return core::GateSpec::cnot_left();
            }
            return core::GateSpec::hadamard();
        };

        std::vector<Component> comps;
        comps.reserve(cfg.components().size());
        for (const auto& c : cfg.components())
            comps.push_back(Component{
                c.weight, core::apply_gate(c.sigma, leaf->targets, spec_for(c)),
                c.values});
        TermPtr term = rebuild_at(cfg.term(), site.path, 0, leaf->cont);
        return Transition{
            TransitionLabel::tau("gate " + lang::pretty_gate(leaf->gate) + " " +
                                 join(leaf->targets)),
            with_term_comps(std::move(term), std::move(comps), cfg.abstracted())};
    }

    // location of an expression inside a leaf: either the gate exponent or
    // the arg_index-th output payload entry
    struct ExprSlot {
        bool in_gate;
        std::size_t arg_index;
    };

    std::optional<Transition> output_expr_step(const Site& site) const {
        const auto& leaf = site.leaf;
        for (std::size_t i = 0; i < leaf->args.size(); ++i) {
            std::vector<int> path;
            if (find_redex(leaf->args[i], path))
                return expr_transition(site, ExprSlot{false, i}, path);
        }
        return std::nullopt; // payload fully evaluated
    }

    // apply one value rule (sum or measurement) at the focused expression
    Transition expr_transition(const Site& site, ExprSlot slot,
                               const std::vector<int>& path) const {
        const auto& leaf = site.leaf;
        const ExprPtr& root =
            slot.in_gate ? leaf->gate.exponent : leaf->args[slot.arg_index];
        const ExprPtr& redex = expr_at(root, path, 0);

        std::string placeholder = "%" + std::to_string(cfg.abstracted().size());
        std::vector<std::string> abstracted = cfg.abstracted();
        abstracted.push_back(placeholder);

        std::vector<Component> comps;
        std::string detail;
        if (redex->kind == Expr::Kind::Plus) {
            detail = "plus";
            comps.reserve(cfg.components().size());
            for (const auto& c : cfg.components()) {
                long w = eval_value(redex->lhs, c) + eval_value(redex->rhs, c);
                Component nc{c.weight, c.sigma, c.values};
                nc.values.push_back(w);
                comps.push_back(std::move(nc));
            }
        } else { // Measure
            require_owned(redex->targets, "measure");
            detail = "measure " + join(redex->targets);
            for (const auto& c : cfg.components()) {
                auto outcomes = core::measure(c.sigma, redex->targets);
                for (auto& oc : outcomes) {
                    Component nc{c.weight * oc.weight, std::move(oc.post_state),
                                 c.values};
                    nc.values.push_back(oc.outcome);
                    comps.push_back(std::move(nc));
                }
            }
        }

        ExprPtr new_root = replace_at(root, path, 0, Expr::var(placeholder));
        TermPtr new_leaf;
        if (slot.in_gate) {
            GateRef gate = leaf->gate;
            gate.exponent = new_root;
            new_leaf = ProcessTerm::action(leaf->targets, std::move(gate), leaf->cont,
                                           leaf->loc);
        } else {
            std::vector<ExprPtr> args = leaf->args;
            args[slot.arg_index] = new_root;
            new_leaf = ProcessTerm::output(leaf->chan, std::move(args), leaf->cont,
                                           leaf->loc);
        }
        TermPtr term = rebuild_at(cfg.term(), site.path, 0, new_leaf);
        return Transition{
            TransitionLabel::tau(detail),
            with_term_comps(std::move(term), std::move(comps), std::move(abstracted))};
    }

    // -- communication ------------------------------------------------------

    bool output_ready(const TermPtr& leaf) const {
        if (leaf->kind != ProcessTerm::Kind::Output) return false;
        for (const auto& a : leaf->args) {
            std::vector<int> path;
            if (find_redex(a, path)) return false;
        }
        return true;
    }

    // substitution delivering an output payload into input params; checks
    // slot kinds against what the value actually is
    lang::Subst delivery(const TermPtr& out_leaf, const TermPtr& in_leaf) const {
        const auto& sigma = cfg.components().front().sigma;
        lang::Subst s;
        for (std::size_t i = 0; i < in_leaf->params.size(); ++i) {
            const lang::Param& p = in_leaf->params[i];
            const ExprPtr& a = out_leaf->args[i];
            bool qdit_slot = p.type.kind == lang::TypeExpr::Kind::Qdit;
            if (a->kind == Expr::Kind::Literal) {
                if (qdit_slot)
                    sem_fail(SemErrorKind::TypeViolation,
                             "channel '" + out_leaf->chan +
                                 "' delivers a value into qudit slot '" + p.name + "'");
                s[p.name] = a->value;
            } else { // Var: placeholder or qudit name
                if (is_placeholder(a->name)) {
                    if (qdit_slot)
                        sem_fail(SemErrorKind::TypeViolation,
                                 "channel '" + out_leaf->chan +
                                     "' delivers a value into qudit slot '" + p.name +
                                     "'");
                    s[p.name] = a->name;
                } else if (sigma.has_qudit(a->name)) {
                    if (!qdit_slot)
                        sem_fail(SemErrorKind::TypeViolation,
                                 "channel '" + out_leaf->chan +
                                     "' delivers qudit '" + a->name +
                                     "' into value slot '" + p.name + "'");
                    if (!cfg.owns(a->name))
                        sem_fail(SemErrorKind::OwnershipViolation,
                                 "sending unowned qudit '" + a->name + "'");
                    s[p.name] = a->name;
                } else {
                    sem_fail(SemErrorKind::UnboundName,
                             "output of unbound name '" + a->name + "'");
                }
            }
        }
        return s;
    }

    std::optional<Transition> comm_step(const Site& out_site,
                                        const Site& in_site) const {
        const TermPtr& o = out_site.leaf;
        const TermPtr& i = in_site.leaf;
        if (i->kind != ProcessTerm::Kind::Input) return std::nullopt;
        if (!output_ready(o)) return std::nullopt;
        if (o->chan != i->chan) return std::nullopt;
        if (o->args.size() != i->params.size()) return std::nullopt; // no sync
        lang::Subst s = delivery(o, i);
        std::set<std::string> range;
        for (const auto& [k, v] : s)
            if (const auto* n = std::get_if<std::string>(&v)) range.insert(*n);
        TermPtr in_cont = lang::substitute(
            lang::rename_binders_avoiding(i->cont, range), s);
        TermPtr term = rebuild_two(cfg.term(), out_site, o->cont, in_site, in_cont);
        return Transition{TransitionLabel::tau("comm " + o->chan),
                          with_term_comps(std::move(term), cfg.components(),
                                          cfg.abstracted())};
    }

    // -- external interactions ----------------------------------------------

    std::optional<Transition> external_input(const Site& site) const {
        const TermPtr& leaf = site.leaf;
        if (cfg.private_channels().count(leaf->chan)) return std::nullopt;

        lang::Subst s;
        ValueTuple tuple;
        std::set<std::string> avoid = avoid_set();
        std::set<std::string> used = cfg.used_names();
        int counter = cfg.fresh_counter();
        std::vector<std::pair<std::string, std::vector<core::cx>>> incoming;
        for (const auto& p : leaf->params) {
            if (p.type.kind == lang::TypeExpr::Kind::Qdit) {
                auto amps = env.state_for(p.name, d());
                if (!amps) return std::nullopt;
                std::string name = fresh_name(p.name, avoid, counter);
                used.insert(name);
                incoming.emplace_back(name, std::move(*amps));
                s[p.name] = name;
                tuple.push_back(Value::of_name(name));
            } else {
                auto v = env.val_for(p.name);
                if (!v) return std::nullopt;
                s[p.name] = *v;
                tuple.push_back(Value::of(*v));
            }
        }

        std::vector<Component> comps;
        comps.reserve(cfg.components().size());
        for (const auto& c : cfg.components()) {
            core::QuantumState sigma = c.sigma;
            for (const auto& [name, amps] : incoming)
                sigma = core::join(sigma, core::QuantumState(d(), {name}, amps));
            comps.push_back(Component{c.weight, std::move(sigma), c.values});
        }
        std::vector<std::string> omega = cfg.omega();
        for (const auto& [name, amps] : incoming) omega.push_back(name);

        std::set<std::string> range;
        for (const auto& [k, v] : s)
            if (const auto* n = std::get_if<std::string>(&v)) range.insert(*n);
        TermPtr cont = lang::substitute(
            lang::rename_binders_avoiding(leaf->cont, range), s);
        TermPtr term = rebuild_at(cfg.term(), site.path, 0, cont);
        return Transition{TransitionLabel::input(leaf->chan, std::move(tuple)),
                          make(std::move(comps), cfg.abstracted(), std::move(term),
                               std::move(omega), cfg.private_channels(),
                               std::move(used), counter)};
    }

    std::optional<Transition> external_output(const Site& site) const {
        const TermPtr& leaf = site.leaf;
        if (cfg.private_channels().count(leaf->chan)) return std::nullopt;
        if (!output_ready(leaf)) return std::nullopt;

        // per-component emitted tuples, and the qudits leaving the term
        const auto& sigma0 = cfg.components().front().sigma;
        std::vector<std::string> sent_qudits;
        bool mentions_placeholder = false;
        for (const auto& a : leaf->args) {
            if (a->kind != Expr::Kind::Var) continue;
            if (is_placeholder(a->name)) {
                mentions_placeholder = true;
            } else if (sigma0.has_qudit(a->name)) {
                if (!cfg.owns(a->name))
                    sem_fail(SemErrorKind::OwnershipViolation,
                             "sending unowned qudit '" + a->name + "'");
                sent_qudits.push_back(a->name);
            } else {
                sem_fail(SemErrorKind::UnboundName,
                         "output of unbound name '" + a->name + "'");
            }
        }

        auto tuple_of = [&](const Component& c) {
            ValueTuple t;
            for (const auto& a : leaf->args) {
                if (a->kind == Expr::Kind::Literal) {
                    t.push_back(Value::of(a->value));
                } else if (is_placeholder(a->name)) {
                    t.push_back(Value::of(eval_value(a, c)));
                } else {
                    t.push_back(Value::of_name(a->name));
                }
            }
            return t;
        };

        std::vector<std::string> omega;
        for (const auto& q : cfg.omega())
            if (std::find(sent_qudits.begin(), sent_qudits.end(), q) ==
                sent_qudits.end())
                omega.push_back(q);

        TermPtr term = rebuild_at(cfg.term(), site.path, 0, leaf->cont);

        std::vector<ValueTuple> tuples;
        for (const auto& c : cfg.components()) tuples.push_back(tuple_of(c));
        std::vector<ValueTuple> label_set = tuples;
        std::sort(label_set.begin(), label_set.end());
        label_set.erase(std::unique(label_set.begin(), label_set.end()),
                        label_set.end());
        TransitionLabel label = TransitionLabel::output(leaf->chan, label_set);

        if (!mentions_placeholder) {
            // nothing observable distinguishes the components; the mixture
            // survives the output unresolved
            return Transition{std::move(label),
                              make(cfg.components(), cfg.abstracted(), std::move(term),
                                   std::move(omega), cfg.private_channels(),
                                   cfg.used_names(), cfg.fresh_counter())};
        }

        // group components by emitted tuple; each group becomes one branch
        ProbDistribution dist;
        for (const auto& key : label_set) {
            std::vector<Component> group;
            double p = 0.0;
            for (std::size_t ci = 0; ci < tuples.size(); ++ci) {
                if (tuples[ci] == key) {
                    group.push_back(cfg.components()[ci]);
                    p += cfg.components()[ci].weight;
                }
            }
            for (auto& g : group) g.weight /= p;
            dist.branches.emplace_back(
                p, make(std::move(group), cfg.abstracted(), term, omega,
                        cfg.private_channels(), cfg.used_names(),
                        cfg.fresh_counter()));
        }
        return Transition{std::move(label), std::move(dist)};
    }
};

} // namespace

std::vector<Transition> transitions(const Configuration& cfg,
                                    const EnvironmentInputs& env) {
    Engine engine{cfg, env};
    std::vector<Site> sites;
    std::vector<bool> path;
    collect_sites(cfg.term(), path, sites);

    std::vector<Transition> out;
    for (const auto& site : sites)
        if (auto t = engine.site_internal(site)) out.push_back(std::move(*t));

    for (std::size_t i = 0; i < sites.size(); ++i)
        for (std::size_t j = 0; j < sites.size(); ++j)
            if (i != j)
                if (auto t = engine.comm_step(sites[i], sites[j]))
                    out.push_back(std::move(*t));

    for (const auto& site : sites)
        if (site.leaf->kind == ProcessTerm::Kind::Input)
            if (auto t = engine.external_input(site)) out.push_back(std::move(*t));

    for (const auto& site : sites)
        if (site.leaf->kind == ProcessTerm::Kind::Output)
            if (auto t = engine.external_output(site)) out.push_back(std::move(*t));

    return out;
}

std::vector<Transition> transitions(const ProbDistribution& dist) {
    std::vector<Transition> out;
    for (std::size_t i = 0; i < dist.branches.size(); ++i)
        out.push_back(Transition{
            TransitionLabel::prob_branch(dist.branches[i].first,
                                         "branch " + std::to_string(i)),
            dist.branches[i].second});
    return out;
}

namespace {

// the evaluation fragment of the transition relation: one sum, measurement
// or gate-application step at the leftmost focused expression
std::optional<Transition> evaluation_step(const Configuration& cfg) {
    Engine engine{cfg, {}};
    std::vector<Site> sites;
    std::vector<bool> path;
    collect_sites(cfg.term(), path, sites);
    for (const auto& site : sites) {
        if (site.leaf->kind == ProcessTerm::Kind::Action)
            return engine.action_step(site);
        if (site.leaf->kind == ProcessTerm::Kind::Output)
            if (auto t = engine.output_expr_step(site)) return t;
    }
    return std::nullopt;
}

} // namespace

Configuration value_step(const Configuration& cfg) {
    if (cfg.components().size() != 1)
        sem_fail(SemErrorKind::NotReady,
                 "value_step expects a single-component configuration");
    if (auto t = evaluation_step(cfg)) return std::get<Configuration>(t->next);
    sem_fail(SemErrorKind::NotReady, "no evaluable expression in the term");
}

Configuration expr_step(const Configuration& cfg) {
    if (auto t = evaluation_step(cfg)) return std::get<Configuration>(t->next);
    sem_fail(SemErrorKind::NotReady, "no evaluable expression in the term");
}

std::pair<TransitionLabel, ProbDistribution>
output_resolve(const Configuration& cfg) {
    Engine engine{cfg, {}};
    std::vector<Site> sites;
    std::vector<bool> path;
    collect_sites(cfg.term(), path, sites);
    for (const auto& site : sites) {
        if (site.leaf->kind != ProcessTerm::Kind::Output) continue;
        if (cfg.private_channels().count(site.leaf->chan)) continue;
        if (auto t = engine.external_output(site)) {
            if (auto* dist = std::get_if<ProbDistribution>(&t->next))
                return {t->label, std::move(*dist)};
            // output of plain values from a pure configuration: degenerate
            // single-branch distribution
            ProbDistribution dist;
            dist.branches.emplace_back(1.0, std::get<Configuration>(t->next));
            return {t->label, std::move(dist)};
        }
    }
    sem_fail(SemErrorKind::NotReady, "no resolvable external output");
}

const Configuration& sample_branch(const ProbDistribution& dist,
                                   std::mt19937_64& rng) {
    if (dist.branches.empty())
        sem_fail(SemErrorKind::StuckComponent, "empty distribution");
    double total = 0.0;
    for (const auto& [p, c] : dist.branches) total += p;
    std::uniform_real_distribution<double> u(0.0, total);
    double x = u(rng);
    double acc = 0.0;
    for (const auto& [p, c] : dist.branches) {
        acc += p;
        if (x <= acc) return c;
    }
    return dist.branches.back().second;
}

} // namespace cqp::sem

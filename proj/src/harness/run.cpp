#include "cqp/harness/run.hpp"

#include <cstdio>
#include <random>
#include <set>

#include "cqp/lang/pretty.hpp"

namespace cqp::harness {

const char* trace_status_name(TraceStatus s) {
    switch (s) {
    case TraceStatus::Terminated: return "terminated";
    case TraceStatus::Deadlock: return "deadlock";
    case TraceStatus::DepthExceeded: return "depth-exceeded";
    }
    return "?";
}

std::string Trace::label_key() const {
    std::string key;
    for (const auto& s : steps) {
        key += sem::label_to_string(s.label);
        key += ";";
    }
    return key;
}

std::string successor_digest(const sem::Successor& s) {
    if (const auto* cfg = std::get_if<sem::Configuration>(&s)) return cfg->digest();
    const auto& dist = std::get<sem::ProbDistribution>(s);
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](const std::string& data) {
        for (unsigned char c : data) {
            h ^= c;
            h *= 1099511628211ull;
        }
    };
    for (const auto& [p, cfg] : dist.branches) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.12g|", p);
        mix(buf);
        mix(cfg.digest());
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

std::size_t pick_index(const Schedule& sched, std::size_t n_choices,
                       const std::vector<double>* probs, std::mt19937_64& rng,
                       std::size_t& script_pos) {
    switch (sched.policy) {
    case Schedule::Policy::Exhaustive: return 0;
    case Schedule::Policy::Seeded: {
        if (probs) {
            std::discrete_distribution<std::size_t> dist(probs->begin(),
                                                         probs->end());
            return dist(rng);
        }
        std::uniform_int_distribution<std::size_t> dist(0, n_choices - 1);
        return dist(rng);
    }
    case Schedule::Policy::Scripted: {
        if (script_pos >= sched.script.size())
            sem::sem_fail(sem::SemErrorKind::BadScript,
                          "script exhausted after " + std::to_string(script_pos) +
                              " steps");
        int idx = sched.script[script_pos++];
        if (idx < 0 || static_cast<std::size_t>(idx) >= n_choices)
            sem::sem_fail(sem::SemErrorKind::BadScript,
                          "script index " + std::to_string(idx) + " outside [0," +
                              std::to_string(n_choices) + ")");
        return static_cast<std::size_t>(idx);
    }
    }
    return 0;
}

} // namespace

Trace run(const lang::Program& program, int d, const sem::EnvironmentInputs& env,
          const Schedule& schedule) {
    Trace trace;
    trace.dimension = d;
    trace.initial = sem::Configuration::initial(program, d);

    std::mt19937_64 rng(schedule.seed);
    std::size_t script_pos = 0;
    sem::Successor cur = trace.initial;

    for (int step = 0; step < schedule.depth; ++step) {
        if (const auto* cfg = std::get_if<sem::Configuration>(&cur)) {
            auto ts = sem::transitions(*cfg, env);
            if (ts.empty()) {
                if (cfg->is_terminated()) {
                    trace.status = TraceStatus::Terminated;
                } else {
                    trace.status = TraceStatus::Deadlock;
                    trace.residual = lang::pretty_term(cfg->term());
                }
                return trace;
            }
            std::size_t pick =
                pick_index(schedule, ts.size(), nullptr, rng, script_pos);
            sem::Successor next = std::move(ts[pick].next);
            trace.steps.push_back(TraceStep{std::move(ts[pick].label),
                                            successor_digest(next), next});
            cur = std::move(next);
        } else {
            const auto& dist = std::get<sem::ProbDistribution>(cur);
            std::vector<double> probs;
            probs.reserve(dist.branches.size());
            for (const auto& [p, c] : dist.branches) probs.push_back(p);
            std::size_t pick =
                pick_index(schedule, dist.branches.size(), &probs, rng, script_pos);
            sem::Successor next = dist.branches[pick].second;
            trace.steps.push_back(
                TraceStep{sem::TransitionLabel::prob_branch(
                              dist.branches[pick].first,
                              "branch " + std::to_string(pick)),
                          successor_digest(next), next});
            cur = std::move(next);
        }
    }
    trace.status = TraceStatus::DepthExceeded;
    return trace;
}

std::vector<Trace> enumerate(const lang::Program& program, int d,
                             const sem::EnvironmentInputs& env, int depth) {
    std::vector<Trace> out;
    std::set<std::string> seen;

    sem::Successor initial = sem::Configuration::initial(program, d);

    struct Node {
        sem::Successor state;
        std::vector<TraceStep> steps;
    };
    std::vector<Node> stack;
    stack.push_back(Node{initial, {}});

    auto finish = [&](Node&& node, TraceStatus status, std::string residual) {
        Trace t;
        t.dimension = d;
        t.initial = initial;
        t.steps = std::move(node.steps);
        t.status = status;
        t.residual = std::move(residual);
        if (seen.insert(t.label_key() + "|" + trace_status_name(status)).second)
            out.push_back(std::move(t));
    };

    while (!stack.empty()) {
        Node node = std::move(stack.back());
        stack.pop_back();

        if (static_cast<int>(node.steps.size()) >= depth) {
            finish(std::move(node), TraceStatus::DepthExceeded, "");
            continue;
        }

        std::vector<sem::Transition> ts;
        if (const auto* cfg = std::get_if<sem::Configuration>(&node.state)) {
            ts = sem::transitions(*cfg, env);
            if (ts.empty()) {
                bool done = cfg->is_terminated();
                std::string residual =
                    done ? "" : lang::pretty_term(cfg->term());
                finish(std::move(node), done ? TraceStatus::Terminated
                                             : TraceStatus::Deadlock,
                       std::move(residual));
                continue;
            }
        } else {
            ts = sem::transitions(std::get<sem::ProbDistribution>(node.state));
        }

        // push in reverse so exploration visits transition 0 first
        for (std::size_t i = ts.size(); i-- > 0;) {
            Node next;
            next.state = std::move(ts[i].next);
            next.steps = node.steps;
            next.steps.push_back(TraceStep{std::move(ts[i].label),
                                           successor_digest(next.state),
                                           next.state});
            stack.push_back(std::move(next));
        }
    }
    return out;
}

namespace {

// embedded copies of corpus/teleport.cqp and corpus/sdc.cqp; the CLI test
// suite asserts these stay in sync with the shipped files
const std::string kTeleportSource = R"(# Qudit teleportation: Alice forwards an unknown qudit received on c to Bob,
# who re-emits it on d after phase/shift corrections.
Alice(c:^[Qdit], e:^[Val,Val]) = c?[x:Qdit].{x,z *= Lc}.{x *= H}.e![measure z, measure x].0
Bob(d:^[Qdit], e:^[Val,Val])   = e?[m1:Val, m2:Val].{y *= X^-m1}.{y *= Z^m2}.d![y].0
Teleport(c:^[Qdit], d:^[Qdit]) = (qdit y,z)({z *= H}.{z,y *= Rc}.(new e:^[Val,Val])(Alice(c,e) | Bob(d,e)))
main = Teleport(c,d)
)";

const std::string kSdcSource = R"(# Superdense coding: Alice encodes two values into one qudit of a shared
# entangled pair; Bob decodes them by joint measurement.
Alice(c:^[Val,Val], e:^[Qdit]) = c?[a:Val, b:Val].{q1 *= X^b}.{q1 *= Z^a}.e![q1].0
Bob(d:^[Val,Val], e:^[Qdit])   = e?[q1:Qdit].{q1,q2 *= Lc}.{q1 *= H}.d![measure q1, measure q2].0
SDC(c:^[Val,Val], d:^[Val,Val]) = (qdit q1,q2)({q1 *= H}.{q1,q2 *= Rc}.(new e:^[Qdit])(Alice(c,e) | Bob(d,e)))
main = SDC(c,d)
)";

} // namespace

bool is_builtin(const std::string& name) {
    return name == "teleport" || name == "sdc";
}

const std::string& builtin_source(const std::string& name) {
    if (name == "teleport") return kTeleportSource;
    if (name == "sdc") return kSdcSource;
    throw std::invalid_argument("unknown builtin protocol '" + name +
                                "' (expected teleport or sdc)");
}

} // namespace cqp::harness

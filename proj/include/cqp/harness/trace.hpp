#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cqp/lang/ast.hpp"
#include "cqp/sem/transitions.hpp"

namespace cqp::harness {

// How the scheduler resolves nondeterminism between enabled transitions.
struct Schedule {
    enum class Policy {
        Exhaustive, // explore everything (enumerate); run() picks the first
        Seeded,     // uniform choice among enabled steps, branch sampling by
                    // probability; reproducible from the seed
        Scripted,   // explicit transition index at every step
    };

    Policy policy = Policy::Seeded;
    int depth = 256;
    std::uint64_t seed = 0;
    std::vector<int> script;

    static Schedule seeded(std::uint64_t seed, int depth = 256) {
        Schedule s;
        s.policy = Policy::Seeded;
        s.seed = seed;
        s.depth = depth;
        return s;
    }
    static Schedule scripted(std::vector<int> script, int depth = 256) {
        Schedule s;
        s.policy = Policy::Scripted;
        s.script = std::move(script);
        s.depth = depth;
        return s;
    }
    static Schedule exhaustive(int depth = 256) {
        Schedule s;
        s.policy = Policy::Exhaustive;
        s.depth = depth;
        return s;
    }
};

enum class TraceStatus { Terminated, Deadlock, DepthExceeded };

const char* trace_status_name(TraceStatus s);

struct TraceStep {
    sem::TransitionLabel label;
    std::string digest; // of the state after the step
    sem::Successor state;
};

struct Trace {
    int dimension = 0;
    sem::Successor initial;
    std::vector<TraceStep> steps;
    TraceStatus status = TraceStatus::Terminated;
    std::string residual; // pretty-printed stuck term, when deadlocked

    Trace() : initial(sem::ProbDistribution{}) {}

    const sem::Successor& final_state() const {
        return steps.empty() ? initial : steps.back().state;
    }
    // label sequence key used for deduplication
    std::string label_key() const;
};

std::string successor_digest(const sem::Successor& s);

} // namespace cqp::harness

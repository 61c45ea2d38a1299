#include "cqp/core/state.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "cqp/core/kernels.hpp"

namespace cqp::core {

namespace {

constexpr double kNormTol = 1e-9;

std::string join_names(const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out += ",";
        out += names[i];
    }
    return out;
}

void require_distinct(const std::vector<std::string>& names, ErrorKind kind,
                      const char* what) {
    std::set<std::string> seen;
    for (const auto& n : names)
        if (!seen.insert(n).second)
            fail(kind, std::string(what) + ": repeated name '" + n + "'");
}

} // namespace

QuantumState::QuantumState(int dimension, std::vector<std::string> names,
                           std::vector<cx> amplitudes)
    : d_(dimension), names_(std::move(names)), amps_(std::move(amplitudes)) {
    if (d_ < 2) fail(ErrorKind::InvalidDimension, "state: dimension must be >= 2");
    require_distinct(names_, ErrorKind::DuplicateName, "state");
    const std::size_t want = kernels::pow_size(d_, static_cast<int>(names_.size()));
    if (amps_.size() != want)
        fail(ErrorKind::ShapeMismatch,
             "state: expected " + std::to_string(want) + " amplitudes, got " +
                 std::to_string(amps_.size()));
    const double n2 = kernels::norm_sq(amps_.data(), amps_.size());
    if (std::abs(n2 - 1.0) > kNormTol)
        fail(ErrorKind::NotNormalized,
             "state: squared norm " + std::to_string(n2) + " is not 1");
}

bool QuantumState::has_qudit(const std::string& name) const {
    return std::find(names_.begin(), names_.end(), name) != names_.end();
}

int QuantumState::position_of(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end())
        fail(ErrorKind::UnknownName, "no qudit named '" + name + "' in state [" +
                                         join_names(names_) + "]");
    return static_cast<int>(it - names_.begin());
}

QuantumState make_state(int dimension, std::vector<std::string> names) {
    if (dimension < 2)
        fail(ErrorKind::InvalidDimension, "make_state: dimension must be >= 2");
    std::vector<cx> amps(kernels::pow_size(dimension, static_cast<int>(names.size())),
                         cx(0.0, 0.0));
    amps[0] = cx(1.0, 0.0);
    return QuantumState(dimension, std::move(names), std::move(amps));
}

QuantumState basis_state(int dimension, std::vector<std::string> names,
                         const std::vector<int>& digits) {
    if (digits.size() != names.size())
        fail(ErrorKind::ShapeMismatch, "basis_state: one digit per qudit required");
    std::size_t idx = 0;
    for (int dig : digits) {
        if (dig < 0 || dig >= dimension)
            fail(ErrorKind::IndexOutOfRange,
                 "basis_state: digit " + std::to_string(dig) + " outside [0," +
                     std::to_string(dimension) + ")");
        idx = idx * static_cast<std::size_t>(dimension) + static_cast<std::size_t>(dig);
    }
    std::vector<cx> amps(kernels::pow_size(dimension, static_cast<int>(names.size())),
                         cx(0.0, 0.0));
    amps[idx] = cx(1.0, 0.0);
    return QuantumState(dimension, std::move(names), std::move(amps));
}

QuantumState join(const QuantumState& a, const QuantumState& b) {
    if (a.dimension() != b.dimension())
        fail(ErrorKind::DimensionMismatch,
             "join: dimensions " + std::to_string(a.dimension()) + " and " +
                 std::to_string(b.dimension()) + " differ");
    std::vector<std::string> names = a.qudit_names();
    for (const auto& n : b.qudit_names()) {
        if (a.has_qudit(n))
            fail(ErrorKind::DuplicateName, "join: name '" + n + "' present on both sides");
        names.push_back(n);
    }
    std::vector<cx> out(a.size() * b.size());
    kernels::tensor(a.amplitudes().data(), a.size(), b.amplitudes().data(), b.size(),
                    out.data());
    return QuantumState(a.dimension(), std::move(names), std::move(out));
}

QuantumState apply_gate(const QuantumState& state,
                        const std::vector<std::string>& targets,
                        const GateSpec& gate) {
    if (static_cast<int>(targets.size()) != gate.arity())
        fail(ErrorKind::ArityMismatch,
             "apply_gate: " + gate_display(gate) + " takes " +
                 std::to_string(gate.arity()) + " target(s), got " +
                 std::to_string(targets.size()));
    require_distinct(targets, ErrorKind::RepeatedTarget, "apply_gate");

    const int d = state.dimension();
    const int n = state.num_qudits();
    auto stride_of = [&](const std::string& name) {
        return kernels::pow_size(d, n - 1 - state.position_of(name));
    };
    auto reduce = [&](long e) {
        long r = e % d;
        return static_cast<int>(r < 0 ? r + d : r);
    };

    const auto& in = state.amplitudes();
    std::vector<cx> out(in.size());
    switch (gate.kind) {
    case GateSpec::Kind::ShiftX:
        kernels::shift_x(in.data(), out.data(), in.size(), stride_of(targets[0]), d,
                         reduce(gate.j));
        break;
    case GateSpec::Kind::PhaseZ:
        kernels::phase_z(in.data(), out.data(), in.size(), stride_of(targets[0]), d,
                         reduce(gate.k));
        break;
    case GateSpec::Kind::PauliU:
        kernels::pauli_u(in.data(), out.data(), in.size(), stride_of(targets[0]), d,
                         reduce(gate.j), reduce(gate.k));
        break;
    case GateSpec::Kind::Hadamard:
        kernels::hadamard(in.data(), out.data(), in.size(), stride_of(targets[0]), d,
                          false);
        break;
    case GateSpec::Kind::HadamardInv:
        kernels::hadamard(in.data(), out.data(), in.size(), stride_of(targets[0]), d,
                          true);
        break;
    case GateSpec::Kind::CnotRight:
        kernels::cnot(in.data(), out.data(), in.size(), stride_of(targets[0]),
                      stride_of(targets[1]), d, false);
        break;
    case GateSpec::Kind::CnotLeft:
        kernels::cnot(in.data(), out.data(), in.size(), stride_of(targets[0]),
                      stride_of(targets[1]), d, true);
        break;
    }
    return QuantumState(d, state.qudit_names(), std::move(out));
}

QuantumState with_factor_order(const QuantumState& state,
                               const std::vector<std::string>& order) {
    if (order.size() != state.qudit_names().size())
        fail(ErrorKind::ShapeMismatch, "with_factor_order: wrong number of names");
    require_distinct(order, ErrorKind::RepeatedTarget, "with_factor_order");
    if (order == state.qudit_names()) return state;
    std::vector<int> old_of_new;
    old_of_new.reserve(order.size());
    for (const auto& n : order) old_of_new.push_back(state.position_of(n));
    std::vector<cx> out(state.size());
    kernels::permute(state.amplitudes().data(), out.data(), state.dimension(),
                     old_of_new);
    return QuantumState(state.dimension(), order, std::move(out));
}

std::vector<MeasurementOutcome> measure(const QuantumState& state,
                                        const std::vector<std::string>& targets) {
    if (targets.empty())
        fail(ErrorKind::EmptyTargets, "measure: no targets given");
    require_distinct(targets, ErrorKind::RepeatedTarget, "measure");

    // bring the measured factors to the front, in target-list order
    std::vector<std::string> order = targets;
    for (const auto& n : state.qudit_names())
        if (std::find(targets.begin(), targets.end(), n) == targets.end())
            order.push_back(n);
    for (const auto& n : targets) state.position_of(n); // surface unknown names
    const QuantumState fronted = with_factor_order(state, order);

    const int d = state.dimension();
    const int r = static_cast<int>(targets.size());
    const std::size_t block =
        kernels::pow_size(d, state.num_qudits() - r); // d^(n-r) entries per outcome

    std::vector<double> g;
    kernels::block_weights(fronted.amplitudes().data(), fronted.size(), block, g);

    double total = 0.0;
    for (double w : g) total += w;
    if (std::abs(total - 1.0) > kNormTol)
        fail(ErrorKind::NotNormalized,
             "measure: outcome weights sum to " + std::to_string(total));

    std::vector<MeasurementOutcome> outcomes;
    for (std::size_t m = 0; m < g.size(); ++m) {
        if (g[m] <= kZeroWeight) continue;
        std::vector<cx> post(fronted.size());
        kernels::collapse_block(fronted.amplitudes().data(), post.data(),
                                fronted.size(), block, m, 1.0 / std::sqrt(g[m]));
        QuantumState collapsed(d, order, std::move(post));
        outcomes.push_back(MeasurementOutcome{
            static_cast<long>(m), g[m],
            with_factor_order(collapsed, state.qudit_names())});
    }
    return outcomes;
}

QuantumState bell_state(int dimension, int n, int m,
                        const std::pair<std::string, std::string>& names) {
    if (dimension < 2)
        fail(ErrorKind::InvalidDimension, "bell_state: dimension must be >= 2");
    if (n < 0 || n >= dimension || m < 0 || m >= dimension)
        fail(ErrorKind::IndexOutOfRange,
             "bell_state: indices (" + std::to_string(n) + "," + std::to_string(m) +
                 ") outside [0," + std::to_string(dimension) + ")");
    if (names.first == names.second)
        fail(ErrorKind::DuplicateName, "bell_state: qudit names must differ");

    const std::size_t ud = static_cast<std::size_t>(dimension);
    std::vector<cx> amps(ud * ud, cx(0.0, 0.0));
    const double scale = 1.0 / std::sqrt(static_cast<double>(dimension));
    for (int jdx = 0; jdx < dimension; ++jdx) {
        int second = (jdx + m) % dimension;
        amps[static_cast<std::size_t>(jdx) * ud + static_cast<std::size_t>(second)] =
            omega(dimension, -static_cast<long>(jdx) * n) * scale;
    }
    return QuantumState(dimension, {names.first, names.second}, std::move(amps));
}

cx inner_product(const QuantumState& a, const QuantumState& b) {
    if (a.dimension() != b.dimension())
        fail(ErrorKind::DimensionMismatch, "inner_product: dimensions differ");
    if (a.size() != b.size())
        fail(ErrorKind::ShapeMismatch, "inner_product: qudit counts differ");
    return kernels::inner(a.amplitudes().data(), b.amplitudes().data(), a.size());
}

double fidelity(const QuantumState& a, const QuantumState& b) {
    return std::norm(inner_product(a, b));
}

double norm(const QuantumState& state) {
    return std::sqrt(kernels::norm_sq(state.amplitudes().data(), state.size()));
}

QuantumState discard(const QuantumState& state,
                     const std::vector<std::string>& names) {
    require_distinct(names, ErrorKind::RepeatedTarget, "discard");
    for (const auto& n : names) state.position_of(n);

    std::vector<std::string> kept;
    for (const auto& n : state.qudit_names())
        if (std::find(names.begin(), names.end(), n) == names.end())
            kept.push_back(n);
    if (kept.empty())
        fail(ErrorKind::EmptyTargets, "discard: cannot discard every qudit");

    std::vector<std::string> order = kept;
    for (const auto& n : names) order.push_back(n);
    const QuantumState arranged = with_factor_order(state, order);

    // view as K x M with rows indexed by the kept factors; a product state
    // makes this matrix rank one
    const int d = state.dimension();
    const std::size_t keep_dim = kernels::pow_size(d, static_cast<int>(kept.size()));
    const std::size_t drop_dim = arranged.size() / keep_dim;
    const auto& a = arranged.amplitudes();

    std::size_t best_col = 0;
    double best_norm = -1.0;
    for (std::size_t c = 0; c < drop_dim; ++c) {
        double n2 = 0.0;
        for (std::size_t rdx = 0; rdx < keep_dim; ++rdx)
            n2 += std::norm(a[rdx * drop_dim + c]);
        if (n2 > best_norm) {
            best_norm = n2;
            best_col = c;
        }
    }

    std::vector<cx> phi(keep_dim);
    const double inv = 1.0 / std::sqrt(best_norm);
    for (std::size_t rdx = 0; rdx < keep_dim; ++rdx)
        phi[rdx] = a[rdx * drop_dim + best_col] * inv;

    // chi = phi^dagger A; separable iff A == phi chi^T
    std::vector<cx> chi(drop_dim, cx(0.0, 0.0));
    for (std::size_t c = 0; c < drop_dim; ++c)
        for (std::size_t rdx = 0; rdx < keep_dim; ++rdx)
            chi[c] += std::conj(phi[rdx]) * a[rdx * drop_dim + c];

    double residual = 0.0;
    for (std::size_t rdx = 0; rdx < keep_dim; ++rdx)
        for (std::size_t c = 0; c < drop_dim; ++c)
            residual += std::norm(a[rdx * drop_dim + c] - phi[rdx] * chi[c]);
    if (residual > kNormTol)
        fail(ErrorKind::NonSeparable,
             "discard: [" + join_names(names) + "] is entangled with the rest (residual " +
                 std::to_string(residual) + ")");

    return QuantumState(d, kept, std::move(phi));
}

} // namespace cqp::core

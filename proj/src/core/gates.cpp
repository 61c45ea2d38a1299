#include "cqp/core/gates.hpp"

#include <cmath>
#include <numbers>

#include "cqp/core/kernels.hpp"

namespace cqp::core {

namespace {
inline long mod_d(long v, int d) {
    long r = v % d;
    return r < 0 ? r + d : r;
}
} // namespace

cx omega(int d, long power) {
    if (d < 2) fail(ErrorKind::InvalidDimension, "omega: dimension must be >= 2");
    double angle = 2.0 * std::numbers::pi * static_cast<double>(mod_d(power, d)) / d;
    return cx(std::cos(angle), std::sin(angle));
}

const char* gate_kind_name(GateSpec::Kind kind) {
    switch (kind) {
    case GateSpec::Kind::ShiftX: return "X";
    case GateSpec::Kind::PhaseZ: return "Z";
    case GateSpec::Kind::Hadamard: return "H";
    case GateSpec::Kind::HadamardInv: return "Hinv";
    case GateSpec::Kind::CnotRight: return "Rc";
    case GateSpec::Kind::CnotLeft: return "Lc";
    case GateSpec::Kind::PauliU: return "U";
    }
    return "?";
}

std::string gate_display(const GateSpec& spec) {
    switch (spec.kind) {
    case GateSpec::Kind::ShiftX: return "X^" + std::to_string(spec.j);
    case GateSpec::Kind::PhaseZ: return "Z^" + std::to_string(spec.k);
    case GateSpec::Kind::PauliU:
        return "U^(" + std::to_string(spec.j) + "," + std::to_string(spec.k) + ")";
    default: return gate_kind_name(spec.kind);
    }
}

std::vector<cx> gate_matrix(int d, const GateSpec& spec) {
    if (d < 2) fail(ErrorKind::InvalidDimension, "gate_matrix: dimension must be >= 2");
    const std::size_t ud = static_cast<std::size_t>(d);
    const int j = static_cast<int>(mod_d(spec.j, d));
    const int k = static_cast<int>(mod_d(spec.k, d));
    const kernels::PhaseTable w(d);

    auto single = [&](auto entry) {
        std::vector<cx> U(ud * ud, cx(0.0, 0.0));
        for (int row = 0; row < d; ++row)
            for (int col = 0; col < d; ++col)
                U[static_cast<std::size_t>(row) * ud + static_cast<std::size_t>(col)] =
                    entry(row, col);
        return U;
    };

    switch (spec.kind) {
    case GateSpec::Kind::ShiftX:
        return single([&](int row, int col) {
            return row == (col + j) % d ? cx(1.0, 0.0) : cx(0.0, 0.0);
        });
    case GateSpec::Kind::PhaseZ:
        return single([&](int row, int col) {
            return row == col ? w.at(static_cast<long>(k) * col) : cx(0.0, 0.0);
        });
    case GateSpec::Kind::PauliU:
        return single([&](int row, int col) {
            return row == (col + j) % d ? w.at(static_cast<long>(k) * col) : cx(0.0, 0.0);
        });
    case GateSpec::Kind::Hadamard:
    case GateSpec::Kind::HadamardInv: {
        const double scale = 1.0 / std::sqrt(static_cast<double>(d));
        const long sign = spec.kind == GateSpec::Kind::HadamardInv ? 1 : -1;
        return single([&](int row, int col) {
            return w.at(sign * static_cast<long>(row) * col) * scale;
        });
    }
    case GateSpec::Kind::CnotRight:
    case GateSpec::Kind::CnotLeft: {
        const bool left = spec.kind == GateSpec::Kind::CnotLeft;
        const std::size_t dim = ud * ud;
        std::vector<cx> U(dim * dim, cx(0.0, 0.0));
        for (int m = 0; m < d; ++m) {
            for (int n = 0; n < d; ++n) {
                int nt = left ? (n - m + d) % d : (n + m) % d;
                std::size_t col = static_cast<std::size_t>(m) * ud + static_cast<std::size_t>(n);
                std::size_t row = static_cast<std::size_t>(m) * ud + static_cast<std::size_t>(nt);
                U[row * dim + col] = cx(1.0, 0.0);
            }
        }
        return U;
    }
    }
    fail(ErrorKind::ArityMismatch, "gate_matrix: unknown gate kind");
}

} // namespace cqp::core

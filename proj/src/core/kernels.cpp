#include "cqp/core/kernels.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>

#include "cqp/core/error.hpp"
#include "cqp/core/gates.hpp"

namespace cqp::core::kernels {

namespace {
// Below this many amplitudes the OpenMP fork costs more than the loop.
constexpr std::size_t kParThreshold = 1 << 12;

using i64 = std::int64_t;

inline int mod_d(long v, int d) {
    long r = v % d;
    return static_cast<int>(r < 0 ? r + d : r);
}
} // namespace

std::size_t pow_size(int d, int e) {
    std::size_t r = 1;
    for (int i = 0; i < e; ++i) {
        if (r > (std::size_t{1} << 48) / static_cast<std::size_t>(d))
            fail(ErrorKind::ShapeMismatch, "state too large: d^" + std::to_string(e));
        r *= static_cast<std::size_t>(d);
    }
    return r;
}

PhaseTable::PhaseTable(int d) : d_(d), table_(static_cast<std::size_t>(d)) {
    for (int p = 0; p < d; ++p) {
        double angle = 2.0 * std::numbers::pi * p / d;
        table_[static_cast<std::size_t>(p)] = cx(std::cos(angle), std::sin(angle));
    }
}

cx PhaseTable::at(long power) const {
    return table_[static_cast<std::size_t>(mod_d(power, d_))];
}

void shift_x(const cx* in, cx* out, std::size_t n_amps, std::size_t stride,
             int d, int j) {
    const i64 n = static_cast<i64>(n_amps);
    const i64 s = static_cast<i64>(stride);
#pragma omp parallel for schedule(static) if (n_amps >= kParThreshold)
    for (i64 i = 0; i < n; ++i) {
        int m = static_cast<int>((i / s) % d);
        int src = m - j;
        if (src < 0) src += d;
        out[i] = in[i + static_cast<i64>(src - m) * s];
    }
}

void phase_z(const cx* in, cx* out, std::size_t n_amps, std::size_t stride,
             int d, int k) {
    const PhaseTable w(d);
    const i64 n = static_cast<i64>(n_amps);
    const i64 s = static_cast<i64>(stride);
#pragma omp parallel for schedule(static) if (n_amps >= kParThreshold)
    for (i64 i = 0; i < n; ++i) {
        int m = static_cast<int>((i / s) % d);
        out[i] = in[i] * w.at(static_cast<long>(k) * m);
    }
}

void pauli_u(const cx* in, cx* out, std::size_t n_amps, std::size_t stride,
             int d, int j, int k) {
    const PhaseTable w(d);
    const i64 n = static_cast<i64>(n_amps);
    const i64 s = static_cast<i64>(stride);
#pragma omp parallel for schedule(static) if (n_amps >= kParThreshold)
    for (i64 i = 0; i < n; ++i) {
        int m = static_cast<int>((i / s) % d);
        int src = m - j;
        if (src < 0) src += d;
        out[i] = in[i + static_cast<i64>(src - m) * s] * w.at(static_cast<long>(k) * src);
    }
}

void hadamard(const cx* in, cx* out, std::size_t n_amps, std::size_t stride,
              int d, bool inverse) {
    const PhaseTable w(d);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    const i64 n = static_cast<i64>(n_amps);
    const i64 s = static_cast<i64>(stride);
    const long sign = inverse ? 1 : -1;
#pragma omp parallel for schedule(static) if (n_amps >= kParThreshold)
    for (i64 i = 0; i < n; ++i) {
        int m = static_cast<int>((i / s) % d);
        const i64 base = i - static_cast<i64>(m) * s;
        cx acc(0.0, 0.0);
        for (int jdig = 0; jdig < d; ++jdig)
            acc += w.at(sign * static_cast<long>(jdig) * m) * in[base + static_cast<i64>(jdig) * s];
        out[i] = acc * scale;
    }
}

void cnot(const cx* in, cx* out, std::size_t n_amps, std::size_t stride_c,
          std::size_t stride_t, int d, bool left) {
    const i64 n = static_cast<i64>(n_amps);
    const i64 sc = static_cast<i64>(stride_c);
    const i64 st = static_cast<i64>(stride_t);
#pragma omp parallel for schedule(static) if (n_amps >= kParThreshold)
    for (i64 i = 0; i < n; ++i) {
        int c = static_cast<int>((i / sc) % d);
        int t = static_cast<int>((i / st) % d);
        // right shift: out target digit t came from t-c; left: from t+c
        int src = left ? t + c : t - c;
        src %= d;
        if (src < 0) src += d;
        out[i] = in[i + static_cast<i64>(src - t) * st];
    }
}

void dense_single(const cx* in, cx* out, std::size_t n_amps,
                  std::size_t stride, int d, const cx* U) {
    const i64 n = static_cast<i64>(n_amps);
    const i64 s = static_cast<i64>(stride);
#pragma omp parallel for schedule(static) if (n_amps >= kParThreshold)
    for (i64 i = 0; i < n; ++i) {
        int m = static_cast<int>((i / s) % d);
        const i64 base = i - static_cast<i64>(m) * s;
        cx acc(0.0, 0.0);
        for (int jdig = 0; jdig < d; ++jdig)
            acc += U[static_cast<std::size_t>(m) * d + jdig] * in[base + static_cast<i64>(jdig) * s];
        out[i] = acc;
    }
}

void permute(const cx* in, cx* out, int d, const std::vector<int>& old_of_new) {
    const int nfac = static_cast<int>(old_of_new.size());
    std::vector<i64> new_stride(old_of_new.size());
    std::vector<i64> old_stride(old_of_new.size());
    i64 acc = 1;
    for (int k = nfac - 1; k >= 0; --k) {
        new_stride[static_cast<std::size_t>(k)] = acc;
        old_stride[static_cast<std::size_t>(k)] = acc;
        acc *= d;
    }
    const i64 n = acc;
#pragma omp parallel for schedule(static) if (static_cast<std::size_t>(n) >= kParThreshold)
    for (i64 i = 0; i < n; ++i) {
        i64 src = 0;
        for (int k = 0; k < nfac; ++k) {
            i64 digit = (i / new_stride[static_cast<std::size_t>(k)]) % d;
            src += digit * old_stride[static_cast<std::size_t>(old_of_new[static_cast<std::size_t>(k)])];
        }
        out[i] = in[src];
    }
}

void tensor(const cx* a, std::size_t na, const cx* b, std::size_t nb, cx* out) {
    const i64 n = static_cast<i64>(na);
#pragma omp parallel for schedule(static) if (na * nb >= kParThreshold)
    for (i64 i = 0; i < n; ++i) {
        cx ai = a[i];
        cx* row = out + static_cast<std::size_t>(i) * nb;
        for (std::size_t jx = 0; jx < nb; ++jx)
            row[jx] = ai * b[jx];
    }
}

void block_weights(const cx* in, std::size_t n_amps, std::size_t block,
                   std::vector<double>& g) {
    const i64 n_blocks = static_cast<i64>(n_amps / block);
    g.assign(static_cast<std::size_t>(n_blocks), 0.0);
    // parallel over blocks; each block reduced serially, so results do not
    // depend on the thread count
#pragma omp parallel for schedule(static) if (n_amps >= kParThreshold)
    for (i64 m = 0; m < n_blocks; ++m) {
        double acc = 0.0;
        const cx* p = in + static_cast<std::size_t>(m) * block;
        for (std::size_t i = 0; i < block; ++i) acc += std::norm(p[i]);
        g[static_cast<std::size_t>(m)] = acc;
    }
}

void collapse_block(const cx* in, cx* out, std::size_t n_amps,
                    std::size_t block, std::size_t m, double scale) {
    const i64 n = static_cast<i64>(n_amps);
    const i64 lo = static_cast<i64>(m * block);
    const i64 hi = static_cast<i64>((m + 1) * block);
#pragma omp parallel for schedule(static) if (n_amps >= kParThreshold)
    for (i64 i = 0; i < n; ++i)
        out[i] = (i >= lo && i < hi) ? in[i] * scale : cx(0.0, 0.0);
}

double norm_sq(const cx* in, std::size_t n_amps) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n_amps; ++i) acc += std::norm(in[i]);
    return acc;
}

cx inner(const cx* a, const cx* b, std::size_t n_amps) {
    cx acc(0.0, 0.0);
    for (std::size_t i = 0; i < n_amps; ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

namespace serial {

namespace {
inline int digit_at(std::size_t idx, int d, int n, int pos) {
    // decompose from the right; pos counts from the left
    int shift = n - 1 - pos;
    std::size_t v = idx;
    for (int i = 0; i < shift; ++i) v /= static_cast<std::size_t>(d);
    return static_cast<int>(v % static_cast<std::size_t>(d));
}

inline std::size_t with_digit(std::size_t idx, int d, int n, int pos, int digit) {
    std::size_t place = 1;
    for (int i = 0; i < n - 1 - pos; ++i) place *= static_cast<std::size_t>(d);
    int old = digit_at(idx, d, n, pos);
    return idx + (static_cast<std::size_t>(digit) - static_cast<std::size_t>(old)) * place;
}
} // namespace

void shift_x(const cx* in, cx* out, std::size_t n_amps, int d, int n, int pos,
             int j) {
    for (std::size_t i = 0; i < n_amps; ++i) out[i] = cx(0.0, 0.0);
    for (std::size_t i = 0; i < n_amps; ++i) {
        int m = digit_at(i, d, n, pos);
        out[with_digit(i, d, n, pos, (m + j) % d)] = in[i];
    }
}

void phase_z(const cx* in, cx* out, std::size_t n_amps, int d, int n, int pos,
             int k) {
    for (std::size_t i = 0; i < n_amps; ++i) {
        int m = digit_at(i, d, n, pos);
        out[i] = in[i] * omega(d, static_cast<long>(k) * m);
    }
}

void pauli_u(const cx* in, cx* out, std::size_t n_amps, int d, int n, int pos,
             int j, int k) {
    for (std::size_t i = 0; i < n_amps; ++i) out[i] = cx(0.0, 0.0);
    for (std::size_t i = 0; i < n_amps; ++i) {
        int m = digit_at(i, d, n, pos);
        out[with_digit(i, d, n, pos, (m + j) % d)] += omega(d, static_cast<long>(k) * m) * in[i];
    }
}

void hadamard(const cx* in, cx* out, std::size_t n_amps, int d, int n, int pos,
              bool inverse) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t i = 0; i < n_amps; ++i) out[i] = cx(0.0, 0.0);
    for (std::size_t i = 0; i < n_amps; ++i) {
        int jdig = digit_at(i, d, n, pos);
        for (int m = 0; m < d; ++m) {
            long p = static_cast<long>(jdig) * m;
            cx w = omega(d, inverse ? p : -p);
            out[with_digit(i, d, n, pos, m)] += w * scale * in[i];
        }
    }
}

void cnot(const cx* in, cx* out, std::size_t n_amps, int d, int n, int cpos,
          int tpos, bool left) {
    for (std::size_t i = 0; i < n_amps; ++i) out[i] = cx(0.0, 0.0);
    for (std::size_t i = 0; i < n_amps; ++i) {
        int c = digit_at(i, d, n, cpos);
        int t = digit_at(i, d, n, tpos);
        int nt = left ? (t - c + d) % d : (t + c) % d;
        out[with_digit(i, d, n, tpos, nt)] = in[i];
    }
}

void block_weights(const cx* in, std::size_t n_amps, std::size_t block,
                   std::vector<double>& g) {
    g.assign(n_amps / block, 0.0);
    for (std::size_t i = 0; i < n_amps; ++i) g[i / block] += std::norm(in[i]);
}

} // namespace serial

} // namespace cqp::core::kernels

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace cqp::core::kernels {

using cx = std::complex<double>;

// Amplitude-array kernels shared by the state engine. All gate kernels are
// out-of-place gathers (out[i] derives from in[f(i)]), so the OpenMP loops
// are race-free and bit-deterministic regardless of thread count. Reductions
// (norms, inner products, block weights) stay serial per accumulator for the
// same reason.
//
// Layout: n factors of dimension d, index = sum_k digit_k * d^(n-1-k),
// leftmost factor most significant; the stride of factor p is d^(n-1-p).

// d^e with overflow guard.
std::size_t pow_size(int d, int e);

// Phase lookup: table of omega(d, p) for p in [0, d); at(p) reduces mod d.
class PhaseTable {
public:
    explicit PhaseTable(int d);
    cx at(long power) const;
    int dim() const { return d_; }

private:
    int d_;
    std::vector<cx> table_;
};

// |m> -> |m+j mod d> on the factor with the given stride.
void shift_x(const cx* in, cx* out, std::size_t n_amps, std::size_t stride,
             int d, int j);

// amp *= omega^{k*m} on the factor with the given stride.
void phase_z(const cx* in, cx* out, std::size_t n_amps, std::size_t stride,
             int d, int k);

// sum_m w^{km} |m+j><m| on one factor.
void pauli_u(const cx* in, cx* out, std::size_t n_amps, std::size_t stride,
             int d, int j, int k);

// |j> -> (1/sqrt d) sum_m w^{-jm} |m>; inverse flips the phase sign.
void hadamard(const cx* in, cx* out, std::size_t n_amps, std::size_t stride,
              int d, bool inverse);

// |m>|n> -> |m>|n+m> (left = |n-m>), control/target given by stride.
void cnot(const cx* in, cx* out, std::size_t n_amps, std::size_t stride_c,
          std::size_t stride_t, int d, bool left);

// Generic dense single-factor transform, U row-major d x d.
void dense_single(const cx* in, cx* out, std::size_t n_amps,
                  std::size_t stride, int d, const cx* U);

// Reorder tensor factors: new position k holds the old factor old_of_new[k].
void permute(const cx* in, cx* out, int d, const std::vector<int>& old_of_new);

// out = a (x) b.
void tensor(const cx* a, std::size_t na, const cx* b, std::size_t nb, cx* out);

// g[m] = sum of |amp|^2 over the m-th contiguous block of `block` entries.
void block_weights(const cx* in, std::size_t n_amps, std::size_t block,
                   std::vector<double>& g);

// Zero everything outside block m, scale the block by `scale`.
void collapse_block(const cx* in, cx* out, std::size_t n_amps,
                    std::size_t block, std::size_t m, double scale);

double norm_sq(const cx* in, std::size_t n_amps);
cx inner(const cx* a, const cx* b, std::size_t n_amps);

// Straight-line reference implementations of the kernels above, written
// independently (per-index digit decomposition, no stride tricks, no OpenMP).
// Kept for tests and the kernel benchmark.
namespace serial {
void shift_x(const cx* in, cx* out, std::size_t n_amps, int d, int n, int pos,
             int j);
void phase_z(const cx* in, cx* out, std::size_t n_amps, int d, int n, int pos,
             int k);
void pauli_u(const cx* in, cx* out, std::size_t n_amps, int d, int n, int pos,
             int j, int k);
void hadamard(const cx* in, cx* out, std::size_t n_amps, int d, int n, int pos,
              bool inverse);
void cnot(const cx* in, cx* out, std::size_t n_amps, int d, int n, int cpos,
          int tpos, bool left);
void block_weights(const cx* in, std::size_t n_amps, std::size_t block,
                   std::vector<double>& g);
} // namespace serial

} // namespace cqp::core::kernels

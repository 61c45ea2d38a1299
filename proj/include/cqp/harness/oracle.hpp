#pragma once

#include <array>
#include <complex>
#include <vector>

namespace cqp::harness::oracle {

// Self-contained dense-matrix reference for the two protocols. Everything
// here is built from explicit gate matrices, Kronecker products and
// projectors applied by plain matrix-vector multiplication; it shares no
// code with the state engine or the transition system.

using cx = std::complex<double>;
using Vec = std::vector<cx>;

struct Mat {
    std::size_t n = 0;       // square dimension
    std::vector<cx> a;       // row-major

    cx& at(std::size_t r, std::size_t c) { return a[r * n + c]; }
    const cx& at(std::size_t r, std::size_t c) const { return a[r * n + c]; }
};

Mat identity(std::size_t n);
Mat kron(const Mat& A, const Mat& B);
Vec apply(const Mat& M, const Vec& v);
Mat matmul(const Mat& A, const Mat& B);

Mat hadamard_matrix(int d);
Mat shift_matrix(int d, int j);
Mat phase_matrix(int d, int k);
// control is the first tensor factor; sign +1 shifts the target up, -1 down
Mat controlled_shift_matrix(int d, int sign);

double norm_sq(const Vec& v);
double fidelity(const Vec& a, const Vec& b);

// One post-measurement branch of the teleport pipeline at factor order
// [y, z, x]: Alice's outcomes (m1 from z, m2 from x), the branch weight, and
// Bob's corrected qudit.
struct TeleportBranch {
    long m1 = 0;
    long m2 = 0;
    double weight = 0.0;
    Vec bob;
};

std::vector<TeleportBranch> teleport_pipeline(int d, const Vec& psi);

// Superdense-coding pipeline at factor order [q1, q2]: the five intermediate
// states (after pair prep, X, Z, left shift, Hadamard) and the final
// measurement, which must be deterministic.
struct SdcPipeline {
    std::array<Vec, 5> checkpoints;
    long m1 = 0;
    long m2 = 0;
    double probability = 0.0;
};

SdcPipeline sdc_pipeline(int d, long a, long b);

} // namespace cqp::harness::oracle

// Timing comparison between the OpenMP kernels and the serial reference
// implementations on large amplitude arrays.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "cqp/core/kernels.hpp"
#include "cqp/core/state.hpp"

using cqp::core::cx;
namespace k = cqp::core::kernels;

namespace {

std::vector<cx> random_amps(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<cx> v(n);
    double n2 = 0.0;
    for (auto& a : v) {
        a = cx(gauss(rng), gauss(rng));
        n2 += std::norm(a);
    }
    double inv = 1.0 / std::sqrt(n2);
    for (auto& a : v) a *= inv;
    return v;
}

template <typename F> double time_ms(F&& f, int reps) {
    auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) f();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void bench_case(int d, int n, int reps) {
    const std::size_t size = k::pow_size(d, n);
    std::vector<cx> in = random_amps(size, 42);
    std::vector<cx> out(size);
    const int pos = n / 2;
    const std::size_t stride = k::pow_size(d, n - 1 - pos);

    std::printf("d=%d n=%d (%zu amplitudes)\n", d, n, size);
    struct Row {
        const char* name;
        double par;
        double ser;
    };
    Row rows[] = {
        {"hadamard",
         time_ms([&] { k::hadamard(in.data(), out.data(), size, stride, d, false); },
                 reps),
         time_ms([&] { k::serial::hadamard(in.data(), out.data(), size, d, n, pos,
                                           false); },
                 reps)},
        {"shift_x",
         time_ms([&] { k::shift_x(in.data(), out.data(), size, stride, d, 1); },
                 reps),
         time_ms([&] { k::serial::shift_x(in.data(), out.data(), size, d, n, pos, 1); },
                 reps)},
        {"cnot",
         time_ms([&] { k::cnot(in.data(), out.data(), size, k::pow_size(d, n - 1),
                               stride, d, false); },
                 reps),
         time_ms([&] { k::serial::cnot(in.data(), out.data(), size, d, n, 0, pos,
                                       false); },
                 reps)},
    };
    std::vector<double> g;
    double par = time_ms([&] { k::block_weights(in.data(), size, stride, g); }, reps);
    double ser = time_ms([&] { k::serial::block_weights(in.data(), size, stride, g); },
                         reps);
    std::printf("  %-12s %10.3f ms omp %10.3f ms serial  %5.2fx\n", "weights", par,
                ser, ser / par);
    for (const Row& r : rows)
        std::printf("  %-12s %10.3f ms omp %10.3f ms serial  %5.2fx\n", r.name,
                    r.par, r.ser, r.ser / r.par);
}

} // namespace

int main(int argc, char** argv) {
    int reps = argc > 1 ? std::atoi(argv[1]) : 5;
    bench_case(2, 20, reps);
    bench_case(3, 12, reps);
    bench_case(5, 8, reps);
    bench_case(7, 6, reps);
    return 0;
}

#include "cqp/harness/oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cqp::harness::oracle {

namespace {
cx root_of_unity(int d, long power) {
    long r = power % d;
    if (r < 0) r += d;
    double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / d;
    return cx(std::cos(angle), std::sin(angle));
}
} // namespace

Mat identity(std::size_t n) {
    Mat m{n, std::vector<cx>(n * n, cx(0.0, 0.0))};
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = cx(1.0, 0.0);
    return m;
}

Mat kron(const Mat& A, const Mat& B) {
    Mat m{A.n * B.n, std::vector<cx>(A.n * B.n * A.n * B.n, cx(0.0, 0.0))};
    for (std::size_t ar = 0; ar < A.n; ++ar)
        for (std::size_t ac = 0; ac < A.n; ++ac)
            for (std::size_t br = 0; br < B.n; ++br)
                for (std::size_t bc = 0; bc < B.n; ++bc)
                    m.at(ar * B.n + br, ac * B.n + bc) = A.at(ar, ac) * B.at(br, bc);
    return m;
}

Vec apply(const Mat& M, const Vec& v) {
    if (v.size() != M.n) throw std::invalid_argument("oracle: shape mismatch");
    Vec out(M.n, cx(0.0, 0.0));
    for (std::size_t r = 0; r < M.n; ++r) {
        cx acc(0.0, 0.0);
        for (std::size_t c = 0; c < M.n; ++c) acc += M.at(r, c) * v[c];
        out[r] = acc;
    }
    return out;
}

Mat matmul(const Mat& A, const Mat& B) {
    if (A.n != B.n) throw std::invalid_argument("oracle: shape mismatch");
    Mat m{A.n, std::vector<cx>(A.n * A.n, cx(0.0, 0.0))};
    for (std::size_t r = 0; r < A.n; ++r)
        for (std::size_t k = 0; k < A.n; ++k) {
            cx a = A.at(r, k);
            if (a == cx(0.0, 0.0)) continue;
            for (std::size_t c = 0; c < A.n; ++c) m.at(r, c) += a * B.at(k, c);
        }
    return m;
}

Mat hadamard_matrix(int d) {
    const double s = 1.0 / std::sqrt(static_cast<double>(d));
    Mat m{static_cast<std::size_t>(d),
          std::vector<cx>(static_cast<std::size_t>(d) * d, cx(0.0, 0.0))};
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
            m.at(r, c) = root_of_unity(d, -static_cast<long>(r) * c) * s;
    return m;
}

Mat shift_matrix(int d, int j) {
    Mat m{static_cast<std::size_t>(d),
          std::vector<cx>(static_cast<std::size_t>(d) * d, cx(0.0, 0.0))};
    for (int c = 0; c < d; ++c) m.at((c + j) % d, c) = cx(1.0, 0.0);
    return m;
}

Mat phase_matrix(int d, int k) {
    Mat m{static_cast<std::size_t>(d),
          std::vector<cx>(static_cast<std::size_t>(d) * d, cx(0.0, 0.0))};
    for (int c = 0; c < d; ++c) m.at(c, c) = root_of_unity(d, static_cast<long>(k) * c);
    return m;
}

Mat controlled_shift_matrix(int d, int sign) {
    std::size_t n = static_cast<std::size_t>(d) * d;
    Mat m{n, std::vector<cx>(n * n, cx(0.0, 0.0))};
    for (int c = 0; c < d; ++c)
        for (int t = 0; t < d; ++t) {
            int nt = ((t + sign * c) % d + d) % d;
            m.at(static_cast<std::size_t>(c) * d + nt,
                 static_cast<std::size_t>(c) * d + t) = cx(1.0, 0.0);
        }
    return m;
}

double norm_sq(const Vec& v) {
    double acc = 0.0;
    for (const auto& x : v) acc += std::norm(x);
    return acc;
}

double fidelity(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("oracle: shape mismatch");
    cx acc(0.0, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
    return std::norm(acc);
}

std::vector<TeleportBranch> teleport_pipeline(int d, const Vec& psi) {
    const std::size_t ud = static_cast<std::size_t>(d);
    if (psi.size() != ud) throw std::invalid_argument("oracle: psi must be one qudit");

    // factor order [y, z]; start |00>, entangle: H on z then Rc(z -> y)
    Vec yz(ud * ud, cx(0.0, 0.0));
    yz[0] = cx(1.0, 0.0);
    yz = apply(kron(identity(ud), hadamard_matrix(d)), yz);
    // control z (second factor), target y (first): swap-free dense build
    {
        Mat rc{ud * ud, std::vector<cx>(ud * ud * ud * ud, cx(0.0, 0.0))};
        for (int y = 0; y < d; ++y)
            for (int z = 0; z < d; ++z)
                rc.at(static_cast<std::size_t>((y + z) % d) * ud + z,
                      static_cast<std::size_t>(y) * ud + z) = cx(1.0, 0.0);
        yz = apply(rc, yz);
    }

    // append x: order [y, z, x]
    Vec v(ud * ud * ud, cx(0.0, 0.0));
    for (std::size_t i = 0; i < ud * ud; ++i)
        for (std::size_t k = 0; k < ud; ++k) v[i * ud + k] = yz[i] * psi[k];

    // Alice: Lc with control x (third), target z (second), then H on x
    {
        Mat lc{ud * ud * ud,
               std::vector<cx>(ud * ud * ud * ud * ud * ud, cx(0.0, 0.0))};
        for (int y = 0; y < d; ++y)
            for (int z = 0; z < d; ++z)
                for (int x = 0; x < d; ++x) {
                    int nz = ((z - x) % d + d) % d;
                    lc.at((static_cast<std::size_t>(y) * ud + nz) * ud + x,
                          (static_cast<std::size_t>(y) * ud + z) * ud + x) =
                        cx(1.0, 0.0);
                }
        v = apply(lc, v);
    }
    v = apply(kron(kron(identity(ud), identity(ud)), hadamard_matrix(d)), v);

    // measure z (m1) and x (m2) by explicit projectors, then Bob's
    // corrections X^-m1, Z^m2 on y
    std::vector<TeleportBranch> branches;
    for (int m1 = 0; m1 < d; ++m1) {
        for (int m2 = 0; m2 < d; ++m2) {
            Mat ez = identity(ud);
            for (int z = 0; z < d; ++z)
                ez.at(z, z) = z == m1 ? cx(1.0, 0.0) : cx(0.0, 0.0);
            Mat ex = identity(ud);
            for (int x = 0; x < d; ++x)
                ex.at(x, x) = x == m2 ? cx(1.0, 0.0) : cx(0.0, 0.0);
            Mat proj = kron(kron(identity(ud), ez), ex);
            Vec post = apply(proj, v);
            double w = norm_sq(post);
            if (w <= 1e-18) continue;
            double inv = 1.0 / std::sqrt(w);
            for (auto& x : post) x *= inv;
            Mat fix = kron(kron(matmul(phase_matrix(d, m2),
                                       shift_matrix(d, (d - m1) % d)),
                                identity(ud)),
                           identity(ud));
            post = apply(fix, post);
            TeleportBranch br;
            br.m1 = m1;
            br.m2 = m2;
            br.weight = w;
            br.bob.assign(ud, cx(0.0, 0.0));
            for (int y = 0; y < d; ++y)
                br.bob[static_cast<std::size_t>(y)] =
                    post[(static_cast<std::size_t>(y) * ud + m1) * ud + m2];
            branches.push_back(std::move(br));
        }
    }
    return branches;
}

SdcPipeline sdc_pipeline(int d, long a, long b) {
    const std::size_t ud = static_cast<std::size_t>(d);
    SdcPipeline out;

    // factor order [q1, q2]: pair prep
    Vec v(ud * ud, cx(0.0, 0.0));
    v[0] = cx(1.0, 0.0);
    v = apply(kron(hadamard_matrix(d), identity(ud)), v);
    v = apply(controlled_shift_matrix(d, +1), v);
    out.checkpoints[0] = v;

    v = apply(kron(shift_matrix(d, static_cast<int>(((b % d) + d) % d)),
                   identity(ud)),
              v);
    out.checkpoints[1] = v;
    v = apply(kron(phase_matrix(d, static_cast<int>(((a % d) + d) % d)),
                   identity(ud)),
              v);
    out.checkpoints[2] = v;
    v = apply(controlled_shift_matrix(d, -1), v);
    out.checkpoints[3] = v;
    v = apply(kron(hadamard_matrix(d), identity(ud)), v);
    out.checkpoints[4] = v;

    // the joint measurement must find all the weight on one basis state
    std::size_t best = 0;
    double best_p = -1.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        double p = std::norm(v[i]);
        if (p > best_p) {
            best_p = p;
            best = i;
        }
    }
    out.m1 = static_cast<long>(best / ud);
    out.m2 = static_cast<long>(best % ud);
    out.probability = best_p;
    return out;
}

} // namespace cqp::harness::oracle

#pragma once

// Seeded samplers and test-only reference computations. The references use
// Eigen and plain formulas so they share no code path with the library.

#include "owid/hermitian.hpp"
#include "owid/states.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cstdint>
#include <cmath>
#include <random>
#include <vector>

namespace owid::test {

inline constexpr std::uint64_t kSeed = 20240917;

class Sampler {
public:
    explicit Sampler(std::uint64_t seed = kSeed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }

    // Uniform over the physical tetrahedron (rejection from the cube).
    BellDiagonalParams bell() {
        for (;;) {
            BellDiagonalParams p{uniform(-1, 1), uniform(-1, 1), uniform(-1, 1)};
            if (is_physical(p)) return p;
        }
    }

    XStateParams x_state() {
        for (;;) {
            XStateParams p{uniform(-1, 1), uniform(-1, 1), uniform(-1, 1), uniform(-1, 1)};
            if (is_physical(p)) return p;
        }
    }

    // Physical X state with |c1| < |c2| < |c3| and 0 < |s| < 1 - |c3|.
    XStateParams x_state_in_region() {
        for (;;) {
            const double c3 = uniform(-0.98, 0.98);
            const double c2 = sign() * uniform(0.0, 1.0) * std::abs(c3);
            const double c1 = sign() * uniform(0.0, 1.0) * std::abs(c2);
            const double s = sign() * uniform(0.01, 1.0) * (1.0 - std::abs(c3));
            XStateParams p{s, c1, c2, c3};
            if (is_physical(p) && check_x_condition(p).holds()) return p;
        }
    }

    Vec3 direction() {
        Vec3 v{normal(), normal(), normal()};
        const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
        for (auto& x : v) x /= n;
        return v;
    }

    template <std::size_t N>
    Matrix<N> complex_matrix() {
        Matrix<N> m;
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t c = 0; c < N; ++c) m(r, c) = Complex(normal(), normal());
        return m;
    }

    // Haar-ish random unitary from Gram-Schmidt on a Gaussian matrix.
    Matrix4 unitary() {
        Matrix4 m = complex_matrix<4>();
        for (std::size_t c = 0; c < 4; ++c) {
            for (std::size_t k = 0; k < c; ++k) {
                Complex dot{};
                for (std::size_t r = 0; r < 4; ++r) dot += std::conj(m(r, k)) * m(r, c);
                for (std::size_t r = 0; r < 4; ++r) m(r, c) -= dot * m(r, k);
            }
            double norm = 0.0;
            for (std::size_t r = 0; r < 4; ++r) norm += std::norm(m(r, c));
            norm = std::sqrt(norm);
            for (std::size_t r = 0; r < 4; ++r) m(r, c) /= norm;
        }
        return m;
    }

    // A A^dagger / tr, full rank with probability one.
    Matrix4 density() {
        const Matrix4 a = complex_matrix<4>();
        Matrix4 m = a * a.adjoint();
        m *= 1.0 / m.trace().real();
        return m;
    }

private:
    double sign() { return uniform(0, 1) < 0.5 ? -1.0 : 1.0; }
    std::mt19937_64 rng_;
};

template <std::size_t N>
Eigen::Matrix<std::complex<double>, int(N), int(N)> to_eigen(const Matrix<N>& m) {
    Eigen::Matrix<std::complex<double>, int(N), int(N)> e;
    for (std::size_t r = 0; r < N; ++r)
        for (std::size_t c = 0; c < N; ++c) e(int(r), int(c)) = m(r, c);
    return e;
}

// Ascending eigenvalues from Eigen's self-adjoint solver.
template <std::size_t N>
std::array<double, N> reference_eigenvalues(const Matrix<N>& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<std::complex<double>, int(N), int(N)>> solver(to_eigen(m));
    std::array<double, N> out{};
    for (std::size_t i = 0; i < N; ++i) out[i] = solver.eigenvalues()(int(i));
    return out;
}

template <std::size_t N>
double reference_entropy(const Matrix<N>& m) {
    double s = 0.0;
    for (double x : reference_eigenvalues(m))
        if (x > 1e-15) s -= x * std::log(x) / std::log(2.0);
    return s;
}

// Wootters concurrence with Eigen's general eigensolver on rho rho~.
inline double reference_concurrence(const Matrix4& rho) {
    using M = Eigen::Matrix4cd;
    const M r = to_eigen(rho);
    Eigen::Matrix2cd sy;
    sy << 0, std::complex<double>(0, -1), std::complex<double>(0, 1), 0;
    M yy;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) yy(2 * i + k, 2 * j + l) = sy(i, j) * sy(k, l);
    const M tilde = yy * r.conjugate() * yy;
    Eigen::ComplexEigenSolver<M> solver(r * tilde);
    std::array<double, 4> roots{};
    for (int i = 0; i < 4; ++i) roots[i] = std::sqrt(std::max(solver.eigenvalues()(i).real(), 0.0));
    std::sort(roots.begin(), roots.end());
    return std::max(0.0, roots[3] - roots[2] - roots[1] - roots[0]);
}

// Entropy of the b-dephased state computed by explicit block products.
inline double reference_measured_entropy(const Matrix4& rho, const Vec3& n) {
    using M = Eigen::Matrix4cd;
    const M r = to_eigen(rho);
    Eigen::Matrix2cd nsig;
    nsig << n[2], std::complex<double>(n[0], -n[1]), std::complex<double>(n[0], n[1]), -n[2];
    const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
    M out = M::Zero();
    for (int sign : {1, -1}) {
        const Eigen::Matrix2cd proj = 0.5 * (id + double(sign) * nsig);
        M big = M::Zero();
        for (int a = 0; a < 2; ++a) big.block<2, 2>(2 * a, 2 * a) = proj;
        out += big * r * big;
    }
    Eigen::SelfAdjointEigenSolver<M> solver(out);
    double s = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double x = solver.eigenvalues()(i);
        if (x > 1e-15) s -= x * std::log2(x);
    }
    return s;
}

// X-state matrix written out entry by entry.
inline Matrix4 x_matrix_by_hand(const XStateParams& p) {
    Matrix4 m;
    m(0, 0) = (1 + p.s + p.c3) / 4;
    m(1, 1) = (1 - p.s - p.c3) / 4;
    m(2, 2) = (1 + p.s - p.c3) / 4;
    m(3, 3) = (1 - p.s + p.c3) / 4;
    m(0, 3) = m(3, 0) = (p.c1 - p.c2) / 4;
    m(1, 2) = m(2, 1) = (p.c1 + p.c2) / 4;
    return m;
}

inline double bits(double x) { return x > 0 ? -x * std::log2(x) : 0.0; }

} // namespace owid::test

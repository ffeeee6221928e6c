#pragma once

// Small dense complex matrices (2x2 and 4x4), a cyclic Jacobi eigensolver for
// Hermitian input, and validated density matrices with base-2 entropy.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>

namespace owid {

using Complex = std::complex<double>;

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-12;
inline constexpr double kEigenvalueClamp = 1e-10;

/// Row-major N x N complex matrix with value semantics.
template <std::size_t N>
class Matrix {
public:
    static constexpr std::size_t dim = N;

    constexpr Matrix() : a_{} {}

    static Matrix identity() {
        Matrix m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
        return m;
    }

    static Matrix diagonal(std::span<const double, N> d) {
        Matrix m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
        return m;
    }

    Complex& operator()(std::size_t r, std::size_t c) { return a_[r * N + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return a_[r * N + c]; }

    std::span<const Complex, N * N> data() const { return a_; }

    Matrix adjoint() const {
        Matrix m;
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t c = 0; c < N; ++c) m(r, c) = std::conj((*this)(c, r));
        return m;
    }

    Matrix conjugate() const {
        Matrix m;
        for (std::size_t i = 0; i < N * N; ++i) m.a_[i] = std::conj(a_[i]);
        return m;
    }

    Complex trace() const {
        Complex t{};
        for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
        return t;
    }

    bool is_finite() const {
        for (const auto& x : a_)
            if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
        return true;
    }

    Matrix& operator+=(const Matrix& o) {
        for (std::size_t i = 0; i < N * N; ++i) a_[i] += o.a_[i];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        for (std::size_t i = 0; i < N * N; ++i) a_[i] -= o.a_[i];
        return *this;
    }
    Matrix& operator*=(Complex s) {
        for (auto& x : a_) x *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, Complex s) { return a *= s; }
    friend Matrix operator*(Complex s, Matrix a) { return a *= s; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        Matrix m;
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t k = 0; k < N; ++k) {
                const Complex ark = a(r, k);
                if (ark == Complex{}) continue;
                for (std::size_t c = 0; c < N; ++c) m(r, c) += ark * b(k, c);
            }
        return m;
    }

private:
    std::array<Complex, N * N> a_;
};

using Matrix2 = Matrix<2>;
using Matrix4 = Matrix<4>;

/// Largest entry-wise modulus of a - b.
template <std::size_t N>
double max_abs_diff(const Matrix<N>& a, const Matrix<N>& b) {
    double m = 0.0;
    for (std::size_t r = 0; r < N; ++r)
        for (std::size_t c = 0; c < N; ++c) m = std::max(m, std::abs(a(r, c) - b(r, c)));
    return m;
}

template <std::size_t N>
double hermiticity_defect(const Matrix<N>& m) {
    return max_abs_diff(m, m.adjoint());
}

/// Eigenvalues sorted ascending.
template <std::size_t N>
using Spectrum = std::array<double, N>;

template <std::size_t N>
struct EigenSystem {
    Spectrum<N> values;
    Matrix<N> vectors; // column k is the eigenvector of values[k]
};

/// Pauli matrix sigma_x, sigma_y, sigma_z for index 1, 2, 3.
Matrix2 pauli(int index);

Matrix4 kron(const Matrix2& a, const Matrix2& b);

/// Cyclic Jacobi diagonalisation. Throws DomainError if `m` is not Hermitian
/// within kHermitianTolerance.
template <std::size_t N>
EigenSystem<N> eigen_hermitian(const Matrix<N>& m);

template <std::size_t N>
Spectrum<N> eigenvalues_hermitian(const Matrix<N>& m) {
    return eigen_hermitian(m).values;
}

/// x log2 x with 0 log 0 = 0. Arguments in [-1e-12, 0) count as zero; more
/// negative arguments throw DomainError.
double xlog2x(double x);

inline double entropy_term(double x) { return -xlog2x(x); }

/// Shannon entropy in bits of a probability vector.
template <std::size_t N>
double shannon_entropy(const Spectrum<N>& p) {
    double s = 0.0;
    for (double x : p) s += entropy_term(x);
    return s;
}

/// Hermitian, unit-trace, positive-semidefinite N x N matrix. Eigenvalues in
/// [-1e-10, 0) are clamped to zero; anything more negative is rejected.
template <std::size_t N>
class DensityMatrix {
public:
    /// Throws DomainError naming the violated condition.
    static DensityMatrix from_matrix(const Matrix<N>& m);

    const Matrix<N>& matrix() const { return m_; }
    const Spectrum<N>& spectrum() const { return spectrum_; }

private:
    DensityMatrix(const Matrix<N>& m, const Spectrum<N>& s) : m_(m), spectrum_(s) {}

    Matrix<N> m_;
    Spectrum<N> spectrum_;
};

using DensityMatrix4 = DensityMatrix<4>;
using QubitDensity = DensityMatrix<2>;

/// Von Neumann entropy in bits.
template <std::size_t N>
double von_neumann_entropy(const DensityMatrix<N>& rho) {
    return shannon_entropy(rho.spectrum());
}

/// Reduced state of the second qubit (trace over qubit a).
QubitDensity partial_trace_a(const DensityMatrix4& rho);
/// Reduced state of the first qubit (trace over qubit b).
Matrix2 partial_trace_b(const Matrix4& m);

extern template class DensityMatrix<2>;
extern template class DensityMatrix<4>;
extern template EigenSystem<2> eigen_hermitian(const Matrix<2>&);
extern template EigenSystem<4> eigen_hermitian(const Matrix<4>&);

} // namespace owid

#include "owid/hermitian.hpp"

#include "owid/errors.hpp"

#include <numeric>
#include <sstream>
#include <string>

namespace owid {

namespace {

constexpr double kJacobiOffDiagonal = 1e-14;
constexpr int kMaxSweeps = 64;

template <std::size_t N>
double off_diagonal_norm(const Matrix<N>& a) {
    double s = 0.0;
    for (std::size_t r = 0; r < N; ++r)
        for (std::size_t c = 0; c < N; ++c)
            if (r != c) s += std::norm(a(r, c));
    return std::sqrt(s);
}

template <std::size_t N>
double frobenius_norm(const Matrix<N>& a) {
    double s = 0.0;
    for (const auto& x : a.data()) s += std::norm(x);
    return std::sqrt(s);
}

} // namespace

Matrix2 pauli(int index) {
    Matrix2 m;
    switch (index) {
    case 1:
        m(0, 1) = 1.0;
        m(1, 0) = 1.0;
        break;
    case 2:
        m(0, 1) = Complex(0.0, -1.0);
        m(1, 0) = Complex(0.0, 1.0);
        break;
    case 3:
        m(0, 0) = 1.0;
        m(1, 1) = -1.0;
        break;
    default:
        throw ArgumentError("pauli: index must be 1, 2 or 3, got " + std::to_string(index));
    }
    return m;
}

Matrix4 kron(const Matrix2& a, const Matrix2& b) {
    Matrix4 m;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t l = 0; l < 2; ++l) m(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return m;
}

template <std::size_t N>
EigenSystem<N> eigen_hermitian(const Matrix<N>& input) {
    if (!input.is_finite()) throw DomainError("eigen_hermitian: matrix has non-finite entries");
    const double defect = hermiticity_defect(input);
    if (defect > kHermitianTolerance) {
        std::ostringstream os;
        os << "eigen_hermitian: matrix is not Hermitian (max |M - M^dagger| = " << defect << ")";
        throw DomainError(os.str());
    }

    Matrix<N> a = (input + input.adjoint()) * Complex(0.5);
    Matrix<N> v = Matrix<N>::identity();
    const double threshold = kJacobiOffDiagonal * std::max(1.0, frobenius_norm(a));

    for (int sweep = 0; sweep < kMaxSweeps && off_diagonal_norm(a) > threshold; ++sweep) {
        for (std::size_t p = 0; p + 1 < N; ++p) {
            for (std::size_t q = p + 1; q < N; ++q) {
                const double g = std::abs(a(p, q));
                if (g == 0.0) continue;
                const Complex e = a(p, q) / g;
                const Complex ec = std::conj(e);
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * g);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                // A <- A U, V <- V U with U = [[c, s], [-s e*, c e*]] on (p, q).
                for (std::size_t r = 0; r < N; ++r) {
                    const Complex arp = a(r, p), arq = a(r, q);
                    a(r, p) = c * arp - s * ec * arq;
                    a(r, q) = s * arp + c * ec * arq;
                    const Complex vrp = v(r, p), vrq = v(r, q);
                    v(r, p) = c * vrp - s * ec * vrq;
                    v(r, q) = s * vrp + c * ec * vrq;
                }
                // A <- U^dagger A
                for (std::size_t col = 0; col < N; ++col) {
                    const Complex apc = a(p, col), aqc = a(q, col);
                    a(p, col) = c * apc - s * e * aqc;
                    a(q, col) = s * apc + c * e * aqc;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }

    std::array<std::size_t, N> order;
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    EigenSystem<N> out;
    for (std::size_t k = 0; k < N; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < N; ++r) out.vectors(r, k) = v(r, order[k]);
    }
    return out;
}

double xlog2x(double x) {
    if (x > 0.0) return x * std::log2(x);
    if (x >= -1e-12) return 0.0;
    std::ostringstream os;
    os << "logarithm argument " << x << " is negative beyond tolerance";
    throw DomainError(os.str());
}

template <std::size_t N>
DensityMatrix<N> DensityMatrix<N>::from_matrix(const Matrix<N>& m) {
    if (!m.is_finite()) throw DomainError("density matrix has non-finite entries");
    const double defect = hermiticity_defect(m);
    if (defect > kHermitianTolerance) {
        std::ostringstream os;
        os << "density matrix is not Hermitian (max |M - M^dagger| = " << defect << ")";
        throw DomainError(os.str());
    }
    const Complex tr = m.trace();
    if (std::abs(tr - 1.0) > kTraceTolerance) {
        std::ostringstream os;
        os << "density matrix trace is " << tr.real() << " (must be 1)";
        throw DomainError(os.str());
    }
    Matrix<N> h = (m + m.adjoint()) * Complex(0.5);
    Spectrum<N> spec = eigenvalues_hermitian(h);
    for (std::size_t k = 0; k < N; ++k) {
        if (spec[k] < -kEigenvalueClamp) {
            std::ostringstream os;
            os << "density matrix eigenvalue " << k << " is " << spec[k] << " (must be >= 0)";
            throw DomainError(os.str());
        }
        if (spec[k] < 0.0) spec[k] = 0.0;
    }
    return DensityMatrix(h, spec);
}

QubitDensity partial_trace_a(const DensityMatrix4& rho) {
    const Matrix4& m = rho.matrix();
    Matrix2 out;
    for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) out(k, l) = m(k, l) + m(2 + k, 2 + l);
    return QubitDensity::from_matrix(out);
}

Matrix2 partial_trace_b(const Matrix4& m) {
    Matrix2 out;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) out(i, j) = m(2 * i, 2 * j) + m(2 * i + 1, 2 * j + 1);
    return out;
}

template EigenSystem<2> eigen_hermitian(const Matrix<2>&);
template EigenSystem<4> eigen_hermitian(const Matrix<4>&);
template class DensityMatrix<2>;
template class DensityMatrix<4>;

} // namespace owid

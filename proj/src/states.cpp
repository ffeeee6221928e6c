#include "owid/states.hpp"

#include "owid/errors.hpp"

#include <cmath>
#include <initializer_list>
#include <sstream>

namespace owid {

namespace {

constexpr double kBoundaryTolerance = 1e-12;

Spectrum<4> sorted(std::array<double, 4> v) {
    std::sort(v.begin(), v.end());
    return v;
}

void require_nonnegative(const std::array<double, 4>& lambda, int first_label, const char* family) {
    for (int k = 0; k < 4; ++k) {
        if (lambda[k] < -kEigenvalueClamp) {
            std::ostringstream os;
            os << family << " parameters are unphysical: eigenvalue lambda_" << first_label + k
               << " = " << lambda[k] << " < 0";
            throw DomainError(os.str());
        }
    }
}

void require_finite(std::initializer_list<double> xs) {
    for (double x : xs)
        if (!std::isfinite(x)) throw DomainError("state parameters must be finite");
}

} // namespace

std::array<double, 4> bell_diagonal_eigenvalues(const BellDiagonalParams& p) {
    return {(1.0 - p.c1 - p.c2 - p.c3) / 4.0, (1.0 - p.c1 + p.c2 + p.c3) / 4.0,
            (1.0 + p.c1 - p.c2 + p.c3) / 4.0, (1.0 + p.c1 + p.c2 - p.c3) / 4.0};
}

Spectrum<4> bell_diagonal_spectrum(const BellDiagonalParams& p) {
    return sorted(bell_diagonal_eigenvalues(p));
}

std::array<double, 4> x_state_eigenvalues(const XStateParams& p) {
    const double a = std::hypot(p.s, p.c1 + p.c2);
    const double b = std::hypot(p.s, p.c1 - p.c2);
    return {(1.0 - p.c3 + a) / 4.0, (1.0 - p.c3 - a) / 4.0, (1.0 + p.c3 + b) / 4.0,
            (1.0 + p.c3 - b) / 4.0};
}

Spectrum<4> x_state_spectrum(const XStateParams& p) {
    return sorted(x_state_eigenvalues(p));
}

bool is_physical(const BellDiagonalParams& p) {
    if (!std::isfinite(p.c1) || !std::isfinite(p.c2) || !std::isfinite(p.c3)) return false;
    for (double l : bell_diagonal_eigenvalues(p))
        if (l < -kEigenvalueClamp) return false;
    return true;
}

bool is_physical(const XStateParams& p) {
    if (!std::isfinite(p.s) || !std::isfinite(p.c1) || !std::isfinite(p.c2) || !std::isfinite(p.c3))
        return false;
    for (double l : x_state_eigenvalues(p))
        if (l < -kEigenvalueClamp) return false;
    return true;
}

void require_physical(const BellDiagonalParams& p) {
    require_finite({p.c1, p.c2, p.c3});
    require_nonnegative(bell_diagonal_eigenvalues(p), 1, "Bell-diagonal");
}

void require_physical(const XStateParams& p) {
    require_finite({p.s, p.c1, p.c2, p.c3});
    require_nonnegative(x_state_eigenvalues(p), 13, "X-state");
}

DensityMatrix4 bell_diagonal_density(const BellDiagonalParams& p) {
    require_physical(p);
    return x_state_density({0.0, p.c1, p.c2, p.c3});
}

DensityMatrix4 x_state_density(const XStateParams& p) {
    require_physical(p);
    Matrix4 m;
    m(0, 0) = (1.0 + p.s + p.c3) / 4.0;
    m(1, 1) = (1.0 - p.s - p.c3) / 4.0;
    m(2, 2) = (1.0 + p.s - p.c3) / 4.0;
    m(3, 3) = (1.0 - p.s + p.c3) / 4.0;
    m(0, 3) = m(3, 0) = (p.c1 - p.c2) / 4.0;
    m(1, 2) = m(2, 1) = (p.c1 + p.c2) / 4.0;
    return DensityMatrix4::from_matrix(m);
}

XConditionReport check_x_condition(const XStateParams& p) {
    const double a1 = std::abs(p.c1), a2 = std::abs(p.c2), a3 = std::abs(p.c3), as = std::abs(p.s);
    XConditionReport r;
    r.c1_below_c2 = a1 < a2;
    r.c2_below_c3 = a2 < a3;
    r.s_nonzero = as > 0.0;
    r.s_below_bound = as < 1.0 - a3;
    r.closure = a1 <= a2 + kBoundaryTolerance && a2 <= a3 + kBoundaryTolerance &&
                as <= 1.0 - a3 + kBoundaryTolerance;
    return r;
}

std::string XConditionReport::describe() const {
    if (holds()) return "condition holds";
    std::string out;
    auto add = [&](const char* clause) {
        if (!out.empty()) out += "; ";
        out += clause;
    };
    if (!c1_below_c2) add("|c1| < |c2| violated");
    if (!c2_below_c3) add("|c2| < |c3| violated");
    if (!s_nonzero) add("0 < |s| violated");
    if (!s_below_bound) add("|s| < 1 - |c3| violated");
    return out;
}

BlochDecomposition bloch_decompose(const DensityMatrix4& rho) {
    const Matrix4& m = rho.matrix();
    const Matrix2 id = Matrix2::identity();
    BlochDecomposition b;
    for (int i = 0; i < 3; ++i) {
        const Matrix2 si = pauli(i + 1);
        b.r[i] = (m * kron(si, id)).trace().real();
        b.s[i] = (m * kron(id, si)).trace().real();
        for (int j = 0; j < 3; ++j) b.t[i][j] = (m * kron(si, pauli(j + 1))).trace().real();
    }
    return b;
}

Matrix4 bloch_reconstruct(const BlochDecomposition& b) {
    const Matrix2 id = Matrix2::identity();
    Matrix4 m = Matrix4::identity();
    for (int i = 0; i < 3; ++i) {
        const Matrix2 si = pauli(i + 1);
        m += kron(si, id) * Complex(b.r[i]);
        m += kron(id, si) * Complex(b.s[i]);
        for (int j = 0; j < 3; ++j) m += kron(si, pauli(j + 1)) * Complex(b.t[i][j]);
    }
    return m * Complex(0.25);
}

} // namespace owid

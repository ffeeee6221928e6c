#pragma once

// Bell-diagonal and four-parameter X-state families, their closed-form
// spectra, and the Bloch (r, s, T) decomposition of arbitrary two-qubit
// states. Basis order is |00>, |01>, |10>, |11> with qubit a first.

#include "owid/hermitian.hpp"

#include <array>
#include <string>

namespace owid {

struct BellDiagonalParams {
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;
};

/// rho = 1/4 (I + I (x) s sigma_3 + sum_i c_i sigma_i (x) sigma_i)
struct XStateParams {
    double s = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;

    BellDiagonalParams correlations() const { return {c1, c2, c3}; }
};

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

struct BlochDecomposition {
    Vec3 r{};  // qubit a
    Vec3 s{};  // qubit b
    Mat3 t{};  // t[i][j] = tr(rho sigma_i (x) sigma_j)
};

/// Closed-form eigenvalues in their labelled order:
/// (1-c1-c2-c3)/4, (1-c1+c2+c3)/4, (1+c1-c2+c3)/4, (1+c1+c2-c3)/4.
std::array<double, 4> bell_diagonal_eigenvalues(const BellDiagonalParams& p);
/// Same values sorted ascending. May be negative for unphysical input.
Spectrum<4> bell_diagonal_spectrum(const BellDiagonalParams& p);

/// Closed-form eigenvalues in labelled order:
/// [1-c3 +- sqrt(s^2+(c1+c2)^2)]/4, [1+c3 +- sqrt(s^2+(c1-c2)^2)]/4.
std::array<double, 4> x_state_eigenvalues(const XStateParams& p);
Spectrum<4> x_state_spectrum(const XStateParams& p);

bool is_physical(const BellDiagonalParams& p);
bool is_physical(const XStateParams& p);

/// Throw DomainError naming the first negative eigenvalue.
void require_physical(const BellDiagonalParams& p);
void require_physical(const XStateParams& p);

DensityMatrix4 bell_diagonal_density(const BellDiagonalParams& p);
DensityMatrix4 x_state_density(const XStateParams& p);

/// Which clauses of |c1| < |c2| < |c3|, 0 < |s| < 1 - |c3| hold.
struct XConditionReport {
    bool c1_below_c2 = false;
    bool c2_below_c3 = false;
    bool s_nonzero = false;
    bool s_below_bound = false;
    // Same clauses with the inequalities relaxed to <= (and s = 0 allowed).
    bool closure = false;

    bool holds() const { return c1_below_c2 && c2_below_c3 && s_nonzero && s_below_bound; }
    std::string describe() const;
};

XConditionReport check_x_condition(const XStateParams& p);

BlochDecomposition bloch_decompose(const DensityMatrix4& rho);
Matrix4 bloch_reconstruct(const BlochDecomposition& b);

} // namespace owid

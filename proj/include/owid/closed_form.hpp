#pragma once

// Closed-form entropies, minimum post-measurement entropies and one-way
// information deficits (OWID, in bits) for the Bell-diagonal and X-state
// families, plus the X-state concurrence.

#include "owid/states.hpp"

namespace owid {

/// Deficit value clamped to >= 0, with the unclamped result kept for
/// diagnostics (tiny negative residues are floating-point noise).
struct Deficit {
    double value = 0.0;
    double raw = 0.0;
};

/// Whether X-state closed forms accept the closure of the strict condition
/// |c1| < |c2| < |c3|, 0 < |s| < 1 - |c3| (equalities and s = 0).
enum class BoundaryPolicy { strict, allow_boundary };

/// (phi, theta) pair the post-measurement spectrum depends on:
/// phi = s z3, theta = |(c1 z1, c2 z2, c3 z3)|.
struct MeasurementReduction {
    double phi = 0.0;
    double theta = 0.0;
};

double entropy_bell_diagonal(const BellDiagonalParams& p);
double min_measured_entropy_bell(const BellDiagonalParams& p);
Deficit owid_bell_diagonal(const BellDiagonalParams& p);

/// 2 - 1/4 sum (1 +- phi +- theta) log2 (1 +- phi +- theta).
/// Even in phi and in theta. Throws DomainError when a log argument is below
/// -1e-12.
double f_phi_theta(const MeasurementReduction& m);
inline double f_phi_theta(double phi, double theta) { return f_phi_theta({phi, theta}); }

double entropy_x_state(const XStateParams& p);

/// Minimum is attained at (phi, theta) = (|s|, |c3|). Throws
/// PreconditionError outside the condition region; callers should fall back
/// to min_measured_entropy_x_reduced.
double min_measured_entropy_x(const XStateParams& p,
                              BoundaryPolicy policy = BoundaryPolicy::strict);
Deficit owid_x_state(const XStateParams& p, BoundaryPolicy policy = BoundaryPolicy::strict);

/// Wootters concurrence from the closed-form eigenvalues of rho rho~.
double concurrence_x_state(const XStateParams& p);

/// Square roots of the closed-form eigenvalues of rho rho~, labelled
/// order: |c1-c2 -+ sqrt((1+c3)^2-s^2)|/4, |c1+c2 -+ sqrt((1-c3)^2-s^2)|/4.
std::array<double, 4> x_state_concurrence_roots(const XStateParams& p);

} // namespace owid

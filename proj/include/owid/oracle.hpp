#pragma once

// Brute-force evaluation of the one-way information deficit, quantum discord
// and concurrence of arbitrary two-qubit states. Measurements act on qubit b.
// These routines are the reference the closed forms are checked against.

#include "owid/closed_form.hpp"
#include "owid/hermitian.hpp"
#include "owid/states.hpp"

#include <functional>
#include <utility>

namespace owid {

/// Unit Bloch vector fixing the projective measurement {(I +- n.sigma)/2}.
class MeasurementDirection {
public:
    /// Throws ArgumentError unless | |n| - 1 | <= 1e-12.
    static MeasurementDirection from_unit(const Vec3& n);
    /// Normalises n. Throws ArgumentError for a zero or non-finite vector.
    static MeasurementDirection normalized(const Vec3& n);

    const Vec3& vector() const { return n_; }
    double operator[](std::size_t i) const { return n_[i]; }

private:
    explicit MeasurementDirection(const Vec3& n) : n_(n) {}
    Vec3 n_;
};

/// V = t I + i y.sigma with t^2 + |y|^2 = 1.
struct UnitaryParams {
    double t = 1.0;
    Vec3 y{};
};

/// Bloch direction z of the rotated computational-basis measurement
/// V Pi_k V^dagger: z1 = 2(-t y2 + y1 y3), z2 = 2(t y1 + y2 y3),
/// z3 = t^2 + y3^2 - y1^2 - y2^2.
MeasurementDirection direction_of_unitary(const UnitaryParams& u);

/// The 2x2 unitary V itself (used to check the direction reduction).
Matrix2 unitary_matrix(const UnitaryParams& u);

/// (Pi_+, Pi_-) = ((I + n.sigma)/2, (I - n.sigma)/2).
std::pair<Matrix2, Matrix2> projectors(const MeasurementDirection& n);

/// sum_k (I (x) Pi_k) rho (I (x) Pi_k).
DensityMatrix4 post_measurement_state(const DensityMatrix4& rho, const MeasurementDirection& n);

/// Entropy (bits) of the post-measurement state.
double measured_entropy(const DensityMatrix4& rho, const MeasurementDirection& n);

struct OptimizerConfig {
    int coarse_polar_steps = 90;
    int coarse_azimuth_steps = 180;
    int refine_iterations = 200;
    double refine_tolerance = 1e-12;  // bits, simplex value spread
    unsigned threads = 1;             // grid evaluation workers

    /// Throws ArgumentError on steps < 8, iterations < 1 or tolerance <= 0.
    void validate() const;
};

struct SphereMinimum {
    double value = 0.0;
    Vec3 direction{};
    int iterations = 0;
    bool converged = false;
};

/// Minimise an even objective over the unit sphere: hemisphere grid, then a
/// Nelder-Mead simplex in the tangent plane of the best grid direction.
/// Ties on the grid go to the first direction in (polar, azimuth) order.
/// Does not throw on non-convergence; inspect `converged`.
SphereMinimum minimize_on_sphere(const std::function<double(const Vec3&)>& objective,
                                 const OptimizerConfig& cfg);

struct OracleResult {
    double value = 0.0;                  // clamped to >= 0
    double raw = 0.0;                    // min measured entropy - S(rho)
    double min_measured_entropy = 0.0;
    double state_entropy = 0.0;
    Vec3 argmin{};
    int iterations = 0;
};

/// min_n S(post_measurement_state(rho, n)) - S(rho). Throws
/// ConvergenceError (carrying the best value) if refinement misses its
/// tolerance.
OracleResult owid_oracle(const DensityMatrix4& rho, const OptimizerConfig& cfg = {});

/// min over unit z of f(s z3, sqrt(c1^2 z1^2 + c2^2 z2^2 + c3^2 z3^2)).
/// Valid for every physical X state, with or without the closed-form
/// condition.
SphereMinimum min_measured_entropy_x_reduced_search(const XStateParams& p,
                                                    const OptimizerConfig& cfg = {});
double min_measured_entropy_x_reduced(const XStateParams& p, const OptimizerConfig& cfg = {});

/// S(rho_b) - S(rho) + min_n sum_k p_k S(rho_a|k), clamped to >= 0.
double discord_oracle(const DensityMatrix4& rho, const OptimizerConfig& cfg = {});

/// Wootters concurrence from the eigenvalues of rho rho~,
/// rho~ = (sigma_y (x) sigma_y) rho* (sigma_y (x) sigma_y).
double concurrence_oracle(const DensityMatrix4& rho);

} // namespace owid

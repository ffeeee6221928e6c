#include "owid/closed_form.hpp"

#include "owid/errors.hpp"

#include <algorithm>
#include <cmath>

namespace owid {

namespace {

// 1/4 sum x log2 x over four arguments.
double quarter_xlogx(double a, double b, double c, double d) {
    return 0.25 * (xlog2x(a) + xlog2x(b) + xlog2x(c) + xlog2x(d));
}

void require_condition(const XStateParams& p, BoundaryPolicy policy) {
    const XConditionReport r = check_x_condition(p);
    const bool ok = policy == BoundaryPolicy::strict ? r.holds() : r.closure;
    if (!ok)
        throw PreconditionError("X-state closed form requires |c1| < |c2| < |c3| and "
                                "0 < |s| < 1 - |c3| (" +
                                r.describe() + "); use the reduced oracle instead");
}

double bell_max_abs(const BellDiagonalParams& p) {
    return std::max({std::abs(p.c1), std::abs(p.c2), std::abs(p.c3)});
}

} // namespace

double entropy_bell_diagonal(const BellDiagonalParams& p) {
    require_physical(p);
    const auto [c1, c2, c3] = p;
    return 2.0 - quarter_xlogx(1 - c1 - c2 - c3, 1 - c1 + c2 + c3, 1 + c1 - c2 + c3, 1 + c1 + c2 - c3);
}

double min_measured_entropy_bell(const BellDiagonalParams& p) {
    require_physical(p);
    const double c = bell_max_abs(p);
    return 2.0 - 0.5 * xlog2x(1.0 - c) - 0.5 * xlog2x(1.0 + c);
}

Deficit owid_bell_diagonal(const BellDiagonalParams& p) {
    require_physical(p);
    const auto [c1, c2, c3] = p;
    const double c = bell_max_abs(p);
    const double raw = quarter_xlogx(1 - c1 - c2 - c3, 1 - c1 + c2 + c3, 1 + c1 - c2 + c3, 1 + c1 + c2 - c3) -
                       0.5 * xlog2x(1.0 - c) - 0.5 * xlog2x(1.0 + c);
    return {std::max(raw, 0.0), raw};
}

double f_phi_theta(const MeasurementReduction& m) {
    // The argument set is invariant under phi -> -phi and theta -> -theta.
    const double a = std::abs(m.phi);
    const double b = std::abs(m.theta);
    return 2.0 - quarter_xlogx(1 + a - b, 1 + a + b, 1 - a - b, 1 - a + b);
}

double entropy_x_state(const XStateParams& p) {
    require_physical(p);
    const double plus = std::hypot(p.s, p.c1 + p.c2);
    const double minus = std::hypot(p.s, p.c1 - p.c2);
    return 2.0 - quarter_xlogx(1 - p.c3 + plus, 1 - p.c3 - plus, 1 + p.c3 + minus, 1 + p.c3 - minus);
}

double min_measured_entropy_x(const XStateParams& p, BoundaryPolicy policy) {
    require_physical(p);
    require_condition(p, policy);
    const double s = p.s, c3 = p.c3;
    return 2.0 - quarter_xlogx(1 + s - c3, 1 + s + c3, 1 - s - c3, 1 - s + c3);
}

Deficit owid_x_state(const XStateParams& p, BoundaryPolicy policy) {
    require_physical(p);
    require_condition(p, policy);
    const double s = p.s, c3 = p.c3;
    const double plus = std::hypot(s, p.c1 + p.c2);
    const double minus = std::hypot(s, p.c1 - p.c2);
    const double raw = quarter_xlogx(1 - c3 + plus, 1 - c3 - plus, 1 + c3 + minus, 1 + c3 - minus) -
                       quarter_xlogx(1 + s - c3, 1 + s + c3, 1 - s - c3, 1 - s + c3);
    return {std::max(raw, 0.0), raw};
}

std::array<double, 4> x_state_concurrence_roots(const XStateParams& p) {
    const double r_plus = std::sqrt(std::max(0.0, (1 + p.s + p.c3) * (1 - p.s + p.c3)));
    const double r_minus = std::sqrt(std::max(0.0, (1 - p.s - p.c3) * (1 + p.s - p.c3)));
    const double d = p.c1 - p.c2;
    const double u = p.c1 + p.c2;
    return {std::abs(d - r_plus) / 4.0, std::abs(d + r_plus) / 4.0, std::abs(u - r_minus) / 4.0,
            std::abs(u + r_minus) / 4.0};
}

double concurrence_x_state(const XStateParams& p) {
    require_physical(p);
    const auto roots = x_state_concurrence_roots(p);
    const double largest = *std::max_element(roots.begin(), roots.end());
    const double sum = roots[0] + roots[1] + roots[2] + roots[3];
    return std::max(2.0 * largest - sum, 0.0);
}

} // namespace owid

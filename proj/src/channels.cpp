#include "owid/channels.hpp"

#include "owid/errors.hpp"
#include "owid/format.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace owid {

namespace {

constexpr double kCompletenessTolerance = 1e-10;
constexpr int kScanSteps = 2000;

void require_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        std::ostringstream os;
        os << "phase-flip strength p must lie in [0, 1] (got " << p << ")";
        throw ArgumentError(os.str());
    }
}

// Bisection for the sign change of g on [lo, hi] where positive(lo) != positive(hi).
template <typename G>
double bisect(G&& positive, double lo, double hi) {
    const bool lo_positive = positive(lo);
    while (hi - lo > kEventTolerance / 100.0) {
        const double mid = 0.5 * (lo + hi);
        if (positive(mid) == lo_positive)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

double p_of_time(double gamma, double t) {
    if (!(gamma >= 0.0) || !(t >= 0.0))
        throw ArgumentError("p_of_time: damping rate and time must be non-negative");
    return -std::expm1(-gamma * t);
}

PhaseFlipKraus kraus_phase_flip(double p) {
    require_probability(p);
    const double keep = std::sqrt(1.0 - p / 2.0);
    const double flip = std::sqrt(p / 2.0);
    Matrix2 k0, k1;
    k0(0, 0) = keep;
    k0(1, 1) = keep;
    k1(0, 0) = flip;
    k1(1, 1) = -flip;
    const Matrix2 id = Matrix2::identity();
    return {{kron(k0, id), kron(k1, id)}, {kron(id, k0), kron(id, k1)}};
}

XStateParams apply_phase_flip_x(const XStateParams& params, double p) {
    require_probability(p);
    const double shrink = (1.0 - p) * (1.0 - p);
    return {params.s, shrink * params.c1, shrink * params.c2, params.c3};
}

DensityMatrix4 apply_channel_kraus(const DensityMatrix4& rho, std::span<const Matrix4> kraus) {
    if (kraus.empty()) throw ArgumentError("Kraus set is empty");
    Matrix4 completeness;
    for (const Matrix4& k : kraus) completeness += k.adjoint() * k;
    const double defect = max_abs_diff(completeness, Matrix4::identity());
    if (defect > kCompletenessTolerance) {
        std::ostringstream os;
        os << "Kraus set is not complete (max |sum K^dagger K - I| = " << defect << ")";
        throw ArgumentError(os.str());
    }
    Matrix4 out;
    for (const Matrix4& k : kraus) out += k * rho.matrix() * k.adjoint();
    return DensityMatrix4::from_matrix(out);
}

DensityMatrix4 apply_phase_flip(const DensityMatrix4& rho, double p) {
    const PhaseFlipKraus k = kraus_phase_flip(p);
    return apply_channel_kraus(apply_channel_kraus(rho, k.side_a), k.side_b);
}

ChannelDeficit owid_under_phase_flip(const XStateParams& params, double p, const OptimizerConfig& cfg) {
    const XStateParams decohered = apply_phase_flip_x(params, p);
    require_physical(decohered);
    ChannelDeficit out;
    if (!check_x_condition(decohered).closure) {
        out.source = Evaluator::reduced_oracle;
        out.warning = "decohered state leaves the closed-form region (" +
                      check_x_condition(decohered).describe() + "); used reduced oracle";
        out.raw = min_measured_entropy_x_reduced(decohered, cfg) - entropy_x_state(decohered);
        out.value = std::max(out.raw, 0.0);
        return out;
    }

    const double s = params.s, c3 = params.c3;
    const double q4 = std::pow(1.0 - p, 4);
    const double plus = std::sqrt(s * s + q4 * (params.c1 + params.c2) * (params.c1 + params.c2));
    const double minus = std::sqrt(s * s + q4 * (params.c1 - params.c2) * (params.c1 - params.c2));
    out.raw = 0.25 * (xlog2x(1 - c3 + plus) + xlog2x(1 - c3 - plus) + xlog2x(1 + c3 + minus) +
                      xlog2x(1 + c3 - minus)) -
              0.25 * (xlog2x(1 + s - c3) + xlog2x(1 + s + c3) + xlog2x(1 - s - c3) + xlog2x(1 - s + c3));
    out.value = std::max(out.raw, 0.0);
    return out;
}

double concurrence_margin_under_phase_flip(const XStateParams& params, double p) {
    const XStateParams decohered = apply_phase_flip_x(params, p);
    require_physical(decohered);
    const auto roots = x_state_concurrence_roots(decohered);
    const double largest = *std::max_element(roots.begin(), roots.end());
    return 2.0 * largest - (roots[0] + roots[1] + roots[2] + roots[3]);
}

double concurrence_under_phase_flip(const XStateParams& params, double p) {
    return concurrence_x_state(apply_phase_flip_x(params, p));
}

std::vector<TrajectoryPoint> dynamics_trajectory(const XStateParams& params, std::span<const double> p_grid,
                                                 const OptimizerConfig& cfg) {
    for (std::size_t i = 0; i < p_grid.size(); ++i) {
        require_probability(p_grid[i]);
        if (i > 0 && p_grid[i] < p_grid[i - 1]) throw ArgumentError("p grid must be sorted ascending");
    }
    std::vector<TrajectoryPoint> out;
    out.reserve(p_grid.size());
    for (double p : p_grid)
        out.push_back({p, owid_under_phase_flip(params, p, cfg).value, concurrence_under_phase_flip(params, p)});
    return out;
}

std::vector<double> uniform_grid(double start, double stop, double step) {
    if (!std::isfinite(start) || !std::isfinite(stop) || !(step > 0.0) || stop < start)
        throw ArgumentError("grid needs finite start <= stop and a positive step");
    const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-6));
    std::vector<double> grid;
    grid.reserve(n + 1);
    for (std::size_t i = 0; i <= n; ++i) grid.push_back(std::min(stop, start + static_cast<double>(i) * step));
    return grid;
}

EventReport find_sudden_death(const XStateParams& params) {
    EventReport r;
    r.kind = EventKind::sudden_death;
    auto positive = [&](double p) { return concurrence_under_phase_flip(params, p) > 0.0; };
    if (!positive(0.0)) {
        r.note = "state is already separable at p = 0";
        return r;
    }
    if (positive(1.0)) {
        r.note = "concurrence stays positive up to p = 1";
        return r;
    }
    int first_zero = kScanSteps;
    for (int k = 1; k <= kScanSteps; ++k) {
        if (!positive(static_cast<double>(k) / kScanSteps)) {
            first_zero = k;
            break;
        }
    }
    for (int k = first_zero + 1; k <= kScanSteps; ++k) {
        if (positive(static_cast<double>(k) / kScanSteps)) {
            r.note = "concurrence revives after the first zero";
            break;
        }
    }
    const double root = bisect(positive, static_cast<double>(first_zero - 1) / kScanSteps,
                               static_cast<double>(first_zero) / kScanSteps);
    // (1-p)^2 <= 1e-12 here: below that the concurrence is rounding noise.
    if (root >= 1.0 - 1e-6) {
        r.note = "concurrence vanishes only at p = 1 (asymptotic decay)";
        return r;
    }
    r.found = true;
    r.p_star = root;
    r.residual = concurrence_margin_under_phase_flip(params, r.p_star);
    return r;
}

EventReport find_crossing(const XStateParams& params, const OptimizerConfig& cfg) {
    EventReport r;
    r.kind = EventKind::crossing;
    auto gap = [&](double p) {
        return concurrence_under_phase_flip(params, p) - owid_under_phase_flip(params, p, cfg).value;
    };
    const EventReport death = find_sudden_death(params);
    const double end = death.found ? death.p_star : 1.0;
    const double g0 = gap(0.0);
    const double g_end = gap(end);
    if (g0 == 0.0) {
        r.found = true;
        r.note = "concurrence equals OWID at p = 0";
        return r;
    }
    if ((g0 > 0.0) == (g_end > 0.0)) {
        r.note = g0 > 0.0 ? "concurrence stays above OWID" : "OWID exceeds concurrence from p = 0";
        return r;
    }
    auto positive = [&](double p) { return gap(p) > 0.0; };
    const bool start_positive = g0 > 0.0;
    double lo = 0.0, hi = end;
    for (int k = 1; k <= kScanSteps; ++k) {
        const double p = end * static_cast<double>(k) / kScanSteps;
        if (positive(p) != start_positive) {
            hi = p;
            break;
        }
        lo = p;
    }
    r.found = true;
    r.p_star = bisect(positive, lo, hi);
    r.residual = gap(r.p_star);
    return r;
}

void write_trajectory_csv(std::ostream& os, std::span<const TrajectoryPoint> points) {
    os << "p,owid_bits,concurrence\n";
    for (const auto& pt : points)
        os << format_g12(pt.p) << ',' << format_g12(pt.owid) << ',' << format_g12(pt.concurrence) << '\n';
}

void write_trajectory_csv(const std::filesystem::path& path, std::span<const TrajectoryPoint> points) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    write_trajectory_csv(out, points);
    if (!out) throw IoError("failed writing " + path.string());
}

} // namespace owid

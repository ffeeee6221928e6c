#include "owid/oracle.hpp"

#include "owid/errors.hpp"
#include "owid/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace owid {

namespace {

constexpr double kUnitTolerance = 1e-12;
constexpr double kSimplexDiameter = 1e-6;

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double norm(const Vec3& a) { return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]); }

Vec3 scaled(const Vec3& a, double k) { return {a[0] * k, a[1] * k, a[2] * k}; }

Matrix2 bloch_operator(const Vec3& n) {
    return pauli(1) * Complex(n[0]) + pauli(2) * Complex(n[1]) + pauli(3) * Complex(n[2]);
}

// Orthonormal basis of the tangent plane at unit vector n.
std::pair<Vec3, Vec3> tangent_basis(const Vec3& n) {
    int least = 0;
    for (int i = 1; i < 3; ++i)
        if (std::abs(n[i]) < std::abs(n[least])) least = i;
    Vec3 axis{};
    axis[least] = 1.0;
    Vec3 e1 = cross(n, axis);
    e1 = scaled(e1, 1.0 / norm(e1));
    return {e1, cross(n, e1)};
}

struct Point2 {
    double u = 0.0;
    double v = 0.0;
};

Point2 lerp(const Point2& from, const Point2& to, double k) {
    return {from.u + k * (to.u - from.u), from.v + k * (to.v - from.v)};
}

double distance(const Point2& a, const Point2& b) { return std::hypot(a.u - b.u, a.v - b.v); }

void require_converged(const SphereMinimum& m, const char* what) {
    if (!m.converged) {
        std::ostringstream os;
        os << what << ": simplex refinement did not reach tolerance after " << m.iterations
           << " iterations (best value " << m.value << ")";
        throw ConvergenceError(os.str(), m.value);
    }
}

// p_k and unnormalised block (I (x) Pi_k) rho (I (x) Pi_k) for both outcomes.
std::pair<Matrix4, Matrix4> measured_blocks(const Matrix4& rho, const MeasurementDirection& n) {
    const auto [plus, minus] = projectors(n);
    const Matrix2 id = Matrix2::identity();
    const Matrix4 pp = kron(id, plus);
    const Matrix4 pm = kron(id, minus);
    return {pp * rho * pp, pm * rho * pm};
}

} // namespace

MeasurementDirection MeasurementDirection::from_unit(const Vec3& n) {
    const double len = norm(n);
    if (!std::isfinite(len) || std::abs(len - 1.0) > kUnitTolerance) {
        std::ostringstream os;
        os << "measurement direction must have unit norm (got " << len << ")";
        throw ArgumentError(os.str());
    }
    return MeasurementDirection(n);
}

MeasurementDirection MeasurementDirection::normalized(const Vec3& n) {
    const double len = norm(n);
    if (!std::isfinite(len) || len == 0.0)
        throw ArgumentError("measurement direction must be a finite non-zero vector");
    return MeasurementDirection(scaled(n, 1.0 / len));
}

MeasurementDirection direction_of_unitary(const UnitaryParams& u) {
    const double t = u.t;
    const auto [y1, y2, y3] = u.y;
    const double nrm = t * t + y1 * y1 + y2 * y2 + y3 * y3;
    if (!std::isfinite(nrm) || std::abs(nrm - 1.0) > kUnitTolerance) {
        std::ostringstream os;
        os << "unitary parameters must satisfy t^2 + |y|^2 = 1 (got " << nrm << ")";
        throw ArgumentError(os.str());
    }
    return MeasurementDirection::from_unit({2.0 * (-t * y2 + y1 * y3), 2.0 * (t * y1 + y2 * y3),
                                            t * t + y3 * y3 - y1 * y1 - y2 * y2});
}

Matrix2 unitary_matrix(const UnitaryParams& u) {
    return Matrix2::identity() * Complex(u.t) + bloch_operator(u.y) * Complex(0.0, 1.0);
}

std::pair<Matrix2, Matrix2> projectors(const MeasurementDirection& n) {
    const Matrix2 id = Matrix2::identity();
    const Matrix2 ns = bloch_operator(n.vector());
    return {(id + ns) * Complex(0.5), (id - ns) * Complex(0.5)};
}

DensityMatrix4 post_measurement_state(const DensityMatrix4& rho, const MeasurementDirection& n) {
    const auto [a, b] = measured_blocks(rho.matrix(), n);
    return DensityMatrix4::from_matrix(a + b);
}

double measured_entropy(const DensityMatrix4& rho, const MeasurementDirection& n) {
    return von_neumann_entropy(post_measurement_state(rho, n));
}

void OptimizerConfig::validate() const {
    if (coarse_polar_steps < 8 || coarse_azimuth_steps < 8)
        throw ArgumentError("optimizer grid needs at least 8 polar and 8 azimuth steps");
    if (refine_iterations < 1) throw ArgumentError("optimizer needs at least one refinement iteration");
    if (!(refine_tolerance > 0.0)) throw ArgumentError("optimizer tolerance must be positive");
}

SphereMinimum minimize_on_sphere(const std::function<double(const Vec3&)>& objective,
                                 const OptimizerConfig& cfg) {
    cfg.validate();
    const int polar = cfg.coarse_polar_steps;
    const int azimuth = cfg.coarse_azimuth_steps;
    const double d_polar = (std::numbers::pi / 2.0) / polar;
    const double d_azimuth = 2.0 * std::numbers::pi / azimuth;

    // Index 0 is the pole; then rows i = 1..polar of `azimuth` points each.
    const std::size_t count = 1 + static_cast<std::size_t>(polar) * azimuth;
    auto grid_direction = [&](std::size_t k) -> Vec3 {
        if (k == 0) return {0.0, 0.0, 1.0};
        const std::size_t i = (k - 1) / azimuth + 1;
        const std::size_t j = (k - 1) % azimuth;
        const double th = d_polar * static_cast<double>(i);
        const double ph = d_azimuth * static_cast<double>(j);
        return {std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)};
    };

    std::vector<double> values(count);
    parallel_for(count, cfg.threads, [&](std::size_t k) { values[k] = objective(grid_direction(k)); });

    std::size_t best = 0;
    for (std::size_t k = 1; k < count; ++k)
        if (values[k] < values[best]) best = k;

    const Vec3 origin = grid_direction(best);
    const auto [e1, e2] = tangent_basis(origin);
    auto to_sphere = [&](const Point2& p) {
        const Vec3 x{origin[0] + p.u * e1[0] + p.v * e2[0], origin[1] + p.u * e1[1] + p.v * e2[1],
                     origin[2] + p.u * e1[2] + p.v * e2[2]};
        return scaled(x, 1.0 / norm(x));
    };
    auto eval = [&](const Point2& p) { return objective(to_sphere(p)); };

    std::array<Point2, 3> pts{Point2{0.0, 0.0}, Point2{d_polar, 0.0}, Point2{0.0, d_polar}};
    std::array<double, 3> f{values[best], eval(pts[1]), eval(pts[2])};

    SphereMinimum out;
    for (int iter = 0;; ++iter) {
        std::array<int, 3> order{0, 1, 2};
        std::sort(order.begin(), order.end(), [&](int a, int b) { return f[a] < f[b]; });
        pts = {pts[order[0]], pts[order[1]], pts[order[2]]};
        f = {f[order[0]], f[order[1]], f[order[2]]};

        const double spread = f[2] - f[0];
        const double diameter =
            std::max({distance(pts[0], pts[1]), distance(pts[0], pts[2]), distance(pts[1], pts[2])});
        out.iterations = iter;
        if (spread <= cfg.refine_tolerance && diameter <= kSimplexDiameter) {
            out.converged = true;
            break;
        }
        if (iter >= cfg.refine_iterations) break;

        const Point2 centroid{(pts[0].u + pts[1].u) / 2.0, (pts[0].v + pts[1].v) / 2.0};
        const Point2 reflected = lerp(centroid, pts[2], -1.0);
        const double fr = eval(reflected);
        if (fr < f[0]) {
            const Point2 expanded = lerp(centroid, pts[2], -2.0);
            const double fe = eval(expanded);
            if (fe < fr) {
                pts[2] = expanded;
                f[2] = fe;
            } else {
                pts[2] = reflected;
                f[2] = fr;
            }
            continue;
        }
        if (fr < f[1]) {
            pts[2] = reflected;
            f[2] = fr;
            continue;
        }
        const bool outside = fr < f[2];
        const Point2 contracted = outside ? lerp(centroid, reflected, 0.5) : lerp(centroid, pts[2], 0.5);
        const double fc = eval(contracted);
        if (outside ? fc <= fr : fc < f[2]) {
            pts[2] = contracted;
            f[2] = fc;
            continue;
        }
        for (int k = 1; k < 3; ++k) {
            pts[k] = lerp(pts[0], pts[k], 0.5);
            f[k] = eval(pts[k]);
        }
    }

    out.value = f[0];
    out.direction = to_sphere(pts[0]);
    return out;
}

OracleResult owid_oracle(const DensityMatrix4& rho, const OptimizerConfig& cfg) {
    const double entropy = von_neumann_entropy(rho);
    const SphereMinimum m = minimize_on_sphere(
        [&](const Vec3& z) { return measured_entropy(rho, MeasurementDirection::normalized(z)); }, cfg);
    require_converged(m, "owid_oracle");
    OracleResult r;
    r.min_measured_entropy = m.value;
    r.state_entropy = entropy;
    r.raw = m.value - entropy;
    r.value = std::max(r.raw, 0.0);
    r.argmin = m.direction;
    r.iterations = m.iterations;
    return r;
}

SphereMinimum min_measured_entropy_x_reduced_search(const XStateParams& p, const OptimizerConfig& cfg) {
    require_physical(p);
    const double c1 = p.c1, c2 = p.c2, c3 = p.c3, s = p.s;
    return minimize_on_sphere(
        [=](const Vec3& z) {
            const double theta =
                std::sqrt(c1 * c1 * z[0] * z[0] + c2 * c2 * z[1] * z[1] + c3 * c3 * z[2] * z[2]);
            return f_phi_theta(s * z[2], theta);
        },
        cfg);
}

double min_measured_entropy_x_reduced(const XStateParams& p, const OptimizerConfig& cfg) {
    const SphereMinimum m = min_measured_entropy_x_reduced_search(p, cfg);
    require_converged(m, "min_measured_entropy_x_reduced");
    return m.value;
}

double discord_oracle(const DensityMatrix4& rho, const OptimizerConfig& cfg) {
    const double entropy_b = von_neumann_entropy(partial_trace_a(rho));
    const double entropy = von_neumann_entropy(rho);
    const SphereMinimum m = minimize_on_sphere(
        [&](const Vec3& z) {
            const auto [plus, minus] = measured_blocks(rho.matrix(), MeasurementDirection::normalized(z));
            double conditional = 0.0;
            for (const Matrix4* block : {&plus, &minus}) {
                const double pk = block->trace().real();
                if (pk <= 1e-15) continue;
                const Matrix2 rho_a = partial_trace_b(*block) * Complex(1.0 / pk);
                conditional += pk * von_neumann_entropy(QubitDensity::from_matrix(rho_a));
            }
            return conditional;
        },
        cfg);
    require_converged(m, "discord_oracle");
    return std::max(entropy_b - entropy + m.value, 0.0);
}

double concurrence_oracle(const DensityMatrix4& rho) {
    const Matrix4 yy = kron(pauli(2), pauli(2));
    const Matrix4 flipped = yy * rho.matrix().conjugate() * yy;

    const EigenSystem<4> es = eigen_hermitian(rho.matrix());
    Matrix4 root_diag;
    for (std::size_t k = 0; k < 4; ++k) root_diag(k, k) = std::sqrt(std::max(es.values[k], 0.0));
    const Matrix4 root = es.vectors * root_diag * es.vectors.adjoint();
    const Matrix4 r = root * flipped * root;
    const Spectrum<4> mu = eigenvalues_hermitian((r + r.adjoint()) * Complex(0.5));

    double largest = 0.0, sum = 0.0;
    for (double m : mu) {
        const double root_mu = std::sqrt(std::max(m, 0.0));
        largest = std::max(largest, root_mu);
        sum += root_mu;
    }
    return std::max(2.0 * largest - sum, 0.0);
}

} // namespace owid

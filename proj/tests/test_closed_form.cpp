#include "owid/closed_form.hpp"
#include "owid/errors.hpp"
#include "owid/oracle.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>

using namespace owid;
using owid::test::Sampler;

namespace {

const XStateParams kDecay{0.3, 0.3, -0.4, 0.56};

// f(phi, theta) written directly from its four log terms.
double f_by_hand(double phi, double theta) {
    double s = 2.0;
    for (double a : {1 + phi + theta, 1 + phi - theta, 1 - phi + theta, 1 - phi - theta})
        if (a > 0) s -= 0.25 * a * std::log2(a);
    return s;
}

OptimizerConfig quick() {
    OptimizerConfig cfg;
    cfg.coarse_polar_steps = 30;
    cfg.coarse_azimuth_steps = 60;
    return cfg;
}

} // namespace

TEST_SUITE("closed_form") {

TEST_CASE("Bell-diagonal entropy") {
    CHECK(entropy_bell_diagonal({0, 0, 0}) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(std::abs(entropy_bell_diagonal({1, -1, 1})) <= 1e-15);
    CHECK(entropy_bell_diagonal({0.5, 0, 0}) ==
          doctest::Approx(test::reference_entropy(bell_diagonal_density({0.5, 0, 0}).matrix())).epsilon(1e-12));
    CHECK_THROWS_AS(entropy_bell_diagonal({0.5, 0.5, 0.5}), DomainError);

    Sampler rng;
    for (int trial = 0; trial < 200; ++trial) {
        const BellDiagonalParams p = rng.bell();
        CHECK(std::abs(entropy_bell_diagonal(p) - test::reference_entropy(bell_diagonal_density(p).matrix())) <= 1e-10);
    }
}

TEST_CASE("f(phi, theta)") {
    CHECK(f_phi_theta(0, 0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(f_phi_theta(0, 1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(f_phi_theta(0.3, 0.56) == doctest::Approx(f_by_hand(0.3, 0.56)).epsilon(1e-14));
    CHECK_THROWS_AS(f_phi_theta(0.6, 0.6), DomainError);

    // Measuring along z gives f(0.3, 0.56).
    const auto rho = x_state_density(kDecay);
    CHECK(std::abs(test::reference_measured_entropy(rho.matrix(), {0, 0, 1}) - f_phi_theta(0.3, 0.56)) <= 1e-12);
}

TEST_CASE("f symmetry") {
    Sampler rng;
    for (int trial = 0; trial < 1000; ++trial) {
        const double phi = rng.uniform(-0.99, 0.99);
        const double theta = rng.uniform(0, 1 - std::abs(phi));
        CHECK(std::abs(f_phi_theta(phi, theta) - f_phi_theta(-phi, theta)) <= 1e-14);
        CHECK(std::abs(f_phi_theta(phi, theta) - f_phi_theta(phi, -theta)) <= 1e-14);
        CHECK(std::abs(f_phi_theta(phi, theta) - f_by_hand(phi, theta)) <= 1e-13);
    }
}

TEST_CASE("f is decreasing in theta and |phi|") {
    const double h = 1e-6;
    for (int i = 1; i < 60; ++i) {
        for (int j = 1; j < 60; ++j) {
            const double phi = 0.98 * i / 60.0;
            const double theta = (1.0 - phi) * j / 60.0;
            if (theta + h >= 1 - phi) continue;
            const double dtheta = (f_phi_theta(phi, theta + h) - f_phi_theta(phi, theta - h)) / (2 * h);
            const double dphi = (f_phi_theta(phi + h, theta) - f_phi_theta(phi - h, theta)) / (2 * h);
            CHECK(dtheta <= 1e-9);
            CHECK(dphi <= 1e-9);
        }
    }
}

TEST_CASE("Bell-diagonal minimum measured entropy") {
    CHECK(min_measured_entropy_bell({0, 0, 0}) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(min_measured_entropy_bell({1, -1, 1}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(min_measured_entropy_bell({0.5, 0.2, 0.1}) == doctest::Approx(f_phi_theta(0, 0.5)).epsilon(1e-15));

    // Brute force over the x, y, z axes and random directions.
    const auto rho = bell_diagonal_density({0.5, 0.2, 0.1});
    double best = 1e9;
    Sampler rng;
    for (int k = 0; k < 2000; ++k) best = std::min(best, test::reference_measured_entropy(rho.matrix(), rng.direction()));
    best = std::min(best, test::reference_measured_entropy(rho.matrix(), {1, 0, 0}));
    CHECK(best == doctest::Approx(f_phi_theta(0, 0.5)).epsilon(1e-12));
}

TEST_CASE("Bell-diagonal OWID") {
    CHECK(owid_bell_diagonal({0, 0, 0}).value == 0.0);
    CHECK(owid_bell_diagonal({1, -1, 1}).value == doctest::Approx(1.0).epsilon(1e-14));

    const BellDiagonalParams p{0.3, -0.4, 0.56};
    CHECK(std::abs(owid_bell_diagonal(p).value - owid_oracle(bell_diagonal_density(p)).value) <= 1e-6);

    Sampler rng;
    for (int trial = 0; trial < 200; ++trial) {
        const BellDiagonalParams q = rng.bell();
        const Deficit d = owid_bell_diagonal(q);
        CHECK(d.raw >= -1e-10);
        CHECK(d.value >= 0.0);
        CHECK(d.value <= 1.0 + 1e-12);
        CHECK(std::abs(d.raw - (min_measured_entropy_bell(q) - entropy_bell_diagonal(q))) <= 1e-12);
    }
}

TEST_CASE("Bell-diagonal OWID symmetries") {
    Sampler rng;
    for (int trial = 0; trial < 200; ++trial) {
        const BellDiagonalParams p = rng.bell();
        const double v = owid_bell_diagonal(p).value;
        std::array<double, 3> c{p.c1, p.c2, p.c3};
        std::sort(c.begin(), c.end());
        do {
            for (int keep = 0; keep < 4; ++keep) {
                BellDiagonalParams q{c[0], c[1], c[2]};
                if (keep < 3) {
                    if (keep != 0) q.c1 = -q.c1;
                    if (keep != 1) q.c2 = -q.c2;
                    if (keep != 2) q.c3 = -q.c3;
                }
                CHECK(std::abs(owid_bell_diagonal(q).value - v) <= 1e-12);
            }
        } while (std::next_permutation(c.begin(), c.end()));
    }
}

TEST_CASE("X-state entropy") {
    Sampler rng;
    for (int trial = 0; trial < 100; ++trial) {
        const BellDiagonalParams b = rng.bell();
        CHECK(std::abs(entropy_x_state({0, b.c1, b.c2, b.c3}) - entropy_bell_diagonal(b)) <= 1e-12);
    }
    for (int trial = 0; trial < 200; ++trial) {
        const XStateParams p = rng.x_state();
        CHECK(std::abs(entropy_x_state(p) - test::reference_entropy(test::x_matrix_by_hand(p))) <= 1e-10);
    }
    CHECK(entropy_x_state(kDecay) ==
          doctest::Approx(test::reference_entropy(x_state_density(kDecay).matrix())).epsilon(1e-12));

    // Approaching the edge where the smallest eigenvalue vanishes.
    const double edge = 0.5;  // 1 - c3 - s = 0 for c = (0, 0, 0.5)
    const double at_edge = entropy_x_state({edge, 0, 0, 0.5});
    CHECK(std::abs(entropy_x_state({edge - 1e-9, 0, 0, 0.5}) - at_edge) <= 1e-6);
    // Spectrum (0, 1/4, 1/4, 1/2) there.
    CHECK(at_edge == doctest::Approx(2 * test::bits(0.25) + test::bits(0.5)).epsilon(1e-15));
}

TEST_CASE("X-state minimum measured entropy") {
    CHECK(min_measured_entropy_x(kDecay) == doctest::Approx(f_phi_theta(0.3, 0.56)).epsilon(1e-15));
    CHECK(min_measured_entropy_x({1e-9, 0.1, 0.2, 0.5}) ==
          doctest::Approx(min_measured_entropy_bell({0.1, 0.2, 0.5})).epsilon(1e-9));

    CHECK_THROWS_AS(min_measured_entropy_x({0.3, 0.5, -0.4, 0.56}), PreconditionError);
    try {
        (void)min_measured_entropy_x({0.3, 0.5, -0.4, 0.56});
    } catch (const PreconditionError& e) {
        CHECK(std::string(e.what()).find("reduced oracle") != std::string::npos);
    }
    CHECK_THROWS_AS(min_measured_entropy_x({0.0, 0.1, 0.2, 0.5}), PreconditionError);
    CHECK(min_measured_entropy_x({0.0, 0.1, 0.2, 0.5}, BoundaryPolicy::allow_boundary) ==
          doctest::Approx(min_measured_entropy_bell({0.1, 0.2, 0.5})).epsilon(1e-15));

    Sampler rng;
    for (int trial = 0; trial < 40; ++trial) {
        const XStateParams p = rng.x_state_in_region();
        CHECK(std::abs(min_measured_entropy_x(p) - min_measured_entropy_x_reduced(p, quick())) <= 1e-8);
    }
}

TEST_CASE("X-state OWID") {
    CHECK(std::abs(owid_x_state(kDecay).value - owid_oracle(x_state_density(kDecay)).value) <= 1e-6);
    CHECK(owid_x_state(kDecay).value == doctest::Approx(0.129231057696463).epsilon(1e-12));

    const XStateParams s0{0.0, 0.1, -0.2, 0.5};
    CHECK_THROWS_AS(owid_x_state(s0), PreconditionError);
    CHECK(owid_x_state(s0, BoundaryPolicy::allow_boundary).value ==
          doctest::Approx(owid_bell_diagonal({0.1, -0.2, 0.5}).value).epsilon(1e-13));

    Sampler rng;
    for (int trial = 0; trial < 200; ++trial) {
        const XStateParams p = rng.x_state_in_region();
        const Deficit d = owid_x_state(p);
        CHECK(d.value >= 0.0);
        CHECK(d.value <= 1.0);
        CHECK(std::abs(d.raw - (min_measured_entropy_x(p) - entropy_x_state(p))) <= 1e-12);
    }
}

TEST_CASE("X-state concurrence") {
    CHECK(concurrence_x_state({0, 0, 0, 0}) == 0.0);
    CHECK(concurrence_x_state({0, 1, -1, 1}) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(concurrence_x_state(kDecay) == doctest::Approx(0.189065230605689).epsilon(1e-12));
    CHECK(std::abs(concurrence_x_state(kDecay) - test::reference_concurrence(x_state_density(kDecay).matrix())) <= 1e-9);

    Sampler rng;
    for (int trial = 0; trial < 300; ++trial) {
        const XStateParams p = rng.x_state();
        const double c = concurrence_x_state(p);
        CHECK(c >= 0.0);
        CHECK(c <= 1.0);
        CHECK(std::abs(c - test::reference_concurrence(test::x_matrix_by_hand(p))) <= 1e-9);
    }

    // Bell-diagonal states: C = max(0, 2 lambda_max - 1).
    for (int trial = 0; trial < 100; ++trial) {
        const BellDiagonalParams b = rng.bell();
        const auto spec = bell_diagonal_spectrum(b);
        CHECK(std::abs(concurrence_x_state({0, b.c1, b.c2, b.c3}) - std::max(0.0, 2 * spec[3] - 1)) <= 1e-12);
    }
}

}

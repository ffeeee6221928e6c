#include "owid/errors.hpp"
#include "owid/states.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>

using namespace owid;
using owid::test::Sampler;

namespace {

const XStateParams kDecay{0.3, 0.3, -0.4, 0.56};

template <std::size_t N>
void check_close(const std::array<double, N>& a, const std::array<double, N>& b, double tol) {
    for (std::size_t i = 0; i < N; ++i) CHECK(std::abs(a[i] - b[i]) <= tol);
}

std::array<double, 4> sorted(std::array<double, 4> v) {
    std::sort(v.begin(), v.end());
    return v;
}

} // namespace

TEST_SUITE("states") {

TEST_CASE("Bell-diagonal densities") {
    const auto mixed = bell_diagonal_density({0, 0, 0});
    CHECK(max_abs_diff(mixed.matrix(), 0.25 * Matrix4::identity()) <= 1e-15);

    // (1,-1,1) is |Phi+><Phi+| with |Phi+> = (|00> + |11>)/sqrt2.
    const auto bell = bell_diagonal_density({1, -1, 1});
    Matrix4 phi;
    phi(0, 0) = phi(0, 3) = phi(3, 0) = phi(3, 3) = 0.5;
    CHECK(max_abs_diff(bell.matrix(), phi) <= 1e-15);

    CHECK_THROWS_AS(bell_diagonal_density({0.5, 0.5, 0.5}), DomainError);
    try {
        (void)bell_diagonal_density({0.5, 0.5, 0.5});
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("lambda_1") != std::string::npos);
    }
}

TEST_CASE("Bell-diagonal spectrum") {
    check_close(bell_diagonal_spectrum({0, 0, 0}), {0.25, 0.25, 0.25, 0.25}, 0.0);
    check_close(bell_diagonal_spectrum({1, -1, 1}), {0, 0, 0, 1}, 1e-16);
    // Unphysical input is still reported.
    CHECK(bell_diagonal_spectrum({0.5, 0.5, 0.5})[0] == doctest::Approx(-0.125));

    Sampler rng;
    for (int trial = 0; trial < 200; ++trial) {
        const BellDiagonalParams p = rng.bell();
        const auto closed = bell_diagonal_spectrum(p);
        check_close(closed, test::reference_eigenvalues(bell_diagonal_density(p).matrix()), 1e-10);
        double sum = 0.0;
        for (double v : closed) sum += v;
        CHECK(std::abs(sum - 1.0) <= 1e-15);
    }
}

TEST_CASE("physicality is invariant under permutations and double sign flips") {
    Sampler rng;
    for (int trial = 0; trial < 500; ++trial) {
        const BellDiagonalParams p{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const bool phys = is_physical(p);
        const auto spec = bell_diagonal_spectrum(p);
        std::array<double, 3> c{p.c1, p.c2, p.c3};
        std::sort(c.begin(), c.end());
        do {
            const BellDiagonalParams q{c[0], c[1], c[2]};
            CHECK(is_physical(q) == phys);
            check_close(bell_diagonal_spectrum(q), spec, 1e-15);
            for (int flip = 0; flip < 3; ++flip) {
                BellDiagonalParams f = q;
                if (flip != 0) f.c1 = -f.c1;
                if (flip != 1) f.c2 = -f.c2;
                if (flip != 2) f.c3 = -f.c3;
                CHECK(is_physical(f) == phys);
                check_close(bell_diagonal_spectrum(f), spec, 1e-15);
            }
        } while (std::next_permutation(c.begin(), c.end()));
    }
}

TEST_CASE("X-state densities") {
    Sampler rng;
    for (int trial = 0; trial < 100; ++trial) {
        const BellDiagonalParams b = rng.bell();
        CHECK(max_abs_diff(x_state_density({0, b.c1, b.c2, b.c3}).matrix(), bell_diagonal_density(b).matrix()) <=
              1e-15);
    }

    const auto fig2 = x_state_density(kDecay);
    CHECK(max_abs_diff(fig2.matrix(), test::x_matrix_by_hand(kDecay)) <= 1e-15);
    CHECK(fig2.matrix().trace().real() == doctest::Approx(1.0));

    CHECK_THROWS_AS(x_state_density({0.9, 0.0, 0.0, 0.5}), DomainError);
    CHECK_FALSE(is_physical(XStateParams{0.9, 0.0, 0.0, 0.5}));
    try {
        (void)x_state_density({0.9, 0.0, 0.0, 0.5});
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("lambda_14") != std::string::npos);
    }
}

TEST_CASE("X-state spectrum") {
    check_close(x_state_spectrum({0, 0, 0, 0}), {0.25, 0.25, 0.25, 0.25}, 0.0);
    check_close(x_state_spectrum({0.5, 0, 0, 0}), {0.125, 0.125, 0.375, 0.375}, 1e-16);
    check_close(test::reference_eigenvalues(x_state_density({0.5, 0, 0, 0}).matrix()),
                {0.125, 0.125, 0.375, 0.375}, 1e-14);
    check_close(x_state_spectrum(kDecay), test::reference_eigenvalues(x_state_density(kDecay).matrix()), 1e-10);

    Sampler rng;
    for (int trial = 0; trial < 200; ++trial) {
        const XStateParams p = rng.x_state();
        check_close(x_state_spectrum(p), test::reference_eigenvalues(test::x_matrix_by_hand(p)), 1e-10);
        check_close(x_state_spectrum(p), sorted(x_state_eigenvalues(p)), 0.0);
    }
}

TEST_CASE("closed-form region check") {
    CHECK(check_x_condition(kDecay).holds());

    const auto bad_c = check_x_condition({0.3, 0.5, -0.4, 0.56});
    CHECK_FALSE(bad_c.holds());
    CHECK_FALSE(bad_c.c1_below_c2);
    CHECK(bad_c.c2_below_c3);
    CHECK(bad_c.describe().find("|c1| < |c2|") != std::string::npos);

    const auto bad_s = check_x_condition({0.5, 0.1, -0.2, 0.56});
    CHECK_FALSE(bad_s.holds());
    CHECK_FALSE(bad_s.s_below_bound);
    CHECK(bad_s.s_nonzero);

    // Equalities fail the strict test but pass the closure.
    const auto edge = check_x_condition({0.0, 0.2, 0.4, 0.5});
    CHECK_FALSE(edge.holds());
    CHECK_FALSE(edge.s_nonzero);
    CHECK(edge.closure);
    const auto tie = check_x_condition({0.1, 0.4, -0.4, 0.5});
    CHECK_FALSE(tie.c1_below_c2);
    CHECK(tie.closure);
    CHECK_FALSE(check_x_condition({0.1, 0.5, 0.4, 0.6}).closure);
}

TEST_CASE("Bloch decomposition") {
    const auto mixed = bloch_decompose(DensityMatrix4::from_matrix(0.25 * Matrix4::identity()));
    for (int i = 0; i < 3; ++i) {
        CHECK(mixed.r[i] == 0.0);
        CHECK(mixed.s[i] == 0.0);
        for (int j = 0; j < 3; ++j) CHECK(mixed.t[i][j] == 0.0);
    }

    const BellDiagonalParams b{0.2, -0.3, 0.4};
    const auto bd = bloch_decompose(bell_diagonal_density(b));
    const auto xd = bloch_decompose(x_state_density(kDecay));
    const std::array<double, 3> bc{b.c1, b.c2, b.c3};
    const std::array<double, 3> xc{kDecay.c1, kDecay.c2, kDecay.c3};
    for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(bd.r[i]) <= 1e-15);
        CHECK(std::abs(bd.s[i]) <= 1e-15);
        CHECK(std::abs(xd.r[i]) <= 1e-15);
        for (int j = 0; j < 3; ++j) {
            CHECK(std::abs(bd.t[i][j] - (i == j ? bc[i] : 0.0)) <= 1e-15);
            CHECK(std::abs(xd.t[i][j] - (i == j ? xc[i] : 0.0)) <= 1e-15);
        }
    }
    CHECK(std::abs(xd.s[0]) <= 1e-15);
    CHECK(std::abs(xd.s[1]) <= 1e-15);
    CHECK(xd.s[2] == doctest::Approx(0.3).epsilon(1e-14));
}

TEST_CASE("Bloch round trip on random states") {
    Sampler rng;
    for (int trial = 0; trial < 200; ++trial) {
        const Matrix4 m = rng.density();
        const auto rho = DensityMatrix4::from_matrix(m);
        CHECK(max_abs_diff(bloch_reconstruct(bloch_decompose(rho)), rho.matrix()) <= 1e-10);
    }
}

}

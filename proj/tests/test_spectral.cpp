#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ocoswitch/spectral.hpp"

using namespace oco;

TEST_CASE("movement matrix structure") {
    Tridiag b = matrix_b(4);
    CHECK(b.diag == Vec{2.0, 2.0, 2.0, 1.0});
    CHECK(b.off == Vec{-1.0, -1.0, -1.0});
    CHECK(matrix_b(1).diag == Vec{1.0});

    Tridiag a = matrix_a(3, 0.5);
    CHECK(a.diag == Vec{2.5, 2.5, 1.5});
    CHECK(a.off == Vec{-1.0, -1.0});

    // stationarity system is the shifted movement system over mu
    for (double mu : {0.1, 1.0, 7.0}) {
        Tridiag h = matrix_h(5, mu);
        Tridiag shifted = matrix_a(5, mu);
        for (int i = 0; i < 5; ++i)
            CHECK(h.diag[i] == doctest::Approx(shifted.diag[i] / mu).epsilon(1e-15));
        for (int i = 0; i < 4; ++i)
            CHECK(h.off[i] == doctest::Approx(shifted.off[i] / mu).epsilon(1e-15));
    }

    CHECK_THROWS_AS(matrix_b(0), std::invalid_argument);
    CHECK_THROWS_AS(matrix_a(3, 0.0), std::invalid_argument);
}

TEST_CASE("row-disc enclosures") {
    Interval ib = gershgorin_interval(matrix_b(8));
    CHECK(ib.lo == 0.0);
    CHECK(ib.hi == 4.0);

    Interval ia = gershgorin_interval(matrix_a(8, 0.3));
    CHECK(ia.lo == doctest::Approx(0.3));
    CHECK(ia.hi == doctest::Approx(4.3));

    DenseMatrix eye(3, Vec(3, 0.0));
    for (int i = 0; i < 3; ++i) eye[i][i] = 1.0;
    Interval ii = gershgorin_interval(eye);
    CHECK(ii.lo == 1.0);
    CHECK(ii.hi == 1.0);

    DenseMatrix ragged(2, Vec(3, 0.0));
    CHECK_THROWS_AS(gershgorin_interval(ragged), std::invalid_argument);
}

TEST_CASE("eigenvalues by Sturm bisection") {
    Vec one = eigs_tridiag(matrix_b(1));
    REQUIRE(one.size() == 1);
    CHECK(one[0] == doctest::Approx(1.0).epsilon(1e-12));

    Vec two = eigs_tridiag(matrix_b(2));
    REQUIRE(two.size() == 2);
    CHECK(two[0] == doctest::Approx((3.0 - std::sqrt(5.0)) / 2.0).epsilon(1e-12));
    CHECK(two[1] == doctest::Approx((3.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-12));

    for (int T : {3, 8, 17, 64}) {
        Vec ev = eigs_tridiag(matrix_b(T));
        REQUIRE(static_cast<int>(ev.size()) == T);
        for (int i = 0; i < T; ++i) {
            CHECK(ev[i] >= -1e-10);
            CHECK(ev[i] <= 4.0 + 1e-10);
            if (i > 0) CHECK(ev[i - 1] <= ev[i] + 1e-12);
        }
    }

    Tridiag big;
    big.diag.assign(513, 2.0);
    big.off.assign(512, -1.0);
    CHECK_THROWS_AS(eigs_tridiag(big), std::invalid_argument);
}

TEST_CASE("shifting the diagonal shifts the spectrum") {
    for (int T : {2, 5, 16}) {
        for (double mu : {0.1, 1.0, 10.0}) {
            Vec eb = eigs_tridiag(matrix_b(T));
            Vec ea = eigs_tridiag(matrix_a(T, mu));
            for (int i = 0; i < T; ++i)
                CHECK(std::abs(ea[i] - (eb[i] + mu)) <= 1e-9);
        }
    }
}

TEST_CASE("tridiagonal solves") {
    Tridiag m;
    m.diag = {2.0, 2.0};
    m.off = {-1.0};
    Vec x = solve_tridiag(m, {1.0, 1.0});
    CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(x[1] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(tridiag_residual(m, x, {1.0, 1.0}) <= 1e-14);
    CHECK(tridiag_residual(m, {1.0, 0.0}, {1.0, 1.0}) == doctest::Approx(2.0));

    Rng rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        int T = rng.uniform_int(1, 40);
        Tridiag s;
        s.diag.resize(T);
        s.off.assign(T > 1 ? T - 1 : 0, 0.0);
        for (int i = 0; i + 1 < T; ++i) s.off[i] = rng.uniform(-1.0, 1.0);
        for (int i = 0; i < T; ++i) {
            double row = (i > 0 ? std::abs(s.off[i - 1]) : 0.0) +
                         (i + 1 < T ? std::abs(s.off[i]) : 0.0);
            s.diag[i] = row + rng.uniform(0.5, 2.0);
        }
        Vec rhs(T);
        for (int i = 0; i < T; ++i) rhs[i] = rng.uniform(-3.0, 3.0);
        Vec sol = solve_tridiag(s, rhs);
        CHECK(tridiag_residual(s, sol, rhs) <= 1e-12);
    }

    CHECK_THROWS_AS(solve_tridiag(m, {1.0, 2.0, 3.0}), std::invalid_argument);
}

TEST_CASE("movement-regularized projection value") {
    auto [point, value] = psi_optimum(1.0, {1.0});
    REQUIRE(point.size() == 1);
    CHECK(point[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(value == doctest::Approx(0.25).epsilon(1e-14));

    auto [zp, zv] = psi_optimum(2.0, {0.0, 0.0, 0.0});
    CHECK(norm(zp) <= 1e-14);
    CHECK(zv == doctest::Approx(0.0));

    Rng rng(44);
    for (int trial = 0; trial < 100; ++trial) {
        int T = rng.uniform_int(1, 16);
        double mu = rng.uniform(0.05, 5.0);
        Vec xs(T);
        for (int i = 0; i < T; ++i) xs[i] = rng.uniform(-3.0, 3.0);
        auto [p, v] = psi_optimum(mu, xs);
        CHECK(std::abs(psi_value(mu, xs, p) - v) <= 1e-10 * std::max(1.0, std::abs(v)));

        // quadratic form of the movement matrix
        double quad = 0.0;
        for (int i = 0; i < T; ++i) {
            quad += (i + 1 < T ? 2.0 : 1.0) * xs[i] * xs[i];
            if (i + 1 < T) quad -= 2.0 * xs[i] * xs[i + 1];
        }
        CHECK(v >= mu / (2.0 * (mu + 4.0)) * quad - 1e-9);

        Vec nudged = p;
        nudged[0] += 0.1;
        CHECK(psi_value(mu, xs, nudged) >= v - 1e-12);
    }
}

TEST_CASE("closed-form inverse of the stationarity system") {
    DenseMatrix inv = h_inverse_closed_form(2, 1.0);
    CHECK(inv[0][0] == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(inv[0][1] == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(inv[1][0] == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(inv[1][1] == doctest::Approx(0.6).epsilon(1e-12));

    for (int T : {1, 2, 3, 8, 17, 32}) {
        for (double mu : {0.1, 1.0, 10.0}) {
            DenseMatrix m = h_inverse_closed_form(T, mu);
            Tridiag h = matrix_h(T, mu);
            double max_rel = 0.0;
            for (int j = 0; j < T; ++j) {
                Vec e(T, 0.0);
                e[j] = 1.0;
                Vec col = solve_tridiag(h, e);
                for (int i = 0; i < T; ++i)
                    max_rel = std::max(max_rel, std::abs(m[i][j] - col[i]) /
                                                    std::max(1.0, std::abs(col[i])));
            }
            CHECK(max_rel <= 1e-8);
            for (int i = 0; i < T; ++i) {
                double row = 0.0;
                for (int j = 0; j < T; ++j) {
                    CHECK(m[i][j] > 0.0);
                    row += m[i][j];
                    CHECK(std::abs(m[i][j] - m[j][i]) <= 1e-12 * std::max(1.0, std::abs(m[i][j])));
                }
                // Far rows sit below 1 by less than an ulp at stiff mu, so
                // allow the rounded tie.
                CHECK(row <= 1.0 + 1e-12);
            }
        }
    }
}

TEST_CASE("decay-base bundle stays finite or refuses") {
    SpectralModel sm = make_spectral_model(6, 1.0);
    CHECK(sm.rho > 0.0);
    CHECK(sm.rho < 1.0);
    CHECK(sm.xi == doctest::Approx(3.0));
    CHECK(sm.w[0] == doctest::Approx(1.0).epsilon(1e-12));
    for (int t = 1; t <= 6; ++t) {
        double vt = sm.c1 * std::pow(sm.rho, -(6 - t)) + sm.c2 * std::pow(sm.rho, 6 - t);
        CHECK(sm.v[t - 1] == doctest::Approx(vt).epsilon(1e-10));
    }

    CHECK_THROWS_AS(make_spectral_model(512, 10.0), numeric_range_error);
    CHECK_THROWS_AS(h_inverse_closed_form(512, 10.0), numeric_range_error);
    CHECK_NOTHROW(make_spectral_model(256, 0.01));
}

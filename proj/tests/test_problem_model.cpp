#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ocoswitch/problem_model.hpp"

using namespace oco;

namespace {

FunctionModel wrap_as_oracle(const FunctionModel& f) {
    return FunctionModel::external_oracle(
        [f](const Vec& x) { return eval(f, x); },
        [f](const Vec& x) { return grad(f, x); }, f.mu, f.ell);
}

Vec random_point(Rng& rng, int d, double span) {
    Vec p(d);
    for (int i = 0; i < d; ++i) p[i] = rng.uniform(-span, span);
    return p;
}

}  // namespace

TEST_CASE("feasible set construction validates its inputs") {
    CHECK_NOTHROW(FeasibleSet::all_space(3));
    CHECK_THROWS_AS(FeasibleSet::all_space(0), std::invalid_argument);

    CHECK_NOTHROW(FeasibleSet::box({-1.0, -1.0}, {1.0, 1.0}));
    CHECK_THROWS_AS(FeasibleSet::box({1.0}, {-1.0}), std::invalid_argument);
    CHECK_THROWS_AS(FeasibleSet::box({0.5, -1.0}, {1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(FeasibleSet::box({-1.0}, {1.0, 1.0}), std::invalid_argument);

    CHECK_NOTHROW(FeasibleSet::ball({0.0, 0.0}, 2.0));
    CHECK_THROWS_AS(FeasibleSet::ball({0.0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(FeasibleSet::ball({0.0}, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(FeasibleSet::ball({3.0, 0.0}, 1.0), std::invalid_argument);
}

TEST_CASE("projection matches the closed forms") {
    FeasibleSet all = FeasibleSet::all_space(2);
    CHECK(project(all, {5.0, -7.0}) == Vec{5.0, -7.0});

    FeasibleSet ball = FeasibleSet::ball({0.0, 0.0}, 1.0);
    Vec p = project(ball, {2.0, 0.0});
    CHECK(p[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(p[1] == doctest::Approx(0.0));

    FeasibleSet box = FeasibleSet::box({-1.0, -1.0}, {1.0, 1.0});
    CHECK(project(box, {2.0, -3.0}) == Vec{1.0, -1.0});
    CHECK(project(box, {0.25, 0.5}) == Vec{0.25, 0.5});

    CHECK_THROWS_AS(project(box, {1.0, 2.0, 3.0}), std::invalid_argument);
}

TEST_CASE("projection is idempotent and nonexpansive") {
    Rng rng(17);
    FeasibleSet sets[] = {
        FeasibleSet::all_space(3),
        FeasibleSet::box({-1.0, -2.0, -0.5}, {2.0, 1.0, 0.5}),
        FeasibleSet::ball({0.25, 0.0, -0.25}, 1.5),
    };
    for (const FeasibleSet& set : sets) {
        for (int trial = 0; trial < 200; ++trial) {
            Vec p = random_point(rng, 3, 5.0);
            Vec q = random_point(rng, 3, 5.0);
            Vec pp = project(set, p);
            Vec qq = project(set, q);
            CHECK(set.contains(pp, 1e-12));
            CHECK(dist(project(set, pp), pp) <= 1e-12);
            CHECK(dist(pp, qq) <= dist(p, q) + 1e-12);
        }
    }
}

TEST_CASE("quadratic evaluation and gradients") {
    FunctionModel iso = FunctionModel::isotropic_quadratic(1.0, {0.0, 0.0});
    CHECK(eval(iso, {3.0, 4.0}) == doctest::Approx(12.5));
    CHECK(grad(iso, {3.0, 4.0}) == Vec{3.0, 4.0});
    CHECK(eval(iso, {0.0, 0.0}) == 0.0);

    FunctionModel diag = FunctionModel::diagonal_quadratic({1.0, 4.0}, {0.0, 0.0});
    CHECK(eval(diag, {1.0, 1.0}) == doctest::Approx(2.5));
    CHECK(grad(diag, {1.0, 1.0}) == Vec{1.0, 4.0});
    CHECK(diag.mu == 1.0);
    CHECK(diag.ell == 4.0);

    CHECK_THROWS_AS(FunctionModel::isotropic_quadratic(0.0, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(FunctionModel::isotropic_quadratic(-2.0, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(FunctionModel::diagonal_quadratic({1.0, 0.0}, {0.0, 0.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(FunctionModel::diagonal_quadratic({1.0}, {0.0, 0.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(FunctionModel::external_oracle(nullptr, nullptr, 1.0, 2.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(FunctionModel::external_oracle([](const Vec&) { return 0.0; },
                                                   [](const Vec& x) { return x; }, 0.0, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(FunctionModel::external_oracle([](const Vec&) { return 0.0; },
                                                   [](const Vec& x) { return x; }, 2.0, 1.0),
                    std::invalid_argument);
}

TEST_CASE("gradients match central finite differences") {
    Rng rng(5);
    FunctionModel models[] = {
        FunctionModel::isotropic_quadratic(1.7, {0.3, -0.8, 1.1}),
        FunctionModel::diagonal_quadratic({0.4, 2.0, 3.1}, {-1.0, 0.5, 0.0}),
        wrap_as_oracle(FunctionModel::diagonal_quadratic({0.9, 1.5, 2.5}, {0.2, 0.1, -0.4})),
    };
    const double h = 1e-6;
    for (const FunctionModel& f : models) {
        for (int trial = 0; trial < 50; ++trial) {
            Vec x = random_point(rng, 3, 3.0);
            Vec g = grad(f, x);
            for (int i = 0; i < 3; ++i) {
                Vec xp = x, xm = x;
                xp[i] += h;
                xm[i] -= h;
                double fd = (eval(f, xp) - eval(f, xm)) / (2.0 * h);
                CHECK(std::abs(g[i] - fd) <= 1e-6 * std::max(1.0, std::abs(g[i])));
            }
        }
    }
}

TEST_CASE("strong convexity and smoothness sandwich the growth") {
    Rng rng(23);
    std::pair<FunctionModel, Vec> models[] = {
        {FunctionModel::isotropic_quadratic(0.7, {1.0, -2.0}), {1.0, -2.0}},
        {FunctionModel::diagonal_quadratic({0.5, 3.0}, {0.0, 1.0}), {0.0, 1.0}},
        {wrap_as_oracle(FunctionModel::diagonal_quadratic({1.0, 2.0}, {-0.5, 0.5})),
         {-0.5, 0.5}},
    };
    for (const auto& [f, star] : models) {
        double fstar = eval(f, star);
        for (int trial = 0; trial < 100; ++trial) {
            Vec x = random_point(rng, 2, 4.0);
            double gap = eval(f, x) - fstar;
            double d2 = dist_sq(x, star);
            CHECK(gap >= 0.5 * f.mu * d2 - 1e-10);
            CHECK(gap <= 0.5 * f.ell * d2 + 1e-10);
        }
    }
}

TEST_CASE("constrained minimizers") {
    FeasibleSet ball = FeasibleSet::ball({0.0, 0.0}, 1.0);
    FeasibleSet box = FeasibleSet::box({-1.0, -1.0}, {1.0, 1.0});

    MinimizerInfo inside = minimizer(FunctionModel::isotropic_quadratic(2.0, {0.2, 0.3}), ball);
    CHECK(inside.point == Vec{0.2, 0.3});
    CHECK(inside.interior);

    MinimizerInfo edge = minimizer(FunctionModel::isotropic_quadratic(1.0, {2.0, 0.0}), ball);
    CHECK(edge.point[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(edge.point[1] == doctest::Approx(0.0));
    CHECK_FALSE(edge.interior);

    FunctionModel diag = FunctionModel::diagonal_quadratic({1.0, 4.0}, {2.0, 2.0});
    MinimizerInfo clamped = minimizer(diag, box);
    CHECK(clamped.point == Vec{1.0, 1.0});
    CHECK_FALSE(clamped.interior);
    // coordinate-wise clamping beats every grid point
    double best = eval(diag, clamped.point);
    for (double x = -1.0; x <= 1.0001; x += 0.125)
        for (double y = -1.0; y <= 1.0001; y += 0.125)
            CHECK(best <= eval(diag, {x, y}) + 1e-12);

    CHECK_THROWS_AS(minimizer(diag, FeasibleSet::ball({0.0, 0.0}, 1.0)), unsupported_operation);
    CHECK_NOTHROW(minimizer(FunctionModel::diagonal_quadratic({1.0, 4.0}, {0.1, 0.1}), ball));

    FunctionModel oracle = wrap_as_oracle(FunctionModel::isotropic_quadratic(1.0, {0.0, 0.0}));
    CHECK_THROWS_AS(minimizer(oracle, box), unsupported_operation);

    FunctionModel supplied = FunctionModel::external_oracle(
        [](const Vec& x) { return 0.5 * norm_sq(x); }, [](const Vec& x) { return x; }, 1.0, 1.0,
        Vec{0.25, 0.0});
    MinimizerInfo got = minimizer(supplied, box);
    CHECK(got.point == Vec{0.25, 0.0});
    CHECK(got.interior);

    FunctionModel supplied_outside = FunctionModel::external_oracle(
        [](const Vec& x) { return 0.5 * norm_sq(x); }, [](const Vec& x) { return x; }, 1.0, 1.0,
        Vec{5.0, 0.0});
    CHECK_THROWS_AS(minimizer(supplied_outside, box), std::invalid_argument);
}

TEST_CASE("instance assembly certifies moduli and validates shapes") {
    std::vector<FunctionModel> fs;
    fs.push_back(FunctionModel::isotropic_quadratic(0.5, {1.0}));
    fs.push_back(FunctionModel::isotropic_quadratic(2.0, {0.0}));
    fs.push_back(FunctionModel::diagonal_quadratic({1.5}, {0.5}));
    Instance inst = make_instance(FeasibleSet::all_space(1), {0.0}, fs,
                                  Switching::Quadratic, "tiny");
    CHECK(inst.T == 3);
    CHECK(inst.d == 1);
    CHECK(inst.mu == 0.5);
    CHECK(inst.ell == 2.0);
    CHECK(inst.id == "tiny");

    CHECK_THROWS_AS(make_instance(FeasibleSet::all_space(1), {0.0}, {}, Switching::Quadratic),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_instance(FeasibleSet::all_space(2), {0.0}, fs, Switching::Quadratic),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        make_instance(FeasibleSet::box({-1.0}, {1.0}), {2.0}, fs, Switching::Quadratic),
        std::invalid_argument);
    std::vector<FunctionModel> mixed = fs;
    mixed.push_back(FunctionModel::isotropic_quadratic(1.0, {0.0, 0.0}));
    CHECK_THROWS_AS(make_instance(FeasibleSet::all_space(1), {0.0}, mixed, Switching::Quadratic),
                    std::invalid_argument);
}

TEST_CASE("information gate serves only the previous round") {
    std::vector<FunctionModel> fs;
    fs.push_back(FunctionModel::isotropic_quadratic(1.0, {1.0}));
    fs.push_back(FunctionModel::isotropic_quadratic(2.0, {0.0}));
    fs.push_back(FunctionModel::isotropic_quadratic(1.0, {3.0}));
    Instance inst = make_instance(FeasibleSet::all_space(1), {0.0}, fs, Switching::Quadratic);

    InfoGate gate;
    Vec g = gated_grad(gate, inst, 2, {0.0});
    CHECK(g == Vec{-1.0});
    CHECK(gate.log.size() == 1);
    CHECK(gate.log[0].round == 1);

    CHECK_THROWS_AS(gated_grad_for(gate, inst, 2, 2, {0.0}), information_violation);
    CHECK_THROWS_AS(gated_grad_for(gate, inst, 3, 1, {0.0}), information_violation);

    g = gated_grad(gate, inst, 3, {1.0});
    CHECK(g == Vec{2.0});

    // gate has advanced; earlier rounds are closed
    CHECK_THROWS_AS(gated_grad(gate, inst, 2, {0.0}), information_violation);
    CHECK_THROWS_AS(gated_grad(gate, inst, 1, {0.0}), information_violation);
    CHECK_THROWS_AS(gated_grad(gate, inst, 4, {0.0}), information_violation);

    for (size_t i = 1; i < gate.log.size(); ++i)
        CHECK(gate.log[i - 1].round <= gate.log[i].round);
}

TEST_CASE("gate rejects the first round and out-of-horizon requests") {
    Instance inst = make_instance(
        FeasibleSet::all_space(1), {0.0},
        {FunctionModel::isotropic_quadratic(1.0, {1.0}),
         FunctionModel::isotropic_quadratic(1.0, {0.0})},
        Switching::Quadratic);
    InfoGate gate;
    CHECK_THROWS_AS(gated_grad(gate, inst, 1, {0.0}), information_violation);
    CHECK_THROWS_AS(gated_grad(gate, inst, 0, {0.0}), information_violation);
    CHECK_THROWS_AS(gated_grad(gate, inst, 3, {0.0}), information_violation);
    CHECK(gate.log.empty());
}

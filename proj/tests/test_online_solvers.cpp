#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ocoswitch/adversary.hpp"
#include "ocoswitch/harness.hpp"
#include "ocoswitch/online_solvers.hpp"

using namespace oco;

namespace {

Instance two_round(double mu, double ell, double theta) {
    return make_instance(FeasibleSet::all_space(1), {0.0},
                         {FunctionModel::isotropic_quadratic(mu, {theta}),
                          FunctionModel::isotropic_quadratic(ell, {0.0})},
                         Switching::Quadratic);
}

}  // namespace

TEST_CASE("inner-step budgets") {
    CHECK(compute_k_gd(1.0, 1.0) == 2);
    CHECK(compute_k_gd(1.0, 2.0) == 3);
    CHECK(compute_k_gd(0.1, 1.0) == 8);
    CHECK(compute_k_nag(1.0, 1.0) == 3);
    CHECK(compute_k_nag(1.0, 4.0) == 6);
    CHECK(compute_k_nag(1.0, 100.0) == 61);

    CHECK_THROWS_AS(compute_k_gd(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(compute_k_gd(2.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(compute_k_nag(-1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(compute_k_nag(2.0, 1.0), std::invalid_argument);
}

TEST_CASE("effective_k resolves explicit and derived budgets") {
    Instance inst = two_round(1.0, 2.0, 1.0);
    CHECK(effective_k(inst, {SolverKind::Omgd, 5}) == 5);
    CHECK(effective_k(inst, {SolverKind::Omgd}) == 3);
    CHECK(effective_k(inst, {SolverKind::OmgdNag}) == compute_k_nag(1.0, 2.0));
}

TEST_CASE("multi-step descent replays the worked two-round example") {
    Instance inst = gen_omgd_lb(1.0, 2.0, 1.0, 1);
    SolverSpec spec{SolverKind::Omgd, 3};
    Trajectory traj = run_omgd(inst, spec);

    REQUIRE(traj.actions.size() == 2);
    CHECK(traj.actions[0] == Vec{0.0});  // first action is the start point
    CHECK(traj.actions[1][0] == 0.875);  // 3 halving steps toward 1
    CHECK(traj.total() == doctest::Approx(1.6484375).epsilon(1e-15));
}

TEST_CASE("equal moduli land on the previous minimizer in one inner step") {
    Instance inst = two_round(2.0, 2.0, 0.7);
    Trajectory traj = run_omgd(inst, {SolverKind::Omgd});
    CHECK(traj.actions[1][0] == 0.7);
}

TEST_CASE("first action always equals the start point") {
    for (const Instance& inst : {gen_omgd_lb(0.5, 5.0, 2.0, 3), gen_slow(SlowMode::Mu, 2.0, 6)}) {
        for (SolverKind kind : {SolverKind::Omgd, SolverKind::ChaseMinimizer, SolverKind::StayPut}) {
            Trajectory traj = run_solver(inst, {kind});
            CHECK(traj.actions[0] == inst.x0);
        }
    }
    Trajectory nag = run_nag(gen_omgd_lb(0.5, 5.0, 2.0, 3), {SolverKind::OmgdNag});
    CHECK(nag.actions[0] == Vec(3, 0.0));
}

TEST_CASE("per-round quarter contraction toward the previous minimizer") {
    CorpusParams p;
    p.count = 30;
    p.seed = 31;
    for (const Instance& inst : random_corpus(p)) {
        for (SolverSpec spec : {SolverSpec{SolverKind::Omgd}, SolverSpec{SolverKind::OmgdNag}}) {
            Trajectory traj = run_solver(inst, spec);
            for (int t = 2; t <= inst.T; ++t) {
                Vec star = minimizer(inst.functions[t - 2], inst.set).point;
                double after = dist_sq(traj.actions[t - 1], star);
                double before = dist_sq(traj.actions[t - 2], star);
                CHECK(after <= 0.25 * before + kContractionSlack);
            }
        }
    }
}

TEST_CASE("single projected step contracts at the advertised rate") {
    Rng rng(311);
    FeasibleSet sets[] = {
        FeasibleSet::all_space(2),
        FeasibleSet::box({-1.0, -1.0}, {1.0, 1.0}),
        FeasibleSet::ball({0.0, 0.0}, 1.25),
    };
    for (const FeasibleSet& set : sets) {
        for (int trial = 0; trial < 200; ++trial) {
            double a = rng.uniform(0.2, 4.0);
            Vec c{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
            FunctionModel f = FunctionModel::isotropic_quadratic(a, c);
            Vec star = minimizer(f, set).point;
            Vec u = project(set, Vec{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)});
            for (double eta : {1.0 / a, 0.5 / a}) {
                Vec v = project(set, sub(u, scale(eta, grad(f, u))));
                double rate = 1.0 - 2.0 * a / (1.0 / eta + a);
                CHECK(dist_sq(v, star) <= rate * dist_sq(u, star) + kContractionSlack);
            }
        }
    }
}

TEST_CASE("accelerated inner loop with condition number one is plain descent") {
    Instance inst = make_instance(FeasibleSet::all_space(2), {0.0, 0.0},
                                  {FunctionModel::isotropic_quadratic(1.3, {1.0, -2.0}),
                                   FunctionModel::isotropic_quadratic(1.3, {0.5, 0.5}),
                                   FunctionModel::isotropic_quadratic(1.3, {-1.0, 0.0})},
                                  Switching::Quadratic);
    Trajectory nag = run_nag(inst, {SolverKind::OmgdNag, 2});
    Trajectory gd = run_omgd(inst, {SolverKind::Omgd, 3});  // one extra: the loop runs k = 0..K
    REQUIRE(nag.actions.size() == gd.actions.size());
    for (size_t t = 0; t < nag.actions.size(); ++t) CHECK(nag.actions[t] == gd.actions[t]);

    Trajectory printed = run_nag(inst, {SolverKind::OmgdNag, 2, 0.0, NagForm::Printed});
    for (size_t t = 0; t < nag.actions.size(); ++t) CHECK(printed.actions[t] == nag.actions[t]);
}

TEST_CASE("accelerated variants differ once momentum is active") {
    Instance inst = gen_omgd_lb(1.0, 9.0, 1.0, 1);
    Trajectory standard = run_nag(inst, {SolverKind::OmgdNag, 4});
    Trajectory printed = run_nag(inst, {SolverKind::OmgdNag, 4, 0.0, NagForm::Printed});
    CHECK(standard.actions[1][0] != printed.actions[1][0]);
}

TEST_CASE("accelerated loop fixes points with zero gradient") {
    Instance inst = make_instance(FeasibleSet::all_space(1), {0.0},
                                  {FunctionModel::isotropic_quadratic(2.0, {0.0}),
                                   FunctionModel::isotropic_quadratic(4.0, {0.0})},
                                  Switching::Quadratic);
    Trajectory traj = run_nag(inst, {SolverKind::OmgdNag});
    CHECK(traj.actions[1][0] == 0.0);
    CHECK(traj.total() == 0.0);
}

TEST_CASE("accelerated loop refuses constrained sets") {
    Instance inst = make_instance(FeasibleSet::box({-1.0}, {1.0}), {0.0},
                                  {FunctionModel::isotropic_quadratic(1.0, {0.5}),
                                   FunctionModel::isotropic_quadratic(1.0, {0.0})},
                                  Switching::Quadratic);
    CHECK_THROWS_AS(run_nag(inst, {SolverKind::OmgdNag}), unsupported_operation);
}

TEST_CASE("baselines") {
    Instance inst = gen_slow(SlowMode::Mu, 2.0, 10);

    Trajectory chase = run_baseline(inst, {SolverKind::ChaseMinimizer});
    CHECK(chase.actions[0][0] == 0.0);
    for (int t = 2; t <= 10; ++t) CHECK(chase.actions[t - 1][0] == 1.0);
    CHECK(chase.total() == doctest::Approx(1.5));

    Trajectory stay = run_baseline(inst, {SolverKind::StayPut});
    CHECK(stay.switching_total() == 0.0);
    CHECK(stay.total() == doctest::Approx(10.0));
}

TEST_CASE("runs are deterministic") {
    Instance inst = gen_omgd_lb(0.3, 2.7, 1.5, 4);
    for (SolverSpec spec : {SolverSpec{SolverKind::Omgd}, SolverSpec{SolverKind::OmgdNag}}) {
        Trajectory first = run_solver(inst, spec);
        Trajectory second = run_solver(inst, spec);
        REQUIRE(first.actions.size() == second.actions.size());
        for (size_t t = 0; t < first.actions.size(); ++t)
            CHECK(first.actions[t] == second.actions[t]);
    }
}

TEST_CASE("inner step sizes above 1/ell are rejected") {
    Instance inst = two_round(1.0, 2.0, 1.0);
    CHECK_THROWS_AS(run_omgd(inst, {SolverKind::Omgd, 3, 0.6}), std::invalid_argument);
    CHECK_NOTHROW(run_omgd(inst, {SolverKind::Omgd, 3, 0.5}));
    CHECK_NOTHROW(run_omgd(inst, {SolverKind::Omgd, 3, 0.25}));
}

TEST_CASE("trajectory finalization recomputes and validates") {
    Instance inst = two_round(1.0, 2.0, 1.0);
    Trajectory traj = finalize_trajectory(inst, {{0.5}, {0.25}});
    CHECK(traj.hitting[0] == doctest::Approx(0.125));
    CHECK(traj.switching[0] == doctest::Approx(0.125));
    CHECK(traj.hitting[1] == doctest::Approx(0.0625));
    CHECK(traj.switching[1] == doctest::Approx(0.03125));
    CHECK(traj.total() == doctest::Approx(0.34375));

    CHECK_THROWS_AS(finalize_trajectory(inst, {{0.5}}), std::invalid_argument);

    Instance boxed = make_instance(FeasibleSet::box({-1.0}, {1.0}), {0.0},
                                   {FunctionModel::isotropic_quadratic(1.0, {0.5}),
                                    FunctionModel::isotropic_quadratic(1.0, {0.0})},
                                   Switching::Quadratic);
    CHECK_THROWS_AS(finalize_trajectory(boxed, {{0.0}, {2.0}}), std::invalid_argument);
}

TEST_CASE("solver names") {
    CHECK(solver_name({SolverKind::Omgd}) == "omgd");
    CHECK(solver_name({SolverKind::OmgdNag}) == "omgd-nag");
    CHECK(solver_name({SolverKind::OmgdNag, 0, 0.0, NagForm::Printed}) == "omgd-nag-printed");
    CHECK(solver_name({SolverKind::ChaseMinimizer}) == "chase-minimizer");
    CHECK(solver_name({SolverKind::StayPut}) == "stay-put");
}

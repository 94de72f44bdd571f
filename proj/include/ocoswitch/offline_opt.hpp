#pragma once

#include <string>

#include "ocoswitch/online_solvers.hpp"

namespace oco {

enum class OptMethod { Tridiagonal, Subgradient, BruteForce, ClosedFormT2 };

std::string opt_method_name(OptMethod m);

// Clairvoyant-optimum result. residual is a stationarity estimate for the
// exact/numerical solvers and the grid spacing for brute force.
struct OptSolution {
  Trajectory trajectory;
  double objective = 0.0;
  OptMethod method = OptMethod::Tridiagonal;
  double residual = 0.0;
};

// Exact optimum for quadratic hitting + quadratic switching: one symmetric
// positive-definite tridiagonal solve per coordinate. Heterogeneous
// per-round curvatures are accepted; the solution is checked against the
// feasible set and a violation raises constrained_case_unsupported.
OptSolution solve_opt_quadratic(const Instance& inst);

struct SubgradientOptions {
  int iterations = 20000;
  int polish_cycles = 50;
  double residual_tol = 1e-6;
  double c0 = 0.0;  // base step; 0 derives it from the minimizer path length
};

// Projected subgradient descent on the stacked trajectory for linear
// switching, with best-iterate tracking and a cyclic per-round line-search
// polish. A residual above residual_tol is reported, not fatal.
OptSolution solve_opt_linear(const Instance& inst,
                             const SubgradientOptions& opts = {});

// Exhaustive search over per-round grids spanning [lo, hi] with
// points_per_axis values per coordinate. Grid points outside the feasible
// set are skipped. Candidate count is capped by brute_force_budget().
OptSolution brute_force_opt(const Instance& inst, const Vec& lo, const Vec& hi,
                            int points_per_axis);

// Displayed 2x2 closed form: uniform curvature mu, T=2, x0=0, quadratic
// switching, applied per coordinate.
OptSolution closed_form_opt_T2(double mu, const Vec& x1star, const Vec& x2star);

// Default 1e8; override with the OCO_SWITCH_BUDGET environment variable.
double brute_force_budget();

}  // namespace oco

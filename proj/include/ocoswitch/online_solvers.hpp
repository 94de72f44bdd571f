#pragma once

#include <string>
#include <vector>

#include "ocoswitch/problem_model.hpp"

namespace oco {

// Actions with their recomputable per-round costs. switching[0] is measured
// against the instance start point.
struct Trajectory {
  std::vector<Vec> actions;
  std::vector<double> hitting;
  std::vector<double> switching;

  double hitting_total() const;
  double switching_total() const;
  double total() const;
};

// Fill per-round costs for a fixed action sequence and validate feasibility.
Trajectory finalize_trajectory(const Instance& inst, std::vector<Vec> actions);

enum class SolverKind { Omgd, OmgdNag, ChaseMinimizer, StayPut };

// The momentum combination printed in some descriptions of the accelerated
// scheme averages the two gradient iterates instead of extrapolating; both
// variants are available, extrapolation is the default.
enum class NagForm { Standard, Printed };

struct SolverSpec {
  SolverKind kind = SolverKind::Omgd;
  int k = 0;          // inner steps per round; 0 derives from (mu, ell)
  double step = 0.0;  // inner step size; 0 means 1/ell
  NagForm nag_form = NagForm::Standard;
};

std::string solver_name(const SolverSpec& spec);

// Inner gradient-step budget guaranteeing the per-round 1/4 contraction:
// ceil(((ell + mu) / (2 mu)) * ln 4).
int compute_k_gd(double mu, double ell);

// Accelerated counterpart: ceil(sqrt(Q) * ln(4 (Q + 1))) with Q = ell / mu.
int compute_k_nag(double mu, double ell);

// Multiple projected gradient descent on the previous round's function,
// warm-started from the previous action. x_1 = x_0.
Trajectory run_omgd(const Instance& inst, const SolverSpec& spec);

// Accelerated inner loop; requires an unconstrained feasible set.
Trajectory run_nag(const Instance& inst, const SolverSpec& spec);

// chase-minimizer lands exactly on the previous round's minimizer;
// stay-put never moves.
Trajectory run_baseline(const Instance& inst, const SolverSpec& spec);

Trajectory run_solver(const Instance& inst, const SolverSpec& spec);

// Effective inner-step count a spec resolves to on an instance.
int effective_k(const Instance& inst, const SolverSpec& spec);

}  // namespace oco

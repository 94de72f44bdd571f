#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ocoswitch/problem_model.hpp"

namespace oco {

// Summary statistics of the per-round minimizer sequence x_1*, ..., x_T*.
// Path sums start at t=2; the first minimizer's norm is carried separately.
struct PathStats {
  double pT = 0.0;       // sum of ||x_t* - x_{t-1}*||
  double p2T = 0.0;      // sum of ||x_t* - x_{t-1}*||^2
  double x1norm = 0.0;   // ||x_1*||
  double sumFstar = 0.0; // sum of f_t(x_t*)
  double gradSq = 0.0;   // sum of ||grad f_t(x_t*)||^2 (0 when all interior)
};

PathStats path_stats(const Instance& inst);

enum class BoundKind {
  UpperOnCost,
  LowerOnOpt,
  UpperOnCr,
  LowerOnCr,
  UpperOnRegret,
  LowerOnRegret,
};

std::string bound_kind_name(BoundKind k);

struct BoundReport {
  std::string name;
  double value = 0.0;
  BoundKind kind = BoundKind::UpperOnCost;
  std::map<std::string, double> inputs;
};

// Total-cost guarantee of the multi-step solver, for any alpha > 0:
//   quadratic: sumFstar + gradSq/(2a) + (ell + a + 5)(x1norm^2 + 2 p2T)
//   linear:    sumFstar + gradSq/(2a) + (ell + a)(x1norm^2 + 2 p2T)
//              + 3 x1norm + 3 pT
// alpha <= 0 is accepted only when gradSq = 0 (the term vanishes).
BoundReport omgd_total_cost_bound(const PathStats& ps, double mu, double ell,
                                  double alpha, Switching switching);

// Minimizer of the cost bound over alpha: sqrt(gradSq / (2(x1norm^2 + 2 p2T))).
// Returns 0 when gradSq = 0 and +inf when the path term vanishes.
double optimal_alpha(const PathStats& ps);

// Closed-over-alpha display for minimizers pinned to the boundary with
// gradient energy gamma = gradSq / p2T:
//   sumFstar + (2 ell + 2 sqrt(gamma) + 10)(x1norm^2 + p2T)
BoundReport gamma_boundary_bound(const PathStats& ps, double mu, double ell);

// Clairvoyant-optimum floor:
//   quadratic: sumFstar + mu/(2(mu+4)) (p2T + x1norm^2)
//   linear:    sumFstar + 2 mu (p2T + x1norm^2) / (mu (pT + x1norm) + 8)
BoundReport opt_lower_bound(const PathStats& ps, double mu, Switching switching);

// Cost of simply playing the minimizer sequence (feasible, so an upper
// bound on the optimum).
BoundReport opt_upper_minseq(const PathStats& ps, Switching switching);

// Competitive-ratio bounds, quadratic and linear families. Requires
// p2T + x1norm^2 > 0 (the linear formulas divide by it).
std::vector<BoundReport> cr_bounds(const PathStats& ps, double mu, double ell);

// Multiplier of the D V_T regret floor: mu^3 (1-rho)^2 / (32 (mu+1)^2) with
// rho = (sqrt(mu+4) - sqrt(mu)) / (sqrt(mu+4) + sqrt(mu)).
double zeta_constant(double mu);

// Dynamic-regret bounds. With no request list, emits every formula whose
// inputs are present; with a request list, missing inputs raise
// invalid_argument. Names: regret-upper, regret-upper-diameter,
// regret-lower-zeta, regret-upper-vt2.
std::vector<BoundReport> regret_bounds(const PathStats& ps, double mu, double ell,
                                       double G, std::optional<double> D = {},
                                       std::optional<double> V_T = {},
                                       const std::vector<std::string>& requested = {});

}  // namespace oco

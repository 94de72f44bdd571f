#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ocoswitch/core.hpp"

namespace oco {

// Closed convex feasible set containing the origin.
struct FeasibleSet {
  enum class Kind { AllSpace, Box, Ball };

  Kind kind = Kind::AllSpace;
  int dim = 0;
  Vec lower, upper;  // box bounds
  Vec center;        // ball center
  double radius = 0.0;

  static FeasibleSet all_space(int d);
  static FeasibleSet box(Vec lo, Vec hi);
  static FeasibleSet ball(Vec center, double radius);

  bool contains(const Vec& p, double tol = 0.0) const;

  // Distance from p to the boundary; +inf for the whole space, negative when
  // p is outside. A point is treated as interior when this exceeds
  // kInteriorMargin.
  double interior_margin(const Vec& p) const;
};

// Euclidean projection onto the set.
Vec project(const FeasibleSet& set, const Vec& p);

/// Hitting-cost model with certified strong-convexity/smoothness moduli.
///
/// isotropic-quadratic: f(x) = (a/2)||x - c||^2          (mu = ell = a)
/// diagonal-quadratic:  f(x) = sum_i (a_i/2)(x_i - c_i)^2 (mu = min a, ell = max a)
/// external-oracle:     callbacks plus declared (mu, ell)
struct FunctionModel {
  enum class Kind { IsotropicQuadratic, DiagonalQuadratic, ExternalOracle };

  Kind kind = Kind::IsotropicQuadratic;
  double a = 0.0;
  Vec c;
  Vec a_diag;
  std::function<double(const Vec&)> oracle_eval;
  std::function<Vec(const Vec&)> oracle_grad;
  std::optional<Vec> oracle_minimizer;  // caller-supplied, oracle kind only
  double mu = 0.0;
  double ell = 0.0;

  static FunctionModel isotropic_quadratic(double a, Vec c);
  static FunctionModel diagonal_quadratic(Vec a, Vec c);
  static FunctionModel external_oracle(std::function<double(const Vec&)> eval,
                                       std::function<Vec(const Vec&)> grad,
                                       double mu, double ell,
                                       std::optional<Vec> minimizer = {});
};

double eval(const FunctionModel& f, const Vec& x);
Vec grad(const FunctionModel& f, const Vec& x);

struct MinimizerInfo {
  Vec point;
  bool interior = false;
};

// Constrained minimizer where analytically available: quadratics over the
// whole space land on c, isotropic quadratics on project(set, c), separable
// diagonal quadratics clamp onto boxes. Everything else must be supplied with
// the oracle or is reported as unsupported.
MinimizerInfo minimizer(const FunctionModel& f, const FeasibleSet& set);

enum class Switching { Quadratic, Linear };

// One problem run: horizon, feasible set, start point, per-round hitting
// costs and the movement-penalty shape.
struct Instance {
  int T = 0;
  int d = 0;
  FeasibleSet set;
  Vec x0;
  std::vector<FunctionModel> functions;
  Switching switching = Switching::Quadratic;
  double mu = 0.0;   // min modulus over rounds
  double ell = 0.0;  // max modulus over rounds
  std::string id;
};

Instance make_instance(FeasibleSet set, Vec x0, std::vector<FunctionModel> functions,
                       Switching switching, std::string id = {});

// Gatekeeper for the delayed-information setting: while acting in round t,
// only gradients of the previous round's function may be served.
struct InfoGate {
  int current_round = 0;  // 0 until the first request
  struct Query {
    int round;  // function index served
    Vec point;
  };
  std::vector<Query> log;
};

// Serve grad(f_{t-1}, x) during round t and append to the query log.
// Throws information_violation for t < 2 or when the gate has already
// advanced past t.
Vec gated_grad(InfoGate& gate, const Instance& inst, int t, const Vec& x);

// Enforcement point: request grad(f_which, x) during round t. Any which
// other than t-1 is an information violation.
Vec gated_grad_for(InfoGate& gate, const Instance& inst, int t, int which, const Vec& x);

}  // namespace oco

#pragma once

#include <string>

#include "ocoswitch/problem_model.hpp"

namespace oco {

// Hard-instance generators. Every recipe starts at x0 = 0.

// Two rounds, quadratic switching: f1 = (mu/2)||x - theta e1||^2,
// f2 = (ell/2)||x||^2. Forces the multi-step solver to pay for chasing a
// target that immediately moves back.
Instance gen_omgd_lb(double mu, double ell, double theta, int d);

enum class SlowMode { Mu, Ell };

// Constant-target family over horizon T (d = 1, quadratic switching).
// Mu mode fixes f_t(x) = (x - 1)^2; Ell mode uses f_t(x) = (value/2)(x - 1)^2.
Instance gen_slow(SlowMode mode, double value, int T);

// Single round f1(x) = (ell/2)(x - 1)^2: any solver acting on past
// information is pinned to x1 = 0 and pays ell/2.
Instance gen_preliminary(double ell);

// Tprime flat rounds (mu/2)x^2 followed by one steep round (ell/2)(x - 1)^2;
// horizon T = Tprime + 1.
Instance gen_modified(double mu, double ell, int Tprime);

// Two rounds, linear switching: f1 = (mu/2)(x - theta)^2, f2 = (mu/2)x^2,
// with theta restricted to (1/mu, (sqrt(129) - 9)/(2 mu)].
Instance gen_linear_lb(double mu, double theta);

// Closed upper end of the admissible theta interval for gen_linear_lb.
double linear_lb_theta_max(double mu);

// Recipe parameters addressable by name from the CLI.
struct AdversaryParams {
  double mu = 1.0;
  double ell = 1.0;
  double theta = 1.0;
  int Tprime = 10;
  int T = 10;
  int d = 1;
};

// Names: omgd-lb, slow-mu, slow-L, preliminary-L, modified-L-sqrtmu,
// linear-lb. Unknown names raise invalid_argument.
Instance make_adversary(const std::string& name, const AdversaryParams& p);

}  // namespace oco

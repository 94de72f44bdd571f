#include "ocoswitch/online_solvers.hpp"

#include <cmath>

namespace oco {

double Trajectory::hitting_total() const {
  double s = 0.0;
  for (double v : hitting) s += v;
  return s;
}

double Trajectory::switching_total() const {
  double s = 0.0;
  for (double v : switching) s += v;
  return s;
}

double Trajectory::total() const { return hitting_total() + switching_total(); }

Trajectory finalize_trajectory(const Instance& inst, std::vector<Vec> actions) {
  if (static_cast<int>(actions.size()) != inst.T)
    throw std::invalid_argument("finalize_trajectory: action count != horizon");
  Trajectory traj;
  traj.hitting.resize(inst.T);
  traj.switching.resize(inst.T);
  const Vec* prev = &inst.x0;
  for (int t = 0; t < inst.T; ++t) {
    if (!inst.set.contains(actions[t], kInteriorMargin))
      throw std::invalid_argument("finalize_trajectory: action outside the feasible set");
    traj.hitting[t] = eval(inst.functions[t], actions[t]);
    double d = dist(actions[t], *prev);
    traj.switching[t] = inst.switching == Switching::Quadratic ? 0.5 * d * d : d;
    prev = &actions[t];
  }
  traj.actions = std::move(actions);
  return traj;
}

std::string solver_name(const SolverSpec& spec) {
  switch (spec.kind) {
    case SolverKind::Omgd:
      return "omgd";
    case SolverKind::OmgdNag:
      return spec.nag_form == NagForm::Standard ? "omgd-nag" : "omgd-nag-printed";
    case SolverKind::ChaseMinimizer:
      return "chase-minimizer";
    case SolverKind::StayPut:
      return "stay-put";
  }
  return "unknown";
}

int compute_k_gd(double mu, double ell) {
  if (!(mu > 0.0)) throw std::invalid_argument("compute_k_gd: mu must be positive");
  if (!(mu <= ell)) throw std::invalid_argument("compute_k_gd: need mu <= ell");
  return static_cast<int>(std::ceil((ell + mu) / (2.0 * mu) * std::log(4.0)));
}

int compute_k_nag(double mu, double ell) {
  if (!(mu > 0.0)) throw std::invalid_argument("compute_k_nag: mu must be positive");
  if (!(mu <= ell)) throw std::invalid_argument("compute_k_nag: need mu <= ell");
  double q = ell / mu;
  return static_cast<int>(std::ceil(std::sqrt(q) * std::log(4.0 * (q + 1.0))));
}

int effective_k(const Instance& inst, const SolverSpec& spec) {
  if (spec.k > 0) return spec.k;
  if (spec.kind == SolverKind::OmgdNag) return compute_k_nag(inst.mu, inst.ell);
  return compute_k_gd(inst.mu, inst.ell);
}

namespace {

double effective_step(const Instance& inst, const SolverSpec& spec) {
  double eta = spec.step > 0.0 ? spec.step : 1.0 / inst.ell;
  if (eta > 1.0 / inst.ell * (1.0 + 1e-12))
    throw std::invalid_argument("solver: inner step must satisfy step <= 1/ell");
  return eta;
}

}  // namespace

Trajectory run_omgd(const Instance& inst, const SolverSpec& spec) {
  if (spec.kind != SolverKind::Omgd)
    throw std::invalid_argument("run_omgd: spec kind mismatch");
  int K = effective_k(inst, spec);
  if (K < 1) throw std::invalid_argument("run_omgd: K must be >= 1");
  double eta = effective_step(inst, spec);

  std::vector<Vec> actions(inst.T);
  actions[0] = inst.x0;
  InfoGate gate;
  for (int t = 2; t <= inst.T; ++t) {
    Vec z = actions[t - 2];
    for (int k = 0; k < K; ++k) {
      Vec g = gated_grad(gate, inst, t, z);
      z = project(inst.set, sub(z, scale(eta, g)));
    }
    actions[t - 1] = std::move(z);
  }
  return finalize_trajectory(inst, std::move(actions));
}

Trajectory run_nag(const Instance& inst, const SolverSpec& spec) {
  if (spec.kind != SolverKind::OmgdNag)
    throw std::invalid_argument("run_nag: spec kind mismatch");
  if (inst.set.kind != FeasibleSet::Kind::AllSpace)
    throw unsupported_operation("run_nag: requires an unconstrained feasible set");
  int K = effective_k(inst, spec);
  if (K < 1) throw std::invalid_argument("run_nag: K must be >= 1");
  double eta = effective_step(inst, spec);
  double q = inst.ell / inst.mu;
  double beta = (std::sqrt(q) - 1.0) / (std::sqrt(q) + 1.0);

  std::vector<Vec> actions(inst.T);
  actions[0] = inst.x0;
  InfoGate gate;
  for (int t = 2; t <= inst.T; ++t) {
    Vec y = actions[t - 2];   // y_0
    Vec x = actions[t - 2];   // x_0
    for (int k = 0; k <= K; ++k) {
      Vec y_next = sub(x, scale(eta, gated_grad(gate, inst, t, x)));
      if (spec.nag_form == NagForm::Standard) {
        // y_{k+1} + beta (y_{k+1} - y_k)
        x = add(y_next, scale(beta, sub(y_next, y)));
      } else {
        // (1 - beta) y_{k+1} + beta y_k
        x = add(scale(1.0 - beta, y_next), scale(beta, y));
      }
      y = std::move(y_next);
    }
    actions[t - 1] = std::move(y);  // y_{K+1}
  }
  return finalize_trajectory(inst, std::move(actions));
}

Trajectory run_baseline(const Instance& inst, const SolverSpec& spec) {
  std::vector<Vec> actions(inst.T);
  actions[0] = inst.x0;
  if (spec.kind == SolverKind::ChaseMinimizer) {
    for (int t = 2; t <= inst.T; ++t)
      actions[t - 1] = minimizer(inst.functions[t - 2], inst.set).point;
  } else if (spec.kind == SolverKind::StayPut) {
    for (int t = 1; t <= inst.T; ++t) actions[t - 1] = inst.x0;
  } else {
    throw std::invalid_argument("run_baseline: spec kind mismatch");
  }
  return finalize_trajectory(inst, std::move(actions));
}

Trajectory run_solver(const Instance& inst, const SolverSpec& spec) {
  switch (spec.kind) {
    case SolverKind::Omgd:
      return run_omgd(inst, spec);
    case SolverKind::OmgdNag:
      return run_nag(inst, spec);
    case SolverKind::ChaseMinimizer:
    case SolverKind::StayPut:
      return run_baseline(inst, spec);
  }
  throw std::invalid_argument("run_solver: unknown kind");
}

}  // namespace oco

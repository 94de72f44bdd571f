#include "ocoswitch/offline_opt.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "ocoswitch/spectral.hpp"

namespace oco {

std::string opt_method_name(OptMethod m) {
  switch (m) {
    case OptMethod::Tridiagonal:
      return "tridiagonal";
    case OptMethod::Subgradient:
      return "subgradient";
    case OptMethod::BruteForce:
      return "brute-force";
    case OptMethod::ClosedFormT2:
      return "closed-form-T2";
  }
  return "unknown";
}

double brute_force_budget() {
  if (const char* env = std::getenv("OCO_SWITCH_BUDGET")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end != env && v > 0.0) return v;
  }
  return 1e8;
}

namespace {

double curvature_at(const FunctionModel& f, int coord) {
  switch (f.kind) {
    case FunctionModel::Kind::IsotropicQuadratic:
      return f.a;
    case FunctionModel::Kind::DiagonalQuadratic:
      return f.a_diag[coord];
    default:
      throw unsupported_operation(
          "solve_opt_quadratic: requires quadratic hitting costs");
  }
}

double total_cost(const Instance& inst, const std::vector<Vec>& actions) {
  double s = 0.0;
  const Vec* prev = &inst.x0;
  for (int t = 0; t < inst.T; ++t) {
    s += eval(inst.functions[t], actions[t]);
    double d = dist(actions[t], *prev);
    s += inst.switching == Switching::Quadratic ? 0.5 * d * d : d;
    prev = &actions[t];
  }
  return s;
}

}  // namespace

OptSolution solve_opt_quadratic(const Instance& inst) {
  if (inst.switching != Switching::Quadratic)
    throw std::invalid_argument("solve_opt_quadratic: switching must be quadratic");

  std::vector<Vec> actions(inst.T, Vec(inst.d, 0.0));
  double residual = 0.0;
  for (int j = 0; j < inst.d; ++j) {
    Tridiag m;
    m.diag.resize(inst.T);
    m.off.assign(inst.T > 1 ? inst.T - 1 : 0, -1.0);
    Vec rhs(inst.T);
    for (int t = 1; t <= inst.T; ++t) {
      const FunctionModel& f = inst.functions[t - 1];
      double a = curvature_at(f, j);
      m.diag[t - 1] = a + (t < inst.T ? 2.0 : 1.0);
      rhs[t - 1] = a * f.c[j] + (t == 1 ? inst.x0[j] : 0.0);
    }
    Vec x = solve_tridiag(m, rhs);
    residual = std::max(residual, tridiag_residual(m, x, rhs));
    for (int t = 0; t < inst.T; ++t) actions[t][j] = x[t];
  }

  for (const Vec& x : actions)
    if (!inst.set.contains(x, kInteriorMargin))
      throw constrained_case_unsupported(
          "solve_opt_quadratic: unconstrained optimum leaves the feasible set");

  OptSolution sol;
  sol.trajectory = finalize_trajectory(inst, std::move(actions));
  sol.objective = sol.trajectory.total();
  sol.method = OptMethod::Tridiagonal;
  sol.residual = residual;
  return sol;
}

namespace {

// Cost of round t as a function of its own action, neighbours fixed.
double round_cost(const Instance& inst, const std::vector<Vec>& z, int t,
                  const Vec& x) {
  const Vec& prev = t == 0 ? inst.x0 : z[t - 1];
  double s = eval(inst.functions[t], x) + dist(x, prev);
  if (t + 1 < inst.T) s += dist(z[t + 1], x);
  return s;
}

// Ternary search for the minimum of the convex section s -> cost(p + s(q-p)).
Vec segment_min(const Instance& inst, const std::vector<Vec>& z, int t,
                const Vec& p, const Vec& q) {
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 120; ++it) {
    double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
    Vec a = add(p, scale(m1, sub(q, p)));
    Vec b = add(p, scale(m2, sub(q, p)));
    if (round_cost(inst, z, t, a) <= round_cost(inst, z, t, b))
      hi = m2;
    else
      lo = m1;
  }
  return add(p, scale(0.5 * (lo + hi), sub(q, p)));
}

// Cost of rounds i..j with every action replaced by y, boundary links
// included, interior links zero.
double block_cost(const Instance& inst, const std::vector<Vec>& z, int i,
                  int j, const Vec& y) {
  double s = 0.0;
  for (int t = i; t <= j; ++t) s += eval(inst.functions[t], y);
  s += dist(y, i == 0 ? inst.x0 : z[i - 1]);
  if (j + 1 < inst.T) s += dist(z[j + 1], y);
  return s;
}

double block_cost_now(const Instance& inst, const std::vector<Vec>& z, int i,
                      int j) {
  double s = 0.0;
  for (int t = i; t <= j; ++t) {
    s += eval(inst.functions[t], z[t]);
    s += dist(z[t], t == 0 ? inst.x0 : z[t - 1]);
  }
  if (j + 1 < inst.T) s += dist(z[j + 1], z[j]);
  return s;
}

// Exact common value for rounds i..j in one dimension: the restriction is a
// convex piecewise quadratic whose kinks sit at the boundary anchors, so the
// optimum is an anchor or a per-piece stationary point (A y = B + e with e
// collecting the +-1 link slopes).
bool block_min_exact_1d(const Instance& inst, const std::vector<Vec>& z, int i,
                        int j, Vec& out) {
  if (inst.d != 1) return false;
  double A = 0.0, B = 0.0;
  for (int t = i; t <= j; ++t) {
    const FunctionModel& f = inst.functions[t];
    if (f.kind == FunctionModel::Kind::ExternalOracle) return false;
    double a = f.kind == FunctionModel::Kind::IsotropicQuadratic ? f.a
                                                                 : f.a_diag[0];
    A += a;
    B += a * f.c[0];
  }
  if (A <= 0.0) return false;
  std::vector<double> cands{(i == 0 ? inst.x0 : z[i - 1])[0]};
  if (j + 1 < inst.T) cands.push_back(z[j + 1][0]);
  for (double e : {-2.0, -1.0, 0.0, 1.0, 2.0}) cands.push_back((B + e) / A);
  double best_v = std::numeric_limits<double>::infinity();
  Vec best_y(1, 0.0);
  for (double c : cands) {
    Vec y = project(inst.set, Vec{c});
    double v = block_cost(inst, z, i, j, y);
    if (v < best_v) {
      best_v = v;
      best_y = y;
    }
  }
  out = best_y;
  return true;
}

// Anchor-and-ternary fallback for higher dimensions and oracle models.
Vec block_min_generic(const Instance& inst, const std::vector<Vec>& z, int i,
                      int j) {
  auto g = [&](const Vec& y) { return block_cost(inst, z, i, j, y); };
  std::vector<Vec> anchors{z[i], i == 0 ? inst.x0 : z[i - 1]};
  if (j + 1 < inst.T) anchors.push_back(z[j + 1]);
  bool closed = true;
  Vec num(inst.d, 0.0), den(inst.d, 0.0);
  for (int t = i; t <= j && closed; ++t) {
    const FunctionModel& f = inst.functions[t];
    if (f.kind == FunctionModel::Kind::ExternalOracle) {
      closed = false;
      break;
    }
    for (int idx = 0; idx < inst.d; ++idx) {
      double a = f.kind == FunctionModel::Kind::IsotropicQuadratic
                     ? f.a
                     : f.a_diag[idx];
      num[idx] += a * f.c[idx];
      den[idx] += a;
    }
  }
  if (closed) {
    Vec center(inst.d, 0.0);
    for (int idx = 0; idx < inst.d; ++idx)
      center[idx] = den[idx] > 0.0 ? num[idx] / den[idx] : z[i][idx];
    anchors.push_back(center);
  }
  for (Vec& a : anchors) a = project(inst.set, a);

  Vec bestp = anchors[0];
  double bestv = g(bestp);
  for (size_t a = 0; a < anchors.size(); ++a) {
    double va = g(anchors[a]);
    if (va < bestv) {
      bestv = va;
      bestp = anchors[a];
    }
    for (size_t b = a + 1; b < anchors.size(); ++b) {
      double lo = 0.0, hi = 1.0;
      const Vec& p = anchors[a];
      const Vec& q = anchors[b];
      for (int it = 0; it < 90; ++it) {
        double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
        if (g(add(p, scale(m1, sub(q, p)))) <= g(add(p, scale(m2, sub(q, p)))))
          hi = m2;
        else
          lo = m1;
      }
      Vec y = add(p, scale(0.5 * (lo + hi), sub(q, p)));
      double v = g(y);
      if (v < bestv) {
        bestv = v;
        bestp = y;
      }
    }
  }
  return bestp;
}

}  // namespace

OptSolution solve_opt_linear(const Instance& inst, const SubgradientOptions& opts) {
  if (inst.switching != Switching::Linear)
    throw std::invalid_argument("solve_opt_linear: switching must be linear");

  std::vector<Vec> centers(inst.T);
  for (int t = 0; t < inst.T; ++t)
    centers[t] = minimizer(inst.functions[t], inst.set).point;

  double c0 = opts.c0;
  if (c0 <= 0.0) {
    c0 = norm(centers[0]) + 1.0;
    for (int t = 1; t < inst.T; ++t) c0 += dist(centers[t], centers[t - 1]);
  }

  std::vector<Vec> z = centers;
  std::vector<Vec> best = z;
  double best_val = total_cost(inst, z);

  for (int k = 1; k <= opts.iterations; ++k) {
    // Unit vectors of the active movement terms; 0 at kinks.
    std::vector<Vec> links(inst.T + 1, Vec(inst.d, 0.0));
    for (int t = 0; t < inst.T; ++t) {
      Vec delta = sub(z[t], t == 0 ? inst.x0 : z[t - 1]);
      double n = norm(delta);
      if (n > 0.0) links[t] = scale(1.0 / n, delta);
    }
    double step = c0 / std::sqrt(static_cast<double>(k));
    for (int t = 0; t < inst.T; ++t) {
      Vec g = add(grad(inst.functions[t], z[t]), sub(links[t], links[t + 1]));
      z[t] = project(inst.set, sub(z[t], scale(step, g)));
    }
    double v = total_cost(inst, z);
    if (v < best_val) {
      best_val = v;
      best = z;
    }
  }

  z = best;
  for (int cycle = 0; cycle < opts.polish_cycles; ++cycle) {
    bool improved = false;
    for (int t = 0; t < inst.T; ++t) {
      Vec cand = z[t];
      double cand_val = round_cost(inst, z, t, cand);
      double before = cand_val;
      std::vector<Vec> anchors;
      anchors.push_back(t == 0 ? inst.x0 : z[t - 1]);
      if (t + 1 < inst.T) anchors.push_back(z[t + 1]);
      anchors.push_back(centers[t]);
      for (const Vec& a : anchors) {
        for (const Vec& probe : {a, segment_min(inst, z, t, cand, a)}) {
          Vec p = project(inst.set, probe);
          double v = round_cost(inst, z, t, p);
          if (v < cand_val) {
            cand_val = v;
            cand = p;
          }
        }
      }
      if (cand_val < before) improved = true;
      z[t] = cand;
    }

    // Single-round moves stall when a run of coincident actions has to move as
    // one (the kinks at its edges block every individual step). Slide each
    // such run to its exact common minimizer.
    double span = 1.0 + norm(inst.x0);
    for (const Vec& v : z) span = std::max(span, 1.0 + norm(v));
    for (double glue : {1e-2 * span, 1e-6 * span}) {
      int i = 0;
      while (i < inst.T) {
        int j = i;
        while (j + 1 < inst.T && dist(z[j + 1], z[j]) <= glue) ++j;
        if (j > i) {
          double before = block_cost_now(inst, z, i, j);
          Vec y;
          if (!block_min_exact_1d(inst, z, i, j, y))
            y = block_min_generic(inst, z, i, j);
          if (block_cost(inst, z, i, j, y) < before) {
            for (int t = i; t <= j; ++t) z[t] = y;
            improved = true;
          }
        }
        i = j + 1;
      }
    }
    if (!improved) break;
  }
  double polished = total_cost(inst, z);
  if (polished < best_val) {
    best_val = polished;
    best = z;
  }

  // Stationarity certificate. For interior solutions the optimality system
  // determines the movement-term subgradients u_t exactly: sweeping backward
  // with sigma_t = sigma_{t+1} - grad f_t(z_t), a nonzero link forces
  // u_t = (z_t - z_{t-1}) / |z_t - z_{t-1}| while a kink only requires
  // |sigma_t| <= 1, so the worst mismatch is a true KKT residual. Solutions
  // touching the boundary fall back to a projected-gradient bound with unit
  // slack per adjacent kink.
  bool interior = inst.set.kind == FeasibleSet::Kind::AllSpace;
  if (!interior) {
    interior = true;
    for (const Vec& x : best)
      interior = interior && inst.set.interior_margin(x) > kInteriorMargin;
  }

  double residual = 0.0;
  if (interior) {
    Vec sigma(inst.d, 0.0);
    for (int t = inst.T; t >= 1; --t) {
      Vec st = sub(sigma, grad(inst.functions[t - 1], best[t - 1]));
      Vec delta = sub(best[t - 1], t == 1 ? inst.x0 : best[t - 2]);
      double n = norm(delta);
      if (n > 1e-10 * (1.0 + norm(best[t - 1]))) {
        Vec u = scale(1.0 / n, delta);
        residual = std::max(residual, dist(st, u));
        sigma = u;
      } else {
        double ns = norm(st);
        residual = std::max(residual, std::max(0.0, ns - 1.0));
        sigma = ns > 1.0 ? scale(1.0 / ns, st) : st;
      }
    }
  } else {
    std::vector<Vec> links(inst.T + 1, Vec(inst.d, 0.0));
    std::vector<bool> kink(inst.T + 1, true);
    for (int t = 0; t < inst.T; ++t) {
      Vec delta = sub(best[t], t == 0 ? inst.x0 : best[t - 1]);
      double n = norm(delta);
      if (n > 1e-12) {
        links[t] = scale(1.0 / n, delta);
        kink[t] = false;
      }
    }
    for (int t = 0; t < inst.T; ++t) {
      Vec forced = add(grad(inst.functions[t], best[t]), sub(links[t], links[t + 1]));
      double slack = (kink[t] ? 1.0 : 0.0) + (t + 1 < inst.T && kink[t + 1] ? 1.0 : 0.0);
      double pg = dist(best[t], project(inst.set, sub(best[t], forced)));
      residual = std::max(residual, std::max(0.0, pg - slack));
    }
  }

  OptSolution sol;
  sol.trajectory = finalize_trajectory(inst, std::move(best));
  sol.objective = sol.trajectory.total();
  sol.method = OptMethod::Subgradient;
  sol.residual = residual;
  return sol;
}

namespace {

struct GridSearch {
  const Instance* inst;
  std::vector<Vec> points;                 // feasible grid points
  std::vector<Vec> hitting;                // hitting[t][m]
  std::vector<int> choice, best_choice;
  double best = std::numeric_limits<double>::infinity();

  void descend(int t, const Vec& prev, double acc) {
    for (size_t m = 0; m < points.size(); ++m) {
      double d = dist(points[m], prev);
      double c = acc + hitting[t][m] +
                 (inst->switching == Switching::Quadratic ? 0.5 * d * d : d);
      if (c >= best) continue;
      choice[t] = static_cast<int>(m);
      if (t + 1 == inst->T) {
        best = c;
        best_choice = choice;
      } else {
        descend(t + 1, points[m], c);
      }
    }
  }
};

}  // namespace

OptSolution brute_force_opt(const Instance& inst, const Vec& lo, const Vec& hi,
                            int points_per_axis) {
  require_same_dim(lo, hi, "brute_force_opt");
  if (static_cast<int>(lo.size()) != inst.d)
    throw std::invalid_argument("brute_force_opt: grid dimension mismatch");
  if (points_per_axis < 1)
    throw std::invalid_argument("brute_force_opt: points_per_axis must be >= 1");

  std::vector<int> n(inst.d);
  double spacing = 0.0;
  double per_round = 1.0;
  for (int i = 0; i < inst.d; ++i) {
    if (lo[i] > hi[i])
      throw std::invalid_argument("brute_force_opt: lo exceeds hi");
    n[i] = lo[i] == hi[i] ? 1 : points_per_axis;
    if (n[i] > 1) spacing = std::max(spacing, (hi[i] - lo[i]) / (n[i] - 1));
    per_round *= n[i];
  }
  if (inst.T * std::log(per_round) > std::log(brute_force_budget()))
    throw std::invalid_argument("brute_force_opt: grid budget exceeded");

  GridSearch gs;
  gs.inst = &inst;
  std::vector<int> idx(inst.d, 0);
  for (;;) {
    Vec p(inst.d);
    for (int i = 0; i < inst.d; ++i)
      p[i] = n[i] == 1 ? lo[i] : lo[i] + idx[i] * (hi[i] - lo[i]) / (n[i] - 1);
    if (inst.set.contains(p, kInteriorMargin)) gs.points.push_back(std::move(p));
    int i = 0;
    while (i < inst.d && ++idx[i] == n[i]) idx[i++] = 0;
    if (i == inst.d) break;
  }
  if (gs.points.empty())
    throw std::invalid_argument("brute_force_opt: no feasible grid point");

  gs.hitting.assign(inst.T, Vec(gs.points.size()));
  for (int t = 0; t < inst.T; ++t)
    for (size_t m = 0; m < gs.points.size(); ++m)
      gs.hitting[t][m] = eval(inst.functions[t], gs.points[m]);

  gs.choice.assign(inst.T, 0);
  gs.descend(0, inst.x0, 0.0);

  std::vector<Vec> actions(inst.T);
  for (int t = 0; t < inst.T; ++t) actions[t] = gs.points[gs.best_choice[t]];

  OptSolution sol;
  sol.trajectory = finalize_trajectory(inst, std::move(actions));
  sol.objective = sol.trajectory.total();
  sol.method = OptMethod::BruteForce;
  sol.residual = spacing;
  return sol;
}

OptSolution closed_form_opt_T2(double mu, const Vec& x1star, const Vec& x2star) {
  if (!(mu > 0.0))
    throw std::invalid_argument("closed_form_opt_T2: mu must be positive");
  require_same_dim(x1star, x2star, "closed_form_opt_T2");
  int d = static_cast<int>(x1star.size());

  Instance inst = make_instance(
      FeasibleSet::all_space(d), Vec(d, 0.0),
      {FunctionModel::isotropic_quadratic(mu, x1star),
       FunctionModel::isotropic_quadratic(mu, x2star)},
      Switching::Quadratic, "closed-form-T2");

  double scale = mu / (mu * mu + 3.0 * mu + 1.0);
  std::vector<Vec> actions(2, Vec(d));
  double residual = 0.0;
  for (int j = 0; j < d; ++j) {
    actions[0][j] = scale * ((mu + 1.0) * x1star[j] + x2star[j]);
    actions[1][j] = scale * (x1star[j] + (mu + 2.0) * x2star[j]);
    Tridiag m;
    m.diag = {mu + 2.0, mu + 1.0};
    m.off = {-1.0};
    Vec rhs = {mu * x1star[j], mu * x2star[j]};
    residual = std::max(
        residual, tridiag_residual(m, {actions[0][j], actions[1][j]}, rhs));
  }

  OptSolution sol;
  sol.trajectory = finalize_trajectory(inst, std::move(actions));
  sol.objective = sol.trajectory.total();
  sol.method = OptMethod::ClosedFormT2;
  sol.residual = residual;
  return sol;
}

}  // namespace oco

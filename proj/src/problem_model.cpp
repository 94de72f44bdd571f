#include "ocoswitch/problem_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace oco {

FeasibleSet FeasibleSet::all_space(int d) {
  if (d < 1) throw std::invalid_argument("all_space: dimension must be >= 1");
  FeasibleSet s;
  s.kind = Kind::AllSpace;
  s.dim = d;
  return s;
}

FeasibleSet FeasibleSet::box(Vec lo, Vec hi) {
  require_same_dim(lo, hi, "box");
  if (lo.empty()) throw std::invalid_argument("box: dimension must be >= 1");
  for (size_t i = 0; i < lo.size(); ++i) {
    if (lo[i] > hi[i]) throw std::invalid_argument("box: lower > upper");
    if (lo[i] > 0.0 || hi[i] < 0.0)
      throw std::invalid_argument("box: bounds must straddle the origin");
  }
  FeasibleSet s;
  s.kind = Kind::Box;
  s.dim = static_cast<int>(lo.size());
  s.lower = std::move(lo);
  s.upper = std::move(hi);
  return s;
}

FeasibleSet FeasibleSet::ball(Vec center, double radius) {
  if (center.empty()) throw std::invalid_argument("ball: dimension must be >= 1");
  if (!(radius > 0.0)) throw std::invalid_argument("ball: radius must be positive");
  if (norm(center) > radius)
    throw std::invalid_argument("ball: must contain the origin (||center|| <= radius)");
  FeasibleSet s;
  s.kind = Kind::Ball;
  s.dim = static_cast<int>(center.size());
  s.center = std::move(center);
  s.radius = radius;
  return s;
}

bool FeasibleSet::contains(const Vec& p, double tol) const {
  if (static_cast<int>(p.size()) != dim)
    throw std::invalid_argument("contains: dimension mismatch");
  switch (kind) {
    case Kind::AllSpace:
      return true;
    case Kind::Box:
      for (int i = 0; i < dim; ++i)
        if (p[i] < lower[i] - tol || p[i] > upper[i] + tol) return false;
      return true;
    case Kind::Ball:
      return dist(p, center) <= radius + tol;
  }
  return false;
}

double FeasibleSet::interior_margin(const Vec& p) const {
  if (static_cast<int>(p.size()) != dim)
    throw std::invalid_argument("interior_margin: dimension mismatch");
  switch (kind) {
    case Kind::AllSpace:
      return std::numeric_limits<double>::infinity();
    case Kind::Box: {
      double m = std::numeric_limits<double>::infinity();
      for (int i = 0; i < dim; ++i)
        m = std::min(m, std::min(p[i] - lower[i], upper[i] - p[i]));
      return m;
    }
    case Kind::Ball:
      return radius - dist(p, center);
  }
  return 0.0;
}

Vec project(const FeasibleSet& set, const Vec& p) {
  if (static_cast<int>(p.size()) != set.dim)
    throw std::invalid_argument("project: dimension mismatch");
  switch (set.kind) {
    case FeasibleSet::Kind::AllSpace:
      return p;
    case FeasibleSet::Kind::Box: {
      Vec r(p.size());
      for (size_t i = 0; i < p.size(); ++i)
        r[i] = std::clamp(p[i], set.lower[i], set.upper[i]);
      return r;
    }
    case FeasibleSet::Kind::Ball: {
      Vec delta = sub(p, set.center);
      double n = norm(delta);
      if (n <= set.radius) return p;
      return add(set.center, scale(set.radius / n, delta));
    }
  }
  return p;
}

FunctionModel FunctionModel::isotropic_quadratic(double a, Vec c) {
  if (!(a > 0.0)) throw std::invalid_argument("isotropic_quadratic: curvature must be positive");
  if (c.empty()) throw std::invalid_argument("isotropic_quadratic: empty center");
  FunctionModel f;
  f.kind = Kind::IsotropicQuadratic;
  f.a = a;
  f.c = std::move(c);
  f.mu = a;
  f.ell = a;
  return f;
}

FunctionModel FunctionModel::diagonal_quadratic(Vec a, Vec c) {
  require_same_dim(a, c, "diagonal_quadratic");
  if (a.empty()) throw std::invalid_argument("diagonal_quadratic: empty curvature");
  double lo = a[0], hi = a[0];
  for (double v : a) {
    if (!(v > 0.0))
      throw std::invalid_argument("diagonal_quadratic: curvatures must be positive");
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  FunctionModel f;
  f.kind = Kind::DiagonalQuadratic;
  f.a_diag = std::move(a);
  f.c = std::move(c);
  f.mu = lo;
  f.ell = hi;
  return f;
}

FunctionModel FunctionModel::external_oracle(std::function<double(const Vec&)> ev,
                                             std::function<Vec(const Vec&)> gr,
                                             double mu, double ell,
                                             std::optional<Vec> minimizer) {
  if (!ev || !gr) throw std::invalid_argument("external_oracle: callbacks required");
  if (!(mu > 0.0) || !(mu <= ell))
    throw std::invalid_argument("external_oracle: need 0 < mu <= ell");
  FunctionModel f;
  f.kind = Kind::ExternalOracle;
  f.oracle_eval = std::move(ev);
  f.oracle_grad = std::move(gr);
  f.oracle_minimizer = std::move(minimizer);
  f.mu = mu;
  f.ell = ell;
  return f;
}

double eval(const FunctionModel& f, const Vec& x) {
  switch (f.kind) {
    case FunctionModel::Kind::IsotropicQuadratic:
      return 0.5 * f.a * dist_sq(x, f.c);
    case FunctionModel::Kind::DiagonalQuadratic: {
      require_same_dim(x, f.c, "eval");
      double s = 0.0;
      for (size_t i = 0; i < x.size(); ++i) {
        double dxi = x[i] - f.c[i];
        s += 0.5 * f.a_diag[i] * dxi * dxi;
      }
      return s;
    }
    case FunctionModel::Kind::ExternalOracle:
      return f.oracle_eval(x);
  }
  return 0.0;
}

Vec grad(const FunctionModel& f, const Vec& x) {
  switch (f.kind) {
    case FunctionModel::Kind::IsotropicQuadratic:
      return scale(f.a, sub(x, f.c));
    case FunctionModel::Kind::DiagonalQuadratic: {
      require_same_dim(x, f.c, "grad");
      Vec g(x.size());
      for (size_t i = 0; i < x.size(); ++i) g[i] = f.a_diag[i] * (x[i] - f.c[i]);
      return g;
    }
    case FunctionModel::Kind::ExternalOracle:
      return f.oracle_grad(x);
  }
  return {};
}

MinimizerInfo minimizer(const FunctionModel& f, const FeasibleSet& set) {
  Vec point;
  switch (f.kind) {
    case FunctionModel::Kind::IsotropicQuadratic:
      point = project(set, f.c);
      break;
    case FunctionModel::Kind::DiagonalQuadratic:
      if (set.kind == FeasibleSet::Kind::Ball && !set.contains(f.c, 0.0)) {
        // No closed form for an anisotropic bowl cut by a ball.
        throw unsupported_operation(
            "minimizer: diagonal quadratic over a ball requires the center inside; "
            "supply the minimizer via an external oracle");
      }
      point = project(set, f.c);  // exact: separable objective, componentwise clamp
      break;
    case FunctionModel::Kind::ExternalOracle:
      if (!f.oracle_minimizer)
        throw unsupported_operation("minimizer: external oracle without a supplied minimizer");
      point = *f.oracle_minimizer;
      if (!set.contains(point, kInteriorMargin))
        throw std::invalid_argument("minimizer: supplied point is outside the feasible set");
      break;
  }
  MinimizerInfo info;
  info.interior = set.interior_margin(point) > kInteriorMargin;
  info.point = std::move(point);
  return info;
}

Instance make_instance(FeasibleSet set, Vec x0, std::vector<FunctionModel> functions,
                       Switching switching, std::string id) {
  if (functions.empty()) throw std::invalid_argument("make_instance: horizon must be >= 1");
  Instance inst;
  inst.d = set.dim;
  if (static_cast<int>(x0.size()) != inst.d)
    throw std::invalid_argument("make_instance: x0 dimension mismatch");
  if (!set.contains(x0, 0.0))
    throw std::invalid_argument("make_instance: x0 outside the feasible set");
  inst.mu = functions[0].mu;
  inst.ell = functions[0].ell;
  for (const auto& f : functions) {
    bool dim_ok = true;
    switch (f.kind) {
      case FunctionModel::Kind::IsotropicQuadratic:
      case FunctionModel::Kind::DiagonalQuadratic:
        dim_ok = static_cast<int>(f.c.size()) == inst.d;
        break;
      case FunctionModel::Kind::ExternalOracle:
        if (f.oracle_minimizer)
          dim_ok = static_cast<int>(f.oracle_minimizer->size()) == inst.d;
        break;
    }
    if (!dim_ok) throw std::invalid_argument("make_instance: function dimension mismatch");
    inst.mu = std::min(inst.mu, f.mu);
    inst.ell = std::max(inst.ell, f.ell);
  }
  inst.T = static_cast<int>(functions.size());
  inst.set = std::move(set);
  inst.x0 = std::move(x0);
  inst.functions = std::move(functions);
  inst.switching = switching;
  inst.id = std::move(id);
  return inst;
}

Vec gated_grad(InfoGate& gate, const Instance& inst, int t, const Vec& x) {
  return gated_grad_for(gate, inst, t, t - 1, x);
}

Vec gated_grad_for(InfoGate& gate, const Instance& inst, int t, int which, const Vec& x) {
  if (t < gate.current_round)
    throw information_violation("gated_grad: rounds must advance monotonically");
  if (t < 2)
    throw information_violation("gated_grad: no past function exists before round 2");
  if (t > inst.T)
    throw information_violation("gated_grad: round beyond the horizon");
  if (which != t - 1)
    throw information_violation("gated_grad: only the previous round's gradients are served");
  gate.current_round = t;
  gate.log.push_back({which, x});
  return grad(inst.functions[which - 1], x);
}

}  // namespace oco

#include "ocoswitch/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace oco {

PathStats path_stats(const Instance& inst) {
  PathStats ps;
  Vec prev;
  for (int t = 1; t <= inst.T; ++t) {
    const FunctionModel& f = inst.functions[t - 1];
    Vec star = minimizer(f, inst.set).point;
    ps.sumFstar += eval(f, star);
    ps.gradSq += norm_sq(grad(f, star));
    if (t == 1) {
      ps.x1norm = norm(star);
    } else {
      double step = dist(star, prev);
      ps.pT += step;
      ps.p2T += step * step;
    }
    prev = std::move(star);
  }
  return ps;
}

std::string bound_kind_name(BoundKind k) {
  switch (k) {
    case BoundKind::UpperOnCost:
      return "upper-on-cost";
    case BoundKind::LowerOnOpt:
      return "lower-on-opt";
    case BoundKind::UpperOnCr:
      return "upper-on-cr";
    case BoundKind::LowerOnCr:
      return "lower-on-cr";
    case BoundKind::UpperOnRegret:
      return "upper-on-regret";
    case BoundKind::LowerOnRegret:
      return "lower-on-regret";
  }
  return "unknown";
}

BoundReport omgd_total_cost_bound(const PathStats& ps, double mu, double ell,
                                  double alpha, Switching switching) {
  if (alpha <= 0.0 && ps.gradSq > 0.0)
    throw std::invalid_argument(
        "omgd_total_cost_bound: alpha must be positive when gradSq > 0");
  double x1sq = ps.x1norm * ps.x1norm;
  double path_term = x1sq + 2.0 * ps.p2T;
  double grad_term = ps.gradSq > 0.0 ? ps.gradSq / (2.0 * alpha) : 0.0;
  double effective_alpha = std::isfinite(alpha) && alpha > 0.0 ? alpha : 0.0;

  BoundReport r;
  r.kind = BoundKind::UpperOnCost;
  r.inputs = {{"mu", mu}, {"ell", ell}, {"alpha", alpha}};
  if (switching == Switching::Quadratic) {
    r.name = "omgd-total-cost-quadratic";
    r.value = ps.sumFstar + grad_term + (ell + effective_alpha + 5.0) * path_term;
  } else {
    r.name = "omgd-total-cost-linear";
    r.value = ps.sumFstar + grad_term + (ell + effective_alpha) * path_term +
              3.0 * ps.x1norm + 3.0 * ps.pT;
  }
  return r;
}

double optimal_alpha(const PathStats& ps) {
  if (ps.gradSq <= 0.0) return 0.0;
  double q = ps.x1norm * ps.x1norm + 2.0 * ps.p2T;
  if (q <= 0.0) return std::numeric_limits<double>::infinity();
  return std::sqrt(ps.gradSq / (2.0 * q));
}

BoundReport gamma_boundary_bound(const PathStats& ps, double mu, double ell) {
  if (!(ps.p2T > 0.0))
    throw std::invalid_argument("gamma_boundary_bound: requires p2T > 0");
  double gamma = ps.gradSq / ps.p2T;
  BoundReport r;
  r.name = "omgd-total-cost-gamma";
  r.kind = BoundKind::UpperOnCost;
  r.value = ps.sumFstar + (2.0 * ell + 2.0 * std::sqrt(gamma) + 10.0) *
                              (ps.x1norm * ps.x1norm + ps.p2T);
  r.inputs = {{"mu", mu}, {"ell", ell}, {"gamma", gamma}};
  return r;
}

BoundReport opt_lower_bound(const PathStats& ps, double mu, Switching switching) {
  if (!(mu > 0.0))
    throw std::invalid_argument("opt_lower_bound: mu must be positive");
  double q = ps.p2T + ps.x1norm * ps.x1norm;
  BoundReport r;
  r.kind = BoundKind::LowerOnOpt;
  r.inputs = {{"mu", mu}};
  if (switching == Switching::Quadratic) {
    r.name = "opt-lower-quadratic";
    r.value = ps.sumFstar + mu / (2.0 * (mu + 4.0)) * q;
  } else {
    r.name = "opt-lower-linear";
    r.value = ps.sumFstar +
              2.0 * mu * q / (mu * (ps.pT + ps.x1norm) + 8.0);
  }
  return r;
}

BoundReport opt_upper_minseq(const PathStats& ps, Switching switching) {
  BoundReport r;
  r.kind = BoundKind::UpperOnCost;
  if (switching == Switching::Quadratic) {
    r.name = "opt-upper-minimizer-sequence-quadratic";
    r.value = ps.sumFstar + 0.5 * (ps.p2T + ps.x1norm * ps.x1norm);
  } else {
    r.name = "opt-upper-minimizer-sequence-linear";
    r.value = ps.sumFstar + ps.pT + ps.x1norm;
  }
  return r;
}

std::vector<BoundReport> cr_bounds(const PathStats& ps, double mu, double ell) {
  if (!(mu > 0.0))
    throw std::invalid_argument("cr_bounds: mu must be positive");
  double s = ps.pT + ps.x1norm;
  double q = ps.p2T + ps.x1norm * ps.x1norm;
  if (!(q > 0.0))
    throw std::invalid_argument("cr_bounds: requires p2T + x1norm^2 > 0");

  std::map<std::string, double> in = {{"mu", mu}, {"ell", ell}};
  std::vector<BoundReport> out;
  out.push_back({"cr-upper-quadratic",
                 4.0 * (ell + 5.0) + 16.0 * (ell + 5.0) / mu,
                 BoundKind::UpperOnCr, in});
  out.push_back({"cr-upper-comparator", 4.0 * (ell + 5.0) * (1.0 + 4.0 / mu),
                 BoundKind::UpperOnCr, in});
  out.push_back({"cr-upper-linear",
                 ell * s + 1.5 * s * s / q + 8.0 * ell / mu + 12.0 / mu * s / q,
                 BoundKind::UpperOnCr, in});
  out.push_back({"cr-lower-omgd", 1.0 + (ell + 1.0) / (4.0 * mu) + (ell + 1.0) / 8.0,
                 BoundKind::LowerOnCr, in});
  out.push_back({"cr-lower-linear",
                 (mu * s + 1.5 * s * s / q + 12.0 / mu * s / q) / 8.0,
                 BoundKind::LowerOnCr, in});
  out.push_back({"cr-lower-universal", ell, BoundKind::LowerOnCr, in});
  return out;
}

double zeta_constant(double mu) {
  if (!(mu > 0.0))
    throw std::invalid_argument("zeta_constant: mu must be positive");
  double rho = (std::sqrt(mu + 4.0) - std::sqrt(mu)) /
               (std::sqrt(mu + 4.0) + std::sqrt(mu));
  double one_minus = 1.0 - rho;
  return mu * mu * mu * one_minus * one_minus / (32.0 * (mu + 1.0) * (mu + 1.0));
}

std::vector<BoundReport> regret_bounds(const PathStats& ps, double mu, double ell,
                                       double G, std::optional<double> D,
                                       std::optional<double> V_T,
                                       const std::vector<std::string>& requested) {
  if (!(mu > 0.0) || G < 0.0)
    throw std::invalid_argument("regret_bounds: need mu > 0 and G >= 0");

  auto wanted = [&](const std::string& name) {
    if (requested.empty()) return true;
    return std::find(requested.begin(), requested.end(), name) != requested.end();
  };
  auto explicitly = [&](const std::string& name) {
    return !requested.empty() && wanted(name);
  };

  double drift = 10.0 - mu / (2.0 * (mu + 4.0));
  std::vector<BoundReport> out;

  if (wanted("regret-upper")) {
    BoundReport r;
    r.name = "regret-upper";
    r.kind = BoundKind::UpperOnRegret;
    r.value = 2.0 * G * (ps.x1norm + ps.pT) + 5.0 * ps.x1norm * ps.x1norm +
              drift * ps.p2T;
    r.inputs = {{"mu", mu}, {"G", G}};
    out.push_back(std::move(r));
  }

  if (wanted("regret-upper-diameter")) {
    if (D) {
      BoundReport r;
      r.name = "regret-upper-diameter";
      r.kind = BoundKind::UpperOnRegret;
      r.value = (2.0 * G + *D * drift) * (ps.x1norm + ps.pT);
      r.inputs = {{"mu", mu}, {"G", G}, {"D", *D}};
      out.push_back(std::move(r));
    } else if (explicitly("regret-upper-diameter")) {
      throw std::invalid_argument("regret_bounds: regret-upper-diameter needs D");
    }
  }

  if (wanted("regret-lower-zeta")) {
    if (D && V_T) {
      BoundReport r;
      r.name = "regret-lower-zeta";
      r.kind = BoundKind::LowerOnRegret;
      r.value = zeta_constant(mu) * *D * *V_T;
      r.inputs = {{"mu", mu}, {"D", *D}, {"V_T", *V_T}, {"zeta", zeta_constant(mu)}};
      out.push_back(std::move(r));
    } else if (explicitly("regret-lower-zeta")) {
      throw std::invalid_argument("regret_bounds: regret-lower-zeta needs D and V_T");
    }
  }

  if (wanted("regret-upper-vt2")) {
    if (V_T) {
      BoundReport r;
      r.name = "regret-upper-vt2";
      r.kind = BoundKind::UpperOnRegret;
      r.value = (2.0 * ell + 10.0 - mu / (2.0 * mu + 8.0)) * *V_T * *V_T;
      r.inputs = {{"mu", mu}, {"ell", ell}, {"V_T", *V_T}};
      out.push_back(std::move(r));
    } else if (explicitly("regret-upper-vt2")) {
      throw std::invalid_argument("regret_bounds: regret-upper-vt2 needs V_T");
    }
  }

  return out;
}

}  // namespace oco

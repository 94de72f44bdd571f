#include "ocoswitch/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace oco {

Tridiag matrix_b(int T) {
  if (T < 1) throw std::invalid_argument("matrix_b: T must be >= 1");
  Tridiag m;
  m.diag.assign(T, 2.0);
  m.diag[T - 1] = 1.0;
  m.off.assign(T - 1, -1.0);
  return m;
}

Tridiag matrix_a(int T, double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("matrix_a: mu must be positive");
  Tridiag m = matrix_b(T);
  for (double& d : m.diag) d += mu;
  return m;
}

Tridiag matrix_h(int T, double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("matrix_h: mu must be positive");
  Tridiag m;
  m.diag.assign(T, 1.0 + 2.0 / mu);
  m.diag[T - 1] = 1.0 + 1.0 / mu;
  m.off.assign(T - 1, -1.0 / mu);
  return m;
}

DenseMatrix to_dense(const Tridiag& m) {
  int T = m.size();
  DenseMatrix d(T, Vec(T, 0.0));
  for (int i = 0; i < T; ++i) {
    d[i][i] = m.diag[i];
    if (i + 1 < T) {
      d[i][i + 1] = m.off[i];
      d[i + 1][i] = m.off[i];
    }
  }
  return d;
}

Interval gershgorin_interval(const DenseMatrix& m) {
  size_t n = m.size();
  if (n == 0) throw std::invalid_argument("gershgorin_interval: empty matrix");
  for (const auto& row : m)
    if (row.size() != n) throw std::invalid_argument("gershgorin_interval: matrix not square");
  Interval iv{std::numeric_limits<double>::infinity(),
              -std::numeric_limits<double>::infinity()};
  for (size_t i = 0; i < n; ++i) {
    double r = 0.0;
    for (size_t j = 0; j < n; ++j)
      if (j != i) r += std::abs(m[i][j]);
    iv.lo = std::min(iv.lo, m[i][i] - r);
    iv.hi = std::max(iv.hi, m[i][i] + r);
  }
  return iv;
}

Interval gershgorin_interval(const Tridiag& m) { return gershgorin_interval(to_dense(m)); }

namespace {

// Number of eigenvalues strictly below x, from the sign changes of the
// LDL^T pivots of (M - x I).
int sturm_count_below(const Tridiag& m, double x) {
  constexpr double kPivotFloor = 1e-300;
  int count = 0;
  double q = m.diag[0] - x;
  if (std::abs(q) < kPivotFloor) q = -kPivotFloor;
  if (q < 0.0) ++count;
  for (int i = 1; i < m.size(); ++i) {
    q = (m.diag[i] - x) - m.off[i - 1] * m.off[i - 1] / q;
    if (std::abs(q) < kPivotFloor) q = -kPivotFloor;
    if (q < 0.0) ++count;
  }
  return count;
}

}  // namespace

Vec eigs_tridiag(const Tridiag& m) {
  int T = m.size();
  if (T < 1) throw std::invalid_argument("eigs_tridiag: empty matrix");
  if (T > 512) throw std::invalid_argument("eigs_tridiag: T must be <= 512");
  Interval iv = gershgorin_interval(m);
  double span = std::max(iv.hi - iv.lo, 1.0);
  double tol = 1e-14 * std::max(1.0, std::max(std::abs(iv.lo), std::abs(iv.hi)));
  Vec eigs(T);
  for (int k = 1; k <= T; ++k) {
    double lo = iv.lo - 1e-12 * span, hi = iv.hi + 1e-12 * span;
    while (hi - lo > tol) {
      double mid = 0.5 * (lo + hi);
      if (sturm_count_below(m, mid) >= k)
        hi = mid;
      else
        lo = mid;
    }
    eigs[k - 1] = 0.5 * (lo + hi);
  }
  return eigs;
}

Vec solve_tridiag(const Tridiag& m, Vec rhs) {
  int T = m.size();
  if (static_cast<int>(rhs.size()) != T)
    throw std::invalid_argument("solve_tridiag: size mismatch");
  Vec c_star(std::max(T - 1, 0)), d_star(T);
  double denom = m.diag[0];
  if (T > 1) c_star[0] = m.off[0] / denom;
  d_star[0] = rhs[0] / denom;
  for (int i = 1; i < T; ++i) {
    denom = m.diag[i] - m.off[i - 1] * (i - 1 < T - 1 ? c_star[i - 1] : 0.0);
    if (i < T - 1) c_star[i] = m.off[i] / denom;
    d_star[i] = (rhs[i] - m.off[i - 1] * d_star[i - 1]) / denom;
  }
  Vec x(T);
  x[T - 1] = d_star[T - 1];
  for (int i = T - 2; i >= 0; --i) x[i] = d_star[i] - c_star[i] * x[i + 1];
  return x;
}

double tridiag_residual(const Tridiag& m, const Vec& x, const Vec& rhs) {
  int T = m.size();
  double scale = 1.0;
  for (double r : rhs) scale = std::max(scale, std::abs(r));
  double worst = 0.0;
  for (int i = 0; i < T; ++i) {
    double v = m.diag[i] * x[i];
    if (i > 0) v += m.off[i - 1] * x[i - 1];
    if (i + 1 < T) v += m.off[i] * x[i + 1];
    worst = std::max(worst, std::abs(v - rhs[i]));
  }
  return worst / scale;
}

std::pair<Vec, double> psi_optimum(double mu, const Vec& xstar_seq) {
  if (!(mu > 0.0)) throw std::invalid_argument("psi_optimum: mu must be positive");
  if (xstar_seq.empty()) throw std::invalid_argument("psi_optimum: empty sequence");
  int T = static_cast<int>(xstar_seq.size());
  Tridiag A = matrix_a(T, mu);
  Vec xbar = solve_tridiag(A, scale(mu, xstar_seq));
  // (mu/2) xstar^T (I - mu A^{-1}) xstar = (mu/2) (||xstar||^2 - <xstar, xbar>)
  double value = 0.5 * mu * (norm_sq(xstar_seq) - dot(xstar_seq, xbar));
  return {std::move(xbar), value};
}

double psi_value(double mu, const Vec& xstar_seq, const Vec& x) {
  require_same_dim(xstar_seq, x, "psi_value");
  Tridiag B = matrix_b(static_cast<int>(x.size()));
  double quad = 0.0;
  int T = B.size();
  for (int i = 0; i < T; ++i) {
    quad += B.diag[i] * x[i] * x[i];
    if (i + 1 < T) quad += 2.0 * B.off[i] * x[i] * x[i + 1];
  }
  return 0.5 * mu * dist_sq(x, xstar_seq) + 0.5 * quad;
}

SpectralModel make_spectral_model(int T, double mu) {
  if (T < 1) throw std::invalid_argument("make_spectral_model: T must be >= 1");
  if (!(mu > 0.0)) throw std::invalid_argument("make_spectral_model: mu must be positive");
  SpectralModel sm;
  sm.T = T;
  sm.mu = mu;
  sm.B = matrix_b(T);
  sm.A = matrix_a(T, mu);
  sm.H = matrix_h(T, mu);
  double rmu = std::sqrt(mu), rmu4 = std::sqrt(mu + 4.0);
  sm.rho = (rmu4 - rmu) / (rmu4 + rmu);
  sm.xi = mu + 2.0;

  // rho^{-T} must stay representable.
  if (-static_cast<double>(T) * std::log(sm.rho) > 690.0)
    throw numeric_range_error("make_spectral_model: rho^{-T} overflows double range");

  double rho = sm.rho;
  double one_minus_rho_sq = 1.0 - rho * rho;
  auto w_at = [&](int t) {
    if (t == 0) return 0.0;
    return rho / one_minus_rho_sq * (std::pow(rho, -t) - std::pow(rho, t));
  };
  sm.w.resize(T);
  for (int t = 1; t <= T; ++t) sm.w[t - 1] = w_at(t);

  double denom = (sm.xi - 1.0) * w_at(T) - w_at(T - 1);
  if (!(denom > 0.0))
    throw std::runtime_error("make_spectral_model: nonpositive v_T denominator");
  double vT = 1.0 / denom;
  sm.c1 = vT * ((sm.xi - 1.0) * rho - rho * rho) / one_minus_rho_sq;
  sm.c2 = vT * (1.0 - (sm.xi - 1.0) * rho) / one_minus_rho_sq;
  sm.v.resize(T);
  for (int t = 1; t <= T; ++t)
    sm.v[t - 1] = sm.c1 * std::pow(rho, -(T - t)) + sm.c2 * std::pow(rho, T - t);
  return sm;
}

DenseMatrix h_inverse_closed_form(int T, double mu) {
  SpectralModel sm = make_spectral_model(T, mu);
  DenseMatrix inv(T, Vec(T, 0.0));
  for (int i = 1; i <= T; ++i)
    for (int j = i; j <= T; ++j) {
      double entry = mu * sm.w[i - 1] * sm.v[j - 1];
      inv[i - 1][j - 1] = entry;
      inv[j - 1][i - 1] = entry;
    }
  return inv;
}

}  // namespace oco

#pragma once

#include <utility>
#include <vector>

#include "ocoswitch/core.hpp"

namespace oco {

// Symmetric tridiagonal matrix: diag has size T, off has size T-1.
struct Tridiag {
  Vec diag;
  Vec off;
  int size() const { return static_cast<int>(diag.size()); }
};

using DenseMatrix = std::vector<Vec>;

// Movement quadratic form: diag (2, ..., 2, 1), off-diagonal -1.
Tridiag matrix_b(int T);
// matrix_b shifted by mu on the diagonal.
Tridiag matrix_a(int T, double mu);
// Stationarity system of the offline optimum for uniform curvature mu:
// diag 1 + 2/mu (last entry 1 + 1/mu), off-diagonal -1/mu. Equals A/mu.
Tridiag matrix_h(int T, double mu);

DenseMatrix to_dense(const Tridiag& m);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Eigenvalue enclosure from row-disc bounds; input must be square symmetric.
Interval gershgorin_interval(const DenseMatrix& m);
Interval gershgorin_interval(const Tridiag& m);

// All eigenvalues, ascending, via bisection on Sturm sign counts. T <= 512.
Vec eigs_tridiag(const Tridiag& m);

// Thomas algorithm; the systems used here are strictly diagonally dominant,
// so elimination runs without pivoting.
Vec solve_tridiag(const Tridiag& m, Vec rhs);

// Residual max_i |(M x - rhs)_i| / max(1, max_i |rhs_i|).
double tridiag_residual(const Tridiag& m, const Vec& x, const Vec& rhs);

// Minimizer and optimal value of
//   psi(x) = (mu/2) ||x - xstar||^2 + (1/2) x^T B x
// computed through the shifted system A xbar = mu xstar.
std::pair<Vec, double> psi_optimum(double mu, const Vec& xstar_seq);

// psi evaluated at an arbitrary point (cross-check helper).
double psi_value(double mu, const Vec& xstar_seq, const Vec& x);

// Closed-form inverse of matrix_h(T, mu); entries mu * w_min(i,j) * v_max(i,j).
// Throws numeric_range_error when rho^{-T} would overflow.
DenseMatrix h_inverse_closed_form(int T, double mu);

// Bundle of the recurring objects for a given horizon and curvature.
struct SpectralModel {
  int T = 0;
  double mu = 0.0;
  Tridiag B, A, H;
  double rho = 0.0;  // decay base in (0, 1)
  double xi = 0.0;   // mu + 2
  Vec w, v;          // closed-form inverse factors, 1-based values stored at [t-1]
  double c1 = 0.0, c2 = 0.0;
};

SpectralModel make_spectral_model(int T, double mu);

}  // namespace oco

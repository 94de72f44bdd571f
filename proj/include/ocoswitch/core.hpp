#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace oco {

using Vec = std::vector<double>;

// Margin below which a point is considered to sit on the boundary of a set.
inline constexpr double kInteriorMargin = 1e-9;
// Absolute slack used by per-round contraction assertions.
inline constexpr double kContractionSlack = 1e-9;
// Absolute slack used when flagging a theoretical bound as satisfied.
inline constexpr double kBoundSlack = 1e-9;

// Thrown when a gradient is requested for a round the caller may not see yet.
class information_violation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Thrown when an operation is well-defined mathematically but not provided
// for the given combination of inputs (e.g. oracle minimizer on a ball).
class unsupported_operation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown by the exact quadratic solver when the unconstrained solution leaves
// the feasible set, i.e. the interior-equivalence guarantee does not apply.
class constrained_case_unsupported : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when a closed-form expression would overflow 64-bit floating point.
class numeric_range_error : public std::range_error {
 public:
  using std::range_error::range_error;
};

inline void require_same_dim(const Vec& a, const Vec& b, const char* what) {
  if (a.size() != b.size()) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
  }
}

inline double dot(const Vec& a, const Vec& b) {
  require_same_dim(a, b, "dot");
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm_sq(const Vec& a) { return dot(a, a); }

inline double norm(const Vec& a) { return std::sqrt(norm_sq(a)); }

inline Vec add(const Vec& a, const Vec& b) {
  require_same_dim(a, b, "add");
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
  require_same_dim(a, b, "sub");
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vec scale(double s, const Vec& a) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

inline double dist_sq(const Vec& a, const Vec& b) { return norm_sq(sub(a, b)); }

inline double dist(const Vec& a, const Vec& b) { return std::sqrt(dist_sq(a, b)); }

// Deterministic helper around mt19937_64; avoids distribution objects whose
// output is implementation-defined.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi) {
    double u = (gen_() >> 11) * 0x1.0p-53;  // [0, 1)
    return lo + (hi - lo) * u;
  }

  // Inclusive range.
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(gen_() % static_cast<uint64_t>(hi - lo + 1));
  }

  uint64_t next() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace oco

#include "ocoswitch/adversary.hpp"

#include <cmath>
#include <sstream>

namespace oco {

namespace {

std::string num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

Instance gen_omgd_lb(double mu, double ell, double theta, int d) {
  if (theta == 0.0)
    throw std::invalid_argument("gen_omgd_lb: theta must be nonzero");
  if (!(0.0 < mu && mu <= ell))
    throw std::invalid_argument("gen_omgd_lb: need 0 < mu <= ell");
  if (d < 1) throw std::invalid_argument("gen_omgd_lb: d must be >= 1");
  Vec target(d, 0.0);
  target[0] = theta;
  return make_instance(
      FeasibleSet::all_space(d), Vec(d, 0.0),
      {FunctionModel::isotropic_quadratic(mu, target),
       FunctionModel::isotropic_quadratic(ell, Vec(d, 0.0))},
      Switching::Quadratic,
      "omgd-lb(mu=" + num(mu) + ",ell=" + num(ell) + ",theta=" + num(theta) +
          ",d=" + std::to_string(d) + ")");
}

Instance gen_slow(SlowMode mode, double value, int T) {
  if (T < 1) throw std::invalid_argument("gen_slow: T must be >= 1");
  double a = mode == SlowMode::Mu ? 2.0 : value;
  if (!(a > 0.0)) throw std::invalid_argument("gen_slow: curvature must be positive");
  std::vector<FunctionModel> fs(T, FunctionModel::isotropic_quadratic(a, {1.0}));
  std::string id = mode == SlowMode::Mu
                       ? "slow-mu(T=" + std::to_string(T) + ")"
                       : "slow-L(ell=" + num(value) + ",T=" + std::to_string(T) + ")";
  return make_instance(FeasibleSet::all_space(1), {0.0}, std::move(fs),
                       Switching::Quadratic, std::move(id));
}

Instance gen_preliminary(double ell) {
  if (!(ell > 0.0))
    throw std::invalid_argument("gen_preliminary: ell must be positive");
  return make_instance(FeasibleSet::all_space(1), {0.0},
                       {FunctionModel::isotropic_quadratic(ell, {1.0})},
                       Switching::Quadratic,
                       "preliminary-L(ell=" + num(ell) + ")");
}

Instance gen_modified(double mu, double ell, int Tprime) {
  if (!(0.0 < mu && mu <= ell))
    throw std::invalid_argument("gen_modified: need 0 < mu <= ell");
  if (Tprime < 1) throw std::invalid_argument("gen_modified: Tprime must be >= 1");
  std::vector<FunctionModel> fs(Tprime,
                                FunctionModel::isotropic_quadratic(mu, {0.0}));
  fs.push_back(FunctionModel::isotropic_quadratic(ell, {1.0}));
  return make_instance(
      FeasibleSet::all_space(1), {0.0}, std::move(fs), Switching::Quadratic,
      "modified-L-sqrtmu(mu=" + num(mu) + ",ell=" + num(ell) +
          ",Tprime=" + std::to_string(Tprime) + ")");
}

double linear_lb_theta_max(double mu) {
  if (!(mu > 0.0))
    throw std::invalid_argument("linear_lb_theta_max: mu must be positive");
  return (std::sqrt(129.0) - 9.0) / (2.0 * mu);
}

Instance gen_linear_lb(double mu, double theta) {
  if (!(mu > 0.0))
    throw std::invalid_argument("gen_linear_lb: mu must be positive");
  if (!(theta > 1.0 / mu) || theta > linear_lb_theta_max(mu) + 1e-12)
    throw std::invalid_argument(
        "gen_linear_lb: theta must lie in (1/mu, (sqrt(129)-9)/(2 mu)]");
  return make_instance(
      FeasibleSet::all_space(1), {0.0},
      {FunctionModel::isotropic_quadratic(mu, {theta}),
       FunctionModel::isotropic_quadratic(mu, {0.0})},
      Switching::Linear,
      "linear-lb(mu=" + num(mu) + ",theta=" + num(theta) + ")");
}

Instance make_adversary(const std::string& name, const AdversaryParams& p) {
  if (name == "omgd-lb") return gen_omgd_lb(p.mu, p.ell, p.theta, p.d);
  if (name == "slow-mu") return gen_slow(SlowMode::Mu, p.mu, p.T);
  if (name == "slow-L") return gen_slow(SlowMode::Ell, p.ell, p.T);
  if (name == "preliminary-L") return gen_preliminary(p.ell);
  if (name == "modified-L-sqrtmu") return gen_modified(p.mu, p.ell, p.Tprime);
  if (name == "linear-lb") return gen_linear_lb(p.mu, p.theta);
  throw std::invalid_argument("make_adversary: unknown recipe '" + name + "'");
}

}  // namespace oco

#include "ocoswitch/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#include "ocoswitch/adversary.hpp"

namespace oco {

namespace {

constexpr double kTridiagResidualTol = 1e-10;
constexpr double kSubgradResidualTol = 1e-6;

double ratio_of(double num, double den) {
  if (den > 0.0) return num / den;
  return num <= 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
}

bool opt_is_verified(const OptSolution& opt) {
  switch (opt.method) {
    case OptMethod::Tridiagonal:
    case OptMethod::ClosedFormT2:
      return opt.residual <= kTridiagResidualTol;
    case OptMethod::Subgradient:
      return opt.residual <= kSubgradResidualTol;
    case OptMethod::BruteForce:
      return false;  // grid value only brackets the optimum
  }
  return false;
}

bool set_bounded(const FeasibleSet& set) {
  return set.kind != FeasibleSet::Kind::AllSpace;
}

double max_dist_in_set(const FeasibleSet& set, const Vec& c) {
  switch (set.kind) {
    case FeasibleSet::Kind::Box: {
      double s = 0.0;
      for (size_t i = 0; i < c.size(); ++i) {
        double gap = std::max(std::abs(set.lower[i] - c[i]),
                              std::abs(set.upper[i] - c[i]));
        s += gap * gap;
      }
      return std::sqrt(s);
    }
    case FeasibleSet::Kind::Ball:
      return dist(set.center, c) + set.radius;
    case FeasibleSet::Kind::AllSpace:
      break;
  }
  throw unsupported_operation("max_dist_in_set: unbounded set");
}

}  // namespace

CostTotals evaluate_costs(const Instance& inst, const Trajectory& traj) {
  if (static_cast<int>(traj.actions.size()) != inst.T)
    throw std::invalid_argument("evaluate_costs: trajectory length mismatch");
  CostTotals ct;
  const Vec* prev = &inst.x0;
  for (int t = 0; t < inst.T; ++t) {
    require_same_dim(traj.actions[t], inst.x0, "evaluate_costs");
    ct.hitting += eval(inst.functions[t], traj.actions[t]);
    double d = dist(traj.actions[t], *prev);
    ct.switching += inst.switching == Switching::Quadratic ? 0.5 * d * d : d;
    prev = &traj.actions[t];
  }
  ct.total = ct.hitting + ct.switching;
  return ct;
}

double set_diameter(const FeasibleSet& set) {
  switch (set.kind) {
    case FeasibleSet::Kind::Box:
      return dist(set.upper, set.lower);
    case FeasibleSet::Kind::Ball:
      return 2.0 * set.radius;
    case FeasibleSet::Kind::AllSpace:
      break;
  }
  throw std::invalid_argument("set_diameter: unbounded set");
}

double measured_grad_bound(const Instance& inst) {
  double g = 0.0;
  for (const FunctionModel& f : inst.functions) {
    switch (f.kind) {
      case FunctionModel::Kind::IsotropicQuadratic:
        g = std::max(g, f.a * max_dist_in_set(inst.set, f.c));
        break;
      case FunctionModel::Kind::DiagonalQuadratic: {
        if (inst.set.kind != FeasibleSet::Kind::Box)
          throw unsupported_operation(
              "measured_grad_bound: diagonal quadratics need a box set");
        double s = 0.0;
        for (int i = 0; i < inst.d; ++i) {
          double gap = std::max(std::abs(inst.set.lower[i] - f.c[i]),
                                std::abs(inst.set.upper[i] - f.c[i]));
          s += f.a_diag[i] * f.a_diag[i] * gap * gap;
        }
        g = std::max(g, std::sqrt(s));
        break;
      }
      case FunctionModel::Kind::ExternalOracle:
        throw unsupported_operation(
            "measured_grad_bound: external oracles carry no gradient bound");
    }
  }
  return g;
}

CostReport make_report(const Instance& inst, const std::string& algorithm,
                       const Trajectory& traj, const OptSolution& opt,
                       const std::vector<std::string>& bound_filter,
                       bool with_comparator) {
  CostTotals ct = evaluate_costs(inst, traj);
  CostReport r;
  r.instance_id = inst.id;
  r.algorithm = algorithm;
  r.hitting = ct.hitting;
  r.switching = ct.switching;
  r.total = ct.total;
  r.opt = opt.objective;
  r.opt_method = opt_method_name(opt.method);
  r.opt_residual = opt.residual;
  r.opt_verified = opt_is_verified(opt);
  r.cr = ratio_of(r.total, r.opt);
  r.regret = r.total - r.opt;
  r.path = path_stats(inst);

  bool interior = true;
  for (const FunctionModel& f : inst.functions)
    interior = interior && minimizer(f, inst.set).interior;

  if (with_comparator) {
    std::vector<Vec> seq(inst.T);
    for (int t = 0; t < inst.T; ++t)
      seq[t] = minimizer(inst.functions[t], inst.set).point;
    Trajectory comp = finalize_trajectory(inst, std::move(seq));
    r.comparator_ratio = ratio_of(r.total, comp.total());
  }

  bool is_omgd = algorithm == "omgd";
  bool quadratic = inst.switching == Switching::Quadratic;

  auto wanted = [&](const std::string& name) {
    if (bound_filter.empty()) return true;
    return std::find(bound_filter.begin(), bound_filter.end(), name) !=
           bound_filter.end();
  };
  auto add = [&](BoundReport b, double measured, bool upper, bool mandatory) {
    if (!wanted(b.name)) return;
    BoundCheck c;
    c.measured = measured;
    c.slack = upper ? b.value - measured : measured - b.value;
    c.satisfied = c.slack >= -kBoundSlack;
    c.mandatory = mandatory;
    c.bound = std::move(b);
    r.checks.push_back(std::move(c));
  };

  add(omgd_total_cost_bound(r.path, inst.mu, inst.ell, optimal_alpha(r.path),
                            inst.switching),
      r.total, true, is_omgd);
  add(opt_lower_bound(r.path, inst.mu, inst.switching), r.opt, false,
      r.opt_verified);
  add(opt_upper_minseq(r.path, inst.switching), r.opt, true, r.opt_verified);

  double q = r.path.p2T + r.path.x1norm * r.path.x1norm;
  if (q > 0.0) {
    for (BoundReport& b : cr_bounds(r.path, inst.mu, inst.ell)) {
      if (b.name == "cr-upper-comparator") {
        if (r.comparator_ratio)
          add(std::move(b), *r.comparator_ratio, true,
              is_omgd && quadratic && interior);
      } else if (b.kind == BoundKind::UpperOnCr) {
        bool matches = (b.name == "cr-upper-linear") == !quadratic;
        add(std::move(b), r.cr, true,
            matches && is_omgd && interior && r.opt_verified);
      } else {
        add(std::move(b), r.cr, false, false);
      }
    }
  }

  if (set_bounded(inst.set)) {
    double G = measured_grad_bound(inst);
    double D = set_diameter(inst.set);
    for (BoundReport& b : regret_bounds(r.path, inst.mu, inst.ell, G, D)) {
      bool upper = b.kind == BoundKind::UpperOnRegret;
      add(std::move(b), r.regret, upper,
          upper && is_omgd && quadratic && r.opt_verified);
    }
  }

  return r;
}

namespace {

void collate(const std::vector<CostReport>& reports, Verdict& v) {
  for (const CostReport& r : reports) {
    for (const BoundCheck& c : r.checks) {
      v.rows.push_back({r.instance_id, r.algorithm, c.bound.name, c.bound.value,
                        c.measured, c.slack, c.satisfied, c.mandatory});
      if (c.mandatory && !c.satisfied) v.ok = false;
    }
  }
}

}  // namespace

Verdict verify(const Instance& inst, const std::vector<CostReport>& reports) {
  for (const CostReport& r : reports)
    if (r.instance_id != inst.id)
      throw std::invalid_argument("verify: report does not belong to instance");
  Verdict v;
  collate(reports, v);
  return v;
}

OptSolution compute_opt(const Instance& inst, const std::string& method) {
  if (method == "tridiagonal") return solve_opt_quadratic(inst);
  if (method == "subgradient") return solve_opt_linear(inst);
  if (method == "brute-force") return brute_force_auto(inst);
  if (method == "closed-form-T2") {
    if (inst.T != 2 || inst.switching != Switching::Quadratic)
      throw std::invalid_argument(
          "compute_opt: closed-form-T2 needs T=2 and quadratic switching");
    const FunctionModel& f1 = inst.functions[0];
    const FunctionModel& f2 = inst.functions[1];
    if (f1.kind != FunctionModel::Kind::IsotropicQuadratic ||
        f2.kind != FunctionModel::Kind::IsotropicQuadratic || f1.a != f2.a)
      throw std::invalid_argument(
          "compute_opt: closed-form-T2 needs uniform isotropic curvature");
    if (norm(inst.x0) != 0.0)
      throw std::invalid_argument("compute_opt: closed-form-T2 needs x0 = 0");
    return closed_form_opt_T2(f1.a, f1.c, f2.c);
  }
  if (method == "auto") {
    if (inst.switching == Switching::Linear) return solve_opt_linear(inst);
    try {
      return solve_opt_quadratic(inst);
    } catch (const constrained_case_unsupported&) {
      return brute_force_auto(inst);
    } catch (const unsupported_operation&) {
      return brute_force_auto(inst);
    }
  }
  throw std::invalid_argument("compute_opt: unknown method '" + method + "'");
}

OptSolution brute_force_auto(const Instance& inst, int points_per_axis) {
  Vec lo = inst.x0, hi = inst.x0;
  for (const FunctionModel& f : inst.functions) {
    Vec star = minimizer(f, inst.set).point;
    for (int i = 0; i < inst.d; ++i) {
      lo[i] = std::min(lo[i], star[i]);
      hi[i] = std::max(hi[i], star[i]);
    }
  }
  int vars = 0;
  for (int i = 0; i < inst.d; ++i)
    if (hi[i] > lo[i]) ++vars;
  vars *= inst.T;

  int P = points_per_axis;
  if (P <= 0) {
    if (vars == 0) {
      P = 1;
    } else {
      double budget = std::min(brute_force_budget(), 1e7);
      P = static_cast<int>(std::floor(std::pow(budget, 1.0 / vars)));
      P = std::max(2, std::min(P, 101));
      while (P > 2 && vars * std::log(static_cast<double>(P)) > std::log(budget))
        --P;
    }
  }
  return brute_force_opt(inst, lo, hi, P);
}

std::vector<Instance> random_corpus(const CorpusParams& p) {
  Rng rng(p.seed);
  auto in_ball = [&](int d, double radius) {
    for (;;) {
      Vec v(d);
      for (int i = 0; i < d; ++i) v[i] = rng.uniform(-1.0, 1.0);
      if (norm_sq(v) <= 1.0) return scale(radius, v);
    }
  };

  std::vector<Instance> out;
  out.reserve(p.count);
  for (int i = 0; i < p.count; ++i) {
    int d = rng.uniform_int(1, p.d_max);
    int T = rng.uniform_int(p.t_min, p.t_max);
    double mu = rng.uniform(p.mu_lo, p.mu_hi);
    double ell = mu * rng.uniform(p.ratio_lo, p.ratio_hi);

    FeasibleSet set = FeasibleSet::all_space(d);
    double rmax = p.center_radius;
    if (p.set_kind == FeasibleSet::Kind::Box) {
      set = FeasibleSet::box(Vec(d, -p.halfwidth), Vec(d, p.halfwidth));
      rmax = std::min(rmax, 0.9 * p.halfwidth);
    } else if (p.set_kind == FeasibleSet::Kind::Ball) {
      set = FeasibleSet::ball(Vec(d, 0.0), p.halfwidth);
      rmax = std::min(rmax, 0.9 * p.halfwidth);
    }

    std::vector<FunctionModel> fs;
    fs.reserve(T);
    for (int t = 0; t < T; ++t)
      fs.push_back(FunctionModel::isotropic_quadratic(rng.uniform(mu, ell),
                                                      in_ball(d, rmax)));
    out.push_back(make_instance(std::move(set), Vec(d, 0.0), std::move(fs),
                                p.switching,
                                "corpus-" + std::to_string(p.seed) + "-" +
                                    std::to_string(i)));
  }
  return out;
}

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<double> to_number_list(const Json& j) {
  if (j.is_array()) return j.get<std::vector<double>>();
  return {j.get<double>()};
}

std::vector<int> to_int_list(const Json& j) {
  if (j.is_array()) return j.get<std::vector<int>>();
  return {j.get<int>()};
}

SolverSpec parse_solver(const Json& j) {
  SolverSpec spec;
  std::string kind;
  if (j.is_string()) {
    kind = j.get<std::string>();
  } else {
    kind = j.at("kind").get<std::string>();
    spec.k = j.value("k", 0);
    spec.step = j.value("step", 0.0);
  }
  if (kind == "omgd") {
    spec.kind = SolverKind::Omgd;
  } else if (kind == "omgd-nag") {
    spec.kind = SolverKind::OmgdNag;
  } else if (kind == "omgd-nag-printed") {
    spec.kind = SolverKind::OmgdNag;
    spec.nag_form = NagForm::Printed;
  } else if (kind == "chase-minimizer") {
    spec.kind = SolverKind::ChaseMinimizer;
  } else if (kind == "stay-put") {
    spec.kind = SolverKind::StayPut;
  } else {
    throw std::invalid_argument("unknown solver '" + kind + "'");
  }
  return spec;
}

std::vector<Instance> instances_from_recipe(const Json& j) {
  std::string name = j.at("name").get<std::string>();
  std::vector<double> mus = j.contains("mu") ? to_number_list(j.at("mu"))
                                             : std::vector<double>{1.0};
  std::vector<double> ells = j.contains("ell") ? to_number_list(j.at("ell"))
                                               : std::vector<double>{1.0};
  std::vector<double> thetas = j.contains("theta") ? to_number_list(j.at("theta"))
                                                   : std::vector<double>{1.0};
  std::vector<int> tprimes = j.contains("Tprime") ? to_int_list(j.at("Tprime"))
                                                  : std::vector<int>{10};
  std::vector<int> horizons =
      j.contains("T") ? to_int_list(j.at("T")) : std::vector<int>{10};
  std::vector<int> dims = j.contains("d") ? to_int_list(j.at("d"))
                                          : std::vector<int>{1};

  std::vector<Instance> out;
  for (double mu : mus)
    for (double ell : ells)
      for (double theta : thetas)
        for (int tprime : tprimes)
          for (int T : horizons)
            for (int d : dims) {
              AdversaryParams p;
              p.mu = mu;
              p.ell = ell;
              p.theta = theta;
              p.Tprime = tprime;
              p.T = T;
              p.d = d;
              out.push_back(make_adversary(name, p));
            }
  return out;
}

CorpusParams corpus_from_json(const Json& j, uint64_t seed) {
  CorpusParams p;
  p.count = j.value("count", p.count);
  p.d_max = j.value("d_max", p.d_max);
  p.t_min = j.value("t_min", p.t_min);
  p.t_max = j.value("t_max", p.t_max);
  p.mu_lo = j.value("mu_lo", p.mu_lo);
  p.mu_hi = j.value("mu_hi", p.mu_hi);
  p.ratio_lo = j.value("ratio_lo", p.ratio_lo);
  p.ratio_hi = j.value("ratio_hi", p.ratio_hi);
  p.center_radius = j.value("center_radius", p.center_radius);
  p.halfwidth = j.value("halfwidth", p.halfwidth);
  std::string sw = j.value("switching", std::string("quadratic"));
  p.switching = sw == "linear" ? Switching::Linear : Switching::Quadratic;
  std::string set = j.value("set", std::string("all-space"));
  if (set == "box")
    p.set_kind = FeasibleSet::Kind::Box;
  else if (set == "ball")
    p.set_kind = FeasibleSet::Kind::Ball;
  p.seed = seed;
  return p;
}

}  // namespace

ExperimentConfig config_from_json(const Json& j) {
  ExperimentConfig cfg;
  cfg.seed = j.value("seed", uint64_t{0});
  cfg.opt_method = j.value("opt_method", std::string("auto"));
  cfg.out_dir = j.value("out_dir", std::string{});
  cfg.corrupt_scale = j.value("corrupt_scale", 0.0);
  cfg.comparator_minseq =
      j.value("comparator", std::string{}) == "minimizer-sequence";
  if (j.contains("bounds"))
    cfg.bounds = j.at("bounds").get<std::vector<std::string>>();

  if (j.contains("instance") == j.contains("recipe"))
    throw std::invalid_argument(
        "config: exactly one of 'instance' or 'recipe' is required");

  if (j.contains("instance")) {
    const Json& src = j.at("instance");
    if (src.is_string()) {
      std::ifstream in(src.get<std::string>());
      if (!in)
        throw std::runtime_error("cannot read instance file: " +
                                 src.get<std::string>());
      Json inner = Json::parse(in);
      cfg.instances.push_back(instance_from_json(inner));
    } else if (src.is_array()) {
      for (const Json& item : src) cfg.instances.push_back(instance_from_json(item));
    } else if (src.contains("random")) {
      cfg.instances = random_corpus(corpus_from_json(src.at("random"), cfg.seed));
    } else {
      cfg.instances.push_back(instance_from_json(src));
    }
  } else {
    cfg.instances = instances_from_recipe(j.at("recipe"));
  }

  if (j.contains("solvers"))
    for (const Json& s : j.at("solvers")) cfg.solvers.push_back(parse_solver(s));
  if (cfg.solvers.empty()) cfg.solvers.push_back(SolverSpec{});
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config: " + path);
  return config_from_json(Json::parse(in));
}

Json report_to_json(const CostReport& r) {
  Json j;
  j["instance_id"] = r.instance_id;
  j["algorithm"] = r.algorithm;
  j["total"] = r.total;
  j["opt"] = r.opt;
  j["cr"] = r.cr;
  j["regret"] = r.regret;
  j["path_pT"] = r.path.pT;
  j["path_p2T"] = r.path.p2T;
  j["x1norm"] = r.path.x1norm;
  Json checks = Json::array();
  for (const BoundCheck& c : r.checks) {
    Json cj;
    cj["name"] = c.bound.name;
    cj["theoretical"] = c.bound.value;
    cj["measured"] = c.measured;
    cj["satisfied"] = c.satisfied;
    cj["slack"] = c.slack;
    checks.push_back(std::move(cj));
  }
  j["bounds"] = std::move(checks);
  return j;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.instances.empty())
    throw std::invalid_argument("run_experiment: no instances");
  if (cfg.solvers.empty())
    throw std::invalid_argument("run_experiment: no solvers");

  ExperimentResult res;
  std::string csv;
  csv += "instance_id,algorithm,t,hitting_cost,switching_cost,cum_total,"
         "dist_to_minimizer_sq\n";

  for (const Instance& inst : cfg.instances) {
    OptSolution opt = compute_opt(inst, cfg.opt_method);
    std::vector<Vec> stars(inst.T);
    for (int t = 0; t < inst.T; ++t)
      stars[t] = minimizer(inst.functions[t], inst.set).point;

    std::vector<CostReport> inst_reports;
    for (size_t s = 0; s < cfg.solvers.size(); ++s) {
      Trajectory traj = run_solver(inst, cfg.solvers[s]);
      if (s == 0 && cfg.corrupt_scale != 0.0) {
        std::vector<Vec> corrupted = traj.actions;
        for (Vec& x : corrupted) x = project(inst.set, scale(cfg.corrupt_scale, x));
        traj = finalize_trajectory(inst, std::move(corrupted));
      }
      std::string algo = solver_name(cfg.solvers[s]);

      double cum = 0.0;
      for (int t = 0; t < inst.T; ++t) {
        cum += traj.hitting[t] + traj.switching[t];
        csv += inst.id + "," + algo + "," + std::to_string(t + 1) + "," +
               fmt17(traj.hitting[t]) + "," + fmt17(traj.switching[t]) + "," +
               fmt17(cum) + "," + fmt17(dist_sq(traj.actions[t], stars[t])) + "\n";
      }
      inst_reports.push_back(make_report(inst, algo, traj, opt, cfg.bounds,
                                         cfg.comparator_minseq));
    }
    for (CostReport& r : inst_reports) res.reports.push_back(std::move(r));
  }

  res.verdict.ok = true;
  collate(res.reports, res.verdict);

  if (!cfg.out_dir.empty()) {
    std::filesystem::create_directories(cfg.out_dir);
    res.rounds_csv_path = cfg.out_dir + "/rounds.csv";
    res.summary_json_path = cfg.out_dir + "/summary.json";

    std::ofstream cout_(res.rounds_csv_path, std::ios::binary);
    if (!cout_) throw std::runtime_error("cannot write " + res.rounds_csv_path);
    cout_ << csv;

    Json summary = Json::array();
    for (const CostReport& r : res.reports) summary.push_back(report_to_json(r));
    std::ofstream jout(res.summary_json_path, std::ios::binary);
    if (!jout) throw std::runtime_error("cannot write " + res.summary_json_path);
    jout << summary.dump(2) << "\n";
  }
  return res;
}

}  // namespace oco

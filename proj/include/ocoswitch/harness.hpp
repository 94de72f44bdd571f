#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ocoswitch/bounds.hpp"
#include "ocoswitch/offline_opt.hpp"
#include "ocoswitch/online_solvers.hpp"
#include "ocoswitch/serialize.hpp"

namespace oco {

struct CostTotals {
  double hitting = 0.0;
  double switching = 0.0;
  double total = 0.0;
};

// Exact recomputation of a trajectory's cost, including the movement from
// the start point to the first action.
CostTotals evaluate_costs(const Instance& inst, const Trajectory& traj);

// One theoretical inequality with its measured counterpart. Mandatory
// checks are proven statements for the configuration at hand and fail the
// run; the rest are reported only.
struct BoundCheck {
  BoundReport bound;
  double measured = 0.0;
  double slack = 0.0;  // positive slack means the inequality holds
  bool satisfied = true;
  bool mandatory = false;
};

struct CostReport {
  std::string instance_id;
  std::string algorithm;
  double hitting = 0.0;
  double switching = 0.0;
  double total = 0.0;
  double opt = 0.0;
  double cr = 0.0;
  double regret = 0.0;
  std::optional<double> comparator_ratio;
  PathStats path;
  std::string opt_method;
  double opt_residual = 0.0;
  bool opt_verified = false;
  std::vector<BoundCheck> checks;
};

// Assemble a report for one solver run: costs, ratios, and every applicable
// bound check (filtered by name when bound_filter is nonempty). CR and
// regret assertions are demoted to advisory when the optimum is unverified.
CostReport make_report(const Instance& inst, const std::string& algorithm,
                       const Trajectory& traj, const OptSolution& opt,
                       const std::vector<std::string>& bound_filter = {},
                       bool with_comparator = false);

struct Verdict {
  struct Row {
    std::string instance_id;
    std::string algorithm;
    std::string name;
    double theoretical = 0.0;
    double measured = 0.0;
    double slack = 0.0;
    bool satisfied = true;
    bool mandatory = false;
  };
  std::vector<Row> rows;
  bool ok = true;  // every mandatory row satisfied
};

Verdict verify(const Instance& inst, const std::vector<CostReport>& reports);

// Dispatch on method name: auto (tridiagonal for quadratic switching,
// subgradient for linear, grid fallback for constrained cases), tridiagonal,
// subgradient, brute-force, closed-form-T2.
OptSolution compute_opt(const Instance& inst, const std::string& method);

// Brute force over an automatically derived bounding box of the minimizers
// and the start point; points_per_axis 0 picks the finest affordable grid.
OptSolution brute_force_auto(const Instance& inst, int points_per_axis = 0);

struct ExperimentConfig {
  std::vector<Instance> instances;
  std::vector<SolverSpec> solvers;
  std::string opt_method = "auto";
  std::vector<std::string> bounds;  // empty selects every applicable bound
  uint64_t seed = 0;
  std::string out_dir;
  bool comparator_minseq = false;
  double corrupt_scale = 0.0;  // nonzero: rescale the first solver's actions
};

ExperimentConfig config_from_json(const Json& j);
ExperimentConfig load_config(const std::string& path);

struct ExperimentResult {
  std::vector<CostReport> reports;
  Verdict verdict;
  std::string rounds_csv_path;
  std::string summary_json_path;
};

// Deterministic given the config; writes rounds.csv and summary.json when
// out_dir is set.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Random corpus: isotropic quadratics with curvature uniform in
// [mu, mu*ratio] per round and centers kept strictly inside the set.
struct CorpusParams {
  int count = 200;
  int d_max = 5;
  int t_min = 2;
  int t_max = 50;
  double mu_lo = 0.05;
  double mu_hi = 2.0;
  double ratio_lo = 1.0;
  double ratio_hi = 10.0;
  double center_radius = 2.0;
  Switching switching = Switching::Quadratic;
  FeasibleSet::Kind set_kind = FeasibleSet::Kind::AllSpace;
  double halfwidth = 3.0;  // box half-width or ball radius
  uint64_t seed = 1;
};

std::vector<Instance> random_corpus(const CorpusParams& p);

// Largest gradient norm attainable over the feasible set; requires a
// bounded set (box for any quadratic, ball for isotropic).
double measured_grad_bound(const Instance& inst);

// Euclidean diameter of a bounded set.
double set_diameter(const FeasibleSet& set);

Json report_to_json(const CostReport& r);

}  // namespace oco

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "ocoswitch/adversary.hpp"
#include "ocoswitch/harness.hpp"
#include "ocoswitch/serialize.hpp"
#include "ocoswitch/spectral.hpp"

namespace {

using namespace oco;

void print_reports(const ExperimentResult& res) {
  for (const CostReport& r : res.reports)
    std::printf("%s %s total=%.10g opt=%.10g (%s) cr=%.10g regret=%.10g\n",
                r.instance_id.c_str(), r.algorithm.c_str(), r.total, r.opt,
                r.opt_method.c_str(), r.cr, r.regret);
  if (!res.rounds_csv_path.empty())
    std::printf("wrote %s and %s\n", res.rounds_csv_path.c_str(),
                res.summary_json_path.c_str());
}

int cmd_run(const std::string& config_path) {
  ExperimentResult res = run_experiment(load_config(config_path));
  print_reports(res);
  return 0;
}

int cmd_verify(const std::string& config_path) {
  ExperimentResult res = run_experiment(load_config(config_path));
  print_reports(res);
  for (const Verdict::Row& row : res.verdict.rows)
    std::printf("[%s] %-40s theoretical=%.10g measured=%.10g slack=%.3g %s%s\n",
                row.satisfied ? "ok" : "FAIL", row.name.c_str(), row.theoretical,
                row.measured, row.slack, row.mandatory ? "mandatory" : "advisory",
                row.satisfied ? "" : " VIOLATED");
  std::printf("verdict: %s\n", res.verdict.ok ? "PASS" : "FAIL");
  return res.verdict.ok ? 0 : 1;
}

int cmd_opt(const std::string& config_path) {
  ExperimentConfig cfg = load_config(config_path);
  Json out = Json::array();
  for (const Instance& inst : cfg.instances) {
    OptSolution sol = compute_opt(inst, cfg.opt_method);
    Json j;
    j["instance_id"] = inst.id;
    j["objective"] = sol.objective;
    j["method"] = opt_method_name(sol.method);
    j["residual"] = sol.residual;
    j["actions"] = sol.trajectory.actions;
    out.push_back(std::move(j));
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_adversary(const std::string& name, const AdversaryParams& p,
                  const std::string& out_path) {
  Json j = instance_to_json(make_adversary(name, p));
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << j.dump(2) << "\n";
  }
  return 0;
}

int cmd_spectral(int T, double mu) {
  Json j;
  j["T"] = T;
  j["mu"] = mu;

  Tridiag B = matrix_b(T);
  Tridiag A = matrix_a(T, mu);
  Interval gb = gershgorin_interval(B);
  Interval ga = gershgorin_interval(A);
  j["gershgorin_B"] = {gb.lo, gb.hi};
  j["gershgorin_A"] = {ga.lo, ga.hi};

  if (T <= 512) {
    Vec eb = eigs_tridiag(B);
    j["eigs_B"] = eb;
    bool inside = true;
    for (double e : eb) inside = inside && e >= gb.lo - 1e-10 && e <= gb.hi + 1e-10;
    j["eigs_B_inside_gershgorin"] = inside;
  }

  SpectralModel model = make_spectral_model(T, mu);
  j["rho"] = model.rho;
  j["xi"] = model.xi;

  try {
    DenseMatrix hinv = h_inverse_closed_form(T, mu);
    Tridiag H = matrix_h(T, mu);
    double max_rel = 0.0, min_entry = hinv[0][0], max_row_sum = 0.0;
    for (int col = 0; col < T; ++col) {
      Vec e(T, 0.0);
      e[col] = 1.0;
      Vec x = solve_tridiag(H, e);
      for (int row = 0; row < T; ++row) {
        double ref = x[row];
        double rel = std::abs(hinv[row][col] - ref) / std::max(1e-30, std::abs(ref));
        max_rel = std::max(max_rel, rel);
      }
    }
    for (int row = 0; row < T; ++row) {
      double s = 0.0;
      for (int col = 0; col < T; ++col) {
        min_entry = std::min(min_entry, hinv[row][col]);
        s += std::abs(hinv[row][col]);
      }
      max_row_sum = std::max(max_row_sum, s);
    }
    j["h_inverse_max_rel_error"] = max_rel;
    j["h_inverse_min_entry"] = min_entry;
    j["h_inverse_max_abs_row_sum"] = max_row_sum;
  } catch (const numeric_range_error& e) {
    j["h_inverse_skipped"] = e.what();
  }

  std::cout << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online convex optimization with switching costs: solvers, "
               "offline optimum, bound verification"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run solvers from a config and emit reports");
  run->add_option("config", config_path, "JSON config file")->required();

  std::string verify_path;
  auto* ver = app.add_subcommand(
      "verify", "Run and assert every mandatory bound; nonzero exit on failure");
  ver->add_option("config", verify_path, "JSON config file")->required();

  std::string opt_path;
  auto* opt = app.add_subcommand("opt", "Compute the offline optimum only");
  opt->add_option("config", opt_path, "JSON config file")->required();

  std::string adv_name, adv_out;
  oco::AdversaryParams params;
  auto* adv = app.add_subcommand("adversary", "Emit a hard instance as JSON");
  adv->add_option("--name", adv_name, "recipe name")->required();
  adv->add_option("--mu", params.mu, "strong-convexity modulus");
  adv->add_option("--ell", params.ell, "smoothness modulus");
  adv->add_option("--theta", params.theta, "target offset");
  adv->add_option("--tprime", params.Tprime, "flat-round count");
  adv->add_option("--T", params.T, "horizon");
  adv->add_option("--d", params.d, "dimension");
  adv->add_option("--out", adv_out, "output file (default stdout)");

  int spec_T = 8;
  double spec_mu = 1.0;
  auto* spec = app.add_subcommand("spectral",
                                  "Dump eigenvalue intervals and inverse checks");
  spec->add_option("T", spec_T, "horizon")->required();
  spec->add_option("mu", spec_mu, "curvature")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path);
    if (ver->parsed()) return cmd_verify(verify_path);
    if (opt->parsed()) return cmd_opt(opt_path);
    if (adv->parsed()) return cmd_adversary(adv_name, params, adv_out);
    if (spec->parsed()) return cmd_spectral(spec_T, spec_mu);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qdcluster/commands.hpp"
#include "qdcluster/config.hpp"
#include "qdcluster/constants.hpp"

namespace {

struct GlobalOpts {
  std::string config_path;
  std::string out_path;
  std::vector<std::string> sets;
  // typed overrides; empty/unset means "leave config alone"
  std::string seed, mc_samples, sigma, n_range, model, graph, threads;
  bool unsafe_dims = false;
  bool no_budget_gate = false;
};

void add_common(CLI::App* cmd, GlobalOpts& g) {
  cmd->add_option("--config", g.config_path, "key = value config file");
  cmd->add_option("--out", g.out_path, "write machine output here instead of stdout");
  cmd->add_option("--seed", g.seed, "random seed (u64)");
  cmd->add_option("--mc-samples", g.mc_samples, "Monte Carlo sample count");
  cmd->add_option("--sigma", g.sigma, "combined phase-noise std in radians");
  cmd->add_option("--n-range", g.n_range, "qubit-count range A..B for fidelity-curve");
  cmd->add_option("--model", g.model, "noise model: bond_phase | widetext");
  cmd->add_option("--graph", g.graph, "interaction graph: chain | complete");
  cmd->add_option("--threads", g.threads, "Monte Carlo worker threads");
  cmd->add_option("--set", g.sets, "override any config key as key=value")
      ->take_all();
  cmd->add_flag("--unsafe-dims", g.unsafe_dims, "lift the dimension guard rails");
  cmd->add_flag("--no-budget-gate", g.no_budget_gate,
                "do not fail the params command on a budget violation");
}

qdc::RunConfig resolve_config(const GlobalOpts& g) {
  qdc::RunConfig cfg =
      g.config_path.empty() ? qdc::RunConfig() : qdc::RunConfig::from_file(g.config_path);
  for (const auto& kv : g.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw qdc::config_error("--set expects key=value, got '" + kv + "'");
    cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (!g.seed.empty()) cfg.set("seed", g.seed);
  if (!g.mc_samples.empty()) cfg.set("mc_samples", g.mc_samples);
  if (!g.sigma.empty()) cfg.set("sigma_rad", g.sigma);
  if (!g.model.empty()) cfg.set("model", g.model);
  if (!g.graph.empty()) cfg.set("graph", g.graph);
  if (!g.threads.empty()) cfg.set("threads", g.threads);
  if (!g.n_range.empty()) {
    const auto dots = g.n_range.find("..");
    if (dots == std::string::npos)
      throw qdc::config_error("--n-range expects A..B, got '" + g.n_range + "'");
    cfg.set("n_min", g.n_range.substr(0, dots));
    cfg.set("n_max", g.n_range.substr(dots + 2));
  }
  if (!g.out_path.empty()) cfg.set("out", g.out_path);
  if (g.unsafe_dims) cfg.set("unsafe_dims", "true");
  if (g.no_budget_gate) cfg.set("budget_gate", "false");
  return cfg;
}

int run(int (*cmd)(const qdc::RunConfig&, std::ostream&, std::ostream&),
        const GlobalOpts& g) {
  try {
    const qdc::RunConfig cfg = resolve_config(g);
    const std::string& out_path = cfg.get_string("out");
    if (out_path.empty()) return cmd(cfg, std::cout, std::cerr);
    std::ofstream f(out_path);
    if (!f) {
      std::cerr << "# error: cannot open output file: " << out_path << "\n";
      return 1;
    }
    const int rc = cmd(cfg, f, std::cerr);
    if (!f.good()) {
      std::cerr << "# error: write failed: " << out_path << "\n";
      return 1;
    }
    return rc;
  } catch (const std::exception& e) {
    std::cerr << "# error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"one-step cluster-state generation in dot-resonator devices: "
               "schedules, exact dynamics, stabilizer checks, noisy fidelity"};
  app.require_subcommand(1);

  GlobalOpts g;
  int (*selected)(const qdc::RunConfig&, std::ostream&, std::ostream&) = nullptr;

  auto* params = app.add_subcommand("params", "derived gate parameters and budget");
  add_common(params, g);
  params->callback([&] { selected = qdc::cmd_params; });

  auto* evolve = app.add_subcommand("evolve", "exact propagator vs effective gate");
  add_common(evolve, g);
  evolve->callback([&] { selected = qdc::cmd_evolve; });

  auto* cluster = app.add_subcommand("cluster", "stabilizer and formula verification");
  add_common(cluster, g);
  cluster->callback([&] { selected = qdc::cmd_cluster; });

  auto* curve = app.add_subcommand("fidelity-curve", "F(N) table as CSV");
  add_common(curve, g);
  curve->callback([&] { selected = qdc::cmd_fidelity_curve; });

  auto* mc = app.add_subcommand("montecarlo", "Monte Carlo fidelity estimate");
  add_common(mc, g);
  mc->callback([&] { selected = qdc::cmd_montecarlo; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  return run(selected, g);
}

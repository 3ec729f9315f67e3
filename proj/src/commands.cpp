#include "qdcluster/commands.hpp"

#include <charconv>
#include <chrono>

#include <json.hpp>

#include "qdcluster/cluster.hpp"
#include "qdcluster/constants.hpp"
#include "qdcluster/dotmodel.hpp"
#include "qdcluster/dynamics.hpp"
#include "qdcluster/noisemodel.hpp"

namespace qdc {

using json = nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

CircuitParams circuit_from(const RunConfig& cfg) {
  return CircuitParams(2.0 * pi * cfg.get_double("f_res_hz"), cfg.get_double("c_c_farad"),
                       cfg.get_double("c_tot_farad"), cfg.get_double("z0_ohm"),
                       cfg.get_double("quality_factor"), cfg.get_double("r_q_ohm"));
}

DotParams dot_from(const RunConfig& cfg) {
  return DotParams(cfg.get_double("t_c_uev"), cfg.get_double("delta_uev"));
}

DecoherenceInputs decoherence_from(const RunConfig& cfg) {
  DecoherenceInputs d;
  d.t2_star_s = cfg.get_double("t2_star_s");
  d.t1_s = cfg.get_double("t1_s");
  d.t2_bare_s = cfg.get_double("t2_bare_s");
  d.omega_gap_uev = cfg.get_double("omega_gap_uev");
  d.validate();
  return d;
}

// g0 from the circuit unless the config pins it explicitly
std::pair<double, std::string> g0_from(const RunConfig& cfg) {
  const double pinned = cfg.get_double("g0_over_2pi_hz");
  if (pinned > 0) return {2.0 * pi * pinned, "config"};
  return {coupling_g0(circuit_from(cfg)), "computed"};
}

NoiseSpec noise_from(const RunConfig& cfg) {
  NoiseSpec n;
  n.sigma1_rad = cfg.get_double("sigma1_rad");
  n.sigma2_rad = cfg.get_double("sigma2_rad");
  n.sigma_rad = cfg.get_double("sigma_rad");
  n.t2_bare_s = cfg.get_double("t2_bare_s");
  n.drive_rel_fluct = cfg.get_double("drive_rel_fluct");
  n.spec_cutoff_rad_s = cfg.get_double("spec_cutoff_rad_s");
  const double amp = cfg.get_double("spec_amplitude");
  n.spec_amplitude = amp > 0 ? amp : box_amplitude_for_t2(n.t2_bare_s, n.spec_cutoff_rad_s);
  n.validate();
  return n;
}

InteractionGraph graph_from(const RunConfig& cfg, int n_qubits) {
  const std::string& g = cfg.get_string("graph");
  if (g == "chain") return InteractionGraph::chain(n_qubits);
  if (g == "complete") return InteractionGraph::complete(n_qubits);
  throw config_error("config key 'graph': expected chain or complete, got '" + g + "'");
}

NoiseModel model_from(const RunConfig& cfg) {
  const std::string& m = cfg.get_string("model");
  if (m == "bond_phase") return NoiseModel::bond_phase;
  if (m == "widetext") return NoiseModel::widetext;
  throw config_error("config key 'model': expected bond_phase or widetext, got '" + m + "'");
}

json config_json(const RunConfig& cfg) {
  json j = json::object();
  for (const auto& [k, v] : cfg.entries()) j[k] = v;
  return j;
}

void echo_config(const RunConfig& cfg, std::ostream& err, const std::string& summary_head) {
  err << "# " << summary_head << "\n";
  cfg.echo(err);
}

json budget_json(const BudgetReport& b) {
  return json{{"photon_decay_time_s", b.photon_decay_time_s},
              {"t2_star_s", b.t2_star_s},
              {"t1_s", b.t1_s},
              {"t2_alpha_s", b.t2_alpha_s},
              {"tau_s", b.tau_s},
              {"margin", b.margin},
              {"ratio_photon", b.ratio_photon},
              {"ratio_t2_star", b.ratio_t2_star},
              {"ratio_t1", b.ratio_t1},
              {"ratio_t2_alpha", b.ratio_t2_alpha},
              {"pass", b.pass}};
}

}  // namespace

int cmd_params(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  echo_config(cfg, err, "params: schedule and decoherence budget");
  const CircuitParams circuit = circuit_from(cfg);
  const DotParams dot = dot_from(cfg);
  const auto [g0, g0_source] = g0_from(cfg);
  const GateSchedule s =
      solve_schedule(g0, cfg.get_int("k"), cfg.get_int("n"), cfg.get_int("n_qubits"));
  const BudgetReport budget = decoherence_budget(circuit, decoherence_from(cfg), s,
                                                 cfg.get_double("budget_margin"));

  json j;
  j["command"] = "params";
  j["g0_source"] = g0_source;
  j["g0_rad_s"] = s.g0_rad_s;
  j["g0_over_2pi_hz"] = s.g0_rad_s / (2.0 * pi);
  j["sqrt_2z0_over_rq"] = std::sqrt(2.0 * circuit.z0_ohm / circuit.r_q_ohm);
  j["effective_coupling_rad_s"] = effective_coupling(circuit, dot);
  j["schedule"] = json{{"k", s.k},
                       {"n", s.n},
                       {"n_qubits", s.n_qubits},
                       {"delta_rad_s", s.delta_rad_s},
                       {"delta_over_2pi_hz", s.delta_rad_s / (2.0 * pi)},
                       {"tau_s", s.tau_s},
                       {"lambda_rad_s", s.lambda_rad_s},
                       {"eta_rad_s", s.eta_rad_s()},
                       {"condition1_residual", s.condition1_residual()},
                       {"condition2_residual", s.condition2_residual()}};
  j["budget"] = budget_json(budget);
  j["config"] = config_json(cfg);
  out << j.dump(2) << "\n";
  err << "# tau = " << format_double(s.tau_s) << " s, budget "
      << (budget.pass ? "pass" : "FAIL") << "\n";
  if (!budget.pass && cfg.get_bool("budget_gate")) return 2;
  return 0;
}

int cmd_evolve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  echo_config(cfg, err, "evolve: exact dynamics vs effective gate");
  const int n_qubits = cfg.get_int("n_qubits");
  const int cutoff = cfg.get_int("fock_cutoff");
  if (!cfg.get_bool("unsafe_dims") && (n_qubits > 6 || cutoff > 8)) {
    err << "# error: n_qubits <= 6 and fock_cutoff <= 8 unless unsafe_dims is set\n";
    return 1;
  }
  const auto [g0, g0_source] = g0_from(cfg);
  const int k = cfg.get_int("k"), n = cfg.get_int("n");
  const DispersiveGateError d = dispersive_gate_error(n_qubits, g0, k, n, cutoff);

  // time-ordered reference for the frame contract, with a step-halving check
  const GateSchedule s = solve_schedule(g0, k, n, n_qubits);
  const HilbertLayout layout(n_qubits, cutoff);
  const int steps = std::max(2, cfg.get_int("evolve_steps"));
  auto h_of_t = [&](double t) {
    return h_total(layout, s.g0_rad_s, s.delta_rad_s, s.eta_rad_s(), t);
  };
  const Mat u_static =
      mat_exp(h_static_frame(layout, s.g0_rad_s, s.delta_rad_s, s.eta_rad_s()),
              cplx(0, -s.tau_s))
          .matrix;
  const Mat u_full = propagate_time_ordered(h_of_t, s.tau_s, steps).matrix;
  const Mat u_half = propagate_time_ordered(h_of_t, s.tau_s, steps / 2).matrix;

  json j;
  j["command"] = "evolve";
  j["n_qubits"] = n_qubits;
  j["k"] = k;
  j["n"] = n;
  j["fock_cutoff"] = cutoff;
  j["g0_source"] = g0_source;
  j["fidelity_up_to_phase"] = d.fidelity_up_to_phase;
  j["leakage"] = d.leakage;
  j["cutoff_convergence_flag"] = !d.cutoff_converged;  // raised when NOT converged
  j["fidelity_at_higher_cutoff"] = d.fidelity_at_higher_cutoff;
  j["steps_used"] = steps;
  j["frame_agreement_max_abs_diff"] = max_abs_diff(u_full, u_static);
  j["frame_step_halving_diff"] = max_abs_diff(u_full, u_half);
  j["config"] = config_json(cfg);
  out << j.dump(2) << "\n";
  err << "# fidelity_up_to_phase = " << format_double(d.fidelity_up_to_phase)
      << ", leakage = " << format_double(d.leakage) << "\n";
  return 0;
}

int cmd_cluster(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  echo_config(cfg, err, "cluster: stabilizers and printed-formula comparison");
  const int n_qubits = cfg.get_int("n_qubits");
  if (!cfg.get_bool("unsafe_dims") && n_qubits > 10) {
    err << "# error: n_qubits <= 10 unless unsafe_dims is set\n";
    return 1;
  }
  const auto [g0, g0_source] = g0_from(cfg);
  const GateSchedule s =
      solve_schedule(g0, cfg.get_int("k"), cfg.get_int("n"), n_qubits);
  const StateVector psi = generated_cluster_state(n_qubits, s);
  const InteractionGraph complete = InteractionGraph::complete(n_qubits);
  const std::vector<double> stab = stabilizer_expectations(psi, complete);
  double min_stab = 1.0;
  for (double v : stab) min_stab = std::min(min_stab, v);

  json interps = json::array();
  for (const auto interp :
       {FormulaInterpretation::literal_product, FormulaInterpretation::chain_reindexed}) {
    const StateVector f = cluster_formula_state(n_qubits, interp);
    interps.push_back(json{{"name", formula_interpretation_name(interp)},
                           {"rule", formula_interpretation_rule(interp)},
                           {"fidelity_to_generated", state_fidelity(f, psi)}});
  }

  json j;
  j["command"] = "cluster";
  j["n_qubits"] = n_qubits;
  j["stabilizer_expectations"] = stab;
  j["min_stabilizer_expectation"] = min_stab;
  j["formula_interpretations"] = interps;
  j["chain_vs_complete_fidelity"] =
      n_qubits >= 2 ? state_fidelity(graph_state(InteractionGraph::chain(n_qubits), pi),
                                     graph_state(complete, pi))
                    : 1.0;
  j["config"] = config_json(cfg);
  out << j.dump(2) << "\n";
  err << "# min stabilizer expectation = " << format_double(min_stab) << "\n";
  return 0;
}

int cmd_fidelity_curve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  echo_config(cfg, err, "fidelity-curve: F(N) at fixed sigma");
  const int n_min = cfg.get_int("n_min"), n_max = cfg.get_int("n_max");
  if (n_min < 2 || n_max < n_min) {
    err << "# error: need 2 <= n_min <= n_max\n";
    return 1;
  }
  const double sigma = cfg.get_double("sigma_rad");
  const long mc_samples = cfg.get_long("mc_samples");
  const NoiseSpec noise = [&] {
    NoiseSpec n = noise_from(cfg);
    n.sigma_rad = sigma;
    return n;
  }();
  const std::uint64_t seed = cfg.get_u64("seed");
  const int threads = cfg.get_int("threads");
  const int batches = cfg.get_int("mc_batches");

  out << "N,sigma_rad,F_transfer,F_bruteforce,F_mc,mc_stderr\n";
  for (int n = n_min; n <= n_max; ++n) {
    const FidelityResult ft = fidelity_transfer_matrix(n, sigma);
    out << n << "," << format_double(sigma) << "," << format_double(ft.value) << ",";
    if (n <= 14)
      out << format_double(
          fidelity_brute_force(n, sigma, InteractionGraph::chain(n)).value);
    out << ",";
    if (mc_samples > 0) {
      const FidelityResult fm =
          fidelity_monte_carlo(n, noise, NoiseModel::bond_phase, InteractionGraph::chain(n),
                               mc_samples, seed, threads, batches);
      out << format_double(fm.value) << "," << format_double(*fm.mc_stderr);
    } else {
      out << ",";
    }
    out << "\n";
  }
  err << "# rows " << n_min << ".." << n_max << " written\n";
  return 0;
}

int cmd_montecarlo(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  echo_config(cfg, err, "montecarlo: noisy-state fidelity estimate");
  const int n_qubits = cfg.get_int("n_qubits");
  const NoiseSpec noise = noise_from(cfg);
  const NoiseModel model = model_from(cfg);
  const InteractionGraph graph = graph_from(cfg, n_qubits);
  const long samples = cfg.get_long("mc_samples") > 0 ? cfg.get_long("mc_samples") : 20000;
  const std::uint64_t seed = cfg.get_u64("seed");
  const int threads = cfg.get_int("threads");
  const int batches = cfg.get_int("mc_batches");

  const auto t0 = std::chrono::steady_clock::now();
  const FidelityResult r =
      fidelity_monte_carlo(n_qubits, noise, model, graph, samples, seed, threads, batches);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  json j;
  j["command"] = "montecarlo";
  j["n_qubits"] = n_qubits;
  j["model"] = noise_model_name(model);
  j["graph"] = graph.label;
  j["sigma_rad"] = noise.sigma_rad;
  j["samples"] = samples;
  j["batches"] = batches;
  j["threads"] = threads;
  j["seed"] = seed;
  j["fidelity"] = r.value;
  j["mc_stderr"] = *r.mc_stderr;
  j["mean_fidelity"] = *r.mean_fidelity;
  j["batch_means"] = r.batch_means;
  if (model == NoiseModel::bond_phase && graph.label == "chain")
    j["transfer_matrix_reference"] = fidelity_transfer_matrix(n_qubits, noise.sigma_rad).value;
  if (model == NoiseModel::widetext) {
    const FidelityResult other = fidelity_monte_carlo(
        n_qubits, noise, NoiseModel::bond_phase, graph, samples, seed, threads, batches);
    j["bond_phase_comparison"] = json{{"fidelity", other.value},
                                      {"mc_stderr", *other.mc_stderr},
                                      {"mean_fidelity", *other.mean_fidelity}};
  }
  j["wall_clock_s"] = wall;
  j["config"] = config_json(cfg);
  out << j.dump(2) << "\n";
  err << "# fidelity = " << format_double(r.value) << " +- " << format_double(*r.mc_stderr)
      << "\n";
  return 0;
}

}  // namespace qdc

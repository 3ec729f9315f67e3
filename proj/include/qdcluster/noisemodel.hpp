#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qdcluster/cluster.hpp"

// Gaussian phase-noise statistics and cluster-state fidelity: the printed
// variance formulas, the chain fidelity formula via transfer matrix and
// brute force, Monte Carlo over noise realizations, and spectral-integral
// validation.

namespace qdc {

// Two-sided symmetric spectral density S(w) with support [-cutoff, cutoff];
// <eps(t) eps(t')> = integral of S(w) exp(i w (t-t')) dw over the real line.
struct Spectrum {
  std::function<double(double)> density;
  double cutoff_rad_s;
};

Spectrum box_spectrum(double amplitude, double cutoff_rad_s);

// box height chosen so that integral S dw = 1/T2_bare^2
double box_amplitude_for_t2(double t2_bare_s, double cutoff_rad_s);

struct NoiseSpec {
  // quoted phase-noise standard deviations (stored values, not re-derived
  // from the variance formulas; see variance_theta1/theta2 notes)
  double sigma1_rad = 0.022 * pi;
  double sigma2_rad = 0.006 * pi;
  double sigma_rad = 0.023 * pi;  // combined
  double t2_bare_s = 1e-8;
  double drive_rel_fluct = 0.02;  // sigma_(d eta) / eta
  double spec_amplitude = box_amplitude_for_t2(1e-8, 1e6);
  double spec_cutoff_rad_s = 1e6;

  void validate() const;
  Spectrum spectrum() const { return box_spectrum(spec_amplitude, spec_cutoff_rad_s); }
};

enum class FidelityMethod { transfer_matrix, brute_force, monte_carlo };
std::string fidelity_method_name(FidelityMethod m);

struct FidelityResult {
  int n_qubits = 0;
  double sigma_rad = 0;
  double value = 0;  // in [0, 1]
  FidelityMethod method = FidelityMethod::transfer_matrix;
  std::string graph_tag = "chain";
  // present iff method == monte_carlo
  std::optional<long> mc_samples;
  std::optional<double> mc_stderr;
  std::optional<double> mean_fidelity;  // E|<ideal|noisy>|^2, for comparison
  std::vector<double> batch_means;
};

// sigma_1^2 = (12 g0^4/delta^4) (tau/(Omega T2bare^2))^2, all rates angular.
// The equivalent spectral form (2 g0^2/(Omega delta^2))^2 * 3 (int S)^2 tau^2
// with int S = 1/T2bare^2 is evaluated alongside and must agree.
struct VarianceTheta1 {
  double value_rad2;
  double spectral_form_rad2;
};
VarianceTheta1 variance_theta1(double g0, double delta, double omega_gap, double tau,
                               double t2_bare_s);

// <(int_0^tau eps^2 dt)^2> = (int S dw)^2 tau^2 + 2 (int S sinc(w tau) dw)^2 tau^2
double variance_integral(const Spectrum& s, double tau);

// low-frequency limit 3 (int S dw)^2 tau^2
double variance_integral_low_freq_limit(const Spectrum& s, double tau);

// the low-frequency limit assumes gamma tau << 1; callers of the limit form
// should check this and flag violations
bool low_freq_limit_applicable(const Spectrum& s, double tau);

// quasi-static drive-noise phase: (4 tau sigma_rel eta/(N-1))^2 = (4 sigma_rel
// lambda tau)^2, independent of N by construction
double variance_theta2(double drive_rel_fluct, double lambda, double tau, int n_qubits);

double combined_sigma(double sigma1_rad, double sigma2_rad);

// F = (2^-N 1^T T^{N-1} 1)^2 with T = [[1,1],[1,c]], c = exp(-sigma^2/2);
// the closed form exists for the chain graph only. O(N).
FidelityResult fidelity_transfer_matrix(int n_qubits, double sigma_rad);

// direct 2^N sum of prod_{(i,j) in E} c^{z_i z_j}; N <= 14
FidelityResult fidelity_brute_force(int n_qubits, double sigma_rad,
                                    const InteractionGraph& graph);
// per-edge sigmas, same order as graph.edges
FidelityResult fidelity_brute_force(int n_qubits, std::span<const double> sigma_rad_per_edge,
                                    const InteractionGraph& graph);

enum class NoiseModel { bond_phase, widetext };
std::string noise_model_name(NoiseModel m);

// deterministic cores used by the samplers (and directly testable):
// ideal graph state with one extra phase exp(-i theta_e) on each edge's
// both-sigma_x=+1 component
StateVector bond_phase_state(const InteractionGraph& graph, std::span<const double> thetas);
// physical factorized error operator: ideal complete-graph gate, then a
// global pair phase alpha on sum s^x s^x and per-qubit drive phases beta_i
// on s_i^x
StateVector widetext_state(int n_qubits, double alpha, std::span<const double> betas);

StateVector sample_noisy_state(int n_qubits, const NoiseSpec& noise, NoiseModel model,
                               const InteractionGraph& graph, std::uint64_t rng_seed,
                               std::uint64_t sample_index = 0);

// F = |mean_s <ideal|noisy_s>|^2 with batch-mean standard error. Identical
// output for any n_threads; sample s draws from stream (rng_seed, s).
FidelityResult fidelity_monte_carlo(int n_qubits, const NoiseSpec& noise, NoiseModel model,
                                    const InteractionGraph& graph, long samples,
                                    std::uint64_t rng_seed, int n_threads = 1,
                                    int batches = 10);

struct VarianceValidation {
  double analytic;
  double empirical;
  double rel_err;
  bool grid_converged;
  int time_steps;
};

// synthesizes eps(t) as a sum of cosines with random phases and checks the
// two-term formula against the sampled <(int eps^2 dt)^2>
VarianceValidation validate_variance_by_sampling(const Spectrum& s, double tau, long samples,
                                                 std::uint64_t rng_seed);

}  // namespace qdc

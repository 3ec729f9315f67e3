#include "qdcluster/noisemodel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "qdcluster/rng.hpp"

namespace qdc {

Spectrum box_spectrum(double amplitude, double cutoff_rad_s) {
  if (amplitude < 0 || cutoff_rad_s <= 0)
    throw qdc_error("box_spectrum: amplitude >= 0 and cutoff > 0 required");
  return Spectrum{[amplitude, cutoff_rad_s](double w) {
                    return std::abs(w) <= cutoff_rad_s ? amplitude : 0.0;
                  },
                  cutoff_rad_s};
}

double box_amplitude_for_t2(double t2_bare_s, double cutoff_rad_s) {
  // integral S dw = 2 A gamma = 1/T2^2
  return 1.0 / (t2_bare_s * t2_bare_s * 2.0 * cutoff_rad_s);
}

void NoiseSpec::validate() const {
  if (sigma1_rad < 0 || sigma2_rad < 0 || sigma_rad < 0)
    throw qdc_error("NoiseSpec: standard deviations must be >= 0");
  if (!(t2_bare_s > 0)) throw qdc_error("NoiseSpec: T2_bare must be > 0");
  if (drive_rel_fluct < 0) throw qdc_error("NoiseSpec: drive_rel_fluct must be >= 0");
  if (spec_amplitude < 0 || !(spec_cutoff_rad_s > 0))
    throw qdc_error("NoiseSpec: spectral model parameters out of range");
}

std::string fidelity_method_name(FidelityMethod m) {
  switch (m) {
    case FidelityMethod::transfer_matrix: return "transfer_matrix";
    case FidelityMethod::brute_force: return "brute_force";
    case FidelityMethod::monte_carlo: return "monte_carlo";
  }
  return "?";
}

std::string noise_model_name(NoiseModel m) {
  return m == NoiseModel::bond_phase ? "bond_phase" : "widetext";
}

VarianceTheta1 variance_theta1(double g0, double delta, double omega_gap, double tau,
                               double t2_bare_s) {
  if (!(g0 > 0 && delta > 0 && omega_gap > 0 && tau > 0 && t2_bare_s > 0))
    throw qdc_error("variance_theta1: all inputs must be > 0");
  const double r = g0 / delta;
  VarianceTheta1 v;
  v.value_rad2 = 12.0 * r * r * r * r *
                 std::pow(tau / (omega_gap * t2_bare_s * t2_bare_s), 2);
  const double int_s = 1.0 / (t2_bare_s * t2_bare_s);
  const double pref = 2.0 * g0 * g0 / (omega_gap * delta * delta);
  v.spectral_form_rad2 = pref * pref * 3.0 * int_s * int_s * tau * tau;
  if (std::abs(v.value_rad2 - v.spectral_form_rad2) > 1e-12 * v.value_rad2)
    throw qdc_error("variance_theta1: algebraic forms disagree");
  return v;
}

namespace {

// composite Simpson over [0, b], doubling until converged
double integrate_half_line(const std::function<double(double)>& f, double b) {
  long n = 256;
  double prev = 0.0;
  for (int iter = 0; iter < 16; ++iter) {
    const double h = b / n;
    double acc = f(0.0) + f(b);
    for (long i = 1; i < n; ++i) acc += f(i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    const double val = acc * h / 3.0;
    if (iter > 0 && std::abs(val - prev) <= 1e-10 * std::max(1e-300, std::abs(val)))
      return val;
    prev = val;
    n *= 2;
  }
  throw qdc_error("variance_integral: quadrature did not converge");
}

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

}  // namespace

double variance_integral(const Spectrum& s, double tau) {
  if (!(tau > 0)) throw qdc_error("variance_integral: tau must be > 0");
  // S is symmetric: integrals over the real line are twice the half-line ones
  const double int_s = 2.0 * integrate_half_line(s.density, s.cutoff_rad_s);
  const double int_sinc =
      2.0 * integrate_half_line([&](double w) { return s.density(w) * sinc(w * tau); },
                                s.cutoff_rad_s);
  return int_s * int_s * tau * tau + 2.0 * int_sinc * int_sinc * tau * tau;
}

double variance_integral_low_freq_limit(const Spectrum& s, double tau) {
  const double int_s = 2.0 * integrate_half_line(s.density, s.cutoff_rad_s);
  return 3.0 * int_s * int_s * tau * tau;
}

bool low_freq_limit_applicable(const Spectrum& s, double tau) {
  return s.cutoff_rad_s * tau <= 0.01;
}

double variance_theta2(double drive_rel_fluct, double lambda, double tau, int n_qubits) {
  if (drive_rel_fluct < 0 || lambda < 0 || tau < 0)
    throw qdc_error("variance_theta2: inputs must be >= 0");
  if (n_qubits < 2) throw qdc_error("variance_theta2: needs n_qubits >= 2");
  const double eta = (n_qubits - 1) * lambda;
  const double sigma2 = 4.0 * tau * drive_rel_fluct * eta / (n_qubits - 1);
  return sigma2 * sigma2;
}

double combined_sigma(double sigma1_rad, double sigma2_rad) {
  return std::hypot(sigma1_rad, sigma2_rad);
}

FidelityResult fidelity_transfer_matrix(int n_qubits, double sigma_rad) {
  if (n_qubits < 2) throw qdc_error("fidelity_transfer_matrix: n_qubits must be >= 2");
  if (sigma_rad < 0) throw qdc_error("fidelity_transfer_matrix: sigma must be >= 0");
  const double c = std::exp(-0.5 * sigma_rad * sigma_rad);
  // u <- (T/2)^{N-1} * (1,1); amplitude = (u0+u1)/2, so overflow-free in N
  double u0 = 1.0, u1 = 1.0;
  for (int b = 0; b < n_qubits - 1; ++b) {
    const double v0 = 0.5 * (u0 + u1);
    const double v1 = 0.5 * (u0 + c * u1);
    u0 = v0;
    u1 = v1;
  }
  const double amp = 0.5 * (u0 + u1);
  FidelityResult r;
  r.n_qubits = n_qubits;
  r.sigma_rad = sigma_rad;
  r.value = amp * amp;
  r.method = FidelityMethod::transfer_matrix;
  r.graph_tag = "chain";
  return r;
}

FidelityResult fidelity_brute_force(int n_qubits, double sigma_rad,
                                    const InteractionGraph& graph) {
  const std::vector<double> per_edge(graph.edges.size(), sigma_rad);
  return fidelity_brute_force(n_qubits, per_edge, graph);
}

FidelityResult fidelity_brute_force(int n_qubits, std::span<const double> sigma_rad_per_edge,
                                    const InteractionGraph& graph) {
  if (n_qubits > 14) throw qdc_error("fidelity_brute_force: N > 14 enumeration refused");
  if (graph.n_vertices != n_qubits)
    throw qdc_error("fidelity_brute_force: graph size does not match n_qubits");
  if (sigma_rad_per_edge.size() != graph.edges.size())
    throw qdc_error("fidelity_brute_force: need one sigma per edge");
  std::vector<double> c(graph.edges.size());
  for (size_t e = 0; e < c.size(); ++e) {
    if (sigma_rad_per_edge[e] < 0) throw qdc_error("fidelity_brute_force: sigma < 0");
    c[e] = std::exp(-0.5 * sigma_rad_per_edge[e] * sigma_rad_per_edge[e]);
  }
  const long dim = 1L << n_qubits;
  double acc = 0.0;
  for (long z = 0; z < dim; ++z) {
    double term = 1.0;
    for (size_t e = 0; e < graph.edges.size(); ++e) {
      const auto& [a, b] = graph.edges[e];
      const int za = static_cast<int>((z >> (n_qubits - a)) & 1L);
      const int zb = static_cast<int>((z >> (n_qubits - b)) & 1L);
      if (za == 1 && zb == 1) term *= c[e];
    }
    acc += term;
  }
  const double amp = acc / static_cast<double>(dim);
  FidelityResult r;
  r.n_qubits = n_qubits;
  r.sigma_rad = sigma_rad_per_edge.empty() ? 0.0 : sigma_rad_per_edge[0];
  r.value = amp * amp;
  r.method = FidelityMethod::brute_force;
  r.graph_tag = graph.label;
  return r;
}

StateVector bond_phase_state(const InteractionGraph& graph, std::span<const double> thetas) {
  if (thetas.size() != graph.edges.size())
    throw qdc_error("bond_phase_state: need one theta per edge");
  const int n = graph.n_vertices;
  const HilbertLayout layout(n, 0);
  const long d = layout.dim();
  const double amp = std::pow(2.0, -0.5 * n);
  Vec v(d);
  for (long z = 0; z < d; ++z) {
    double phase = 0.0;  // ideal pi per active edge plus the noise phase
    for (size_t e = 0; e < graph.edges.size(); ++e) {
      const auto& [a, b] = graph.edges[e];
      const int za = static_cast<int>((z >> (n - a)) & 1L);
      const int zb = static_cast<int>((z >> (n - b)) & 1L);
      if (za == 0 && zb == 0) phase += pi + thetas[e];
    }
    v(z) = amp * std::exp(cplx(0, -phase));
  }
  xbasis_to_computational(v, n);
  return StateVector(layout, std::move(v));
}

StateVector widetext_state(int n_qubits, double alpha, std::span<const double> betas) {
  if (static_cast<int>(betas.size()) != n_qubits)
    throw qdc_error("widetext_state: need one beta per qubit");
  const HilbertLayout layout(n_qubits, 0);
  const long d = layout.dim();
  const double amp = std::pow(2.0, -0.5 * n_qubits);
  Vec v(d);
  for (long z = 0; z < d; ++z) {
    int ones = 0;          // qubits with n-occupation 1, i.e. bit 0
    double beta_sum = 0.0; // sum beta_i x_i with x_i = +/-1
    double s = 0.0;
    for (int i = 1; i <= n_qubits; ++i) {
      const int zi = static_cast<int>((z >> (n_qubits - i)) & 1L);
      const double x = zi == 0 ? 1.0 : -1.0;
      s += x;
      beta_sum += betas[i - 1] * x;
      if (zi == 0) ++ones;
    }
    const double pair_xx = (s * s - n_qubits) / 2.0;
    const double phase = pi * (ones * (ones - 1)) / 2.0 + alpha * pair_xx + beta_sum;
    v(z) = amp * std::exp(cplx(0, -phase));
  }
  xbasis_to_computational(v, n_qubits);
  return StateVector(layout, std::move(v));
}

namespace {

struct WidetextDraw {
  double alpha;
  std::vector<double> betas;
};

WidetextDraw draw_widetext(int n_qubits, const NoiseSpec& noise, GaussianStream& g) {
  // theta_1 = 4 int d_lambda dt  ->  alpha std = sigma1/4
  // theta_2 = 4 int d_eta dt/(N-1) -> per-qubit beta std = (N-1) sigma2/4
  WidetextDraw d;
  d.alpha = (noise.sigma1_rad / 4.0) * g.gaussian();
  d.betas.resize(n_qubits);
  const double beta_std = (n_qubits - 1) * noise.sigma2_rad / 4.0;
  for (int i = 0; i < n_qubits; ++i) d.betas[i] = beta_std * g.gaussian();
  return d;
}

std::vector<double> draw_bond_thetas(const InteractionGraph& graph, const NoiseSpec& noise,
                                     GaussianStream& g) {
  std::vector<double> t(graph.edges.size());
  for (auto& x : t) x = noise.sigma_rad * g.gaussian();
  return t;
}

}  // namespace

StateVector sample_noisy_state(int n_qubits, const NoiseSpec& noise, NoiseModel model,
                               const InteractionGraph& graph, std::uint64_t rng_seed,
                               std::uint64_t sample_index) {
  noise.validate();
  GaussianStream g(derive_stream(rng_seed, sample_index));
  if (model == NoiseModel::bond_phase) {
    const auto thetas = draw_bond_thetas(graph, noise, g);
    return bond_phase_state(graph, thetas);
  }
  const auto d = draw_widetext(n_qubits, noise, g);
  return widetext_state(n_qubits, d.alpha, d.betas);
}

namespace {

// <ideal|noisy> for one sample; the ideal phases cancel, leaving the pure
// noise characteristic sum over x-basis strings
cplx sample_amplitude(int n_qubits, const NoiseSpec& noise, NoiseModel model,
                      const InteractionGraph& graph, std::uint64_t rng_seed,
                      std::uint64_t sample_index) {
  GaussianStream g(derive_stream(rng_seed, sample_index));
  if (model == NoiseModel::bond_phase) {
    const auto thetas = draw_bond_thetas(graph, noise, g);
    if (graph.label == "chain") {
      // 2^-N sum_z prod_e exp(-i theta_e [z_a=z_b=0]) via 2x2 transfer
      // matrices over the realized phases; exact, O(N)
      cplx u0 = 1.0, u1 = 1.0;  // u[bit of previous site], bit 0 = occupied
      for (double th : thetas) {
        const cplx ce = std::exp(cplx(0, -th));
        const cplx v0 = 0.5 * (ce * u0 + u1);
        const cplx v1 = 0.5 * (u0 + u1);
        u0 = v0;
        u1 = v1;
      }
      return 0.5 * (u0 + u1);
    }
    const long dim = 1L << n_qubits;
    cplx acc = 0.0;
    for (long z = 0; z < dim; ++z) {
      double phase = 0.0;
      for (size_t e = 0; e < graph.edges.size(); ++e) {
        const auto& [a, b] = graph.edges[e];
        const int za = static_cast<int>((z >> (n_qubits - a)) & 1L);
        const int zb = static_cast<int>((z >> (n_qubits - b)) & 1L);
        if (za == 0 && zb == 0) phase += thetas[e];
      }
      acc += std::exp(cplx(0, -phase));
    }
    return acc / static_cast<double>(dim);
  }
  const auto d = draw_widetext(n_qubits, noise, g);
  const long dim = 1L << n_qubits;
  cplx acc = 0.0;
  for (long z = 0; z < dim; ++z) {
    double beta_sum = 0.0, s = 0.0;
    for (int i = 1; i <= n_qubits; ++i) {
      const double x = ((z >> (n_qubits - i)) & 1L) == 0 ? 1.0 : -1.0;
      s += x;
      beta_sum += d.betas[i - 1] * x;
    }
    const double pair_xx = (s * s - n_qubits) / 2.0;
    acc += std::exp(cplx(0, -(d.alpha * pair_xx + beta_sum)));
  }
  return acc / static_cast<double>(dim);
}

}  // namespace

FidelityResult fidelity_monte_carlo(int n_qubits, const NoiseSpec& noise, NoiseModel model,
                                    const InteractionGraph& graph, long samples,
                                    std::uint64_t rng_seed, int n_threads, int batches) {
  noise.validate();
  if (samples < 100) throw qdc_error("fidelity_monte_carlo: samples must be >= 100");
  if (batches < 10) throw qdc_error("fidelity_monte_carlo: needs >= 10 batches");
  if (samples < batches) throw qdc_error("fidelity_monte_carlo: degenerate batching");
  if (!(model == NoiseModel::bond_phase && graph.label == "chain") && n_qubits > 16)
    throw qdc_error("fidelity_monte_carlo: enumeration model limited to N <= 16");
  if (graph.n_vertices != n_qubits)
    throw qdc_error("fidelity_monte_carlo: graph size does not match n_qubits");

  // fixed batch partition: first (samples % batches) batches take one extra
  std::vector<long> b_begin(batches + 1, 0);
  {
    const long base = samples / batches, extra = samples % batches;
    for (int b = 0; b < batches; ++b)
      b_begin[b + 1] = b_begin[b] + base + (b < extra ? 1 : 0);
  }
  std::vector<cplx> batch_amp(batches, 0.0);
  std::vector<double> batch_pow(batches, 0.0);

  auto run_batch = [&](int b) {
    cplx acc = 0.0;
    double pw = 0.0;
    for (long s = b_begin[b]; s < b_begin[b + 1]; ++s) {
      const cplx a = sample_amplitude(n_qubits, noise, model, graph, rng_seed,
                                      static_cast<std::uint64_t>(s));
      acc += a;
      pw += std::norm(a);
    }
    batch_amp[b] = acc;
    batch_pow[b] = pw;
  };

  n_threads = std::clamp(n_threads, 1, batches);
  if (n_threads == 1) {
    for (int b = 0; b < batches; ++b) run_batch(b);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t)
      pool.emplace_back([&, t] {
        for (int b = t; b < batches; b += n_threads) run_batch(b);
      });
    for (auto& th : pool) th.join();
  }

  // reduce in fixed batch order regardless of scheduling
  cplx total = 0.0;
  double total_pow = 0.0;
  for (int b = 0; b < batches; ++b) {
    total += batch_amp[b];
    total_pow += batch_pow[b];
  }
  FidelityResult r;
  r.n_qubits = n_qubits;
  r.sigma_rad = noise.sigma_rad;
  r.method = FidelityMethod::monte_carlo;
  r.graph_tag = graph.label;
  r.mc_samples = samples;
  r.value = std::norm(total / static_cast<double>(samples));
  r.mean_fidelity = total_pow / static_cast<double>(samples);
  r.batch_means.resize(batches);
  double mean_b = 0.0;
  for (int b = 0; b < batches; ++b) {
    const long nb = b_begin[b + 1] - b_begin[b];
    r.batch_means[b] = std::norm(batch_amp[b] / static_cast<double>(nb));
    mean_b += r.batch_means[b];
  }
  mean_b /= batches;
  double var_b = 0.0;
  for (double f : r.batch_means) var_b += (f - mean_b) * (f - mean_b);
  r.mc_stderr = std::sqrt(var_b / (static_cast<double>(batches) * (batches - 1)));
  return r;
}

VarianceValidation validate_variance_by_sampling(const Spectrum& s, double tau, long samples,
                                                 std::uint64_t rng_seed) {
  if (samples < 1) throw qdc_error("validate_variance_by_sampling: samples must be >= 1");
  const double analytic = variance_integral(s, tau);

  constexpr int kModes = 256;
  const double dw = s.cutoff_rad_s / kModes;
  std::vector<double> w_mode(kModes), a_mode(kModes);
  bool all_zero = true;
  for (int k = 0; k < kModes; ++k) {
    w_mode[k] = (k + 0.5) * dw;
    // one-sided synthesis amplitude for a two-sided density
    a_mode[k] = std::sqrt(4.0 * s.density(w_mode[k]) * dw);
    if (a_mode[k] != 0.0) all_zero = false;
  }

  auto integral_eps2 = [&](std::uint64_t sample, int m_intervals) {
    GaussianStream g(derive_stream(rng_seed, sample));
    std::vector<double> phase(kModes);
    for (int k = 0; k < kModes; ++k) phase[k] = 2.0 * pi * g.uniform();
    const double h = tau / m_intervals;
    double acc = 0.0;
    for (int i = 0; i <= m_intervals; ++i) {
      const double t = i * h;
      double eps = 0.0;
      for (int k = 0; k < kModes; ++k) eps += a_mode[k] * std::cos(w_mode[k] * t + phase[k]);
      const double f = eps * eps;
      acc += f * (i == 0 || i == m_intervals ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0));
    }
    return acc * h / 3.0;
  };

  // time-grid self check on the first sample
  int m = 64;
  bool grid_converged = all_zero;
  if (!all_zero) {
    for (; m <= 8192; m *= 2) {
      const double i1 = integral_eps2(0, m);
      const double i2 = integral_eps2(0, 2 * m);
      if (std::abs(i2 - i1) <= 1e-3 * std::abs(i2)) {
        m *= 2;
        grid_converged = true;
        break;
      }
    }
    if (!grid_converged)
      throw qdc_error("validate_variance_by_sampling: time grid did not converge");
  }

  double acc = 0.0;
  for (long smp = 0; smp < samples; ++smp) {
    const double v = integral_eps2(static_cast<std::uint64_t>(smp), m);
    acc += v * v;
  }
  const double empirical = acc / static_cast<double>(samples);

  VarianceValidation out;
  out.analytic = analytic;
  out.empirical = empirical;
  out.rel_err = analytic == 0.0 ? (empirical == 0.0 ? 0.0 : 1.0)
                                : std::abs(empirical - analytic) / analytic;
  out.grid_converged = grid_converged;
  out.time_steps = m;
  return out;
}

}  // namespace qdc

#include "qdcluster/dotmodel.hpp"

#include <algorithm>
#include <cmath>

namespace qdc {

DotParams::DotParams(double t_c, double delta) : t_c_uev(t_c), delta_uev(delta) {
  if (!(t_c_uev > 0)) throw qdc_error("DotParams: T_c must be > 0");
  if (!(gap_uev() > 0)) throw qdc_error("DotParams: gap must be > 0");
}

double DotParams::gap_uev() const {
  return std::sqrt(4.0 * t_c_uev * t_c_uev + delta_uev * delta_uev);
}

CircuitParams::CircuitParams(double omega, double c_c, double c_tot, double z0, double q,
                             double r_q)
    : omega_rad_s(omega), c_c_farad(c_c), c_tot_farad(c_tot), z0_ohm(z0), r_q_ohm(r_q),
      quality_factor(q) {
  if (!(omega > 0 && c_c > 0 && c_tot > 0 && z0 > 0 && q > 0 && r_q > 0))
    throw qdc_error("CircuitParams: all parameters must be > 0");
  if (c_c / (2.0 * c_tot) > 2.0)
    throw qdc_error("CircuitParams: C_c/(2 C_tot) > 2 is not a plausible geometry");
}

void DecoherenceInputs::validate() const {
  if (!(t2_star_s > 0 && t1_s > 0 && t2_bare_s > 0 && omega_gap_uev > 0))
    throw qdc_error("DecoherenceInputs: all times and the gap must be > 0");
}

Eigenstructure eigenstructure(const DotParams& p) {
  Eigenstructure e;
  e.omega_uev = p.gap_uev();
  e.theta_rad = std::atan2(-2.0 * p.t_c_uev, e.omega_uev + p.delta_uev);
  const double s = std::sin(e.theta_rad), c = std::cos(e.theta_rad);
  e.plus_coeffs << -s, c;
  e.minus_coeffs << c, s;
  return e;
}

double coupling_g0(const CircuitParams& c) {
  return c.omega_rad_s * (c.c_c_farad / (2.0 * c.c_tot_farad)) *
         std::sqrt(2.0 * c.z0_ohm / c.r_q_ohm);
}

double effective_coupling(const CircuitParams& c, const DotParams& p) {
  return coupling_g0(c) * 2.0 * p.t_c_uev / p.gap_uev();
}

GateSchedule solve_schedule(double g0_rad_s, int k, int n, int n_qubits) {
  if (!(g0_rad_s > 0)) throw qdc_error("solve_schedule: g0 must be > 0");
  if (k < 1) throw qdc_error("solve_schedule: k must be >= 1");
  if (n < 0) throw qdc_error("solve_schedule: n must be >= 0");
  if (n_qubits < 1) throw qdc_error("solve_schedule: n_qubits must be >= 1");
  GateSchedule s;
  s.k = k;
  s.n = n;
  s.n_qubits = n_qubits;
  s.g0_rad_s = g0_rad_s;
  s.delta_rad_s = g0_rad_s * std::sqrt(4.0 * k / (2.0 * n + 1.0));
  s.tau_s = 2.0 * k * pi / s.delta_rad_s;
  s.lambda_rad_s = g0_rad_s * g0_rad_s / (2.0 * s.delta_rad_s);
  if (std::abs(s.condition1_residual()) > 1e-12 * 2.0 * k * pi ||
      std::abs(s.condition2_residual()) > 1e-12 * (2.0 * n + 1) * pi)
    throw qdc_error("solve_schedule: timing-condition residual out of tolerance");
  return s;
}

BudgetReport decoherence_budget(const CircuitParams& c, const DecoherenceInputs& d,
                                const GateSchedule& s, double margin) {
  d.validate();
  BudgetReport r;
  r.photon_decay_time_s = c.quality_factor / c.frequency_hz();
  r.t2_star_s = d.t2_star_s;
  r.t1_s = d.t1_s;
  r.t2_alpha_s = uev_to_hz(d.omega_gap_uev) * d.t2_bare_s * d.t2_bare_s;
  r.tau_s = s.tau_s;
  r.margin = margin;
  r.ratio_photon = r.photon_decay_time_s / s.tau_s;
  r.ratio_t2_star = r.t2_star_s / s.tau_s;
  r.ratio_t1 = r.t1_s / s.tau_s;
  r.ratio_t2_alpha = r.t2_alpha_s / s.tau_s;
  const double shortest =
      std::min({r.photon_decay_time_s, r.t2_star_s, r.t1_s, r.t2_alpha_s});
  r.pass = s.tau_s <= shortest / margin;
  return r;
}

namespace {

// exp(-i H dt) for the 2x2 traceless H = [[-d/2, tc], [tc, d/2]] (rad/s)
Eigen::Matrix2cd step_unitary(double d_half, double tc, double dt) {
  const double w = std::sqrt(d_half * d_half + tc * tc);
  Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
  if (w == 0.0) return u;
  const double c = std::cos(w * dt), s = std::sin(w * dt) / w;
  u(0, 0) = cplx(c, s * d_half);
  u(1, 1) = cplx(c, -s * d_half);
  u(0, 1) = cplx(0, -s * tc);
  u(1, 0) = cplx(0, -s * tc);
  return u;
}

struct SweepRun {
  Eigen::Vector2cd psi;
  double adiabaticity;
  bool upper;
};

SweepRun run_sweep(double tc_rad, double d0_rad, double d1_rad, double duration, int steps) {
  Eigen::Vector2cd psi(0.0, 1.0);  // |02S>
  // instantaneous eigenvector for the branch overlapping the start state
  auto eigvec = [&](double d_rad, bool upper) {
    const double w = std::sqrt(d_rad * d_rad / 4.0 + tc_rad * tc_rad);
    // upper branch (+w): (tc, d/2 + w), lower: (d/2 + w, -tc); both unnormalized
    Eigen::Vector2d v;
    if (upper)
      v << tc_rad, d_rad / 2.0 + w;
    else
      v << d_rad / 2.0 + w, -tc_rad;
    return v.normalized();
  };
  const Eigen::Vector2d up0 = eigvec(d0_rad, true);
  const bool upper = std::norm(up0(1)) >= 0.5;  // which branch holds |02S> at t=0
  const double dt = duration / steps;
  for (int k = 0; k < steps; ++k) {
    const double t_mid = (k + 0.5) * dt;
    const double d = d0_rad + (d1_rad - d0_rad) * (t_mid / duration);
    psi = step_unitary(d / 2.0, tc_rad, dt) * psi;
    const double nrm = psi.norm();
    if (std::abs(nrm - 1.0) > 1e-10) psi /= nrm;
  }
  const Eigen::Vector2d vf = eigvec(d1_rad, upper);
  const cplx ov = vf(0) * psi(0) + vf(1) * psi(1);  // real eigenvector
  return {psi, std::norm(ov), upper};
}

}  // namespace

SweepResult adiabatic_sweep(const DotParams& p_start, const DotParams& p_end,
                            double ramp_duration_s, int steps) {
  if (!(ramp_duration_s > 0)) throw qdc_error("adiabatic_sweep: ramp_duration must be > 0");
  if (steps < 100) throw qdc_error("adiabatic_sweep: steps must be >= 100");
  if (p_start.t_c_uev != p_end.t_c_uev)
    throw qdc_error("adiabatic_sweep: T_c must stay fixed over the ramp");
  const double tc = uev_to_rad_per_s(p_start.t_c_uev);
  const double d0 = uev_to_rad_per_s(p_start.delta_uev);
  const double d1 = uev_to_rad_per_s(p_end.delta_uev);
  const SweepRun full = run_sweep(tc, d0, d1, ramp_duration_s, steps);
  const SweepRun half = run_sweep(tc, d0, d1, ramp_duration_s, steps / 2);
  SweepResult r;
  r.final_state = full.psi;
  r.adiabaticity = full.adiabaticity;
  r.tracked_upper_branch = full.upper;
  r.step_converged = std::abs(full.adiabaticity - half.adiabaticity) <= 1e-4;
  return r;
}

}  // namespace qdc

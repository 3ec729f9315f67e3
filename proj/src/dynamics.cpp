#include "qdcluster/dynamics.hpp"

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

namespace qdc {

namespace {

LinOperator jc_like(const HilbertLayout& layout, double g0, cplx phase_up) {
  if (layout.fock_cutoff < 1)
    throw qdc_error("h_jc_interaction: layout needs fock_cutoff >= 1");
  const Mat a = annihilation_matrix(layout.fock_cutoff);
  const Mat adag = a.adjoint();
  const long d = layout.dim();
  Mat h = Mat::Zero(d, d);
  const Mat a_full = embed_cavity_op(layout, a).matrix;
  const Mat adag_full = embed_cavity_op(layout, adag).matrix;
  for (int i = 1; i <= layout.n_qubits; ++i) {
    const Mat sm = embed_qubit_op(layout, i, sigma_minus()).matrix;
    const Mat sp = embed_qubit_op(layout, i, sigma_plus()).matrix;
    h += g0 * (phase_up * (adag_full * sm) + std::conj(phase_up) * (a_full * sp));
  }
  return LinOperator(layout, std::move(h), true);
}

}  // namespace

LinOperator h_jc_interaction(const HilbertLayout& layout, double g0, double delta, double t) {
  return jc_like(layout, g0, std::exp(cplx(0, delta * t)));
}

LinOperator h_total(const HilbertLayout& layout, double g0, double delta, double eta,
                    double t) {
  Mat h = h_jc_interaction(layout, g0, delta, t).matrix;
  for (int i = 1; i <= layout.n_qubits; ++i)
    h += eta * embed_qubit_op(layout, i, pauli_x()).matrix;
  return LinOperator(layout, std::move(h), true);
}

LinOperator h_static_frame(const HilbertLayout& layout, double g0, double delta, double eta) {
  const Mat a = annihilation_matrix(layout.fock_cutoff);
  Mat h = delta * embed_cavity_op(layout, Mat(a.adjoint() * a)).matrix;
  if (g0 != 0.0) h += jc_like(layout, g0, cplx(1, 0)).matrix;
  for (int i = 1; i <= layout.n_qubits; ++i)
    h += eta * embed_qubit_op(layout, i, pauli_x()).matrix;
  return LinOperator(layout, std::move(h), true);
}

LinOperator propagate_time_ordered(const std::function<LinOperator(double)>& h_of_t,
                                   double tau, int steps) {
  if (steps < 1) throw qdc_error("propagate_time_ordered: steps must be >= 1");
  LinOperator probe = h_of_t(0.0);
  const HilbertLayout layout = probe.layout;
  const long d = layout.dim();
  Mat u = Mat::Identity(d, d);
  if (tau == 0.0) return LinOperator(layout, std::move(u));
  const double dt = tau / steps;
  for (int k = 1; k <= steps; ++k) {
    const double t_mid = (k - 0.5) * dt;
    LinOperator h = h_of_t(t_mid);
    const double scale = std::max(1.0, h.matrix.cwiseAbs().maxCoeff());
    if ((h.matrix - h.matrix.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
      throw qdc_error("propagate_time_ordered: non-Hermitian sample");
    h.hermitian_hint = true;
    u = mat_exp(h, cplx(0, -dt)).matrix * u;
  }
  return LinOperator(layout, std::move(u));
}

Eigen::Matrix2cd xbasis_columns() {
  // |0> = (|-> + |+>)/sqrt2, |1> = (|-> - |+>)/sqrt2 in (|+>,|->) coordinates
  Eigen::Matrix2cd w;
  const double r = 1.0 / std::sqrt(2.0);
  w << r, -r, r, r;
  return w;
}

Mat xbasis_transform(int n_qubits) {
  Mat w = xbasis_columns();
  for (int i = 1; i < n_qubits; ++i) w = Eigen::kroneckerProduct(xbasis_columns(), w).eval();
  return w;
}

namespace {

// W diag(exp(-i phase(z))) W^T for a phase function over x-basis bit strings;
// bit value 0 of z means the +1 eigenstate |0>
LinOperator diagonal_x_gate(int n_qubits, const std::function<double(unsigned long)>& phase) {
  const HilbertLayout layout(n_qubits, 0);
  const long d = layout.dim();
  const Mat w = xbasis_transform(n_qubits);
  Vec ph(d);
  for (long z = 0; z < d; ++z)
    ph(z) = std::exp(cplx(0, -phase(static_cast<unsigned long>(z))));
  Mat u = w * ph.asDiagonal() * w.transpose();
  return LinOperator(layout, std::move(u));
}

int popcount(unsigned long v) { return __builtin_popcountl(v); }

// sum over pairs of x_i x_j for x = +/-1 encoded in bits (bit 0 -> +1)
double pair_xx_sum(unsigned long z, int n) {
  const int minus = popcount(z);
  const int plus = n - minus;
  // sum_{j>i} x_i x_j = (s^2 - n)/2 with s = sum x_i
  const double s = plus - minus;
  return (s * s - n) / 2.0;
}

}  // namespace

LinOperator u_effective_xx(int n_qubits, double lambda, double tau) {
  if (n_qubits < 1) throw qdc_error("u_effective_xx: n_qubits must be >= 1");
  const double lt = lambda * tau;
  return diagonal_x_gate(n_qubits,
                         [=](unsigned long z) { return lt * pair_xx_sum(z, n_qubits); });
}

LinOperator u_effective_total(int n_qubits, double lambda, double eta, double tau) {
  if (n_qubits < 1) throw qdc_error("u_effective_total: n_qubits must be >= 1");
  const double lt = lambda * tau, et = eta * tau;
  return diagonal_x_gate(n_qubits, [=](unsigned long z) {
    const double s = n_qubits - 2.0 * popcount(z);  // sum of x_i
    return et * s + lt * pair_xx_sum(z, n_qubits);
  });
}

LinOperator u_cluster_gate(int n_qubits, double lambda, double tau) {
  if (n_qubits < 2) throw qdc_error("u_cluster_gate: n_qubits must be >= 2");
  const double phase_per_pair = 4.0 * lambda * tau;
  return diagonal_x_gate(n_qubits, [=](unsigned long z) {
    const long ones = n_qubits - popcount(z);  // qubits with n = (1+s^x)/2 = 1
    return phase_per_pair * (ones * (ones - 1)) / 2.0;
  });
}

namespace {

double vacuum_sector_fidelity(int n_qubits, const GateSchedule& s, int cutoff) {
  const HilbertLayout layout(n_qubits, cutoff);
  const LinOperator hp =
      h_static_frame(layout, s.g0_rad_s, s.delta_rad_s, s.eta_rad_s());
  const LinOperator u_full = mat_exp(hp, cplx(0, -s.tau_s));
  // effective gate on qubits, identity on the cavity
  const Mat u_eff_q = u_cluster_gate(n_qubits, s.lambda_rad_s, s.tau_s).matrix;
  const int nc = layout.cavity_dim();
  Mat u_eff = Eigen::kroneckerProduct(u_eff_q, Mat(Mat::Identity(nc, nc)));
  // projector onto the cavity-vacuum sector
  Mat pvac_c = Mat::Zero(nc, nc);
  pvac_c(0, 0) = 1;
  const LinOperator pvac = embed_cavity_op(layout, pvac_c);
  return unitary_fidelity_up_to_phase(u_full, LinOperator(layout, std::move(u_eff)), pvac);
}

}  // namespace

DispersiveGateError dispersive_gate_error(int n_qubits, double g0, int k, int n,
                                          int fock_cutoff) {
  if (fock_cutoff < 1) throw qdc_error("dispersive_gate_error: fock_cutoff must be >= 1");
  GateSchedule s;
  if (g0 == 0.0) {
    // no-coupling limit: the detuning drops out of the comparison, fix it at 1
    s.k = k;
    s.n = n;
    s.n_qubits = n_qubits;
    s.g0_rad_s = 0.0;
    s.delta_rad_s = 1.0;
    s.tau_s = 2.0 * k * pi;
    s.lambda_rad_s = 0.0;
  } else {
    s = solve_schedule(g0, k, n, n_qubits);
  }
  DispersiveGateError r;
  r.fock_cutoff = fock_cutoff;
  r.fidelity_up_to_phase = vacuum_sector_fidelity(n_qubits, s, fock_cutoff);
  r.fidelity_at_higher_cutoff = vacuum_sector_fidelity(n_qubits, s, fock_cutoff + 2);
  r.cutoff_converged =
      std::abs(r.fidelity_up_to_phase - r.fidelity_at_higher_cutoff) <= 1e-4;

  // worst-case leakage out of the vacuum sector over sigma_x product inputs
  const HilbertLayout layout(n_qubits, fock_cutoff);
  const LinOperator hp = h_static_frame(layout, s.g0_rad_s, s.delta_rad_s, s.eta_rad_s());
  const Mat u_full = mat_exp(hp, cplx(0, -s.tau_s)).matrix;
  const Mat wq = xbasis_transform(n_qubits);
  const int nc = layout.cavity_dim();
  const long dq = wq.rows();
  double worst = 0.0;
  for (long z = 0; z < dq; ++z) {
    Vec psi0 = Vec::Zero(layout.dim());
    for (long q = 0; q < dq; ++q) psi0(q * nc) = wq(q, z);  // |x_z> (x) |vac>
    const Vec psi = u_full * psi0;
    double in_vac = 0.0;
    for (long q = 0; q < dq; ++q) in_vac += std::norm(psi(q * nc));
    worst = std::max(worst, 1.0 - in_vac);
  }
  r.leakage = worst;
  return r;
}

}  // namespace qdc

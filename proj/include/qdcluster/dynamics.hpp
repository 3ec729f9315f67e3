#pragma once

#include <functional>

#include "qdcluster/dotmodel.hpp"
#include "qdcluster/qsys.hpp"

// Hamiltonians and propagators for the one-step gate: the time-dependent
// interaction-picture dynamics, its static rotating-frame equivalent, and
// the closed-form effective operators the scheme is built on.
//
// Frame bookkeeping: the time-ordered propagator of the interaction-picture
// Hamiltonian equals exp(+i delta tau a^dag a) exp(-i H' tau) with the static
// H' = delta a^dag a + g0 sum(a^dag s- + a s+) + eta sum(s^x). Whenever
// delta*tau = 2 k pi the frame factor is the identity on every Fock level,
// so the two paths agree exactly; this is tested, not assumed.

namespace qdc {

// g0 sum_i (exp(+i delta t) a^dag s_i^- + exp(-i delta t) a s_i^+)
LinOperator h_jc_interaction(const HilbertLayout& layout, double g0, double delta, double t);

// h_jc_interaction(t) + eta sum_i s_i^x
LinOperator h_total(const HilbertLayout& layout, double g0, double delta, double eta, double t);

// delta a^dag a + g0 sum_i (a^dag s_i^- + a s_i^+) + eta sum_i s_i^x
LinOperator h_static_frame(const HilbertLayout& layout, double g0, double delta, double eta);

// Midpoint-rule ordered product, latest factor leftmost:
//   prod_{k=steps..1} exp(-i h((k-1/2) dt) dt),  dt = tau/steps.
// Every sampled h must be Hermitian (asymmetry <= 1e-10).
LinOperator propagate_time_ordered(const std::function<LinOperator(double)>& h_of_t,
                                   double tau, int steps);

// sigma_x eigenbasis helpers. Columns of the 2x2 are the eigenstates
// |0> (+1) and |1> (-1) written in the {|+>,|->} computational basis.
Eigen::Matrix2cd xbasis_columns();
Mat xbasis_transform(int n_qubits);  // the N-fold Kronecker power

// exp(-i lambda tau sum_{j>i} s_i^x s_j^x), qubits-only layout
LinOperator u_effective_xx(int n_qubits, double lambda, double tau);

// exp(-i eta tau sum_i s_i^x - i lambda tau sum_{j>i} s_i^x s_j^x)
LinOperator u_effective_total(int n_qubits, double lambda, double eta, double tau);

// exp(-4 i lambda tau sum_{j>i} n_i n_j) with n = (1+s^x)/2, so the pair
// phase lands on the both-sigma_x=+1 component. Diagonal in the sigma_x
// product basis; at 4 lambda tau = (2n+1) pi it is a controlled-phase(pi)
// on every pair.
LinOperator u_cluster_gate(int n_qubits, double lambda, double tau);

// Quality of the effective operator against the exact static-frame
// propagator, restricted to the cavity-vacuum sector.
struct DispersiveGateError {
  double fidelity_up_to_phase;
  double leakage;              // worst-case population left outside vacuum
  bool cutoff_converged;       // raising fock_cutoff by 2 moved fidelity <= 1e-4
  double fidelity_at_higher_cutoff;
  int fock_cutoff;
};

DispersiveGateError dispersive_gate_error(int n_qubits, double g0, int k, int n,
                                          int fock_cutoff);

}  // namespace qdc

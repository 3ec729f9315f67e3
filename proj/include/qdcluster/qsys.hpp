#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

// Hilbert-space core: composite layout of N qubits and one truncated
// cavity mode, dense states/operators over it, tensor embedding, matrix
// exponentials and comparison metrics.
//
// Basis conventions (fixed, all embed operations agree with them):
//   * qubit 1 is the slowest index, the cavity is the fastest:
//       index = ((b_1*2 + b_2)*2 + ... + b_N) * (n_max+1) + n_fock
//   * qubit basis index 0 -> |+> (upper level), 1 -> |->, so
//     sigma^+ = |+><-| is the 2x2 matrix with a single 1 at (0,1).

namespace qdc {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

class qdc_error : public std::runtime_error {
 public:
  explicit qdc_error(const std::string& what) : std::runtime_error(what) {}
};

struct HilbertLayout {
  int n_qubits = 1;
  int fock_cutoff = 0;  // Fock basis {0..fock_cutoff}

  HilbertLayout(int n_qubits_, int fock_cutoff_);

  long dim() const { return dim_; }
  int cavity_dim() const { return fock_cutoff + 1; }
  // stride of qubit `site` (1-based) in the flattened index
  long qubit_stride(int site) const;

  bool operator==(const HilbertLayout& o) const {
    return n_qubits == o.n_qubits && fock_cutoff == o.fock_cutoff;
  }

 private:
  long dim_ = 0;
};

struct StateVector {
  HilbertLayout layout;
  Vec amplitudes;

  StateVector(HilbertLayout l, Vec a);
  double norm() const { return amplitudes.norm(); }
  void normalize();
};

struct LinOperator {
  HilbertLayout layout;
  Mat matrix;
  bool hermitian_hint = false;

  LinOperator(HilbertLayout l, Mat m, bool hermitian = false);
};

// local (2x2) placed at `site` (1-based), identity elsewhere
LinOperator embed_qubit_op(const HilbertLayout& layout, int site, const Eigen::Matrix2cd& local);

// identity on all qubits, local on the cavity factor
LinOperator embed_cavity_op(const HilbertLayout& layout, const Mat& local);

// truncated annihilation matrix, <n-1|a|n> = sqrt(n)
Mat annihilation_matrix(int fock_cutoff);

// Pauli matrices in the {|+>,|->} qubit basis.
// sigma_z uses the ground-state-positive convention sigma_z = |-><-| - |+><+|;
// it acts as the pure flip on the sigma_x eigenbasis (|0> <-> |1>, no sign).
Eigen::Matrix2cd pauli_x();
Eigen::Matrix2cd pauli_y();
Eigen::Matrix2cd pauli_z();
Eigen::Matrix2cd sigma_plus();
Eigen::Matrix2cd sigma_minus();

// exp(scale * M). Hermitian-hinted operators go through an
// eigendecomposition; everything else through Pade scaling-and-squaring.
LinOperator mat_exp(const LinOperator& op, cplx scale);

// <a|b>, left argument conjugated
cplx overlap(const StateVector& a, const StateVector& b);

StateVector apply(const LinOperator& op, const StateVector& psi);

// |Tr(P u^dag v P)| / rank(P). Invariant under global phases of u and v.
double unitary_fidelity_up_to_phase(const LinOperator& u, const LinOperator& v,
                                    const LinOperator& projector);

// max_ij |A_ij - B_ij|
double max_abs_diff(const Mat& a, const Mat& b);

bool is_unitary(const Mat& m, double tol = 1e-9);

}  // namespace qdc

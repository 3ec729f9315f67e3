#include "qdcluster/qsys.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace qdc {

namespace {
constexpr long kMaxDim = 1L << 26;
constexpr double kBuildTol = 1e-12;
}  // namespace

HilbertLayout::HilbertLayout(int n_qubits_, int fock_cutoff_)
    : n_qubits(n_qubits_), fock_cutoff(fock_cutoff_) {
  if (n_qubits < 1) throw qdc_error("HilbertLayout: n_qubits must be >= 1");
  if (fock_cutoff < 0) throw qdc_error("HilbertLayout: fock_cutoff must be >= 0");
  if (n_qubits > 26) throw qdc_error("HilbertLayout: dimension exceeds 2^26");
  long d = 1;
  for (int i = 0; i < n_qubits; ++i) d *= 2;
  d *= static_cast<long>(fock_cutoff) + 1;
  if (d > kMaxDim) throw qdc_error("HilbertLayout: dimension exceeds 2^26");
  dim_ = d;
}

long HilbertLayout::qubit_stride(int site) const {
  long s = cavity_dim();
  for (int i = n_qubits; i > site; --i) s *= 2;
  return s;
}

StateVector::StateVector(HilbertLayout l, Vec a) : layout(l), amplitudes(std::move(a)) {
  if (amplitudes.size() != layout.dim())
    throw qdc_error("StateVector: amplitude length does not match layout dimension");
}

void StateVector::normalize() {
  const double n = amplitudes.norm();
  if (n == 0.0) throw qdc_error("StateVector: cannot normalize zero vector");
  amplitudes /= n;
}

LinOperator::LinOperator(HilbertLayout l, Mat m, bool hermitian)
    : layout(l), matrix(std::move(m)), hermitian_hint(hermitian) {
  if (matrix.rows() != layout.dim() || matrix.cols() != layout.dim())
    throw qdc_error("LinOperator: matrix shape does not match layout dimension");
  if (hermitian_hint) {
    const double scale = matrix.cwiseAbs().maxCoeff();
    const double asym = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
    if (asym > kBuildTol * std::max(scale, 1.0))
      throw qdc_error("LinOperator: hermitian_hint set on a non-Hermitian matrix");
  }
}

Eigen::Matrix2cd pauli_x() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}

Eigen::Matrix2cd pauli_y() {
  Eigen::Matrix2cd m;
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}

Eigen::Matrix2cd pauli_z() {
  // +1 on |->: flips sigma_x eigenstates without a sign
  Eigen::Matrix2cd m;
  m << -1, 0, 0, 1;
  return m;
}

Eigen::Matrix2cd sigma_plus() {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(0, 1) = 1;  // |+><-|
  return m;
}

Eigen::Matrix2cd sigma_minus() {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(1, 0) = 1;  // |-><+|
  return m;
}

LinOperator embed_qubit_op(const HilbertLayout& layout, int site, const Eigen::Matrix2cd& local) {
  if (site < 1 || site > layout.n_qubits)
    throw qdc_error("embed_qubit_op: site out of range");
  const long d = layout.dim();
  const long stride = layout.qubit_stride(site);
  Mat out = Mat::Zero(d, d);
  for (long col = 0; col < d; ++col) {
    const int b = static_cast<int>((col / stride) % 2);
    const long base = col - b * stride;
    for (int bp = 0; bp < 2; ++bp) {
      const cplx v = local(bp, b);
      if (v != cplx(0, 0)) out(base + bp * stride, col) += v;
    }
  }
  return LinOperator(layout, std::move(out));
}

LinOperator embed_cavity_op(const HilbertLayout& layout, const Mat& local) {
  const int nc = layout.cavity_dim();
  if (local.rows() != nc || local.cols() != nc)
    throw qdc_error("embed_cavity_op: local dimension does not match fock_cutoff+1");
  const long d = layout.dim();
  const long nq = d / nc;
  Mat out = Mat::Zero(d, d);
  for (long q = 0; q < nq; ++q)
    out.block(q * nc, q * nc, nc, nc) = local;
  return LinOperator(layout, std::move(out));
}

Mat annihilation_matrix(int fock_cutoff) {
  const int nc = fock_cutoff + 1;
  Mat a = Mat::Zero(nc, nc);
  for (int n = 1; n < nc; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

LinOperator mat_exp(const LinOperator& op, cplx scale) {
  if (!op.matrix.allFinite()) throw qdc_error("mat_exp: non-finite entries");
  const long d = op.layout.dim();
  if (scale == cplx(0, 0))
    return LinOperator(op.layout, Mat::Identity(d, d));
  if (op.hermitian_hint) {
    Eigen::SelfAdjointEigenSolver<Mat> es(op.matrix);
    if (es.info() != Eigen::Success)
      throw qdc_error("mat_exp: eigendecomposition failed (numerical degeneracy)");
    Vec ph(d);
    for (long i = 0; i < d; ++i) ph(i) = std::exp(scale * es.eigenvalues()(i));
    Mat out = es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
    return LinOperator(op.layout, std::move(out));
  }
  Mat scaled = scale * op.matrix;
  return LinOperator(op.layout, scaled.exp());
}

cplx overlap(const StateVector& a, const StateVector& b) {
  if (!(a.layout == b.layout)) throw qdc_error("overlap: layout mismatch");
  return a.amplitudes.dot(b.amplitudes);  // Eigen dot conjugates the left side
}

StateVector apply(const LinOperator& op, const StateVector& psi) {
  if (!(op.layout == psi.layout)) throw qdc_error("apply: layout mismatch");
  return StateVector(psi.layout, op.matrix * psi.amplitudes);
}

double unitary_fidelity_up_to_phase(const LinOperator& u, const LinOperator& v,
                                    const LinOperator& projector) {
  if (!(u.layout == v.layout) || !(u.layout == projector.layout))
    throw qdc_error("unitary_fidelity_up_to_phase: layout mismatch");
  const Mat& p = projector.matrix;
  if (max_abs_diff(p * p, p) > 1e-10 || max_abs_diff(p, p.adjoint()) > 1e-10)
    throw qdc_error("unitary_fidelity_up_to_phase: projector is not an orthogonal projector");
  const double rank = p.trace().real();
  if (rank < 0.5) throw qdc_error("unitary_fidelity_up_to_phase: projector has rank 0");
  const cplx tr = (p * u.matrix.adjoint() * v.matrix * p).trace();
  return std::abs(tr) / rank;
}

double max_abs_diff(const Mat& a, const Mat& b) { return (a - b).cwiseAbs().maxCoeff(); }

bool is_unitary(const Mat& m, double tol) {
  const Mat g = m.adjoint() * m;
  return max_abs_diff(g, Mat::Identity(m.rows(), m.cols())) <= tol;
}

}  // namespace qdc

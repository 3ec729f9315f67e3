#pragma once

#include <random>
#include <vector>

#include "qdcluster/qsys.hpp"

// Test-side oracles, kept independent of the library's index arithmetic.

namespace qdc::test {

// naive nested-loop Kronecker product
inline Mat kron_oracle(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j)
      for (long k = 0; k < b.rows(); ++k)
        for (long l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

// factor list in layout order (qubit 1 first, cavity last)
inline Mat kron_chain_oracle(const std::vector<Mat>& factors) {
  Mat out = Mat::Identity(1, 1);
  for (const Mat& f : factors) out = kron_oracle(out, f);
  return out;
}

inline Mat taylor_exp_oracle(const Mat& m, cplx scale, int terms = 40) {
  Mat acc = Mat::Identity(m.rows(), m.cols());
  Mat term = Mat::Identity(m.rows(), m.cols());
  for (int k = 1; k <= terms; ++k) {
    term = (term * (scale * m) / static_cast<double>(k)).eval();
    acc += term;
  }
  return acc;
}

inline Mat random_hermitian(long dim, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat m(dim, dim);
  for (long i = 0; i < dim; ++i)
    for (long j = 0; j < dim; ++j) m(i, j) = cplx(u(rng), u(rng));
  return (m + Mat(m.adjoint())) / 2.0;
}

inline Eigen::Matrix2cd random_2x2(unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::Matrix2cd m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m(i, j) = cplx(u(rng), u(rng));
  return m;
}

// reduced density matrix of qubit `site` (1-based) for a qubits-only state
inline Eigen::Matrix2cd reduced_qubit_oracle(const StateVector& psi, int site) {
  const int n = psi.layout.n_qubits;
  const long d = psi.layout.dim();
  Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
  const long stride = 1L << (n - site);
  for (long i = 0; i < d; ++i)
    for (long j = 0; j < d; ++j) {
      const int bi = static_cast<int>((i / stride) % 2);
      const int bj = static_cast<int>((j / stride) % 2);
      if ((i - bi * stride) != (j - bj * stride)) continue;
      rho(bi, bj) += psi.amplitudes(i) * std::conj(psi.amplitudes(j));
    }
  return rho;
}

}  // namespace qdc::test

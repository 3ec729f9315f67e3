#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qdcluster/constants.hpp"
#include "qdcluster/qsys.hpp"
#include "test_helpers.hpp"

using namespace qdc;
using test::kron_chain_oracle;
using test::kron_oracle;
using test::random_2x2;
using test::random_hermitian;
using test::taylor_exp_oracle;

TEST_CASE("layout dimensions and validation") {
  CHECK(HilbertLayout(1, 0).dim() == 2);
  CHECK(HilbertLayout(2, 1).dim() == 8);
  CHECK(HilbertLayout(3, 4).dim() == 40);
  CHECK(HilbertLayout(2, 1).qubit_stride(1) == 4);
  CHECK(HilbertLayout(2, 1).qubit_stride(2) == 2);
  CHECK_THROWS_AS(HilbertLayout(0, 0), qdc_error);
  CHECK_THROWS_AS(HilbertLayout(1, -1), qdc_error);
  CHECK_THROWS_AS(HilbertLayout(20, (1 << 8) - 1), qdc_error);  // 2^28
}

TEST_CASE("embed_qubit_op: identity and single-factor cases") {
  const HilbertLayout layout(2, 1);
  const Mat id = embed_qubit_op(layout, 1, Eigen::Matrix2cd::Identity()).matrix;
  CHECK(max_abs_diff(id, Mat::Identity(8, 8)) == 0.0);

  const HilbertLayout one(1, 0);
  CHECK(max_abs_diff(embed_qubit_op(one, 1, pauli_x()).matrix, pauli_x()) == 0.0);

  CHECK_THROWS_AS(embed_qubit_op(layout, 0, pauli_x()), qdc_error);
  CHECK_THROWS_AS(embed_qubit_op(layout, 3, pauli_x()), qdc_error);
}

TEST_CASE("embed_qubit_op matches the nested-loop tensor oracle") {
  // layout(N=2, n_max=1), sigma_x at site 2: <+,-,0|Op|+,+,0> = 1
  const HilbertLayout layout(2, 1);
  const Mat op = embed_qubit_op(layout, 2, pauli_x()).matrix;
  const long row = (0 * 2 + 1) * 2 + 0;  // |+,-,n=0>
  const long col = (0 * 2 + 0) * 2 + 0;  // |+,+,n=0>
  CHECK(op(row, col) == cplx(1, 0));

  const Mat i2 = Mat::Identity(2, 2);
  CHECK(max_abs_diff(op, kron_chain_oracle({i2, pauli_x(), i2})) == 0.0);
  const Mat at1 = embed_qubit_op(layout, 1, sigma_plus()).matrix;
  CHECK(max_abs_diff(at1, kron_chain_oracle({sigma_plus(), i2, i2})) == 0.0);

  // a 3-qubit case with a cavity, random local
  const HilbertLayout l3(3, 2);
  const Eigen::Matrix2cd loc = random_2x2(7);
  const Mat i3 = Mat::Identity(3, 3);
  CHECK(max_abs_diff(embed_qubit_op(l3, 2, loc).matrix,
                     kron_chain_oracle({i2, Mat(loc), i2, i3})) < 1e-15);
}

TEST_CASE("embedding is a homomorphism per site and commutes across sites") {
  const HilbertLayout layout(3, 1);
  for (unsigned s = 0; s < 6; ++s) {
    const Eigen::Matrix2cd a = random_2x2(100 + s), b = random_2x2(200 + s);
    const int site = 1 + static_cast<int>(s % 3);
    const Mat ea = embed_qubit_op(layout, site, a).matrix;
    const Mat eb = embed_qubit_op(layout, site, b).matrix;
    const Mat eab = embed_qubit_op(layout, site, Eigen::Matrix2cd(a * b)).matrix;
    CHECK(max_abs_diff(ea * eb, eab) < 1e-14);
    const int other = 1 + static_cast<int>((s + 1) % 3);
    const Mat ec = embed_qubit_op(layout, other, b).matrix;
    CHECK(max_abs_diff(ea * ec, ec * ea) < 1e-14);
  }
}

TEST_CASE("embed_cavity_op and the truncated annihilation matrix") {
  const HilbertLayout layout(2, 1);
  CHECK(max_abs_diff(embed_cavity_op(layout, Mat::Identity(2, 2)).matrix,
                     Mat::Identity(8, 8)) == 0.0);

  const Mat a1 = annihilation_matrix(1);
  CHECK(a1(0, 1) == cplx(1, 0));
  CHECK(a1.cwiseAbs().sum() == 1.0);  // single nonzero entry

  // n_max = 3: a^dag a = diag(0,1,2,3) embedded, by direct multiplication
  const HilbertLayout l(1, 3);
  const Mat a = embed_cavity_op(l, annihilation_matrix(3)).matrix;
  Mat num = Mat::Zero(4, 4);
  num.diagonal() << 0, 1, 2, 3;
  CHECK(max_abs_diff(a.adjoint() * a, embed_cavity_op(l, num).matrix) < 1e-15);

  CHECK_THROWS_AS(embed_cavity_op(layout, Mat::Identity(3, 3)), qdc_error);
}

TEST_CASE("mat_exp basics") {
  const HilbertLayout one(1, 0);
  const LinOperator sx(one, pauli_x(), true);

  CHECK(max_abs_diff(mat_exp(sx, cplx(0, 0)).matrix, Mat::Identity(2, 2)) == 0.0);

  // exp(-i pi/2 sx) = -i sx
  const Mat u = mat_exp(sx, cplx(0, -pi / 2)).matrix;
  CHECK(max_abs_diff(u, Mat(cplx(0, -1) * pauli_x())) < 1e-14);
}

TEST_CASE("mat_exp agrees with a 40-term Taylor oracle") {
  const HilbertLayout layout(3, 0);
  const Mat h = random_hermitian(8, 42);
  const LinOperator op(layout, h, true);
  const Mat via_eigen = mat_exp(op, cplx(0, -0.3)).matrix;
  CHECK(max_abs_diff(via_eigen, taylor_exp_oracle(h, cplx(0, -0.3))) < 1e-10);

  // Pade path (no hint), generic non-Hermitian input
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> d(-0.5, 0.5);
  Mat g(8, 8);
  for (long i = 0; i < 8; ++i)
    for (long j = 0; j < 8; ++j) g(i, j) = cplx(d(rng), d(rng));
  const LinOperator gop(layout, g, false);
  CHECK(max_abs_diff(mat_exp(gop, cplx(0.2, 0.1)).matrix,
                     taylor_exp_oracle(g, cplx(0.2, 0.1))) < 1e-12);
}

TEST_CASE("mat_exp group property and unitarity") {
  const HilbertLayout layout(5, 0);
  const Mat h = random_hermitian(32, 9);
  const LinOperator op(layout, h, true);
  const Mat u1 = mat_exp(op, cplx(0, -0.7)).matrix;
  const Mat u2 = mat_exp(op, cplx(0, -0.4)).matrix;
  const Mat u12 = mat_exp(op, cplx(0, -1.1)).matrix;
  CHECK(max_abs_diff(u1 * u2, u12) < 1e-9);
  CHECK(is_unitary(u1));

  // norm preservation
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> d(-1, 1);
  Vec v(32);
  for (long i = 0; i < 32; ++i) v(i) = cplx(d(rng), d(rng));
  StateVector psi(layout, v);
  psi.normalize();
  CHECK(std::abs(apply(LinOperator(layout, u1), psi).norm() - 1.0) < 1e-9);

  Mat bad = h;
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(mat_exp(LinOperator(layout, bad, false), cplx(0, -1)), qdc_error);
}

TEST_CASE("overlap") {
  const HilbertLayout one(1, 0);
  StateVector plus(one, (Vec(2) << 1, 1).finished() / std::sqrt(2.0));
  StateVector minus(one, (Vec(2) << 1, -1).finished() / std::sqrt(2.0));
  StateVector e0(one, (Vec(2) << 1, 0).finished());
  StateVector e1(one, (Vec(2) << 0, 1).finished());

  CHECK(std::abs(overlap(plus, plus) - cplx(1, 0)) < 1e-15);
  CHECK(std::abs(overlap(e0, e1)) == 0.0);
  CHECK(std::abs(overlap(plus, minus)) < 1e-15);

  // left argument conjugated
  StateVector ip(one, (Vec(2) << cplx(0, 1), 0).finished());
  CHECK(std::abs(overlap(ip, e0) - cplx(0, -1)) < 1e-15);

  const HilbertLayout two(2, 0);
  StateVector other(two, Vec::Zero(4));
  CHECK_THROWS_AS(overlap(e0, other), qdc_error);
}

TEST_CASE("unitary_fidelity_up_to_phase") {
  const HilbertLayout layout(2, 0);
  const Mat h = random_hermitian(4, 77);
  const Mat u = mat_exp(LinOperator(layout, h, true), cplx(0, -0.9)).matrix;
  const LinOperator uop(layout, u);
  const LinOperator id(layout, Mat::Identity(4, 4), true);

  CHECK(unitary_fidelity_up_to_phase(uop, uop, id) == doctest::Approx(1.0).epsilon(1e-12));
  const LinOperator uphase(layout, Mat(std::exp(cplx(0, 1.234)) * u));
  CHECK(unitary_fidelity_up_to_phase(uop, uphase, id) ==
        doctest::Approx(1.0).epsilon(1e-12));

  // symmetry and separate-phase invariance
  const Mat v = mat_exp(LinOperator(layout, random_hermitian(4, 78), true),
                        cplx(0, -0.4)).matrix;
  const LinOperator vop(layout, v);
  const LinOperator vphase(layout, Mat(std::exp(cplx(0, -2.1)) * v));
  const double fuv = unitary_fidelity_up_to_phase(uop, vop, id);
  CHECK(unitary_fidelity_up_to_phase(vop, uop, id) == doctest::Approx(fuv).epsilon(1e-12));
  CHECK(unitary_fidelity_up_to_phase(uphase, vphase, id) ==
        doctest::Approx(fuv).epsilon(1e-12));

  // traceless comparison: identity vs sigma_x on one qubit
  const HilbertLayout one(1, 0);
  CHECK(unitary_fidelity_up_to_phase(LinOperator(one, Mat::Identity(2, 2)),
                                     LinOperator(one, pauli_x()),
                                     LinOperator(one, Mat::Identity(2, 2))) == 0.0);

  // projector validation
  Mat notp = Mat::Identity(4, 4) * 0.5;
  CHECK_THROWS_AS(unitary_fidelity_up_to_phase(uop, vop, LinOperator(layout, notp)),
                  qdc_error);
  CHECK_THROWS_AS(unitary_fidelity_up_to_phase(uop, vop, LinOperator(layout, Mat::Zero(4, 4))),
                  qdc_error);
}

TEST_CASE("state and operator validation") {
  const HilbertLayout layout(1, 0);
  CHECK_THROWS_AS(StateVector(layout, Vec::Zero(3)), qdc_error);
  StateVector z(layout, Vec::Zero(2));
  CHECK_THROWS_AS(z.normalize(), qdc_error);

  Mat nh(2, 2);
  nh << 0, 1, 0, 0;
  CHECK_THROWS_AS(LinOperator(layout, nh, true), qdc_error);
  CHECK_NOTHROW(LinOperator(layout, nh, false));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qdcluster/dotmodel.hpp"

using namespace qdc;

TEST_CASE("eigenstructure at the sweet spot and limits") {
  const Eigenstructure e = eigenstructure(DotParams(5.0, 0.0));
  CHECK(e.omega_uev == doctest::Approx(10.0).epsilon(1e-14));
  CHECK(e.theta_rad == doctest::Approx(-pi / 4).epsilon(1e-14));
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(e.plus_coeffs(0) == doctest::Approx(r));   // |+> = (|11S>+|02S>)/sqrt2
  CHECK(e.plus_coeffs(1) == doctest::Approx(r));
  CHECK(e.minus_coeffs(0) == doctest::Approx(r));  // |-> = (|11S>-|02S>)/sqrt2
  CHECK(e.minus_coeffs(1) == doctest::Approx(-r));

  // far-detuned limit: |+> -> |02S>
  const Eigenstructure far = eigenstructure(DotParams(1.0, 1e4));
  CHECK(std::abs(far.theta_rad) < 1e-3);
  CHECK(std::abs(far.plus_coeffs(0)) < 1e-3);
  CHECK(far.plus_coeffs(1) == doctest::Approx(1.0).epsilon(1e-6));

  CHECK_THROWS_AS(DotParams(0.0, 1.0), qdc_error);
  CHECK_THROWS_AS(DotParams(-1.0, 1.0), qdc_error);
}

TEST_CASE("eigenstructure coefficient pairs are orthonormal") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> tc(0.1, 20.0), det(-50.0, 50.0);
  for (int i = 0; i < 50; ++i) {
    const Eigenstructure e = eigenstructure(DotParams(tc(rng), det(rng)));
    CHECK(e.plus_coeffs.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(e.minus_coeffs.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(e.plus_coeffs.dot(e.minus_coeffs)) < 1e-12);
  }
}

TEST_CASE("coupling_g0 reproduces the design number") {
  const CircuitParams c(2.0 * pi * 2e9, 400e-18, 200e-18, 50.0, 1e5);
  const double g0 = coupling_g0(c);
  CHECK(std::abs(g0 / (2.0 * pi) - 125e6) / 125e6 < 0.02);

  // sqrt(2 z0/R_Q) = 0.06224, within 1% of 1/16
  CHECK(std::sqrt(2.0 * 50.0 / c.r_q_ohm) == doctest::Approx(0.06224).epsilon(1e-3));
  CHECK(std::abs(std::sqrt(2.0 * 50.0 / c.r_q_ohm) - 1.0 / 16.0) / (1.0 / 16.0) < 0.01);

  // linear in C_c
  const CircuitParams half(2.0 * pi * 2e9, 200e-18, 200e-18, 50.0, 1e5);
  CHECK(coupling_g0(half) == doctest::Approx(g0 / 2.0).epsilon(1e-15));

  CHECK_THROWS_AS(CircuitParams(2e9, -1e-18, 200e-18, 50.0, 1e5), qdc_error);
  CHECK_THROWS_AS(CircuitParams(2e9, 2000e-18, 200e-18, 50.0, 1e5), qdc_error);
}

TEST_CASE("effective_coupling tuning with the detuning") {
  const CircuitParams c(2.0 * pi * 2e9, 400e-18, 200e-18, 50.0, 1e5);
  const double g0 = coupling_g0(c);
  CHECK(effective_coupling(c, DotParams(4.0, 0.0)) == doctest::Approx(g0).epsilon(1e-14));
  // Delta = 2 sqrt(3) Tc makes Omega = 4 Tc
  CHECK(effective_coupling(c, DotParams(4.0, 8.0 * std::sqrt(3.0))) ==
        doctest::Approx(g0 / 2.0).epsilon(1e-12));
  CHECK(effective_coupling(c, DotParams(4.0, 400.0)) <= 0.02 * g0);

  // even in Delta, maximal at 0
  for (double d : {1.0, 3.7, 12.0}) {
    CHECK(effective_coupling(c, DotParams(4.0, d)) ==
          doctest::Approx(effective_coupling(c, DotParams(4.0, -d))).epsilon(1e-14));
    CHECK(effective_coupling(c, DotParams(4.0, d)) < g0);
  }
}

TEST_CASE("solve_schedule at the nominal operating point") {
  const double g0 = 2.0 * pi * 125e6;
  const GateSchedule s = solve_schedule(g0, 1, 0, 2);
  CHECK(s.delta_rad_s == doctest::Approx(2.0 * g0).epsilon(1e-15));
  CHECK(s.delta_rad_s / (2.0 * pi) == doctest::Approx(250e6).epsilon(1e-15));
  CHECK(std::abs(s.tau_s - 4e-9) / 4e-9 < 1e-12);
  CHECK(std::abs(4.0 * s.lambda_rad_s * s.tau_s - pi) < 1e-12);
  CHECK(s.eta_rad_s() == doctest::Approx(s.lambda_rad_s));

  const GateSchedule s25 = solve_schedule(g0, 25, 0, 2);
  CHECK(s25.delta_rad_s == doctest::Approx(10.0 * g0).epsilon(1e-15));
  CHECK(s25.tau_s == doctest::Approx(50.0 * pi / s25.delta_rad_s).epsilon(1e-15));
  CHECK(std::abs(4.0 * s25.lambda_rad_s * s25.tau_s - pi) < 1e-12);

  CHECK_THROWS_AS(solve_schedule(0.0, 1, 0, 2), qdc_error);
  CHECK_THROWS_AS(solve_schedule(g0, 0, 0, 2), qdc_error);
  CHECK_THROWS_AS(solve_schedule(g0, 1, -1, 2), qdc_error);
}

TEST_CASE("solve_schedule timing conditions over the (k, n) grid") {
  const double g0 = 2.0 * pi * 125e6;
  for (int k = 1; k <= 100; k += 3)
    for (int n = 0; n <= 100; n += 7) {
      const GateSchedule s = solve_schedule(g0, k, n, 3);
      CHECK(std::abs(s.condition1_residual()) <= 1e-12 * 2 * k * pi);
      CHECK(std::abs(s.condition2_residual()) <= 1e-12 * (2 * n + 1) * pi);
    }
}

TEST_CASE("decoherence budget reproduces the reported timescales") {
  const CircuitParams c(2.0 * pi * 2e9, 400e-18, 200e-18, 50.0, 1e5);
  const GateSchedule s = solve_schedule(coupling_g0(c), 1, 0, 2);
  const DecoherenceInputs d;
  const BudgetReport b = decoherence_budget(c, d, s);

  CHECK(b.photon_decay_time_s == doctest::Approx(50e-6).epsilon(1e-12));
  // (Omega/h) T2bare^2 with Omega = 10 ueV: 2.418 GHz * (10 ns)^2 = 241.8 ns
  CHECK(b.t2_alpha_s == doctest::Approx(241.8e-9).epsilon(1e-3));
  CHECK(b.t2_alpha_s / 100e-9 < 3.0);  // order of magnitude vs the quoted 100 ns
  CHECK(b.pass);
  CHECK(b.ratio_t2_alpha > 25.0);  // every scale at least 25x the gate time
  CHECK(b.ratio_t2_star > 25.0);
  CHECK(b.ratio_t1 > 25.0);
  CHECK(b.ratio_photon > 25.0);

  // the margin is a knob
  CHECK_FALSE(decoherence_budget(c, d, s, 1e3).pass);

  const CircuitParams low_q(2.0 * pi * 2e9, 400e-18, 200e-18, 50.0, 50.0);
  CHECK_FALSE(decoherence_budget(low_q, d, s).pass);  // 25 ns decay < 10 tau
}

TEST_CASE("adiabatic sweep: slow ramp follows the eigenstate") {
  const double tc = 5.0;
  const double duration = 1000.0 * hbar_uev_s / tc;
  const SweepResult r =
      adiabatic_sweep(DotParams(tc, 100.0), DotParams(tc, 0.0), duration, 20000);
  CHECK(r.adiabaticity >= 0.99);
  CHECK(r.tracked_upper_branch);  // |02S> at large positive Delta sits on +Omega/2
  CHECK(r.step_converged);
  CHECK(r.final_state.norm() == doctest::Approx(1.0).epsilon(1e-10));
  // the + branch at Delta = 0 is (|11S>+|02S>)/sqrt2 up to phase
  CHECK(std::norm(r.final_state(0) + r.final_state(1)) / 2.0 >= 0.99);
}

TEST_CASE("adiabatic sweep: sudden and stationary limits") {
  const double tc = 5.0;
  const SweepResult sudden =
      adiabatic_sweep(DotParams(tc, 100.0), DotParams(tc, 0.0), 1e-30, 200);
  CHECK(std::abs(sudden.final_state(0)) < 1e-12);
  CHECK(std::norm(sudden.final_state(1)) == doctest::Approx(1.0).epsilon(1e-12));

  // constant, strongly detuned Hamiltonian: |02S> is an eigenstate to 1e-10
  const double big = 5e7;
  const SweepResult stat =
      adiabatic_sweep(DotParams(tc, big), DotParams(tc, big), 3e-9, 5000);
  CHECK(stat.adiabaticity == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::norm(stat.final_state(1)) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("adiabatic sweep validation") {
  CHECK_THROWS_AS(adiabatic_sweep(DotParams(5, 10), DotParams(5, 0), 0.0, 500), qdc_error);
  CHECK_THROWS_AS(adiabatic_sweep(DotParams(5, 10), DotParams(5, 0), 1e-9, 99), qdc_error);
  CHECK_THROWS_AS(adiabatic_sweep(DotParams(5, 10), DotParams(6, 0), 1e-9, 500), qdc_error);
}

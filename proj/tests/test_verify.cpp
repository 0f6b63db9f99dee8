#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "mellin/kernels.hpp"
#include "mellin/verify.hpp"

using namespace mellin;

namespace {
constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};
}  // namespace

TEST_CASE("Bessel-potential commutation: multiplier vs quadrature paths") {
  const auto fns = bump_test_family();
  const GridOptions grid;

  // s = 0: the two sides reduce to the same operator; the residual measures
  // the adaptive quadrature against the grid quadrature
  CHECK(bessel_commutation_residual(std::polar(1.0, -kPi / 2.0), 0.0, std::polar(1.0, kPi / 4.0), fns,
                       grid) < 1e-7);

  CHECK(check_bessel_commutation(std::polar(1.0, -kPi / 2.0), -0.5, std::polar(1.0, kPi / 4.0), fns, grid)
            .status == "pass");
  CHECK(check_bessel_commutation(cplx(-1.0), 1.0, std::polar(1.0, kPi / 3.0), fns, grid).status == "pass");

  // violated hypothesis raises, and the identity genuinely fails there
  CHECK_THROWS_AS(
      check_bessel_commutation(std::polar(1.0, -kPi / 2.0), -0.5, std::polar(1.0, 3.0 * kPi / 4.0), fns,
                  grid),
      Error);
  CHECK(bessel_commutation_residual(std::polar(1.0, -kPi / 2.0), -0.5, std::polar(1.0, 3.0 * kPi / 4.0),
                       fns, grid) >= kNegativeControlFloor);
}

TEST_CASE("integer-order Bessel potentials: differential vs multiplier path") {
  const GridOptions grid;
  const GridSpec gs = fourier_grid(grid.half_width, grid.n);
  const cplx gamma = std::polar(1.0, kPi / 4.0);
  const TestFn fn = bump_test_family()[0];
  const SampledFunction f =
      sample(gs, [&](double x) { return x > 0.0 ? fn.f(x) : cplx(0.0); });

  // on smooth compactly supported data the 6th-order stencil and the exact
  // spectral derivative agree to the stencil's truncation error
  const SampledFunction via_fd = apply_lambda_grid(1.0, -gamma, f);
  const SampledFunction via_fft = apply_lambda_smooth(1.0, -gamma, f);
  CHECK(windowed_residual(via_fd, via_fft, 0.5, 20.0) < 1e-5);

  const SampledFunction via_fd2 = apply_lambda_grid(2.0, -gamma, f);
  const SampledFunction via_fft2 = apply_lambda_smooth(2.0, -gamma, f);
  CHECK(windowed_residual(via_fd2, via_fft2, 0.5, 20.0) < 1e-4);
}

TEST_CASE("auxiliary-shift commutation form and the measured commutator") {
  const auto fns = bump_test_family();
  const GridOptions grid;
  const cplx c = std::polar(1.0, 3.0 * kPi / 4.0);
  const cplx gamma = std::polar(1.0, 3.0 * kPi / 5.0);
  const cplx gamma0 = std::polar(1.0, 7.0 * kPi / 10.0);

  // gamma0 = gamma collapses g^s_{-gamma,-gamma0} to 1 and reduces to the
  // plain commutation identity
  const CheckResult reduced = check_aux_shift_form(c, -0.5, gamma, gamma, fns, grid);
  CHECK(reduced.status == "pass");
  const double base = bessel_commutation_residual(c, -0.5, gamma, fns, grid);
  CHECK(std::abs(reduced.residual - base) < 5e-6);

  const CheckResult full = check_aux_shift_form(c, -0.5, gamma, gamma0, fns, grid);
  CHECK(full.status == "pass");

  const double mag = aux_shift_commutator_magnitude(c, -0.5, gamma, gamma0, fns, grid);
  MESSAGE("aux-shift commutator magnitude on the bump family: ", mag);
  CHECK(mag > 0.0);
  CHECK(mag < 1.0);

  CHECK_THROWS_AS(check_aux_shift_form(c, -0.5, gamma, std::polar(1.0, kPi / 8.0), fns, grid), Error);
}

TEST_CASE("double-pole lift with its compact tail evaluated directly") {
  const auto fns = bump_test_family();
  const GridOptions grid;
  const cplx c = std::polar(1.0, -kPi / 2.0);
  const cplx gamma = std::polar(1.0, kPi / 4.0);

  const CheckResult degenerate = check_double_pole_lift(c, 0.0, gamma, fns, grid);
  CHECK(degenerate.residual < 1e-10);
  CHECK(degenerate.status == "pass");

  const CheckResult half = check_double_pole_lift(c, -0.5, gamma, fns, grid);
  CHECK(half.status == "pass");
  CHECK(half.residual < 1e-3);
}

TEST_CASE("restricted product rule checks") {
  const auto fns = bump_test_family();
  const GridOptions grid;
  const cplx gamma(0.0, 1.0);

  CHECK(check_wh_product(Multiplier::lambda(0.5, -gamma), Multiplier::lambda(-0.5, gamma),
                         fns, grid)
            .residual < 1e-8);
  CHECK(check_wh_product(Multiplier::constant(1.0), Multiplier::constant(1.0), fns, grid)
            .residual < 1e-12);

  const Multiplier hilbert = Multiplier::piecewise(cplx(0.0, 1.0), cplx(0.0, -1.0));
  CHECK_THROWS_AS(check_wh_product(hilbert, hilbert, fns, grid), Error);
  const CheckResult negative = check_wh_product(hilbert, hilbert, fns, grid, true);
  CHECK(negative.residual >= kNegativeControlFloor);
  CHECK(negative.status == "pass");
}

TEST_CASE("lifted identity multiplier") {
  const auto fns = bump_test_family();
  const GridOptions grid;

  AnalysisParams trivial = make_params(2.0, 0.0);
  CHECK(check_lifted_identity_symbols(trivial, fns, grid).residual < 1e-12);

  AnalysisParams half = make_params(2.0, 0.5);
  const CheckResult res = check_lifted_identity_symbols(half, fns, grid);
  CHECK(res.status == "pass");
}

TEST_CASE("residuals do not grow under simultaneous grid refinement") {
  const auto fns = bump_test_family();
  GridOptions coarse;
  coarse.half_width = 32.0;
  coarse.n = 1u << 11;
  GridOptions fine;
  fine.half_width = 64.0;
  fine.n = 1u << 13;

  const cplx c = std::polar(1.0, -kPi / 2.0);
  const cplx gamma = std::polar(1.0, kPi / 4.0);
  const double r_coarse = bessel_commutation_residual(c, -0.5, gamma, fns, coarse);
  const double r_fine = bessel_commutation_residual(c, -0.5, gamma, fns, fine);
  // non-increasing until the quadrature floor
  CHECK(r_fine <= std::max(1.05 * r_coarse, 2e-6));
}

TEST_CASE("verification matrix serialization") {
  std::vector<CheckResult> results;
  results.push_back({"demo", {{"s", "0.5"}}, 1e-5, 1e-4, "pass"});
  results.push_back({"demo2", {}, 0.2, 0.0, "measured"});
  const std::string json = verification_matrix_json(results);
  CHECK(json.find("\"check\": \"demo\"") != std::string::npos);
  CHECK(json.find("\"status\": \"measured\"") != std::string::npos);
  CHECK(json.find("\"residual\"") != std::string::npos);
}

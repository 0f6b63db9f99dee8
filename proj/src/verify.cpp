#include "mellin/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "mellin/kernels.hpp"

namespace mellin {

namespace {
constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

const ApplyOptions kLooseApply{/*restrict_halfline=*/false, /*edge_tol=*/1e30};
}  // namespace

std::vector<TestFn> bump_test_family() {
  auto bump = [](double a, double b) {
    return [a, b](double t) -> cplx {
      const double u = (2.0 * t - (a + b)) / (b - a);
      if (u <= -1.0 || u >= 1.0) return 0.0;
      return std::exp(-1.0 / (1.0 - u * u));
    };
  };
  return {
      {"bump(0.6,3.2)", 0.6, 3.2, bump(0.6, 3.2)},
      {"bump(1.0,7.5)", 1.0, 7.5, bump(1.0, 7.5)},
  };
}

std::vector<TestFn> standard_test_family() {
  std::vector<TestFn> fam = bump_test_family();
  fam.push_back({"t^0.3*exp(-t)", 0.0, 40.0,
                 [](double t) -> cplx { return t <= 0.0 ? 0.0 : std::pow(t, 0.3) * std::exp(-t); }});
  return fam;
}

double windowed_residual(const SampledFunction& got, const SampledFunction& want,
                         double lo, double hi) {
  if (!got.grid.same_as(want.grid)) fail(Err::GridMismatch, "grids differ");
  double num = 0.0, den = 0.0;
  for (size_t k = 0; k < got.grid.n; ++k) {
    const double x = got.grid.x(k);
    if (x < lo || x > hi) continue;
    num += std::norm(got.v[k] - want.v[k]);
    den += std::norm(want.v[k]);
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

namespace {

SampledFunction sample_halfline(const GridSpec& grid, const TestFn& fn) {
  SampledFunction out;
  out.grid = grid;
  out.v.resize(grid.n);
  for (size_t k = 0; k < grid.n; ++k) {
    const double x = grid.x(k);
    out.v[k] = x > 0.0 ? fn.f(x) : cplx(0.0);
  }
  return out;
}

void restrict_halfline(SampledFunction& f) {
  for (size_t k = 0; k < f.grid.n; ++k)
    if (f.grid.x(k) < 0.0) f.v[k] = 0.0;
}

// (i d/dx + shift) with a 6th-order central stencil; the three cells at each
// array end are dropped (data there is zero or outside every window).
SampledFunction apply_diff_factor(cplx shift, const SampledFunction& f) {
  SampledFunction out;
  out.grid = f.grid;
  out.v.assign(f.grid.n, cplx(0.0));
  const double c1 = 3.0 / 4.0, c2 = -3.0 / 20.0, c3 = 1.0 / 60.0;
  const double inv = 1.0 / f.grid.dx;
  for (size_t j = 3; j + 3 < f.grid.n; ++j) {
    const cplx d = (c1 * (f.v[j + 1] - f.v[j - 1]) + c2 * (f.v[j + 2] - f.v[j - 2]) +
                    c3 * (f.v[j + 3] - f.v[j - 3])) *
                   inv;
    out.v[j] = kI * d + shift * f.v[j];
  }
  return out;
}

// K^1_c f on the grid via the pointwise adaptive quadrature (f given in
// closed form), sampled at every positive node.
SampledFunction k1_of_testfn(cplx c, const TestFn& fn, const GridSpec& grid) {
  std::vector<double> ts;
  std::vector<size_t> idx;
  for (size_t k = 0; k < grid.n; ++k) {
    if (grid.x(k) > 0.0) {
      ts.push_back(grid.x(k));
      idx.push_back(k);
    }
  }
  const std::vector<cplx> vals = k1_pointwise(c, fn.f, fn.lo, fn.hi, ts);
  SampledFunction out;
  out.grid = grid;
  out.v.assign(grid.n, cplx(0.0));
  for (size_t i = 0; i < idx.size(); ++i) out.v[idx[i]] = vals[i];
  return out;
}

std::string fmt_cplx(cplx z) {
  std::ostringstream os;
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

std::string fmt_num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

CheckResult grade(std::string id, std::vector<std::pair<std::string, std::string>> params,
                  double residual, double threshold) {
  CheckResult r;
  r.id = std::move(id);
  r.params = std::move(params);
  r.residual = residual;
  r.threshold = threshold;
  if (threshold == 0.0)
    r.status = "measured";
  else
    r.status = residual <= threshold ? "pass" : "fail";
  return r;
}

void require_commutation_hypotheses(cplx c, cplx gamma) {
  std::string bad;
  if (c.imag() == 0.0 && c.real() >= 0.0) bad += " arg(c) = 0;";
  const double ag = std::arg(gamma);
  if (!(ag > 0.0 && ag < kPi)) bad += " arg(gamma) outside (0, pi);";
  const double acg = std::arg(c * gamma);
  if (!(acg > -kPi && acg < 0.0)) bad += " arg(c*gamma) outside (-pi, 0);";
  if (!bad.empty()) fail(Err::HypothesisViolated, "violated:" + bad);
}

cplx c_pow_op(cplx c, double e) { return pow_with_arg(c, cplx(e), arg_op(c)); }

}  // namespace

SampledFunction apply_lambda_smooth(double r, cplx shift, const SampledFunction& f) {
  return apply_fourier_multiplier(Multiplier::lambda(r, shift), f, kLooseApply);
}

namespace {

// Fractional anti-causal part on half-line data.  Zero-extended functions
// like K^1_c f jump at the origin, and that jump aliases through the FFT
// multiplier at first order in the grid spacing.  Subtract the template
// (J + b x) e^{-x} 1_{x>0} matching value and slope at 0+, whose image under
// W_{(xi+shift)^{s}} is closed-form:
//   e^{-pi s i/2} (1 + i shift)^{s} e^{-x} [J + b x + b s (1 + i shift)^{-1}],
// and apply the FFT only to the C^1 remainder.
SampledFunction apply_lambda_frac_halfline(double s, cplx shift, const SampledFunction& f) {
  const GridSpec& g = f.grid;
  size_t j0 = 0;
  while (j0 < g.n && g.x(j0) <= 0.0) ++j0;
  if (j0 + 4 >= g.n) return apply_lambda_smooth(s, shift, f);
  // cubic extrapolation of value and slope to x = 0+
  const cplx v1 = f.v[j0], v2 = f.v[j0 + 1], v3 = f.v[j0 + 2], v4 = f.v[j0 + 3];
  const double off = g.x(j0) / g.dx;  // node offset in cells (usually 1)
  cplx val0 = 0.0, slope0 = 0.0;
  {
    // Lagrange basis at t = 0 for nodes t_k = off + k (k = 0..3), in cells
    const double t0 = off, t1 = off + 1, t2 = off + 2, t3 = off + 3;
    const double ts[4] = {t0, t1, t2, t3};
    const cplx vs[4] = {v1, v2, v3, v4};
    for (int i = 0; i < 4; ++i) {
      double li = 1.0, dli = 0.0;
      for (int j = 0; j < 4; ++j) {
        if (j == i) continue;
        double prod = 1.0;
        for (int k = 0; k < 4; ++k)
          if (k != i && k != j) prod *= (0.0 - ts[k]) / (ts[i] - ts[k]);
        dli += prod / (ts[i] - ts[j]);
        li *= (0.0 - ts[j]) / (ts[i] - ts[j]);
      }
      val0 += li * vs[i];
      slope0 += dli * vs[i];
    }
    slope0 /= g.dx;
  }
  const cplx J = val0;
  const cplx b = slope0 + J;  // template slope at 0+ is b - J

  SampledFunction rem = f;
  for (size_t k = j0; k < g.n; ++k) {
    const double x = g.x(k);
    rem.v[k] -= (J + b * x) * std::exp(-x);
  }
  SampledFunction out = apply_lambda_smooth(s, shift, rem);
  const cplx w = 1.0 + kI * shift;  // Re w > 0 for Im shift < 0
  const cplx pref = std::exp(cplx(0.0, -0.5 * kPi * s)) * std::pow(w, cplx(s));
  for (size_t k = j0; k < g.n; ++k) {
    const double x = g.x(k);
    out.v[k] += pref * std::exp(-x) * (J + b * (x - s / w));
  }
  return out;
}

}  // namespace

SampledFunction apply_lambda_grid(double r, cplx shift, const SampledFunction& f) {
  if (r == 0.0) return f;
  const int m = r > 0.0 ? static_cast<int>(std::ceil(r)) : 0;
  const double s0 = r - static_cast<double>(m);  // in (-1, 0]
  SampledFunction out = f;
  if (s0 != 0.0) {
    out = shift.imag() < 0.0 ? apply_lambda_frac_halfline(s0, shift, out)
                             : apply_lambda_smooth(s0, shift, out);
  }
  for (int k = 0; k < m; ++k) out = apply_diff_factor(shift, out);
  return out;
}

double bessel_commutation_residual(cplx c, double s, cplx gamma, const std::vector<TestFn>& fns,
                      const GridOptions& grid) {
  const GridSpec gs = fourier_grid(grid.half_width, grid.n);
  const cplx cms = c_pow_op(c, -s);
  double worst = 0.0;
  for (const TestFn& fn : fns) {
    // multiplier-after-quadrature path
    SampledFunction k1f = k1_of_testfn(c, fn, gs);
    taper_edges(k1f);
    const SampledFunction lhs = apply_lambda_grid(s, -gamma, k1f);

    // quadrature-after-multiplier path
    SampledFunction lf = apply_lambda_smooth(s, -c * gamma, sample_halfline(gs, fn));
    restrict_halfline(lf);
    SampledFunction rhs = apply_K1_direct(c, lf);
    for (cplx& v : rhs.v) v *= cms;

    worst = std::max(worst, windowed_residual(lhs, rhs, grid.win_lo, grid.win_hi));
  }
  return worst;
}

CheckResult check_bessel_commutation(cplx c, double s, cplx gamma, const std::vector<TestFn>& fns,
                        const GridOptions& grid) {
  require_commutation_hypotheses(c, gamma);
  const double res = bessel_commutation_residual(c, s, gamma, fns, grid);
  return grade("bessel_commutation",
               {{"c", fmt_cplx(c)}, {"s", fmt_num(s)}, {"gamma", fmt_cplx(gamma)}},
               res, kCommutationTol);
}

namespace {

void require_aux_shift_hypotheses(cplx c, cplx gamma, cplx gamma0) {
  require_commutation_hypotheses(c, gamma);
  const double a0 = std::arg(gamma0);
  if (!(a0 > 0.0 && a0 < kPi))
    fail(Err::HypothesisViolated, "violated: arg(gamma0) outside (0, pi)");
  const double acg0 = std::arg(c * gamma0);
  if (!(acg0 > -kPi && acg0 < 0.0))
    fail(Err::HypothesisViolated, "violated: arg(c*gamma0) outside (-pi, 0)");
}

Multiplier g_product(double s, cplx num_shift, cplx den_shift) {
  return Multiplier::product(
      {Multiplier::lambda(s, num_shift), Multiplier::lambda(-s, den_shift)});
}

}  // namespace

CheckResult check_aux_shift_form(cplx c, double s, cplx gamma, cplx gamma0,
                        const std::vector<TestFn>& fns, const GridOptions& grid) {
  require_aux_shift_hypotheses(c, gamma, gamma0);
  const GridSpec gs = fourier_grid(grid.half_width, grid.n);
  const cplx cms = c_pow_op(c, -s);
  const Multiplier g = g_product(s, -gamma, -gamma0);  // g^s_{-gamma,-gamma0}
  double worst = 0.0;
  for (const TestFn& fn : fns) {
    SampledFunction k1f = k1_of_testfn(c, fn, gs);
    taper_edges(k1f);
    const SampledFunction lhs = apply_lambda_grid(s, -gamma, k1f);

    SampledFunction lf = apply_lambda_smooth(s, -c * gamma0, sample_halfline(gs, fn));
    restrict_halfline(lf);
    SampledFunction h = apply_K1_direct(c, lf);
    taper_edges(h);
    SampledFunction rhs = apply_fourier_multiplier(g, h, kLooseApply);
    restrict_halfline(rhs);
    for (cplx& v : rhs.v) v *= cms;

    worst = std::max(worst, windowed_residual(lhs, rhs, grid.win_lo, grid.win_hi));
  }
  return grade("aux_shift",
               {{"c", fmt_cplx(c)},
                {"s", fmt_num(s)},
                {"gamma", fmt_cplx(gamma)},
                {"gamma0", fmt_cplx(gamma0)}},
               worst, kAuxShiftTol);
}

double aux_shift_commutator_magnitude(cplx c, double s, cplx gamma, cplx gamma0,
                                  const std::vector<TestFn>& fns, const GridOptions& grid) {
  require_aux_shift_hypotheses(c, gamma, gamma0);
  const GridSpec gs = fourier_grid(grid.half_width, grid.n);
  const Multiplier g = g_product(s, -gamma, -gamma0);
  double worst = 0.0;
  for (const TestFn& fn : fns) {
    SampledFunction h = apply_lambda_smooth(s, -c * gamma0, sample_halfline(gs, fn));
    restrict_halfline(h);
    double hnorm = 0.0;
    for (const cplx& v : h.v) hnorm += std::norm(v);
    hnorm = std::sqrt(hnorm * gs.dx);

    SampledFunction wk = apply_K1_direct(c, h);
    taper_edges(wk);
    SampledFunction path1 = apply_fourier_multiplier(g, wk, kLooseApply);
    restrict_halfline(path1);

    SampledFunction gw = apply_fourier_multiplier(g, h, kLooseApply);
    restrict_halfline(gw);
    const SampledFunction path2 = apply_K1_direct(c, gw);

    double tnorm = 0.0;
    for (size_t k = 0; k < gs.n; ++k) {
      const double x = gs.x(k);
      if (x < grid.win_lo || x > grid.win_hi) continue;
      tnorm += std::norm(path1.v[k] - path2.v[k]);
    }
    tnorm = std::sqrt(tnorm * gs.dx);
    if (hnorm > 0.0) worst = std::max(worst, tnorm / hnorm);
  }
  return worst;
}

CheckResult check_double_pole_lift(cplx c, double s, cplx gamma, const std::vector<TestFn>& fns,
                          const GridOptions& grid) {
  require_commutation_hypotheses(c, gamma);
  const GridSpec gs = fourier_grid(grid.half_width, grid.n);
  const cplx cms = c_pow_op(c, -s);
  double worst = 0.0;
  for (const TestFn& fn : fns) {
    // Lambda^s_{-gamma} K^2_c Lambda^{-s}_gamma f
    SampledFunction inner = apply_lambda_smooth(-s, gamma, sample_halfline(gs, fn));
    restrict_halfline(inner);
    SampledFunction k2 = apply_K2_direct(c, inner);
    taper_edges(k2);
    const SampledFunction lhs = apply_lambda_grid(s, -gamma, k2);

    // c^{-s}[K^2_c - s c^{-1} K^1_c] W_{g^s_{-c gamma, gamma}} f
    SampledFunction w = apply_fourier_multiplier(g_product(s, -c * gamma, gamma),
                                                 sample_halfline(gs, fn), kLooseApply);
    restrict_halfline(w);
    const SampledFunction k2w = apply_K2_direct(c, w);
    const SampledFunction k1w = apply_K1_direct(c, w);
    SampledFunction rhs;
    rhs.grid = gs;
    rhs.v.resize(gs.n);
    for (size_t k = 0; k < gs.n; ++k) rhs.v[k] = cms * (k2w.v[k] - s / c * k1w.v[k]);

    // + s gamma c^{-s} K^1_c W_{g^{s-1}_{-c gamma, gamma}} Lambda^{-1}_gamma f
    if (s != 0.0) {
      SampledFunction li = apply_lambda_smooth(-1.0, gamma, sample_halfline(gs, fn));
      restrict_halfline(li);
      SampledFunction wt = apply_fourier_multiplier(g_product(s - 1.0, -c * gamma, gamma),
                                                    li, kLooseApply);
      restrict_halfline(wt);
      const SampledFunction t = apply_K1_direct(c, wt);
      // the epsilon-derivative of the shifted Bessel symbol carries -gamma s
      const cplx pref = -s * gamma * cms;
      for (size_t k = 0; k < gs.n; ++k) rhs.v[k] += pref * t.v[k];
    }

    worst = std::max(worst, windowed_residual(lhs, rhs, grid.win_lo, grid.win_hi));
  }
  return grade("double_pole_lift",
               {{"c", fmt_cplx(c)}, {"s", fmt_num(s)}, {"gamma", fmt_cplx(gamma)}},
               worst, s == 0.0 ? 1e-10 : kDoublePoleLiftTol);
}

CheckResult check_wh_product(const Multiplier& a, const Multiplier& b,
                             const std::vector<TestFn>& fns, const GridOptions& grid,
                             bool as_negative_control) {
  const Analyticity aa = a.analyticity();
  const Analyticity ab = b.analyticity();
  const bool valid = aa == Analyticity::Lower || aa == Analyticity::Both ||
                     ab == Analyticity::Upper || ab == Analyticity::Both;
  if (!valid && !as_negative_control)
    fail(Err::NoAnalyticitySide,
         "neither a lower-analytic nor b upper-analytic; the product rule fails here");
  const GridSpec gs = fourier_grid(grid.half_width, grid.n);
  double worst = 0.0;
  for (const TestFn& fn : fns) {
    SampledFunction wb = apply_fourier_multiplier(b, sample_halfline(gs, fn), kLooseApply);
    restrict_halfline(wb);
    taper_edges(wb);
    SampledFunction lhs = apply_fourier_multiplier(a, wb, kLooseApply);
    restrict_halfline(lhs);

    SampledFunction rhs = apply_fourier_multiplier(Multiplier::product({a, b}),
                                                   sample_halfline(gs, fn), kLooseApply);
    restrict_halfline(rhs);
    worst = std::max(worst, windowed_residual(lhs, rhs, grid.win_lo, grid.win_hi));
  }
  if (as_negative_control && !valid) {
    CheckResult r = grade("wh_product_negative", {}, worst, 0.0);
    r.status = worst >= kNegativeControlFloor ? "pass" : "fail";
    r.threshold = kNegativeControlFloor;
    return r;
  }
  return grade("wh_product", {}, worst, kWhProductTol);
}

CheckResult check_lifted_identity_symbols(const AnalysisParams& params,
                                          const std::vector<TestFn>& fns,
                                          const GridOptions& grid) {
  params.validate();
  const double s = params.s;
  const cplx gamma = params.gamma;
  const GridSpec gs = fourier_grid(grid.half_width, grid.n);
  const Multiplier m = g_product(s, -gamma, gamma);
  double worst = 0.0;
  for (const TestFn& fn : fns) {
    SampledFunction inner = apply_lambda_smooth(-s, gamma, sample_halfline(gs, fn));
    restrict_halfline(inner);
    SampledFunction lhs = apply_lambda_smooth(s, -gamma, inner);
    restrict_halfline(lhs);

    SampledFunction rhs = apply_fourier_multiplier(m, sample_halfline(gs, fn), kLooseApply);
    restrict_halfline(rhs);
    worst = std::max(worst, windowed_residual(lhs, rhs, grid.win_lo, grid.win_hi));
  }
  // jump of the applied multiplier across infinity, cf. the limit values of
  // the anchored g^s branch
  const cplx ratio = m.eval(1e9) / m.eval(-1e9);
  const double jump_err = std::abs(ratio - std::exp(cplx(0.0, 2.0 * kPi * s)));
  worst = std::max(worst, jump_err);
  return grade("lifted_identity", {{"s", fmt_num(s)}, {"gamma", fmt_cplx(gamma)}}, worst,
               kLiftedIdentityTol);
}

std::vector<CheckResult> run_verification_suite(const GridOptions& grid) {
  const std::vector<TestFn> fns = bump_test_family();
  std::vector<CheckResult> out;

  struct CGamma {
    cplx c, gamma;
  };
  const CGamma combos[3] = {
      {std::polar(1.0, 3.0 * kPi / 4.0), std::polar(1.0, 3.0 * kPi / 5.0)},
      {std::polar(1.0, -kPi / 2.0), std::polar(1.0, kPi / 4.0)},
      {cplx(-1.0, 0.0), std::polar(1.0, kPi / 3.0)},
  };
  const double svals[5] = {-0.5, -0.25, 0.5, 1.0, 2.0};
  for (const CGamma& cg : combos)
    for (double s : svals) out.push_back(check_bessel_commutation(cg.c, s, cg.gamma, fns, grid));

  // negative controls: arg(c*gamma) on the wrong side
  for (const auto& [c, gamma] : {std::pair<cplx, cplx>{std::polar(1.0, -kPi / 2.0),
                                                       std::polar(1.0, 3.0 * kPi / 4.0)},
                                 std::pair<cplx, cplx>{std::polar(1.0, 3.0 * kPi / 4.0),
                                                       std::polar(1.0, kPi / 8.0)}}) {
    const double res = bessel_commutation_residual(c, -0.5, gamma, fns, grid);
    CheckResult r = grade("bessel_commutation_negative",
                          {{"c", fmt_cplx(c)}, {"gamma", fmt_cplx(gamma)}}, res, 0.0);
    r.threshold = kNegativeControlFloor;
    r.status = res >= kNegativeControlFloor ? "pass" : "fail";
    out.push_back(r);
  }

  out.push_back(check_aux_shift_form(std::polar(1.0, 3.0 * kPi / 4.0), -0.5,
                            std::polar(1.0, 3.0 * kPi / 5.0),
                            std::polar(1.0, 7.0 * kPi / 10.0), fns, grid));
  {
    const double mag = aux_shift_commutator_magnitude(std::polar(1.0, 3.0 * kPi / 4.0), -0.5,
                                                  std::polar(1.0, 3.0 * kPi / 5.0),
                                                  std::polar(1.0, 7.0 * kPi / 10.0), fns, grid);
    out.push_back(grade("aux_shift_commutator", {{"s", "-0.5"}}, mag, 0.0));
  }

  out.push_back(check_double_pole_lift(std::polar(1.0, -kPi / 2.0), -0.5,
                              std::polar(1.0, kPi / 4.0), fns, grid));
  out.push_back(check_double_pole_lift(std::polar(1.0, -kPi / 2.0), 0.0,
                              std::polar(1.0, kPi / 4.0), fns, grid));

  const cplx gamma_i(0.0, 1.0);
  out.push_back(check_wh_product(Multiplier::lambda(0.5, -gamma_i),
                                 Multiplier::lambda(-0.5, gamma_i), fns, grid));
  out.push_back(check_wh_product(Multiplier::constant(1.0), Multiplier::constant(1.0), fns,
                                 grid));
  const Multiplier hilbert = Multiplier::piecewise(cplx(0.0, 1.0), cplx(0.0, -1.0));
  out.push_back(check_wh_product(hilbert, hilbert, fns, grid, /*as_negative_control=*/true));

  AnalysisParams lifted;
  lifted.s = 0.5;
  out.push_back(check_lifted_identity_symbols(lifted, fns, grid));

  return out;
}

std::string verification_matrix_json(const std::vector<CheckResult>& results) {
  nlohmann::json arr = nlohmann::json::array();
  for (const CheckResult& r : results) {
    nlohmann::json j;
    j["check"] = r.id;
    nlohmann::json p = nlohmann::json::object();
    for (const auto& [k, v] : r.params) p[k] = v;
    j["params"] = std::move(p);
    j["residual"] = r.residual;
    j["threshold"] = r.threshold;
    j["status"] = r.status;
    arr.push_back(std::move(j));
  }
  nlohmann::json root;
  root["suite"] = "operator-identities";
  root["results"] = std::move(arr);
  return root.dump(2);
}

}  // namespace mellin

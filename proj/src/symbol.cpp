#include "mellin/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "mellin/kernels.hpp"

namespace mellin {

namespace {
constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};
}  // namespace

MatC MatC::zero(int n) {
  MatC m;
  m.n = n;
  m.a.assign(static_cast<size_t>(n) * n, cplx(0.0));
  return m;
}

cplx MatC::det() const {
  if (n == 1) return a[0];
  if (n == 2) return a[0] * a[3] - a[1] * a[2];
  std::vector<cplx> lu = a;
  cplx d = 1.0;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    double best = std::abs(lu[static_cast<size_t>(col) * n + col]);
    for (int r = col + 1; r < n; ++r) {
      const double v = std::abs(lu[static_cast<size_t>(r) * n + col]);
      if (v > best) {
        best = v;
        pivot = r;
      }
    }
    if (best == 0.0) return 0.0;
    if (pivot != col) {
      for (int k = 0; k < n; ++k)
        std::swap(lu[static_cast<size_t>(pivot) * n + k], lu[static_cast<size_t>(col) * n + k]);
      d = -d;
    }
    const cplx piv = lu[static_cast<size_t>(col) * n + col];
    d *= piv;
    for (int r = col + 1; r < n; ++r) {
      const cplx factor = lu[static_cast<size_t>(r) * n + col] / piv;
      for (int k = col; k < n; ++k)
        lu[static_cast<size_t>(r) * n + k] -= factor * lu[static_cast<size_t>(col) * n + k];
    }
  }
  return d;
}

double max_abs_diff(const MatC& x, const MatC& y) {
  double m = 0.0;
  for (size_t k = 0; k < x.a.size(); ++k) m = std::max(m, std::abs(x.a[k] - y.a[k]));
  return m;
}

cplx jump_fill_gp(const JumpPair& pair, double p, double xi) {
  if (!(p > 1.0)) fail(Err::BadParams, "require 1 < p < inf");
  if (std::isinf(xi)) return xi > 0 ? pair.right : pair.left;
  const cplx avg = 0.5 * (pair.right + pair.left);
  const cplx jump = 0.5 * (pair.right - pair.left);
  return avg - kI * jump * cot_pi(cplx(1.0 / p, -xi));
}

std::vector<cplx> g_s_ratio(double s, cplx num_shift, cplx den_shift,
                            std::span<const double> xi_path) {
  if (s == 0.0) return std::vector<cplx>(xi_path.size(), cplx(1.0));
  std::vector<cplx> base(xi_path.size());
  for (size_t k = 0; k < xi_path.size(); ++k) {
    const double xi = xi_path[k];
    base[k] = std::isinf(xi) ? cplx(1.0) : (xi + num_shift) / (xi + den_shift);
  }
  return complex_power_unwrapped(base, s).values;
}

// ---------------------------------------------------------------------------
// Per-factor rectangle symbols.
//
// Traversal and fills are pinned by corner continuity and the classical
// index anchor: on G1 the infinity fill carries b(+inf) at xi=-inf and
// b(-inf) at xi=+inf; on G3 the zero fill carries b(0+) at xi=-inf and
// b(0-) at xi=+inf.  Mellin factors contribute their symbol at finite xi on
// both G1 and G3 (traversed in opposite directions), so a pure elliptic
// Mellin convolution never winds.

namespace {

Multiplier ident_g(const AnalysisParams& params) {
  return Multiplier::g_ratio(params.s, -params.gamma, params.gamma);
}

cplx g2_value(const Multiplier& m, Segment seg, double eta) {
  // G2+ carries b(-eta), G2- carries b(+eta)
  if (std::isinf(eta))
    return seg == Segment::Gamma2Plus ? m.at_minus_inf() : m.at_plus_inf();
  if (eta == 0.0) return seg == Segment::Gamma2Plus ? m.at_zero(-1) : m.at_zero(+1);
  return m.eval(seg == Segment::Gamma2Plus ? -eta : eta);
}

JumpPair inf_pair(const Multiplier& m) { return {m.at_plus_inf(), m.at_minus_inf()}; }
JumpPair zero_pair(const Multiplier& m) { return {m.at_zero(+1), m.at_zero(-1)}; }

void require_kernel_pole_ok(cplx c, const AnalysisParams& params) {
  if (c.imag() == 0.0 && c.real() >= 0.0) fail(Err::ArgCOnAxis, "require arg c != 0");
  if (params.s == 0.0) return;  // no lift engaged, gamma plays no role
  const double acg = std::abs(std::arg(c * params.gamma));
  if (acg < 1e-9 || acg > kPi - 1e-9)
    fail(Err::HypothesisViolated,
         "c*gamma lies on the real axis; pick another lifting parameter gamma");
}

cplx k_row_gamma1(int m, cplx c, const AnalysisParams& params, double xi) {
  const cplx cs = pow_with_arg(c, cplx(-params.s), arg_symbol(c));
  cplx sig = sigma_Km(1, c, 1.0 / params.p, xi);
  if (m == 2) sig = sigma_Km(2, c, 1.0 / params.p, xi) - params.s * sig / c;
  return cs * sig;
}

}  // namespace

cplx ident_sym_lifted(const AnalysisParams& params, const RectanglePoint& omega) {
  const double s = params.s;
  const cplx e2 = std::exp(cplx(0.0, 2.0 * kPi * s));
  switch (omega.seg) {
    case Segment::Gamma1:
      return jump_fill_gp({e2, cplx(1.0)}, params.p, omega.coord);
    case Segment::Gamma2Plus:
    case Segment::Gamma2Minus:
      return g2_value(ident_g(params), omega.seg, omega.coord);
    case Segment::Gamma3:
      return std::exp(cplx(0.0, kPi * s));
  }
  return 0.0;
}

cplx w_sym_lifted(const Multiplier& a, const AnalysisParams& params,
                  const RectanglePoint& omega, bool lifted) {
  const double s = lifted ? params.s : 0.0;
  switch (omega.seg) {
    case Segment::Gamma1: {
      JumpPair pr = inf_pair(a);
      pr.left *= std::exp(cplx(0.0, 2.0 * kPi * s));
      return jump_fill_gp(pr, params.p, omega.coord);
    }
    case Segment::Gamma2Plus:
    case Segment::Gamma2Minus: {
      cplx v = g2_value(a, omega.seg, omega.coord);
      if (lifted) v *= g2_value(ident_g(params), omega.seg, omega.coord);
      return v;
    }
    case Segment::Gamma3:
      return std::exp(cplx(0.0, kPi * s)) * jump_fill_gp(zero_pair(a), params.p, omega.coord);
  }
  return 0.0;
}

cplx k_sym_lifted(int m, cplx c, const AnalysisParams& params, const RectanglePoint& omega) {
  if (m < 1 || m > 2) fail(Err::UnsupportedExprShape, "lifted symbol only for K^1 and K^2");
  require_kernel_pole_ok(c, params);
  switch (omega.seg) {
    case Segment::Gamma1:
      return k_row_gamma1(m, c, params, omega.coord);
    case Segment::Gamma2Plus:
    case Segment::Gamma2Minus:
      return 0.0;
    case Segment::Gamma3:
      return std::pow(-c, cplx(params.s)) * k_row_gamma1(m, c, params, omega.coord);
  }
  return 0.0;
}

cplx k1_sym_lifted(cplx c, const AnalysisParams& params, const RectanglePoint& omega) {
  return k_sym_lifted(1, c, params, omega);
}

namespace {

void check_symbol_params(const AnalysisParams& params) {
  // the rectangle calculus here is the unweighted one: every fill and
  // K-row is pinned to the exponent 1/p, which matches beta only for a
  // trivial weight
  if (params.weight_exp != 0.0)
    fail(Err::BadParams, "rectangle symbols require weight_exp = 0");
}

void check_analyticity_flags(const OperatorExpr& expr, const AnalysisParams& params) {
  if (params.s == 0.0 || params.s_in_coincidence_band()) return;
  for (const EntryExpr& entry : expr.entries) {
    for (const Term& t : entry) {
      if (t.kind != Term::Kind::Sandwich) continue;
      const Analyticity aa = t.a.analyticity();
      const Analyticity ab = t.b.analyticity();
      const bool a_ok = aa == Analyticity::Lower || aa == Analyticity::Both;
      const bool b_ok = ab == Analyticity::Upper || ab == Analyticity::Both;
      if (!a_ok || !b_ok)
        fail(Err::MissingAnalyticityFlags,
             "s outside (1/p-1, 1/p) needs lower-analytic a and upper-analytic b "
             "sandwich symbols");
    }
  }
}

cplx term_symbol(const Term& t, const AnalysisParams& params, const RectanglePoint& omega) {
  switch (t.kind) {
    case Term::Kind::Identity:
      return t.coef * ident_sym_lifted(params, omega);
    case Term::Kind::Fourier:
      return w_sym_lifted(t.symbol, params, omega, /*lifted=*/true);
    case Term::Kind::MellinK:
      return t.coef * k_sym_lifted(t.k.m, t.k.c, params, omega);
    case Term::Kind::Sandwich:
      return w_sym_lifted(t.a, params, omega, /*lifted=*/false) * t.coef *
             k_sym_lifted(t.k.m, t.k.c, params, omega) *
             w_sym_lifted(t.b, params, omega, /*lifted=*/false);
  }
  return 0.0;
}

MatC symbol_at(const OperatorExpr& expr, const AnalysisParams& params,
               const RectanglePoint& omega) {
  MatC out = MatC::zero(expr.n);
  for (int i = 0; i < expr.n; ++i)
    for (int j = 0; j < expr.n; ++j) {
      cplx acc = 0.0;
      for (const Term& t : expr.at(i, j)) acc += term_symbol(t, params, omega);
      out.at(i, j) = acc;
    }
  return out;
}

}  // namespace

MatC assemble_lifted_symbol(const OperatorExpr& expr, const AnalysisParams& params,
                            const RectanglePoint& omega) {
  expr.validate_for_symbol();
  params.validate();
  check_symbol_params(params);
  check_analyticity_flags(expr, params);
  return symbol_at(expr, params, omega);
}

MatC symbol_Lp(const OperatorExpr& expr, double p, const RectanglePoint& omega) {
  AnalysisParams params;
  params.p = p;
  params.s = 0.0;
  return assemble_lifted_symbol(expr, params, omega);
}

SymbolCurve symbol_curve(const OperatorExpr& expr, const AnalysisParams& params,
                         int resolution) {
  expr.validate_for_symbol();
  params.validate();
  check_symbol_params(params);
  check_analyticity_flags(expr, params);

  SymbolCurve curve;
  curve.pts = rectangle_path(resolution);
  curve.resolution = resolution;
  curve.n = expr.n;
  curve.params = params;
  curve.hash = expr_hash(expr);
  curve.values.reserve(curve.pts.size());
  curve.dets.reserve(curve.pts.size());
  for (const RectanglePoint& pt : curve.pts) {
    curve.values.push_back(symbol_at(expr, params, pt));
    curve.dets.push_back(curve.values.back().det());
  }
  // Corner junctions: G1 end (+inf,inf) = G2+ start; G2+ end (+inf,0) = G3
  // start; G3 end (-inf,0) = G2- start; G2- end (-inf,inf) = G1 start.
  const double inf = std::numeric_limits<double>::infinity();
  double res = 0.0;
  for (Segment seg : {Segment::Gamma1, Segment::Gamma2Plus, Segment::Gamma3,
                      Segment::Gamma2Minus}) {
    const RectanglePoint end = segment_end_point(seg);
    RectanglePoint start;
    start.seg = next_segment(seg);
    switch (start.seg) {
      case Segment::Gamma2Plus: start.coord = inf; break;
      case Segment::Gamma3: start.coord = inf; break;
      case Segment::Gamma2Minus: start.coord = 0.0; break;
      case Segment::Gamma1: start.coord = -inf; break;
    }
    res = std::max(res, max_abs_diff(symbol_at(expr, params, end),
                                     symbol_at(expr, params, start)));
  }
  curve.corner_residual = res;
  return curve;
}

AlphaJumpForms alpha_jump_fill_forms(double alpha, double s, double p, double xi) {
  AlphaJumpForms out;
  const cplx a_plus = std::exp(cplx(0.0, 2.0 * kPi * alpha));
  JumpPair pr{std::exp(cplx(0.0, 2.0 * kPi * s)) * a_plus, cplx(1.0)};
  out.assembled = jump_fill_gp(pr, p, xi);
  const cplx u(1.0 / p, -xi);
  const cplx phase = std::exp(cplx(0.0, kPi * (s + alpha)));
  out.closed_sin = phase * std::sin(kPi * (u - (s + alpha))) / std::sin(kPi * u);
  out.alt_sin = phase * std::sin(kPi * (u + (s + alpha))) / std::sin(kPi * u);
  out.alt_cos = phase * std::sin(kPi * (u + (s + alpha))) / std::cos(kPi * u);
  return out;
}

}  // namespace mellin

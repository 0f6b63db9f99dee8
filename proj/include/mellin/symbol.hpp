#pragma once

// Assembly of the Fredholm symbol on the oriented rectangle: the Lebesgue
// calculus for sums of Mellin x Fourier products and the Bessel-potential
// lifted calculus for the model operator d0 I + W_{a0} + sum W_a K^m_c W_b.

#include <span>

#include "mellin/core.hpp"
#include "mellin/expr.hpp"
#include "mellin/transforms.hpp"

namespace mellin {

// Small dense complex matrix (symbols are N x N with N tiny).
struct MatC {
  int n = 1;
  std::vector<cplx> a{cplx(0.0)};

  static MatC zero(int n);
  cplx& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  const cplx& at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
  cplx det() const;  // LU with partial pivoting
};

double max_abs_diff(const MatC& x, const MatC& y);

struct JumpPair {
  cplx left;   // value carried at xi = -inf
  cplx right;  // value carried at xi = +inf
};

// (right+left)/2 - (i/2)(right-left) cot(pi(1/p - i xi)); traces the circular
// arc joining left (xi=-inf) to right (xi=+inf) seen under the angle pi/p,
// the straight segment at p = 2.
cplx jump_fill_gp(const JumpPair& pair, double p, double xi);

// Phase-unwrapped ((xi+num)/(xi+den))^s along an ordered xi path (+-inf
// entries evaluate the limit ratio 1).
std::vector<cplx> g_s_ratio(double s, cplx num_shift, cplx den_shift,
                            std::span<const double> xi_path);

// Per-factor rectangle symbols of the lifted calculus.
cplx ident_sym_lifted(const AnalysisParams& params, const RectanglePoint& omega);
cplx w_sym_lifted(const Multiplier& a, const AnalysisParams& params,
                  const RectanglePoint& omega, bool lifted);
cplx k_sym_lifted(int m, cplx c, const AnalysisParams& params, const RectanglePoint& omega);
cplx k1_sym_lifted(cplx c, const AnalysisParams& params, const RectanglePoint& omega);

// Full symbol of an operator expression at one rectangle point.
MatC assemble_lifted_symbol(const OperatorExpr& expr, const AnalysisParams& params,
                            const RectanglePoint& omega);
MatC symbol_Lp(const OperatorExpr& expr, double p, const RectanglePoint& omega);

struct SymbolCurve {
  std::vector<RectanglePoint> pts;
  std::vector<MatC> values;
  std::vector<cplx> dets;
  double corner_residual = 0.0;  // max matrix mismatch over the four corners
  int resolution = 0;
  int n = 1;
  AnalysisParams params;
  uint64_t hash = 0;
};

SymbolCurve symbol_curve(const OperatorExpr& expr, const AnalysisParams& params,
                         int resolution);

// The alpha-jump special case a(-inf)=1, a(+inf)=e^{2 pi alpha i}: the fill
// the assembly actually uses, its closed sine form, and two closed forms
// found in the literature that disagree with it (reported, never asserted).
struct AlphaJumpForms {
  cplx assembled;
  cplx closed_sin;
  cplx alt_sin;
  cplx alt_cos;
};

AlphaJumpForms alpha_jump_fill_forms(double alpha, double s, double p, double xi);

}  // namespace mellin

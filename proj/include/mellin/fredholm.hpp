#pragma once

// Ellipticity, winding number, and Fredholm index from a symbol curve.

#include "mellin/symbol.hpp"

namespace mellin {

// min |det| over the samples; *argmin (optional) receives the achieving point.
double ellipticity_infimum(const SymbolCurve& curve, RectanglePoint* argmin = nullptr);

// (1/2pi) sum of unwrapped det-argument increments over the closed path,
// rounded to the nearest integer.  Requires an elliptic curve; rejects
// argument steps >= pi/2 (PhaseJump) and rounding residuals > 0.1
// (NonIntegerWinding) so a coarse grid can never alias silently.
int winding_number(const SymbolCurve& curve, double ellipticity_tol = 1e-8);

struct IndexReport {
  double inf_abs_det = 0.0;
  bool elliptic = false;
  int winding = 0;
  int index = 0;                 // = -winding; meaningful only when elliptic
  double corner_residual = 0.0;
  int resolution = 0;
  RectanglePoint argmin;         // where |det| attains its minimum
};

// Builds the symbol curve and doubles the resolution until the winding
// agrees on two consecutive grids (or the cap is hit -> ResolutionCap).
// A non-elliptic symbol yields elliptic=false with the infimum and argmin
// filled in; no index is reported.
IndexReport fredholm_index(const OperatorExpr& expr, const AnalysisParams& params,
                           int resolution = 256, int resolution_cap = 0);

int default_resolution_cap();  // 8192, or the MF_RESOLUTION_CAP env override

struct LocalInvReport {
  bool invertible = false;
  double inf_abs_det = 0.0;  // over Gamma1 only
};

// Ellipticity restricted to Gamma1: local invertibility at the origin.
LocalInvReport local_invertibility_at_zero(const OperatorExpr& expr,
                                           const AnalysisParams& params, int resolution = 512);

// Default relative ellipticity tolerance (symbols here are O(1) by
// construction, so this is effectively absolute).
inline constexpr double kEllipticityTol = 1e-8;

}  // namespace mellin

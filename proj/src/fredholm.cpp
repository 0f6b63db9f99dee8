#include "mellin/fredholm.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>

namespace mellin {

namespace {
constexpr double kPi = std::numbers::pi;
}

double ellipticity_infimum(const SymbolCurve& curve, RectanglePoint* argmin) {
  if (curve.dets.empty()) fail(Err::BadParams, "empty symbol curve");
  double best = std::abs(curve.dets[0]);
  size_t best_k = 0;
  for (size_t k = 1; k < curve.dets.size(); ++k) {
    const double v = std::abs(curve.dets[k]);
    if (v < best) {
      best = v;
      best_k = k;
    }
  }
  if (argmin) *argmin = curve.pts[best_k];
  return best;
}

namespace {

double max_abs_det(const SymbolCurve& curve) {
  double m = 0.0;
  for (const cplx& d : curve.dets) m = std::max(m, std::abs(d));
  return m;
}

}  // namespace

int winding_number(const SymbolCurve& curve, double ellipticity_tol) {
  const double inf = ellipticity_infimum(curve);
  if (!(inf > ellipticity_tol * std::max(1.0, max_abs_det(curve))))
    fail(Err::NotElliptic, "det vanishes on the rectangle (up to tolerance)");
  double acc = 0.0;
  const size_t n = curve.dets.size();
  for (size_t k = 0; k < n; ++k) {
    const cplx ratio = curve.dets[(k + 1) % n] / curve.dets[k];
    const double step = std::arg(ratio);
    if (std::abs(step) >= kPi / 2.0)
      fail(Err::PhaseJump, "argument step >= pi/2; refine the resolution");
    acc += step;
  }
  const double w = acc / (2.0 * kPi);
  const double rounded = std::round(w);
  if (std::abs(w - rounded) > 0.1)
    fail(Err::NonIntegerWinding, "winding did not round to an integer; grid too coarse");
  return static_cast<int>(rounded);
}

int default_resolution_cap() {
  if (const char* env = std::getenv("MF_RESOLUTION_CAP")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 16) return static_cast<int>(v);
  }
  return 8192;
}

IndexReport fredholm_index(const OperatorExpr& expr, const AnalysisParams& params,
                           int resolution, int resolution_cap) {
  if (resolution_cap <= 0) resolution_cap = default_resolution_cap();
  IndexReport report;
  bool have_prev = false;
  int prev_winding = 0;
  for (int res = std::max(resolution, 16); res <= resolution_cap; res *= 2) {
    const SymbolCurve curve = symbol_curve(expr, params, res);
    report.resolution = res;
    report.corner_residual = curve.corner_residual;
    report.inf_abs_det = ellipticity_infimum(curve, &report.argmin);
    const double scale = std::max(1.0, max_abs_det(curve));
    if (!(report.inf_abs_det > kEllipticityTol * scale)) {
      report.elliptic = false;
      return report;
    }
    report.elliptic = true;
    int w = 0;
    try {
      w = winding_number(curve);
    } catch (const Error& e) {
      if (e.kind() == Err::PhaseJump || e.kind() == Err::NonIntegerWinding) {
        have_prev = false;  // too coarse; refine
        continue;
      }
      throw;
    }
    if (have_prev && w == prev_winding) {
      report.winding = w;
      report.index = -w;
      return report;
    }
    prev_winding = w;
    have_prev = true;
  }
  fail(Err::ResolutionCap, "winding did not stabilize below the resolution cap");
}

LocalInvReport local_invertibility_at_zero(const OperatorExpr& expr,
                                           const AnalysisParams& params, int resolution) {
  const SymbolCurve curve = symbol_curve(expr, params, resolution);
  LocalInvReport out;
  double best = std::numeric_limits<double>::infinity();
  double scale = 1.0;
  for (size_t k = 0; k < curve.pts.size(); ++k) {
    if (curve.pts[k].seg != Segment::Gamma1) continue;
    const double v = std::abs(curve.dets[k]);
    best = std::min(best, v);
    scale = std::max(scale, v);
  }
  // include the xi = +inf endpoint of Gamma1
  {
    const RectanglePoint end = segment_end_point(Segment::Gamma1);
    const double v = std::abs(assemble_lifted_symbol(expr, params, end).det());
    best = std::min(best, v);
  }
  out.inf_abs_det = best;
  out.invertible = best > kEllipticityTol * scale;
  return out;
}

}  // namespace mellin

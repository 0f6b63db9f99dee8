#include "mellin/io.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "json.hpp"

namespace mellin {

namespace {
constexpr double kPi = std::numbers::pi;

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}
}  // namespace

std::string curve_csv(const SymbolCurve& curve) {
  std::string out = "segment,u,coordinate,re_det,im_det\n";
  for (size_t k = 0; k < curve.pts.size(); ++k) {
    const RectanglePoint& pt = curve.pts[k];
    out += segment_name(pt.seg);
    out += ',';
    out += g17(pt.u);
    out += ',';
    out += g17(pt.coord);
    out += ',';
    out += g17(curve.dets[k].real());
    out += ',';
    out += g17(curve.dets[k].imag());
    out += '\n';
  }
  return out;
}

std::string curve_meta_json(const SymbolCurve& curve) {
  nlohmann::json j;
  j["version"] = kVersion;
  j["resolution"] = curve.resolution;
  j["matrix_dim"] = curve.n;
  j["corner_residual"] = curve.corner_residual;
  j["expr_hash"] = curve.hash;
  j["space"]["p"] = curve.params.p;
  j["space"]["s"] = curve.params.s;
  j["space"]["weight_exp"] = curve.params.weight_exp;
  j["space"]["gamma"] = {curve.params.gamma.real(), curve.params.gamma.imag()};
  if (curve.params.gamma0)
    j["space"]["gamma0"] = {curve.params.gamma0->real(), curve.params.gamma0->imag()};
  return j.dump(2);
}

std::string index_report_json(const IndexReport& report, const AnalysisParams& params,
                              uint64_t hash) {
  nlohmann::json j;
  j["version"] = kVersion;
  j["elliptic"] = report.elliptic;
  j["inf_abs_det"] = report.inf_abs_det;
  if (report.elliptic) {
    j["winding"] = report.winding;
    j["index"] = report.index;
  }
  j["corner_residual"] = report.corner_residual;
  j["resolution"] = report.resolution;
  j["argmin"]["segment"] = segment_name(report.argmin.seg);
  if (std::isinf(report.argmin.coord))
    j["argmin"]["coordinate"] = report.argmin.coord > 0 ? "inf" : "-inf";
  else
    j["argmin"]["coordinate"] = report.argmin.coord;
  j["space"]["p"] = params.p;
  j["space"]["s"] = params.s;
  j["space"]["gamma"] = {params.gamma.real(), params.gamma.imag()};
  j["expr_hash"] = hash;
  return j.dump(2);
}

std::string sampled_csv(const SampledFunction& f) {
  std::string out = "node,re,im\n";
  for (size_t k = 0; k < f.grid.n; ++k) {
    out += g17(f.grid.node(k));
    out += ',';
    out += g17(f.v[k].real());
    out += ',';
    out += g17(f.v[k].imag());
    out += '\n';
  }
  return out;
}

cplx corner_sweep_gamma(double alpha) {
  const double candidates[4] = {kPi / 3.0, 2.0 * kPi / 5.0, kPi / 2.0, 3.0 * kPi / 7.0};
  for (double theta : candidates) {
    const cplx gamma = std::polar(1.0, theta);
    bool ok = true;
    for (double sgn : {1.0, -1.0}) {
      const double a = std::abs(std::arg(std::polar(1.0, sgn * alpha) * gamma));
      if (a < 0.05 || a > kPi - 0.05) ok = false;
    }
    if (ok) return gamma;
  }
  fail(Err::HypothesisViolated, "no admissible lifting parameter for this alpha");
}

std::string corner_sweep_csv(const SweepSpec& spec) {
  std::string out = "alpha,p,s,elliptic,index,inf_abs_det\n";
  for (double alpha : spec.alphas) {
    const cplx gamma = corner_sweep_gamma(alpha);
    const OperatorExpr expr = corner_system_expr(alpha);
    for (double p : spec.ps) {
      for (double s : spec.ss) {
        AnalysisParams params;
        params.p = p;
        params.s = s;
        params.gamma = gamma;
        const IndexReport rep = fredholm_index(expr, params, spec.resolution);
        out += g17(alpha);
        out += ',';
        out += g17(p);
        out += ',';
        out += g17(s);
        out += ',';
        out += rep.elliptic ? '1' : '0';
        out += ',';
        if (rep.elliptic) out += std::to_string(rep.index);
        out += ',';
        out += g17(rep.inf_abs_det);
        out += '\n';
      }
    }
  }
  return out;
}

}  // namespace mellin

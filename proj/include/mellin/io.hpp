#pragma once

// Serialization helpers shared by the CLI and the test suites.  All output is
// byte-stable for fixed inputs: %.17g floats, LF endings, no timestamps.

#include <string>
#include <vector>

#include "mellin/fredholm.hpp"
#include "mellin/symbol.hpp"

namespace mellin {

inline constexpr const char* kVersion = "0.1.0";

std::string curve_csv(const SymbolCurve& curve);
std::string curve_meta_json(const SymbolCurve& curve);
std::string index_report_json(const IndexReport& report, const AnalysisParams& params,
                              uint64_t hash);
std::string sampled_csv(const SampledFunction& f);

struct SweepSpec {
  std::vector<double> alphas;
  std::vector<double> ps;
  std::vector<double> ss;
  int resolution = 256;
};

// One row per (alpha, p, s): alpha,p,s,elliptic,index,inf_abs_det.  The
// lifting parameter gamma is chosen per alpha from a fixed candidate list so
// that arg(e^{+-i alpha} gamma) stays off the real axis.
std::string corner_sweep_csv(const SweepSpec& spec);
cplx corner_sweep_gamma(double alpha);

}  // namespace mellin

#include "mellin/core.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace mellin {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

void fail(Err kind, const std::string& msg) {
  throw Error(kind, std::string(err_name(kind)) + ": " + msg);
}

const char* err_name(Err kind) {
  switch (kind) {
    case Err::BadParams: return "BadParams";
    case Err::DuplicatePole: return "DuplicatePole";
    case Err::PoleOnPositiveAxis: return "PoleOnPositiveAxis";
    case Err::NonpositiveMultiplicity: return "NonpositiveMultiplicity";
    case Err::GridMismatch: return "GridMismatch";
    case Err::NonintegrableKernel: return "NonintegrableKernel";
    case Err::GridTooCoarse: return "GridTooCoarse";
    case Err::EdgeLeakage: return "EdgeLeakage";
    case Err::BadGammaArg: return "BadGammaArg";
    case Err::ZeroBase: return "ZeroBase";
    case Err::PhaseJump: return "PhaseJump";
    case Err::PoleHit: return "PoleHit";
    case Err::ArgCOnAxis: return "ArgCOnAxis";
    case Err::PVNotRequested: return "PVNotRequested";
    case Err::BranchCut: return "BranchCut";
    case Err::SOutOfRange: return "SOutOfRange";
    case Err::HypothesisViolated: return "HypothesisViolated";
    case Err::UnsupportedExprShape: return "UnsupportedExprShape";
    case Err::MissingAnalyticityFlags: return "MissingAnalyticityFlags";
    case Err::NotElliptic: return "NotElliptic";
    case Err::NonIntegerWinding: return "NonIntegerWinding";
    case Err::ResolutionCap: return "ResolutionCap";
    case Err::NoAnalyticitySide: return "NoAnalyticitySide";
    case Err::SpecParse: return "SpecParse";
    case Err::AlphaOnAxis: return "AlphaOnAxis";
  }
  return "UnknownError";
}

void AnalysisParams::validate() const {
  if (!(p > 1.0) || !std::isfinite(p)) fail(Err::BadParams, "require 1 < p < inf");
  if (!(weight_exp > -1.0 && weight_exp < p - 1.0))
    fail(Err::BadParams, "require -1 < weight_exp < p-1");
  const double b = beta();
  if (!(b > 0.0 && b < 1.0)) fail(Err::BadParams, "require 0 < beta < 1");
  if (!std::isfinite(s)) fail(Err::BadParams, "s must be finite");
  const double ag = std::arg(gamma);
  if (!(ag > 0.0 && ag < kPi)) fail(Err::BadGammaArg, "require 0 < arg gamma < pi");
  if (gamma0) {
    const double a0 = std::arg(*gamma0);
    if (!(a0 > 0.0 && a0 < kPi)) fail(Err::BadGammaArg, "require 0 < arg gamma0 < pi");
  }
}

AnalysisParams make_params(double p, double s, double weight_exp, cplx gamma,
                           std::optional<cplx> gamma0) {
  AnalysisParams params;
  params.p = p;
  params.s = s;
  params.weight_exp = weight_exp;
  params.gamma = gamma;
  params.gamma0 = gamma0;
  params.validate();
  return params;
}

cplx AdmissibleKernel::eval(double t) const {
  cplx acc = 0.0;
  for (const KernelTerm& term : terms) {
    acc += term.d / std::pow(cplx(t) - term.c, term.m);
  }
  return acc;
}

AdmissibleKernel validate_admissible_kernel(std::vector<KernelTerm> terms,
                                            bool for_lifting) {
  if (terms.empty()) fail(Err::BadParams, "empty kernel term list");
  for (size_t i = 0; i < terms.size(); ++i) {
    const KernelTerm& term = terms[i];
    if (term.m < 1) fail(Err::NonpositiveMultiplicity, "multiplicity must be >= 1");
    const bool on_positive_axis = term.c.imag() == 0.0 && term.c.real() > 0.0;
    if (on_positive_axis && (term.m >= 2 || for_lifting))
      fail(Err::PoleOnPositiveAxis, "pole with arg c = 0");
    for (size_t j = 0; j < i; ++j) {
      if (terms[j].c == term.c) fail(Err::DuplicatePole, "poles must be pairwise distinct");
    }
  }
  return AdmissibleKernel{std::move(terms)};
}

std::vector<cplx> partial_fraction_reduce(const std::vector<cplx>& poles) {
  if (poles.size() < 2) fail(Err::BadParams, "need at least two poles");
  std::vector<cplx> d(poles.size());
  for (size_t j = 0; j < poles.size(); ++j) {
    cplx prod = 1.0;
    for (size_t k = 0; k < poles.size(); ++k) {
      if (k == j) continue;
      const cplx diff = poles[j] - poles[k];
      if (diff == cplx(0.0)) fail(Err::DuplicatePole, "poles must be pairwise distinct");
      prod *= diff;
    }
    d[j] = 1.0 / prod;
  }
  return d;
}

const char* segment_name(Segment seg) {
  switch (seg) {
    case Segment::Gamma1: return "G1";
    case Segment::Gamma2Plus: return "G2+";
    case Segment::Gamma3: return "G3";
    case Segment::Gamma2Minus: return "G2-";
  }
  return "?";
}

Segment next_segment(Segment seg) {
  switch (seg) {
    case Segment::Gamma1: return Segment::Gamma2Plus;
    case Segment::Gamma2Plus: return Segment::Gamma3;
    case Segment::Gamma3: return Segment::Gamma2Minus;
    case Segment::Gamma2Minus: return Segment::Gamma1;
  }
  return Segment::Gamma1;
}

namespace {

double segment_coord(Segment seg, double ul) {
  switch (seg) {
    case Segment::Gamma1:
      if (ul <= 0.0) return -kInf;
      return std::tan(kPi * (ul - 0.5));
    case Segment::Gamma2Plus:
      if (ul <= 0.0) return kInf;
      return std::tan(0.5 * kPi * (1.0 - ul));
    case Segment::Gamma3:
      if (ul <= 0.0) return kInf;
      return std::tan(kPi * (0.5 - ul));
    case Segment::Gamma2Minus:
      return std::tan(0.5 * kPi * ul);
  }
  return 0.0;
}

}  // namespace

std::vector<RectanglePoint> rectangle_path(int resolution) {
  if (resolution < 16) fail(Err::BadParams, "resolution must be >= 16");
  const Segment order[4] = {Segment::Gamma1, Segment::Gamma2Plus, Segment::Gamma3,
                            Segment::Gamma2Minus};
  std::vector<RectanglePoint> path;
  path.reserve(4 * static_cast<size_t>(resolution));
  for (int si = 0; si < 4; ++si) {
    for (int j = 0; j < resolution; ++j) {
      const double ul = static_cast<double>(j) / resolution;
      RectanglePoint pt;
      pt.seg = order[si];
      pt.coord = segment_coord(order[si], ul);
      pt.u = (si + ul) / 4.0;
      path.push_back(pt);
    }
  }
  return path;
}

RectanglePoint segment_end_point(Segment seg) {
  RectanglePoint pt;
  pt.seg = seg;
  switch (seg) {
    case Segment::Gamma1: pt.coord = kInf; pt.u = 0.25; break;
    case Segment::Gamma2Plus: pt.coord = 0.0; pt.u = 0.5; break;
    case Segment::Gamma3: pt.coord = -kInf; pt.u = 0.75; break;
    case Segment::Gamma2Minus: pt.coord = kInf; pt.u = 1.0; break;
  }
  return pt;
}

}  // namespace mellin

#pragma once

// Domain types for the Mellin/Fourier convolution calculus on the half-line:
// analysis parameters, admissible meromorphic kernels, the oriented symbol
// rectangle, and partial-fraction utilities.

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mellin {

using cplx = std::complex<double>;

enum class Err {
  BadParams,
  DuplicatePole,
  PoleOnPositiveAxis,
  NonpositiveMultiplicity,
  GridMismatch,
  NonintegrableKernel,
  GridTooCoarse,
  EdgeLeakage,
  BadGammaArg,
  ZeroBase,
  PhaseJump,
  PoleHit,
  ArgCOnAxis,
  PVNotRequested,
  BranchCut,
  SOutOfRange,
  HypothesisViolated,
  UnsupportedExprShape,
  MissingAnalyticityFlags,
  NotElliptic,
  NonIntegerWinding,
  ResolutionCap,
  NoAnalyticitySide,
  SpecParse,
  AlphaOnAxis,
};

class Error : public std::runtime_error {
 public:
  Error(Err kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Err kind() const { return kind_; }

 private:
  Err kind_;
};

[[noreturn]] void fail(Err kind, const std::string& msg);

const char* err_name(Err kind);

// Function-space setting and lifting parameters.  The source material uses
// gamma both for the weight exponent of t^gamma and for the complex shift in
// the Bessel potentials; weight_exp is the former, gamma the latter, and the
// two are never interchangeable here.
struct AnalysisParams {
  double p = 2.0;
  double s = 0.0;
  double weight_exp = 0.0;      // -1 < weight_exp < p-1
  cplx gamma{0.0, 1.0};         // 0 < arg gamma < pi
  std::optional<cplx> gamma0;   // optional auxiliary shift, same constraint

  double beta() const { return (1.0 + weight_exp) / p; }

  // True iff s is inside (1/p - 1, 1/p), where tilde and plain spaces agree
  // and sandwich factors need no analyticity flags.
  bool s_in_coincidence_band() const { return s > 1.0 / p - 1.0 && s < 1.0 / p; }

  void validate() const;
};

AnalysisParams make_params(double p, double s, double weight_exp = 0.0,
                           cplx gamma = cplx(0.0, 1.0),
                           std::optional<cplx> gamma0 = std::nullopt);

// One pole term d/(t-c)^m of an admissible meromorphic kernel.
struct KernelTerm {
  cplx d;
  cplx c;
  int m = 1;
};

struct AdmissibleKernel {
  std::vector<KernelTerm> terms;

  cplx eval(double t) const;
};

// Validates pole/coefficient/multiplicity data: poles pairwise distinct,
// multiplicities positive, arg c != 0 for multiplicity >= 2, and (when the
// kernel is meant to be lifted) arg c != 0 for every term.
AdmissibleKernel validate_admissible_kernel(std::vector<KernelTerm> terms,
                                            bool for_lifting = false);

// Coefficients d_j with 1/prod(t-c_k) = sum_j d_j/(t-c_j),
// d_j = prod_{k != j} (c_j - c_k)^{-1}.  Requires n >= 2 distinct poles.
std::vector<cplx> partial_fraction_reduce(const std::vector<cplx>& poles);

// The infinite oriented "rectangle" R = G1 u G2+ u G3 u G2- carrying the
// operator symbol.  Traversal (closed, orientation fixed by the index
// contract index(W_{(xi-i)/(xi+i)}) = -1):
//   G1:  xi from -inf to +inf   (eta = +inf)
//   G2+: eta from +inf to 0     (xi = +inf)
//   G3:  xi from +inf to -inf   (eta = 0)
//   G2-: eta from 0 to +inf     (xi = -inf)
enum class Segment { Gamma1, Gamma2Plus, Gamma3, Gamma2Minus };

const char* segment_name(Segment seg);

struct RectanglePoint {
  Segment seg = Segment::Gamma1;
  double coord = 0.0;   // xi on G1/G3, eta >= 0 on G2 (+-inf at the corners)
  double u = 0.0;       // global parameter in [0,1), strictly increasing
};

// Closed discretized path, 4*resolution points, each segment half-open so
// every corner appears exactly once (as the first sample of the segment that
// starts there).  Unbounded coordinates are compactified through tan maps so
// the u-grid is uniform.
std::vector<RectanglePoint> rectangle_path(int resolution);

// Endpoint (u -> 1) limit of a segment; used for corner-continuity checks.
RectanglePoint segment_end_point(Segment seg);
Segment next_segment(Segment seg);

}  // namespace mellin

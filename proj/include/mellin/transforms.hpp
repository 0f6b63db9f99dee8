#pragma once

// Log-substitution maps, FFT-based Mellin and Fourier multiplier application,
// the closed multiplier families, and branch-tracked complex powers.
//
// Conventions: F phi(xi) = int e^{i xi x} phi(x) dx, inverse with e^{-i xi x}
// and the 1/(2 pi) factor; M_beta = F Z_beta with Z_beta phi(xi) =
// e^{-beta xi} phi(e^{-xi}).

#include <functional>
#include <span>
#include <vector>

#include "mellin/core.hpp"

namespace mellin {

struct GridSpec {
  double x0 = 0.0;        // first node of the underlying uniform x-grid
  double dx = 0.0;
  size_t n = 0;
  bool log_nodes = false; // nodes are t_k = exp(x_k) on R+ when set

  double x(size_t k) const { return x0 + dx * static_cast<double>(k); }
  double node(size_t k) const;
  bool same_as(const GridSpec& other) const;
};

struct SampledFunction {
  GridSpec grid;
  std::vector<cplx> v;
};

GridSpec fourier_grid(double half_width, size_t n);      // uniform on [-L, L)
GridSpec mellin_log_grid(double half_width, size_t n);   // t_k = exp(x_k), x on [-L, L)

SampledFunction sample(const GridSpec& grid, const std::function<cplx(double)>& f);

// Radix-2 in-place FFT: a_k <- sum_j a_j exp(sign * 2 pi i j k / n).
void fft_pow2(std::vector<cplx>& a, int sign);

// Trapezoidal F f at one frequency by direct summation (any real xi below
// the Nyquist limit); exact match with the FFT at grid frequencies.
cplx fourier_at(const SampledFunction& f, double xi);

// (Z_beta f)(xi) = e^{-beta xi} f(e^{-xi}) on the matching uniform xi-grid.
SampledFunction z_beta_forward(const SampledFunction& f, double beta);
// Inverse: (Z_beta^{-1} g)(t) = t^{-beta} g(-ln t) back on the log grid.
SampledFunction z_beta_inverse(const SampledFunction& g, double beta);

// M_beta K sampled at the requested xi values via Z_beta + trapezoidal
// Fourier sums.  Requires 0 < beta < 1 and |xi| below half the Nyquist rate.
std::vector<cplx> mellin_transform_numeric(const AdmissibleKernel& kernel, double beta,
                                           std::span<const double> xi,
                                           double half_width = 64.0, size_t n = 1u << 14);
std::vector<cplx> mellin_transform_numeric(const SampledFunction& f, double beta,
                                           std::span<const double> xi);

enum class Analyticity { None, Upper, Lower, Both };

// Closed enumeration of multiplier families.  Everything the symbol calculus
// and the verification harness need is expressible as products of these, and
// the enumeration keeps CLI specs declarative and hashable.
struct Multiplier {
  enum class Kind { Constant, PiecewiseConstant, GRatio, Lambda, Product };

  Kind kind = Kind::Constant;
  cplx value{1.0, 0.0};            // Constant
  cplx left{1.0, 0.0};             // PiecewiseConstant: value for xi < 0
  cplx right{1.0, 0.0};            //                    value for xi > 0
  double power = 0.0;              // GRatio / Lambda exponent
  cplx num_shift{0.0, 0.0};        // GRatio: ((xi+num)/(xi+den))^power
  cplx den_shift{0.0, 0.0};
  cplx shift{0.0, 0.0};            // Lambda: (xi+shift)^power, principal branch
  std::vector<Multiplier> factors; // Product

  static Multiplier constant(cplx v);
  static Multiplier piecewise(cplx left_val, cplx right_val);
  static Multiplier g_ratio(double s, cplx num, cplx den);
  static Multiplier lambda(double r, cplx shift);
  static Multiplier product(std::vector<Multiplier> fs);

  // Continuous-branch value at finite xi.  GRatio uses the branch anchored
  // to 1 at xi = -inf (the unique one reproducing the jump limits of the
  // lifted identity); Lambda and Product factors are principal.
  cplx eval(double xi) const;

  cplx at_minus_inf() const;
  cplx at_plus_inf() const;
  cplx at_zero(int side) const;    // side < 0: value at 0-, side > 0: at 0+

  double order() const;            // growth order at infinity (0 except Lambda)
  Analyticity analyticity() const;
};

Analyticity meet(Analyticity a, Analyticity b);

struct ApplyOptions {
  bool restrict_halfline = false;  // zero out x < 0 after applying (the W_a form)
  double edge_tol = 1e-10;         // EdgeLeakage threshold on relative boundary mass
};

// W^0_a f = F^{-1} a F f on a uniform grid; optionally restricted to R+.
// The callable overloads take the symbol pointwise (for closed forms that
// live outside the serializable families, e.g. the Mellin symbols of K^m_c).
SampledFunction apply_fourier_multiplier(const Multiplier& m, const SampledFunction& f,
                                         const ApplyOptions& opts = {});
SampledFunction apply_fourier_multiplier(const std::function<cplx(double)>& m,
                                         const SampledFunction& f,
                                         const ApplyOptions& opts = {});

// Mellin convolution via Z_beta conjugation of the Fourier path.
SampledFunction apply_mellin_multiplier(const Multiplier& a, const SampledFunction& f,
                                        double beta, const ApplyOptions& opts = {});
SampledFunction apply_mellin_multiplier(const std::function<cplx(double)>& a,
                                        const SampledFunction& f, double beta,
                                        const ApplyOptions& opts = {});

// lambda^s_{+-gamma}(xi) = (xi +- gamma)^s, principal branch, with the
// analyticity flag (upper for +gamma, lower for -gamma).
Multiplier bessel_potential_multiplier(double s, cplx gamma, int sign);

struct UnwrappedPow {
  std::vector<cplx> values;
  double total_phase = 0.0;  // accumulated arg of the base along the path
};

// base^s continued along an ordered path, anchored at the principal argument
// of the first sample.  Rejects zero samples and coarse sampling (consecutive
// argument steps >= pi/2).
UnwrappedPow complex_power_unwrapped(std::span<const cplx> base, double s);

// Smoothly damps the outer fraction of the samples (cosine rolloff); used
// before multiplier application when slowly decaying tails would otherwise
// trip the edge guard.
void taper_edges(SampledFunction& f, double fraction = 0.05);

double rel_l2_error(std::span<const cplx> got, std::span<const cplx> want);

// Relative error in the weighted norm the Z_beta isometry preserves
// (samples weighted by t^beta); the natural measure on log grids, where the
// plain pointwise error is amplified by the weight at the extreme nodes.
double rel_l2_error_weighted(const SampledFunction& got, const SampledFunction& want,
                             double beta);

}  // namespace mellin

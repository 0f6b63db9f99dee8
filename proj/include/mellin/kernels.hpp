#pragma once

// Closed-form Mellin symbols of S_{R+} and K^m_c, direct quadrature evaluation
// of K^1_c and K^2_c, the complex upper incomplete gamma function, and the
// incomplete-gamma representations of the lifted operator.
//
// K^m_c phi(t) = (1/pi) int_0^inf tau^{m-1} phi(tau) dtau / (t - c tau)^m.
// The 1/pi normalization is fixed throughout; the alternative 1/(pi i)
// convention found in parts of the literature rescales every symbol by i.

#include <functional>
#include <span>

#include "mellin/core.hpp"
#include "mellin/transforms.hpp"

namespace mellin {

// arg c in [-pi, pi): the convention for the c^{+-s} scalars in symbol
// formulas (real negative c gets arg -pi, so c^{-s} = |c|^{-s} e^{+pi s i}).
double arg_symbol(cplx c);
// arg c in (0, 2pi): the branch of the scalar in the operator identities.
// Real negative c gets arg +pi (so c^{-s} = |c|^{-s} e^{-pi s i}); for
// arg c in (-pi, 0) the commutation formula needs arg c + 2pi, which the
// principal branch misses.
double arg_op(cplx c);
// |c|^e * exp(i e * argc) for a caller-chosen branch argument.
cplx pow_with_arg(cplx c, cplx expnt, double argc);

// 1/sin(pi z) and cot(pi z), stable for large |Im z| (the direct quotient
// overflows once |Im z| exceeds a few hundred).
cplx inv_sin_pi(cplx z);
cplx cot_pi(cplx z);
cplx log_inv_sin_pi(cplx z);  // log of 1/sin(pi z), principal-ish, for products

// Symbol of the Cauchy singular integral operator: -i cot(pi (beta - i xi)).
cplx sigma_S(double beta, double xi);

// Mellin symbol of K^m_c (m = 1, 2; principal (-c)-powers):
//   sigma(K^m_c)(xi) = (-1)^{m+1} binom(z-1, m-1) (-c)^{z-m} / sin(pi z),
// z = beta - i xi.  Decays like e^{-(pi-|arg(-c)|)|xi|}; xi = +-inf gives 0.
cplx sigma_Km(int m, cplx c, double beta, double xi);

cplx log_gamma(cplx z);
cplx gamma_fn(cplx z);
// Upper incomplete gamma Gamma(a, z), principal branch; series for small |z|,
// Lentz continued fraction otherwise.  z on the negative real axis is a
// BranchCut error unless a is a positive integer.
cplx upper_incomplete_gamma(cplx a, cplx z);

// Adaptive Gauss-Kronrod (G7/K15) on [a, b].
cplx integrate_gk(const std::function<cplx(double)>& f, double a, double b,
                  double rel_tol = 1e-9, double abs_tol = 1e-14);

using RealFn = std::function<cplx(double)>;

// (1/pi) int f(tau)/(t - c tau) dtau at each requested t, with f supported in
// [lo, hi]; adaptive quadrature with a panel split near the closest approach
// to the kernel singularity.  principal_value enables the c > 0 (Hilbert
// transform) case via symmetric-node exclusion and Richardson extrapolation.
std::vector<cplx> k1_pointwise(cplx c, const RealFn& f, double lo, double hi,
                               std::span<const double> ts, bool principal_value = false);
std::vector<cplx> k2_pointwise(cplx c, const RealFn& f, double lo, double hi,
                               std::span<const double> ts);

// Grid forms: integrate the sampled function over its own nodes (composite
// 4th-order weights).  On a log grid all nodes count; on a uniform R-grid
// only x > 0 contributes and outputs at x <= 0 are zero.
SampledFunction apply_K1_direct(cplx c, const SampledFunction& f,
                                bool principal_value = false);
SampledFunction apply_K2_direct(cplx c, const SampledFunction& f);

// Incomplete-gamma representations of Lambda^s_{-gamma} K^1_c (lhs) and
// K^1_c Lambda^s_{-c gamma} (rhs) for -1 < s < 0:
//   lhs(t) = (e^{-pi s i/2}/pi) int e^{-i g u} Gamma(1+s, -i g u) f(tau)/u^{1+s} dtau,
//   u = t - c tau;  rhs = c^s e^{-pi s i/2}/pi times the same integral.
std::vector<cplx> lifted_K1_lhs_oracle(double s, cplx gamma, cplx c, const RealFn& f,
                                       double lo, double hi, std::span<const double> ts);
std::vector<cplx> lifted_K1_rhs_oracle(double s, cplx gamma, cplx c, const RealFn& f,
                                       double lo, double hi, std::span<const double> ts);

}  // namespace mellin

#include "mellin/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace mellin {

namespace {
constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};
}  // namespace

double arg_symbol(cplx c) {
  double a = std::arg(c);
  if (a == kPi) a = -kPi;
  return a;
}

double arg_op(cplx c) {
  double a = std::arg(c);
  if (a <= 0.0) a += 2.0 * kPi;
  return a;
}

cplx pow_with_arg(cplx c, cplx expnt, double argc) {
  if (c == cplx(0.0)) fail(Err::ZeroBase, "zero base");
  return std::exp(expnt * cplx(std::log(std::abs(c)), argc));
}

cplx inv_sin_pi(cplx z) {
  const cplx w = kPi * z;
  if (std::abs(w.imag()) < 20.0) return 1.0 / std::sin(w);
  return std::exp(log_inv_sin_pi(z));
}

cplx log_inv_sin_pi(cplx z) {
  const cplx w = kPi * z;
  if (std::abs(w.imag()) < 20.0) return -std::log(std::sin(w));
  if (w.imag() > 0.0) {
    const cplx q = std::exp(2.0 * kI * w);  // tiny
    return std::log(2.0) - kI * (kPi / 2.0) + kI * w - std::log(1.0 - q);
  }
  const cplx r = std::exp(-2.0 * kI * w);  // tiny
  return std::log(2.0) + kI * (kPi / 2.0) - kI * w - std::log(1.0 - r);
}

cplx cot_pi(cplx z) {
  const cplx w = kPi * z;
  if (std::abs(w.imag()) < 20.0) return std::cos(w) / std::sin(w);
  if (w.imag() > 0.0) {
    const cplx q = std::exp(2.0 * kI * w);
    return -kI * (1.0 + q) / (1.0 - q);
  }
  const cplx r = std::exp(-2.0 * kI * w);
  return kI * (1.0 + r) / (1.0 - r);
}

cplx sigma_S(double beta, double xi) {
  if (!(beta > 0.0 && beta < 1.0)) fail(Err::PoleHit, "require 0 < beta < 1");
  if (std::isinf(xi)) return xi > 0 ? cplx(1.0) : cplx(-1.0);
  return -kI * cot_pi(cplx(beta, -xi));
}

cplx sigma_Km(int m, cplx c, double beta, double xi) {
  if (m < 1) fail(Err::BadParams, "multiplicity must be >= 1");
  if (c.imag() == 0.0 && c.real() >= 0.0) fail(Err::ArgCOnAxis, "require arg c != 0");
  if (std::isinf(xi)) return 0.0;
  const cplx z(beta, -xi);
  const cplx log_mc = std::log(-c);  // principal branch of (-c)-powers
  cplx binom = 1.0;
  double factorial = 1.0;
  for (int k = 1; k < m; ++k) {
    binom *= z - static_cast<double>(k);
    factorial *= static_cast<double>(k);
  }
  binom /= factorial;
  const double parity = (m % 2 == 1) ? 1.0 : -1.0;
  const cplx log_val = (z - static_cast<double>(m)) * log_mc + log_inv_sin_pi(z);
  if (log_val.real() < -700.0) return 0.0;
  return parity * binom * std::exp(log_val);
}

// ---------------------------------------------------------------------------
// Gamma functions

namespace {

// Lanczos, g = 7, 9 terms.
const double kLanczos[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

cplx log_gamma_core(cplx z) {
  // requires Re z >= 0.5
  z -= 1.0;
  cplx x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const cplx t = z + 7.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

}  // namespace

cplx log_gamma(cplx z) {
  if (z.real() < 0.5) {
    // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return std::log(kPi) - std::log(std::sin(kPi * z)) - log_gamma_core(1.0 - z);
  }
  return log_gamma_core(z);
}

cplx gamma_fn(cplx z) { return std::exp(log_gamma(z)); }

namespace {

bool near_nonneg_int(cplx a, int* n_out) {
  const double re = a.real();
  const double rn = std::round(re);
  if (rn < 0.0 || std::abs(re - rn) > 1e-12 || std::abs(a.imag()) > 1e-12) return false;
  *n_out = static_cast<int>(rn);
  return true;
}

cplx upper_gamma_int(int n, cplx z) {
  // Gamma(n, z) = (n-1)! e^{-z} sum_{k<n} z^k/k!, n >= 1
  cplx sum = 0.0, term = 1.0;
  for (int k = 0; k < n; ++k) {
    sum += term;
    term *= z / static_cast<double>(k + 1);
  }
  double fact = 1.0;
  for (int k = 2; k < n; ++k) fact *= static_cast<double>(k);
  return fact * std::exp(-z) * sum;
}

cplx exp_integral_e1(cplx z) {
  if (std::abs(z) <= 8.0) {
    // E1(z) = -euler - Log z - sum (-z)^k/(k k!)
    const double euler = 0.57721566490153286060651209;
    cplx sum = 0.0, term = 1.0;
    for (int k = 1; k < 120; ++k) {
      term *= -z / static_cast<double>(k);
      const cplx add = term / static_cast<double>(k);
      sum += add;
      if (std::abs(add) < 1e-18 * (1.0 + std::abs(sum))) break;
    }
    return -euler - std::log(z) - sum;
  }
  return upper_incomplete_gamma(cplx(1e-300, 0.0), z);  // falls through to the CF
}

cplx upper_gamma_cf(cplx a, cplx z) {
  // modified Lentz on Gamma(a,z) = e^{-z} z^a / (z+1-a - 1(1-a)/(z+3-a - ...))
  const double tiny = 1e-290;
  cplx b = z + 1.0 - a;
  cplx f = (b == cplx(0.0)) ? cplx(tiny) : b;
  cplx C = f, D = 0.0;
  for (int i = 1; i < 400; ++i) {
    const cplx an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    D = b + an * D;
    if (D == cplx(0.0)) D = tiny;
    C = b + an / C;
    if (C == cplx(0.0)) C = tiny;
    D = 1.0 / D;
    const cplx delta = C * D;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-z + a * std::log(z)) / f;
}

}  // namespace

cplx upper_incomplete_gamma(cplx a, cplx z) {
  int n = 0;
  const bool a_is_int = near_nonneg_int(a, &n);
  if (z == cplx(0.0)) {
    if (a.real() <= 0.0) fail(Err::BadParams, "Gamma(a,0) needs Re a > 0");
    return gamma_fn(a);
  }
  if (a_is_int && n >= 1 && n <= 64) return upper_gamma_int(n, z);
  if (z.imag() == 0.0 && z.real() < 0.0)
    fail(Err::BranchCut, "z on the negative real axis with non-integer a");
  if (a_is_int && n == 0) {
    if (std::abs(z) <= 8.0) return exp_integral_e1(z);
    return upper_gamma_cf(cplx(0.0), z);
  }
  const bool use_cf = std::abs(z) >= 9.0 || (z.real() > 0.0 && std::abs(z) >= std::abs(a) + 4.0);
  if (use_cf) return upper_gamma_cf(a, z);
  // lower-gamma Kummer series; assumes a away from the nonpositive integers
  cplx term = 1.0 / a, sum = term;
  for (int k = 1; k < 400; ++k) {
    term *= z / (a + static_cast<double>(k));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  const cplx lower = std::exp(a * std::log(z) - z) * sum;
  return gamma_fn(a) - lower;
}

// ---------------------------------------------------------------------------
// Adaptive Gauss-Kronrod

namespace {

const double kXgk[8] = {0.991455371120813, 0.949107912342759, 0.864864423359769,
                        0.741531185599394, 0.586087235467691, 0.405845151377397,
                        0.207784955007898, 0.0};
const double kWgk[8] = {0.022935322010529, 0.063092092629979, 0.104790010322250,
                        0.140653259715525, 0.169004726639267, 0.190350578064785,
                        0.204432940075298, 0.209482141084728};
const double kWg[4] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                       0.417959183673469};

struct GkResult {
  cplx integral;
  double err;
};

GkResult gk15(const std::function<cplx(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b), hw = 0.5 * (b - a);
  cplx resk = 0.0, resg = 0.0;
  for (int j = 0; j < 7; ++j) {
    const cplx f1 = f(mid - hw * kXgk[j]);
    const cplx f2 = f(mid + hw * kXgk[j]);
    resk += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  const cplx fc = f(mid);
  resk += kWgk[7] * fc;
  resg += kWg[3] * fc;
  return {resk * hw, std::abs(resk - resg) * hw};
}

void gk_adaptive(const std::function<cplx(double)>& f, double a, double b, double rel_tol,
                 double abs_tol, int depth, cplx* acc) {
  const GkResult r = gk15(f, a, b);
  if (depth >= 40 || r.err <= std::max(abs_tol, rel_tol * std::abs(r.integral))) {
    *acc += r.integral;
    return;
  }
  const double mid = 0.5 * (a + b);
  gk_adaptive(f, a, mid, rel_tol, abs_tol, depth + 1, acc);
  gk_adaptive(f, mid, b, rel_tol, abs_tol, depth + 1, acc);
}

}  // namespace

cplx integrate_gk(const std::function<cplx(double)>& f, double a, double b, double rel_tol,
                  double abs_tol) {
  if (a == b) return 0.0;
  cplx acc = 0.0;
  gk_adaptive(f, a, b, rel_tol, abs_tol, 0, &acc);
  return acc;
}

// ---------------------------------------------------------------------------
// K^1_c, K^2_c

namespace {

bool is_positive_real(cplx c) { return c.imag() == 0.0 && c.real() > 0.0; }

// Quadrature over [lo,hi] with an extra breakpoint at the closest approach of
// tau to the kernel singularity t/c (the kernel is regular for arg c != 0 but
// nearly singular when |arg c| is small).
cplx integrate_with_split(const std::function<cplx(double)>& f, double lo, double hi,
                          double split) {
  if (split > lo && split < hi) {
    return integrate_gk(f, lo, split) + integrate_gk(f, split, hi);
  }
  return integrate_gk(f, lo, hi);
}

// polynomial extrapolation of I(w) to w = 0 (Richardson with arbitrary nodes)
cplx extrapolate_to_zero(const double* w, const cplx* val, int n) {
  cplx acc = 0.0;
  for (int i = 0; i < n; ++i) {
    double l = 1.0;
    for (int j = 0; j < n; ++j)
      if (j != i) l *= w[j] / (w[j] - w[i]);
    acc += l * val[i];
  }
  return acc;
}

cplx pv_pointwise_at(cplx c, const RealFn& f, double lo, double hi, double t) {
  const double tau0 = t / c.real();
  auto integrand = [&](double tau) { return f(tau) / (t - c * tau); };
  if (tau0 <= lo || tau0 >= hi) return integrate_gk(integrand, lo, hi) / kPi;
  const double eps0 = std::min(0.02 * (hi - lo), 0.45 * std::min(tau0 - lo, hi - tau0));
  auto excl = [&](double eps) {
    return integrate_gk(integrand, lo, tau0 - eps) + integrate_gk(integrand, tau0 + eps, hi);
  };
  const double w[3] = {eps0, eps0 / 2.0, eps0 / 4.0};
  const cplx vals[3] = {excl(w[0]), excl(w[1]), excl(w[2])};
  return extrapolate_to_zero(w, vals, 3) / kPi;
}

}  // namespace

std::vector<cplx> k1_pointwise(cplx c, const RealFn& f, double lo, double hi,
                               std::span<const double> ts, bool principal_value) {
  if (c == cplx(0.0)) fail(Err::BadParams, "c must be nonzero");
  std::vector<cplx> out(ts.size());
  if (is_positive_real(c)) {
    if (!principal_value) fail(Err::PVNotRequested, "c > 0 needs principal-value mode");
    for (size_t i = 0; i < ts.size(); ++i) out[i] = pv_pointwise_at(c, f, lo, hi, ts[i]);
    return out;
  }
  const double csq = std::norm(c);
  for (size_t i = 0; i < ts.size(); ++i) {
    const double t = ts[i];
    auto integrand = [&](double tau) { return f(tau) / (t - c * tau); };
    const double split = t * c.real() / csq;
    out[i] = integrate_with_split(integrand, lo, hi, split) / kPi;
  }
  return out;
}

std::vector<cplx> k2_pointwise(cplx c, const RealFn& f, double lo, double hi,
                               std::span<const double> ts) {
  if (c.imag() == 0.0 && c.real() >= 0.0) fail(Err::ArgCOnAxis, "require arg c != 0");
  const double csq = std::norm(c);
  std::vector<cplx> out(ts.size());
  for (size_t i = 0; i < ts.size(); ++i) {
    const double t = ts[i];
    auto integrand = [&](double tau) {
      const cplx den = t - c * tau;
      return tau * f(tau) / (den * den);
    };
    const double split = t * c.real() / csq;
    out[i] = integrate_with_split(integrand, lo, hi, split) / kPi;
  }
  return out;
}

namespace {

// Composite 4th-order end-corrected weights (in the grid variable).
std::vector<double> quad_weights(size_t n, double dx) {
  std::vector<double> w(n, dx);
  if (n >= 8) {
    const double edge[4] = {17.0 / 48.0, 59.0 / 48.0, 43.0 / 48.0, 49.0 / 48.0};
    for (int j = 0; j < 4; ++j) {
      w[j] = edge[j] * dx;
      w[n - 1 - j] = edge[j] * dx;
    }
  } else if (n >= 2) {
    w[0] = w[n - 1] = 0.5 * dx;
  }
  return w;
}

struct GridQuad {
  std::vector<double> tau;   // integration nodes (positive)
  std::vector<double> wt;    // weights including the log-grid Jacobian
  std::vector<size_t> idx;   // node index into the sampled function
};

GridQuad make_grid_quad(const GridSpec& g) {
  GridQuad q;
  if (g.log_nodes) {
    const std::vector<double> w = quad_weights(g.n, g.dx);
    q.tau.resize(g.n);
    q.wt.resize(g.n);
    q.idx.resize(g.n);
    for (size_t j = 0; j < g.n; ++j) {
      q.tau[j] = g.node(j);
      q.wt[j] = w[j] * q.tau[j];  // dtau = t dx
      q.idx[j] = j;
    }
    return q;
  }
  size_t first = 0;
  while (first < g.n && g.x(first) <= 0.0) ++first;
  const size_t m = g.n - first;
  const std::vector<double> w = quad_weights(m, g.dx);
  q.tau.resize(m);
  q.wt.resize(m);
  q.idx.resize(m);
  for (size_t j = 0; j < m; ++j) {
    q.tau[j] = g.x(first + j);
    q.wt[j] = w[j];
    q.idx[j] = first + j;
  }
  return q;
}

SampledFunction apply_K_grid(cplx c, const SampledFunction& f, int m) {
  const GridQuad q = make_grid_quad(f.grid);
  SampledFunction out;
  out.grid = f.grid;
  out.v.assign(f.grid.n, cplx(0.0));
  const size_t nq = q.tau.size();
  std::vector<cplx> weighted(nq);
  for (size_t j = 0; j < nq; ++j) {
    weighted[j] = q.wt[j] * f.v[q.idx[j]];
    if (m == 2) weighted[j] *= q.tau[j];
  }
  for (size_t i = 0; i < nq; ++i) {
    const double t = q.tau[i];
    cplx acc = 0.0;
    if (m == 1) {
      for (size_t j = 0; j < nq; ++j) acc += weighted[j] / (t - c * q.tau[j]);
    } else {
      for (size_t j = 0; j < nq; ++j) {
        const cplx den = t - c * q.tau[j];
        acc += weighted[j] / (den * den);
      }
    }
    out.v[q.idx[i]] = acc / kPi;
  }
  return out;
}

SampledFunction apply_K1_pv_grid(cplx c, const SampledFunction& f) {
  // symmetric-node exclusion in the grid variable plus Richardson in the
  // window size; tolerance here is intentionally modest (1e-3 scale)
  const GridQuad q = make_grid_quad(f.grid);
  SampledFunction out;
  out.grid = f.grid;
  out.v.assign(f.grid.n, cplx(0.0));
  const size_t nq = q.tau.size();
  const double cr = c.real();
  // exact lattice coordinates, so boundary nodes of the exclusion window are
  // classified identically on both sides of the singularity
  std::vector<double> xs(nq);
  for (size_t j = 0; j < nq; ++j) xs[j] = f.grid.x(q.idx[j]);
  auto excl_sum = [&](size_t i, double window) {
    const double x0 = f.grid.log_nodes ? xs[i] - std::log(cr) : q.tau[i] / cr;
    cplx acc = 0.0;
    for (size_t j = 0; j < nq; ++j) {
      if (std::abs(xs[j] - x0) < window) continue;
      acc += f.grid.dx * (f.grid.log_nodes ? q.tau[j] : 1.0) * f.v[q.idx[j]] /
             (q.tau[i] - c * q.tau[j]);
    }
    return acc;
  };
  // node-snapped windows of k cells behave like continuum windows of
  // (k + 1/2) cells under the trapezoid rule; extrapolate against those
  const int ks[3] = {16, 8, 4};
  double weff[3];
  cplx vals[3];
  for (int m = 0; m < 3; ++m) weff[m] = (ks[m] + 0.5) * f.grid.dx;
  for (size_t i = 0; i < nq; ++i) {
    for (int m = 0; m < 3; ++m) vals[m] = excl_sum(i, (ks[m] + 0.5) * f.grid.dx);
    out.v[q.idx[i]] = extrapolate_to_zero(weff, vals, 3) / kPi;
  }
  return out;
}

}  // namespace

SampledFunction apply_K1_direct(cplx c, const SampledFunction& f, bool principal_value) {
  if (c == cplx(0.0)) fail(Err::BadParams, "c must be nonzero");
  if (is_positive_real(c)) {
    if (!principal_value) fail(Err::PVNotRequested, "c > 0 needs principal-value mode");
    return apply_K1_pv_grid(c, f);
  }
  return apply_K_grid(c, f, 1);
}

SampledFunction apply_K2_direct(cplx c, const SampledFunction& f) {
  if (c.imag() == 0.0 && c.real() >= 0.0) fail(Err::ArgCOnAxis, "require arg c != 0");
  return apply_K_grid(c, f, 2);
}

// ---------------------------------------------------------------------------
// Lifted oracles (incomplete-gamma representations)

namespace {

std::vector<cplx> lifted_K1_core(double s, cplx gamma, cplx c, const RealFn& f, double lo,
                                 double hi, std::span<const double> ts) {
  if (!(s > -1.0 && s < 0.0)) fail(Err::SOutOfRange, "require -1 < s < 0");
  const double ag = std::arg(gamma);
  if (!(ag > 0.0 && ag < kPi)) fail(Err::BadGammaArg, "require 0 < arg gamma < pi");
  if (c.imag() == 0.0 && c.real() >= 0.0) fail(Err::ArgCOnAxis, "require arg c != 0");
  const double acg = std::arg(c * gamma);
  if (!(acg > -kPi && acg < 0.0))
    fail(Err::HypothesisViolated, "require -pi < arg(c gamma) < 0");
  std::vector<cplx> out(ts.size());
  const double csq = std::norm(c);
  for (size_t i = 0; i < ts.size(); ++i) {
    const double t = ts[i];
    auto integrand = [&](double tau) {
      const cplx u = t - c * tau;
      const cplx w = -kI * gamma * u;
      return std::exp(-kI * gamma * u) * upper_incomplete_gamma(1.0 + s, w) * f(tau) /
             std::pow(u, 1.0 + s);
    };
    const double split = t * c.real() / csq;
    out[i] = integrate_with_split(integrand, lo, hi, split) / kPi;
  }
  return out;
}

}  // namespace

std::vector<cplx> lifted_K1_lhs_oracle(double s, cplx gamma, cplx c, const RealFn& f,
                                       double lo, double hi, std::span<const double> ts) {
  std::vector<cplx> out = lifted_K1_core(s, gamma, c, f, lo, hi, ts);
  const cplx pref = std::exp(cplx(0.0, -0.5 * kPi * s));
  for (cplx& v : out) v *= pref;
  return out;
}

std::vector<cplx> lifted_K1_rhs_oracle(double s, cplx gamma, cplx c, const RealFn& f,
                                       double lo, double hi, std::span<const double> ts) {
  std::vector<cplx> out = lifted_K1_core(s, gamma, c, f, lo, hi, ts);
  const cplx pref =
      pow_with_arg(c, cplx(s), arg_op(c)) * std::exp(cplx(0.0, -0.5 * kPi * s));
  for (cplx& v : out) v *= pref;
  return out;
}

}  // namespace mellin

#include "mellin/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mellin {

namespace {
constexpr double kPi = std::numbers::pi;

double sgnp(double v) { return v >= 0.0 ? 1.0 : -1.0; }

bool is_pow2(size_t n) { return n != 0 && (n & (n - 1)) == 0; }
}  // namespace

double GridSpec::node(size_t k) const {
  const double xk = x(k);
  return log_nodes ? std::exp(xk) : xk;
}

bool GridSpec::same_as(const GridSpec& other) const {
  return x0 == other.x0 && dx == other.dx && n == other.n && log_nodes == other.log_nodes;
}

GridSpec fourier_grid(double half_width, size_t n) {
  if (!is_pow2(n)) fail(Err::GridMismatch, "node count must be a power of two");
  GridSpec g;
  g.x0 = -half_width;
  g.dx = 2.0 * half_width / static_cast<double>(n);
  g.n = n;
  g.log_nodes = false;
  return g;
}

GridSpec mellin_log_grid(double half_width, size_t n) {
  GridSpec g = fourier_grid(half_width, n);
  g.log_nodes = true;
  return g;
}

SampledFunction sample(const GridSpec& grid, const std::function<cplx(double)>& f) {
  SampledFunction out;
  out.grid = grid;
  out.v.resize(grid.n);
  for (size_t k = 0; k < grid.n; ++k) out.v[k] = f(grid.node(k));
  return out;
}

void fft_pow2(std::vector<cplx>& a, int sign) {
  const size_t n = a.size();
  if (!is_pow2(n)) fail(Err::GridMismatch, "fft size must be a power of two");
  // bit-reversal permutation
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * kPi / static_cast<double>(len);
    const cplx wl = std::polar(1.0, ang);
    for (size_t i = 0; i < n; i += len) {
      cplx w = 1.0;
      for (size_t k = 0; k < len / 2; ++k) {
        const cplx u = a[i + k];
        const cplx t = a[i + k + len / 2] * w;
        a[i + k] = u + t;
        a[i + k + len / 2] = u - t;
        w *= wl;
      }
    }
  }
}

cplx fourier_at(const SampledFunction& f, double xi) {
  const GridSpec& g = f.grid;
  if (g.log_nodes) fail(Err::GridMismatch, "fourier_at needs a uniform grid");
  if (std::abs(xi) > kPi / g.dx) fail(Err::GridTooCoarse, "frequency beyond the Nyquist limit");
  cplx acc = 0.0;
  for (size_t k = 0; k < g.n; ++k) acc += f.v[k] * std::polar(1.0, xi * g.x(k));
  return acc * g.dx;
}

SampledFunction z_beta_forward(const SampledFunction& f, double beta) {
  const GridSpec& g = f.grid;
  if (!g.log_nodes) fail(Err::GridMismatch, "z_beta_forward expects a log grid on R+");
  SampledFunction out;
  out.grid.x0 = -(g.x0 + g.dx * static_cast<double>(g.n - 1));
  out.grid.dx = g.dx;
  out.grid.n = g.n;
  out.grid.log_nodes = false;
  out.v.resize(g.n);
  for (size_t j = 0; j < g.n; ++j) {
    const double xi = out.grid.x(j);
    out.v[j] = std::exp(-beta * xi) * f.v[g.n - 1 - j];
  }
  return out;
}

SampledFunction z_beta_inverse(const SampledFunction& g, double beta) {
  const GridSpec& gr = g.grid;
  if (gr.log_nodes) fail(Err::GridMismatch, "z_beta_inverse expects a uniform grid on R");
  SampledFunction out;
  out.grid.x0 = -(gr.x0 + gr.dx * static_cast<double>(gr.n - 1));
  out.grid.dx = gr.dx;
  out.grid.n = gr.n;
  out.grid.log_nodes = true;
  out.v.resize(gr.n);
  for (size_t k = 0; k < gr.n; ++k) {
    const double xk = out.grid.x(k);
    out.v[k] = std::exp(-beta * xk) * g.v[gr.n - 1 - k];
  }
  return out;
}

std::vector<cplx> mellin_transform_numeric(const AdmissibleKernel& kernel, double beta,
                                           std::span<const double> xi, double half_width,
                                           size_t n) {
  if (!(beta > 0.0 && beta < 1.0)) fail(Err::NonintegrableKernel, "require 0 < beta < 1");
  SampledFunction image;  // Z_beta of the kernel, sampled directly
  image.grid = fourier_grid(half_width, n);
  image.v.resize(n);
  for (size_t j = 0; j < n; ++j) {
    const double y = image.grid.x(j);
    image.v[j] = std::exp(-beta * y) * kernel.eval(std::exp(-y));
  }
  std::vector<cplx> out(xi.size());
  const double nyq = 0.5 * kPi / image.grid.dx;
  for (size_t i = 0; i < xi.size(); ++i) {
    if (std::abs(xi[i]) > nyq) fail(Err::GridTooCoarse, "requested xi too large for the grid");
    out[i] = fourier_at(image, xi[i]);
  }
  return out;
}

std::vector<cplx> mellin_transform_numeric(const SampledFunction& f, double beta,
                                           std::span<const double> xi) {
  if (!(beta > 0.0 && beta < 1.0)) fail(Err::NonintegrableKernel, "require 0 < beta < 1");
  const SampledFunction image = z_beta_forward(f, beta);
  std::vector<cplx> out(xi.size());
  const double nyq = 0.5 * kPi / image.grid.dx;
  for (size_t i = 0; i < xi.size(); ++i) {
    if (std::abs(xi[i]) > nyq) fail(Err::GridTooCoarse, "requested xi too large for the grid");
    out[i] = fourier_at(image, xi[i]);
  }
  return out;
}

Multiplier Multiplier::constant(cplx v) {
  Multiplier m;
  m.kind = Kind::Constant;
  m.value = v;
  return m;
}

Multiplier Multiplier::piecewise(cplx left_val, cplx right_val) {
  Multiplier m;
  m.kind = Kind::PiecewiseConstant;
  m.left = left_val;
  m.right = right_val;
  return m;
}

Multiplier Multiplier::g_ratio(double s, cplx num, cplx den) {
  Multiplier m;
  m.kind = Kind::GRatio;
  m.power = s;
  m.num_shift = num;
  m.den_shift = den;
  return m;
}

Multiplier Multiplier::lambda(double r, cplx shift) {
  Multiplier m;
  m.kind = Kind::Lambda;
  m.power = r;
  m.shift = shift;
  return m;
}

Multiplier Multiplier::product(std::vector<Multiplier> fs) {
  Multiplier m;
  m.kind = Kind::Product;
  m.factors = std::move(fs);
  return m;
}

cplx Multiplier::eval(double xi) const {
  switch (kind) {
    case Kind::Constant:
      return value;
    case Kind::PiecewiseConstant:
      if (xi < 0.0) return left;
      if (xi > 0.0) return right;
      return 0.5 * (left + right);
    case Kind::GRatio: {
      if (power == 0.0) return 1.0;
      const cplx za = xi + num_shift;
      const cplx zb = xi + den_shift;
      if (za == cplx(0.0) || zb == cplx(0.0)) fail(Err::ZeroBase, "ratio vanishes on the path");
      // Branch anchored to 1 at xi = -inf: subtract the -inf limits of the
      // principal arguments of numerator and denominator.
      const double theta = std::arg(za) - kPi * sgnp(num_shift.imag()) -
                           std::arg(zb) + kPi * sgnp(den_shift.imag());
      const double logmag = std::log(std::abs(za)) - std::log(std::abs(zb));
      return std::exp(power * cplx(logmag, theta));
    }
    case Kind::Lambda: {
      const cplx z = xi + shift;
      if (z == cplx(0.0)) fail(Err::ZeroBase, "lambda base vanishes");
      return std::pow(z, power);
    }
    case Kind::Product: {
      cplx acc = 1.0;
      for (const Multiplier& f : factors) acc *= f.eval(xi);
      return acc;
    }
  }
  return 0.0;
}

cplx Multiplier::at_minus_inf() const {
  switch (kind) {
    case Kind::Constant: return value;
    case Kind::PiecewiseConstant: return left;
    case Kind::GRatio: return 1.0;
    case Kind::Lambda:
      if (power == 0.0) return 1.0;
      fail(Err::BadParams, "lambda multiplier is unbounded at infinity");
    case Kind::Product: {
      if (order() != 0.0) fail(Err::BadParams, "product multiplier is unbounded at infinity");
      bool plain = true;
      for (const Multiplier& f : factors) plain = plain && f.kind != Kind::Lambda;
      if (!plain) return eval(-1e12);  // orders cancel; the limit converges like 1/xi
      cplx acc = 1.0;
      for (const Multiplier& f : factors) acc *= f.at_minus_inf();
      return acc;
    }
  }
  return 0.0;
}

cplx Multiplier::at_plus_inf() const {
  switch (kind) {
    case Kind::Constant: return value;
    case Kind::PiecewiseConstant: return right;
    case Kind::GRatio: {
      const double theta = kPi * (sgnp(den_shift.imag()) - sgnp(num_shift.imag()));
      return std::exp(cplx(0.0, power * theta));
    }
    case Kind::Lambda:
      if (power == 0.0) return 1.0;
      fail(Err::BadParams, "lambda multiplier is unbounded at infinity");
    case Kind::Product: {
      if (order() != 0.0) fail(Err::BadParams, "product multiplier is unbounded at infinity");
      bool plain = true;
      for (const Multiplier& f : factors) plain = plain && f.kind != Kind::Lambda;
      if (!plain) return eval(1e12);
      cplx acc = 1.0;
      for (const Multiplier& f : factors) acc *= f.at_plus_inf();
      return acc;
    }
  }
  return 0.0;
}

cplx Multiplier::at_zero(int side) const {
  switch (kind) {
    case Kind::Constant: return value;
    case Kind::PiecewiseConstant: return side < 0 ? left : right;
    case Kind::GRatio: return eval(0.0);
    case Kind::Lambda: return eval(0.0);
    case Kind::Product: {
      cplx acc = 1.0;
      for (const Multiplier& f : factors) acc *= f.at_zero(side);
      return acc;
    }
  }
  return 0.0;
}

double Multiplier::order() const {
  switch (kind) {
    case Kind::Lambda: return power;
    case Kind::Product: {
      double acc = 0.0;
      for (const Multiplier& f : factors) acc += f.order();
      return acc;
    }
    default: return 0.0;
  }
}

Analyticity meet(Analyticity a, Analyticity b) {
  if (a == Analyticity::Both) return b;
  if (b == Analyticity::Both) return a;
  if (a == b) return a;
  return Analyticity::None;
}

Analyticity Multiplier::analyticity() const {
  switch (kind) {
    case Kind::Constant:
      return Analyticity::Both;
    case Kind::PiecewiseConstant:
      return left == right ? Analyticity::Both : Analyticity::None;
    case Kind::GRatio: {
      if (power == 0.0) return Analyticity::Both;
      // Branch points at -num_shift and -den_shift.
      const bool lower_ok = num_shift.imag() < 0.0 && den_shift.imag() < 0.0;
      const bool upper_ok = num_shift.imag() > 0.0 && den_shift.imag() > 0.0;
      if (lower_ok) return Analyticity::Lower;
      if (upper_ok) return Analyticity::Upper;
      return Analyticity::None;
    }
    case Kind::Lambda: {
      if (power == 0.0) return Analyticity::Both;
      if (shift.imag() > 0.0) return Analyticity::Upper;
      if (shift.imag() < 0.0) return Analyticity::Lower;
      return Analyticity::None;
    }
    case Kind::Product: {
      Analyticity acc = Analyticity::Both;
      for (const Multiplier& f : factors) acc = meet(acc, f.analyticity());
      return acc;
    }
  }
  return Analyticity::None;
}

namespace {

void check_edge_mass(const SampledFunction& f, double tol) {
  if (!(tol < 1.0) || f.v.empty()) return;
  const size_t edge = std::max<size_t>(1, f.grid.n / 20);
  double total = 0.0, boundary = 0.0;
  for (size_t k = 0; k < f.grid.n; ++k) {
    const double m = std::norm(f.v[k]);
    total += m;
    if (k < edge || k + edge >= f.grid.n) boundary += m;
  }
  if (total > 0.0 && boundary / total > tol)
    fail(Err::EdgeLeakage, "boundary mass above threshold; enlarge the grid");
}

}  // namespace

SampledFunction apply_fourier_multiplier(const std::function<cplx(double)>& m,
                                         const SampledFunction& f, const ApplyOptions& opts) {
  const GridSpec& g = f.grid;
  if (g.log_nodes) fail(Err::GridMismatch, "expected a uniform grid on R");
  if (!is_pow2(g.n)) fail(Err::GridMismatch, "node count must be a power of two");
  check_edge_mass(f, opts.edge_tol);

  std::vector<cplx> a = f.v;
  fft_pow2(a, +1);
  const double dxi = 2.0 * kPi / (g.dx * static_cast<double>(g.n));
  const size_t half = g.n / 2;
  for (size_t k = 0; k < g.n; ++k) {
    const double signed_idx =
        (k < half) ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(g.n);
    a[k] *= m(dxi * signed_idx);
  }
  fft_pow2(a, -1);
  SampledFunction out;
  out.grid = g;
  out.v.resize(g.n);
  const double scale = 1.0 / static_cast<double>(g.n);
  for (size_t k = 0; k < g.n; ++k) out.v[k] = a[k] * scale;
  if (opts.restrict_halfline) {
    for (size_t k = 0; k < g.n; ++k)
      if (g.x(k) < 0.0) out.v[k] = 0.0;
  }
  return out;
}

SampledFunction apply_fourier_multiplier(const Multiplier& m, const SampledFunction& f,
                                         const ApplyOptions& opts) {
  return apply_fourier_multiplier([&m](double xi) { return m.eval(xi); }, f, opts);
}

SampledFunction apply_mellin_multiplier(const std::function<cplx(double)>& a,
                                        const SampledFunction& f, double beta,
                                        const ApplyOptions& opts) {
  const SampledFunction image = z_beta_forward(f, beta);
  ApplyOptions fopts = opts;
  fopts.restrict_halfline = false;
  const SampledFunction mapped = apply_fourier_multiplier(a, image, fopts);
  return z_beta_inverse(mapped, beta);
}

SampledFunction apply_mellin_multiplier(const Multiplier& a, const SampledFunction& f,
                                        double beta, const ApplyOptions& opts) {
  return apply_mellin_multiplier([&a](double xi) { return a.eval(xi); }, f, beta, opts);
}

Multiplier bessel_potential_multiplier(double s, cplx gamma, int sign) {
  const double ag = std::arg(gamma);
  if (!(ag > 0.0 && ag < kPi)) fail(Err::BadGammaArg, "require 0 < arg gamma < pi");
  return Multiplier::lambda(s, sign >= 0 ? gamma : -gamma);
}

UnwrappedPow complex_power_unwrapped(std::span<const cplx> base, double s) {
  if (base.empty()) fail(Err::BadParams, "empty path");
  UnwrappedPow out;
  out.values.resize(base.size());
  double arg_acc = std::arg(base[0]);
  if (!(std::abs(base[0]) > 0.0)) fail(Err::ZeroBase, "zero base sample");
  const double arg0 = arg_acc;
  out.values[0] = std::exp(s * cplx(std::log(std::abs(base[0])), arg_acc));
  for (size_t k = 1; k < base.size(); ++k) {
    const double mag = std::abs(base[k]);
    if (!(mag > 0.0) || !std::isfinite(mag)) fail(Err::ZeroBase, "zero base sample");
    const double step = std::arg(base[k] / base[k - 1]);
    if (std::abs(step) >= kPi / 2.0)
      fail(Err::PhaseJump, "argument step >= pi/2; refine the path");
    arg_acc += step;
    out.values[k] = std::exp(s * cplx(std::log(mag), arg_acc));
  }
  out.total_phase = arg_acc - arg0;
  return out;
}

void taper_edges(SampledFunction& f, double fraction) {
  const size_t w = static_cast<size_t>(fraction * static_cast<double>(f.grid.n));
  if (w == 0) return;
  for (size_t j = 0; j < w && j < f.grid.n; ++j) {
    const double t = static_cast<double>(j) / static_cast<double>(w);
    const double win = 0.5 * (1.0 - std::cos(kPi * t));
    f.v[j] *= win;
    f.v[f.grid.n - 1 - j] *= win;
  }
}

double rel_l2_error(std::span<const cplx> got, std::span<const cplx> want) {
  if (got.size() != want.size()) fail(Err::GridMismatch, "size mismatch");
  double num = 0.0, den = 0.0;
  for (size_t k = 0; k < got.size(); ++k) {
    num += std::norm(got[k] - want[k]);
    den += std::norm(want[k]);
  }
  if (den == 0.0) return std::sqrt(num);
  return std::sqrt(num / den);
}

double rel_l2_error_weighted(const SampledFunction& got, const SampledFunction& want,
                             double beta) {
  if (!got.grid.same_as(want.grid)) fail(Err::GridMismatch, "grids differ");
  double num = 0.0, den = 0.0;
  for (size_t k = 0; k < got.grid.n; ++k) {
    const double w = got.grid.log_nodes ? std::pow(got.grid.node(k), 2.0 * beta) : 1.0;
    num += w * std::norm(got.v[k] - want.v[k]);
    den += w * std::norm(want.v[k]);
  }
  if (den == 0.0) return std::sqrt(num);
  return std::sqrt(num / den);
}

}  // namespace mellin

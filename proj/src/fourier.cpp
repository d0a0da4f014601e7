#include "sfdd/fourier.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "sfdd/errors.hpp"
#include "sfdd/quadrature.hpp"

namespace sfdd {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_02pi(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  return t;
}

}  // namespace

BoundaryFn BoundaryFn::constant(double value) {
  return continuous([value](double) { return value; });
}

BoundaryFn BoundaryFn::continuous(std::function<double(double)> f) {
  BoundaryFn g;
  g.pieces_.push_back({0.0, kTwoPi, std::move(f)});
  return g;
}

BoundaryFn BoundaryFn::piecewise(std::vector<Piece> pieces) {
  if (pieces.empty()) throw std::invalid_argument("BoundaryFn: no pieces");
  std::sort(pieces.begin(), pieces.end(),
            [](const Piece& a, const Piece& b) { return a.lo < b.lo; });
  if (std::abs(pieces.front().lo) > 1e-12 ||
      std::abs(pieces.back().hi - kTwoPi) > 1e-12)
    throw std::invalid_argument("BoundaryFn: pieces must cover [0, 2pi)");
  for (size_t i = 0; i + 1 < pieces.size(); ++i)
    if (std::abs(pieces[i].hi - pieces[i + 1].lo) > 1e-12)
      throw std::invalid_argument("BoundaryFn: pieces must be contiguous");

  BoundaryFn g;
  g.pieces_ = std::move(pieces);
  // junction angles, including the wrap at 0
  const size_t n = g.pieces_.size();
  for (size_t i = 0; i < n; ++i) {
    const Piece& prev = g.pieces_[(i + n - 1) % n];
    const Piece& next = g.pieces_[i];
    const double left = prev.f(prev.hi);
    const double right = next.f(next.lo);
    const double scale = std::max({1.0, std::abs(left), std::abs(right)});
    if (std::abs(left - right) > 1e-12 * scale)
      g.breaks_.push_back({next.lo, left, right});
  }
  return g;
}

BoundaryFn BoundaryFn::arc_indicator(double theta_star) {
  if (!(theta_star > 0.0 && theta_star < kPi))
    throw std::domain_error("arc_indicator: theta_star must be in (0, pi)");
  auto one = [](double) { return 1.0; };
  auto zero = [](double) { return 0.0; };
  return piecewise({{0.0, theta_star, one},
                    {theta_star, kTwoPi - theta_star, zero},
                    {kTwoPi - theta_star, kTwoPi, one}});
}

double BoundaryFn::operator()(double theta) const {
  const double t = wrap_02pi(theta);
  // rightmost piece with lo <= t (right limit at junctions)
  size_t lo = 0, hi = pieces_.size();
  while (hi - lo > 1) {
    const size_t mid = (lo + hi) / 2;
    if (pieces_[mid].lo <= t)
      lo = mid;
    else
      hi = mid;
  }
  return pieces_[lo].f(t);
}

namespace {

// One quadrature pass over all pieces: accumulates A_n, B_n for n = 0..N
// with `panels_scale` GL16 panels per oscillation period of the highest mode.
void fourier_pass(const BoundaryFn& g, int N, double panels_scale,
                  std::vector<double>& A, std::vector<double>& B) {
  A.assign(N + 1, 0.0);
  B.assign(N + 1, 0.0);
  std::vector<double> x, w;
  for (const auto& piece : g.pieces()) {
    const double len = piece.hi - piece.lo;
    if (len <= 0.0) continue;
    const int panels =
        std::max(4, static_cast<int>(std::ceil(panels_scale * len * (N + 4) / kTwoPi)));
    gauss_legendre_panels(piece.lo, piece.hi, panels, x, w);
    for (size_t q = 0; q < x.size(); ++q) {
      const double fw = piece.f(x[q]) * w[q];
      for (int n = 0; n <= N; ++n) {
        A[n] += fw * std::cos(n * x[q]);
        B[n] += fw * std::sin(n * x[q]);
      }
    }
  }
  for (int n = 0; n <= N; ++n) {
    A[n] /= kPi;
    B[n] /= kPi;
  }
}

}  // namespace

FourierCoeffs project(const BoundaryFn& g, int N) {
  if (N < 0) throw std::domain_error("project: N must be >= 0");
  std::vector<double> A, B, A2, B2;
  fourier_pass(g, N, 1.0, A, B);
  fourier_pass(g, N, 2.0, A2, B2);
  double scale = 1.0, diff = 0.0;
  for (int n = 0; n <= N; ++n) {
    scale = std::max({scale, std::abs(A2[n]), std::abs(B2[n])});
    diff = std::max({diff, std::abs(A[n] - A2[n]), std::abs(B[n] - B2[n])});
  }
  if (diff > 1e-10 * scale) {
    A = A2;
    B = B2;
    fourier_pass(g, N, 4.0, A2, B2);
    diff = 0.0;
    for (int n = 0; n <= N; ++n)
      diff = std::max({diff, std::abs(A[n] - A2[n]), std::abs(B[n] - B2[n])});
    if (diff > 1e-10 * scale)
      throw accuracy_error("project: coefficient quadrature did not reach 1e-10");
  }
  FourierCoeffs c;
  c.a0 = A2[0];
  c.a.assign(A2.begin() + 1, A2.end());
  c.b.assign(B2.begin() + 1, B2.end());
  return c;
}

InterpMatrices interp_matrices(int n1) {
  if (n1 < 6 || n1 % 2 != 0)
    throw std::domain_error("interp_matrices: n1 must be even and >= 6");
  InterpMatrices m;
  m.n1 = n1;
  const int nc = n1 / 2 + 1;
  const int ns = n1 / 2 - 1;
  m.C.resize(static_cast<size_t>(n1) * nc);
  m.S.resize(static_cast<size_t>(n1) * ns);
  for (int i = 0; i < n1; ++i) {
    const double xi = i * kTwoPi / n1;
    for (int j = 0; j < nc; ++j) m.C[static_cast<size_t>(i) * nc + j] = 2.0 / n1 * std::cos(j * xi);
    for (int j = 0; j < ns; ++j)
      m.S[static_cast<size_t>(i) * ns + j] = 2.0 / n1 * std::sin((j + 1) * xi);
  }
  return m;
}

namespace {

FourierCoeffs interpolate_matrix(const std::vector<double>& w) {
  const int n = static_cast<int>(w.size());
  const InterpMatrices m = interp_matrices(n);
  FourierCoeffs c;
  c.a.assign(n / 2 - 1, 0.0);
  c.b.assign(n / 2 - 1, 0.0);
  double a0 = 0.0, nyq = 0.0;
  for (int i = 0; i < n; ++i) {
    a0 += w[i] * m.c(i, 0);
    nyq += w[i] * m.c(i, n / 2);
    for (int j = 1; j < n / 2; ++j) {
      c.a[j - 1] += w[i] * m.c(i, j);
      c.b[j - 1] += w[i] * m.s(i, j - 1);
    }
  }
  c.a0 = a0;
  c.nyquist = nyq;
  return c;
}

FourierCoeffs interpolate_fft(const std::vector<double>& w) {
  const int n = static_cast<int>(w.size());
  std::vector<double> in(w);
  std::vector<std::complex<double>> out(n / 2 + 1);
  // fftw plan creation/destruction is not thread-safe; execution is
  static std::mutex plan_mutex;
  fftw_plan plan;
  {
    const std::lock_guard<std::mutex> lock(plan_mutex);
    plan = fftw_plan_dft_r2c_1d(n, in.data(), reinterpret_cast<fftw_complex*>(out.data()),
                                FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    const std::lock_guard<std::mutex> lock(plan_mutex);
    fftw_destroy_plan(plan);
  }

  FourierCoeffs c;
  c.a0 = 2.0 / n * out[0].real();
  c.a.resize(n / 2 - 1);
  c.b.resize(n / 2 - 1);
  for (int k = 1; k < n / 2; ++k) {
    c.a[k - 1] = 2.0 / n * out[k].real();
    c.b[k - 1] = -2.0 / n * out[k].imag();
  }
  c.nyquist = 2.0 / n * out[n / 2].real();
  return c;
}

}  // namespace

FourierCoeffs interpolate(const std::vector<double>& samples) {
  const int n = static_cast<int>(samples.size());
  if (n < 6 || n % 2 != 0)
    throw std::invalid_argument("interpolate: sample count must be even and >= 6");
  return n <= 256 ? interpolate_matrix(samples) : interpolate_fft(samples);
}

double harmonic_eval(const FourierCoeffs& coeffs, double theta, double r) {
  double val = 0.5 * coeffs.a0;
  double rn = 1.0;
  const int N = coeffs.order();
  for (int n = 1; n <= N; ++n) {
    rn *= r;
    val += rn * (coeffs.a[n - 1] * std::cos(n * theta) + coeffs.b[n - 1] * std::sin(n * theta));
  }
  if (coeffs.nyquist) {
    const int m = N + 1;
    val += 0.5 * *coeffs.nyquist * (rn * r) * std::cos(m * theta);
  }
  return val;
}

double poisson_eval(const BoundaryFn& g, double theta, double r) {
  if (!(r >= 0.0 && r < 1.0)) throw std::domain_error("poisson_eval: r must be in [0, 1)");
  if (r > 1.0 - 1e-6)
    throw accuracy_error("poisson_eval: r too close to 1 for the quadrature budget");

  const double peak = wrap_02pi(theta);
  QuadOptions opt;
  opt.rel_tol = 1e-9;
  opt.abs_tol = 1e-13;

  double total = 0.0;
  for (const auto& piece : g.pieces()) {
    std::vector<double> splits;
    if (peak > piece.lo && peak < piece.hi) {
      // geometric grading outward from the kernel peak
      splits.push_back(peak);
      for (double d = std::max(1.0 - r, 1e-6); d < piece.hi - piece.lo; d *= 4.0) {
        splits.push_back(peak - d);
        splits.push_back(peak + d);
      }
    }
    auto integrand = [&](double tp) {
      const double den = 1.0 - 2.0 * r * std::cos(theta - tp) + r * r;
      return (1.0 - r * r) / den * piece.f(tp);
    };
    total += integrate_split(integrand, piece.lo, piece.hi, splits, opt);
  }
  return total / kTwoPi;
}

double arc_value_oracle(double theta_star, double theta_tilde_star) {
  if (!(theta_star > 0.0 && theta_star <= theta_tilde_star && theta_tilde_star < kPi))
    throw std::domain_error("arc_value_oracle: need 0 < theta* <= theta~* < pi");
  return (theta_tilde_star - theta_star) / kPi;
}

double curve_limit(double g_minus, double g_plus, double slope, int side) {
  if (side != 1 && side != -1) throw std::domain_error("curve_limit: side must be +-1");
  const double mean = 0.5 * (g_plus + g_minus);
  const double swing = (g_plus - g_minus) * side / kPi;
  return mean + swing * std::acos(1.0 / std::sqrt(1.0 + slope * slope));
}

double curve_limit_verify(const BoundaryFn& g, double slope, int samples) {
  const BoundaryFn::Breakpoint* bp = nullptr;
  for (const auto& b : g.breakpoints())
    if (std::abs(b.angle) < 1e-12 || std::abs(b.angle - kTwoPi) < 1e-12) bp = &b;
  if (!bp) throw std::invalid_argument("curve_limit_verify: g has no breakpoint at 0");
  if (samples < 2) throw std::domain_error("curve_limit_verify: need at least 2 samples");

  // approach along theta(r) = slope * (1 - r); the angle sits on the side
  // of the jump given by the sign of slope and |theta'(1)| = |slope|
  std::vector<double> u(samples);
  for (int k = 0; k < samples; ++k) {
    const double r = 1.0 - std::pow(2.0, -(k + 3));
    u[k] = poisson_eval(g, slope * (1.0 - r), r);
  }
  // Richardson extrapolation for step-halving with error O(h)
  std::vector<double> row = u;
  const int cols = std::min(samples - 1, 4);
  for (int j = 1; j <= cols; ++j) {
    std::vector<double> next(row.size() - 1);
    const double p = std::pow(2.0, j);
    for (size_t i = 0; i + 1 < row.size(); ++i)
      next[i] = row[i + 1] + (row[i + 1] - row[i]) / (p - 1.0);
    row = std::move(next);
  }
  const int side = slope < 0.0 ? -1 : 1;
  const double predicted = curve_limit(bp->left_limit, bp->right_limit, slope, side);
  return std::abs(row.back() - predicted);
}

double lebesgue_constant(int N) {
  if (N < 1) throw std::domain_error("lebesgue_constant: N must be >= 1");
  const double half = N + 0.5;
  auto dirichlet_abs = [&](double t) {
    const double s = std::sin(0.5 * t);
    if (std::abs(s) < 1e-300) return 2.0 * N + 1.0;
    return std::abs(std::sin(half * t) / s);
  };
  // |D_N| is smooth between consecutive zeros 2 pi k / (2N + 1)
  QuadOptions opt;
  opt.rel_tol = 1e-9;
  opt.abs_tol = 1e-13;
  double total = 0.0;
  double a = 0.0;
  for (int k = 1; k <= N + 1; ++k) {
    const double b = std::min(kPi, kTwoPi * k / (2 * N + 1));
    total += integrate(dirichlet_abs, a, b, opt);
    a = b;
  }
  return total / kPi;
}

}  // namespace sfdd

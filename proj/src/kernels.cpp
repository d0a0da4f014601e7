#include "sfdd/kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "sfdd/errors.hpp"
#include "sfdd/quadrature.hpp"

namespace sfdd {

namespace {
constexpr double kPi = std::numbers::pi;
}

double poisson_kernel(double psi, double r) {
  if (!(r >= 0.0 && r < 1.0)) throw std::domain_error("poisson_kernel: r must be in [0, 1)");
  const double den = 1.0 - 2.0 * r * std::cos(psi) + r * r;
  return (1.0 - r * r) / den;
}

namespace {

// Angles are wrapped to (-pi, pi] before frequency scaling: the roundoff of
// n * psi grows with |psi| and is amplified by the small denominator of the
// closed form near psi = 0 (mod 2pi).
double truncated_kernel_sum(int N, double psi, double r) {
  psi = std::remainder(psi, 2.0 * kPi);
  double sum = 1.0;
  double rn = 1.0;
  for (int n = 1; n <= N; ++n) {
    rn *= r;
    sum += 2.0 * std::cos(n * psi) * rn;
  }
  return sum;
}

double truncated_kernel_closed(int N, double psi, double r) {
  psi = std::remainder(psi, 2.0 * kPi);
  const double den = 1.0 - 2.0 * r * std::cos(psi) + r * r;
  const double num = 1.0 - r * r -
                     2.0 * std::pow(r, N + 1) * std::cos((N + 1) * psi) +
                     2.0 * std::pow(r, N + 2) * std::cos(N * psi);
  return num / den;
}

}  // namespace

double truncated_kernel(int N, double psi, double r) {
  if (N < 1) throw std::domain_error("truncated_kernel: N must be >= 1");
  if (!(r >= 0.0 && r <= 1.0)) throw std::domain_error("truncated_kernel: r must be in [0, 1]");
  // The partial sum cancels for r near 1 away from psi = 0; the closed form
  // amplifies roundoff by 1/den near psi = 0. Use each where it is stable
  // (the den threshold keeps the closed-form error below ~1e-12).
  const double den = 1.0 - 2.0 * r * std::cos(psi) + r * r;
  if (r > 0.95 && den > 1e-3) return truncated_kernel_closed(N, psi, r);
  return truncated_kernel_sum(N, psi, r);
}

double positivity_radius_theory(int N) {
  if (N < 4) throw std::domain_error("positivity_radius_theory: N must be >= 4");
  return std::sqrt(1.0 - 2.0 * std::log(2.0 * (N + 1)) / (N + 1));
}

namespace {

// Smallest radius at which min_psi K_N goes negative, located by a coarse
// upward scan followed by bisection. K_N is even in psi, so psi in [0, pi]
// suffices. The scan needs only signs, so it can use the O(1) closed form
// throughout (error ~1e-12, far below the kernel scale near the crossing).
double first_negative_radius(int N, int angle_steps, double radius_tol) {
  std::vector<double> psi(angle_steps + 1);
  for (int i = 0; i <= angle_steps; ++i) psi[i] = kPi * i / angle_steps;

  auto min_over_angles = [&](double r) {
    double lo = truncated_kernel_closed(N, psi[0], r);
    for (int i = 1; i <= angle_steps; ++i)
      lo = std::min(lo, truncated_kernel_closed(N, psi[i], r));
    return lo;
  };

  const int coarse = 500;
  int first = -1;
  for (int j = 1; j <= coarse; ++j) {
    const double r = static_cast<double>(j) / coarse;
    if (min_over_angles(std::min(r, 1.0 - 1e-9)) < 0.0) {
      first = j;
      break;
    }
  }
  if (first < 0)
    throw resolution_error("positivity scan: no sign change found up to r = 1");

  double lo = static_cast<double>(first - 1) / coarse;
  double hi = static_cast<double>(first) / coarse;
  while (hi - lo > radius_tol) {
    const double mid = 0.5 * (lo + hi);
    if (min_over_angles(mid) < 0.0)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

PositivityReport positivity_radius_numeric(int N, int angle_steps, double radius_tol) {
  if (N < 4) throw std::domain_error("positivity_radius_numeric: N must be >= 4");
  if (angle_steps < 4 * N)
    throw std::domain_error("positivity_radius_numeric: angle_steps must be >= 4N");
  if (!(radius_tol > 0.0)) throw std::domain_error("positivity_radius_numeric: radius_tol <= 0");

  const double r_first = first_negative_radius(N, angle_steps, radius_tol);
  // Re-run at doubled angular resolution. A drift that is large relative to
  // the boundary distance itself means the first negative lobe was missed;
  // small drift is ordinary sampling jitter and the finer scan is kept.
  const double r_check = first_negative_radius(N, 2 * angle_steps, radius_tol);
  if (std::abs(r_first - r_check) > 0.05 * (1.0 - std::min(r_first, r_check)))
    throw resolution_error("positivity scan: angular grid too coarse to bracket the sign change");

  const double r_star = positivity_radius_theory(N);
  PositivityReport rep;
  rep.N = N;
  rep.r_star_theory = r_star;
  rep.delta_theory = 1.0 - r_star;
  rep.delta_numeric = 1.0 - r_check;
  rep.q = rep.delta_numeric / rep.delta_theory;
  rep.angle_step = kPi / (2 * angle_steps);
  rep.radius_tol = radius_tol;
  return rep;
}

double epsilon_quadrature(int N, double r_upper) {
  if (N < 1) throw std::domain_error("epsilon_quadrature: N must be >= 1");
  if (!(r_upper >= 0.0 && r_upper < 1.0))
    throw std::domain_error("epsilon_quadrature: r_upper must be in [0, 1)");
  if (r_upper == 0.0) return 0.0;
  // substitute s = r_upper * t to put the peak at t = 1 on a fixed interval
  const double r = r_upper;
  QuadOptions opt;
  opt.rel_tol = 1e-9;
  opt.abs_tol = 1e-300;
  const double integral = integrate(
      [&](double t) { return std::pow(t, N) / (1.0 - r * t); }, 0.0, 1.0, opt);
  return 2.0 / kPi * std::pow(r, N + 1) * integral;
}

double epsilon_bound(int N) {
  if (N < 4) throw std::domain_error("epsilon_bound: N must be >= 4");
  const double alpha = 2.0 * std::log(2.0 * (N + 1)) / (N + 1);
  if (alpha >= 1.0) throw std::domain_error("epsilon_bound: alpha(N) >= 1");
  return std::log(2.0 / alpha) / (kPi * std::sqrt(1.0 - alpha) * (N + 1));
}

double lambert_w(double z) {
  if (!(z >= 0.0)) throw std::domain_error("lambert_w: z must be >= 0");
  if (z == 0.0) return 0.0;
  double w = std::log1p(z);
  for (int it = 0; it < 64; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - z;
    // Halley step
    const double dw = f / (ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0));
    w -= dw;
    if (std::abs(dw) <= 1e-15 * std::max(1.0, std::abs(w))) break;
  }
  return w;
}

PositivityInequalityReport verify_positivity_inequality(int N) {
  if (N < 4) throw std::domain_error("verify_positivity_inequality: N must be >= 4");
  PositivityInequalityReport rep;
  rep.x = 0.5 * (N + 1);
  const double w = lambert_w(4.0 * rep.x);
  rep.y0 = 4.0 * std::exp(-w);
  rep.y_hat = std::log(4.0 * rep.x) / rep.x;
  rep.base_inequality = rep.y0 - 4.0 * std::pow(1.0 - rep.y0, rep.x) >= -1e-12;
  rep.y_ordering = rep.y_hat >= rep.y0;
  rep.y_hat_below_one = rep.y_hat < 1.0;
  const double z = 4.0 * rep.x;
  const double ll = std::log(std::log(z));
  rep.hoorfar = std::log(z) - ll <= w && w <= std::log(z) - 0.5 * ll;
  rep.ok = rep.base_inequality && rep.y_ordering && rep.y_hat_below_one && rep.hoorfar;
  return rep;
}

}  // namespace sfdd

#pragma once

namespace sfdd {

/** Poisson kernel (1 - r^2) / (1 - 2 r cos(psi) + r^2), r in [0, 1). */
double poisson_kernel(double psi, double r);

/** Degree-N trigonometric truncation of the Poisson kernel,
 * K_N(psi, r) = 1 + 2 sum_{n=1..N} cos(n psi) r^n. Defined for r in
 * [0, 1]; evaluation switches to the closed form at large r to avoid
 * cancellation in the partial sum. */
double truncated_kernel(int N, double psi, double r);

/** Radius below which K_N is provably nonnegative:
 * r_N^* = (1 - 2 ln(2(N+1)) / (N+1))^{1/2}, valid for N >= 4. */
double positivity_radius_theory(int N);

struct PositivityReport {
  int N;
  double r_star_theory;   // r_N^*
  double delta_theory;    // 1 - r_N^*
  double delta_numeric;   // smallest scanned boundary distance keeping K_N >= 0
  double q;               // delta_numeric / delta_theory
  double angle_step;      // scan resolution in psi
  double radius_tol;      // bisection tolerance in r
};

/** Scan for the first radius at which K_N turns negative. The angular grid
 * must have at least 4N points to resolve the oscillation of the first
 * negative lobe; a two-resolution consistency check guards against
 * under-sampling (resolution_error). */
PositivityReport positivity_radius_numeric(int N, int angle_steps, double radius_tol);

/** (2/pi) * integral_0^{r_upper} s^N / (1 - s) ds, relative accuracy
 * better than 1e-6. Requires r_upper < 1. */
double epsilon_quadrature(int N, double r_upper);

/** Closed-form upper bound for epsilon_quadrature(N, r_N^*):
 * (1/pi) ln(2/alpha) / ((1-alpha)^{1/2} (N+1)), alpha = 2 ln(2(N+1))/(N+1). */
double epsilon_bound(int N);

/** Principal-branch Lambert W on z >= 0, solving W e^W = z to
 * 1e-12 * max(1, z). Safeguarded Halley iteration from ln(1 + z). */
double lambert_w(double z);

/** Sub-inequalities behind the positivity radius, checked numerically at
 * x = (N+1)/2: the base inequality y0 - 4(1-y0)^x >= 0 at
 * y0 = 4 exp(-W(4x)), the ordering y0 <= ln(4x)/x < 1, and the
 * Hoorfar-Hassani sandwich ln z - ln ln z <= W(z) <= ln z - (1/2) ln ln z
 * at z = 4x. */
struct PositivityInequalityReport {
  bool ok;               // all four checks hold
  bool base_inequality;  // y0 - 4(1-y0)^x >= -1e-12
  bool y_ordering;       // y_hat >= y0
  bool y_hat_below_one;  // y_hat < 1
  bool hoorfar;          // W sandwich at z = 4x
  double x, y0, y_hat;
};

PositivityInequalityReport verify_positivity_inequality(int N);

}  // namespace sfdd

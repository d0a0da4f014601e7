#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace sfdd {

/** Piecewise continuous function on the circle: an ordered set of arcs
 * partitioning [0, 2pi), each carrying a function continuous on its closed
 * arc. Jumps at arc junctions are detected at construction and recorded
 * with their one-sided limits. Evaluation exactly at a jump returns the
 * right limit. Immutable after construction. */
class BoundaryFn {
 public:
  struct Piece {
    double lo;
    double hi;
    std::function<double(double)> f;
  };
  struct Breakpoint {
    double angle;
    double left_limit;
    double right_limit;
  };

  static BoundaryFn constant(double value);
  /** A single continuous function on the whole circle (no breakpoints;
   * f(0) and f(2pi) are assumed equal). */
  static BoundaryFn continuous(std::function<double(double)> f);
  /** Arcs must partition [0, 2pi) in order; junction values may jump. */
  static BoundaryFn piecewise(std::vector<Piece> pieces);
  /** Characteristic function of the arc [-theta_star, theta_star]. */
  static BoundaryFn arc_indicator(double theta_star);

  double operator()(double theta) const;
  std::span<const Piece> pieces() const { return pieces_; }
  std::span<const Breakpoint> breakpoints() const { return breaks_; }

 private:
  BoundaryFn() = default;
  std::vector<Piece> pieces_;
  std::vector<Breakpoint> breaks_;
};

/** Finite trigonometric expansion
 *   S(theta) = a0/2 + sum_{n=1..N} (a_n cos(n theta) + b_n sin(n theta))
 *            [+ (nyquist/2) cos((N+1) theta)],
 * the optional half-weighted Nyquist mode appearing for interpolation on
 * 2(N+1) nodes. Scaling the n-th mode by r^n gives the harmonic extension
 * to the disc. */
struct FourierCoeffs {
  double a0 = 0.0;
  std::vector<double> a;
  std::vector<double> b;
  std::optional<double> nyquist;

  int order() const { return static_cast<int>(a.size()); }
};

/** L2-orthogonal projection of g onto frequencies <= N, computed by
 * composite Gauss-Legendre quadrature split at the arcs of g with panel
 * counts resolving the highest frequency. Throws accuracy_error if two
 * refinement levels disagree beyond 1e-10 relative. */
FourierCoeffs project(const BoundaryFn& g, int N);

/** Trigonometric interpolation through samples at the equidistant nodes
 * x_l = l 2pi/n, n = samples.size() even >= 6. Returns coefficients of
 * order n/2 - 1 plus the Nyquist cosine mode. Uses the explicit
 * cosine/sine node matrices up to n = 256 and a real FFT above. */
FourierCoeffs interpolate(const std::vector<double>& samples);

/** Evaluate the harmonic extension at polar (theta, r), r in [0, 1];
 * r = 1 is the boundary trace, r = 0 the mean value a0/2. */
double harmonic_eval(const FourierCoeffs& coeffs, double theta, double r);

/** Solution of the Laplace problem with boundary data g, evaluated at
 * (theta, r), r < 1, by Poisson-kernel quadrature split at the
 * breakpoints of g and graded toward the kernel peak. Throws
 * accuracy_error for r > 1 - 1e-6. */
double poisson_eval(const BoundaryFn& g, double theta, double r);

/** Exact value (theta_tilde_star - theta_star)/pi taken by the harmonic
 * extension of the arc indicator on the circular arc through the
 * boundary points at +-theta_tilde_star. */
double arc_value_oracle(double theta_star, double theta_tilde_star);

/** Limit of the harmonic extension along a curve reaching the boundary at
 * a jump of the data: (g+ + g-)/2 + (g+ - g-) side arccos((1+slope^2)^{-1/2})/pi,
 * where slope is the angular velocity of the curve at the boundary and
 * side (+-1) the side from which the angle approaches the jump. */
double curve_limit(double g_minus, double g_plus, double slope, int side);

/** Numerical confirmation of curve_limit for data with a jump at angle 0:
 * evaluates poisson_eval along theta(r) = slope * (1 - r) at
 * r = 1 - 2^{-k}, k = 3 .. 2 + samples, Richardson-extrapolates, and
 * returns the deviation from the predicted limit. */
double curve_limit_verify(const BoundaryFn& g, double slope, int samples);

/** L1 norm (1/2pi) int |D_N| of the Dirichlet kernel
 * D_N(t) = sin((N + 1/2) t) / sin(t/2), the maximum-norm operator norm of
 * the degree-N Fourier projection. */
double lebesgue_constant(int N);

/** Node matrices of the interpolation operator on n1 even nodes:
 * C[i][j] = (2/n1) cos((j-1) x_{i-1}), j = 1 .. n1/2 + 1,
 * S[i][j] = (2/n1) sin(j x_{i-1}),     j = 1 .. n1/2 - 1, row-major. */
struct InterpMatrices {
  int n1 = 0;
  std::vector<double> C;  // n1 x (n1/2 + 1)
  std::vector<double> S;  // n1 x (n1/2 - 1)

  double c(int i, int j) const { return C[static_cast<size_t>(i) * (n1 / 2 + 1) + j]; }
  double s(int i, int j) const { return S[static_cast<size_t>(i) * (n1 / 2 - 1) + j]; }
};

InterpMatrices interp_matrices(int n1);

}  // namespace sfdd

#include "sfdd/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "sfdd/dtd.hpp"
#include "sfdd/errors.hpp"
#include "sfdd/fourier.hpp"
#include "sfdd/geometry.hpp"
#include "sfdd/kernels.hpp"
#include "sfdd/quadrature.hpp"
#include "sfdd/schwarz.hpp"

namespace sfdd {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Suite {
  std::vector<CheckResult> results;
  std::mt19937_64 rng;

  explicit Suite(std::uint64_t seed) : rng(seed) {}

  void check(const std::string& name, bool pass, const std::string& detail = "") {
    results.push_back({name, pass, detail});
  }

  /** pass iff |got - want| <= tol, with the numbers in the detail string */
  void check_near(const std::string& name, double got, double want, double tol) {
    std::ostringstream os;
    os << "got " << got << ", want " << want << " +- " << tol;
    check(name, std::abs(got - want) <= tol, os.str());
  }

  void check_le(const std::string& name, double got, double bound) {
    std::ostringstream os;
    os << got << " <= " << bound;
    check(name, got <= bound, os.str());
  }

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  }
};

// random trigonometric polynomial of the given order with O(1) coefficients
std::function<double(double)> random_trig(Suite& s, int order) {
  std::vector<double> a(order + 1), b(order + 1);
  for (int n = 0; n <= order; ++n) {
    a[n] = s.uniform(-1.0, 1.0) / (1.0 + n);
    b[n] = s.uniform(-1.0, 1.0) / (1.0 + n);
  }
  return [a, b](double t) {
    double v = 0.5 * a[0];
    for (size_t n = 1; n < a.size(); ++n)
      v += a[n] * std::cos(n * t) + b[n] * std::sin(n * t);
    return v;
  };
}

// ---------------------------------------------------------------- kernels

void kernels_suite(Suite& s) {
  // tail bound |K - K_N| <= 2 r^{N+1} / (1 - r)
  {
    bool ok = true;
    for (int N : {5, 25}) {
      for (double r : {0.0, 0.3, 0.7, 0.9, 0.99}) {
        for (int i = 0; i < 40; ++i) {
          const double psi = kTwoPi * i / 40;
          const double tail = 2.0 * std::pow(r, N + 1) / (1.0 - r);
          // equality holds at psi = 0, so allow for roundoff at scale
          if (std::abs(poisson_kernel(psi, r) - truncated_kernel(N, psi, r)) >
              tail + 1e-9 * (1.0 + tail))
            ok = false;
        }
      }
    }
    s.check("kernels.truncation_tail_bound", ok);
  }

  // partial sum vs closed form on a fine grid
  {
    double worst = 0.0;
    for (int N : {5, 25, 60}) {
      for (int i = 0; i < 200; ++i) {
        const double psi = kTwoPi * i / 200;
        for (int j = 0; j < 200; ++j) {
          const double r = 0.999 * j / 199;
          double sum = 1.0, rn = 1.0;
          for (int n = 1; n <= N; ++n) {
            rn *= r;
            sum += 2.0 * std::cos(n * psi) * rn;
          }
          worst = std::max(worst, std::abs(sum - truncated_kernel(N, psi, r)));
        }
      }
    }
    s.check_le("kernels.closed_form_vs_partial_sum", worst, 1e-11);
  }

  // trapezoid normalization (exact for trigonometric polynomials)
  {
    double worst = 0.0;
    for (int N : {5, 25, 60}) {
      const int nodes = 4 * N + 8;
      for (double r : {0.0, 0.4, 0.9, 0.999}) {
        double mean = 0.0;
        for (int i = 0; i < nodes; ++i) mean += truncated_kernel(N, kTwoPi * i / nodes, r);
        worst = std::max(worst, std::abs(mean / nodes - 1.0));
      }
    }
    s.check_le("kernels.normalization", worst, 1e-12);
  }

  // positivity below the theoretical radius
  {
    bool ok = true;
    for (int N = 4; N <= 100; N += 8) {
      const double rstar = positivity_radius_theory(N);
      for (int i = 0; i < 4 * N; ++i) {
        const double psi = kTwoPi * i / (4 * N);
        for (int j = 0; j < 50; ++j)
          if (truncated_kernel(N, psi, rstar * j / 49) < 0.0) ok = false;
      }
    }
    s.check("kernels.positivity_below_r_star", ok);
  }

  // r_N^* monotone increasing
  {
    bool ok = true;
    for (int N = 4; N < 200; ++N)
      if (positivity_radius_theory(N + 1) <= positivity_radius_theory(N)) ok = false;
    s.check("kernels.r_star_monotone", ok);
  }

  // quadrature vs the tail series (2/pi) sum_{n>N} r^n / n
  {
    double worst = 0.0;
    for (int N : {5, 20, 60}) {
      const double r = positivity_radius_theory(N);
      double series = 0.0, rn = std::pow(r, N);
      for (int n = N + 1; n < N + 2000; ++n) {
        rn *= r;
        series += rn / n;
        if (rn / n < 1e-18) break;
      }
      series *= 2.0 / kPi;
      const double quad = epsilon_quadrature(N, r);
      worst = std::max(worst, std::abs(quad - series) / series);
    }
    s.check_le("kernels.epsilon_quadrature_vs_series", worst, 1e-9);
  }

  {
    bool ok = true;
    for (int N = 5; N <= 100; ++N)
      if (epsilon_quadrature(N, positivity_radius_theory(N)) > epsilon_bound(N)) ok = false;
    s.check("kernels.epsilon_below_bound", ok);
  }

  {
    bool ok = true;
    double prev = epsilon_quadrature(10, positivity_radius_theory(10));
    for (int N = 11; N <= 100; ++N) {
      const double cur = epsilon_quadrature(N, positivity_radius_theory(N));
      if (cur >= prev) ok = false;
      prev = cur;
    }
    s.check("kernels.epsilon_monotone_decreasing", ok);
  }

  {
    double worst = 0.0;
    for (int i = 0; i <= 48; ++i) {
      const double z = i == 0 ? 0.0 : std::pow(10.0, -6.0 + 12.0 * (i - 1) / 47.0);
      const double w = lambert_w(z);
      worst = std::max(worst, std::abs(w * std::exp(w) - z) / std::max(1.0, z));
    }
    s.check_le("kernels.lambert_w_defining_equation", worst, 1e-12);
  }

  {
    bool ok = true;
    for (int N : {4, 10, 100})
      if (!verify_positivity_inequality(N).ok) ok = false;
    s.check("kernels.positivity_inequality_chain", ok);
  }

  {
    bool ok = true;
    std::ostringstream os;
    for (int N : {5, 10, 25, 50}) {
      const PositivityReport rep = positivity_radius_numeric(N, 8 * N, 1e-5);
      if (!(rep.delta_numeric > 0.0 && rep.delta_numeric <= rep.delta_theory)) ok = false;
      if (!(rep.q > 0.0 && rep.q <= 1.0)) ok = false;
      os << "q(" << N << ")=" << rep.q << " ";
    }
    s.check("kernels.scanned_radius_within_theory", ok, os.str());
  }
}

// ---------------------------------------------------------------- fourier

void fourier_suite(Suite& s) {
  // orthonormality of the projection
  {
    const FourierCoeffs c = project(BoundaryFn::continuous([](double t) { return std::cos(3 * t); }), 8);
    double off = std::abs(c.a0) + std::abs(c.a[2] - 1.0);
    for (int n = 1; n <= 8; ++n) {
      if (n != 3) off += std::abs(c.a[n - 1]);
      off += std::abs(c.b[n - 1]);
    }
    const FourierCoeffs h = project(BoundaryFn::continuous([](double t) { return std::sin(9 * t); }), 8);
    double high = std::abs(h.a0);
    for (int n = 1; n <= 8; ++n) high += std::abs(h.a[n - 1]) + std::abs(h.b[n - 1]);
    s.check_le("fourier.projection_orthonormality", off + high, 1e-12);
  }

  // arc indicator coefficients against the closed form
  {
    const double ts = 0.997;
    const FourierCoeffs c = project(BoundaryFn::arc_indicator(ts), 25);
    double worst = std::abs(c.a0 - 2.0 * ts / kPi);
    for (int n = 1; n <= 25; ++n) {
      worst = std::max(worst, std::abs(c.a[n - 1] - 2.0 / (n * kPi) * std::sin(n * ts)));
      worst = std::max(worst, std::abs(c.b[n - 1]));
    }
    s.check_le("fourier.arc_indicator_coefficients", worst, 1e-10);
  }

  // projection idempotence
  {
    const FourierCoeffs c1 = project(BoundaryFn::arc_indicator(1.1), 15);
    const FourierCoeffs c2 = project(
        BoundaryFn::continuous([&c1](double t) { return harmonic_eval(c1, t, 1.0); }), 15);
    double worst = std::abs(c1.a0 - c2.a0);
    for (int n = 0; n < 15; ++n)
      worst = std::max({worst, std::abs(c1.a[n] - c2.a[n]), std::abs(c1.b[n] - c2.b[n])});
    s.check_le("fourier.projection_idempotent", worst, 1e-12);
  }

  // L2 boundary error of the arc projection decreases in N
  {
    const double ts = 0.997;
    const double norm_sq = 2.0 * ts;  // integral of the indicator squared
    double prev = 1e300;
    bool ok = true;
    for (int N : {5, 10, 20, 40, 80}) {
      const FourierCoeffs c = project(BoundaryFn::arc_indicator(ts), N);
      double proj_sq = 0.5 * c.a0 * c.a0;
      for (int n = 0; n < N; ++n) proj_sq += c.a[n] * c.a[n] + c.b[n] * c.b[n];
      const double err_sq = norm_sq - kPi * proj_sq;
      if (err_sq >= prev) ok = false;
      prev = err_sq;
    }
    s.check("fourier.projection_l2_error_decreasing", ok);
  }

  // nodal exactness of the interpolation
  {
    double worst = 0.0;
    for (int n1 : {6, 16, 42}) {
      for (int rep = 0; rep < 7; ++rep) {
        auto f = random_trig(s, 2 * n1);
        std::vector<double> samples(n1);
        for (int l = 0; l < n1; ++l) samples[l] = f(l * kTwoPi / n1);
        const FourierCoeffs c = interpolate(samples);
        for (int l = 0; l < n1; ++l)
          worst = std::max(worst,
                           std::abs(harmonic_eval(c, l * kTwoPi / n1, 1.0) - samples[l]));
      }
    }
    s.check_le("fourier.interpolation_nodal_exactness", worst, 1e-10);
  }

  // reproduction of an element of the interpolation space, Nyquist included
  {
    const int n1 = 18;
    FourierCoeffs ref;
    ref.a0 = s.uniform(-1, 1);
    for (int n = 1; n < n1 / 2; ++n) {
      ref.a.push_back(s.uniform(-1, 1));
      ref.b.push_back(s.uniform(-1, 1));
    }
    ref.nyquist = s.uniform(-1, 1);
    std::vector<double> samples(n1);
    for (int l = 0; l < n1; ++l) samples[l] = harmonic_eval(ref, l * kTwoPi / n1, 1.0);
    const FourierCoeffs c = interpolate(samples);
    double worst = std::abs(c.a0 - ref.a0) + std::abs(*c.nyquist - *ref.nyquist);
    for (int n = 0; n < n1 / 2 - 1; ++n)
      worst = std::max({worst, std::abs(c.a[n] - ref.a[n]), std::abs(c.b[n] - ref.b[n])});
    s.check_le("fourier.interpolation_reproduces_space", worst, 1e-10);
  }

  // matrix path vs FFT path above the dispatch threshold
  {
    const int n1 = 300;
    std::vector<double> samples(n1);
    for (int l = 0; l < n1; ++l) samples[l] = s.uniform(-1.0, 1.0);
    const FourierCoeffs fft = interpolate(samples);  // n1 > 256: FFT path
    const InterpMatrices M = interp_matrices(n1);
    double worst = 0.0;
    {
      double a0 = 0.0, nyq = 0.0;
      for (int i = 0; i < n1; ++i) {
        a0 += samples[i] * M.c(i, 0);
        nyq += samples[i] * M.c(i, n1 / 2);
      }
      worst = std::max(std::abs(a0 - fft.a0), std::abs(nyq - *fft.nyquist));
    }
    for (int j = 1; j < n1 / 2; ++j) {
      double aj = 0.0, bj = 0.0;
      for (int i = 0; i < n1; ++i) {
        aj += samples[i] * M.c(i, j);
        bj += samples[i] * M.s(i, j - 1);
      }
      worst = std::max({worst, std::abs(aj - fft.a[j - 1]), std::abs(bj - fft.b[j - 1])});
    }
    s.check_le("fourier.interpolation_matrix_vs_fft", worst, 1e-10);
  }

  // partial sums converge to the jump midpoint at a breakpoint
  {
    const double ts = 0.997;
    bool ok = true;
    for (int N : {40, 80, 160}) {
      const FourierCoeffs c = project(BoundaryFn::arc_indicator(ts), N);
      if (std::abs(harmonic_eval(c, ts, 1.0) - 0.5) >= 0.05) ok = false;
    }
    s.check("fourier.breakpoint_half_sum", ok);
  }

  // projecting the data equals convolving with the truncated kernel
  {
    const BoundaryFn g = BoundaryFn::arc_indicator(0.9);
    const int N = 12;
    const FourierCoeffs c = project(g, N);
    double worst = 0.0;
    for (auto [th, r] : {std::pair{0.3, 0.5}, {2.0, 0.8}, {4.0, 0.2}}) {
      QuadOptions opt;
      opt.rel_tol = 1e-11;
      double conv = 0.0;
      for (const auto& piece : g.pieces())
        conv += integrate(
            [&](double tp) { return truncated_kernel(N, th - tp, r) * piece.f(tp); },
            piece.lo, piece.hi, opt);
      conv /= kTwoPi;
      worst = std::max(worst, std::abs(conv - harmonic_eval(c, th, r)));
    }
    s.check_le("fourier.projection_shifts_to_kernel", worst, 1e-8);
  }

  // mean value at the center
  {
    const FourierCoeffs c = project(BoundaryFn::arc_indicator(1.3), 10);
    s.check("fourier.mean_value_at_center",
            harmonic_eval(c, 2.1, 0.0) == 0.5 * c.a0 &&
                harmonic_eval(c, -0.4, 0.0) == 0.5 * c.a0);
  }

  // normalization and the maximum principle of the Poisson integral
  {
    const BoundaryFn cg = BoundaryFn::constant(0.7);
    double worst = 0.0;
    for (auto [th, r] : {std::pair{0.0, 0.0}, {1.0, 0.5}, {3.0, 0.998}})
      worst = std::max(worst, std::abs(poisson_eval(cg, th, r) - 0.7));
    s.check_le("fourier.poisson_constant_data", worst, 1e-9);

    const BoundaryFn chi = BoundaryFn::arc_indicator(0.8);
    bool ok = true;
    for (int i = 0; i < 25; ++i) {
      const double v = poisson_eval(chi, s.uniform(0.0, kTwoPi), s.uniform(0.0, 0.995));
      if (v < -1e-9 || v > 1.0 + 1e-9) ok = false;
    }
    s.check("fourier.poisson_maximum_principle", ok);
  }

  // constant arc value of the indicator solution
  {
    const DiscPair pair = DiscPair::from_discs(1.4, 1.2);
    const BoundaryFn chi = BoundaryFn::arc_indicator(pair.theta1_star());
    const double want = arc_value_oracle(pair.theta1_star(), pair.theta2_star());
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const double tt =
          pair.theta2_star() + (kTwoPi - 2.0 * pair.theta2_star()) * (i + 0.5) / 21.0;
      const PolarPoint p = gamma2_to_b1_polar(pair, tt);
      worst = std::max(worst, std::abs(poisson_eval(chi, p.theta, p.r) - want));
    }
    s.check_le("fourier.arc_value_oracle_agreement", worst, 1e-6);
  }

  // curve limits at a jump, extrapolated from the quadrature solution
  {
    const BoundaryFn g = BoundaryFn::piecewise(
        {{0.0, 0.5 * kPi, [](double) { return 1.0; }},
         {0.5 * kPi, kTwoPi, [](double) { return 0.0; }}});
    double worst = 0.0;
    for (double slope : {-2.0, -1.0, 0.0, 1.0, 2.0})
      worst = std::max(worst, curve_limit_verify(g, slope, 8));
    s.check_le("fourier.curve_limit_extrapolation", worst, 1e-2);
  }

  // Lebesgue constant: norm >= 1, monotone, logarithmic slope
  {
    bool ok = lebesgue_constant(1) >= 1.0;
    double prev = lebesgue_constant(2);
    for (int N = 3; N <= 200; ++N) {
      const double cur = lebesgue_constant(N);
      if (cur <= prev) ok = false;
      prev = cur;
    }
    const double slope = (lebesgue_constant(1000) - lebesgue_constant(100)) / std::log(10.0);
    const double want = 4.0 / (kPi * kPi);
    s.check("fourier.lebesgue_constant_growth",
            ok && std::abs(slope - want) <= 0.15 * want,
            "slope " + std::to_string(slope) + " vs " + std::to_string(want));
  }
}

// ------------------------------------------------------------------- dtd

void dtd_suite(Suite& s) {
  const DiscPair pair = DiscPair::from_discs(1.4, 1.2);
  auto one = [](double) { return 1.0; };

  {
    const DtDProfile prof = dtd_exact_profile(pair, one, 32);
    const auto [mn, mx] = std::minmax_element(prof.values.begin(), prof.values.end());
    const double c1 = contraction_exact(pair.theta1_star(), pair.theta2_star());
    s.check_le("dtd.exact_profile_constancy", *mx - *mn, 1e-4);
    double dev = 0.0;
    for (double v : prof.values) dev = std::max(dev, std::abs(v - c1));
    s.check_le("dtd.exact_profile_equals_contraction", dev, 1e-6);
  }

  {
    double worst = 0.0;
    for (auto [m, R] : {std::pair{1.4, 1.2}, {2.1, 1.2}, {0.75, 1.7}}) {
      const DiscPair p = DiscPair::from_discs(m, R);
      worst = std::max(worst, std::abs(dtd_exact_norm(p) - p.contraction()));
    }
    s.check_le("dtd.exact_norm_equals_contraction", worst, 1e-4);
  }

  // restricted maximum principle: the indicator datum dominates
  {
    const int N = 16;
    const double rstar = positivity_radius_theory(N);
    const DtDProfile chi_prof = dtd_projection_profile(pair, N, one, 48);
    bool ok = true;
    for (int rep = 0; rep < 10; ++rep) {
      auto raw = random_trig(s, 6);
      double sup = 0.0;
      for (int i = 0; i <= 50; ++i)
        sup = std::max(sup, std::abs(raw(-pair.theta1_star() +
                                          2.0 * pair.theta1_star() * i / 50.0)));
      auto v = [raw, sup](double t) { return raw(t) / sup; };
      const DtDProfile prof = dtd_projection_profile(pair, N, v, 48);
      for (size_t i = 0; i < prof.thetas.size(); ++i) {
        const PolarPoint p = gamma2_to_b1_polar(pair, prof.thetas[i]);
        if (p.r <= rstar && std::abs(prof.values[i]) > chi_prof.values[i] + 1e-8) ok = false;
      }
    }
    s.check("dtd.projection_domination", ok);
  }

  // contraction plus the kernel-tail correction bounds the plateau
  {
    bool ok = true;
    const double c1 = pair.contraction();
    for (int N : {8, 25}) {
      const double rstar = positivity_radius_theory(N);
      const double eps = epsilon_quadrature(N, rstar);
      const DtDProfile prof = dtd_projection_profile(pair, N, one, 64);
      for (size_t i = 0; i < prof.thetas.size(); ++i) {
        const PolarPoint p = gamma2_to_b1_polar(pair, prof.thetas[i]);
        if (p.r <= rstar && prof.values[i] > c1 + eps + 1e-6) ok = false;
      }
    }
    s.check("dtd.projection_epsilon_correction", ok);
  }

  const SnappedScenario snapped =
      snap_to_grids(pair.theta1_star(), pair.theta2_star(), 42, 50);

  // l1 duality: the sign vector attains the bound exactly
  {
    const QMask mask = qmask_gamma1(snapped);
    const InterpMatrices M = interp_matrices(42);
    const DtDProfile bound = interp_bound_profile(snapped, 16, false);
    bool ok = true;
    for (size_t k = 2; k < bound.thetas.size() - 2; k += 3) {
      const PolarPoint p = gamma2_to_b1_polar(snapped.base, bound.thetas[k]);
      const ModeVectors mv = mode_vectors(42, p.theta, p.r);
      std::vector<double> v(42, 0.0);
      for (int i = 0; i < 42; ++i) {
        if (!mask.interior[i]) continue;
        double row = 0.0;
        for (int j = 0; j < 22; ++j) row += M.c(i, j) * mv.c[j];
        for (int j = 0; j < 20; ++j) row += M.s(i, j) * mv.s[j];
        v[i] = row >= 0.0 ? 1.0 : -1.0;
      }
      if (dtd_interpolation_apply(snapped, v, p.theta, p.r) != bound.values[k]) ok = false;
    }
    s.check("dtd.l1_bound_attained_by_sign_vector", ok);
  }

  // node-vector path vs interpolate + harmonic extension
  {
    const QMask mask = qmask_gamma1(snapped);
    double worst = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
      std::vector<double> v(42, 0.0);
      for (int i = 0; i < 42; ++i)
        if (mask.interior[i]) v[i] = s.uniform(-1.0, 1.0);
      const double th = s.uniform(-kPi, kPi);
      const double r = s.uniform(0.0, 1.0);
      const double direct = dtd_interpolation_apply(snapped, v, th, r);
      const double series = harmonic_eval(interpolate(v), th, r);
      worst = std::max(worst, std::abs(direct - series));
    }
    s.check_le("dtd.two_path_equality", worst, 1e-10);
  }

  // half-weighted constant and Nyquist modes are consistent between the
  // node matrices and the interpolation operator
  {
    const int n1 = 42;
    const InterpMatrices M = interp_matrices(n1);
    double worst = 0.0;
    for (int mode = 0; mode < 2; ++mode) {
      std::vector<double> v(n1);
      for (int l = 0; l < n1; ++l)
        v[l] = mode == 0 ? 1.0 : std::cos(0.5 * n1 * (l * kTwoPi / n1));
      const FourierCoeffs c = interpolate(v);
      for (auto [th, r] : {std::pair{0.35, 0.4}, {2.9, 0.95}}) {
        const ModeVectors mv = mode_vectors(n1, th, r);
        double full = 0.0;
        for (int i = 0; i < n1; ++i) {
          double row = 0.0;
          for (int j = 0; j <= n1 / 2; ++j) row += M.c(i, j) * mv.c[j];
          for (int j = 0; j < n1 / 2 - 1; ++j) row += M.s(i, j) * mv.s[j];
          full += v[i] * row;
        }
        worst = std::max(worst, std::abs(full - harmonic_eval(c, th, r)));
      }
    }
    s.check_le("dtd.nyquist_mode_weight", worst, 1e-12);
  }

  {
    const DtDProfile grid = interp_bound_profile(snapped, 0, true);
    const DtDProfile cont = interp_bound_profile(snapped, 101, false);
    s.check("dtd.bound_profile_endpoints_zero",
            grid.values.front() == 0.0 && grid.values.back() == 0.0 &&
                cont.values.front() == 0.0 && cont.values.back() == 0.0);

    const double plateau = (snapped.theta2_int - snapped.theta1_int) / kPi;
    double dev = 0.0;
    const size_t n = grid.values.size();
    for (size_t i = n / 3; i < 2 * n / 3; ++i)
      dev = std::max(dev, std::abs(grid.values[i] - plateau));
    s.check_le("dtd.bound_profile_plateau", dev, 0.05);
  }

  // Gibbs oscillations hit the continuous profile but not the grid values
  {
    const DiscPair wide = DiscPair::from_discs(0.75, 1.7);
    const SnappedScenario snap2 =
        snap_to_grids(wide.theta1_star(), wide.theta2_star(), 42, 72);
    const double plateau = (snap2.theta2_int - snap2.theta1_int) / kPi;
    const double grid_max = interp_bound_profile(snap2, 0, true).max_value();
    const double cont_max = interp_bound_profile(snap2, 401, false).max_value();
    s.check("dtd.grid_values_free_of_gibbs_spikes",
            grid_max <= plateau + 0.05 && cont_max > plateau + 0.05,
            "grid " + std::to_string(grid_max) + ", continuous " + std::to_string(cont_max));
  }
}

// --------------------------------------------------------------- schwarz

void schwarz_suite(Suite& s) {
  const DiscPair pair = DiscPair::from_discs(1.4, 1.2);
  const ManufacturedSolution poly = manufactured_harmonic_polynomial(2);
  const OmegaBoundaryData g = boundary_data(poly, pair);

  // zero data keep the zero state fixed, for every variant
  {
    const OmegaBoundaryData zero{[](double) { return 0.0; }, [](double) { return 0.0; }};
    bool ok = true;
    for (SolveVariant variant :
         {SolveVariant::exact, SolveVariant::projection, SolveVariant::interpolation}) {
      SchwarzConfig config{pair};
      config.variant = variant;
      config.N = 8;
      config.trace_samples = 21;
      config.max_sweeps = 2;
      if (variant == SolveVariant::interpolation)
        config.snapped = snap_to_grids(pair.theta1_star(), pair.theta2_star(), 42, 50);
      const IterationTrace trace = run(config, zero);
      for (double e : trace.update_max)
        if (e != 0.0) ok = false;
    }
    s.check("schwarz.zero_fixed_point", ok);
  }

  // exact variant: convergence to the manufactured solution and agreement
  // of the two subdomain solutions on the overlap
  {
    SchwarzConfig config{pair};
    config.variant = SolveVariant::exact;
    config.tol = 1e-8;
    config.max_sweeps = 40;
    const IterationTrace trace = run(config, g, &poly);
    const double rate = observed_rate(trace);
    const double c1 = pair.contraction();
    s.check("schwarz.exact_converged", trace.converged);
    s.check_le("schwarz.exact_observed_rate", rate, c1 + 0.02);

    auto u1 = disc1_evaluator(config, *trace.final_state, g);
    auto u2 = disc2_evaluator(config, *trace.final_state, g);
    double sup_exact = 0.0, sup_consistency = 0.0;
    for (const auto& [x, y] : overlap_sample_points(pair, 50, 0.02)) {
      const double v1 = u1(x, y);
      sup_exact = std::max(sup_exact, std::abs(v1 - poly.u(x, y)));
      sup_consistency = std::max(sup_consistency, std::abs(v1 - u2(x, y)));
    }
    s.check_le("schwarz.exact_matches_manufactured", sup_exact, 5e-3);
    s.check_le("schwarz.fixed_point_consistency", sup_consistency, 1e-4);

    // multiplicative mode contracts at most like the square
    SchwarzConfig mult = config;
    mult.mode = SweepMode::multiplicative;
    const IterationTrace mtrace = run(mult, g);
    const double mrate = observed_rate(mtrace);
    s.check_le("schwarz.multiplicative_rate_vs_square", mrate, rate * rate + 0.05);
    s.check_le("schwarz.multiplicative_rate_vs_bound", mrate, c1 * c1 + 0.02);

    // tails of the error sequences are monotone
    auto tail_monotone = [](const std::vector<double>& e) {
      for (size_t i = e.size() / 2; i + 1 < e.size(); ++i)
        if (e[i + 1] >= e[i] && e[i] > 1e-13) return false;
      return true;
    };
    s.check("schwarz.error_tail_monotone",
            tail_monotone(trace.update_max) && tail_monotone(mtrace.update_max));
  }

  // interpolation variant: intersection nodes never move
  {
    SchwarzConfig config{pair};
    config.variant = SolveVariant::interpolation;
    config.snapped = snap_to_grids(pair.theta1_star(), pair.theta2_star(), 42, 50);
    config.max_sweeps = 25;
    const IterationTrace trace = run(config, g);
    bool ok = !trace.z_node_update.empty();
    for (double e : trace.z_node_update)
      if (e != 0.0) ok = false;
    s.check("schwarz.interpolation_z_nodes_pinned", ok);
    const double bound = interp_contraction_bound(*config.snapped);
    s.check_le("schwarz.interpolation_rate_vs_bound", observed_rate(trace), bound + 0.02);
  }

  // projection fixed points approach the exact solution as N grows
  {
    SchwarzConfig exact_config{pair};
    exact_config.variant = SolveVariant::exact;
    exact_config.tol = 1e-9;
    exact_config.max_sweeps = 50;
    const IterationTrace exact_trace = run(exact_config, g);

    // compare on the common region where every tested order is positive
    const double r_common = positivity_radius_theory(10);
    const auto angles = gamma2_sample_angles(exact_config);
    double prev = 1e300;
    bool ok = true;
    std::ostringstream os;
    for (int N : {10, 20, 40, 80}) {
      SchwarzConfig pc{pair};
      pc.variant = SolveVariant::projection;
      pc.N = N;
      pc.tol = 1e-10;
      pc.max_sweeps = 120;
      const IterationTrace pt = run(pc, g);
      double sup = 0.0;
      for (size_t i = 0; i < angles.size(); ++i) {
        const PolarPoint p = gamma2_to_b1_polar(pair, angles[i]);
        if (p.r <= r_common)
          sup = std::max(sup, std::abs(pt.final_state->trace_gamma2[i] -
                                       exact_trace.final_state->trace_gamma2[i]));
      }
      os << "N=" << N << ":" << sup << " ";
      if (sup >= prev) ok = false;
      prev = sup;
    }
    s.check("schwarz.projection_approaches_exact", ok, os.str());
  }
}

}  // namespace

std::vector<CheckResult> verify_suite(const std::string& suite, std::uint64_t seed) {
  Suite s(seed);
  if (suite == "kernels")
    kernels_suite(s);
  else if (suite == "fourier")
    fourier_suite(s);
  else if (suite == "dtd")
    dtd_suite(s);
  else if (suite == "schwarz")
    schwarz_suite(s);
  else if (suite == "all") {
    kernels_suite(s);
    fourier_suite(s);
    dtd_suite(s);
    schwarz_suite(s);
  } else {
    throw std::invalid_argument("unknown suite: " + suite);
  }
  return s.results;
}

}  // namespace sfdd

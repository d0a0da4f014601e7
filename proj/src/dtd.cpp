#include "sfdd/dtd.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sfdd/errors.hpp"

namespace sfdd {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Boundary data (0, v) on the circle of B1: v on the closed arc
// [-theta1*, theta1*], zero elsewhere.
BoundaryFn extend_gamma1(const DiscPair& pair, const std::function<double(double)>& v) {
  const double t1 = pair.theta1_star();
  auto zero = [](double) { return 0.0; };
  return BoundaryFn::piecewise({{0.0, t1, v},
                                {t1, kTwoPi - t1, zero},
                                {kTwoPi - t1, kTwoPi, [v](double t) { return v(t - kTwoPi); }}});
}

struct ArcSampling {
  std::vector<double> thetas;  // interior sample angles on Gamma2 (B2-polar)
  double lo, hi;               // closed arc ends
};

ArcSampling open_arc_samples(const DiscPair& pair, int samples) {
  const double lo = pair.theta2_star();
  const double hi = kTwoPi - pair.theta2_star();
  const double off = (hi - lo) / (10.0 * samples);
  ArcSampling s;
  s.lo = lo;
  s.hi = hi;
  s.thetas.resize(samples);
  for (int i = 0; i < samples; ++i)
    s.thetas[i] = lo + off + (hi - lo - 2.0 * off) * i / (samples - 1);
  return s;
}

// One-sided Richardson extrapolation of f(arc endpoint + d) for d -> 0.
double extrapolate_endpoint(const std::function<double(double)>& f_at_offset,
                            double arc_length) {
  constexpr int kLevels = 6;
  std::vector<double> row(kLevels);
  for (int k = 0; k < kLevels; ++k)
    row[k] = f_at_offset(arc_length / 64.0 * std::pow(2.0, -k));
  for (int j = 1; j < std::min(kLevels, 5); ++j) {
    const double p = std::pow(2.0, j);
    std::vector<double> next(row.size() - 1);
    for (size_t i = 0; i + 1 < row.size(); ++i)
      next[i] = row[i + 1] + (row[i + 1] - row[i]) / (p - 1.0);
    row = std::move(next);
  }
  return row.back();
}

}  // namespace

double DtDProfile::max_value() const {
  double m = values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
  if (endpoints) m = std::max({m, endpoints->first, endpoints->second});
  return m;
}

ModeVectors mode_vectors(int n1, double theta, double r) {
  if (n1 < 6 || n1 % 2 != 0)
    throw std::domain_error("mode_vectors: n1 must be even and >= 6");
  ModeVectors mv;
  const int half = n1 / 2;
  mv.c.resize(half + 1);
  mv.s.resize(half - 1);
  mv.c[0] = 0.5;
  double rk = 1.0;
  for (int k = 1; k < half; ++k) {
    rk *= r;
    mv.c[k] = rk * std::cos(k * theta);
    mv.s[k - 1] = rk * std::sin(k * theta);
  }
  mv.c[half] = 0.5 * rk * r * std::cos(half * theta);
  return mv;
}

QMask qmask_gamma1(const SnappedScenario& s) {
  QMask q;
  q.n1 = s.grid.n1;
  q.interior.resize(s.grid.n1);
  for (int l = 0; l < s.grid.n1; ++l)
    q.interior[l] = l < s.ell1 || l > s.grid.n1 - s.ell1;
  return q;
}

namespace {

// ||Q (C c + S s)||_1 evaluation, with the exact nodal-delta shortcut on
// the boundary: at r = 1 and theta on a grid node the extension vector is
// a unit vector, so the masked norm is the node's interior flag.
class BoundEvaluator {
 public:
  explicit BoundEvaluator(const SnappedScenario& s)
      : n1_(s.grid.n1), mats_(interp_matrices(s.grid.n1)), mask_(qmask_gamma1(s)) {}

  double row_value(int i, const ModeVectors& mv) const {
    const int nc = n1_ / 2 + 1;
    const int ns = n1_ / 2 - 1;
    double acc = 0.0;
    for (int j = 0; j < nc; ++j) acc += mats_.C[static_cast<size_t>(i) * nc + j] * mv.c[j];
    for (int j = 0; j < ns; ++j) acc += mats_.S[static_cast<size_t>(i) * ns + j] * mv.s[j];
    return acc;
  }

  int node_at(double theta, double r) const {
    if (r != 1.0) return -1;
    const double h = kTwoPi / n1_;
    const long j = std::lround(theta / h);
    if (std::abs(theta - j * h) > 1e-12) return -1;
    return static_cast<int>(((j % n1_) + n1_) % n1_);
  }

  double l1(double theta, double r) const {
    const int node = node_at(theta, r);
    if (node >= 0) return mask_.interior[node] ? 1.0 : 0.0;
    const ModeVectors mv = mode_vectors(n1_, theta, r);
    double acc = 0.0;
    for (int i = 0; i < n1_; ++i)
      if (mask_.interior[i]) acc += std::abs(row_value(i, mv));
    return acc;
  }

  double apply(const std::vector<double>& v, double theta, double r) const {
    const ModeVectors mv = mode_vectors(n1_, theta, r);
    double acc = 0.0;
    for (int i = 0; i < n1_; ++i)
      if (mask_.interior[i]) acc += v[i] * row_value(i, mv);
    return acc;
  }

  const QMask& mask() const { return mask_; }

 private:
  int n1_;
  InterpMatrices mats_;
  QMask mask_;
};

}  // namespace

DtDProfile dtd_exact_profile(const DiscPair& pair, const std::function<double(double)>& v,
                             int samples) {
  if (samples < 16) throw std::domain_error("dtd_exact_profile: samples must be >= 16");
  const BoundaryFn data = extend_gamma1(pair, v);
  const ArcSampling arc = open_arc_samples(pair, samples);

  DtDProfile prof(pair, DtDVariant::exact);
  prof.thetas = arc.thetas;
  prof.values.reserve(samples);
  for (double tt : arc.thetas) {
    const PolarPoint p = gamma2_to_b1_polar(pair, tt);
    prof.values.push_back(poisson_eval(data, p.theta, p.r));
  }
  const double len = arc.hi - arc.lo;
  auto eval_at = [&](double tt) {
    const PolarPoint p = gamma2_to_b1_polar(pair, tt);
    return poisson_eval(data, p.theta, p.r);
  };
  prof.endpoints = {
      extrapolate_endpoint([&](double d) { return eval_at(arc.lo + d); }, len),
      extrapolate_endpoint([&](double d) { return eval_at(arc.hi - d); }, len)};
  return prof;
}

DtDProfile dtd_projection_profile(const DiscPair& pair, int N,
                                  const std::function<double(double)>& v, int samples) {
  if (N < 1) throw std::domain_error("dtd_projection_profile: N must be >= 1");
  if (samples < 16) throw std::domain_error("dtd_projection_profile: samples must be >= 16");
  const FourierCoeffs coeffs = project(extend_gamma1(pair, v), N);
  const ArcSampling arc = open_arc_samples(pair, samples);

  DtDProfile prof(pair, DtDVariant::projection);
  prof.N = N;
  prof.thetas = arc.thetas;
  prof.values.reserve(samples);
  for (double tt : arc.thetas) {
    const PolarPoint p = gamma2_to_b1_polar(pair, tt);
    prof.values.push_back(harmonic_eval(coeffs, p.theta, p.r));
  }
  // boundary trace of the finite sum is directly evaluable at r = 1
  prof.endpoints = {harmonic_eval(coeffs, pair.theta1_star(), 1.0),
                    harmonic_eval(coeffs, -pair.theta1_star(), 1.0)};
  return prof;
}

double dtd_interpolation_apply(const SnappedScenario& s, const std::vector<double>& v_samples,
                               double theta, double r) {
  if (static_cast<int>(v_samples.size()) != s.grid.n1)
    throw std::invalid_argument("dtd_interpolation_apply: v_samples must have n1 entries");
  const BoundEvaluator ev(s);
  for (int i = 0; i < s.grid.n1; ++i)
    if (!ev.mask().interior[i] && v_samples[i] != 0.0)
      throw std::invalid_argument(
          "dtd_interpolation_apply: v_samples must vanish outside the interior of Gamma1");
  return ev.apply(v_samples, theta, r);
}

DtDProfile interp_bound_profile(const SnappedScenario& s, int samples, bool grid_only) {
  if (!grid_only && samples < 16)
    throw std::domain_error("interp_bound_profile: samples must be >= 16");
  const BoundEvaluator ev(s);
  const double lo = s.theta2_int;
  const double hi = kTwoPi - s.theta2_int;
  const double h2 = kTwoPi / s.grid.n2;

  DtDProfile prof(s.base, DtDVariant::interpolation_bound);
  prof.N = s.grid.n1 / 2 - 1;
  if (grid_only) {
    for (int l = s.ell2; l <= s.grid.n2 - s.ell2; ++l) {
      prof.thetas.push_back(l * h2);
      prof.grid_marks.push_back(true);
    }
  } else {
    for (int i = 0; i < samples; ++i) {
      const double tt = lo + (hi - lo) * i / (samples - 1);
      prof.thetas.push_back(tt);
      const double frac = std::abs(tt / h2 - std::lround(tt / h2));
      prof.grid_marks.push_back(frac * h2 <= 1e-12);
    }
  }
  prof.values.reserve(prof.thetas.size());
  for (double tt : prof.thetas) {
    const PolarPoint p = gamma2_to_b1_polar(s.base, tt);
    prof.values.push_back(ev.l1(p.theta, p.r));
  }
  return prof;
}

double interp_contraction_bound(const SnappedScenario& s) {
  return interp_bound_profile(s, 0, /*grid_only=*/true).max_value();
}

double dtd_exact_norm(const DiscPair& pair) {
  const DtDProfile prof = dtd_exact_profile(pair, [](double) { return 1.0; }, 64);
  return prof.max_value();
}

}  // namespace sfdd

#include "sfdd/schwarz.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <memory>
#include <numbers>
#include <stdexcept>

#include "sfdd/errors.hpp"

namespace sfdd {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

/** Natural cubic spline on strictly increasing knots; evaluation is clamped
 * to the knot range. */
class CubicSpline {
 public:
  CubicSpline(std::vector<double> x, std::vector<double> y)
      : x_(std::move(x)), y_(std::move(y)) {
    const size_t n = x_.size();
    m_.assign(n, 0.0);
    if (n < 3) return;
    // Thomas algorithm for the natural-spline second derivatives
    std::vector<double> diag(n, 2.0), rhs(n, 0.0), upper(n, 0.0);
    for (size_t i = 1; i + 1 < n; ++i) {
      const double hl = x_[i] - x_[i - 1];
      const double hr = x_[i + 1] - x_[i];
      diag[i] = 2.0 * (hl + hr);
      upper[i] = hr;
      rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / hr - (y_[i] - y_[i - 1]) / hl);
    }
    for (size_t i = 2; i + 1 < n; ++i) {
      const double w = (x_[i] - x_[i - 1]) / diag[i - 1];
      diag[i] -= w * upper[i - 1];
      rhs[i] -= w * rhs[i - 1];
    }
    for (size_t i = n - 2; i >= 1; --i) {
      m_[i] = (rhs[i] - upper[i] * m_[i + 1]) / diag[i];
      if (i == 1) break;
    }
  }

  double operator()(double t) const {
    const size_t n = x_.size();
    if (t <= x_.front()) return y_.front();
    if (t >= x_.back()) return y_.back();
    size_t lo = 0, hi = n - 1;
    while (hi - lo > 1) {
      const size_t mid = (lo + hi) / 2;
      if (x_[mid] <= t)
        lo = mid;
      else
        hi = mid;
    }
    const double h = x_[hi] - x_[lo];
    const double u = (t - x_[lo]) / h;
    const double v = 1.0 - u;
    return v * y_[lo] + u * y_[hi] +
           h * h / 6.0 * (v * (v * v - 1.0) * m_[lo] + u * (u * u - 1.0) * m_[hi]);
  }

 private:
  std::vector<double> x_, y_, m_;
};

// quadratic extrapolation of (x0,y0),(x1,y1),(x2,y2) to t
double quad_extrapolate(const double* x, const double* y, double t) {
  const double l0 = (t - x[1]) * (t - x[2]) / ((x[0] - x[1]) * (x[0] - x[2]));
  const double l1 = (t - x[0]) * (t - x[2]) / ((x[1] - x[0]) * (x[1] - x[2]));
  const double l2 = (t - x[0]) * (t - x[1]) / ((x[2] - x[0]) * (x[2] - x[1]));
  return l0 * y[0] + l1 * y[1] + l2 * y[2];
}

std::vector<double> open_arc(double lo, double hi, int samples) {
  const double off = (hi - lo) / (10.0 * samples);
  std::vector<double> out(samples);
  for (int i = 0; i < samples; ++i)
    out[i] = lo + off + (hi - lo - 2.0 * off) * i / (samples - 1);
  return out;
}

// Spline over the closed arc: interior samples plus endpoint knots filled
// by one-sided quadratic extrapolation.
CubicSpline closed_arc_spline(const std::vector<double>& angles,
                              const std::vector<double>& values, double lo, double hi) {
  const size_t n = angles.size();
  std::vector<double> x(n + 2), y(n + 2);
  std::copy(angles.begin(), angles.end(), x.begin() + 1);
  std::copy(values.begin(), values.end(), y.begin() + 1);
  x.front() = lo;
  x.back() = hi;
  y.front() = quad_extrapolate(&angles[0], &values[0], lo);
  const double xe[3] = {angles[n - 3], angles[n - 2], angles[n - 1]};
  const double ye[3] = {values[n - 3], values[n - 2], values[n - 1]};
  y.back() = quad_extrapolate(xe, ye, hi);
  return CubicSpline(std::move(x), std::move(y));
}

void check_config(const SchwarzConfig& config) {
  if (config.variant == SolveVariant::interpolation && !config.snapped)
    throw std::invalid_argument("schwarz: interpolation variant needs a snapped scenario");
  if (!(config.tol > 0.0)) throw std::invalid_argument("schwarz: tol must be positive");
  if (config.max_sweeps < 1) throw std::invalid_argument("schwarz: max_sweeps must be >= 1");
  if (config.trace_samples < 8)
    throw std::invalid_argument("schwarz: trace_samples must be >= 8");
  if (config.variant == SolveVariant::projection && config.N < 1)
    throw std::invalid_argument("schwarz: projection order must be >= 1");
}

// disc-1 boundary data: g1 outside Gamma1, the given interface function on
// [-theta1*, theta1*]
BoundaryFn assemble_disc1(const DiscPair& pair, const std::function<double(double)>& g1,
                          const std::function<double(double)>& on_gamma1) {
  const double t1 = pair.theta1_star();
  return BoundaryFn::piecewise(
      {{0.0, t1, on_gamma1},
       {t1, kTwoPi - t1, g1},
       {kTwoPi - t1, kTwoPi, [on_gamma1](double t) { return on_gamma1(t - kTwoPi); }}});
}

// disc-2 boundary data: g2 outside Gamma2 (angle in [-theta2*, theta2*]),
// the given interface function on [theta2*, 2pi - theta2*]
BoundaryFn assemble_disc2(const DiscPair& pair, const std::function<double(double)>& g2,
                          const std::function<double(double)>& on_gamma2) {
  const double t2 = pair.theta2_star();
  return BoundaryFn::piecewise(
      {{0.0, t2, g2},
       {t2, kTwoPi - t2, on_gamma2},
       {kTwoPi - t2, kTwoPi, [g2](double t) { return g2(t - kTwoPi); }}});
}

struct InterpGridRefs {
  int n1, n2, ell1, ell2;
  bool interior1(int l) const { return l < ell1 || l > n1 - ell1; }
  bool interior2(int l) const { return l > ell2 && l < n2 - ell2; }
};

InterpGridRefs grid_refs(const SchwarzConfig& config) {
  const SnappedScenario& s = *config.snapped;
  return {s.grid.n1, s.grid.n2, s.ell1, s.ell2};
}

}  // namespace

ManufacturedSolution manufactured_harmonic_polynomial(int k) {
  if (k < 0 || k > 6)
    throw std::domain_error("manufactured_harmonic_polynomial: k must be in [0, 6]");
  return {"poly" + std::to_string(k), [k](double x, double y) {
            return std::pow(std::complex<double>(x, y), k).real();
          }};
}

ManufacturedSolution manufactured_log_source(double x0, double y0, const DiscPair& pair) {
  const double d1 = std::hypot(x0, y0) - 1.0;
  const double d2 = std::hypot(x0 - pair.m(), y0) - pair.R();
  if (std::min(d1, d2) < 0.1)
    throw std::domain_error("manufactured_log_source: source must clear the domain by 0.1");
  return {"log", [x0, y0](double x, double y) { return std::log(std::hypot(x - x0, y - y0)); }};
}

OmegaBoundaryData boundary_data(const ManufacturedSolution& ms, const DiscPair& pair) {
  const double m = pair.m(), R = pair.R();
  auto u = ms.u;
  return {[u](double th) { return u(std::cos(th), std::sin(th)); },
          [u, m, R](double tt) { return u(m + R * std::cos(tt), R * std::sin(tt)); }};
}

std::vector<double> gamma2_sample_angles(const SchwarzConfig& config) {
  const double t2 = config.pair.theta2_star();
  return open_arc(t2, kTwoPi - t2, config.trace_samples);
}

std::vector<double> gamma1_sample_angles(const SchwarzConfig& config) {
  const double t1 = config.pair.theta1_star();
  return open_arc(-t1, t1, config.trace_samples);
}

namespace {

// Evaluate disc solutions along the interfaces.
std::vector<double> trace_on_gamma2(const SchwarzConfig& config,
                                    const std::function<double(double, double)>& u1_polar) {
  std::vector<double> out;
  for (double tt : gamma2_sample_angles(config)) {
    const PolarPoint p = gamma2_to_b1_polar(config.pair, tt);
    out.push_back(u1_polar(p.theta, p.r));
  }
  return out;
}

std::vector<double> trace_on_gamma1(const SchwarzConfig& config,
                                    const std::function<double(double, double)>& u2_polar) {
  std::vector<double> out;
  for (double th : gamma1_sample_angles(config)) {
    const PolarPoint p = gamma1_to_b2_polar(config.pair, th);
    out.push_back(u2_polar(p.theta, p.r));
  }
  return out;
}

// --- exact variant -------------------------------------------------------

BoundaryFn exact_disc1_data(const SchwarzConfig& config, const OmegaBoundaryData& g,
                            const std::vector<double>& trace_gamma1) {
  const double t1 = config.pair.theta1_star();
  auto sp = std::make_shared<CubicSpline>(
      closed_arc_spline(gamma1_sample_angles(config), trace_gamma1, -t1, t1));
  return assemble_disc1(config.pair, g.g1, [sp](double t) { return (*sp)(t); });
}

BoundaryFn exact_disc2_data(const SchwarzConfig& config, const OmegaBoundaryData& g,
                            const std::vector<double>& trace_gamma2) {
  const double t2 = config.pair.theta2_star();
  auto sp = std::make_shared<CubicSpline>(
      closed_arc_spline(gamma2_sample_angles(config), trace_gamma2, t2, kTwoPi - t2));
  return assemble_disc2(config.pair, g.g2, [sp](double t) { return (*sp)(t); });
}

std::vector<double> exact_solve1(const SchwarzConfig& config, const OmegaBoundaryData& g,
                                 const std::vector<double>& trace_gamma1) {
  const BoundaryFn data = exact_disc1_data(config, g, trace_gamma1);
  return trace_on_gamma2(config,
                         [&](double th, double r) { return poisson_eval(data, th, r); });
}

std::vector<double> exact_solve2(const SchwarzConfig& config, const OmegaBoundaryData& g,
                                 const std::vector<double>& trace_gamma2) {
  const BoundaryFn data = exact_disc2_data(config, g, trace_gamma2);
  return trace_on_gamma1(config,
                         [&](double th, double r) { return poisson_eval(data, th, r); });
}

// --- projection variant --------------------------------------------------

FourierCoeffs project_disc1(const SchwarzConfig& config, const OmegaBoundaryData& g,
                            const FourierCoeffs& coef2) {
  const DiscPair& pair = config.pair;
  auto on_gamma1 = [&pair, &coef2](double th) {
    const PolarPoint p = gamma1_to_b2_polar(pair, th);
    return harmonic_eval(coef2, p.theta, p.r);
  };
  return project(assemble_disc1(pair, g.g1, on_gamma1), config.N);
}

FourierCoeffs project_disc2(const SchwarzConfig& config, const OmegaBoundaryData& g,
                            const FourierCoeffs& coef1) {
  const DiscPair& pair = config.pair;
  auto on_gamma2 = [&pair, &coef1](double tt) {
    const PolarPoint p = gamma2_to_b1_polar(pair, tt);
    return harmonic_eval(coef1, p.theta, p.r);
  };
  return project(assemble_disc2(pair, g.g2, on_gamma2), config.N);
}

// --- interpolation variant ------------------------------------------------

std::vector<double> interp_nodes1(const SchwarzConfig& config, const OmegaBoundaryData& g,
                                  const FourierCoeffs* coef2) {
  const InterpGridRefs refs = grid_refs(config);
  std::vector<double> w(refs.n1);
  for (int l = 0; l < refs.n1; ++l) {
    const double xl = l * kTwoPi / refs.n1;
    if (refs.interior1(l)) {
      if (coef2) {
        const PolarPoint p = gamma1_to_b2_polar(config.pair, xl);
        w[l] = harmonic_eval(*coef2, p.theta, p.r);
      } else {
        w[l] = 0.0;
      }
    } else {
      w[l] = g.g1(xl);
    }
  }
  return w;
}

std::vector<double> interp_nodes2(const SchwarzConfig& config, const OmegaBoundaryData& g,
                                  const FourierCoeffs* coef1) {
  const InterpGridRefs refs = grid_refs(config);
  std::vector<double> w(refs.n2);
  for (int l = 0; l < refs.n2; ++l) {
    const double xl = l * kTwoPi / refs.n2;
    if (refs.interior2(l)) {
      if (coef1) {
        const PolarPoint p = gamma2_to_b1_polar(config.pair, xl);
        w[l] = harmonic_eval(*coef1, p.theta, p.r);
      } else {
        w[l] = 0.0;
      }
    } else {
      // outer B2 arc is parameterized over [-theta2*, theta2*]
      w[l] = g.g2(xl <= kPi ? xl : xl - kTwoPi);
    }
  }
  return w;
}

}  // namespace

SchwarzState initial_state(const SchwarzConfig& config, const OmegaBoundaryData& g) {
  check_config(config);
  SchwarzState st;
  switch (config.variant) {
    case SolveVariant::exact: {
      const std::vector<double> zeros1(config.trace_samples, 0.0);
      const std::vector<double> zeros2(config.trace_samples, 0.0);
      st.trace_gamma2 = exact_solve1(config, g, zeros1);
      st.trace_gamma1 = exact_solve2(config, g, zeros2);
      break;
    }
    case SolveVariant::projection: {
      const DiscPair& pair = config.pair;
      auto zero = [](double) { return 0.0; };
      st.coef1 = project(assemble_disc1(pair, g.g1, zero), config.N);
      st.coef2 = project(assemble_disc2(pair, g.g2, zero), config.N);
      st.trace_gamma2 = trace_on_gamma2(
          config, [&](double th, double r) { return harmonic_eval(*st.coef1, th, r); });
      st.trace_gamma1 = trace_on_gamma1(
          config, [&](double th, double r) { return harmonic_eval(*st.coef2, th, r); });
      break;
    }
    case SolveVariant::interpolation: {
      st.nodes1 = interp_nodes1(config, g, nullptr);
      st.nodes2 = interp_nodes2(config, g, nullptr);
      st.coef1 = interpolate(st.nodes1);
      st.coef2 = interpolate(st.nodes2);
      st.trace_gamma2 = trace_on_gamma2(
          config, [&](double th, double r) { return harmonic_eval(*st.coef1, th, r); });
      st.trace_gamma1 = trace_on_gamma1(
          config, [&](double th, double r) { return harmonic_eval(*st.coef2, th, r); });
      break;
    }
  }
  return st;
}

SchwarzState sweep(const SchwarzState& state, const SchwarzConfig& config,
                   const OmegaBoundaryData& g) {
  check_config(config);
  SchwarzState next;
  next.sweep_count = state.sweep_count + 1;
  const bool multiplicative = config.mode == SweepMode::multiplicative;

  switch (config.variant) {
    case SolveVariant::exact: {
      next.trace_gamma2 = exact_solve1(config, g, state.trace_gamma1);
      next.trace_gamma1 =
          exact_solve2(config, g, multiplicative ? next.trace_gamma2 : state.trace_gamma2);
      break;
    }
    case SolveVariant::projection: {
      next.coef1 = project_disc1(config, g, *state.coef2);
      next.coef2 =
          project_disc2(config, g, multiplicative ? *next.coef1 : *state.coef1);
      next.trace_gamma2 = trace_on_gamma2(
          config, [&](double th, double r) { return harmonic_eval(*next.coef1, th, r); });
      next.trace_gamma1 = trace_on_gamma1(
          config, [&](double th, double r) { return harmonic_eval(*next.coef2, th, r); });
      break;
    }
    case SolveVariant::interpolation: {
      next.nodes1 = interp_nodes1(config, g, &*state.coef2);
      next.coef1 = interpolate(next.nodes1);
      next.nodes2 =
          interp_nodes2(config, g, multiplicative ? &*next.coef1 : &*state.coef1);
      next.coef2 = interpolate(next.nodes2);
      next.trace_gamma2 = trace_on_gamma2(
          config, [&](double th, double r) { return harmonic_eval(*next.coef1, th, r); });
      next.trace_gamma1 = trace_on_gamma1(
          config, [&](double th, double r) { return harmonic_eval(*next.coef2, th, r); });
      break;
    }
  }
  return next;
}

namespace {

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double manufactured_sup_error(const SchwarzConfig& config, const SchwarzState& st,
                              const ManufacturedSolution& oracle) {
  const DiscPair& pair = config.pair;
  double sup = 0.0;
  const auto g2angles = gamma2_sample_angles(config);
  for (size_t i = 0; i < g2angles.size(); ++i) {
    const double x = pair.m() + pair.R() * std::cos(g2angles[i]);
    const double y = pair.R() * std::sin(g2angles[i]);
    sup = std::max(sup, std::abs(st.trace_gamma2[i] - oracle.u(x, y)));
  }
  const auto g1angles = gamma1_sample_angles(config);
  for (size_t i = 0; i < g1angles.size(); ++i) {
    const double x = std::cos(g1angles[i]);
    const double y = std::sin(g1angles[i]);
    sup = std::max(sup, std::abs(st.trace_gamma1[i] - oracle.u(x, y)));
  }
  return sup;
}

double z_node_update(const SchwarzConfig& config, const SchwarzState& prev,
                     const SchwarzState& next) {
  const InterpGridRefs refs = grid_refs(config);
  double m = 0.0;
  for (int l : {refs.ell1, refs.n1 - refs.ell1})
    m = std::max(m, std::abs(next.nodes1[l] - prev.nodes1[l]));
  for (int l : {refs.ell2, refs.n2 - refs.ell2})
    m = std::max(m, std::abs(next.nodes2[l] - prev.nodes2[l]));
  return m;
}

}  // namespace

IterationTrace run(const SchwarzConfig& config, const OmegaBoundaryData& g,
                   const ManufacturedSolution* oracle) {
  check_config(config);
  IterationTrace trace;
  SchwarzState state = initial_state(config, g);
  if (oracle)
    trace.manufactured_error.push_back(manufactured_sup_error(config, state, *oracle));

  for (int n = 1; n <= config.max_sweeps; ++n) {
    SchwarzState next = sweep(state, config, g);
    const double e2 = sup_diff(next.trace_gamma2, state.trace_gamma2);
    const double e1 = sup_diff(next.trace_gamma1, state.trace_gamma1);
    trace.update_gamma2.push_back(e2);
    trace.update_gamma1.push_back(e1);
    trace.update_max.push_back(std::max(e1, e2));
    if (trace.update_max.size() > 1) {
      const double prev = trace.update_max[trace.update_max.size() - 2];
      trace.ratios.push_back(prev > 0.0 ? trace.update_max.back() / prev
                                        : std::numeric_limits<double>::quiet_NaN());
    }
    if (oracle)
      trace.manufactured_error.push_back(manufactured_sup_error(config, next, *oracle));
    if (config.variant == SolveVariant::interpolation)
      trace.z_node_update.push_back(z_node_update(config, state, next));

    state = std::move(next);
    trace.sweeps = n;
    if (trace.update_max.back() <= config.tol) {
      trace.converged = true;
      break;
    }
  }
  trace.final_state = std::move(state);
  return trace;
}

double observed_rate(const IterationTrace& trace) {
  const double floor = 100.0 * std::numeric_limits<double>::epsilon();
  std::vector<double> usable;
  for (double e : trace.update_max) {
    if (e <= floor) break;
    usable.push_back(e);
  }
  if (usable.size() < 4)
    throw insufficient_data_error("observed_rate: need >= 4 sweeps with nonvanishing updates");
  const size_t k0 = usable.size() / 2;
  const size_t k1 = usable.size() - 1;
  return std::pow(usable[k1] / usable[k0], 1.0 / static_cast<double>(k1 - k0));
}

std::function<double(double, double)> disc1_evaluator(const SchwarzConfig& config,
                                                      const SchwarzState& state,
                                                      const OmegaBoundaryData& g) {
  if (config.variant == SolveVariant::exact) {
    auto data = std::make_shared<BoundaryFn>(exact_disc1_data(config, g, state.trace_gamma1));
    return [data](double x, double y) {
      return poisson_eval(*data, std::atan2(y, x), std::hypot(x, y));
    };
  }
  auto coef = std::make_shared<FourierCoeffs>(*state.coef1);
  return [coef](double x, double y) {
    return harmonic_eval(*coef, std::atan2(y, x), std::hypot(x, y));
  };
}

std::function<double(double, double)> disc2_evaluator(const SchwarzConfig& config,
                                                      const SchwarzState& state,
                                                      const OmegaBoundaryData& g) {
  const double m = config.pair.m(), R = config.pair.R();
  if (config.variant == SolveVariant::exact) {
    auto data = std::make_shared<BoundaryFn>(exact_disc2_data(config, g, state.trace_gamma2));
    return [data, m, R](double x, double y) {
      return poisson_eval(*data, std::atan2(y, x - m), std::hypot(x - m, y) / R);
    };
  }
  auto coef = std::make_shared<FourierCoeffs>(*state.coef2);
  return [coef, m, R](double x, double y) {
    return harmonic_eval(*coef, std::atan2(y, x - m), std::hypot(x - m, y) / R);
  };
}

std::vector<std::array<double, 2>> overlap_sample_points(const DiscPair& pair, int count,
                                                         double margin) {
  const double m = pair.m(), R = pair.R();
  std::vector<std::array<double, 2>> found;
  const double xlo = std::max(-1.0, m - R), xhi = std::min(1.0, m + R);
  const double yhi = std::min(1.0, R);
  const int grid = 80;
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      const double x = xlo + (xhi - xlo) * (i + 0.5) / grid;
      const double y = -yhi + 2.0 * yhi * (j + 0.5) / grid;
      if (std::hypot(x, y) <= 1.0 - margin && std::hypot(x - m, y) <= R - margin)
        found.push_back({x, y});
    }
  }
  if (static_cast<int>(found.size()) < count)
    throw insufficient_data_error("overlap_sample_points: overlap too small for request");
  std::vector<std::array<double, 2>> out;
  const double stride = static_cast<double>(found.size()) / count;
  for (int k = 0; k < count; ++k) out.push_back(found[static_cast<size_t>(k * stride)]);
  return out;
}

}  // namespace sfdd

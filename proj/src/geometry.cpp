#include "sfdd/geometry.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "sfdd/errors.hpp"

namespace sfdd {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSlack = 1e-12;

void check_angles(double t1, double t2) {
  if (!(t1 > 0.0 && t2 < kPi && t1 <= t2 + kSlack))
    throw std::domain_error("angles must satisfy 0 < theta1 <= theta2 < pi");
}

}  // namespace

DiscPair DiscPair::from_angles(double theta1_star, double theta2_star) {
  check_angles(theta1_star, theta2_star);
  const double R = std::sin(theta1_star) / std::sin(theta2_star);
  double m;
  if (std::abs(theta2_star - 0.5 * kPi) < kSlack)
    m = std::cos(theta1_star);
  else
    m = std::cos(theta1_star) - std::sin(theta1_star) / std::tan(theta2_star);

  DiscPair pair(theta1_star, theta2_star, m, R);
  // z1 computed from either frame must agree.
  const double dx = std::cos(theta1_star) - (m + R * std::cos(theta2_star));
  const double dy = std::sin(theta1_star) - R * std::sin(theta2_star);
  assert(std::hypot(dx, dy) < 1e-10);
  (void)dx;
  (void)dy;
  return pair;
}

DiscPair DiscPair::from_discs(double m, double R) {
  if (m - R >= 1.0 - kSlack)
    throw std::domain_error("discs disjoint (m - R >= 1)");
  if (m - R <= -1.0 + kSlack)
    throw std::domain_error("disc B1 contained in B2 (m - R <= -1)");
  if (m + R <= 1.0 + kSlack)
    throw std::domain_error("disc B2 contained in B1 (m + R <= 1)");

  const double t1 = std::acos((1.0 + m * m - R * R) / (2.0 * m));
  const double t2 = kPi - std::acos((R * R + m * m - 1.0) / (2.0 * R * m));
  DiscPair pair(t1, t2, m, R);
  assert(std::abs(R - std::sin(t1) / std::sin(t2)) < 1e-12 * std::max(1.0, R));
  return pair;
}

double DiscPair::contraction() const { return (theta2_ - theta1_) / kPi; }

std::array<double, 2> DiscPair::intersection_point() const {
  return {std::cos(theta1_), std::sin(theta1_)};
}

bool DiscPair::degenerate() const { return theta2_ - theta1_ < kSlack; }

DiscPair discs_from_angles(double theta1, double theta2) {
  return DiscPair::from_angles(theta1, theta2);
}

std::pair<double, double> angles_from_discs(double m, double R) {
  DiscPair pair = DiscPair::from_discs(m, R);
  return {pair.theta1_star(), pair.theta2_star()};
}

PolarPoint gamma2_to_b1_polar(const DiscPair& pair, double theta_tilde) {
  const double t2 = pair.theta2_star();
  if (theta_tilde < t2 - kSlack || theta_tilde > 2.0 * kPi - t2 + kSlack)
    throw std::domain_error("theta_tilde outside the Gamma2 arc");
  if (std::abs(theta_tilde - t2) <= kSlack) return {pair.theta1_star(), 1.0};
  if (std::abs(theta_tilde - (2.0 * kPi - t2)) <= kSlack)
    return {-pair.theta1_star(), 1.0};

  const double x = pair.m() + pair.R() * std::cos(theta_tilde);
  const double y = pair.R() * std::sin(theta_tilde);
  double r = std::hypot(x, y);
  if (r > 1.0) r = 1.0;  // roundoff near the endpoints
  return {std::atan2(y, x), r};
}

PolarPoint gamma1_to_b2_polar(const DiscPair& pair, double theta) {
  const double t1 = pair.theta1_star();
  // normalize to (-pi, pi]
  double th = std::remainder(theta, 2.0 * kPi);
  if (th < -t1 - kSlack || th > t1 + kSlack)
    throw std::domain_error("theta outside the Gamma1 arc");
  if (std::abs(th - t1) <= kSlack) return {pair.theta2_star(), 1.0};
  if (std::abs(th + t1) <= kSlack) return {-pair.theta2_star(), 1.0};

  const double x = std::cos(th) - pair.m();
  const double y = std::sin(th);
  double rho = std::hypot(x, y) / pair.R();
  if (rho > 1.0) rho = 1.0;
  return {std::atan2(y, x), rho};
}

double contraction_exact(double theta1, double theta2) {
  check_angles(theta1, theta2);
  return std::max(0.0, (theta2 - theta1) / kPi);
}

double contraction_symmetric(double theta1) {
  if (!(theta1 > 0.0 && theta1 < 0.5 * kPi))
    throw std::domain_error("theta1 must lie in (0, pi/2)");
  // the equal-radius case theta2 = pi - theta1, routed through the general
  // formula so the two agree bit-for-bit
  return contraction_exact(theta1, kPi - theta1);
}

double contraction_unequal(double theta1, double R) {
  if (!(theta1 > 0.0 && theta1 < kPi)) throw std::domain_error("theta1 must lie in (0, pi)");
  if (!(R > 1.0)) throw std::domain_error("R must exceed 1");
  return 1.0 - (std::asin(std::sin(theta1) / R) + theta1) / kPi;
}

namespace {

// nearest integer with exact-half ties resolved downward
long round_half_down(double x) { return static_cast<long>(std::ceil(x - 0.5)); }

}  // namespace

SnappedScenario snap_to_grids(double theta1, double theta2, int n1, int n2) {
  check_angles(theta1, theta2);
  if (n1 < 6 || n1 % 2 != 0 || n2 < 6 || n2 % 2 != 0)
    throw std::domain_error("node counts must be even and at least 6");

  const double h1 = 2.0 * kPi / n1;
  const double h2 = 2.0 * kPi / n2;
  long ell1 = round_half_down(theta1 / h1);
  ell1 = std::clamp(ell1, 1L, static_cast<long>(n1 / 2 - 1));

  // theta2_int >= theta1_int  <=>  ell2 * n1 >= ell1 * n2
  const long lo = (ell1 * n2 + n1 - 1) / n1;
  const long hi = n2 / 2 - 1;
  if (lo > hi)
    throw infeasible_error("no admissible grid index for theta2 (ell2 range empty)");
  long ell2 = round_half_down(theta2 / h2);
  ell2 = std::clamp(ell2, lo, hi);

  const double t1i = ell1 * h1;
  const double t2i = ell2 * h2;
  return SnappedScenario{discs_from_angles(t1i, t2i),
                         GridConfig{n1, n2},
                         t1i,
                         t2i,
                         static_cast<int>(ell1),
                         static_cast<int>(ell2)};
}

int matched_n2(double R, int n1, double factor) {
  const int half = static_cast<int>(std::lround(0.5 * factor * R * n1));
  return std::max(6, 2 * half);
}

}  // namespace sfdd

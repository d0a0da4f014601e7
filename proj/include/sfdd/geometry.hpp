#pragma once

#include <array>
#include <utility>

namespace sfdd {

/** A point in polar coordinates of one of the two discs. For disc 1 the
 * radius is absolute (unit disc); for disc 2 it is normalized by R, so
 * r = 1 is the disc boundary in both frames. */
struct PolarPoint {
  double theta;
  double r;
};

/** Two overlapping discs: B1 the unit disc at the origin, B2 of radius R
 * centered at (m, 0). The intersection points z1/z2 sit at polar angle
 * +-theta1_star seen from B1 and +-theta2_star seen from B2. A pair is
 * immutable once built and all derived quantities are consistent:
 *   R = sin(theta1*)/sin(theta2*),  z1 identical from both frames.
 * The coincident-disc boundary case (theta1* = theta2*, m = 0, R = 1) is
 * representable and flagged degenerate. */
class DiscPair {
 public:
  static DiscPair from_angles(double theta1_star, double theta2_star);
  static DiscPair from_discs(double m, double R);

  double theta1_star() const { return theta1_; }
  double theta2_star() const { return theta2_; }
  double m() const { return m_; }
  double R() const { return R_; }

  /** Maximum-norm contraction constant (theta2* - theta1*)/pi of the
   * alternating-solve iteration with exact subdomain solves. */
  double contraction() const;

  /** Upper intersection point z1 in Cartesian coordinates. */
  std::array<double, 2> intersection_point() const;

  bool degenerate() const;

 private:
  DiscPair(double t1, double t2, double m, double R)
      : theta1_(t1), theta2_(t2), m_(m), R_(R) {}
  double theta1_, theta2_, m_, R_;
};

/** Build the disc pair from the two intersection angles.
 * Requires 0 < theta1 <= theta2 < pi. */
DiscPair discs_from_angles(double theta1, double theta2);

/** Recover (theta1*, theta2*) from (m, R) by the cosine rule. Requires a
 * proper overlap: -1 < m - R < 1 and m + R > 1; otherwise throws a
 * domain error naming the violated condition (disjoint discs or one disc
 * containing the other). */
std::pair<double, double> angles_from_discs(double m, double R);

/** B1-polar coordinates of the point of Gamma2 at B2-angle theta_tilde.
 * theta_tilde must lie in [theta2*, 2pi - theta2*]; the returned angle is
 * in (-pi, pi] and r <= 1, with r = 1 exactly at the arc endpoints. */
PolarPoint gamma2_to_b1_polar(const DiscPair& pair, double theta_tilde);

/** Normalized B2-polar coordinates of the point of Gamma1 at B1-angle
 * theta in [-theta1*, theta1*]; rho <= 1 with rho = 1 exactly at the
 * endpoints. */
PolarPoint gamma1_to_b2_polar(const DiscPair& pair, double theta);

/** Contraction constants: (theta2-theta1)/pi, the equal-radius special
 * case 1 - 2 theta1/pi, and the unequal-radius generalization
 * 1 - (asin(sin(theta1)/R) + theta1)/pi. */
double contraction_exact(double theta1, double theta2);
double contraction_symmetric(double theta1);
double contraction_unequal(double theta1, double R);

struct GridConfig {
  int n1;  // nodes on the boundary of B1, even, >= 6
  int n2;  // nodes on the boundary of B2, even, >= 6
};

/** A geometry whose intersection points coincide with boundary grid nodes:
 * theta1_int = ell1 * 2pi/n1 and theta2_int = ell2 * 2pi/n2 with
 * theta2_int >= theta1_int. */
struct SnappedScenario {
  DiscPair base;  // rebuilt from the snapped angles
  GridConfig grid;
  double theta1_int;
  double theta2_int;
  int ell1;
  int ell2;
};

/** Move (theta1, theta2) to the nearest admissible grid angles. Rounding
 * ties resolve to the smaller index; ell2 is clamped upward so that
 * theta2_int >= theta1_int. Throws infeasible_error when no admissible
 * ell2 exists. */
SnappedScenario snap_to_grids(double theta1, double theta2, int n1, int n2);

/** Even integer closest to factor * R * n1 (grid-matching policy for the
 * second disc; ties round up). */
int matched_n2(double R, int n1, double factor = 1.0);

}  // namespace sfdd

#include "sfdd/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "sfdd/errors.hpp"

namespace sfdd {

namespace {

// 15-point Kronrod nodes (positive half) and weights; the embedded 7-point
// Gauss rule lives on the odd-indexed nodes.
constexpr double kKronrodX[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr double kKronrodW[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kGaussW[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct PanelResult {
  double value;
  double error;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fc = f(c);
  double ik = kKronrodW[7] * fc;
  double ig = kGaussW[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double fl = f(c - h * kKronrodX[i]);
    const double fr = f(c + h * kKronrodX[i]);
    ik += kKronrodW[i] * (fl + fr);
    if (i % 2 == 1) ig += kGaussW[i / 2] * (fl + fr);
  }
  ik *= h;
  ig *= h;
  return {ik, std::abs(ik - ig)};
}

struct Interval {
  double a, b, value, error;
  bool operator<(const Interval& o) const { return error < o.error; }
};

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadOptions& opt) {
  return integrate_split(f, a, b, {}, opt);
}

double integrate_split(const std::function<double(double)>& f, double a, double b,
                       const std::vector<double>& splits, const QuadOptions& opt) {
  if (a == b) return 0.0;

  std::vector<double> edges{a, b};
  for (double s : splits)
    if (s > a && s < b) edges.push_back(s);
  std::sort(edges.begin(), edges.end());

  std::priority_queue<Interval> queue;
  double total = 0.0, total_err = 0.0;
  for (size_t i = 0; i + 1 < edges.size(); ++i) {
    auto r = gk15(f, edges[i], edges[i + 1]);
    queue.push({edges[i], edges[i + 1], r.value, r.error});
    total += r.value;
    total_err += r.error;
  }

  int used = static_cast<int>(queue.size());
  while (total_err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
    if (used >= opt.max_intervals)
      throw accuracy_error("integrate: interval budget exhausted before tolerance");
    Interval worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    auto left = gk15(f, worst.a, mid);
    auto right = gk15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    queue.push({worst.a, mid, left.value, left.error});
    queue.push({mid, worst.b, right.value, right.error});
    ++used;
  }
  return total;
}

namespace {

// 16-point Gauss-Legendre nodes (positive half) and weights.
constexpr double kGl16X[8] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
    0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
constexpr double kGl16W[8] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

}  // namespace

void gauss_legendre_panels(double a, double b, int panels,
                           std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.clear();
  weights.clear();
  nodes.reserve(16 * panels);
  weights.reserve(16 * panels);
  const double step = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double c = a + (p + 0.5) * step;
    const double h = 0.5 * step;
    for (int i = 0; i < 8; ++i) {
      nodes.push_back(c - h * kGl16X[i]);
      weights.push_back(h * kGl16W[i]);
      nodes.push_back(c + h * kGl16X[i]);
      weights.push_back(h * kGl16W[i]);
    }
  }
}

double integrate_panels(const std::function<double(double)>& f, double a, double b,
                        int panels) {
  std::vector<double> x, w;
  gauss_legendre_panels(a, b, panels, x, w);
  double sum = 0.0;
  for (size_t i = 0; i < x.size(); ++i) sum += w[i] * f(x[i]);
  return sum;
}

}  // namespace sfdd

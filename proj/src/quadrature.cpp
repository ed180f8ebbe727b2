#include "sae/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <stdexcept>

namespace sae {

GaussLegendreRule gauss_legendre(std::size_t n) {
  if (n == 0)
    throw std::invalid_argument("gauss_legendre: n must be positive");
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    // Tricomi initial guess for the i-th largest root
    double x = std::cos(std::numbers::pi * (double(i) + 0.75) /
                        (double(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double pk =
            ((2.0 * double(k) - 1.0) * x * p1 - (double(k) - 1.0) * p0) /
            double(k);
        p0 = p1;
        p1 = pk;
      }
      dp = double(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16)
        break;
    }
    // recompute derivative at the converged root
    double p0 = 1.0, p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
      const double pk =
          ((2.0 * double(k) - 1.0) * x * p1 - (double(k) - 1.0) * p0) /
          double(k);
      p0 = p1;
      p1 = pk;
    }
    dp = double(n) * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1)
    rule.nodes[n / 2] = 0.0;
  return rule;
}

GaussLegendreRule map_rule(const GaussLegendreRule &rule, double a, double b) {
  GaussLegendreRule out;
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  out.nodes.reserve(rule.nodes.size());
  out.weights.reserve(rule.weights.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    out.nodes.push_back(mid + half * rule.nodes[i]);
    out.weights.push_back(half * rule.weights[i]);
  }
  return out;
}

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule.
constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment &o) const { return error < o.error; }
};

Segment gk15(const std::function<double(double)> &f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kron = fc * wgk[7];
  double gauss = fc * wg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * xgk[j];
    const double fs = f(c - dx) + f(c + dx);
    kron += wgk[j] * fs;
    if (j % 2 == 1)
      gauss += wg[j / 2] * fs;
  }
  kron *= h;
  gauss *= h;
  return {a, b, kron, std::abs(kron - gauss)};
}

} // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)> &f,
                                    double a, double b, double tol,
                                    std::size_t max_intervals) {
  QuadratureResult res;
  if (a == b) {
    res.converged = true;
    return res;
  }
  std::priority_queue<Segment> heap;
  const Segment first = gk15(f, a, b);
  heap.push(first);
  res.evaluations = 15;
  double err = first.error;
  while (err > tol && heap.size() < max_intervals) {
    const Segment s = heap.top();
    heap.pop();
    const double m = 0.5 * (s.a + s.b);
    if (m <= s.a || m >= s.b) {
      heap.push(s);
      break; // interval below machine resolution
    }
    const Segment l = gk15(f, s.a, m);
    const Segment r = gk15(f, m, s.b);
    res.evaluations += 30;
    err += l.error + r.error - s.error;
    heap.push(l);
    heap.push(r);
  }
  // re-sum in position order so the result is independent of heap order
  double total = 0.0;
  err = 0.0;
  std::vector<Segment> segs;
  segs.reserve(heap.size());
  while (!heap.empty()) {
    segs.push_back(heap.top());
    heap.pop();
  }
  std::sort(segs.begin(), segs.end(),
            [](const Segment &x, const Segment &y) { return x.a < y.a; });
  for (const auto &s : segs) {
    total += s.value;
    err += s.error;
  }
  res.value = total;
  res.error = err;
  res.converged = err <= tol;
  return res;
}

} // namespace sae

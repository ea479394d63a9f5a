#include "wg/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wg {

namespace {

// Any degree up to this is supported; the collapsed rule grows as O(degree^2)
// points so there is no reason to go higher in this solver.
constexpr int kMaxDegree = 50;

void check_degree(int degree) {
  if (degree < 0 || degree > kMaxDegree)
    throw std::invalid_argument("quadrature: unsupported degree " + std::to_string(degree));
}

}  // namespace

GaussRule gauss_legendre(int npoints) {
  if (npoints < 1) throw std::invalid_argument("gauss_legendre: need at least 1 point");
  GaussRule rule;
  rule.nodes.resize(npoints);
  rule.weights.resize(npoints);
  const int n = npoints;
  // Newton iteration on P_n, symmetric pairs.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      // Legendre recurrence for P_n(x) and P_n'(x).
      double p0 = 1.0, p1 = x;
      for (int m = 2; m <= n; ++m) {
        double p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;  // ascending order
    rule.weights[i] = w;
    rule.nodes[n - 1 - i] = x;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

GaussRule edge_rule(int degree) {
  check_degree(degree);
  return gauss_legendre((degree + 2) / 2);
}

QuadratureRule tri_quadrature(const Triangle& tri, int degree) {
  check_degree(degree);
  // Duffy collapse of the reference triangle onto the unit square:
  //   x = u(1-v), y = v, Jacobian (1-v),
  // which raises the polynomial degree in v by one.
  const int m = (degree + 3) / 2;  // ceil((degree+2)/2)
  const GaussRule g = gauss_legendre(m);

  QuadratureRule rule;
  rule.exactness = degree;
  rule.points.reserve(m * m);
  rule.weights.reserve(m * m);
  const Vec2 d1 = tri.v[1] - tri.v[0];
  const Vec2 d2 = tri.v[2] - tri.v[0];
  const double jac = 2.0 * tri.area;  // reference area 1/2
  for (int i = 0; i < m; ++i) {
    const double u = 0.5 * (g.nodes[i] + 1.0);
    const double wu = 0.5 * g.weights[i];
    for (int j = 0; j < m; ++j) {
      const double v = 0.5 * (g.nodes[j] + 1.0);
      const double wv = 0.5 * g.weights[j];
      const double xr = u * (1.0 - v);
      const double yr = v;
      rule.points.push_back(tri.v[0] + xr * d1 + yr * d2);
      rule.weights.push_back(jac * wu * wv * (1.0 - v));
    }
  }
  return rule;
}

EdgeQuadrature edge_quadrature(const EdgeGeometry& edge, int degree) {
  const GaussRule g = edge_rule(degree);
  EdgeQuadrature rule;
  rule.exactness = degree;
  rule.s = g.nodes;
  rule.points.reserve(g.nodes.size());
  rule.weights.reserve(g.nodes.size());
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    rule.points.push_back(edge.point(g.nodes[i]));
    rule.weights.push_back(0.5 * edge.length * g.weights[i]);
  }
  return rule;
}

}  // namespace wg

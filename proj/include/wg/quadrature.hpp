// Gauss-Legendre rules on edges and collapsed-square rules on triangles.

#pragma once

#include <vector>

#include "wg/geometry.hpp"

namespace wg {

/// 1D Gauss-Legendre rule on [-1,1]; n points integrate degree 2n-1 exactly.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussRule gauss_legendre(int npoints);

/// Gauss rule sized for the requested polynomial degree: ceil((degree+1)/2)
/// points on [-1,1].
GaussRule edge_rule(int degree);

/// Quadrature on a physical triangle. Weights sum to the element area.
struct QuadratureRule {
  std::vector<Vec2> points;
  std::vector<double> weights;
  int exactness = 0;
};

QuadratureRule tri_quadrature(const Triangle& tri, int degree);

/// Quadrature on a physical edge; keeps the [-1,1] parameter values of the
/// points so edge (Legendre) bases can be evaluated directly. Weights sum
/// to the edge length.
struct EdgeQuadrature {
  std::vector<double> s;
  std::vector<Vec2> points;
  std::vector<double> weights;
  int exactness = 0;
};

EdgeQuadrature edge_quadrature(const EdgeGeometry& edge, int degree);

}  // namespace wg

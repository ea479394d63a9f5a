// Polynomial bases and L2 projections.
//
// Triangles carry centroid-shifted, h_T-scaled monomials, which keeps the
// element mass matrices well conditioned under refinement. Edges carry
// Legendre polynomials in the arclength parameter, so edge mass matrices
// are diagonal and the edge projection Q_b is a diagonal solve.

#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "wg/geometry.hpp"

namespace wg {

using ScalarField = std::function<double(Vec2)>;
using VectorField = std::function<Vec2(Vec2)>;

/// Basis data evaluated at a set of points: one row per point, one column
/// per basis function.
struct BasisValues {
  Eigen::MatrixXd val;
  Eigen::MatrixXd dx;
  Eigen::MatrixXd dy;
  Eigen::MatrixXd lap;
};

/// Scaled monomial basis ((x-x_c)/h_T)^a ((y-y_c)/h_T)^b on a triangle,
/// |a+b| <= degree, ordered by total degree.
class TriBasis {
 public:
  TriBasis(Triangle geometry, int degree);

  int degree() const { return degree_; }
  int size() const { return static_cast<int>(exponents_.size()); }
  const Triangle& geometry() const { return geometry_; }

  BasisValues eval(const std::vector<Vec2>& points) const;

  /// Mass matrix with entries (phi_i, phi_j)_T, integrated with a rule
  /// exact for the polynomial integrands.
  Eigen::MatrixXd mass_matrix() const;

  /// Moment vector (f, phi_i)_T at the given quadrature degree.
  Eigen::VectorXd moments(const ScalarField& f, int quad_degree) const;

  /// Evaluate the polynomial with the given coefficients.
  double value(const Eigen::VectorXd& coeffs, Vec2 p) const;
  Vec2 gradient(const Eigen::VectorXd& coeffs, Vec2 p) const;
  double laplacian_value(const Eigen::VectorXd& coeffs, Vec2 p) const;

 private:
  Triangle geometry_;
  int degree_;
  std::vector<std::array<int, 2>> exponents_;
};

/// Legendre basis of degree <= r on an edge, in the parameter s in [-1,1]
/// of the global a->b orientation.
class EdgeBasis {
 public:
  EdgeBasis(EdgeGeometry geometry, int degree);

  int degree() const { return degree_; }
  int size() const { return degree_ + 1; }
  const EdgeGeometry& geometry() const { return geometry_; }

  /// Values at parameter points: one row per point, one column per function.
  Eigen::MatrixXd eval_param(const std::vector<double>& s) const;

  /// Diagonal of the edge mass matrix: |e|/(2m+1).
  Eigen::VectorXd mass_diagonal() const;

  double value(const Eigen::VectorXd& coeffs, double s) const;

 private:
  EdgeGeometry geometry_;
  int degree_;
};

/// L2 projection onto the basis: solves M c = (f, phi). Throws if the mass
/// matrix is numerically singular (degenerate element).
Eigen::VectorXd project_tri(const TriBasis& basis, const ScalarField& f, int quad_degree);

/// L2 projection onto P_degree(e): diagonal solve thanks to orthogonality.
Eigen::VectorXd project_edge(const EdgeBasis& basis, const ScalarField& f, int quad_degree);

/// Legendre values P_0..P_degree at s.
void legendre_values(int degree, double s, double* out);

}  // namespace wg

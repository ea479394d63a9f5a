#include "wg/basis.hpp"

#include <cmath>
#include <stdexcept>

#include "wg/quadrature.hpp"

namespace wg {

TriBasis::TriBasis(Triangle geometry, int degree) : geometry_(geometry), degree_(degree) {
  if (degree < 0) throw std::invalid_argument("TriBasis: negative degree");
  if (!(geometry_.area > 0.0) || !(geometry_.diameter > 0.0))
    throw std::invalid_argument("TriBasis: degenerate element geometry");
  exponents_.reserve((degree + 1) * (degree + 2) / 2);
  for (int d = 0; d <= degree; ++d)
    for (int b = 0; b <= d; ++b) exponents_.push_back({d - b, b});
}

BasisValues TriBasis::eval(const std::vector<Vec2>& points) const {
  const int np = static_cast<int>(points.size());
  const int n = size();
  BasisValues out;
  out.val.resize(np, n);
  out.dx.resize(np, n);
  out.dy.resize(np, n);
  out.lap.resize(np, n);

  const double invh = 1.0 / geometry_.diameter;
  // Powers of the scaled coordinates, with xi^-1, xi^-2 treated as 0.
  std::vector<double> px(degree_ + 1), py(degree_ + 1);
  for (int p = 0; p < np; ++p) {
    const double xi = (points[p].x - geometry_.centroid.x) * invh;
    const double eta = (points[p].y - geometry_.centroid.y) * invh;
    px[0] = py[0] = 1.0;
    for (int d = 1; d <= degree_; ++d) {
      px[d] = px[d - 1] * xi;
      py[d] = py[d - 1] * eta;
    }
    auto pw = [](const std::vector<double>& v, int e) { return e < 0 ? 0.0 : v[e]; };
    for (int j = 0; j < n; ++j) {
      const int a = exponents_[j][0], b = exponents_[j][1];
      out.val(p, j) = px[a] * py[b];
      out.dx(p, j) = a * pw(px, a - 1) * py[b] * invh;
      out.dy(p, j) = b * px[a] * pw(py, b - 1) * invh;
      out.lap(p, j) = (a * (a - 1) * pw(px, a - 2) * py[b] + b * (b - 1) * px[a] * pw(py, b - 2)) *
                      invh * invh;
    }
  }
  return out;
}

Eigen::MatrixXd TriBasis::mass_matrix() const {
  const QuadratureRule q = tri_quadrature(geometry_, 2 * degree_);
  const BasisValues bv = eval(q.points);
  Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(q.weights.data(), q.weights.size());
  Eigen::MatrixXd mass = bv.val.transpose() * w.asDiagonal() * bv.val;
  return 0.5 * (mass + mass.transpose());
}

Eigen::VectorXd TriBasis::moments(const ScalarField& f, int quad_degree) const {
  const QuadratureRule q = tri_quadrature(geometry_, quad_degree);
  const BasisValues bv = eval(q.points);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(size());
  for (std::size_t i = 0; i < q.points.size(); ++i)
    b += q.weights[i] * f(q.points[i]) * bv.val.row(i).transpose();
  return b;
}

double TriBasis::value(const Eigen::VectorXd& coeffs, Vec2 p) const {
  const BasisValues bv = eval({p});
  return bv.val.row(0).dot(coeffs);
}

Vec2 TriBasis::gradient(const Eigen::VectorXd& coeffs, Vec2 p) const {
  const BasisValues bv = eval({p});
  return {bv.dx.row(0).dot(coeffs), bv.dy.row(0).dot(coeffs)};
}

double TriBasis::laplacian_value(const Eigen::VectorXd& coeffs, Vec2 p) const {
  const BasisValues bv = eval({p});
  return bv.lap.row(0).dot(coeffs);
}

void legendre_values(int degree, double s, double* out) {
  out[0] = 1.0;
  if (degree >= 1) out[1] = s;
  for (int m = 2; m <= degree; ++m)
    out[m] = ((2.0 * m - 1.0) * s * out[m - 1] - (m - 1.0) * out[m - 2]) / m;
}

EdgeBasis::EdgeBasis(EdgeGeometry geometry, int degree) : geometry_(geometry), degree_(degree) {
  if (degree < 0) throw std::invalid_argument("EdgeBasis: negative degree");
  if (!(geometry_.length > 0.0)) throw std::invalid_argument("EdgeBasis: zero-length edge");
}

Eigen::MatrixXd EdgeBasis::eval_param(const std::vector<double>& s) const {
  Eigen::MatrixXd out(s.size(), size());
  std::vector<double> leg(size());
  for (std::size_t p = 0; p < s.size(); ++p) {
    legendre_values(degree_, s[p], leg.data());
    for (int m = 0; m < size(); ++m) out(p, m) = leg[m];
  }
  return out;
}

Eigen::VectorXd EdgeBasis::mass_diagonal() const {
  Eigen::VectorXd diag(size());
  for (int m = 0; m < size(); ++m) diag[m] = geometry_.length / (2.0 * m + 1.0);
  return diag;
}

double EdgeBasis::value(const Eigen::VectorXd& coeffs, double s) const {
  std::vector<double> leg(size());
  legendre_values(degree_, s, leg.data());
  double v = 0.0;
  for (int m = 0; m < size(); ++m) v += coeffs[m] * leg[m];
  return v;
}

Eigen::VectorXd project_tri(const TriBasis& basis, const ScalarField& f, int quad_degree) {
  const Eigen::MatrixXd mass = basis.mass_matrix();
  Eigen::LLT<Eigen::MatrixXd> llt(mass);
  if (llt.info() != Eigen::Success || llt.rcond() < 1e-12)
    throw std::runtime_error("project_tri: mass matrix numerically singular");
  return llt.solve(basis.moments(f, quad_degree));
}

Eigen::VectorXd project_edge(const EdgeBasis& basis, const ScalarField& f, int quad_degree) {
  const EdgeQuadrature q = edge_quadrature(basis.geometry(), quad_degree);
  const Eigen::MatrixXd vals = basis.eval_param(q.s);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(basis.size());
  for (std::size_t i = 0; i < q.points.size(); ++i)
    b += q.weights[i] * f(q.points[i]) * vals.row(i).transpose();
  return b.cwiseQuotient(basis.mass_diagonal());
}

}  // namespace wg

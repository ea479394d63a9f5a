#include "wg/problems.hpp"

#include <cmath>
#include <stdexcept>

namespace wg {

namespace {

// 1D factors of the polynomial cases: q(t) = t^2(1-t)^2 and w(t) = t^2(1-t^2)
// with the derivatives needed for gradients, Laplacians and loads.
double q(double t) { return t * t * (1.0 - t) * (1.0 - t); }
double dq(double t) { return 2.0 * t * (t - 1.0) * (2.0 * t - 1.0); }
double ddq(double t) { return 2.0 * (6.0 * t * t - 6.0 * t + 1.0); }
// d4q/dt4 = 24

double w(double t) { return t * t * (1.0 - t * t); }
double dw(double t) { return 2.0 * t - 4.0 * t * t * t; }
double ddw(double t) { return 2.0 - 12.0 * t * t; }
// d4w/dt4 = -24

ManufacturedSolution poly_clamped() {
  ManufacturedSolution s;
  s.id = "1";
  s.description = "x^2(1-x)^2 y^2(1-y)^2, clamped unit square";
  s.regularity = "smooth (polynomial), u = du/dn = 0 on the boundary";
  s.u = [](Vec2 p) { return q(p.x) * q(p.y); };
  s.grad = [](Vec2 p) { return Vec2{dq(p.x) * q(p.y), q(p.x) * dq(p.y)}; };
  s.laplacian = [](Vec2 p) { return ddq(p.x) * q(p.y) + q(p.x) * ddq(p.y); };
  s.f = [](Vec2 p) { return 24.0 * q(p.y) + 2.0 * ddq(p.x) * ddq(p.y) + 24.0 * q(p.x); };
  return s;
}

ManufacturedSolution poly_nonclamped() {
  ManufacturedSolution s;
  s.id = "1v";
  s.description = "x^2(1-x)^2 y^2(1-y^2), unit square";
  s.regularity = "smooth (polynomial), du/dn nonzero at y = 1";
  s.u = [](Vec2 p) { return q(p.x) * w(p.y); };
  s.grad = [](Vec2 p) { return Vec2{dq(p.x) * w(p.y), q(p.x) * dw(p.y)}; };
  s.laplacian = [](Vec2 p) { return ddq(p.x) * w(p.y) + q(p.x) * ddw(p.y); };
  s.f = [](Vec2 p) { return 24.0 * w(p.y) + 2.0 * ddq(p.x) * ddw(p.y) - 24.0 * q(p.x); };
  return s;
}

ManufacturedSolution sine() {
  ManufacturedSolution s;
  s.id = "2";
  s.description = "sin(pi x) sin(pi y), unit square";
  s.regularity = "analytic";
  const double pi = M_PI;
  s.u = [pi](Vec2 p) { return std::sin(pi * p.x) * std::sin(pi * p.y); };
  s.grad = [pi](Vec2 p) {
    return Vec2{pi * std::cos(pi * p.x) * std::sin(pi * p.y),
                pi * std::sin(pi * p.x) * std::cos(pi * p.y)};
  };
  s.laplacian = [pi](Vec2 p) {
    return -2.0 * pi * pi * std::sin(pi * p.x) * std::sin(pi * p.y);
  };
  s.f = [pi](Vec2 p) {
    return 4.0 * pi * pi * pi * pi * std::sin(pi * p.x) * std::sin(pi * p.y);
  };
  return s;
}

// Polar angle in [0, 3pi/2] measured from the positive x-axis, so the
// excluded quadrant of the L-shape is never hit.
double lshape_theta(Vec2 p) {
  const double t = std::atan2(p.y, p.x);
  return t < 0.0 ? t + 2.0 * M_PI : t;
}

ManufacturedSolution corner_singularity() {
  ManufacturedSolution s;
  s.id = "3";
  s.description = "r^(5/3) sin(5 theta/3), L-shaped domain";
  s.regularity = "H^(8/3 - eps): harmonic, gradient singular at the reentrant corner";
  s.zero_load = true;
  s.u = [](Vec2 p) {
    const double r = norm(p);
    if (r == 0.0) return 0.0;
    return std::pow(r, 5.0 / 3.0) * std::sin(5.0 / 3.0 * lshape_theta(p));
  };
  // grad u = u_r e_r + (u_theta / r) e_theta; the r^(2/3) factor vanishes
  // in the limit r -> 0.
  s.grad = [](Vec2 p) {
    const double r = norm(p);
    if (r == 0.0) return Vec2{0.0, 0.0};
    const double theta = lshape_theta(p);
    const double a = 5.0 / 3.0;
    const double c = a * std::pow(r, 2.0 / 3.0);
    const Vec2 e_r{std::cos(theta), std::sin(theta)};
    const Vec2 e_t{-std::sin(theta), std::cos(theta)};
    return c * std::sin(a * theta) * e_r + c * std::cos(a * theta) * e_t;
  };
  s.laplacian = [](Vec2) { return 0.0; };
  s.f = [](Vec2) { return 0.0; };
  return s;
}

}  // namespace

ManufacturedSolution manufactured_solution(const std::string& id) {
  if (id == "1") return poly_clamped();
  if (id == "1v") return poly_nonclamped();
  if (id == "2") return sine();
  if (id == "3") return corner_singularity();
  throw std::invalid_argument("manufactured_solution: unknown case '" + id + "'");
}

Mesh example_mesh(const std::string& id, int level) {
  if (level < 1) throw std::invalid_argument("example_mesh: level must be >= 1");
  if (id == "3") {
    Mesh m = build_lshape_initial();
    for (int i = 1; i < level; ++i) m = refine_uniform(m);
    return m;
  }
  manufactured_solution(id);  // reject unknown ids
  return build_unit_square_mesh(4 << (level - 1));
}

double example_h(const std::string& id, int level) {
  if (level < 1) throw std::invalid_argument("example_h: level must be >= 1");
  if (id == "3") return std::sqrt(2.0) * std::pow(0.5, level - 1);
  return 1.0 / (4 << (level - 1));
}

}  // namespace wg

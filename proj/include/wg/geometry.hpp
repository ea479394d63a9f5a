// Planar points, triangle element geometry, oriented edge geometry.

#pragma once

#include <array>
#include <cmath>

namespace wg {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

/// Rotate a vector by -90 degrees. Applied to the unit tangent of an edge
/// traversed a->b this yields the edge normal convention used throughout.
inline Vec2 rotate_cw(Vec2 a) { return {a.y, -a.x}; }

/// Geometry of a triangular element: vertices in counterclockwise order
/// plus the derived quantities used by the discretization. The element
/// size h_T is the diameter, i.e. the longest edge.
struct Triangle {
  std::array<Vec2, 3> v{};
  double area = 0.0;
  Vec2 centroid;
  double diameter = 0.0;  // h_T

  static Triangle from_vertices(Vec2 a, Vec2 b, Vec2 c) {
    Triangle t;
    t.v = {a, b, c};
    t.area = 0.5 * cross(b - a, c - a);
    t.centroid = (1.0 / 3.0) * (a + b + c);
    t.diameter = std::max({norm(b - a), norm(c - b), norm(a - c)});
    return t;
  }
};

/// Geometry of a mesh edge. Endpoints are stored in the global orientation
/// (lower vertex id first); the unit normal is the a->b tangent rotated by
/// -90 degrees and is shared by both adjacent elements.
struct EdgeGeometry {
  Vec2 a;
  Vec2 b;
  Vec2 normal;
  double length = 0.0;

  static EdgeGeometry from_endpoints(Vec2 a, Vec2 b) {
    EdgeGeometry e;
    e.a = a;
    e.b = b;
    e.length = norm(b - a);
    e.normal = rotate_cw((1.0 / e.length) * (b - a));
    return e;
  }

  /// Point at parameter s in [-1,1], with s=-1 at a and s=+1 at b.
  Vec2 point(double s) const { return 0.5 * (1.0 - s) * a + 0.5 * (1.0 + s) * b; }
};

}  // namespace wg

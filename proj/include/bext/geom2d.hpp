#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "bext/angle.hpp"
#include "bext/lift_expr.hpp"

namespace bext {

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PlanarPoint {
  double x = 0.0;
  double y = 0.0;
};

inline PlanarPoint operator+(PlanarPoint a, PlanarPoint b) { return {a.x + b.x, a.y + b.y}; }
inline PlanarPoint operator-(PlanarPoint a, PlanarPoint b) { return {a.x - b.x, a.y - b.y}; }
inline PlanarPoint operator*(double s, PlanarPoint p) { return {s * p.x, s * p.y}; }
inline double dot(PlanarPoint a, PlanarPoint b) { return a.x * b.x + a.y * b.y; }
inline double cross(PlanarPoint a, PlanarPoint b) { return a.x * b.y - a.y * b.x; }
inline double norm(PlanarPoint p) { return std::hypot(p.x, p.y); }
inline double distance(PlanarPoint a, PlanarPoint b) { return norm(a - b); }
inline PlanarPoint unit_vector(Angle theta) { return {theta.cos(), theta.sin()}; }

struct Circle {
  PlanarPoint center;
  double radius = 0.0;
};

enum class ShapeKind { kDisc, kPolygon, kRadial };

// Closed bounded planar region, star-shaped with respect to a distinguished
// interior anchor O. Three shapes are supported: a round disc, a simple
// polygon listed counterclockwise, and a radial graph r = rho(theta) about
// the origin. The default anchor is the disc center, the mean of the polygon
// kernel vertices, or the origin.
class PlanarDomain {
 public:
  static PlanarDomain disc(PlanarPoint center, double radius,
                           std::optional<PlanarPoint> anchor = std::nullopt);
  static PlanarDomain polygon(std::vector<PlanarPoint> vertices,
                              std::optional<PlanarPoint> anchor = std::nullopt);
  static PlanarDomain radial(LiftExpr rho);

  ShapeKind kind() const { return kind_; }
  PlanarPoint anchor() const { return anchor_; }
  const std::vector<PlanarPoint>& vertices() const { return vertices_; }
  PlanarPoint disc_center() const { return center_; }
  double disc_radius() const { return radius_; }
  const LiftExpr& rho() const;
  bool convex() const { return convex_; }

  bool contains(PlanarPoint q, double slack) const;
  // Distance from q to the boundary curve. Exact for discs and polygons;
  // for radial shapes a dense profile is refined by golden-section search.
  double boundary_distance(PlanarPoint q) const;

 private:
  PlanarDomain() = default;
  void build_radial_profile();

  ShapeKind kind_ = ShapeKind::kDisc;
  PlanarPoint anchor_;
  PlanarPoint center_;
  double radius_ = 0.0;
  std::vector<PlanarPoint> vertices_;
  bool convex_ = true;
  std::optional<LiftExpr> rho_;
  std::vector<PlanarPoint> radial_profile_;
};

inline constexpr std::uint64_t kDefaultGeomSeed = 0x5eed0fULL;

// Smallest circle containing every input point; randomized incremental
// construction, deterministic for a fixed seed.
Circle min_enclosing_circle(std::span<const PlanarPoint> points, std::uint64_t seed = kDefaultGeomSeed);

// Circumscribed circle of a domain: the disc itself, or the minimum
// enclosing circle of the polygon vertices / 1024 radial boundary samples.
Circle circumscribed_circle(const PlanarDomain& domain, std::uint64_t seed = kDefaultGeomSeed);

struct RayHit {
  PlanarPoint point;
  double applied_nudge = 0.0;  // angular adjustment used to escape degeneracy
};

// Unique intersection of the boundary with the ray from the anchor in
// direction theta. Degenerate polygon rays (vertex grazing, edge overlap)
// are retried under a deterministic angular nudge, which is reported.
RayHit ray_boundary_intersection(const PlanarDomain& domain, Angle theta);

// n boundary points at equally spaced ray angles 2 pi k / n.
std::vector<PlanarPoint> domain_boundary_samples(const PlanarDomain& domain, int n);

// Angle on the given circle hit by the ray from the anchor through q.
Angle project_to_circle(const PlanarDomain& domain, const Circle& circle, PlanarPoint q);

// Boundary parametrisation pair about the anchor: dh sends a boundary point
// to its circle angle along the anchor ray, dh^{-1} walks back.
class BoundaryParam {
 public:
  BoundaryParam(PlanarDomain domain, Circle circle);

  Angle to_circle(PlanarPoint boundary_point) const;
  PlanarPoint from_circle(Angle phi) const;
  Angle circle_angle_of_ray(Angle theta) const;
  Angle ray_angle_of_circle(Angle phi) const;
  PlanarPoint boundary_point(Angle theta) const;

  const PlanarDomain& domain() const { return domain_; }
  const Circle& circle() const { return circle_; }

 private:
  PlanarDomain domain_;
  Circle circle_;
};

BoundaryParam boundary_homeo(const PlanarDomain& domain, const Circle& circle);

}  // namespace bext

#include "bext/geom2d.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "bext/tolerances.hpp"

namespace bext {
namespace {

double polygon_scale(const std::vector<PlanarPoint>& vertices) {
  double s = 0.0;
  for (const PlanarPoint& v : vertices) s = std::max(s, norm(v));
  return s;
}

double signed_area(const std::vector<PlanarPoint>& vertices) {
  double a = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const PlanarPoint& p = vertices[i];
    const PlanarPoint& q = vertices[(i + 1) % vertices.size()];
    a += cross(p, q);
  }
  return 0.5 * a;
}

bool segments_cross(PlanarPoint a, PlanarPoint b, PlanarPoint c, PlanarPoint d) {
  double d1 = cross(b - a, c - a);
  double d2 = cross(b - a, d - a);
  double d3 = cross(d - c, a - c);
  double d4 = cross(d - c, b - c);
  return ((d1 > 0.0) != (d2 > 0.0)) && ((d3 > 0.0) != (d4 > 0.0));
}

double point_segment_distance(PlanarPoint q, PlanarPoint a, PlanarPoint b) {
  PlanarPoint e = b - a;
  double len2 = dot(e, e);
  if (len2 == 0.0) return distance(q, a);
  double s = std::clamp(dot(q - a, e) / len2, 0.0, 1.0);
  return distance(q, a + s * e);
}

// Kernel of a ccw polygon: clip the bounding box against the half-plane to
// the left of every directed edge.
std::vector<PlanarPoint> polygon_kernel(const std::vector<PlanarPoint>& vertices) {
  double lo_x = vertices[0].x, hi_x = vertices[0].x;
  double lo_y = vertices[0].y, hi_y = vertices[0].y;
  for (const PlanarPoint& v : vertices) {
    lo_x = std::min(lo_x, v.x);
    hi_x = std::max(hi_x, v.x);
    lo_y = std::min(lo_y, v.y);
    hi_y = std::max(hi_y, v.y);
  }
  std::vector<PlanarPoint> region{{lo_x, lo_y}, {hi_x, lo_y}, {hi_x, hi_y}, {lo_x, hi_y}};

  for (std::size_t i = 0; i < vertices.size() && !region.empty(); ++i) {
    PlanarPoint a = vertices[i];
    PlanarPoint e = vertices[(i + 1) % vertices.size()] - a;
    std::vector<PlanarPoint> next;
    for (std::size_t j = 0; j < region.size(); ++j) {
      PlanarPoint p = region[j];
      PlanarPoint q = region[(j + 1) % region.size()];
      double sp = cross(e, p - a);
      double sq = cross(e, q - a);
      if (sp >= 0.0) next.push_back(p);
      if ((sp > 0.0 && sq < 0.0) || (sp < 0.0 && sq > 0.0)) {
        next.push_back(p + (sp / (sp - sq)) * (q - p));
      }
    }
    region = std::move(next);
  }
  return region;
}

Circle circle_from_two(PlanarPoint a, PlanarPoint b) {
  PlanarPoint center = 0.5 * (a + b);
  return {center, std::max(distance(center, a), distance(center, b))};
}

Circle circle_from_three(PlanarPoint a, PlanarPoint b, PlanarPoint c) {
  PlanarPoint ab = b - a;
  PlanarPoint ac = c - a;
  double d = 2.0 * cross(ab, ac);
  double scale = norm(ab) * norm(ac);
  if (std::abs(d) <= 1e-12 * scale || scale == 0.0) {
    // (near-)collinear: the smallest circle is spanned by the extreme pair
    Circle best = circle_from_two(a, b);
    for (const Circle& cand : {circle_from_two(a, c), circle_from_two(b, c)}) {
      if (cand.radius > best.radius) best = cand;
    }
    return best;
  }
  double ab2 = dot(ab, ab);
  double ac2 = dot(ac, ac);
  PlanarPoint center{a.x + (ac.y * ab2 - ab.y * ac2) / d, a.y + (ab.x * ac2 - ac.x * ab2) / d};
  double r = std::max({distance(center, a), distance(center, b), distance(center, c)});
  return {center, r};
}

bool circle_covers(const Circle& c, PlanarPoint p) {
  return distance(c.center, p) <= c.radius + 1e-12 * (1.0 + c.radius);
}

constexpr double kRayEdgeSlack = 1e-13;

struct PolygonHit {
  double t = 0.0;
  PlanarPoint point;
  bool suspicious = false;
};

std::vector<PolygonHit> polygon_ray_hits(const std::vector<PlanarPoint>& vertices, PlanarPoint o,
                                         double theta) {
  PlanarPoint d{std::cos(theta), std::sin(theta)};
  std::vector<PolygonHit> hits;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    PlanarPoint a = vertices[i];
    PlanarPoint b = vertices[(i + 1) % vertices.size()];
    PlanarPoint e = b - a;
    double denom = cross(d, e);
    if (std::abs(denom) <= 1e-14 * norm(e)) {
      // parallel; an edge lying along the ray counts as degenerate
      if (std::abs(cross(d, a - o)) <= 1e-12 * (1.0 + norm(a - o))) {
        hits.push_back({0.0, a, true});
      }
      continue;
    }
    double t = cross(a - o, e) / denom;
    double s = cross(a - o, d) / denom;
    if (t <= 1e-9) continue;
    if (s < -kRayEdgeSlack || s > 1.0 + kRayEdgeSlack) continue;
    PolygonHit hit;
    hit.t = t;
    hit.point = a + std::clamp(s, 0.0, 1.0) * e;
    hit.suspicious = s < kRayEdgeSlack || s > 1.0 - kRayEdgeSlack;
    hits.push_back(hit);
  }
  return hits;
}

}  // namespace

PlanarDomain PlanarDomain::disc(PlanarPoint center, double radius,
                                std::optional<PlanarPoint> anchor) {
  if (!(radius > 0.0)) throw GeometryError("disc radius must be positive");
  PlanarDomain d;
  d.kind_ = ShapeKind::kDisc;
  d.center_ = center;
  d.radius_ = radius;
  d.anchor_ = anchor.value_or(center);
  d.convex_ = true;
  if (distance(d.anchor_, center) >= radius - kTol.containment_slack * (1.0 + radius)) {
    throw GeometryError("disc anchor must lie strictly inside");
  }
  return d;
}

PlanarDomain PlanarDomain::polygon(std::vector<PlanarPoint> vertices,
                                   std::optional<PlanarPoint> anchor) {
  if (vertices.size() < 3) throw GeometryError("polygon needs at least 3 vertices");
  if (signed_area(vertices) <= 0.0) throw GeometryError("polygon must be counterclockwise");
  std::size_t n = vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;  // adjacent edges share a vertex
      if (segments_cross(vertices[i], vertices[(i + 1) % n], vertices[j], vertices[(j + 1) % n])) {
        throw GeometryError("polygon is self-intersecting");
      }
    }
  }

  double scale = polygon_scale(vertices);
  std::vector<PlanarPoint> kernel = polygon_kernel(vertices);
  if (kernel.size() < 3 || std::abs(signed_area(kernel)) <= 1e-12 * (1.0 + scale * scale)) {
    throw GeometryError("polygon is not star-shaped: empty kernel");
  }

  PlanarDomain d;
  d.kind_ = ShapeKind::kPolygon;
  d.vertices_ = std::move(vertices);
  if (anchor.has_value()) {
    d.anchor_ = *anchor;
  } else {
    PlanarPoint sum{0.0, 0.0};
    for (const PlanarPoint& v : kernel) sum = sum + v;
    d.anchor_ = (1.0 / static_cast<double>(kernel.size())) * sum;
  }

  double margin = kTol.containment_slack * (1.0 + scale);
  for (std::size_t i = 0; i < d.vertices_.size(); ++i) {
    PlanarPoint a = d.vertices_[i];
    PlanarPoint e = d.vertices_[(i + 1) % d.vertices_.size()] - a;
    if (cross(e, d.anchor_ - a) <= margin * norm(e)) {
      throw GeometryError("anchor is not interior to the polygon kernel");
    }
  }

  d.convex_ = true;
  for (std::size_t i = 0; i < d.vertices_.size(); ++i) {
    PlanarPoint a = d.vertices_[i];
    PlanarPoint b = d.vertices_[(i + 1) % d.vertices_.size()];
    PlanarPoint c = d.vertices_[(i + 2) % d.vertices_.size()];
    if (cross(b - a, c - b) < -1e-12 * (1.0 + scale * scale)) {
      d.convex_ = false;
      break;
    }
  }
  return d;
}

PlanarDomain PlanarDomain::radial(LiftExpr rho) {
  PlanarDomain d;
  d.kind_ = ShapeKind::kRadial;
  d.anchor_ = {0.0, 0.0};
  d.convex_ = false;  // unknown in general; callers treat radial shapes as star-shaped only
  d.rho_ = std::move(rho);
  d.build_radial_profile();
  return d;
}

void PlanarDomain::build_radial_profile() {
  const LiftExpr& rho = *rho_;
  double lo = 0.0, hi = 0.0;
  radial_profile_.resize(kBoundaryDistanceTable + 1);
  for (int i = 0; i <= kBoundaryDistanceTable; ++i) {
    double theta = kTwoPi * i / kBoundaryDistanceTable;
    double r = rho(canonicalize_angle(theta));
    if (i == 0) {
      lo = hi = r;
    } else {
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    radial_profile_[static_cast<std::size_t>(i)] = {r * std::cos(theta), r * std::sin(theta)};
  }
  double seam = std::abs(rho(0.0) - rho(kTwoPi));
  if (seam > kTol.homeo_roundtrip * (1.0 + hi)) {
    throw GeometryError("radial profile is discontinuous at the seam");
  }
  if (!(lo > kTol.containment_slack * (1.0 + hi))) {
    throw GeometryError("radial profile must stay strictly positive");
  }
}

const LiftExpr& PlanarDomain::rho() const {
  if (!rho_.has_value()) throw GeometryError("domain has no radial profile");
  return *rho_;
}

bool PlanarDomain::contains(PlanarPoint q, double slack) const {
  switch (kind_) {
    case ShapeKind::kDisc:
      return distance(q, center_) <= radius_ + slack * (1.0 + radius_);
    case ShapeKind::kRadial: {
      double r = norm(q);
      if (r == 0.0) return true;
      double rho = (*rho_)(canonicalize_angle(std::atan2(q.y, q.x)));
      return r <= rho + slack * (1.0 + rho);
    }
    case ShapeKind::kPolygon: {
      double scale = polygon_scale(vertices_);
      if (boundary_distance(q) <= slack * (1.0 + scale)) return true;
      bool inside = false;
      for (std::size_t i = 0; i < vertices_.size(); ++i) {
        PlanarPoint a = vertices_[i];
        PlanarPoint b = vertices_[(i + 1) % vertices_.size()];
        if ((a.y > q.y) != (b.y > q.y)) {
          double xint = a.x + (q.y - a.y) * (b.x - a.x) / (b.y - a.y);
          if (q.x < xint) inside = !inside;
        }
      }
      return inside;
    }
  }
  return false;
}

double PlanarDomain::boundary_distance(PlanarPoint q) const {
  switch (kind_) {
    case ShapeKind::kDisc:
      return std::abs(radius_ - distance(q, center_));
    case ShapeKind::kPolygon: {
      double best = point_segment_distance(q, vertices_.back(), vertices_.front());
      for (std::size_t i = 0; i + 1 < vertices_.size(); ++i) {
        best = std::min(best, point_segment_distance(q, vertices_[i], vertices_[i + 1]));
      }
      return best;
    }
    case ShapeKind::kRadial:
      break;
  }

  // Coarse-to-fine over the precomputed profile, then golden-section on the
  // exact curve around the best window.
  const int n = kBoundaryDistanceTable;
  const int stride = 8;
  int best_coarse[4] = {0, 0, 0, 0};
  double best_val[4] = {1e300, 1e300, 1e300, 1e300};
  for (int i = 0; i < n; i += stride) {
    double v = distance(q, radial_profile_[static_cast<std::size_t>(i)]);
    for (int slot = 0; slot < 4; ++slot) {
      if (v < best_val[slot]) {
        for (int shift = 3; shift > slot; --shift) {
          best_val[shift] = best_val[shift - 1];
          best_coarse[shift] = best_coarse[shift - 1];
        }
        best_val[slot] = v;
        best_coarse[slot] = i;
        break;
      }
    }
  }

  int best_index = best_coarse[0];
  double best = best_val[0];
  for (int slot = 0; slot < 4; ++slot) {
    for (int off = -stride; off <= stride; ++off) {
      int i = ((best_coarse[slot] + off) % n + n) % n;
      double v = distance(q, radial_profile_[static_cast<std::size_t>(i)]);
      if (v < best) {
        best = v;
        best_index = i;
      }
    }
  }

  const LiftExpr& rho = *rho_;
  auto curve_dist = [&](double theta) {
    double r = rho(canonicalize_angle(theta));
    return distance(q, {r * std::cos(theta), r * std::sin(theta)});
  };
  double a = kTwoPi * (best_index - 1) / n;
  double b = kTwoPi * (best_index + 1) / n;
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = curve_dist(x1);
  double f2 = curve_dist(x2);
  for (int iter = 0; iter < 48; ++iter) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = curve_dist(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = curve_dist(x2);
    }
  }
  return std::min(best, std::min(f1, f2));
}

Circle min_enclosing_circle(std::span<const PlanarPoint> points, std::uint64_t seed) {
  if (points.empty()) throw GeometryError("minimum enclosing circle needs at least one point");
  std::vector<PlanarPoint> p(points.begin(), points.end());
  std::mt19937_64 rng(seed);
  std::shuffle(p.begin(), p.end(), rng);

  Circle c{p[0], 0.0};
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (circle_covers(c, p[i])) continue;
    c = {p[i], 0.0};
    for (std::size_t j = 0; j < i; ++j) {
      if (circle_covers(c, p[j])) continue;
      c = circle_from_two(p[i], p[j]);
      for (std::size_t k = 0; k < j; ++k) {
        if (circle_covers(c, p[k])) continue;
        c = circle_from_three(p[i], p[j], p[k]);
      }
    }
  }
  return c;
}

Circle circumscribed_circle(const PlanarDomain& domain, std::uint64_t seed) {
  switch (domain.kind()) {
    case ShapeKind::kDisc:
      return {domain.disc_center(), domain.disc_radius()};
    case ShapeKind::kPolygon:
      return min_enclosing_circle(domain.vertices(), seed);
    case ShapeKind::kRadial: {
      std::vector<PlanarPoint> samples = domain_boundary_samples(domain, 1024);
      return min_enclosing_circle(samples, seed);
    }
  }
  throw GeometryError("unknown domain kind");
}

RayHit ray_boundary_intersection(const PlanarDomain& domain, Angle theta) {
  PlanarPoint o = domain.anchor();
  switch (domain.kind()) {
    case ShapeKind::kDisc: {
      PlanarPoint d = unit_vector(theta);
      PlanarPoint m = domain.disc_center() - o;
      double proj = dot(d, m);
      double disc = proj * proj - dot(m, m) + domain.disc_radius() * domain.disc_radius();
      double t = proj + std::sqrt(std::max(disc, 0.0));
      return {o + t * d, 0.0};
    }
    case ShapeKind::kRadial: {
      double r = domain.rho()(theta.radians());
      return {{r * theta.cos(), r * theta.sin()}, 0.0};
    }
    case ShapeKind::kPolygon:
      break;
  }

  double base = theta.radians();
  for (int attempt = 0; attempt < 8; ++attempt) {
    double nudge = kTol.degeneracy_nudge * attempt;
    std::vector<PolygonHit> hits = polygon_ray_hits(domain.vertices(), o, base + nudge);
    bool clean = hits.size() == 1 && !hits.front().suspicious;
    if (clean) return {hits.front().point, nudge};
  }
  throw GeometryError("degenerate boundary ray could not be resolved");
}

std::vector<PlanarPoint> domain_boundary_samples(const PlanarDomain& domain, int n) {
  if (n < 1) throw GeometryError("sample count must be positive");
  std::vector<PlanarPoint> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    out.push_back(ray_boundary_intersection(domain, Angle(kTwoPi * k / n)).point);
  }
  return out;
}

Angle project_to_circle(const PlanarDomain& domain, const Circle& circle, PlanarPoint q) {
  PlanarPoint o = domain.anchor();
  PlanarPoint dir = q - o;
  double len = norm(dir);
  if (len < 1e-12) throw GeometryError("projection direction undefined at the anchor");
  if (!domain.contains(q, kTol.containment_slack)) {
    throw GeometryError("projection input lies outside the domain");
  }
  dir = (1.0 / len) * dir;
  PlanarPoint m = circle.center - o;
  double proj = dot(dir, m);
  double disc = proj * proj - dot(m, m) + circle.radius * circle.radius;
  double t = proj + std::sqrt(std::max(disc, 0.0));
  PlanarPoint hit = o + t * dir;
  return Angle(std::atan2(hit.y - circle.center.y, hit.x - circle.center.x));
}

BoundaryParam::BoundaryParam(PlanarDomain domain, Circle circle)
    : domain_(std::move(domain)), circle_(circle) {
  double gap = circle_.radius - distance(domain_.anchor(), circle_.center);
  if (gap <= kTol.containment_slack * (1.0 + circle_.radius)) {
    throw GeometryError("anchor must lie strictly inside the circumscribed circle");
  }
}

Angle BoundaryParam::circle_angle_of_ray(Angle theta) const {
  PlanarPoint o = domain_.anchor();
  PlanarPoint d = unit_vector(theta);
  PlanarPoint m = circle_.center - o;
  double proj = dot(d, m);
  double disc = proj * proj - dot(m, m) + circle_.radius * circle_.radius;
  double t = proj + std::sqrt(std::max(disc, 0.0));
  PlanarPoint hit = o + t * d;
  return Angle(std::atan2(hit.y - circle_.center.y, hit.x - circle_.center.x));
}

Angle BoundaryParam::ray_angle_of_circle(Angle phi) const {
  PlanarPoint pt = circle_.center + circle_.radius * unit_vector(phi);
  PlanarPoint dir = pt - domain_.anchor();
  return Angle(std::atan2(dir.y, dir.x));
}

Angle BoundaryParam::to_circle(PlanarPoint boundary_point) const {
  PlanarPoint dir = boundary_point - domain_.anchor();
  if (norm(dir) < 1e-12) throw GeometryError("boundary point coincides with the anchor");
  return circle_angle_of_ray(Angle(std::atan2(dir.y, dir.x)));
}

PlanarPoint BoundaryParam::from_circle(Angle phi) const {
  return ray_boundary_intersection(domain_, ray_angle_of_circle(phi)).point;
}

PlanarPoint BoundaryParam::boundary_point(Angle theta) const {
  return ray_boundary_intersection(domain_, theta).point;
}

BoundaryParam boundary_homeo(const PlanarDomain& domain, const Circle& circle) {
  return BoundaryParam(domain, circle);
}

}  // namespace bext

#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

#include "bext/geom2d.hpp"
#include "bext/tolerances.hpp"
#include "oracles.hpp"

using namespace bext;

namespace {

PlanarDomain unit_square() {
  return PlanarDomain::polygon({{1.0, -1.0}, {1.0, 1.0}, {-1.0, 1.0}, {-1.0, -1.0}});
}

PlanarDomain bumpy_radial() { return PlanarDomain::radial(parse_lift("2 + cos(t)")); }

}  // namespace

TEST_CASE("minimum enclosing circle matches the exhaustive oracle") {
  std::mt19937 rng(20240817);
  std::uniform_real_distribution<double> coord(-10.0, 10.0);
  std::uniform_int_distribution<int> count(1, 12);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<PlanarPoint> pts;
    int n = count(rng);
    for (int i = 0; i < n; ++i) pts.push_back({coord(rng), coord(rng)});
    Circle fast = min_enclosing_circle(pts);
    Circle slow = oracle::brute_force_mec(pts);
    CHECK(std::abs(fast.radius - slow.radius) <= 1e-9 * (1.0 + slow.radius));
    CHECK(distance(fast.center, slow.center) <= 1e-7 * (1.0 + slow.radius));
    for (const PlanarPoint& p : pts) {
      CHECK(distance(fast.center, p) <= fast.radius + 1e-9 * (1.0 + fast.radius));
    }
  }
}

TEST_CASE("minimum enclosing circle on a known triangle") {
  std::vector<PlanarPoint> pts{{0.0, 0.0}, {2.0, 0.0}, {1.0, 3.0}};
  Circle c = min_enclosing_circle(pts);
  CHECK(c.center.x == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(c.center.y == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(c.radius == doctest::Approx(5.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("minimum enclosing circle is deterministic per seed") {
  std::vector<PlanarPoint> pts;
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> coord(-5.0, 5.0);
  for (int i = 0; i < 40; ++i) pts.push_back({coord(rng), coord(rng)});
  Circle a = min_enclosing_circle(pts, 123);
  Circle b = min_enclosing_circle(pts, 123);
  CHECK(a.center.x == b.center.x);
  CHECK(a.center.y == b.center.y);
  CHECK(a.radius == b.radius);
}

TEST_CASE("collinear and duplicate inputs stay finite") {
  std::vector<PlanarPoint> pts{{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}, {1.0, 0.0}};
  Circle c = min_enclosing_circle(pts);
  CHECK(c.center.x == doctest::Approx(1.0));
  CHECK(c.radius == doctest::Approx(1.0));
  Circle single = min_enclosing_circle(std::vector<PlanarPoint>{{3.0, 4.0}});
  CHECK(single.radius == 0.0);
  CHECK_THROWS_AS(min_enclosing_circle(std::vector<PlanarPoint>{}), GeometryError);
}

TEST_CASE("polygon validation") {
  CHECK_THROWS_AS(PlanarDomain::polygon({{0.0, 0.0}, {1.0, 0.0}}), GeometryError);
  // clockwise square
  CHECK_THROWS_AS(PlanarDomain::polygon({{-1.0, -1.0}, {-1.0, 1.0}, {1.0, 1.0}, {1.0, -1.0}}),
                  GeometryError);
  // bowtie
  CHECK_THROWS_AS(
      PlanarDomain::polygon({{0.0, 0.0}, {2.0, 2.0}, {2.0, 0.0}, {0.0, 2.0}}),
      GeometryError);
  PlanarDomain square = unit_square();
  CHECK(square.convex());
  CHECK(square.anchor().x == doctest::Approx(0.0));
  CHECK(square.anchor().y == doctest::Approx(0.0));
}

TEST_CASE("star-shaped but nonconvex polygon gets a kernel anchor") {
  // arrowhead: kernel is smaller than the polygon
  PlanarDomain dom = PlanarDomain::polygon(
      {{2.0, 0.0}, {0.5, 0.5}, {0.0, 2.0}, {-2.0, -2.0}});
  CHECK_FALSE(dom.convex());
  CHECK(dom.contains(dom.anchor(), 0.0));
  // every boundary ray from the anchor is unique, so samples are well defined
  std::vector<PlanarPoint> samples = domain_boundary_samples(dom, 256);
  CHECK(samples.size() == 256);
}

TEST_CASE("non-star polygon is rejected") {
  // deep zigzag whose kernel is empty
  CHECK_THROWS_AS(PlanarDomain::polygon({{0.0, 0.0},
                                         {4.0, 0.0},
                                         {4.0, 3.0},
                                         {3.0, 0.5},
                                         {2.0, 3.0},
                                         {1.0, 0.5},
                                         {0.0, 3.0}}),
                  GeometryError);
}

TEST_CASE("disc validation and anchored rays") {
  CHECK_THROWS_AS(PlanarDomain::disc({0.0, 0.0}, 0.0), GeometryError);
  CHECK_THROWS_AS(PlanarDomain::disc({0.0, 0.0}, 1.0, PlanarPoint{1.0, 0.0}), GeometryError);
  PlanarDomain d = PlanarDomain::disc({0.0, 0.0}, 1.0, PlanarPoint{0.5, 0.0});
  RayHit east = ray_boundary_intersection(d, Angle(0.0));
  CHECK(east.point.x == doctest::Approx(1.0));
  CHECK(east.point.y == doctest::Approx(0.0));
  RayHit west = ray_boundary_intersection(d, Angle(kPi));
  CHECK(west.point.x == doctest::Approx(-1.0));
}

TEST_CASE("radial domain validation") {
  CHECK_THROWS_AS(PlanarDomain::radial(parse_lift("cos(t)")), GeometryError);  // dips negative
  CHECK_THROWS_AS(PlanarDomain::radial(parse_lift("t + 1")), GeometryError);   // seam jump
  PlanarDomain r = bumpy_radial();
  CHECK(r.anchor().x == 0.0);
  RayHit h = ray_boundary_intersection(r, Angle(0.0));
  CHECK(h.point.x == doctest::Approx(3.0));
  RayHit g = ray_boundary_intersection(r, Angle(kPi));
  CHECK(g.point.x == doctest::Approx(-1.0));
}

TEST_CASE("square ray hits, including the nudged corner ray") {
  PlanarDomain square = unit_square();
  RayHit east = ray_boundary_intersection(square, Angle(0.0));
  CHECK(east.point.x == doctest::Approx(1.0));
  CHECK(east.applied_nudge == 0.0);

  RayHit corner = ray_boundary_intersection(square, Angle(kPi / 4.0));
  CHECK(corner.applied_nudge != 0.0);
  CHECK(distance(corner.point, {1.0, 1.0}) <= 1e-9);

  RayHit up = ray_boundary_intersection(square, Angle(kPi / 2.0));
  CHECK(up.point.y == doctest::Approx(1.0));
}

TEST_CASE("ray uniqueness over a dense angular sweep") {
  for (const PlanarDomain& dom :
       {unit_square(), bumpy_radial(), PlanarDomain::disc({0.0, 0.0}, 2.0)}) {
    for (int k = 0; k < 4096; ++k) {
      Angle theta(kTwoPi * k / 4096.0);
      RayHit hit = ray_boundary_intersection(dom, theta);
      PlanarPoint d = hit.point - dom.anchor();
      CHECK(norm(d) > 0.0);
      // the hit lies on the requested ray up to the allowed nudge
      double angle_err = mod_2pi_distance(std::atan2(d.y, d.x) - theta.radians());
      CHECK(angle_err <= 64.0 * kTol.degeneracy_nudge + 1e-9);
    }
  }
}

TEST_CASE("projection to the circumscribed circle") {
  PlanarDomain d = PlanarDomain::disc({0.0, 0.0}, 1.0, PlanarPoint{0.5, 0.0});
  Circle big{{0.0, 0.0}, 2.0};
  Angle a = project_to_circle(d, big, {0.5, 0.5});
  CHECK(a.radians() == doctest::Approx(std::atan2(std::sqrt(3.75), 0.5)).epsilon(1e-12));
  CHECK_THROWS_AS(project_to_circle(d, big, {0.5, 0.0}), GeometryError);  // at the anchor
  CHECK_THROWS_AS(project_to_circle(d, big, {5.0, 5.0}), GeometryError);  // outside
}

TEST_CASE("projected ray parameter reaches the circle from inside") {
  PlanarDomain square = unit_square();
  Circle circ = circumscribed_circle(square, kDefaultGeomSeed);
  CHECK(circ.radius == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
  for (int k = 0; k < 512; ++k) {
    Angle theta(kTwoPi * k / 512.0);
    PlanarPoint b = ray_boundary_intersection(square, theta).point;
    Angle phi = project_to_circle(square, circ, b);
    PlanarPoint on_circle = circ.center + circ.radius * unit_vector(phi);
    // boundary point, its projection, and the anchor stay on one ray
    double c = cross(b - square.anchor(), on_circle - square.anchor());
    CHECK(std::abs(c) <= 1e-9 * (1.0 + norm(on_circle)) * (1.0 + norm(b)));
    CHECK(dot(b - square.anchor(), on_circle - square.anchor()) >= 0.0);
    CHECK(norm(on_circle - square.anchor()) + 1e-12 >= norm(b - square.anchor()));
  }
}

TEST_CASE("boundary parametrisation round trips") {
  for (const PlanarDomain& dom :
       {unit_square(), bumpy_radial(), PlanarDomain::disc({0.25, -0.1}, 1.5)}) {
    Circle circ = circumscribed_circle(dom, kDefaultGeomSeed);
    BoundaryParam param = boundary_homeo(dom, circ);
    for (int k = 0; k < 1024; ++k) {
      Angle phi(kTwoPi * k / 1024.0);
      PlanarPoint b = param.from_circle(phi);
      Angle back = param.to_circle(b);
      CHECK(circle_distance(back, phi) <= kTol.homeo_roundtrip);
    }
    for (int k = 0; k < 1024; ++k) {
      Angle theta(kTwoPi * (k + 0.5) / 1024.0);
      PlanarPoint b = param.boundary_point(theta);
      Angle phi = param.to_circle(b);
      PlanarPoint again = param.from_circle(phi);
      CHECK(distance(again, b) <= kTol.homeo_roundtrip * (1.0 + norm(b)));
    }
  }
}

TEST_CASE("circle angle of ray is monotone over a full turn") {
  for (const PlanarDomain& dom : {unit_square(), bumpy_radial()}) {
    Circle circ = circumscribed_circle(dom, kDefaultGeomSeed);
    BoundaryParam param = boundary_homeo(dom, circ);
    const int n = 4096;
    double prev = 0.0;
    double first = 0.0;
    double total = 0.0;
    for (int k = 0; k <= n; ++k) {
      double phi = param.circle_angle_of_ray(Angle(kTwoPi * k / n)).radians();
      if (k == 0) {
        first = prev = phi;
        continue;
      }
      double step = wrap_to_pi(phi - prev);
      CHECK(step > 0.0);
      total += step;
      prev = phi;
    }
    CHECK(total == doctest::Approx(kTwoPi).epsilon(1e-9));
    CHECK(mod_2pi_distance(prev - first) <= 1e-9);
  }
}

TEST_CASE("boundary distance agrees with direct formulas") {
  PlanarDomain disc = PlanarDomain::disc({1.0, 0.0}, 2.0);
  CHECK(disc.boundary_distance({1.0, 0.0}) == doctest::Approx(2.0));
  CHECK(disc.boundary_distance({2.0, 0.0}) == doctest::Approx(1.0));

  PlanarDomain square = unit_square();
  CHECK(square.boundary_distance({0.0, 0.0}) == doctest::Approx(1.0));
  CHECK(square.boundary_distance({0.5, 0.25}) == doctest::Approx(0.5));
  CHECK(square.boundary_distance({2.0, 0.0}) == doctest::Approx(1.0));

  PlanarDomain round = PlanarDomain::radial(parse_lift("2 + 0*t"));
  for (double r : {0.0, 0.5, 1.5, 1.999}) {
    CHECK(round.boundary_distance({r, 0.0}) == doctest::Approx(2.0 - r).epsilon(1e-9));
    CHECK(round.boundary_distance({0.0, r}) == doctest::Approx(2.0 - r).epsilon(1e-9));
  }

  // against dense sampling on the bumpy profile
  PlanarDomain bumpy = bumpy_radial();
  LiftExpr rho = parse_lift("2 + cos(t)");
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> pick(-1.5, 1.5);
  for (int trial = 0; trial < 50; ++trial) {
    PlanarPoint q{pick(rng), pick(rng)};
    double dense = 1e300;
    const int n = 1 << 16;
    for (int k = 0; k < n; ++k) {
      double th = kTwoPi * k / n;
      double r = rho(th);
      dense = std::min(dense, distance(q, {r * std::cos(th), r * std::sin(th)}));
    }
    CHECK(bumpy.boundary_distance(q) == doctest::Approx(dense).epsilon(1e-7));
    CHECK(bumpy.boundary_distance(q) <= dense + 1e-9);
  }
}

TEST_CASE("containment respects slack") {
  PlanarDomain square = unit_square();
  CHECK(square.contains({0.9999, 0.0}, 0.0));
  CHECK(square.contains({1.0, 0.0}, kTol.containment_slack));
  CHECK_FALSE(square.contains({1.1, 0.0}, kTol.containment_slack));
  PlanarDomain bumpy = bumpy_radial();
  CHECK(bumpy.contains({2.9999999, 0.0}, kTol.containment_slack));
  CHECK_FALSE(bumpy.contains({3.1, 0.0}, kTol.containment_slack));
}

TEST_CASE("circumscribed circle contains the boundary samples") {
  for (const PlanarDomain& dom : {unit_square(), bumpy_radial()}) {
    Circle circ = circumscribed_circle(dom, kDefaultGeomSeed);
    for (const PlanarPoint& p : domain_boundary_samples(dom, 1024)) {
      CHECK(distance(p, circ.center) <= circ.radius + 1e-9 * (1.0 + circ.radius));
    }
  }
}

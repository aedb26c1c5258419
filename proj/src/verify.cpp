#include "bext/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "bext/tolerances.hpp"

namespace bext {
namespace {

struct CellScan {
  bool has_candidate = false;
  FixedPointCandidate best;
  bool budget_hit = false;
};

struct RefineNode {
  double u = 0.0;
  double theta = 0.0;
  double du = 0.0;
  double dtheta = 0.0;
};

// Work shared by the parallel and serial drivers: one coarse cell, including
// its 4-way refinement cascade.
template <typename PointOf, typename Residual>
CellScan scan_cell(const PointOf& point_of, const Residual& residual_of, double u, double theta,
                   double du, double dtheta, double res_center, double coarse_slope, double tol) {
  CellScan out;
  auto consider = [&](PlanarPoint q, double res) {
    if (res <= tol && (!out.has_candidate || res < out.best.residual)) {
      out.has_candidate = true;
      out.best.location = q;
      out.best.residual = res;
    }
  };

  PlanarPoint center = point_of(u, theta);
  consider(center, res_center);

  std::vector<RefineNode> stack;
  auto metric_diameter = [&](double uu, double th, double duu, double dth) {
    PlanarPoint a = point_of(std::max(uu - duu, 0.0), th - dth);
    PlanarPoint b = point_of(uu + duu, th + dth);
    return distance(a, b);
  };

  double coarse_diam = metric_diameter(u, theta, du, dtheta);
  bool trigger = res_center > tol && res_center < kTol.lip_safety * coarse_diam * coarse_slope;
  if (trigger) stack.push_back({u, theta, du, dtheta});

  int nodes = 0;
  while (!stack.empty()) {
    if (++nodes > kScanNodeBudget) {
      out.budget_hit = true;
      break;
    }
    RefineNode node = stack.back();
    stack.pop_back();

    double hu = 0.5 * node.du;
    double ht = 0.5 * node.dtheta;
    double sub_u[4] = {node.u - hu, node.u - hu, node.u + hu, node.u + hu};
    double sub_t[4] = {node.theta - ht, node.theta + ht, node.theta - ht, node.theta + ht};
    PlanarPoint pts[4];
    double res[4];
    for (int s = 0; s < 4; ++s) {
      sub_u[s] = std::max(sub_u[s], 0.0);
      pts[s] = point_of(sub_u[s], sub_t[s]);
      res[s] = residual_of(pts[s]);
      consider(pts[s], res[s]);
    }

    double slope = 0.0;
    for (int a = 0; a < 4; ++a) {
      for (int b = a + 1; b < 4; ++b) {
        double d = distance(pts[a], pts[b]);
        if (d > 0.0) slope = std::max(slope, std::abs(res[a] - res[b]) / d);
      }
    }

    for (int s = 0; s < 4; ++s) {
      double sub_diam = metric_diameter(sub_u[s], sub_t[s], hu, ht);
      if (sub_diam <= kTol.refine_floor) continue;
      if (res[s] > tol && res[s] < kTol.lip_safety * sub_diam * slope) {
        stack.push_back({sub_u[s], sub_t[s], hu, ht});
      }
    }
  }
  return out;
}

template <typename PointOf, typename Residual, typename Margin>
ScanResult scan_driver(const PointOf& point_of_raw, const Residual& residual_of,
                       const Margin& margin_of, int grid_n, double tol, bool parallel) {
  if (grid_n < 2) throw std::invalid_argument("scan grid must have at least 2 rows");
  if (!(tol > 0.0)) throw std::invalid_argument("scan tolerance must be positive");

  const int n = grid_n;
  const double u_cap = 1.0 - kTol.interior_band;
  const double du_half = 0.5 * u_cap / n;
  const double dtheta_half = kPi / n;

  // refinement never leaves the interior band
  auto point_of = [&point_of_raw, u_cap](double u, double theta) {
    return point_of_raw(std::clamp(u, 0.0, u_cap), theta);
  };

  std::vector<double> res(static_cast<std::size_t>(n) * n);
  std::vector<double> uu(static_cast<std::size_t>(n) * n), tt(static_cast<std::size_t>(n) * n);
  std::vector<PlanarPoint> pts(static_cast<std::size_t>(n) * n);

  auto fill = [&](int idx) {
    int i = idx / n;
    int j = idx % n;
    double u = u_cap * (i + 1) / n;
    double theta = kTwoPi * (j + 0.5) / n;
    uu[static_cast<std::size_t>(idx)] = u;
    tt[static_cast<std::size_t>(idx)] = theta;
    PlanarPoint q = point_of(u, theta);
    pts[static_cast<std::size_t>(idx)] = q;
    res[static_cast<std::size_t>(idx)] = residual_of(q);
  };

  const int total = n * n;
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (int idx = 0; idx < total; ++idx) fill(idx);
  } else {
    for (int idx = 0; idx < total; ++idx) fill(idx);
  }

  auto coarse_slope = [&](int idx) {
    int i = idx / n;
    int j = idx % n;
    double best = 0.0;
    auto probe = [&](int ii, int jj) {
      if (ii < 0 || ii >= n) return;
      jj = (jj % n + n) % n;
      int nb = ii * n + jj;
      double d = distance(pts[static_cast<std::size_t>(nb)], pts[static_cast<std::size_t>(idx)]);
      if (d > 0.0) {
        best = std::max(best, std::abs(res[static_cast<std::size_t>(nb)] -
                                       res[static_cast<std::size_t>(idx)]) /
                                  d);
      }
    };
    probe(i - 1, j);
    probe(i + 1, j);
    probe(i, j - 1);
    probe(i, j + 1);
    return best;
  };

  std::vector<CellScan> cells(static_cast<std::size_t>(total));
  auto work = [&](int idx) {
    cells[static_cast<std::size_t>(idx)] =
        scan_cell(point_of, residual_of, uu[static_cast<std::size_t>(idx)],
                  tt[static_cast<std::size_t>(idx)], du_half, dtheta_half,
                  res[static_cast<std::size_t>(idx)], coarse_slope(idx), tol);
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 64)
    for (int idx = 0; idx < total; ++idx) work(idx);
  } else {
    for (int idx = 0; idx < total; ++idx) work(idx);
  }

  ScanResult result;
  result.total_cells = static_cast<std::size_t>(total);
  for (int idx = 0; idx < total; ++idx) {
    const CellScan& cell = cells[static_cast<std::size_t>(idx)];
    if (cell.budget_hit) result.budget_exhausted = true;
    if (!cell.has_candidate) continue;
    ++result.candidate_cells;
    FixedPointCandidate c = cell.best;
    c.interior_margin = margin_of(c.location);
    result.candidates.push_back(c);
  }
  std::stable_sort(result.candidates.begin(), result.candidates.end(),
                   [](const FixedPointCandidate& a, const FixedPointCandidate& b) {
                     return a.residual < b.residual;
                   });
  result.identity_like =
      static_cast<double>(result.candidate_cells) > kTol.identity_fraction * total;
  return result;
}

ScanResult scan_planar(const PlanarMap& map, const PlanarDomain& domain, int grid_n, double tol,
                       bool parallel) {
  PlanarPoint o = domain.anchor();
  auto point_of = [&map, &domain, o](double u, double theta) {
    Angle th(theta);
    PlanarPoint b = ray_boundary_intersection(domain, th).point;
    return o + (u * distance(b, o)) * unit_vector(th);
  };
  auto residual_of = [&map](PlanarPoint q) { return distance(map(q), q); };
  auto margin_of = [&domain](PlanarPoint q) { return domain.boundary_distance(q); };
  return scan_driver(point_of, residual_of, margin_of, grid_n, tol, parallel);
}

double boundary_error_driver(const PlanarMap& map, const PlanarDomain& domain,
                             const LiftedCircleMap& f, int n, bool parallel) {
  if (n < 1) throw std::invalid_argument("boundary sample count must be positive");
  double worst = 0.0;
  if (parallel) {
#pragma omp parallel for schedule(static) reduction(max : worst)
    for (int k = 0; k < n; ++k) {
      Angle theta(kTwoPi * k / n);
      PlanarPoint b = ray_boundary_intersection(domain, theta).point;
      PlanarPoint target = ray_boundary_intersection(domain, eval_map(f, theta)).point;
      worst = std::max(worst, distance(map(b), target));
    }
  } else {
    for (int k = 0; k < n; ++k) {
      Angle theta(kTwoPi * k / n);
      PlanarPoint b = ray_boundary_intersection(domain, theta).point;
      PlanarPoint target = ray_boundary_intersection(domain, eval_map(f, theta)).point;
      worst = std::max(worst, distance(map(b), target));
    }
  }
  return worst;
}

}  // namespace

ScanResult scan_fixed_points(const PlanarMap& map, const PlanarDomain& domain, int grid_n,
                             double tol) {
  return scan_planar(map, domain, grid_n, tol, true);
}

ScanResult scan_fixed_points_serial(const PlanarMap& map, const PlanarDomain& domain, int grid_n,
                                    double tol) {
  return scan_planar(map, domain, grid_n, tol, false);
}

ScanResult scan_fixed_points_surface(const SurfaceMap& map, const GeodesicDomain& domain,
                                     int grid_n, double tol) {
  const PoleSurface& surface = domain.surface;
  PlanarDomain shadow = pull_back_domain(domain);

  auto point_of = [&domain](double u, double theta) {
    double span = domain.rho_g(canonicalize_angle(theta));
    return PlanarPoint{u * span * std::cos(theta), u * span * std::sin(theta)};
  };
  // Displacement is measured in the tangent chart, where the extension's
  // image sits exactly on the shadow boundary. Ambient displacement would
  // shrink by the model's metric distortion and grade genuine near-boundary
  // motion as fixed.
  auto residual_of = [&](PlanarPoint v) {
    double r = norm(v);
    Angle dir = r > 0.0 ? Angle(std::atan2(v.y, v.x)) : Angle(0.0);
    TangentVector back = surface.log(map(surface.exp({r, dir})));
    return distance({back.r * back.theta.cos(), back.r * back.theta.sin()}, v);
  };
  auto margin_of = [&shadow](PlanarPoint v) { return shadow.boundary_distance(v); };

  ScanResult result = scan_driver(point_of, residual_of, margin_of, grid_n, tol, true);
  for (FixedPointCandidate& c : result.candidates) {
    double r = norm(c.location);
    Angle dir = r > 0.0 ? Angle(std::atan2(c.location.y, c.location.x)) : Angle(0.0);
    SurfacePoint q = surface.exp({r, dir});
    c.location = {q.x, q.y};
    c.z = q.z;
  }
  return result;
}

double boundary_error(const PlanarMap& map, const PlanarDomain& domain, const LiftedCircleMap& f,
                      int n) {
  return boundary_error_driver(map, domain, f, n, true);
}

double boundary_error_serial(const PlanarMap& map, const PlanarDomain& domain,
                             const LiftedCircleMap& f, int n) {
  return boundary_error_driver(map, domain, f, n, false);
}

double boundary_error_surface(const SurfaceMap& map, const GeodesicDomain& domain,
                              const LiftedCircleMap& f, int n) {
  if (n < 1) throw std::invalid_argument("boundary sample count must be positive");
  const PoleSurface& surface = domain.surface;
  double worst = 0.0;
#pragma omp parallel for schedule(static) reduction(max : worst)
  for (int k = 0; k < n; ++k) {
    Angle theta(kTwoPi * k / n);
    Angle image = eval_map(f, theta);
    SurfacePoint b = surface.exp({domain.rho_g(theta.radians()), theta});
    SurfacePoint target = surface.exp({domain.rho_g(image.radians()), image});
    worst = std::max(worst, surface.ambient_distance(map(b), target));
  }
  return worst;
}

OscillationProfile oscillation_profile(const PlanarMap& map, PlanarPoint at,
                                       std::span<const double> deltas, int m) {
  if (m < 32) throw std::invalid_argument("oscillation needs at least 32 samples per radius");
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!(deltas[i] > 0.0)) throw std::invalid_argument("oscillation radii must be positive");
    if (i > 0 && !(deltas[i] < deltas[i - 1])) {
      throw std::invalid_argument("oscillation radii must be strictly decreasing");
    }
  }

  OscillationProfile profile;
  profile.center = at;
  for (double delta : deltas) {
    std::vector<PlanarPoint> images;
    images.reserve(static_cast<std::size_t>(m));
    images.push_back(map(at));
    int ring = m / 2;
    for (int j = 0; j < ring; ++j) {
      Angle a(kTwoPi * j / ring);
      images.push_back(map(at + delta * unit_vector(a)));
    }
    int rest = m - 1 - ring;
    for (int j = 0; j < rest; ++j) {
      Angle a(kTwoPi * (j + 0.25) / rest);
      double r = delta * (j + 1) / (rest + 1);
      images.push_back(map(at + r * unit_vector(a)));
    }
    double osc = 0.0;
    for (std::size_t a = 0; a < images.size(); ++a) {
      for (std::size_t b = a + 1; b < images.size(); ++b) {
        osc = std::max(osc, distance(images[a], images[b]));
      }
    }
    profile.entries.emplace_back(delta, osc);
  }
  return profile;
}

OscillationProfile oscillation_profile_surface(const SurfaceMap& map, const PoleSurface& surface,
                                               PlanarPoint at, std::span<const double> deltas,
                                               int m) {
  if (m < 32) throw std::invalid_argument("oscillation needs at least 32 samples per radius");
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!(deltas[i] > 0.0)) throw std::invalid_argument("oscillation radii must be positive");
    if (i > 0 && !(deltas[i] < deltas[i - 1])) {
      throw std::invalid_argument("oscillation radii must be strictly decreasing");
    }
  }
  OscillationProfile profile;
  profile.center = at;
  for (double delta : deltas) {
    std::vector<SurfacePoint> images;
    images.reserve(static_cast<std::size_t>(m));
    auto push = [&](PlanarPoint q) { images.push_back(map(surface.lift_xy(q.x, q.y))); };
    push(at);
    int ring = m / 2;
    for (int j = 0; j < ring; ++j) {
      Angle a(kTwoPi * j / ring);
      push(at + delta * unit_vector(a));
    }
    int rest = m - 1 - ring;
    for (int j = 0; j < rest; ++j) {
      Angle a(kTwoPi * (j + 0.25) / rest);
      push(at + (delta * (j + 1) / (rest + 1)) * unit_vector(a));
    }
    double osc = 0.0;
    for (std::size_t a = 0; a < images.size(); ++a) {
      for (std::size_t b = a + 1; b < images.size(); ++b) {
        osc = std::max(osc, surface.ambient_distance(images[a], images[b]));
      }
    }
    profile.entries.emplace_back(delta, osc);
  }
  return profile;
}

int estimate_degree(std::span<const Angle> samples) {
  if (samples.size() < 64) {
    throw std::invalid_argument("degree estimation needs at least 64 samples");
  }
  const std::size_t n = samples.size();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double step = wrap_to_pi(samples[(i + 1) % n].radians() - samples[i].radians());
    if (std::abs(step) >= kPi - 1e-12) {
      throw UnwrapError("ambiguous half-turn step between consecutive samples");
    }
    total += step;
  }
  double turns = total / kTwoPi;
  double rounded = std::round(turns);
  if (std::abs(turns - rounded) > 1e-6) {
    throw UnwrapError("sampled loop winds a non-integer number of turns");
  }
  return static_cast<int>(rounded);
}

namespace {

void append_json_double(std::string& out, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

void append_json_string(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

}  // namespace

std::string report_to_json(const VerificationReport& report) {
  // keys in sorted order; at most 32 candidates serialised, smallest
  // residual first (candidate_cells carries the full count)
  std::string out;
  out += "{\n";
  out += "  \"boundary_error\": ";
  append_json_double(out, report.boundary_err);
  out += ",\n  \"candidate_cells\": ";
  out += std::to_string(report.candidates.size());
  out += ",\n  \"candidates\": [";
  std::size_t shown = std::min<std::size_t>(report.candidates.size(), 32);
  for (std::size_t i = 0; i < shown; ++i) {
    const FixedPointCandidate& c = report.candidates[i];
    out += i == 0 ? "\n" : ",\n";
    out += "    {\"interior_margin\": ";
    append_json_double(out, c.interior_margin);
    out += ", \"residual\": ";
    append_json_double(out, c.residual);
    out += ", \"x\": ";
    append_json_double(out, c.location.x);
    out += ", \"y\": ";
    append_json_double(out, c.location.y);
    out += ", \"z\": ";
    append_json_double(out, c.z);
    out += "}";
  }
  out += shown > 0 ? "\n  ],\n" : "],\n";
  out += "  \"degree\": ";
  out += std::to_string(report.degree);
  out += ",\n  \"flags\": [";
  for (std::size_t i = 0; i < report.flags.size(); ++i) {
    out += i == 0 ? "" : ", ";
    append_json_string(out, report.flags[i]);
  }
  out += "],\n  \"map_identity\": ";
  append_json_string(out, report.map_identity);
  out += ",\n  \"oscillation\": [";
  for (std::size_t i = 0; i < report.oscillation.entries.size(); ++i) {
    out += i == 0 ? "" : ", ";
    out += '[';
    append_json_double(out, report.oscillation.entries[i].first);
    out += ", ";
    append_json_double(out, report.oscillation.entries[i].second);
    out += ']';
  }
  out += "],\n  \"strategy\": ";
  append_json_string(out, report.strategy);
  out += "\n}\n";
  return out;
}

}  // namespace bext

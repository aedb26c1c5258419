#include "bext/scenario.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "bext/tolerances.hpp"

namespace bext {
namespace {

using nlohmann::json;

constexpr int kCsvGrid = 64;

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw ScenarioError(where + " must be an object");
  for (const auto& item : obj.items()) {
    if (!allowed.contains(item.key())) {
      throw ScenarioError("unknown key '" + item.key() + "' in " + where);
    }
  }
}

double number_at(const json& obj, const std::string& where, const std::string& key) {
  if (!obj.contains(key)) throw ScenarioError(where + " is missing '" + key + "'");
  const json& v = obj.at(key);
  if (!v.is_number()) throw ScenarioError(where + "." + key + " must be a number");
  return v.get<double>();
}

std::string text_at(const json& obj, const std::string& where, const std::string& key) {
  if (!obj.contains(key)) throw ScenarioError(where + " is missing '" + key + "'");
  const json& v = obj.at(key);
  if (!v.is_string()) throw ScenarioError(where + "." + key + " must be a string");
  return v.get<std::string>();
}

PlanarPoint point_at(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw ScenarioError(where + " must be a [x, y] pair");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

PoleSurface parse_surface(const json& obj) {
  require_keys(obj, "surface", {"model", "kappa"});
  std::string model = text_at(obj, "surface", "model");
  if (model == "euclidean") {
    if (obj.contains("kappa")) throw ScenarioError("surface.kappa only applies to 'hyperbolic'");
    return PoleSurface::euclidean();
  }
  if (model == "hyperbolic") {
    double kappa = obj.contains("kappa") ? number_at(obj, "surface", "kappa") : -1.0;
    if (!(kappa < 0.0)) throw ScenarioError("surface.kappa must be negative");
    return PoleSurface::hyperbolic(kappa);
  }
  if (model == "paraboloid") {
    if (obj.contains("kappa")) throw ScenarioError("surface.kappa only applies to 'hyperbolic'");
    return PoleSurface::paraboloid();
  }
  throw ScenarioError("surface.model must be euclidean, hyperbolic, or paraboloid");
}

}  // namespace

Scenario parse_scenario_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioError(std::string("scenario is not valid JSON: ") + e.what());
  }
  require_keys(root, "scenario",
               {"surface", "domain", "boundary_map", "strategy", "verify", "seed"});

  Scenario s;
  if (root.contains("surface")) s.surface = parse_surface(root.at("surface"));

  if (!root.contains("domain")) throw ScenarioError("scenario is missing 'domain'");
  const json& dom = root.at("domain");
  if (s.surface.has_value()) {
    require_keys(dom, "domain", {"shape", "rho_g"});
    std::string shape = text_at(dom, "domain", "shape");
    if (shape != "geodesic") {
      throw ScenarioError("surface scenarios need domain.shape = 'geodesic'");
    }
    LiftExpr rho = parse_lift(text_at(dom, "domain", "rho_g"));
    s.geodesic_domain = make_geodesic_domain(*s.surface, std::move(rho));
    s.domain_label = "geodesic region";
  } else {
    std::string shape = text_at(dom, "domain", "shape");
    if (shape == "disc") {
      require_keys(dom, "domain", {"shape", "center", "radius", "anchor"});
      PlanarPoint center = dom.contains("center")
                               ? point_at(dom.at("center"), "domain.center")
                               : PlanarPoint{0.0, 0.0};
      double radius = number_at(dom, "domain", "radius");
      std::optional<PlanarPoint> anchor;
      if (dom.contains("anchor")) anchor = point_at(dom.at("anchor"), "domain.anchor");
      s.planar_domain = PlanarDomain::disc(center, radius, anchor);
      s.domain_label = "disc";
    } else if (shape == "polygon") {
      require_keys(dom, "domain", {"shape", "vertices", "anchor"});
      if (!dom.contains("vertices") || !dom.at("vertices").is_array()) {
        throw ScenarioError("domain.vertices must be an array of [x, y] pairs");
      }
      std::vector<PlanarPoint> vertices;
      for (const json& v : dom.at("vertices")) {
        vertices.push_back(point_at(v, "domain.vertices entry"));
      }
      std::optional<PlanarPoint> anchor;
      if (dom.contains("anchor")) anchor = point_at(dom.at("anchor"), "domain.anchor");
      s.planar_domain = PlanarDomain::polygon(std::move(vertices), anchor);
      s.domain_label = "polygon(" + std::to_string(dom.at("vertices").size()) + ")";
    } else if (shape == "radial") {
      require_keys(dom, "domain", {"shape", "rho"});
      s.planar_domain = PlanarDomain::radial(parse_lift(text_at(dom, "domain", "rho")));
      s.domain_label = "radial region";
    } else {
      throw ScenarioError("domain.shape must be disc, polygon, radial, or geodesic");
    }
  }

  if (!root.contains("boundary_map")) throw ScenarioError("scenario is missing 'boundary_map'");
  s.boundary_map = make_circle_map(parse_lift(text_at(root, "scenario", "boundary_map")));

  std::string strategy = text_at(root, "scenario", "strategy");
  if (strategy == "rotation") {
    s.strategy = Strategy::kRotation;
  } else if (strategy == "collapse0") {
    s.strategy = Strategy::kCollapse0;
  } else {
    throw ScenarioError("strategy must be 'rotation' or 'collapse0'");
  }

  if (root.contains("verify")) {
    const json& v = root.at("verify");
    require_keys(v, "verify", {"grid", "tol", "deltas", "oscillation_samples"});
    if (v.contains("grid")) {
      double g = number_at(v, "verify", "grid");
      if (g < 2 || g != std::floor(g)) throw ScenarioError("verify.grid must be an integer >= 2");
      s.verify.grid = static_cast<int>(g);
    }
    if (v.contains("tol")) {
      s.verify.tol = number_at(v, "verify", "tol");
      if (!(s.verify.tol > 0.0)) throw ScenarioError("verify.tol must be positive");
    }
    if (v.contains("deltas")) {
      if (!v.at("deltas").is_array() || v.at("deltas").empty()) {
        throw ScenarioError("verify.deltas must be a nonempty array");
      }
      s.verify.deltas.clear();
      for (const json& d : v.at("deltas")) {
        if (!d.is_number()) throw ScenarioError("verify.deltas entries must be numbers");
        s.verify.deltas.push_back(d.get<double>());
      }
      for (std::size_t i = 0; i < s.verify.deltas.size(); ++i) {
        if (!(s.verify.deltas[i] > 0.0) ||
            (i > 0 && !(s.verify.deltas[i] < s.verify.deltas[i - 1]))) {
          throw ScenarioError("verify.deltas must be positive and strictly decreasing");
        }
      }
    }
    if (v.contains("oscillation_samples")) {
      double m = number_at(v, "verify", "oscillation_samples");
      if (m < 32 || m != std::floor(m)) {
        throw ScenarioError("verify.oscillation_samples must be an integer >= 32");
      }
      s.verify.oscillation_samples = static_cast<int>(m);
    }
  }

  if (root.contains("seed")) {
    const json& v = root.at("seed");
    if (!v.is_number_unsigned()) throw ScenarioError("seed must be a nonnegative integer");
    s.seed = v.get<std::uint64_t>();
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError("cannot open scenario file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str());
}

PlanarMap Pipeline::planar_map() const {
  if (!planar.has_value()) throw ScenarioError("pipeline runs on a surface");
  const DomainExtension& ext = *planar;
  return [&ext](const PlanarPoint& q) { return ext(q); };
}

SurfaceMap Pipeline::surface_map() const {
  if (!surface.has_value()) throw ScenarioError("pipeline is planar");
  const SurfaceExtension& ext = *surface;
  return [&ext](const SurfacePoint& q) { return ext(q); };
}

const PlanarDomain& Pipeline::planar_domain() const {
  return planar.has_value() ? planar->domain() : surface->planar().domain();
}

Pipeline build_pipeline(Scenario scenario) {
  Pipeline p{std::move(scenario), std::nullopt, std::nullopt};
  if (p.scenario.surface.has_value()) {
    p.surface = extend_on_surface(*p.scenario.geodesic_domain, p.scenario.boundary_map,
                                  p.scenario.strategy, p.scenario.seed);
  } else {
    p.planar = extend_domain(*p.scenario.planar_domain, p.scenario.boundary_map,
                             p.scenario.strategy, p.scenario.seed);
  }
  return p;
}

VerificationReport run_verification(const Pipeline& pipeline) {
  const Scenario& s = pipeline.scenario;
  VerificationReport report;
  report.map_identity = "'" + s.boundary_map.lift.source() + "' on " + s.domain_label;
  report.strategy = s.strategy == Strategy::kRotation ? "rotation" : "collapse0";

  std::vector<Angle> loop(1024);
  for (std::size_t k = 0; k < loop.size(); ++k) {
    loop[k] = eval_map(s.boundary_map, Angle(kTwoPi * static_cast<double>(k) / loop.size()));
  }
  report.degree = estimate_degree(loop);

  ScanResult scan;
  if (pipeline.on_surface()) {
    SurfaceMap map = pipeline.surface_map();
    report.boundary_err = boundary_error_surface(map, *s.geodesic_domain, s.boundary_map, 1024);
    scan = scan_fixed_points_surface(map, *s.geodesic_domain, s.verify.grid, s.verify.tol);
    report.oscillation = oscillation_profile_surface(map, *s.surface, {0.0, 0.0},
                                                     s.verify.deltas,
                                                     s.verify.oscillation_samples);
  } else {
    PlanarMap map = pipeline.planar_map();
    const PlanarDomain& domain = *s.planar_domain;
    report.boundary_err = boundary_error(map, domain, s.boundary_map, 1024);
    scan = scan_fixed_points(map, domain, s.verify.grid, s.verify.tol);
    report.oscillation =
        oscillation_profile(map, domain.anchor(), s.verify.deltas, s.verify.oscillation_samples);
  }
  report.candidates = std::move(scan.candidates);
  report.identity_like = scan.identity_like;

  const PlanarDomain& shadow = pipeline.planar_domain();
  if (shadow.kind() != ShapeKind::kDisc) report.flags.push_back("MEC-as-circumscribed");
  if (pipeline.on_surface() && s.surface->model() != SurfaceModel::kEuclidean) {
    report.flags.push_back("assumed-convex");
  }
  if (scan.identity_like) report.flags.push_back("identity-like");
  if (scan.budget_exhausted) report.flags.push_back("refinement-budget-exhausted");
  return report;
}

std::string samples_to_csv(const Pipeline& pipeline) {
  const int n = kCsvGrid;
  const double u_cap = 1.0 - kTol.interior_band;
  std::string out;
  char buf[256];
  const PlanarDomain& shadow = pipeline.planar_domain();
  PlanarPoint o = shadow.anchor();

  if (pipeline.on_surface()) {
    const PoleSurface& surface = pipeline.scenario.surface.value();
    const SurfaceExtension& ext = *pipeline.surface;
    out += "x,y,z,Fx,Fy,Fz\n";
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        double u = u_cap * (i + 1) / n;
        Angle theta(kTwoPi * (j + 0.5) / n);
        PlanarPoint b = ray_boundary_intersection(shadow, theta).point;
        double r = u * distance(b, o);
        SurfacePoint q = surface.exp({r, theta});
        SurfacePoint fq = ext(q);
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", q.x, q.y, q.z,
                      fq.x, fq.y, fq.z);
        out += buf;
      }
    }
    return out;
  }

  const DomainExtension& ext = *pipeline.planar;
  out += "x,y,Fx,Fy\n";
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double u = u_cap * (i + 1) / n;
      Angle theta(kTwoPi * (j + 0.5) / n);
      PlanarPoint b = ray_boundary_intersection(shadow, theta).point;
      PlanarPoint q = o + (u * distance(b, o)) * unit_vector(theta);
      PlanarPoint fq = ext(q);
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", q.x, q.y, fq.x, fq.y);
      out += buf;
    }
  }
  return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ScenarioError("cannot write file: " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw ScenarioError("short write: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace bext

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "bext/extend.hpp"
#include "bext/manifold.hpp"
#include "bext/verify.hpp"

namespace bext {

// Malformed or inconsistent scenario input.
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct VerifySpec {
  int grid = 512;
  double tol = 1e-6;
  std::vector<double> deltas{1e-1, 1e-2, 1e-3};
  int oscillation_samples = 64;
};

// One configured run: a domain (planar, or geodesic around a surface pole),
// a boundary circle map, a strategy, and verification settings.
struct Scenario {
  std::optional<PoleSurface> surface;
  std::optional<PlanarDomain> planar_domain;      // engaged without a surface
  std::optional<GeodesicDomain> geodesic_domain;  // engaged with a surface
  LiftedCircleMap boundary_map;
  Strategy strategy = Strategy::kRotation;
  VerifySpec verify;
  std::uint64_t seed = kDefaultGeomSeed;
  std::string domain_label;
};

// Strict parse: unknown keys are rejected at every level, required keys are
// domain, boundary_map, and strategy.
Scenario load_scenario(const std::filesystem::path& path);
Scenario parse_scenario_text(const std::string& text);

// The configured extension, ready to evaluate.
struct Pipeline {
  Scenario scenario;
  std::optional<DomainExtension> planar;
  std::optional<SurfaceExtension> surface;

  bool on_surface() const { return surface.has_value(); }
  PlanarMap planar_map() const;
  SurfaceMap surface_map() const;
  const PlanarDomain& planar_domain() const;
};

Pipeline build_pipeline(Scenario scenario);

// Degree check, boundary restriction error, interior fixed-point scan, and
// oscillation at the anchor, gathered into a report.
VerificationReport run_verification(const Pipeline& pipeline);

std::string samples_to_csv(const Pipeline& pipeline);

// Writes content to path via a temporary file and rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace bext

#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bext/angle.hpp"
#include "bext/circle_map.hpp"
#include "bext/geom2d.hpp"
#include "bext/manifold.hpp"

namespace bext {

// Winding samples too coarse or genuinely ambiguous: a step of half a turn
// or more cannot be unwrapped.
class UnwrapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using PlanarMap = std::function<PlanarPoint(const PlanarPoint&)>;
using SurfaceMap = std::function<SurfacePoint(const SurfacePoint&)>;

struct FixedPointCandidate {
  PlanarPoint location;
  double z = 0.0;         // ambient height when the scan ran on a surface
  double residual = 0.0;  // displacement |F(q) - q| (tangent chart on surfaces)
  double interior_margin = 0.0;  // distance from the candidate to the boundary
};

struct ScanResult {
  std::vector<FixedPointCandidate> candidates;  // best candidate per coarse cell
  std::size_t candidate_cells = 0;
  std::size_t total_cells = 0;
  bool identity_like = false;    // more than half of the cells produced candidates
  bool budget_exhausted = false; // some cell hit the refinement node budget
};

// Scans the interior for approximate fixed points on a polar grid around
// the anchor, staying a hair inside the boundary. Cells whose displacement
// is small against a sampled slope bound are refined by 4-way subdivision
// down to diameter 1e-8. Work is spread over OpenMP threads; merging is by
// cell index, so results are deterministic.
ScanResult scan_fixed_points(const PlanarMap& map, const PlanarDomain& domain, int grid_n,
                             double tol);
ScanResult scan_fixed_points_serial(const PlanarMap& map, const PlanarDomain& domain, int grid_n,
                                    double tol);

// Surface variant: the grid lives in tangent polar coordinates; the map is
// evaluated through exp and pulled back through log, so displacements and
// margins are tangent-chart quantities while candidate locations are
// reported in ambient coordinates.
ScanResult scan_fixed_points_surface(const SurfaceMap& map, const GeodesicDomain& domain,
                                     int grid_n, double tol);

// Largest displacement between the map and the boundary target b(f(theta))
// over n equally spaced boundary samples.
double boundary_error(const PlanarMap& map, const PlanarDomain& domain, const LiftedCircleMap& f,
                      int n);
double boundary_error_serial(const PlanarMap& map, const PlanarDomain& domain,
                             const LiftedCircleMap& f, int n);
double boundary_error_surface(const SurfaceMap& map, const GeodesicDomain& domain,
                              const LiftedCircleMap& f, int n);

// Oscillation of the map near a point: for each radius delta, the diameter
// of the image of m deterministic samples in the closed delta-ball.
struct OscillationProfile {
  PlanarPoint center;
  std::vector<std::pair<double, double>> entries;  // (delta, oscillation)
};

OscillationProfile oscillation_profile(const PlanarMap& map, PlanarPoint at,
                                       std::span<const double> deltas, int m);
OscillationProfile oscillation_profile_surface(const SurfaceMap& map, const PoleSurface& surface,
                                               PlanarPoint at, std::span<const double> deltas,
                                               int m);

// Winding degree of a closed angular loop: unwrap successive steps into
// (-pi, pi] and count full turns. Throws UnwrapError when a step reaches
// half a turn.
int estimate_degree(std::span<const Angle> samples);

struct VerificationReport {
  std::string map_identity;
  std::string strategy;
  int degree = 0;
  double boundary_err = 0.0;
  std::vector<FixedPointCandidate> candidates;
  bool identity_like = false;
  OscillationProfile oscillation;
  std::vector<std::string> flags;
};

// Deterministic serialisation: object keys sorted, floats at 17 significant
// digits, no environment-dependent content.
std::string report_to_json(const VerificationReport& report);

}  // namespace bext

#pragma once

namespace bext {

// Numeric policy shared by the whole toolkit. Every threshold a comparison
// uses lives here so tests and production agree on one source of truth.
struct Tolerances {
  // circle maps
  int analysis_grid = 4096;           // samples over [0, 2pi] when analysing a lift
  double winding_integrality = 1e-9;  // |F(2pi) - F(0) - 2pi d| bound
  double root_width = 1e-12;          // bisection interval target for roots
  double fixed_point_tol = 1e-9;      // default residual bound for fixed points
  // planar geometry
  double containment_slack = 1e-9;    // slack when testing point-in-domain
  double degeneracy_nudge = 1e-12;    // angular nudge applied to degenerate rays
  double homeo_roundtrip = 1e-9;      // boundary parametrisation roundtrip bound
  // scanning
  double interior_band = 1e-6;        // scan keeps this radial fraction off the boundary
  double refine_floor = 1e-8;         // smallest refined cell diameter
  double lip_safety = 8.0;            // safety factor on sampled slope bounds
  double identity_fraction = 0.5;     // candidate cell fraction that flags identity-like
};

inline constexpr Tolerances kTol{};

// Dense table sizes used where a construction needs a precomputed profile.
inline constexpr int kConjugationTable = 8192;
inline constexpr int kBoundaryDistanceTable = 4096;
// Refinement nodes per coarse scan cell. A rotation extension swings its
// image angle at rate 2 pi f' per unit of radial fraction, so the shallow
// residual valley running into a boundary fixed point keeps the refinement
// trigger alive down to fine scales; resolving it takes several hundred
// thousand nodes in the worst cell at grid 512.
inline constexpr int kScanNodeBudget = 1 << 22;

}  // namespace bext

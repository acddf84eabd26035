#pragma once

#include <utility>

#include "abphase/types.hpp"

namespace abphase {

struct QuadratureSpec {
    double rel_tol = 1e-6;
    double abs_tol = 1e-12;
    int max_subdivisions = 30;  // bisection depth per segment piece
};

// Loop phase by adaptive Gauss-Kronrod quadrature per segment:
//   theta_m = closed integral of A . dl
//   theta_e = -(closed integral of phi dt)
//   theta_total = theta_e + theta_m
// The sign of the electric part follows the covariant line element
// A . dl - phi dt, under which the total is gauge invariant as a raw real
// number (not just mod 2*pi). Spatial-only loops at fixed t get theta_e = 0
// exactly. Segments crossing the regularized sheet are pre-split at
// y in {0, +-8 eps_y} (and at the time-window structure) to concentrate nodes.
//
// Errors: "loop not closed"; for Coulomb-gauge fields, "loop enters fluxon
// core exclusion zone" when a segment comes within core_radius of (0,0) or
// (L,0) in the (x,y) plane.
PhaseBreakdown loop_phase(const PotentialField& field, const PolyPath& loop,
                          const QuadratureSpec& spec);

// Closed-form electric/magnetic phases of the split-interference loop with
// packets at (x, +-d) during the firing:
//   theta_e = arctan(x/d) - arctan((x-L)/d)
//   theta_m = -theta_e + pi * [H(x) - H(x-L)]   (exact steps, H(0) = 1/2)
std::pair<double, double> closed_form_phases(double x, double d, const SetupConfig& cfg);

// Canonical split-interference loop ("electric path"): packets hold at
// (x, y_upper) and (x, y_lower) across the t = 0 firing, then rejoin at
// (t_interfere, x, (y_upper + y_lower)/2). Margins keep every kernel crossing
// clean (>= 8 eps away from the window edges). When t_interfere > T the hold
// extends across the t = T firing as well.
PolyPath electric_path_loop(double x, double y_upper, double y_lower, double t_interfere,
                            const SetupConfig& cfg, const RegularizationParams& reg);

PhaseBreakdown electric_path_phase(double x, double d, double t_interfere,
                                   const PotentialField& field, const QuadratureSpec& spec);

enum class FluxonChoice { Left, Right, Both, Neither };

// Spatial circle (regular polygon, counterclockwise) at fixed t = t_mid
// around the chosen fluxon core(s). Requires radius > core_radius and
// t_mid inside [0, T] with margin >= 8 eps_t.
PolyPath magnetic_path_loop(FluxonChoice which, double radius, double t_mid,
                            const SetupConfig& cfg, const RegularizationParams& reg,
                            int n_vertices = 64);

PhaseBreakdown magnetic_path_phase(FluxonChoice which, double radius, double t_mid,
                                   const PotentialField& field, const QuadratureSpec& spec);

// Topological classification of a closed loop: signed crossing count of the
// active sheet {y = 0, 0 < x < L, 0 < t < T} and integer winding numbers of
// the (x,y) projection about each fluxon core. The predicted phase is
// pi * (signed active-sheet crossings).
struct PathClassification {
    int sheet_crossings = 0;
    int winding_left = 0;
    int winding_right = 0;
    double predicted_phase = 0.0;
};

PathClassification classify_path(const PolyPath& loop, const SetupConfig& cfg,
                                 const RegularizationParams& reg);

}  // namespace abphase

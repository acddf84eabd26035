#pragma once

#include <functional>
#include <vector>

#include "abphase/gauges.hpp"
#include "abphase/types.hpp"

namespace abphase {

struct FieldSample {
    double ex = 0.0;
    double ey = 0.0;
    double bz = 0.0;
};

struct CylFieldSample {
    double er = 0.0;
    double ez = 0.0;
    double bphi = 0.0;
};

struct SourceSample {
    double rho = 0.0;
    double jx = 0.0;
    double jy = 0.0;
};

struct CylSourceSample {
    double rho = 0.0;
    double jr = 0.0;
    double jz = 0.0;
};

struct CurrentSplit {
    double jc_x = 0.0, jc_y = 0.0;  // capacitor plate movement at t = 0 and t = T
    double js_x = 0.0, js_y = 0.0;  // solenoid turn-on/off currents at the edges
};

// --- rectangular configuration, closed forms -------------------------------

// E = -dA/dt, B = dAy/dx - dAx/dy evaluated on the temporal-gauge potential:
//   E_y = -pi [d(t) - d(t-T)] [s(x) - s(x-L)] d(y)
//   B_z =  pi [s(t) - s(t-T)] [d(x) - d(x-L)] d(y)
FieldSample rect_fields_analytic(const SetupConfig& cfg, const RegularizationParams& reg,
                                 const SpacetimePoint& p);

// rho = -1/4 [d(t) - d(t-T)] [s(x) - s(x-L)] d'(y)
double rect_charge_density(const SetupConfig& cfg, const RegularizationParams& reg,
                           const SpacetimePoint& p);

// j = j_c + j_s with
//   j_c = 1/4 [d'(t) - d'(t-T)] [s(x) - s(x-L)] d(y) y_hat
//   j_s = 1/4 [s(t) - s(t-T)] curl{ [d(x) - d(x-L)] d(y) z_hat }
// planar curl convention: curl(M z_hat) = (dM/dy, -dM/dx).
CurrentSplit rect_current_density(const SetupConfig& cfg, const RegularizationParams& reg,
                                  const SpacetimePoint& p);

SourceSample rect_sources(const SetupConfig& cfg, const RegularizationParams& reg,
                          const SpacetimePoint& p);

// --- rhombus configuration --------------------------------------------------

FieldSample rhombus_fields_analytic(const SetupConfig& cfg, const RegularizationParams& reg,
                                    const SpacetimePoint& p);

// Charge and current densities of the boosted-dipole configuration, derived
// from the rhombus potential through Gauss's law and the potential form of
// the field equations:
//   rho = -1/4 dS/dt d'(y)
//   j_x = +1/4 dS/dx d'(y)
//   j_y = -1/4 (d2S/dx2 - d2S/dt2) d(y)
// The dS/dt deltas ride the electric-dipole trajectories and the dS/dx deltas
// the magnetic-dipole trajectories on the rhombus boundary.
SourceSample dipole_densities(const SetupConfig& cfg, const RegularizationParams& reg,
                              const SpacetimePoint& p);

// --- toroidal configuration -------------------------------------------------

CylFieldSample toroidal_fields_analytic(const SetupConfig& cfg, const RegularizationParams& reg,
                                        const CylPoint& p);

// rho = -1/4 [d(t) - d(t-T)] s(R-r) d'(z);
// j   = 1/4 [d'(t) - d'(t-T)] s(R-r) d(z) z_hat
//     + 1/4 [s(t) - s(t-T)] curl[ d(R-r) d(z) phi_hat ].
CylSourceSample toroidal_densities(const SetupConfig& cfg, const RegularizationParams& reg,
                                   const CylPoint& p);

// --- numerics ----------------------------------------------------------------

// Central-difference fields from any potential evaluator; O(h^2).
// Requires 0 < h <= min(eps)/4.
FieldSample fields_numeric(const PotentialField& field, const SpacetimePoint& p, double h);

// Max-norm of d(rho)/dt + div j over the probe set, by central differences
// with step h. Exact continuity of the analytic sources makes this converge
// at O(h^2).
using SourceFn = std::function<SourceSample(const SpacetimePoint&)>;
double continuity_residual(const SourceFn& sources, const std::vector<SpacetimePoint>& probes,
                           double h);

using CylSourceFn = std::function<CylSourceSample(const CylPoint&)>;
double continuity_residual_cyl(const CylSourceFn& sources, const std::vector<CylPoint>& probes,
                               double h);

// Max-norm of the field-equation residual
//   ( curl B - dE/dt - 4 pi j ,  div E - 4 pi rho )
// over the probe set. Unlike charge continuity (which j_c alone satisfies),
// this residual explodes near the capacitor edges when the solenoid currents
// j_s are dropped.
using FieldFn = std::function<FieldSample(const SpacetimePoint&)>;
double source_consistency_residual(const FieldFn& fields, const SourceFn& sources,
                                   const std::vector<SpacetimePoint>& probes, double h);

// Probe boxes covering the source support plus margin.
std::vector<SpacetimePoint> support_probes_rect(const SetupConfig& cfg,
                                                const RegularizationParams& reg, int n_per_axis);
std::vector<SpacetimePoint> support_probes_rhombus(const SetupConfig& cfg,
                                                   const RegularizationParams& reg,
                                                   int n_per_axis);
std::vector<CylPoint> support_probes_toroidal(const SetupConfig& cfg,
                                              const RegularizationParams& reg, int n_per_axis);

}  // namespace abphase

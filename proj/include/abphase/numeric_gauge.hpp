#pragma once

#include <memory>

#include "abphase/poisson.hpp"

namespace abphase {

// Coulomb-gauge potential obtained numerically: one spatial Poisson solve for
// the gauge profile u(x, y) (the time dependence factorizes into the smooth
// window), then
//   phi'(t,x,y) = [d(t) - d(t-T)] * u(x,y)
//   A'(t,x,y)   = A_temporal(t,x,y) - w(t) * grad u(x,y)
// Gradients are central differences on the grid, bilinearly interpolated.
class NumericCoulombField final : public PotentialField {
  public:
    NumericCoulombField(SetupConfig cfg, RegularizationParams reg, GaugeFunctionGrid grid);

    PotentialValue operator()(const SpacetimePoint& p) const override;
    GaugeKind gauge() const override { return GaugeKind::NumericCoulomb; }
    const SetupConfig& config() const override { return cfg_; }
    const RegularizationParams& regularization() const override { return reg_; }
    const GaugeFunctionGrid& grid() const { return grid_; }

    // Max |div A'| over interior grid nodes (central differences).
    double max_interior_divergence() const;

  private:
    SetupConfig cfg_;
    RegularizationParams reg_;
    RectTemporalGauge temporal_;
    GaugeFunctionGrid grid_;
    GaugeFunctionGrid grad_x_;
    GaugeFunctionGrid grad_y_;
};

struct NumericGaugeOptions {
    double x0 = 0.0, x1 = 0.0;  // 0,0 = automatic domain from the config
    double y0 = 0.0, y1 = 0.0;
    int n = 257;
    SolveOptions solve;
};

// Solves the gauge problem for the rectangular setup and wraps the result.
NumericCoulombField numeric_coulomb_transform(const SetupConfig& cfg,
                                              const RegularizationParams& reg,
                                              const NumericGaugeOptions& opts,
                                              SolverReport* report);

// Generic second application: divergence source taken from finite differences
// of `field`, zero boundary. Returns the grid of the residual gauge function
// (near zero when the input is already divergence-free).
GaugeFunctionGrid residual_gauge_solve(const PotentialField& field, double t_sample,
                                       const NumericGaugeOptions& opts, SolverReport* report);

}  // namespace abphase

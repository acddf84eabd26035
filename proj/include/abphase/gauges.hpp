#pragma once

#include "abphase/types.hpp"

namespace abphase {

enum class CutSide { Above, Below };

// Spatial profile of the gauge function for the rectangular setup,
//   F(x, y) = [arctan(x/y) - arctan((x-L)/y)] / 2.
// F is harmonic away from the half-line {y = 0, 0 < x < L}, across which it
// jumps by pi; the jump endpoints (0,0) and (L,0) are the fluxon cores.
// At y = 0 the one-sided limit is selected by `side`.
double gauge_profile(double x, double y, double L, CutSide side);

// As above but signals "on-branch-cut" when y == 0 (no side given).
double gauge_profile(double x, double y, double L);

// Temporal gauge for the rectangular setup: phi = 0 and
//   A_y = pi * [step(t) - step(t-T)] * [step(x) - step(x-L)] * delta(y).
class RectTemporalGauge final : public PotentialField {
  public:
    RectTemporalGauge(SetupConfig cfg, RegularizationParams reg);
    PotentialValue operator()(const SpacetimePoint& p) const override;
    GaugeKind gauge() const override { return GaugeKind::Temporal; }
    const SetupConfig& config() const override { return cfg_; }
    const RegularizationParams& regularization() const override { return reg_; }

  private:
    SetupConfig cfg_;
    RegularizationParams reg_;
};

// Coulomb gauge for the rectangular setup. Spatial factors are exact closed
// forms (the sheet singularity of the temporal A_y cancels against the jump
// of the gauge function, leaving A' smooth away from the two fluxon cores);
// only the time factors carry the eps_t regularization.
//
//   phi' = [delta(t) - delta(t-T)] * F(x, y)
//   A'_x = -w(t)/2 * [ y/(x^2+y^2) - y/((x-L)^2+y^2) ]
//   A'_y = +w(t)/2 * [ x/(x^2+y^2) - (x-L)/((x-L)^2+y^2) ]
//
// with w(t) the smooth window on [0, T]. div A' = 0 identically away from
// the cores, and E, B computed from (phi', A') coincide with the temporal
// gauge fields everywhere.
class RectCoulombGauge final : public PotentialField {
  public:
    RectCoulombGauge(SetupConfig cfg, RegularizationParams reg);
    // Signals "fluxon-core" within 1e-12 * L of (0,0) or (L,0).
    PotentialValue operator()(const SpacetimePoint& p) const override;
    GaugeKind gauge() const override { return GaugeKind::Coulomb; }
    const SetupConfig& config() const override { return cfg_; }
    const RegularizationParams& regularization() const override { return reg_; }

  private:
    SetupConfig cfg_;
    RegularizationParams reg_;
};

// Indicator of the boosted rhombus |x| <= v*min(t, T-t) with every step
// argument smeared independently by eps_x. Exposes exact partial derivatives
// for the source formulas.
struct RhombusShape {
    double T = 1.0;
    double v = 0.5;
    double eps = 0.01;

    double value(double t, double x) const;
    double dt(double t, double x) const;
    double dx(double t, double x) const;
    double dtt(double t, double x) const;
    double dxx(double t, double x) const;
};

// Temporal gauge for the boosted rhombus:
//   A_y = pi * step(vt-x) step(vt+x) step(x-v(t-T)) step(-x-v(t-T)) * delta(y).
class RhombusTemporalGauge final : public PotentialField {
  public:
    RhombusTemporalGauge(SetupConfig cfg, RegularizationParams reg);
    PotentialValue operator()(const SpacetimePoint& p) const override;
    GaugeKind gauge() const override { return GaugeKind::Temporal; }
    const SetupConfig& config() const override { return cfg_; }
    const RegularizationParams& regularization() const override { return reg_; }
    const RhombusShape& shape() const { return shape_; }

  private:
    SetupConfig cfg_;
    RegularizationParams reg_;
    RhombusShape shape_;
};

struct CylPotentialValue {
    double phi = 0.0;
    double ar = 0.0;
    double az = 0.0;
};

// Temporal gauge for the toroidal setup, cylindrical coordinates:
//   A_z = pi * [step(t) - step(t-T)] * step(R_tor - r) * delta(z).
// The r step uses eps_x, the z delta uses eps_y.
class ToroidalTemporalGauge {
  public:
    ToroidalTemporalGauge(SetupConfig cfg, RegularizationParams reg);
    CylPotentialValue operator()(const CylPoint& p) const;
    const SetupConfig& config() const { return cfg_; }
    const RegularizationParams& regularization() const { return reg_; }

  private:
    SetupConfig cfg_;
    RegularizationParams reg_;
};

}  // namespace abphase

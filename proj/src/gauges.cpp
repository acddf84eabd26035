#include "abphase/gauges.hpp"

#include <cmath>

#include "abphase/kernels.hpp"

namespace abphase {

namespace k = kernels;

namespace {

// One-sided limit of arctan(x/y) as y -> 0 from the given side; sign(0) = 0
// keeps the half-step convention at the cores.
double arctan_limit_at_cut(double x, CutSide side) {
    const double s = (x > 0.0) ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
    return (side == CutSide::Above ? 1.0 : -1.0) * s * (kPi / 2.0);
}

}  // namespace

double gauge_profile(double x, double y, double L, CutSide side) {
    if (y == 0.0) {
        return 0.5 * (arctan_limit_at_cut(x, side) - arctan_limit_at_cut(x - L, side));
    }
    return 0.5 * (std::atan(x / y) - std::atan((x - L) / y));
}

double gauge_profile(double x, double y, double L) {
    if (y == 0.0) throw GeometryError("on-branch-cut: F(x, 0) needs a side");
    return gauge_profile(x, y, L, CutSide::Above);
}

// --- rectangular, temporal gauge --------------------------------------------

RectTemporalGauge::RectTemporalGauge(SetupConfig cfg, RegularizationParams reg)
    : cfg_(cfg), reg_(reg) {
    validate_config(cfg_, reg_);
}

PotentialValue RectTemporalGauge::operator()(const SpacetimePoint& p) const {
    PotentialValue v;
    v.ay = kPi * k::window(p.t, cfg_.T, reg_.eps_t) * k::xwindow(p.x, cfg_.L, reg_.eps_x) *
           k::delta(p.y, reg_.eps_y);
    return v;
}

// --- rectangular, Coulomb gauge ---------------------------------------------

RectCoulombGauge::RectCoulombGauge(SetupConfig cfg, RegularizationParams reg)
    : cfg_(cfg), reg_(reg) {
    validate_config(cfg_, reg_);
}

PotentialValue RectCoulombGauge::operator()(const SpacetimePoint& p) const {
    const double L = cfg_.L;
    const double threshold = 1e-12 * L;
    const double r0sq = p.x * p.x + p.y * p.y;
    const double xl = p.x - L;
    const double rlsq = xl * xl + p.y * p.y;
    if (r0sq < threshold * threshold || rlsq < threshold * threshold)
        throw GeometryError("fluxon-core: potential singular at (0,0) and (L,0)");

    const double w = k::window(p.t, cfg_.T, reg_.eps_t);
    const double dw = k::window_deriv(p.t, cfg_.T, reg_.eps_t);

    PotentialValue v;
    // exactly on the cut the two one-sided limits average to the half-step
    // convention; quadrature nodes never land there
    const double f = (p.y == 0.0)
                         ? 0.5 * (gauge_profile(p.x, 0.0, L, CutSide::Above) +
                                  gauge_profile(p.x, 0.0, L, CutSide::Below))
                         : gauge_profile(p.x, p.y, L, CutSide::Above);
    v.phi = dw * f;
    v.ax = -0.5 * w * (p.y / r0sq - p.y / rlsq);
    v.ay = 0.5 * w * (p.x / r0sq - xl / rlsq);
    return v;
}

// --- rhombus -----------------------------------------------------------------

// The four step arguments of the rhombus indicator, each a linear form
// a*t + b*x + c smeared with the same eps. Derivatives are exact chain rules.
namespace {
struct Lin {
    double a, b, c;
    double u(double t, double x) const { return a * t + b * x + c; }
};
}  // namespace

double RhombusShape::value(double t, double x) const {
    const Lin f[4] = {{v, -1.0, 0.0}, {v, 1.0, 0.0}, {-v, 1.0, v * T}, {-v, -1.0, v * T}};
    double s = 1.0;
    for (const auto& l : f) s *= k::step(l.u(t, x), eps);
    return s;
}

namespace {

// Product of four smooth steps with value/first/second partials in (t, x).
struct ShapeDerivs {
    double s = 1.0, st = 0.0, sx = 0.0, stt = 0.0, sxx = 0.0;
};

ShapeDerivs shape_derivs(double t, double x, double T, double v, double eps) {
    const Lin f[4] = {{v, -1.0, 0.0}, {v, 1.0, 0.0}, {-v, 1.0, v * T}, {-v, -1.0, v * T}};
    double val[4], dt1[4], dx1[4], dt2[4], dx2[4];
    for (int i = 0; i < 4; ++i) {
        const double u = f[i].u(t, x);
        const double st = k::step(u, eps);
        const double de = k::delta(u, eps);
        const double dp = k::delta_prime(u, eps);
        val[i] = st;
        dt1[i] = f[i].a * de;
        dx1[i] = f[i].b * de;
        dt2[i] = f[i].a * f[i].a * dp;
        dx2[i] = f[i].b * f[i].b * dp;
    }
    ShapeDerivs out;
    out.s = val[0] * val[1] * val[2] * val[3];
    for (int i = 0; i < 4; ++i) {
        double rest = 1.0;
        for (int j = 0; j < 4; ++j)
            if (j != i) rest *= val[j];
        out.st += dt1[i] * rest;
        out.sx += dx1[i] * rest;
        out.stt += dt2[i] * rest;
        out.sxx += dx2[i] * rest;
    }
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            double rest = 1.0;
            for (int m = 0; m < 4; ++m)
                if (m != i && m != j) rest *= val[m];
            out.stt += 2.0 * dt1[i] * dt1[j] * rest;
            out.sxx += 2.0 * dx1[i] * dx1[j] * rest;
        }
    }
    return out;
}

}  // namespace

double RhombusShape::dt(double t, double x) const { return shape_derivs(t, x, T, v, eps).st; }
double RhombusShape::dx(double t, double x) const { return shape_derivs(t, x, T, v, eps).sx; }
double RhombusShape::dtt(double t, double x) const { return shape_derivs(t, x, T, v, eps).stt; }
double RhombusShape::dxx(double t, double x) const { return shape_derivs(t, x, T, v, eps).sxx; }

RhombusTemporalGauge::RhombusTemporalGauge(SetupConfig cfg, RegularizationParams reg)
    : cfg_(cfg), reg_(reg) {
    validate_config(cfg_, reg_);
    if (!(cfg_.v > 0.0)) throw ConfigError("rhombus variant needs v > 0");
    shape_.T = cfg_.T;
    shape_.v = cfg_.v;
    shape_.eps = reg_.eps_x;
}

PotentialValue RhombusTemporalGauge::operator()(const SpacetimePoint& p) const {
    PotentialValue v;
    v.ay = kPi * shape_.value(p.t, p.x) * k::delta(p.y, reg_.eps_y);
    return v;
}

// --- toroidal ----------------------------------------------------------------

ToroidalTemporalGauge::ToroidalTemporalGauge(SetupConfig cfg, RegularizationParams reg)
    : cfg_(cfg), reg_(reg) {
    validate_config(cfg_, reg_);
}

CylPotentialValue ToroidalTemporalGauge::operator()(const CylPoint& p) const {
    if (p.r < 0.0) throw GeometryError("cylindrical radius must be nonnegative");
    CylPotentialValue v;
    v.az = kPi * k::window(p.t, cfg_.T, reg_.eps_t) * k::step(cfg_.R_tor - p.r, reg_.eps_x) *
           k::delta(p.z, reg_.eps_y);
    return v;
}

}  // namespace abphase

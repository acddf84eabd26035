#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "abphase/fields.hpp"
#include "abphase/kernels.hpp"

using namespace abphase;
namespace k = abphase::kernels;

namespace {

const SetupConfig cfg{};
const RegularizationParams reg{};

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    const double h = (b - a) / n;
    double sum = f(a) + f(b);
    for (int i = 1; i < n; ++i) sum += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

double simpson2d(const std::function<double(double, double)>& f, double ax, double bx, double ay,
                 double by, int n) {
    return simpson([&](double x) { return simpson([&](double y) { return f(x, y); }, ay, by, n); },
                   ax, bx, n);
}

}  // namespace

TEST_CASE("analytic fields: quiet mid-window, fluxon core value") {
    const FieldSample mid = rect_fields_analytic(cfg, reg, {0.5, 0.5, 0.0});
    CHECK(std::abs(mid.ex) < 1e-12);
    CHECK(std::abs(mid.ey) < 1e-12);
    CHECK(std::abs(mid.bz) < 1e-12);

    const FieldSample core = rect_fields_analytic(cfg, reg, {0.5, 0.0, 0.0});
    const double expected = kPi * k::delta(0.0, reg.eps_x) * k::delta(0.0, reg.eps_y);
    CHECK(core.bz == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("disk fluxes quantize to +pi and -pi") {
    const auto bz = [&](double x, double y) {
        return rect_fields_analytic(cfg, reg, {0.5, x, y}).bz;
    };
    const double half = 10.0 * reg.eps_x;
    const double left = simpson2d(bz, -half, half, -half, half, 200);
    const double right = simpson2d(bz, cfg.L - half, cfg.L + half, -half, half, 200);
    CHECK(left == doctest::Approx(kPi).epsilon(1e-6));
    CHECK(right == doctest::Approx(-kPi).epsilon(1e-6));
    CHECK(left + right == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("numeric fields agree with the closed forms at O(h^2)") {
    const RectTemporalGauge field(cfg, reg);
    const double peak = kPi * k::delta(0.0, reg.eps_t) * k::delta(0.0, reg.eps_y);

    std::mt19937 rng(23);
    std::uniform_real_distribution<double> ut(-0.1, 1.1), ux(-0.1, 1.1), uy(-0.04, 0.04);

    // Central differences of Gaussian kernels carry a relative error of about
    // h^2/(2 eps^2); eps/40 meets the 1e-4 target, eps/10 sits near 2e-3.
    const auto max_err = [&](double h) {
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const SpacetimePoint p{ut(rng), ux(rng), uy(rng)};
            const FieldSample num = fields_numeric(field, p, h);
            const FieldSample ana = rect_fields_analytic(cfg, reg, p);
            worst = std::max({worst, std::abs(num.ex - ana.ex), std::abs(num.ey - ana.ey),
                              std::abs(num.bz - ana.bz)});
        }
        return worst / peak;
    };
    CHECK(max_err(reg.eps_t / 40.0) < 1e-4);
    CHECK(max_err(reg.eps_t / 10.0) < 5e-3);
}

TEST_CASE("halving the step cuts the finite-difference error by about 4") {
    const RectTemporalGauge field(cfg, reg);
    const SpacetimePoint p{0.004, 0.5, 0.006};  // on the firing front
    const FieldSample ana = rect_fields_analytic(cfg, reg, p);
    const auto err = [&](double h) {
        const FieldSample num = fields_numeric(field, p, h);
        return std::abs(num.ey - ana.ey);
    };
    const double ratio = err(reg.eps_t / 8.0) / err(reg.eps_t / 16.0);
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
}

TEST_CASE("numeric fields on the Coulomb potentials vanish away from everything") {
    // probes sit away from the source support in space AND in time: at the
    // firing instants the potentials themselves swing, and an O(h^2) stencil
    // cannot resolve the E = 0 cancellation to 1e-8 there
    const RectCoulombGauge field(cfg, reg);
    for (const SpacetimePoint p : {SpacetimePoint{0.5, 3.0, 3.0}, SpacetimePoint{0.25, 3.0, 3.0},
                                   SpacetimePoint{-0.4, -2.0, 1.5}}) {
        const FieldSample f = fields_numeric(field, p, reg.eps_t / 10.0);
        CHECK(std::abs(f.ex) < 1e-8);
        CHECK(std::abs(f.ey) < 1e-8);
        CHECK(std::abs(f.bz) < 1e-8);
    }
}

TEST_CASE("fields_numeric validates its step") {
    const RectTemporalGauge field(cfg, reg);
    CHECK_THROWS_AS(fields_numeric(field, {0, 0, 0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(fields_numeric(field, {0, 0, 0}, reg.eps_t), std::invalid_argument);
}

TEST_CASE("charge density is a dipole layer") {
    const double mass = simpson([&](double y) { return rect_charge_density(cfg, reg, {0, 0.5, y}); },
                                -8.0 * reg.eps_y, 8.0 * reg.eps_y, 4000);
    CHECK(std::abs(mass) < 1e-10);

    const double moment =
        simpson([&](double y) { return y * rect_charge_density(cfg, reg, {0, 0.5, y}); },
                -8.0 * reg.eps_y, 8.0 * reg.eps_y, 4000);
    CHECK(moment == doctest::Approx(0.25 * k::delta(0.0, reg.eps_t)).epsilon(1e-6));

    CHECK(std::abs(rect_charge_density(cfg, reg, {0.5, 0.5, 0.005})) < 1e-12);
}

TEST_CASE("currents: quiet mid-window, zero after the window") {
    const CurrentSplit mid = rect_current_density(cfg, reg, {0.5, 0.5, 0.0});
    CHECK(std::abs(mid.jc_y) < 1e-12);
    CHECK(std::abs(mid.js_x) < 1e-12);
    CHECK(std::abs(mid.js_y) < 1e-12);

    const CurrentSplit late = rect_current_density(cfg, reg, {2.0, 0.0, 0.0});
    CHECK(std::abs(late.jc_y) < 1e-12);
    CHECK(std::abs(late.js_y) < 1e-12);
}

TEST_CASE("solenoid current circulates only near the cores") {
    // On a circle around a core, j_s . dl = -(1/4) dM/dr ds pointwise.
    const auto circulation = [&](double radius) {
        const int n = 4000;
        double js_sum = 0.0, dm_sum = 0.0;
        const double hr = 1e-6;
        for (int i = 0; i < n; ++i) {
            const double a = 2.0 * kPi * i / n;
            const double cx = radius * std::cos(a), cy = radius * std::sin(a);
            const CurrentSplit j = rect_current_density(cfg, reg, {0.5, cx, cy});
            js_sum += (j.js_x * (-std::sin(a)) + j.js_y * std::cos(a)) * (2.0 * kPi * radius / n);
            const auto M = [&](double r) {
                return k::xwindow_deriv(r * std::cos(a), cfg.L, reg.eps_x) *
                       k::delta(r * std::sin(a), reg.eps_y);
            };
            dm_sum += (M(radius + hr) - M(radius - hr)) / (2.0 * hr) * (2.0 * kPi * radius / n);
        }
        return std::pair{js_sum, -0.25 * dm_sum};
    };
    const auto [near, near_oracle] = circulation(2.0 * reg.eps_x);
    CHECK(near == doctest::Approx(near_oracle).epsilon(1e-6));
    CHECK(std::abs(near) > 1.0);

    const auto [far, far_oracle] = circulation(8.0 * reg.eps_x);
    (void)far_oracle;
    CHECK(std::abs(far) < 1e-3 * std::abs(near));
}

TEST_CASE("continuity: analytic sources satisfy it, absent sources trivially") {
    const auto probes = support_probes_rect(cfg, reg, 5);
    const SourceFn sources = [&](const SpacetimePoint& p) { return rect_sources(cfg, reg, p); };
    double scale = 0.0;
    for (const auto& p : probes) {
        const double h = reg.eps_t / 20.0;
        const double dr = (rect_charge_density(cfg, reg, {p.t + h, p.x, p.y}) -
                           rect_charge_density(cfg, reg, {p.t - h, p.x, p.y})) /
                          (2.0 * h);
        scale = std::max(scale, std::abs(dr));
    }
    const double res = continuity_residual(sources, probes, reg.eps_t / 20.0);
    CHECK(res < 3e-3 * scale);

    const SourceFn nothing = [](const SpacetimePoint&) { return SourceSample{}; };
    CHECK(continuity_residual(nothing, probes, reg.eps_t / 20.0) == 0.0);
}

TEST_CASE("dropping the solenoid currents breaks the field equations loudly") {
    const auto probes = support_probes_rect(cfg, reg, 5);
    const double h = reg.eps_t / 40.0;
    const FieldFn fields = [&](const SpacetimePoint& p) {
        return rect_fields_analytic(cfg, reg, p);
    };
    const double full = source_consistency_residual(
        fields, [&](const SpacetimePoint& p) { return rect_sources(cfg, reg, p); }, probes, h);
    const double dropped = source_consistency_residual(
        fields,
        [&](const SpacetimePoint& p) {
            const CurrentSplit j = rect_current_density(cfg, reg, p);
            return SourceSample{rect_charge_density(cfg, reg, p), j.jc_x, j.jc_y};
        },
        probes, h);
    CHECK(dropped > 1e3 * full);
}

TEST_CASE("boosted dipole densities ride the rhombus fronts") {
    const double probe_y = reg.eps_y;

    // the outgoing electric-dipole front passes (t, x) = (T/4, vT/4)
    const double early = dipole_densities(cfg, reg, {0.25, cfg.v * 0.25, probe_y}).rho;
    CHECK(early > 1.0);
    const double below = dipole_densities(cfg, reg, {0.25, cfg.v * 0.25, -probe_y}).rho;
    CHECK(below == doctest::Approx(-early).epsilon(1e-12));

    // during [T/2, T] the returning front is active with flipped sign
    const double late = dipole_densities(cfg, reg, {0.75, cfg.v * 0.25, probe_y}).rho;
    CHECK(late == doctest::Approx(-early).epsilon(1e-10));
    const double idle = dipole_densities(cfg, reg, {0.75, cfg.v * 0.75, probe_y}).rho;
    CHECK(std::abs(idle) < 1e-10 * std::abs(early));

    // charge density scales linearly with the boost speed
    SetupConfig fast = cfg;
    fast.v = 2.0 * cfg.v;
    const double boosted = dipole_densities(fast, reg, {0.25, fast.v * 0.25, probe_y}).rho;
    CHECK(boosted == doctest::Approx(2.0 * early).epsilon(1e-6));
}

TEST_CASE("rhombus continuity holds for both time-like and space-like boosts") {
    for (double v : {0.5, 2.0}) {
        SetupConfig rcfg = cfg;
        rcfg.v = v;
        const auto probes = support_probes_rhombus(rcfg, reg, 5);
        const SourceFn sources = [&](const SpacetimePoint& p) {
            return dipole_densities(rcfg, reg, p);
        };
        const double r1 = continuity_residual(sources, probes, reg.eps_x / 10.0);
        const double r2 = continuity_residual(sources, probes, reg.eps_x / 20.0);
        CHECK(std::log2(r1 / r2) > 1.8);
    }
}

TEST_CASE("toroidal densities: dipole layer, exterior, ring-localized solenoid") {
    const double mass = simpson(
        [&](double z) { return toroidal_densities(cfg, reg, {0.0, 0.5, z}).rho; },
        -8.0 * reg.eps_y, 8.0 * reg.eps_y, 4000);
    CHECK(std::abs(mass) < 1e-10);

    const CylSourceSample outside = toroidal_densities(cfg, reg, {0.5, 2.0, 0.0});
    CHECK(std::abs(outside.rho) < 1e-12);
    CHECK(std::abs(outside.jr) < 1e-12);
    CHECK(std::abs(outside.jz) < 1e-12);

    const CylSourceSample ring = toroidal_densities(cfg, reg, {0.5, cfg.R_tor, 0.5 * reg.eps_y});
    CHECK(std::hypot(ring.jr, ring.jz) > 1.0);
    const CylSourceSample inside = toroidal_densities(cfg, reg, {0.5, 0.5 * cfg.R_tor, 0.0});
    CHECK(std::hypot(inside.jr, inside.jz) < 1e-10);
}

TEST_CASE("toroidal continuity converges at second order") {
    const auto probes = support_probes_toroidal(cfg, reg, 5);
    const CylSourceFn sources = [&](const CylPoint& p) { return toroidal_densities(cfg, reg, p); };
    const double r1 = continuity_residual_cyl(sources, probes, reg.eps_x / 10.0);
    const double r2 = continuity_residual_cyl(sources, probes, reg.eps_x / 20.0);
    CHECK(std::log2(r1 / r2) > 1.8);
}

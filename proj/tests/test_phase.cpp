#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "abphase/fields.hpp"
#include "abphase/gauges.hpp"
#include "abphase/phase.hpp"

using namespace abphase;

namespace {
const SetupConfig cfg{};
const RegularizationParams reg{};
const QuadratureSpec tight{1e-9, 1e-13, 40};
}  // namespace

TEST_CASE("closed-form phases: limits, midpoint split, outside cancellation") {
    {
        const auto [te, tm] = closed_form_phases(0.5, 1e-6, cfg);
        CHECK(te > kPi - 0.01);
        CHECK(te <= kPi);
        CHECK(std::abs(tm) < 0.01);
    }
    {
        const auto [te, tm] = closed_form_phases(0.5, 0.5, cfg);
        CHECK(te == doctest::Approx(kPi / 2).epsilon(1e-15));
        CHECK(tm == doctest::Approx(kPi / 2).epsilon(1e-15));
    }
    {
        const auto [te, tm] = closed_form_phases(-1.0, 0.01, cfg);
        CHECK(std::abs(te) < 0.01);
        CHECK(te + tm == 0.0);
    }
    {   // half-quantized at the edge, step convention H(0) = 1/2
        const auto [te, tm] = closed_form_phases(0.0, 0.3, cfg);
        CHECK(te + tm == doctest::Approx(kPi / 2).epsilon(1e-15));
    }
}

TEST_CASE("closed-form sum rule and monotonic handover") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> ux(0.01, 0.99);
    for (int i = 0; i < 50; ++i) {
        const auto [te, tm] = closed_form_phases(ux(rng), 0.3, cfg);
        CHECK(te + tm == doctest::Approx(kPi).epsilon(1e-14));
    }

    double prev_e = std::numeric_limits<double>::infinity();
    double prev_m = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 50; ++i) {
        const double d = 0.01 + i * 0.05;
        const auto [te, tm] = closed_form_phases(0.5, d, cfg);
        CHECK(te < prev_e);
        CHECK(tm > prev_m);
        prev_e = te;
        prev_m = tm;
    }
}

TEST_CASE("temporal-gauge crossing loop quantizes to pi") {
    const RectTemporalGauge field(cfg, reg);
    const PhaseBreakdown b = electric_path_phase(0.5, 0.25, 0.5, field, tight);
    CHECK(b.theta_e == 0.0);  // phi = 0 everywhere
    CHECK(b.theta_total == doctest::Approx(kPi).epsilon(1e-9));
    CHECK(std::abs(b.theta_total - kPi) < 1e-6);
    CHECK(std::abs(b.theta_total - (b.theta_e + b.theta_m)) <= b.quad_error);
}

TEST_CASE("loops that never touch the active region pick up nothing") {
    const RectTemporalGauge field(cfg, reg);
    const PolyPath late = PolyPath::make({{1.5, 0.5, -0.25},
                                          {1.8, 0.5, -0.25},
                                          {1.9, 0.5, 0.0},
                                          {1.8, 0.5, 0.25},
                                          {1.5, 0.5, 0.25},
                                          {1.5, 0.5, -0.25}},
                                         true);
    CHECK(std::abs(loop_phase(field, late, tight).theta_total) < 1e-12);
}

TEST_CASE("the same loop in the Coulomb gauge splits the phase per the closed form") {
    const RectCoulombGauge field(cfg, reg);
    const PhaseBreakdown b = electric_path_phase(0.5, 0.25, 0.5, field, tight);
    const auto [te, tm] = closed_form_phases(0.5, 0.25, cfg);
    CHECK(b.theta_total == doctest::Approx(kPi).epsilon(1e-7));
    CHECK(b.theta_e == doctest::Approx(te).epsilon(1e-6));
    CHECK(b.theta_m == doctest::Approx(tm).epsilon(1e-6));
    CHECK(b.theta_e > 0.5);  // genuinely split
    CHECK(b.theta_m > 0.5);
}

TEST_CASE("electric path: closed-form match, late interference, same-side split") {
    const RectCoulombGauge field(cfg, reg);

    const PhaseBreakdown b = electric_path_phase(0.5, 0.25, 0.5, field, tight);
    const auto [te, tm] = closed_form_phases(0.5, 0.25, cfg);
    CHECK(std::abs(b.theta_e - te) < 1e-5);
    CHECK(std::abs(b.theta_m - tm) < 1e-5);

    const PhaseBreakdown after = electric_path_phase(0.5, 0.25, cfg.T + 0.3, field, tight);
    CHECK(std::abs(after.theta_total) < 1e-6);

    const PolyPath same_side = electric_path_loop(0.5, 0.5, 0.25, 0.5, cfg, reg);
    const PhaseBreakdown ss = loop_phase(field, same_side, tight);
    CHECK(std::abs(ss.theta_total) < 1e-6);
}

TEST_CASE("magnetic path: single core pi, both cores cancel, empty region nothing") {
    const RectTemporalGauge temporal(cfg, reg);
    const RectCoulombGauge coulomb(cfg, reg);

    for (const PotentialField* field : {static_cast<const PotentialField*>(&temporal),
                                        static_cast<const PotentialField*>(&coulomb)}) {
        const PhaseBreakdown left = magnetic_path_phase(FluxonChoice::Left, 0.25, 0.5, *field,
                                                        tight);
        CHECK(left.theta_m == doctest::Approx(kPi).epsilon(1e-6));
        CHECK(std::abs(left.theta_e) < 1e-9);

        const PhaseBreakdown both =
            magnetic_path_phase(FluxonChoice::Both, 0.75, 0.5, *field, tight);
        CHECK(std::abs(both.theta_total) < 1e-6);

        const PhaseBreakdown neither =
            magnetic_path_phase(FluxonChoice::Neither, 0.25, 0.5, *field, tight);
        CHECK(std::abs(neither.theta_total) < 1e-12);
    }

    const PhaseBreakdown right =
        magnetic_path_phase(FluxonChoice::Right, 0.25, 0.5, coulomb, tight);
    CHECK(right.theta_m == doctest::Approx(-kPi).epsilon(1e-6));
}

TEST_CASE("reversing a loop negates every phase component") {
    const RectCoulombGauge field(cfg, reg);
    const PolyPath loop = electric_path_loop(0.4, 0.3, -0.45, 0.6, cfg, reg);
    const PhaseBreakdown fwd = loop_phase(field, loop, tight);
    const PhaseBreakdown bwd = loop_phase(field, reverse_path(loop), tight);
    CHECK(bwd.theta_e == doctest::Approx(-fwd.theta_e).epsilon(1e-9));
    CHECK(bwd.theta_m == doctest::Approx(-fwd.theta_m).epsilon(1e-9));
    CHECK(bwd.theta_total == doctest::Approx(-fwd.theta_total).epsilon(1e-9));
}

TEST_CASE("loop_phase rejects open loops and core-grazing Coulomb loops") {
    const RectCoulombGauge coulomb(cfg, reg);
    const RectTemporalGauge temporal(cfg, reg);
    const PolyPath open = PolyPath::make({{0, 0.5, -0.3}, {0.5, 0.5, 0.3}}, false);
    CHECK_THROWS_WITH_AS(loop_phase(coulomb, open, tight), "loop not closed", GeometryError);

    const PolyPath grazing = PolyPath::make({{0.3, 0.01, -0.2},
                                             {0.5, 0.01, -0.2},
                                             {0.5, 0.01, 0.2},
                                             {0.3, 0.01, 0.2},
                                             {0.3, 0.01, -0.2}},
                                            true);
    CHECK_THROWS_WITH_AS(loop_phase(coulomb, grazing, tight),
                         "loop enters fluxon core exclusion zone", GeometryError);
    CHECK_NOTHROW(loop_phase(temporal, grazing, tight));  // temporal gauge has no cores
}

TEST_CASE("classify_path: canonical loops") {
    const PolyPath path1 = electric_path_loop(0.5, 0.25, -0.25, 0.5, cfg, reg);
    const PathClassification c1 = classify_path(path1, cfg, reg);
    CHECK(c1.sheet_crossings == 1);
    CHECK(c1.winding_left == 0);
    CHECK(c1.winding_right == 0);
    CHECK(c1.predicted_phase == doctest::Approx(kPi));

    const PolyPath path2 = magnetic_path_loop(FluxonChoice::Left, 0.25, 0.5, cfg, reg);
    const PathClassification c2 = classify_path(path2, cfg, reg);
    CHECK(c2.sheet_crossings == 1);
    CHECK(c2.winding_left == 1);
    CHECK(c2.winding_right == 0);

    const PolyPath path3 = magnetic_path_loop(FluxonChoice::Both, 0.75, 0.5, cfg, reg);
    const PathClassification c3 = classify_path(path3, cfg, reg);
    CHECK(c3.winding_left == 1);
    CHECK(c3.winding_right == 1);
    CHECK(c3.sheet_crossings == 0);
    CHECK(c3.predicted_phase == 0.0);

    const PolyPath near_core = PolyPath::make(
        {{0.3, 0.005, -0.2}, {0.5, 0.005, -0.2}, {0.5, 0.005, 0.2}, {0.3, 0.005, -0.2}}, true);
    CHECK_THROWS_WITH_AS(classify_path(near_core, cfg, reg), "loop passes within eps of a core",
                         GeometryError);
}

TEST_CASE("classification predicts the quadrature result") {
    const RectTemporalGauge field(cfg, reg);
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> ux(0.2, 0.8), ud(0.3, 0.7), ut(0.4, 0.6);
    for (int i = 0; i < 10; ++i) {
        const PolyPath loop =
            electric_path_loop(ux(rng), ud(rng), -ud(rng), ut(rng), cfg, reg);
        const PathClassification cls = classify_path(loop, cfg, reg);
        const PhaseBreakdown b = loop_phase(field, loop, tight);
        CHECK(b.theta_total == doctest::Approx(cls.predicted_phase).epsilon(1e-6));
    }
}

TEST_CASE("loop phase obeys Stokes' theorem against the analytic flux") {
    // A small CCW square mid-window captures part of the left fluxon's
    // Gaussian flux; the loop integral must match the area integral of B_z
    // computed by an independent Simpson rule.
    const RectTemporalGauge field(cfg, reg);
    const double ylo = -0.5 * reg.eps_y;  // off-center: partial capture
    const double yhi = 6.0 * reg.eps_y;
    const double xlo = -5.0 * reg.eps_x;
    const double xhi = 4.0 * reg.eps_x;
    const PolyPath square = PolyPath::make({{0.5, xlo, ylo},
                                            {0.5, xhi, ylo},
                                            {0.5, xhi, yhi},
                                            {0.5, xlo, yhi},
                                            {0.5, xlo, ylo}},
                                           true);
    const PhaseBreakdown b = loop_phase(field, square, tight);

    const auto simpson = [](const std::function<double(double)>& f, double a, double c, int n) {
        const double h = (c - a) / n;
        double sum = f(a) + f(c);
        for (int i = 1; i < n; ++i) sum += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
        return sum * h / 3.0;
    };
    const double flux = simpson(
        [&](double x) {
            return simpson(
                [&](double y) { return rect_fields_analytic(cfg, reg, {0.5, x, y}).bz; }, ylo,
                yhi, 400);
        },
        xlo, xhi, 400);

    CHECK(flux > 0.3);  // genuinely partial capture, not a trivial 0 or pi
    CHECK(flux < 3.0);
    CHECK(b.theta_m == doctest::Approx(flux).epsilon(1e-7));
}

TEST_CASE("loops with no y motion pick up nothing from the sheet potential") {
    const RectTemporalGauge field(cfg, reg);
    const PolyPath flat = PolyPath::make({{0.2, -0.3, 0.0},
                                          {0.4, 0.5, 0.0},
                                          {0.8, 1.2, 0.0},
                                          {0.3, 0.4, 0.0},
                                          {0.2, -0.3, 0.0}},
                                         true);
    const PhaseBreakdown b = loop_phase(field, flat, tight);
    CHECK(b.theta_m == 0.0);  // A is y-directed and dy = 0 on every segment
    CHECK(b.theta_e == 0.0);
}

TEST_CASE("electric path loop builder rejects interference inside the firing margin") {
    CHECK_THROWS_AS(electric_path_loop(0.5, 0.25, -0.25, 0.05, cfg, reg), GeometryError);
    CHECK_THROWS_AS(electric_path_loop(0.5, 0.25, -0.25, cfg.T + 0.01, cfg, reg), GeometryError);
    CHECK_THROWS_AS(magnetic_path_loop(FluxonChoice::Left, 0.01, 0.5, cfg, reg), GeometryError);
    CHECK_THROWS_AS(magnetic_path_loop(FluxonChoice::Left, 0.25, 0.01, cfg, reg), GeometryError);
}

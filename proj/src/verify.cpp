#include "abphase/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <ostream>
#include <random>

#include "abphase/fields.hpp"
#include "abphase/gauges.hpp"
#include "abphase/io.hpp"
#include "abphase/kernels.hpp"
#include "abphase/numeric_gauge.hpp"
#include "abphase/phase.hpp"
#include "abphase/poisson.hpp"

// Every oracle here uses its own quadrature and differencing (composite
// Simpson, plain central differences), independent of the Gauss-Kronrod
// engine and analytic kernels it cross-checks.

namespace abphase {

namespace k = kernels;

namespace {

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    if (n % 2 != 0) ++n;
    const double h = (b - a) / n;
    double sum = f(a) + f(b);
    for (int i = 1; i < n; ++i) sum += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

double simpson2d(const std::function<double(double, double)>& f, double ax, double bx, double ay,
                 double by, int nx, int ny) {
    return simpson(
        [&](double x) {
            return simpson([&](double y) { return f(x, y); }, ay, by, ny);
        },
        ax, bx, nx);
}

OracleReport make_report(std::string name, double measured, double expected, double tolerance,
                         double order = std::numeric_limits<double>::quiet_NaN()) {
    OracleReport r;
    r.name = std::move(name);
    r.measured = measured;
    r.expected = expected;
    r.tolerance = tolerance;
    r.pass = std::abs(measured - expected) <= tolerance;
    r.order = order;
    return r;
}

bool monotone_decreasing(const std::vector<double>& errs) {
    for (std::size_t i = 1; i < errs.size(); ++i)
        if (errs[i] > errs[i - 1]) return false;
    return true;
}

double mean_order(const std::vector<double>& errs) {
    double sum = 0.0;
    int n = 0;
    for (std::size_t i = 1; i < errs.size(); ++i) {
        if (errs[i] > 0.0 && errs[i - 1] > 0.0) {
            sum += std::log2(errs[i - 1] / errs[i]);
            ++n;
        }
    }
    return n ? sum / n : std::numeric_limits<double>::quiet_NaN();
}

// Pairing of the Lorentzian kernel (1/pi) a/(a^2+u^2) with a test function,
// on geometrically graded panels so the kernel scale and the test-function
// scale are both resolved for any a.
double lorentzian_pairing(double a, const std::function<double(double)>& g, double umax) {
    const auto integrand = [&](double u) { return a / (kPi * (a * a + u * u)) * g(u); };
    double total = simpson(integrand, -10.0 * a, 10.0 * a, 200);
    double lo = 10.0 * a;
    while (lo < umax) {
        const double hi = std::min(5.0 * lo, umax);
        total += simpson(integrand, lo, hi, 200);
        total += simpson(integrand, -hi, -lo, 200);
        lo = hi;
    }
    return total;
}

}  // namespace

std::vector<OracleReport> check_delta_identities(double tolerance) {
    std::vector<OracleReport> out;

    // (a) integral over y of (1/pi) x/(x^2+y^2) -> sign(x) as x -> 0.
    {
        std::vector<double> errs;
        double finest = 0.0;
        for (double x : {0.4, 0.2, 0.1, 0.05}) {
            finest = lorentzian_pairing(x, [](double) { return 1.0; }, 100.0);
            errs.push_back(std::abs(finest - 1.0));
        }
        OracleReport r = make_report("delta-a-poisson-to-sign", finest, 1.0, tolerance,
                                     mean_order(errs));
        r.pass = r.pass && monotone_decreasing(errs);
        out.push_back(r);
    }

    // (b) pairing of the classical d/dy arctan(x/y) = -x/(x^2+y^2) with a
    // Gaussian test -> -pi f(0).
    {
        std::vector<double> errs;
        double finest = 0.0;
        for (double x : {0.02, 0.005, 0.00125, 0.0003125}) {
            finest = -kPi *
                     lorentzian_pairing(x, [](double y) { return std::exp(-0.5 * y * y); }, 40.0);
            errs.push_back(std::abs(finest - (-kPi)));
        }
        OracleReport r =
            make_report("delta-b-arctan-pairing", finest, -kPi, tolerance, mean_order(errs));
        r.pass = r.pass && monotone_decreasing(errs);
        out.push_back(r);
    }

    // (c) derivative chain of (a): the x-derivative of the sign-delta family
    // realized at two independent scales pairs to 2 pi f(0,0).
    {
        std::vector<double> errs;
        double finest = 0.0;
        for (double a : {0.008, 0.002, 0.0005, 0.000125}) {
            const double b = a / 4.0;
            const auto inner = [&](double x) {
                return lorentzian_pairing(
                    b, [x](double y) { return std::exp(-0.5 * (x * x + y * y)); }, 20.0);
            };
            finest = 2.0 * kPi * lorentzian_pairing(a, inner, 20.0);
            errs.push_back(std::abs(finest - 2.0 * kPi));
        }
        OracleReport r = make_report("delta-c-derivative-chain", finest, 2.0 * kPi, tolerance,
                                     mean_order(errs));
        r.pass = r.pass && monotone_decreasing(errs);
        out.push_back(r);
    }

    // (d) pairing of d/dy [x/(x^2+y^2)] with an even test -> 0; the residual
    // is a pure truncation tail that shrinks with the window.
    {
        const double x = 0.01;
        std::vector<double> errs;
        double finest = 0.0;
        for (double Y : {1.0, 1.5, 2.0, 3.0}) {
            const auto f = [x](double y) {
                const double r2 = x * x + y * y;
                return -2.0 * x * y / (r2 * r2) * std::exp(-0.5 * y * y);
            };
            const double symmetric = simpson(f, -10.0 * x, 10.0 * x, 800) +
                                     simpson(f, -Y, -10.0 * x, 600) +
                                     simpson(f, 10.0 * x, Y, 600);
            finest = symmetric + simpson(f, Y, 2.0 * Y, 600);
            errs.push_back(std::abs(finest));
        }
        OracleReport r = make_report("delta-d-odd-pairing", finest, 0.0, tolerance,
                                     mean_order(errs));
        r.pass = r.pass && monotone_decreasing(errs);
        out.push_back(r);
    }

    return out;
}

namespace {

struct SuiteContext {
    SetupConfig cfg;
    RegularizationParams reg;
    SuiteOptions opts;
    std::mt19937_64 rng;

    RectTemporalGauge temporal;
    RectCoulombGauge coulomb;

    SuiteContext(const SetupConfig& c, const RegularizationParams& r, const SuiteOptions& o)
        : cfg(c), reg(r), opts(o), rng(o.seed), temporal(c, r), coulomb(c, r) {}

    double uniform(double a, double b) {
        std::uniform_real_distribution<double> d(a, b);
        return d(rng);
    }
};

}  // namespace

std::vector<PolyPath> admissible_loop_battery(const SetupConfig& cfg,
                                              const RegularizationParams& reg,
                                              std::uint64_t seed, int count) {
    const double m = kSupportCut * reg.eps_t;
    if (!(1.2 * m < cfg.T - 1.2 * m))
        throw ConfigError("loop battery needs eps_t below T/19");
    std::mt19937_64 rng(seed);
    const auto uniform = [&rng](double a, double b) {
        std::uniform_real_distribution<double> d(a, b);
        return d(rng);
    };
    std::vector<PolyPath> loops;

    const auto rect_loop = [&](double x, double y_lo, double y_hi, double t1, double t2) {
        std::vector<SpacetimePoint> v = {{t1, x, y_lo}, {t2, x, y_lo}, {t2, x, y_hi},
                                         {t1, x, y_hi}, {t1, x, y_lo}};
        return PolyPath::make(std::move(v), true);
    };
    const auto mid_window = [&] { return uniform(1.2 * m, cfg.T - 1.2 * m); };
    const double y_clear = std::max(0.35 * cfg.L, 8.5 * reg.eps_y);

    for (int i = 0; i < count; ++i) {
        const int kind = i % 5;
        const double x_safe =
            uniform(std::max(0.18 * cfg.L, reg.core_radius + 0.03 * cfg.L), 0.82 * cfg.L);
        switch (kind) {
            case 0:  // sheet-crossing rectangle in the (t, y) plane
                loops.push_back(rect_loop(x_safe, -uniform(y_clear, 0.8), uniform(y_clear, 0.8),
                                          -2.0 * m - uniform(0.0, 0.25 * cfg.T), mid_window()));
                break;
            case 1:  // entirely after the active window
                loops.push_back(rect_loop(x_safe, -uniform(y_clear, 0.8), uniform(y_clear, 0.8),
                                          cfg.T + 2.0 * m + uniform(0.05, 0.25) * cfg.T,
                                          cfg.T + 2.0 * m + uniform(0.3, 0.6) * cfg.T));
                break;
            case 2:  // both packets on the same side
                loops.push_back(rect_loop(x_safe, uniform(0.3, 0.45), uniform(0.55, 0.8),
                                          -2.0 * m - uniform(0.0, 0.25 * cfg.T), mid_window()));
                break;
            case 3: {  // circle around one core
                const double lo = reg.core_radius + 3.0 * reg.eps_y + 0.05 * cfg.L;
                const double radius = uniform(lo, std::max(0.4 * cfg.L, lo + 0.01 * cfg.L));
                loops.push_back(magnetic_path_loop(
                    i % 2 ? FluxonChoice::Left : FluxonChoice::Right, radius, mid_window(), cfg,
                    reg));
                break;
            }
            default:  // circle around both cores
                loops.push_back(magnetic_path_loop(
                    FluxonChoice::Both,
                    uniform(0.5 * cfg.L + reg.core_radius + 0.04 * cfg.L, 0.8 * cfg.L),
                    mid_window(), cfg, reg));
                break;
        }
    }
    return loops;
}

namespace {

void continuity_order_check(std::vector<OracleReport>& out, const std::string& name,
                            const std::function<double(double)>& residual_at, double h0) {
    const double r1 = residual_at(h0);
    const double r2 = residual_at(h0 / 2.0);
    const double r3 = residual_at(h0 / 4.0);
    const double o1 = std::log2(r1 / r2);
    const double o2 = std::log2(r2 / r3);
    out.push_back(make_report(name, std::min(o1, o2), 2.0, 0.5, std::min(o1, o2)));
}

double disk_flux(const SetupConfig& cfg, const RegularizationParams& reg, double cx, double cy,
                 double half_side) {
    return simpson2d(
        [&](double x, double y) {
            return rect_fields_analytic(cfg, reg, SpacetimePoint{0.5 * cfg.T, x, y}).bz;
        },
        cx - half_side, cx + half_side, cy - half_side, cy + half_side, 160, 160);
}

}  // namespace

std::vector<OracleReport> run_suite(const SetupConfig& cfg, const RegularizationParams& reg,
                                    const SuiteOptions& opts) {
    validate_config(cfg, reg);
    SuiteContext ctx(cfg, reg, opts);
    std::vector<OracleReport> out;
    const QuadratureSpec quad{1e-9, 1e-13, 40};
    const double m = kSupportCut * reg.eps_t;

    // --- delta identities ---
    for (auto& r : check_delta_identities(1e-3)) out.push_back(std::move(r));

    // --- non-radiating property, all configurations ---
    {
        const auto max_field_outside = [&](auto&& field_at, auto probes) {
            double worst = 0.0;
            for (const auto& p : probes) worst = std::max(worst, field_at(p));
            return worst;
        };

        const double my = 12.0 * reg.eps_y;
        const double mx = 12.0 * reg.eps_x;
        const double mt = 12.0 * reg.eps_t;
        const double far_y = std::max(0.5 * cfg.L, 2.5 * my);

        std::vector<SpacetimePoint> rect_probes;
        for (double t : {-0.5 * cfg.T, -mt, 0.0, 0.3 * cfg.T, cfg.T, cfg.T + mt, 1.5 * cfg.T})
            for (double x : {-0.5 * cfg.L, 0.0, 0.5 * cfg.L, cfg.L, 1.5 * cfg.L})
                for (double y : {-far_y, -2.0 * my, my, 2.0 * my, far_y})
                    rect_probes.push_back({t, x, y});
        for (double t : {-0.5 * cfg.T, 0.0, 0.5 * cfg.T, cfg.T, 1.5 * cfg.T})
            for (double x : {-far_y, -mx, cfg.L + mx, cfg.L + far_y})
                for (double y : {0.0, 0.4 * reg.eps_y, -reg.eps_y})
                    rect_probes.push_back({t, x, y});
        for (double x : {-0.3 * cfg.L, 0.0, 0.5 * cfg.L, cfg.L, 1.3 * cfg.L})
            for (double y : {0.0, reg.eps_y, -2.0 * reg.eps_y})
                for (double t : {-mt, -2.0 * mt, cfg.T + mt, cfg.T + 2.0 * mt})
                    rect_probes.push_back({t, x, y});

        out.push_back(make_report(
            "nonradiating-rect",
            max_field_outside(
                [&](const SpacetimePoint& p) {
                    const FieldSample f = rect_fields_analytic(cfg, reg, p);
                    return std::max({std::abs(f.ex), std::abs(f.ey), std::abs(f.bz)});
                },
                rect_probes),
            0.0, 1e-12));

        for (double v : {0.5, 2.0}) {
            SetupConfig rc = cfg;
            rc.v = v;
            std::vector<SpacetimePoint> probes;
            const double argm = 12.0 * reg.eps_x;
            for (double t : {0.15 * rc.T, 0.4 * rc.T, 0.6 * rc.T, 0.85 * rc.T}) {
                const double front = rc.v * std::min(t, rc.T - t);
                for (double y : {0.0, reg.eps_y, -2.0 * reg.eps_y, far_y}) {
                    probes.push_back({t, front + argm * (1.0 + rc.v), y});
                    probes.push_back({t, -front - argm * (1.0 + rc.v), y});
                }
            }
            const double tmarg = 12.0 * reg.eps_x / rc.v;
            for (double t : {-tmarg, rc.T + tmarg})
                for (double x : {0.0, 0.2 * rc.v * rc.T})
                    for (double y : {0.0, reg.eps_y}) probes.push_back({t, x, y});
            for (double t : {0.2 * rc.T, 0.5 * rc.T})
                for (double x : {0.0, 0.3 * rc.v * rc.T})
                    for (double y : {my, -2.0 * my, far_y}) probes.push_back({t, x, y});
            out.push_back(make_report(
                v < 1.0 ? "nonradiating-rhombus-timelike" : "nonradiating-rhombus-spacelike",
                max_field_outside(
                    [&](const SpacetimePoint& p) {
                        const FieldSample f = rhombus_fields_analytic(rc, reg, p);
                        return std::max({std::abs(f.ex), std::abs(f.ey), std::abs(f.bz)});
                    },
                    probes),
                0.0, 1e-12));
        }

        std::vector<CylPoint> tor_probes;
        const double far_z = std::max(0.4 * cfg.R_tor, 2.5 * my);
        for (double t : {-0.5 * cfg.T, 0.0, 0.5 * cfg.T, cfg.T, 1.5 * cfg.T})
            for (double r : {0.3 * cfg.R_tor, cfg.R_tor, cfg.R_tor + mx, 2.0 * cfg.R_tor})
                for (double z : {-far_z, -2.0 * my, my, far_z}) tor_probes.push_back({t, r, z});
        for (double t : {-mt, cfg.T + mt, 1.5 * cfg.T})
            for (double r : {0.5 * cfg.R_tor, cfg.R_tor})
                for (double z : {0.0, reg.eps_y}) tor_probes.push_back({t, r, z});
        for (double t : {0.0, 0.5 * cfg.T})
            for (double z : {0.0, reg.eps_y})
                tor_probes.push_back({t, cfg.R_tor + mx, z});
        out.push_back(make_report(
            "nonradiating-toroidal",
            max_field_outside(
                [&](const CylPoint& p) {
                    const CylFieldSample f = toroidal_fields_analytic(cfg, reg, p);
                    return std::max({std::abs(f.er), std::abs(f.ez), std::abs(f.bphi)});
                },
                tor_probes),
            0.0, 1e-12));
    }

    // --- Gauss law ---
    {
        const auto probes = support_probes_rect(cfg, reg, 6);
        const double h = std::min({reg.eps_x, reg.eps_y, reg.eps_t}) / 20.0;
        double scale = 0.0;
        for (const auto& p : probes)
            scale = std::max(scale, std::abs(4.0 * kPi * rect_charge_density(cfg, reg, p)));
        const auto residual_at = [&](double hh) {
            double worst = 0.0;
            for (const auto& p : probes) {
                const double div =
                    (rect_fields_analytic(cfg, reg, {p.t, p.x + hh, p.y}).ex -
                     rect_fields_analytic(cfg, reg, {p.t, p.x - hh, p.y}).ex +
                     rect_fields_analytic(cfg, reg, {p.t, p.x, p.y + hh}).ey -
                     rect_fields_analytic(cfg, reg, {p.t, p.x, p.y - hh}).ey) /
                    (2.0 * hh);
                worst = std::max(worst,
                                 std::abs(div - 4.0 * kPi * rect_charge_density(cfg, reg, p)));
            }
            return worst;
        };
        const double r1 = residual_at(h);
        const double r2 = residual_at(h / 2.0);
        out.push_back(make_report("gauss-law", r1 / scale, 0.0, 1e-2, std::log2(r1 / r2)));
    }

    // --- continuity, all three configurations ---
    {
        const double h0 = std::min({reg.eps_x, reg.eps_y, reg.eps_t}) / 5.0;
        const auto rect_probes = support_probes_rect(cfg, reg, 6);
        continuity_order_check(out, "continuity-order-rect", [&](double h) {
            return continuity_residual(
                [&](const SpacetimePoint& p) { return rect_sources(cfg, reg, p); }, rect_probes,
                h);
        }, h0);

        const auto rh_probes = support_probes_rhombus(cfg, reg, 6);
        continuity_order_check(out, "continuity-order-rhombus", [&](double h) {
            return continuity_residual(
                [&](const SpacetimePoint& p) { return dipole_densities(cfg, reg, p); }, rh_probes,
                h);
        }, h0);

        const auto tor_probes = support_probes_toroidal(cfg, reg, 6);
        continuity_order_check(out, "continuity-order-toroidal", [&](double h) {
            return continuity_residual_cyl(
                [&](const CylPoint& p) { return toroidal_densities(cfg, reg, p); }, tor_probes,
                h);
        }, h0);
    }

    // --- field-equation consistency (the check the solenoids exist for) ---
    {
        const auto probes = support_probes_rect(cfg, reg, 6);
        const double h = std::min({reg.eps_x, reg.eps_y, reg.eps_t}) / 20.0;
        double scale = 0.0;
        for (const auto& p : probes) {
            const SourceSample s = rect_sources(cfg, reg, p);
            scale = std::max({scale, 4.0 * kPi * std::abs(s.jx), 4.0 * kPi * std::abs(s.jy)});
        }
        const SourceFn sources = [&](const SpacetimePoint& p) {
            SourceSample s;
            const CurrentSplit split = rect_current_density(cfg, reg, p);
            s.rho = rect_charge_density(cfg, reg, p);
            s.jx = split.jc_x;
            s.jy = split.jc_y;
            if (!ctx.opts.drop_solenoids) {
                s.jx += split.js_x;
                s.jy += split.js_y;
            }
            return s;
        };
        const double res = source_consistency_residual(
            [&](const SpacetimePoint& p) { return rect_fields_analytic(cfg, reg, p); }, sources,
            probes, h);
        out.push_back(make_report("continuity-field-equations", res / scale, 0.0, 0.05));
    }

    // --- gauge relation by finite differences ---
    {
        double worst = 0.0;
        const double hs = 1e-4 * cfg.L;
        const double ht = reg.eps_t / 4000.0;
        const auto lambda_g = [&](const SpacetimePoint& p) {
            return -lambda_analytic(cfg, reg, p);
        };
        const double y_off = std::max(0.15 * cfg.L, 8.5 * reg.eps_y);
        for (int i = 0; i < 12; ++i) {
            SpacetimePoint p;
            p.t = ctx.uniform(0.2 * cfg.T, 0.8 * cfg.T);
            p.x = ctx.uniform(-0.5 * cfg.L, 1.5 * cfg.L);
            p.y = (i % 2 ? 1.0 : -1.0) * ctx.uniform(y_off, y_off + 0.5 * cfg.L);
            if (std::hypot(p.x, p.y) < 0.15 * cfg.L || std::hypot(p.x - cfg.L, p.y) < 0.15 * cfg.L)
                p.x = 0.5 * cfg.L;
            const PotentialValue a = ctx.temporal(p);
            const PotentialValue ac = ctx.coulomb(p);
            const double gx = (lambda_g({p.t, p.x + hs, p.y}) - lambda_g({p.t, p.x - hs, p.y})) /
                              (2.0 * hs);
            const double gy = (lambda_g({p.t, p.x, p.y + hs}) - lambda_g({p.t, p.x, p.y - hs})) /
                              (2.0 * hs);
            const double scale = std::max({std::abs(ac.ax), std::abs(ac.ay), 0.05});
            worst = std::max(worst, std::abs(ac.ax - a.ax - gx) / scale);
            worst = std::max(worst, std::abs(ac.ay - a.ay - gy) / scale);

            const SpacetimePoint q{ctx.uniform(-1.5 * reg.eps_t, 1.5 * reg.eps_t), p.x, p.y};
            const double dphi = -(lambda_g({q.t + ht, q.x, q.y}) - lambda_g({q.t - ht, q.x, q.y})) /
                                (2.0 * ht);
            const double phi = ctx.coulomb(q).phi;
            worst = std::max(worst, std::abs(phi - dphi) / std::max(std::abs(phi), 0.05));
        }
        out.push_back(make_report("gauge-relation", worst, 0.0, 1e-6));
    }

    // --- flux quantization and the loop around everything ---
    {
        const double half = 10.0 * std::max(reg.eps_x, reg.eps_y);
        const double flux_left = disk_flux(cfg, reg, 0.0, 0.0, half);
        const double flux_right = disk_flux(cfg, reg, cfg.L, 0.0, half);
        const PhaseBreakdown p3t = magnetic_path_phase(FluxonChoice::Both, 0.75 * cfg.L,
                                                       0.5 * cfg.T, ctx.temporal, quad);
        const PhaseBreakdown p3c = magnetic_path_phase(FluxonChoice::Both, 0.75 * cfg.L,
                                                       0.5 * cfg.T, ctx.coulomb, quad);
        const double worst =
            std::max({std::abs(flux_left - kPi), std::abs(flux_right + kPi),
                      std::abs(p3t.theta_total), std::abs(p3c.theta_total)});
        out.push_back(make_report("flux-quantization", worst, 0.0, 1e-6));
    }

    // --- phase quantization on the canonical crossing loop ---
    {
        const double d = std::max(0.25 * cfg.L, 8.5 * reg.eps_y);
        const PhaseBreakdown in =
            electric_path_phase(0.5 * cfg.L, d, 0.5 * cfg.T, ctx.temporal, quad);
        out.push_back(make_report("phase-quantization", in.theta_total, kPi, 1e-6));
        const PhaseBreakdown after =
            electric_path_phase(0.5 * cfg.L, d, cfg.T + 3.0 * m, ctx.temporal, quad);
        out.push_back(make_report("phase-quantization-outside", after.theta_total, 0.0, 1e-10));
    }

    // --- quantization error shrinks as eps is halved ---
    {
        const double x_edge = 0.05 * cfg.L;  // 2.5 eps at the coarse width
        const auto err_at = [&](double eps) {
            RegularizationParams r2 = reg;
            r2.eps_x = r2.eps_y = eps;
            r2.eps_t = std::min(reg.eps_t, eps);
            r2.core_radius = 3.0 * eps;
            RectTemporalGauge field(cfg, r2);
            const PhaseBreakdown b =
                electric_path_phase(x_edge, 0.3 * cfg.L, 0.5 * cfg.T, field, quad);
            return std::abs(b.theta_total - kPi);
        };
        const double e1 = err_at(0.02 * cfg.L);
        const double e2 = err_at(0.01 * cfg.L);
        out.push_back(
            make_report("phase-eps-convergence", e2, 0.0, 0.5 * e1, std::log2(e1 / e2)));
    }

    // --- closed-form phases vs quadrature over an (x, d) grid ---
    {
        double worst = 0.0;
        double worst_sum = 0.0;
        for (int ix = 0; ix < 8; ++ix) {
            const double x = -cfg.L + 3.0 * cfg.L * ix / 7.0;
            if (std::abs(x) < 1.1 * reg.core_radius || std::abs(x - cfg.L) < 1.1 * reg.core_radius)
                continue;
            for (int id = 0; id < 8; ++id) {
                const double d = 0.05 * cfg.L + (1.0 - 0.05) * cfg.L * id / 7.0;
                const PhaseBreakdown b =
                    electric_path_phase(x, d, 0.5 * cfg.T, ctx.coulomb, quad);
                const auto [te, tm] = closed_form_phases(x, d, cfg);
                worst = std::max({worst, std::abs(b.theta_e - te), std::abs(b.theta_m - tm)});
                const double sum_target = (x > 0.0 && x < cfg.L) ? kPi : 0.0;
                worst_sum = std::max(worst_sum, std::abs(b.theta_e + b.theta_m - sum_target));
            }
        }
        out.push_back(make_report("eq15-sweep", worst, 0.0, 1e-5));
        out.push_back(make_report("eq15-sum-rule", worst_sum, 0.0, 1e-6));
    }

    // --- one shared numeric gauge solve ---
    NumericGaugeOptions ngo;
    ngo.n = opts.numeric_grid;
    if (ngo.n <= 0) {
        const double target_h = std::min(reg.eps_x, reg.eps_y) / 2.5;
        ngo.n = static_cast<int>(std::ceil(2.5 * cfg.L / target_h)) + 1;
        ngo.n = std::max(ngo.n, 129);
    }
    SolverReport solver_report;
    const NumericCoulombField numeric =
        numeric_coulomb_transform(cfg, reg, ngo, &solver_report);

    // --- numeric gauge function vs the closed form ---
    {
        const GaugeFunctionGrid& g = numeric.grid();
        double num = 0.0, den = 0.0;
        for (int j = 0; j < g.ny; ++j) {
            const double y = g.y_at(j);
            if (std::abs(y) < 4.0 * reg.eps_y) continue;
            for (int i = 0; i < g.nx; ++i) {
                const double ref = gauge_profile(g.x_at(i), y, cfg.L,
                                                 y > 0.0 ? CutSide::Above : CutSide::Below);
                const double diff = g.values[g.idx(i, j)] - ref;
                num += diff * diff;
                den += ref * ref;
            }
        }
        out.push_back(make_report("poisson-vs-analytic", std::sqrt(num / den), 0.0, 1e-3));
    }

    // --- gauge invariance over the random loop battery ---
    {
        const auto loops =
            admissible_loop_battery(cfg, reg, opts.seed, std::max(opts.battery_loops, 10));
        double worst_c = 0.0, worst_n = 0.0;
        for (const auto& loop : loops) {
            const double tt = loop_phase(ctx.temporal, loop, quad).theta_total;
            const double tc = loop_phase(ctx.coulomb, loop, quad).theta_total;
            const double tn = loop_phase(numeric, loop, quad).theta_total;
            worst_c = std::max(worst_c, std::abs(tt - tc));
            worst_n = std::max(worst_n, std::abs(tt - tn));
        }
        out.push_back(make_report("gauge-invariance-battery", worst_c, 0.0, 1e-6));
        out.push_back(make_report("gauge-invariance-numeric", worst_n, 0.0, 1e-3));
    }

    // --- deformation invariance ---
    {
        const PathClassification base_cls =
            classify_path(electric_path_loop(0.4 * cfg.L, 0.5, -0.5, 0.55 * cfg.T, cfg, reg),
                          cfg, reg);
        double worst = 0.0;
        const double base = kPi;
        const double ti_lo = std::max(0.35 * cfg.T, 1.25 * m);
        const double ti_hi = std::min(0.7 * cfg.T, cfg.T - 1.05 * m);
        const double x_edge = std::max(0.2 * cfg.L, 8.5 * reg.eps_x);
        const double d_lo = std::max(0.3 * cfg.L, 8.5 * reg.eps_y);
        for (int i = 0; i < 10; ++i) {
            const double x = ctx.uniform(x_edge, cfg.L - x_edge);
            const PolyPath loop = electric_path_loop(
                x, ctx.uniform(d_lo, 0.7), ctx.uniform(-0.7, -d_lo), ctx.uniform(ti_lo, ti_hi),
                cfg, reg);
            const PathClassification cls = classify_path(loop, cfg, reg);
            if (cls.sheet_crossings != base_cls.sheet_crossings) {
                worst = std::numeric_limits<double>::infinity();
                break;
            }
            worst = std::max(worst,
                             std::abs(loop_phase(ctx.temporal, loop, quad).theta_total - base));
        }
        out.push_back(make_report("deformation-invariance", worst, 0.0, 1e-6));
    }

    std::sort(out.begin(), out.end(),
              [](const OracleReport& a, const OracleReport& b) { return a.name < b.name; });
    return out;
}

bool all_pass(const std::vector<OracleReport>& reports) {
    for (const auto& r : reports)
        if (!r.pass) return false;
    return true;
}

void write_report_text(std::ostream& os, const std::vector<OracleReport>& reports,
                       std::uint64_t seed) {
    os << "verification suite (seed " << seed << ")\n";
    for (const auto& r : reports) {
        os << (r.pass ? "PASS" : "FAIL") << "  " << std::left << std::setw(32) << r.name
           << " measured=" << format_double(r.measured) << " expected=" << format_double(r.expected)
           << " tol=" << format_double(r.tolerance);
        if (std::isfinite(r.order)) os << " order=" << format_double(r.order);
        os << "\n";
    }
}

void write_report_csv(std::ostream& os, const std::vector<OracleReport>& reports) {
    os << "check,measured,expected,tolerance,pass,order\n";
    for (const auto& r : reports) {
        os << r.name << "," << format_double(r.measured) << "," << format_double(r.expected) << ","
           << format_double(r.tolerance) << "," << (r.pass ? 1 : 0) << ","
           << (std::isfinite(r.order) ? format_double(r.order) : "") << "\n";
    }
}

}  // namespace abphase

#include "abphase/fields.hpp"

#include <cmath>

#include "abphase/kernels.hpp"

namespace abphase {

namespace k = kernels;

FieldSample rect_fields_analytic(const SetupConfig& cfg, const RegularizationParams& reg,
                                 const SpacetimePoint& p) {
    const double dy = k::delta(p.y, reg.eps_y);
    FieldSample f;
    f.ey = -kPi * k::window_deriv(p.t, cfg.T, reg.eps_t) * k::xwindow(p.x, cfg.L, reg.eps_x) * dy;
    f.bz = kPi * k::window(p.t, cfg.T, reg.eps_t) * k::xwindow_deriv(p.x, cfg.L, reg.eps_x) * dy;
    return f;
}

double rect_charge_density(const SetupConfig& cfg, const RegularizationParams& reg,
                           const SpacetimePoint& p) {
    return -0.25 * k::window_deriv(p.t, cfg.T, reg.eps_t) * k::xwindow(p.x, cfg.L, reg.eps_x) *
           k::delta_prime(p.y, reg.eps_y);
}

CurrentSplit rect_current_density(const SetupConfig& cfg, const RegularizationParams& reg,
                                  const SpacetimePoint& p) {
    const double tw = k::window(p.t, cfg.T, reg.eps_t);
    CurrentSplit j;
    j.jc_y = 0.25 * k::window_second(p.t, cfg.T, reg.eps_t) * k::xwindow(p.x, cfg.L, reg.eps_x) *
             k::delta(p.y, reg.eps_y);
    // curl(M z_hat) = (dM/dy, -dM/dx) with M = [d(x) - d(x-L)] d(y)
    j.js_x = 0.25 * tw * k::xwindow_deriv(p.x, cfg.L, reg.eps_x) * k::delta_prime(p.y, reg.eps_y);
    j.js_y = -0.25 * tw * k::xwindow_second(p.x, cfg.L, reg.eps_x) * k::delta(p.y, reg.eps_y);
    return j;
}

SourceSample rect_sources(const SetupConfig& cfg, const RegularizationParams& reg,
                          const SpacetimePoint& p) {
    const CurrentSplit j = rect_current_density(cfg, reg, p);
    SourceSample s;
    s.rho = rect_charge_density(cfg, reg, p);
    s.jx = j.jc_x + j.js_x;
    s.jy = j.jc_y + j.js_y;
    return s;
}

FieldSample rhombus_fields_analytic(const SetupConfig& cfg, const RegularizationParams& reg,
                                    const SpacetimePoint& p) {
    RhombusShape shape{cfg.T, cfg.v, reg.eps_x};
    const double dy = k::delta(p.y, reg.eps_y);
    FieldSample f;
    f.ey = -kPi * shape.dt(p.t, p.x) * dy;
    f.bz = kPi * shape.dx(p.t, p.x) * dy;
    return f;
}

SourceSample dipole_densities(const SetupConfig& cfg, const RegularizationParams& reg,
                              const SpacetimePoint& p) {
    RhombusShape shape{cfg.T, cfg.v, reg.eps_x};
    const double dy = k::delta(p.y, reg.eps_y);
    const double dpy = k::delta_prime(p.y, reg.eps_y);
    SourceSample s;
    s.rho = -0.25 * shape.dt(p.t, p.x) * dpy;
    s.jx = 0.25 * shape.dx(p.t, p.x) * dpy;
    s.jy = -0.25 * (shape.dxx(p.t, p.x) - shape.dtt(p.t, p.x)) * dy;
    return s;
}

CylFieldSample toroidal_fields_analytic(const SetupConfig& cfg, const RegularizationParams& reg,
                                        const CylPoint& p) {
    CylFieldSample f;
    const double dz = k::delta(p.z, reg.eps_y);
    f.ez = -kPi * k::window_deriv(p.t, cfg.T, reg.eps_t) * k::step(cfg.R_tor - p.r, reg.eps_x) * dz;
    f.bphi = kPi * k::window(p.t, cfg.T, reg.eps_t) * k::delta(cfg.R_tor - p.r, reg.eps_x) * dz;
    return f;
}

CylSourceSample toroidal_densities(const SetupConfig& cfg, const RegularizationParams& reg,
                                   const CylPoint& p) {
    if (p.r <= 0.0) throw GeometryError("toroidal densities need r > 0");
    const double tw = k::window(p.t, cfg.T, reg.eps_t);
    const double rstep = k::step(cfg.R_tor - p.r, reg.eps_x);
    const double rdelta = k::delta(cfg.R_tor - p.r, reg.eps_x);
    const double rdeltap = k::delta_prime(cfg.R_tor - p.r, reg.eps_x);
    const double dz = k::delta(p.z, reg.eps_y);
    const double dpz = k::delta_prime(p.z, reg.eps_y);

    CylSourceSample s;
    s.rho = -0.25 * k::window_deriv(p.t, cfg.T, reg.eps_t) * rstep * dpz;
    // curl(M phi_hat) = (-dM/dz) r_hat + (1/r) d(r M)/dr z_hat
    s.jr = -0.25 * tw * rdelta * dpz;
    s.jz = 0.25 * k::window_second(p.t, cfg.T, reg.eps_t) * rstep * dz +
           0.25 * tw * (rdelta / p.r - rdeltap) * dz;
    return s;
}

FieldSample fields_numeric(const PotentialField& field, const SpacetimePoint& p, double h) {
    const auto& reg = field.regularization();
    const double eps_min = std::min(reg.eps_x, std::min(reg.eps_y, reg.eps_t));
    if (!(h > 0.0) || h > eps_min / 4.0)
        throw std::invalid_argument("finite-difference step must satisfy 0 < h <= eps/4");

    const auto at = [&](double t, double x, double y) {
        return field(SpacetimePoint{t, x, y});
    };
    const PotentialValue tp = at(p.t + h, p.x, p.y);
    const PotentialValue tm = at(p.t - h, p.x, p.y);
    const PotentialValue xp = at(p.t, p.x + h, p.y);
    const PotentialValue xm = at(p.t, p.x - h, p.y);
    const PotentialValue yp = at(p.t, p.x, p.y + h);
    const PotentialValue ym = at(p.t, p.x, p.y - h);

    FieldSample f;
    f.ex = -(xp.phi - xm.phi) / (2.0 * h) - (tp.ax - tm.ax) / (2.0 * h);
    f.ey = -(yp.phi - ym.phi) / (2.0 * h) - (tp.ay - tm.ay) / (2.0 * h);
    f.bz = (xp.ay - xm.ay) / (2.0 * h) - (yp.ax - ym.ax) / (2.0 * h);
    return f;
}

double continuity_residual(const SourceFn& sources, const std::vector<SpacetimePoint>& probes,
                           double h) {
    double worst = 0.0;
    for (const auto& p : probes) {
        const double drho_dt = (sources(SpacetimePoint{p.t + h, p.x, p.y}).rho -
                                sources(SpacetimePoint{p.t - h, p.x, p.y}).rho) /
                               (2.0 * h);
        const double djx_dx = (sources(SpacetimePoint{p.t, p.x + h, p.y}).jx -
                               sources(SpacetimePoint{p.t, p.x - h, p.y}).jx) /
                              (2.0 * h);
        const double djy_dy = (sources(SpacetimePoint{p.t, p.x, p.y + h}).jy -
                               sources(SpacetimePoint{p.t, p.x, p.y - h}).jy) /
                              (2.0 * h);
        worst = std::max(worst, std::abs(drho_dt + djx_dx + djy_dy));
    }
    return worst;
}

double continuity_residual_cyl(const CylSourceFn& sources, const std::vector<CylPoint>& probes,
                               double h) {
    double worst = 0.0;
    for (const auto& p : probes) {
        const double drho_dt =
            (sources(CylPoint{p.t + h, p.r, p.z}).rho - sources(CylPoint{p.t - h, p.r, p.z}).rho) /
            (2.0 * h);
        const double rjr_p = (p.r + h) * sources(CylPoint{p.t, p.r + h, p.z}).jr;
        const double rjr_m = (p.r - h) * sources(CylPoint{p.t, p.r - h, p.z}).jr;
        const double div_r = (rjr_p - rjr_m) / (2.0 * h * p.r);
        const double djz_dz =
            (sources(CylPoint{p.t, p.r, p.z + h}).jz - sources(CylPoint{p.t, p.r, p.z - h}).jz) /
            (2.0 * h);
        worst = std::max(worst, std::abs(drho_dt + div_r + djz_dz));
    }
    return worst;
}

double source_consistency_residual(const FieldFn& fields, const SourceFn& sources,
                                   const std::vector<SpacetimePoint>& probes, double h) {
    double worst = 0.0;
    for (const auto& p : probes) {
        const FieldSample tp = fields(SpacetimePoint{p.t + h, p.x, p.y});
        const FieldSample tm = fields(SpacetimePoint{p.t - h, p.x, p.y});
        const FieldSample xp = fields(SpacetimePoint{p.t, p.x + h, p.y});
        const FieldSample xm = fields(SpacetimePoint{p.t, p.x - h, p.y});
        const FieldSample yp = fields(SpacetimePoint{p.t, p.x, p.y + h});
        const FieldSample ym = fields(SpacetimePoint{p.t, p.x, p.y - h});
        const SourceSample s = sources(p);

        // curl(B z_hat) = (dB/dy, -dB/dx)
        const double amp_x = (yp.bz - ym.bz) / (2.0 * h) - (tp.ex - tm.ex) / (2.0 * h) -
                             4.0 * kPi * s.jx;
        const double amp_y = -(xp.bz - xm.bz) / (2.0 * h) - (tp.ey - tm.ey) / (2.0 * h) -
                             4.0 * kPi * s.jy;
        const double gauss = (xp.ex - xm.ex) / (2.0 * h) + (yp.ey - ym.ey) / (2.0 * h) -
                             4.0 * kPi * s.rho;
        worst = std::max({worst, std::abs(amp_x), std::abs(amp_y), std::abs(gauss)});
    }
    return worst;
}

namespace {

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
    return v;
}

}  // namespace

std::vector<SpacetimePoint> support_probes_rect(const SetupConfig& cfg,
                                                const RegularizationParams& reg, int n_per_axis) {
    std::vector<SpacetimePoint> probes;
    const auto ts = linspace(-0.25 * cfg.T, 1.25 * cfg.T, n_per_axis);
    const auto xs = linspace(-0.25 * cfg.L, 1.25 * cfg.L, n_per_axis);
    const auto ys = linspace(-0.25 * cfg.L, 0.25 * cfg.L, n_per_axis);
    for (double t : ts)
        for (double x : xs)
            for (double y : ys) probes.push_back({t, x, y});
    // kernel-scale points where the densities actually live
    for (double t : {0.0, 0.5 * reg.eps_t, cfg.T, 0.5 * cfg.T})
        for (double x : {0.0, 0.7 * reg.eps_x, cfg.L, 0.5 * cfg.L})
            for (double y : {0.0, 0.6 * reg.eps_y, -1.3 * reg.eps_y, 3.0 * reg.eps_y})
                probes.push_back({t, x, y});
    return probes;
}

std::vector<SpacetimePoint> support_probes_rhombus(const SetupConfig& cfg,
                                                   const RegularizationParams& reg,
                                                   int n_per_axis) {
    std::vector<SpacetimePoint> probes;
    const double xext = cfg.v * cfg.T / 2.0;
    const auto ts = linspace(-0.25 * cfg.T, 1.25 * cfg.T, n_per_axis);
    const auto xs = linspace(-1.5 * xext, 1.5 * xext, n_per_axis);
    const auto ys = linspace(-0.25 * cfg.L, 0.25 * cfg.L, n_per_axis);
    for (double t : ts)
        for (double x : xs)
            for (double y : ys) probes.push_back({t, x, y});
    // points on and around the moving fronts (the on-peak points alone miss
    // the odd-kernel structure)
    for (double t : {0.2 * cfg.T, 0.25 * cfg.T, 0.7 * cfg.T})
        for (double y : {0.0, 0.6 * reg.eps_y, -1.3 * reg.eps_y})
            for (double off : {0.0, 0.7 * reg.eps_x, -1.4 * reg.eps_x, 2.5 * reg.eps_x}) {
                probes.push_back({t, cfg.v * t + off, y});
                probes.push_back({t, -cfg.v * t + off, y});
                probes.push_back({t, cfg.v * (cfg.T - t) + off, y});
            }
    // around the corners where front kernels overlap
    for (double dt : {0.0, 0.8 * reg.eps_x / std::max(cfg.v, 1e-9), 2.0 * reg.eps_t})
        for (double dx : {0.0, 0.7 * reg.eps_x, -1.2 * reg.eps_x})
            for (double y : {0.5 * reg.eps_y, -0.9 * reg.eps_y}) {
                probes.push_back({dt, dx, y});
                probes.push_back({0.5 * cfg.T + dt, 0.5 * cfg.v * cfg.T + dx, y});
                probes.push_back({cfg.T - dt, dx, y});
            }
    return probes;
}

std::vector<CylPoint> support_probes_toroidal(const SetupConfig& cfg,
                                              const RegularizationParams& reg, int n_per_axis) {
    std::vector<CylPoint> probes;
    const auto ts = linspace(-0.25 * cfg.T, 1.25 * cfg.T, n_per_axis);
    const auto rs = linspace(0.2 * cfg.R_tor, 1.5 * cfg.R_tor, n_per_axis);
    const auto zs = linspace(-0.25 * cfg.R_tor, 0.25 * cfg.R_tor, n_per_axis);
    for (double t : ts)
        for (double r : rs)
            for (double z : zs) probes.push_back({t, r, z});
    for (double t : {0.0, 0.5 * cfg.T, cfg.T})
        for (double r : {cfg.R_tor, cfg.R_tor - 0.8 * reg.eps_x, cfg.R_tor + 1.7 * reg.eps_x})
            for (double z : {0.0, 0.6 * reg.eps_y, -1.3 * reg.eps_y})
                probes.push_back({t, r, z});
    return probes;
}

}  // namespace abphase

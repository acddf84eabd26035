#include "abphase/poisson.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "abphase/io.hpp"
#include "abphase/kernels.hpp"

namespace abphase {

namespace k = kernels;

double greens_log(double x, double y, double x0, double y0) {
    const double dx = x - x0;
    const double dy = y - y0;
    const double rsq = dx * dx + dy * dy;
    if (rsq < 1e-300) throw GeometryError("greens_log: coincident points");
    return -std::log(rsq);  // -2 ln r
}

double divergence_source_spatial(const SetupConfig& cfg, const RegularizationParams& reg,
                                 double x, double y) {
    return 0.25 * k::xwindow(x, cfg.L, reg.eps_x) * k::delta_prime(y, reg.eps_y);
}

double divergence_source(const SetupConfig& cfg, const RegularizationParams& reg,
                         const SpacetimePoint& p) {
    return k::window(p.t, cfg.T, reg.eps_t) * divergence_source_spatial(cfg, reg, p.x, p.y);
}

double lambda_analytic(const SetupConfig& cfg, const RegularizationParams& reg,
                       const SpacetimePoint& p, CutSide side) {
    return k::window(p.t, cfg.T, reg.eps_t) * gauge_profile(p.x, p.y, cfg.L, side);
}

double GaugeFunctionGrid::interpolate(double x, double y) const {
    const double fx = (x - x0) / h;
    const double fy = (y - y0) / h;
    if (fx < -1e-9 || fy < -1e-9 || fx > nx - 1 + 1e-9 || fy > ny - 1 + 1e-9)
        throw GeometryError("point outside gauge-function grid");
    int i = static_cast<int>(fx);
    int j = static_cast<int>(fy);
    if (i >= nx - 1) i = nx - 2;
    if (j >= ny - 1) j = ny - 2;
    const double ax = fx - i;
    const double ay = fy - j;
    const double v00 = values[idx(i, j)];
    const double v10 = values[idx(i + 1, j)];
    const double v01 = values[idx(i, j + 1)];
    const double v11 = values[idx(i + 1, j + 1)];
    return (1 - ax) * (1 - ay) * v00 + ax * (1 - ay) * v10 + (1 - ax) * ay * v01 + ax * ay * v11;
}

namespace {

double max_residual(const PoissonProblem& pb, const std::vector<double>& u) {
    const double inv_h2 = 1.0 / (pb.h * pb.h);
    double worst = 0.0;
    for (int j = 1; j < pb.ny - 1; ++j) {
        for (int i = 1; i < pb.nx - 1; ++i) {
            const std::size_t c = pb.idx(i, j);
            const double lap = (u[c - 1] + u[c + 1] + u[c - pb.nx] + u[c + pb.nx] - 4.0 * u[c]) *
                               inv_h2;
            worst = std::max(worst, std::abs(lap - pb.rhs[c]));
        }
    }
    return worst;
}

}  // namespace

GaugeFunctionGrid solve_poisson(const PoissonProblem& pb, const SolveOptions& opts,
                                SolverReport* report) {
    if (pb.nx < 3 || pb.ny < 3 || pb.h <= 0.0)
        throw ConfigError("poisson grid needs nx, ny >= 3 and h > 0");
    if (pb.rhs.size() != static_cast<std::size_t>(pb.nx) * pb.ny ||
        pb.boundary_and_guess.size() != pb.rhs.size())
        throw ConfigError("poisson grid arrays have wrong size");

    const auto t_start = std::chrono::steady_clock::now();
    std::vector<double> u = pb.boundary_and_guess;

    double omega = opts.omega;
    if (omega <= 0.0) {
        const double rj =
            0.5 * (std::cos(kPi / (pb.nx - 1)) + std::cos(kPi / (pb.ny - 1)));
        omega = 2.0 / (1.0 + std::sqrt(1.0 - rj * rj));
    }

    const double h2 = pb.h * pb.h;
    // Stopping is relative to the source scale: an absolute max-norm target
    // below ~5 eps_mach ||u|| / h^2 is unreachable in double precision.
    double f_scale = 1.0;
    for (double f : pb.rhs) f_scale = std::max(f_scale, std::abs(f));
    const double target = opts.tolerance * f_scale;

    long sweeps = 0;
    double residual = max_residual(pb, u);
    std::vector<double> history;
    const long check_every = 20;
    while (residual > target) {
        if (sweeps >= opts.max_sweeps)
            throw SolverError("poisson solver did not converge", residual);
        for (long batch = 0; batch < check_every && sweeps < opts.max_sweeps; ++batch, ++sweeps) {
            for (int color = 0; color < 2; ++color) {
                for (int j = 1; j < pb.ny - 1; ++j) {
                    const int i0 = 1 + ((j + color) & 1);
                    for (int i = i0; i < pb.nx - 1; i += 2) {
                        const std::size_t c = pb.idx(i, j);
                        const double gs = 0.25 * (u[c - 1] + u[c + 1] + u[c - pb.nx] +
                                                  u[c + pb.nx] - h2 * pb.rhs[c]);
                        u[c] += omega * (gs - u[c]);
                    }
                }
            }
        }
        residual = max_residual(pb, u);
        history.push_back(residual);
    }

    const auto t_end = std::chrono::steady_clock::now();
    if (report) {
        report->nx = pb.nx;
        report->ny = pb.ny;
        report->iterations = sweeps;
        report->residual = residual;
        report->seconds = std::chrono::duration<double>(t_end - t_start).count();
        report->residual_history = std::move(history);
    }

    GaugeFunctionGrid g;
    g.nx = pb.nx;
    g.ny = pb.ny;
    g.x0 = pb.x0;
    g.y0 = pb.y0;
    g.h = pb.h;
    g.values = std::move(u);
    return g;
}

PoissonProblem make_gauge_problem(const SetupConfig& cfg, const RegularizationParams& reg,
                                  double x0, double x1, double y0, double y1, int nx, int ny) {
    if (!(x0 < 0.0 && x1 > cfg.L && y0 < 0.0 && y1 > 0.0))
        throw ConfigError("gauge domain must contain the capacitor strip");
    const double hx = (x1 - x0) / (nx - 1);
    const double hy = (y1 - y0) / (ny - 1);
    if (std::abs(hx - hy) > 1e-12 * std::max(std::abs(hx), std::abs(hy)))
        throw ConfigError("gauge domain must give square grid cells");

    PoissonProblem pb;
    pb.nx = nx;
    pb.ny = ny;
    pb.x0 = x0;
    pb.y0 = y0;
    pb.h = hx;
    pb.rhs.assign(static_cast<std::size_t>(nx) * ny, 0.0);
    pb.boundary_and_guess.assign(pb.rhs.size(), 0.0);

    // The solution must reproduce the spatial gauge profile F; with
    // C = (1/4pi) div A this means assembling Laplacian(u) = +4 pi C_spatial.
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            pb.rhs[pb.idx(i, j)] =
                4.0 * kPi * divergence_source_spatial(cfg, reg, pb.x_at(i), pb.y_at(j));
        }
    }
    for (int i = 0; i < nx; ++i) {
        pb.boundary_and_guess[pb.idx(i, 0)] = gauge_profile(pb.x_at(i), y0, cfg.L, CutSide::Below);
        pb.boundary_and_guess[pb.idx(i, ny - 1)] =
            gauge_profile(pb.x_at(i), y1, cfg.L, CutSide::Above);
    }
    for (int j = 0; j < ny; ++j) {
        const CutSide side = pb.y_at(j) >= 0.0 ? CutSide::Above : CutSide::Below;
        pb.boundary_and_guess[pb.idx(0, j)] = gauge_profile(x0, pb.y_at(j), cfg.L, side);
        pb.boundary_and_guess[pb.idx(nx - 1, j)] = gauge_profile(x1, pb.y_at(j), cfg.L, side);
    }
    return pb;
}

std::string format_solver_report(const SolverReport& report, bool include_wall_time) {
    std::ostringstream os;
    os << "poisson solve: grid " << report.nx << "x" << report.ny << "\n"
       << "sweeps: " << report.iterations << "\n"
       << "final residual: " << format_double(report.residual) << "\n";
    if (include_wall_time) os << "wall time: " << format_double(report.seconds) << " s\n";
    return os.str();
}

}  // namespace abphase

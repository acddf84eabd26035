#include "abphase/numeric_gauge.hpp"

#include <cmath>

#include "abphase/kernels.hpp"

namespace abphase {

namespace k = kernels;

namespace {

// Central differences in the interior, second-order one-sided at the rim.
GaugeFunctionGrid gradient_component(const GaugeFunctionGrid& g, bool along_x) {
    GaugeFunctionGrid out = g;
    const double inv2h = 1.0 / (2.0 * g.h);
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            double d;
            if (along_x) {
                if (i == 0)
                    d = (-3.0 * g.values[g.idx(0, j)] + 4.0 * g.values[g.idx(1, j)] -
                         g.values[g.idx(2, j)]) *
                        inv2h;
                else if (i == g.nx - 1)
                    d = (3.0 * g.values[g.idx(i, j)] - 4.0 * g.values[g.idx(i - 1, j)] +
                         g.values[g.idx(i - 2, j)]) *
                        inv2h;
                else
                    d = (g.values[g.idx(i + 1, j)] - g.values[g.idx(i - 1, j)]) * inv2h;
            } else {
                if (j == 0)
                    d = (-3.0 * g.values[g.idx(i, 0)] + 4.0 * g.values[g.idx(i, 1)] -
                         g.values[g.idx(i, 2)]) *
                        inv2h;
                else if (j == g.ny - 1)
                    d = (3.0 * g.values[g.idx(i, j)] - 4.0 * g.values[g.idx(i, j - 1)] +
                         g.values[g.idx(i, j - 2)]) *
                        inv2h;
                else
                    d = (g.values[g.idx(i, j + 1)] - g.values[g.idx(i, j - 1)]) * inv2h;
            }
            out.values[out.idx(i, j)] = d;
        }
    }
    return out;
}

}  // namespace

NumericCoulombField::NumericCoulombField(SetupConfig cfg, RegularizationParams reg,
                                         GaugeFunctionGrid grid)
    : cfg_(cfg),
      reg_(reg),
      temporal_(cfg, reg),
      grid_(std::move(grid)),
      grad_x_(gradient_component(grid_, true)),
      grad_y_(gradient_component(grid_, false)) {}

PotentialValue NumericCoulombField::operator()(const SpacetimePoint& p) const {
    const double w = k::window(p.t, cfg_.T, reg_.eps_t);
    const double dw = k::window_deriv(p.t, cfg_.T, reg_.eps_t);
    const PotentialValue a = temporal_(p);
    PotentialValue v;
    v.phi = dw * grid_.interpolate(p.x, p.y);
    v.ax = a.ax - w * grad_x_.interpolate(p.x, p.y);
    v.ay = a.ay - w * grad_y_.interpolate(p.x, p.y);
    return v;
}

double NumericCoulombField::max_interior_divergence() const {
    // At t = T/2 the window is 1 to machine precision; evaluate div A' on
    // interior nodes from the node values themselves.
    const double inv2h = 1.0 / (2.0 * grid_.h);
    double worst = 0.0;
    for (int j = 2; j < grid_.ny - 2; ++j) {
        for (int i = 2; i < grid_.nx - 2; ++i) {
            const double ax_p = -grad_x_.values[grad_x_.idx(i + 1, j)];
            const double ax_m = -grad_x_.values[grad_x_.idx(i - 1, j)];
            const double x = grid_.x_at(i);
            const double ay_p = kPi * k::xwindow(x, cfg_.L, reg_.eps_x) *
                                    k::delta(grid_.y_at(j + 1), reg_.eps_y) -
                                grad_y_.values[grad_y_.idx(i, j + 1)];
            const double ay_m = kPi * k::xwindow(x, cfg_.L, reg_.eps_x) *
                                    k::delta(grid_.y_at(j - 1), reg_.eps_y) -
                                grad_y_.values[grad_y_.idx(i, j - 1)];
            const double div = (ax_p - ax_m) * inv2h + (ay_p - ay_m) * inv2h;
            worst = std::max(worst, std::abs(div));
        }
    }
    return worst;
}

NumericCoulombField numeric_coulomb_transform(const SetupConfig& cfg,
                                              const RegularizationParams& reg,
                                              const NumericGaugeOptions& opts,
                                              SolverReport* report) {
    double x0 = opts.x0, x1 = opts.x1, y0 = opts.y0, y1 = opts.y1;
    if (x0 == 0.0 && x1 == 0.0 && y0 == 0.0 && y1 == 0.0) {
        x0 = -0.75 * cfg.L;
        x1 = 1.75 * cfg.L;
        y0 = -1.25 * cfg.L;
        y1 = 1.25 * cfg.L;
    }
    const double width = x1 - x0;
    const double height = y1 - y0;
    const int nx = opts.n;
    const int ny = static_cast<int>(std::lround((nx - 1) * height / width)) + 1;
    PoissonProblem pb = make_gauge_problem(cfg, reg, x0, x1, y0, y1, nx, ny);
    GaugeFunctionGrid grid = solve_poisson(pb, opts.solve, report);
    return NumericCoulombField(cfg, reg, std::move(grid));
}

GaugeFunctionGrid residual_gauge_solve(const PotentialField& field, double t_sample,
                                       const NumericGaugeOptions& opts, SolverReport* report) {
    const SetupConfig& cfg = field.config();
    double x0 = opts.x0, x1 = opts.x1, y0 = opts.y0, y1 = opts.y1;
    if (x0 == 0.0 && x1 == 0.0 && y0 == 0.0 && y1 == 0.0) {
        x0 = -0.75 * cfg.L;
        x1 = 1.75 * cfg.L;
        y0 = -1.25 * cfg.L;
        y1 = 1.25 * cfg.L;
    }
    PoissonProblem pb;
    pb.nx = opts.n;
    pb.ny = static_cast<int>(std::lround((opts.n - 1) * (y1 - y0) / (x1 - x0))) + 1;
    pb.x0 = x0;
    pb.y0 = y0;
    pb.h = (x1 - x0) / (pb.nx - 1);
    pb.rhs.assign(static_cast<std::size_t>(pb.nx) * pb.ny, 0.0);
    pb.boundary_and_guess.assign(pb.rhs.size(), 0.0);

    // Divergence source of the input field by central differences; the grid
    // rim keeps zero boundary (the residual gauge function of an already
    // divergence-free field decays).
    const double h = pb.h;
    for (int j = 1; j < pb.ny - 1; ++j) {
        for (int i = 1; i < pb.nx - 1; ++i) {
            const double x = pb.x_at(i);
            const double y = pb.y_at(j);
            const double div =
                (field(SpacetimePoint{t_sample, x + h, y}).ax -
                 field(SpacetimePoint{t_sample, x - h, y}).ax +
                 field(SpacetimePoint{t_sample, x, y + h}).ay -
                 field(SpacetimePoint{t_sample, x, y - h}).ay) /
                (2.0 * h);
            pb.rhs[pb.idx(i, j)] = div;  // 4 pi C = div A
        }
    }
    return solve_poisson(pb, opts.solve, report);
}

}  // namespace abphase

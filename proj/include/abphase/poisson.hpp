#pragma once

#include <vector>

#include "abphase/gauges.hpp"
#include "abphase/types.hpp"

namespace abphase {

// Free-space Green's function of the 2D Laplacian, G = -2 ln|p - p0|;
// Laplacian(G) = -4 pi delta2(p - p0). Signals coincident points.
double greens_log(double x, double y, double x0, double y0);

// Divergence source of the temporal-gauge potential,
//   C = (1/4pi) div A = 1/4 [s(t) - s(t-T)] [s(x) - s(x-L)] d'(y).
double divergence_source(const SetupConfig& cfg, const RegularizationParams& reg,
                         const SpacetimePoint& p);

// Spatial part of C (the time window factors out).
double divergence_source_spatial(const SetupConfig& cfg, const RegularizationParams& reg,
                                 double x, double y);

// Closed-form gauge function of the rectangular setup,
//   Lambda(t, x, y) = [s(t) - s(t-T)] * F(x, y).
double lambda_analytic(const SetupConfig& cfg, const RegularizationParams& reg,
                       const SpacetimePoint& p, CutSide side = CutSide::Above);

// Uniform-grid Dirichlet problem for Laplacian(u) = f on the 5-point stencil.
// `boundary_and_guess` holds the Dirichlet values on the rim (interior values
// are the initial guess, usually zero).
struct PoissonProblem {
    int nx = 0;
    int ny = 0;
    double x0 = 0.0;
    double y0 = 0.0;
    double h = 0.0;
    std::vector<double> rhs;                 // nx*ny, row-major (j*nx + i)
    std::vector<double> boundary_and_guess;  // nx*ny

    double x_at(int i) const { return x0 + h * i; }
    double y_at(int j) const { return y0 + h * j; }
    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(j) * nx + i; }
};

struct SolverReport {
    int nx = 0;
    int ny = 0;
    long iterations = 0;       // red-black SOR sweeps
    double residual = 0.0;     // final max-norm of Laplacian(u) - f
    double seconds = 0.0;      // wall time of the solve
    std::vector<double> residual_history;  // residual after each sweep batch
};

struct GaugeFunctionGrid {
    int nx = 0;
    int ny = 0;
    double x0 = 0.0;
    double y0 = 0.0;
    double h = 0.0;
    std::vector<double> values;

    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(j) * nx + i; }
    double x_at(int i) const { return x0 + h * i; }
    double y_at(int j) const { return y0 + h * j; }
    // Bilinear interpolation; throws GeometryError outside the grid.
    double interpolate(double x, double y) const;
};

struct SolveOptions {
    double tolerance = 1e-10;   // residual target, relative to max(1, ||rhs||)
    long max_sweeps = 100000;
    double omega = 0.0;         // 0 = automatic (optimal for the grid)
};

// Red-black SOR with fixed sweep order; deterministic for a fixed schedule.
// Throws SolverError carrying the last residual on non-convergence.
GaugeFunctionGrid solve_poisson(const PoissonProblem& problem, const SolveOptions& opts,
                                SolverReport* report);

// Assembles the gauge-solve for the rectangular setup on the given domain:
// rhs chosen so the solution reproduces lambda_analytic's spatial profile,
// boundary from the closed form.
PoissonProblem make_gauge_problem(const SetupConfig& cfg, const RegularizationParams& reg,
                                  double x0, double x1, double y0, double y1, int nx, int ny);

std::string format_solver_report(const SolverReport& report, bool include_wall_time);

}  // namespace abphase

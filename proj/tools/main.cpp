#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "abphase/fields.hpp"
#include "abphase/gauges.hpp"
#include "abphase/io.hpp"
#include "abphase/numeric_gauge.hpp"
#include "abphase/phase.hpp"
#include "abphase/poisson.hpp"
#include "abphase/verify.hpp"

namespace {

using namespace abphase;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitGeometry = 3;

struct GlobalArgs {
    std::string config_path;
    int threads = 1;
};

FullConfig resolve_config(const GlobalArgs& g) {
    if (!g.config_path.empty()) return load_config(g.config_path);
    if (const char* env = std::getenv("ABPHASE_CONFIG")) return load_config(env);
    return FullConfig{};
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file: " + path);
    return out;
}

// Static row partition with per-row buffers: output is byte-identical for
// any thread count.
void emit_rows_parallel(std::ostream& os, int n_rows, int threads,
                        const std::function<std::string(int)>& row_fn) {
    std::vector<std::string> rows(n_rows);
    threads = std::max(1, threads);
    if (threads == 1) {
        for (int i = 0; i < n_rows; ++i) rows[i] = row_fn(i);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w) {
            pool.emplace_back([&, w]() {
                for (int i = w; i < n_rows; i += threads) rows[i] = row_fn(i);
            });
        }
        for (auto& th : pool) th.join();
    }
    for (const auto& r : rows) os << r;
}

std::unique_ptr<PotentialField> make_field(const std::string& gauge, const FullConfig& c,
                                           int numeric_grid) {
    if (gauge == "temporal")
        return std::make_unique<RectTemporalGauge>(c.setup, c.reg);
    if (gauge == "coulomb")
        return std::make_unique<RectCoulombGauge>(c.setup, c.reg);
    if (gauge == "numeric") {
        NumericGaugeOptions opts;
        if (numeric_grid > 0) opts.n = numeric_grid;
        SolverReport report;
        auto field = numeric_coulomb_transform(c.setup, c.reg, opts, &report);
        std::cerr << format_solver_report(report, true);
        return std::make_unique<NumericCoulombField>(std::move(field));
    }
    throw ConfigError("unknown gauge: " + gauge);
}

int cmd_phase(const GlobalArgs& g, const std::string& path_file, const std::string& gauge,
              const std::string& out_path, double rel_tol, double abs_tol, int numeric_grid) {
    const FullConfig c = resolve_config(g);
    const PolyPath loop = load_path(path_file);
    const auto field = make_field(gauge, c, numeric_grid);
    QuadratureSpec spec;
    spec.rel_tol = rel_tol;
    spec.abs_tol = abs_tol;
    const PhaseBreakdown b = loop_phase(*field, loop, spec);

    std::ostringstream csv;
    csv << "theta_e,theta_m,theta_total,quad_error\n"
        << format_double(b.theta_e) << "," << format_double(b.theta_m) << ","
        << format_double(b.theta_total) << "," << format_double(b.quad_error) << "\n";
    if (out_path.empty()) {
        std::cout << csv.str();
    } else {
        open_output(out_path) << csv.str();
    }
    return kExitOk;
}

int cmd_grid(const GlobalArgs& g, const std::string& variant, const std::string& out_path,
             int nt, int nx, int ny) {
    const FullConfig c = resolve_config(g);
    const SetupConfig& cfg = c.setup;
    const RegularizationParams& reg = c.reg;
    auto out = open_output(out_path);

    if (variant == "toroidal") {
        out << "t,r,z,Ez,Bphi,rho,jr,jz\n";
        const double t0 = -0.25 * cfg.T, t1 = 1.25 * cfg.T;
        const double r0 = 0.05 * cfg.R_tor, r1 = 1.5 * cfg.R_tor;
        const double z0 = -0.25 * cfg.R_tor, z1 = 0.25 * cfg.R_tor;
        emit_rows_parallel(out, nt, g.threads, [&](int it) {
            std::ostringstream os;
            const double t = t0 + (t1 - t0) * it / (nt - 1);
            for (int ir = 0; ir < nx; ++ir) {
                const double r = r0 + (r1 - r0) * ir / (nx - 1);
                for (int iz = 0; iz < ny; ++iz) {
                    const double z = z0 + (z1 - z0) * iz / (ny - 1);
                    const CylPoint p{t, r, z};
                    const CylFieldSample f = toroidal_fields_analytic(cfg, reg, p);
                    const CylSourceSample s = toroidal_densities(cfg, reg, p);
                    os << format_double(t) << "," << format_double(r) << "," << format_double(z)
                       << "," << format_double(f.ez) << "," << format_double(f.bphi) << ","
                       << format_double(s.rho) << "," << format_double(s.jr) << ","
                       << format_double(s.jz) << "\n";
                }
            }
            return os.str();
        });
        return kExitOk;
    }

    const bool rhombus = variant == "rhombus";
    if (!rhombus && variant != "rect") throw ConfigError("unknown variant: " + variant);
    out << "t,x,y,Ex,Ey,Bz,rho,jx,jy\n";
    const double t0 = -0.25 * cfg.T, t1 = 1.25 * cfg.T;
    const double xext = rhombus ? std::max(cfg.v * cfg.T, 0.5 * cfg.L) : cfg.L;
    const double x0 = rhombus ? -0.75 * xext : -0.25 * cfg.L;
    const double x1 = rhombus ? 0.75 * xext : 1.25 * cfg.L;
    const double y0 = -0.25 * cfg.L, y1 = 0.25 * cfg.L;
    emit_rows_parallel(out, nt, g.threads, [&](int it) {
        std::ostringstream os;
        const double t = t0 + (t1 - t0) * it / (nt - 1);
        for (int ix = 0; ix < nx; ++ix) {
            const double x = x0 + (x1 - x0) * ix / (nx - 1);
            for (int iy = 0; iy < ny; ++iy) {
                const double y = y0 + (y1 - y0) * iy / (ny - 1);
                const SpacetimePoint p{t, x, y};
                const FieldSample f = rhombus ? rhombus_fields_analytic(cfg, reg, p)
                                              : rect_fields_analytic(cfg, reg, p);
                const SourceSample s =
                    rhombus ? dipole_densities(cfg, reg, p) : rect_sources(cfg, reg, p);
                os << format_double(t) << "," << format_double(x) << "," << format_double(y)
                   << "," << format_double(f.ex) << "," << format_double(f.ey) << ","
                   << format_double(f.bz) << "," << format_double(s.rho) << ","
                   << format_double(s.jx) << "," << format_double(s.jy) << "\n";
            }
        }
        return os.str();
    });
    return kExitOk;
}

int cmd_gauge(const GlobalArgs& g, int grid_n, double x0, double x1, double y0, double y1,
              const std::string& out_path, const std::string& report_path, double tol,
              long max_sweeps) {
    const FullConfig c = resolve_config(g);
    NumericGaugeOptions opts;
    opts.n = grid_n;
    opts.x0 = x0;
    opts.x1 = x1;
    opts.y0 = y0;
    opts.y1 = y1;
    opts.solve.tolerance = tol;
    opts.solve.max_sweeps = max_sweeps;
    SolverReport report;
    const NumericCoulombField field = numeric_coulomb_transform(c.setup, c.reg, opts, &report);

    const GaugeFunctionGrid& grid = field.grid();
    auto out = open_output(out_path);
    out << "x,y,lambda\n";
    emit_rows_parallel(out, grid.ny, g.threads, [&](int j) {
        std::ostringstream os;
        for (int i = 0; i < grid.nx; ++i)
            os << format_double(grid.x_at(i)) << "," << format_double(grid.y_at(j)) << ","
               << format_double(grid.values[grid.idx(i, j)]) << "\n";
        return os.str();
    });

    std::cout << format_solver_report(report, true);
    if (!report_path.empty()) open_output(report_path) << format_solver_report(report, false);
    return kExitOk;
}

int cmd_figure_f(const GlobalArgs& g, std::vector<double> x_values, double y_min, double y_max,
                 int samples, const std::string& out_path) {
    const FullConfig c = resolve_config(g);
    if (x_values.empty())
        x_values = {0.25 * c.setup.L, 0.5 * c.setup.L, 0.75 * c.setup.L};
    auto out = open_output(out_path);
    write_profile_csv(out, c.setup.L, x_values, y_min, y_max, samples);
    return kExitOk;
}

int cmd_verify(const GlobalArgs& g, std::uint64_t seed, const std::string& out_path,
               bool drop_solenoids) {
    const FullConfig c = resolve_config(g);
    SuiteOptions opts;
    opts.seed = seed;
    opts.drop_solenoids = drop_solenoids;
    const auto reports = run_suite(c.setup, c.reg, opts);
    write_report_text(std::cout, reports, seed);
    if (!out_path.empty()) {
        auto out = open_output(out_path);
        write_report_csv(out, reports);
    }
    if (!all_pass(reports)) {
        for (const auto& r : reports)
            if (!r.pass) std::cerr << "failed check: " << r.name << "\n";
        return kExitVerifyFail;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"abphase: gauge potentials, fields, and loop phases of a non-radiating\n"
                 "capacitor-fluxon configuration (electric and magnetic Aharonov-Bohm phases)"};
    app.require_subcommand(1);

    GlobalArgs g;
    app.add_option("--config", g.config_path, "JSON config file (env ABPHASE_CONFIG)");
    app.add_option("--threads", g.threads, "worker threads for grid emission")
        ->check(CLI::PositiveNumber);

    auto* phase = app.add_subcommand("phase", "loop phase from a path file");
    std::string path_file, gauge = "temporal", out_path;
    double rel_tol = 1e-6, abs_tol = 1e-12;
    int numeric_grid = 0;
    phase->add_option("--path", path_file, "path file (t x y per line, `closed` to close)")
        ->required();
    phase->add_option("--gauge", gauge, "temporal | coulomb | numeric")
        ->check(CLI::IsMember({"temporal", "coulomb", "numeric"}));
    phase->add_option("--out", out_path, "output CSV (default stdout)");
    phase->add_option("--rel-tol", rel_tol, "quadrature relative tolerance");
    phase->add_option("--abs-tol", abs_tol, "quadrature absolute tolerance");
    phase->add_option("--grid", numeric_grid, "grid nodes for the numeric gauge");

    auto* fields = app.add_subcommand("fields", "field/source lattice CSV");
    auto* sources = app.add_subcommand("sources", "field/source lattice CSV");
    std::string variant = "rect", grid_out;
    int nt = 13, nxg = 49, nyg = 33;
    for (auto* sc : {fields, sources}) {
        sc->add_option("--variant", variant, "rect | rhombus | toroidal")
            ->check(CLI::IsMember({"rect", "rhombus", "toroidal"}));
        sc->add_option("--out", grid_out, "output CSV")->required();
        sc->add_option("--nt", nt, "time samples");
        sc->add_option("--nx", nxg, "first spatial axis samples");
        sc->add_option("--ny", nyg, "second spatial axis samples");
    }

    auto* gauge_cmd = app.add_subcommand("gauge", "solve the Coulomb gauge function");
    int gauge_n = 257;
    double gx0 = 0.0, gx1 = 0.0, gy0 = 0.0, gy1 = 0.0, gtol = 1e-10;
    long gmax = 200000;
    std::string gauge_out = "lambda.csv", gauge_report;
    gauge_cmd->add_option("--grid", gauge_n, "nodes along x");
    gauge_cmd->add_option("--x0", gx0, "domain left");
    gauge_cmd->add_option("--x1", gx1, "domain right");
    gauge_cmd->add_option("--y0", gy0, "domain bottom");
    gauge_cmd->add_option("--y1", gy1, "domain top");
    gauge_cmd->add_option("--out", gauge_out, "lambda grid CSV");
    gauge_cmd->add_option("--report", gauge_report, "solver report file");
    gauge_cmd->add_option("--tol", gtol, "solver residual tolerance");
    gauge_cmd->add_option("--max-sweeps", gmax, "solver sweep limit");

    auto* figf = app.add_subcommand("figure-f", "gauge profile F(x, y) columns");
    std::vector<double> x_values;
    double y_min = -2.0, y_max = 2.0;
    int samples = 201;
    std::string figf_out;
    figf->add_option("--x-values", x_values, "x columns to sample")->delimiter(',');
    figf->add_option("--y-min", y_min, "lower y bound");
    figf->add_option("--y-max", y_max, "upper y bound");
    figf->add_option("--samples", samples, "samples per column");
    figf->add_option("--out", figf_out, "output CSV")->required();

    auto* verify = app.add_subcommand("verify", "run the oracle suite");
    std::uint64_t seed = 20200613;
    std::string verify_out;
    bool drop_solenoids = false;
    verify->add_option("--seed", seed, "random seed for the loop battery");
    verify->add_option("--out", verify_out, "report CSV");
    verify->add_flag("--drop-solenoids", drop_solenoids,
                     "negative control: omit the solenoid currents");

    try {
        app.parse(argc, argv);
        if (phase->parsed())
            return cmd_phase(g, path_file, gauge, out_path, rel_tol, abs_tol, numeric_grid);
        if (fields->parsed() || sources->parsed())
            return cmd_grid(g, variant, grid_out, nt, nxg, nyg);
        if (gauge_cmd->parsed())
            return cmd_gauge(g, gauge_n, gx0, gx1, gy0, gy1, gauge_out, gauge_report, gtol, gmax);
        if (figf->parsed()) return cmd_figure_f(g, x_values, y_min, y_max, samples, figf_out);
        if (verify->parsed()) return cmd_verify(g, seed, verify_out, drop_solenoids);
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const GeometryError& e) {
        std::cerr << "geometry error: " << e.what() << "\n";
        const std::string what = e.what();
        return what.find("core") != std::string::npos ? kExitGeometry : kExitUsage;
    } catch (const SolverError& e) {
        std::cerr << "solver error: " << e.what() << " (residual " << e.residual << ")\n";
        return kExitVerifyFail;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

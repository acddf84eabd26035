#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "abphase/types.hpp"

namespace abphase {

// One cross-check result. `order` is a measured convergence order where the
// check runs a refinement study, NaN otherwise.
struct OracleReport {
    std::string name;
    double measured = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    double order = std::numeric_limits<double>::quiet_NaN();
};

struct SuiteOptions {
    std::uint64_t seed = 20200613;
    bool drop_solenoids = false;  // negative control: omit j_s in the source set
    int battery_loops = 10;
    int numeric_grid = 0;         // 0 = sized automatically from eps
};

// Regularized convergence checks of the distributional identities:
//  (a) integral of (1/pi) x/(x^2+y^2) dy -> sign(x)
//  (b) pairing of d/dy arctan(x/y) with a test function -> -pi sign(x) f(0)
//  (c) two-scale derivative chain of (a) against a 2D test -> 2 pi f(0,0)
//  (d) pairing of d/dy [x/(x^2+y^2)] with an even test -> 0
// Each check refines its limit parameter and reports the finest error and a
// monotonicity-derived order estimate.
std::vector<OracleReport> check_delta_identities(double tolerance);

// Randomized closed loops with landmarks drawn from safe ranges: kernel
// crossings at least 8 eps from the firings, core clearance beyond
// core_radius. Mix of sheet-crossing rectangles, after-window rectangles,
// same-side rectangles, and circles around one or both cores.
std::vector<PolyPath> admissible_loop_battery(const SetupConfig& cfg,
                                              const RegularizationParams& reg,
                                              std::uint64_t seed, int count);

// Full cross-module oracle battery. Deterministic for a fixed seed; check
// order fixed by name. Individual failures are collected, the suite
// continues.
std::vector<OracleReport> run_suite(const SetupConfig& cfg, const RegularizationParams& reg,
                                    const SuiteOptions& opts);

bool all_pass(const std::vector<OracleReport>& reports);

void write_report_text(std::ostream& os, const std::vector<OracleReport>& reports,
                       std::uint64_t seed);
void write_report_csv(std::ostream& os, const std::vector<OracleReport>& reports);

}  // namespace abphase

#pragma once

#include <iosfwd>
#include <string>

#include "abphase/types.hpp"

namespace abphase {

// Round-trip formatting for all numeric output.
std::string format_double(double v);

struct FullConfig {
    SetupConfig setup;
    RegularizationParams reg;
};

// Config file: JSON object with keys
//   L, T, v, R_tor, eps_x, eps_y, eps_t, core_radius
// Missing keys keep their defaults; unknown keys are an error. The parsed
// config is validated before returning.
FullConfig load_config(const std::string& path);
FullConfig parse_config(const std::string& json_text);
void write_config(std::ostream& os, const FullConfig& config);

// Path file: one vertex per line as `t x y`, optional trailing `closed` line.
// Lines starting with '#' are ignored. A `closed` marker without a repeated
// final vertex closes the path by appending the first vertex.
PolyPath load_path(const std::string& path);
PolyPath parse_path(std::istream& is);
void write_path(std::ostream& os, const PolyPath& path);

// Gauge-profile columns as CSV `x,y,F`: `samples` rows per column over
// [y_min, y_max]; a sample landing exactly on y = 0 emits both one-sided
// limits, exhibiting the pi jump across the capacitor strip.
void write_profile_csv(std::ostream& os, double L, const std::vector<double>& x_columns,
                       double y_min, double y_max, int samples);

}  // namespace abphase

#include "abphase/types.hpp"

#include <algorithm>
#include <cmath>

namespace abphase {

namespace {

bool finite(const SpacetimePoint& p) {
    return std::isfinite(p.t) && std::isfinite(p.x) && std::isfinite(p.y);
}

bool same_point(const SpacetimePoint& a, const SpacetimePoint& b) {
    return a.t == b.t && a.x == b.x && a.y == b.y;
}

}  // namespace

void validate_config(const SetupConfig& cfg, const RegularizationParams& reg) {
    if (!(cfg.L > 0.0)) throw ConfigError("L must be positive");
    if (!(cfg.T > 0.0)) throw ConfigError("T must be positive");
    if (!(cfg.v >= 0.0)) throw ConfigError("v must be nonnegative");
    if (!(cfg.R_tor > 0.0)) throw ConfigError("R_tor must be positive");
    if (!(reg.eps_x > 0.0)) throw ConfigError("eps_x must be positive");
    if (!(reg.eps_y > 0.0)) throw ConfigError("eps_y must be positive");
    if (!(reg.eps_t > 0.0)) throw ConfigError("eps_t must be positive");
    if (!(reg.core_radius > 0.0)) throw ConfigError("core_radius must be positive");
    if (reg.eps_x > cfg.L / 10.0) throw ConfigError("eps_x exceeds L/10");
    if (reg.eps_y > cfg.L / 10.0) throw ConfigError("eps_y exceeds L/10");
    if (reg.eps_t > cfg.T / 10.0) throw ConfigError("eps_t exceeds T/10");
    if (reg.core_radius < 3.0 * std::max(reg.eps_x, reg.eps_y) * (1.0 - 1e-12))
        throw ConfigError("core_radius must be at least 3*max(eps_x, eps_y)");
}

PolyPath PolyPath::make(std::vector<SpacetimePoint> vertices, bool closed) {
    if (vertices.size() < 2) throw GeometryError("path needs at least 2 vertices");
    for (const auto& v : vertices) {
        if (!finite(v)) throw GeometryError("path vertex not finite");
    }
    for (std::size_t i = 1; i < vertices.size(); ++i) {
        if (same_point(vertices[i - 1], vertices[i]))
            throw GeometryError("consecutive path vertices coincide");
    }
    if (closed && !same_point(vertices.front(), vertices.back()))
        throw GeometryError("loop not closed");
    PolyPath p;
    p.vertices = std::move(vertices);
    p.closed = closed;
    return p;
}

PolyPath reverse_path(const PolyPath& path) {
    std::vector<SpacetimePoint> rev(path.vertices.rbegin(), path.vertices.rend());
    return PolyPath::make(std::move(rev), path.closed);
}

double path_length(const PolyPath& path) {
    double total = 0.0;
    for (std::size_t i = 1; i < path.vertices.size(); ++i) {
        const auto& a = path.vertices[i - 1];
        const auto& b = path.vertices[i];
        total += std::hypot(b.t - a.t, std::hypot(b.x - a.x, b.y - a.y));
    }
    return total;
}

}  // namespace abphase

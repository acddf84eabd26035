#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace abphase {

inline constexpr double kPi = 3.14159265358979323846;

// Kernel support cutoff: Gaussian kernels are treated as exactly zero beyond
// |u| > kSupportCut * eps (tail < 1e-14 there).
inline constexpr double kSupportCut = 8.0;

class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

class GeometryError : public std::runtime_error {
  public:
    explicit GeometryError(const std::string& what) : std::runtime_error(what) {}
};

class SolverError : public std::runtime_error {
  public:
    SolverError(const std::string& what, double last_residual)
        : std::runtime_error(what), residual(last_residual) {}
    double residual;
};

// Event in the reduced 2+1-dimensional geometry (z suppressed by the setup's
// translational invariance). Natural units: hbar = c = e = 1.
struct SpacetimePoint {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;
};

// Event in cylindrical coordinates for the toroidal variant.
struct CylPoint {
    double t = 0.0;
    double r = 0.0;
    double z = 0.0;
};

// Geometry and timing of the source configurations.
//   L     capacitor extent along x (fluxon cores sit at (0,0) and (L,0))
//   T     active time interval [0, T]
//   v     boost speed of the rhombus variant (v < 1 time-like, v > 1 space-like)
//   R_tor radius of the toroidal variant
struct SetupConfig {
    double L = 1.0;
    double T = 1.0;
    double v = 0.5;
    double R_tor = 1.0;
};

// Smoothing widths replacing the singular steps/deltas, plus the exclusion
// radius around the fluxon cores used by path integration in the Coulomb
// gauge (where the cores are genuine point singularities).
struct RegularizationParams {
    double eps_x = 0.01;
    double eps_y = 0.01;
    double eps_t = 0.01;
    double core_radius = 0.03;
};

// Validates every config invariant; reports the first violated one by name.
void validate_config(const SetupConfig& cfg, const RegularizationParams& reg);

// Ordered polyline in spacetime. A closed path repeats its first vertex as
// the last vertex, exactly.
struct PolyPath {
    std::vector<SpacetimePoint> vertices;
    bool closed = false;

    // Validating factory; throws GeometryError naming the violated invariant.
    static PolyPath make(std::vector<SpacetimePoint> vertices, bool closed);
};

PolyPath reverse_path(const PolyPath& path);

// Sum of Euclidean segment lengths in (t, x, y).
double path_length(const PolyPath& path);

// Loop phase split into its electric and magnetic parts. Raw radians, never
// reduced mod 2*pi. quad_error bounds the estimated quadrature error.
struct PhaseBreakdown {
    double theta_e = 0.0;
    double theta_m = 0.0;
    double theta_total = 0.0;
    double quad_error = 0.0;
};

struct PotentialValue {
    double phi = 0.0;
    double ax = 0.0;
    double ay = 0.0;
};

enum class GaugeKind { Temporal, Coulomb, NumericCoulomb };

// Evaluatable four-potential in the planar geometry. Evaluation is
// deterministic and side-effect free; instances are immutable after
// construction and safe to share across threads.
class PotentialField {
  public:
    virtual ~PotentialField() = default;
    virtual PotentialValue operator()(const SpacetimePoint& p) const = 0;
    virtual GaugeKind gauge() const = 0;
    virtual const SetupConfig& config() const = 0;
    virtual const RegularizationParams& regularization() const = 0;
};

}  // namespace abphase

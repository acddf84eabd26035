#include "abphase/phase.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "abphase/kernels.hpp"

namespace abphase {

namespace {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1] (positive half; the 7-point
// Gauss rule lives on the odd-indexed Kronrod nodes).
constexpr int kHalf = 8;
constexpr double kNodes[kHalf] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr double kWeightsK[kHalf] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWeightsG[4] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                                 0.417959183673469};

struct SegmentGeometry {
    SpacetimePoint a;
    double dt, dx, dy;  // b - a
    SpacetimePoint at(double s) const {
        return SpacetimePoint{a.t + s * dt, a.x + s * dx, a.y + s * dy};
    }
};

struct PairEstimate {
    double m = 0.0;  // A . dl part
    double e = 0.0;  // -phi dt part
    double err = 0.0;
};

PairEstimate gk15(const PotentialField& field, const SegmentGeometry& seg, double s0, double s1) {
    const double c = 0.5 * (s0 + s1);
    const double hw = 0.5 * (s1 - s0);
    double km = 0.0, ke = 0.0, gm = 0.0, ge = 0.0;
    for (int i = 0; i < kHalf; ++i) {
        const int reps = (kNodes[i] == 0.0) ? 1 : 2;
        for (int r = 0; r < reps; ++r) {
            const double s = c + (r == 0 ? -1.0 : 1.0) * kNodes[i] * hw;
            const PotentialValue v = field(seg.at(s));
            const double fm = v.ax * seg.dx + v.ay * seg.dy;
            const double fe = -v.phi * seg.dt;
            km += kWeightsK[i] * fm;
            ke += kWeightsK[i] * fe;
            if (i % 2 == 1 || i == 7) {  // the embedded 7-point Gauss rule
                gm += kWeightsG[i / 2] * fm;
                ge += kWeightsG[i / 2] * fe;
            }
        }
    }
    PairEstimate out;
    out.m = km * hw;
    out.e = ke * hw;
    out.err = (std::abs(km - gm) + std::abs(ke - ge)) * hw;
    return out;
}

void integrate_adaptive(const PotentialField& field, const SegmentGeometry& seg, double s0,
                        double s1, const QuadratureSpec& spec, int depth, PairEstimate& acc) {
    const PairEstimate est = gk15(field, seg, s0, s1);
    const double scale = std::max(std::abs(est.m), std::abs(est.e));
    const double tol = std::max(spec.abs_tol * (s1 - s0), spec.rel_tol * scale);
    if (est.err <= tol || depth >= spec.max_subdivisions) {
        acc.m += est.m;
        acc.e += est.e;
        acc.err += est.err;
        return;
    }
    const double mid = 0.5 * (s0 + s1);
    integrate_adaptive(field, seg, s0, mid, spec, depth + 1, acc);
    integrate_adaptive(field, seg, mid, s1, spec, depth + 1, acc);
}

// Parameter values where a linear coordinate a + s*d crosses the given level.
void add_crossing(std::vector<double>& knots, double a, double d, double level) {
    if (d == 0.0) return;
    const double s = (level - a) / d;
    if (s > 1e-12 && s < 1.0 - 1e-12) knots.push_back(s);
}

std::vector<double> presplit_knots(const SegmentGeometry& seg, const SetupConfig& cfg,
                                   const RegularizationParams& reg) {
    std::vector<double> knots;
    knots.push_back(0.0);
    knots.push_back(1.0);
    const double cy = kSupportCut * reg.eps_y;
    for (double level : {0.0, cy, -cy}) add_crossing(knots, seg.a.y, seg.dy, level);
    const double ct = kSupportCut * reg.eps_t;
    for (double level : {0.0, ct, -ct, cfg.T, cfg.T + ct, cfg.T - ct})
        add_crossing(knots, seg.a.t, seg.dt, level);
    const double cx = kSupportCut * reg.eps_x;
    for (double level : {0.0, cx, -cx, cfg.L, cfg.L + cx, cfg.L - cx})
        add_crossing(knots, seg.a.x, seg.dx, level);
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end(),
                            [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                knots.end());
    return knots;
}

double point_segment_distance_2d(double px, double py, double ax, double ay, double bx,
                                 double by) {
    const double dx = bx - ax;
    const double dy = by - ay;
    const double len_sq = dx * dx + dy * dy;
    double s = 0.0;
    if (len_sq > 0.0) s = std::clamp(((px - ax) * dx + (py - ay) * dy) / len_sq, 0.0, 1.0);
    return std::hypot(px - (ax + s * dx), py - (ay + s * dy));
}

void check_core_clearance(const PolyPath& loop, const SetupConfig& cfg, double clearance,
                          const char* what) {
    for (std::size_t i = 1; i < loop.vertices.size(); ++i) {
        const auto& a = loop.vertices[i - 1];
        const auto& b = loop.vertices[i];
        const double d_left = point_segment_distance_2d(0.0, 0.0, a.x, a.y, b.x, b.y);
        const double d_right = point_segment_distance_2d(cfg.L, 0.0, a.x, a.y, b.x, b.y);
        if (std::min(d_left, d_right) < clearance) throw GeometryError(what);
    }
}

double exact_step(double u) {
    if (u > 0.0) return 1.0;
    if (u < 0.0) return 0.0;
    return 0.5;
}

}  // namespace

PhaseBreakdown loop_phase(const PotentialField& field, const PolyPath& loop,
                          const QuadratureSpec& spec) {
    if (!(spec.rel_tol > 0.0) || !(spec.abs_tol > 0.0))
        throw ConfigError("quadrature tolerances must be positive");
    if (!loop.closed) throw GeometryError("loop not closed");
    const SetupConfig& cfg = field.config();
    const RegularizationParams& reg = field.regularization();
    if (field.gauge() != GaugeKind::Temporal)
        check_core_clearance(loop, cfg, reg.core_radius,
                             "loop enters fluxon core exclusion zone");

    PairEstimate acc;
    for (std::size_t i = 1; i < loop.vertices.size(); ++i) {
        const auto& a = loop.vertices[i - 1];
        const auto& b = loop.vertices[i];
        SegmentGeometry seg{a, b.t - a.t, b.x - a.x, b.y - a.y};
        const std::vector<double> knots = presplit_knots(seg, cfg, reg);
        for (std::size_t p = 1; p < knots.size(); ++p)
            integrate_adaptive(field, seg, knots[p - 1], knots[p], spec, 0, acc);
    }

    PhaseBreakdown out;
    out.theta_m = acc.m;
    out.theta_e = acc.e;
    out.theta_total = acc.e + acc.m;
    out.quad_error = acc.err;
    return out;
}

std::pair<double, double> closed_form_phases(double x, double d, const SetupConfig& cfg) {
    if (!(d > 0.0)) throw GeometryError("closed-form phases need d > 0");
    const double theta_e = std::atan(x / d) - std::atan((x - cfg.L) / d);
    const double theta_m = kPi * (exact_step(x) - exact_step(x - cfg.L)) - theta_e;
    return {theta_e, theta_m};
}

PolyPath electric_path_loop(double x, double y_upper, double y_lower, double t_interfere,
                            const SetupConfig& cfg, const RegularizationParams& reg) {
    if (!(y_upper > y_lower)) throw GeometryError("split loop needs y_upper > y_lower");
    const double m = kSupportCut * reg.eps_t;
    double t_hold;
    if (t_interfere < cfg.T) {
        if (!(t_interfere >= 1.2 * m && t_interfere <= cfg.T - m))
            throw GeometryError("t_interfere too close to a firing time");
        t_hold = m;
    } else {
        if (!(t_interfere >= cfg.T + 1.2 * m))
            throw GeometryError("t_interfere too close to a firing time");
        t_hold = cfg.T + m;
    }
    const double t_a = -m;
    const double y_mid = 0.5 * (y_upper + y_lower);
    std::vector<SpacetimePoint> v = {
        {t_a, x, y_lower},       {t_hold, x, y_lower}, {t_interfere, x, y_mid},
        {t_hold, x, y_upper},    {t_a, x, y_upper},    {t_a, x, y_lower},
    };
    return PolyPath::make(std::move(v), true);
}

PhaseBreakdown electric_path_phase(double x, double d, double t_interfere,
                                   const PotentialField& field, const QuadratureSpec& spec) {
    if (!(d > 0.0)) throw GeometryError("electric path needs d > 0");
    const PolyPath loop =
        electric_path_loop(x, d, -d, t_interfere, field.config(), field.regularization());
    return loop_phase(field, loop, spec);
}

PolyPath magnetic_path_loop(FluxonChoice which, double radius, double t_mid,
                            const SetupConfig& cfg, const RegularizationParams& reg,
                            int n_vertices) {
    if (!(radius > reg.core_radius)) throw GeometryError("loop radius must exceed core_radius");
    const double m = kSupportCut * reg.eps_t;
    if (!(t_mid >= m && t_mid <= cfg.T - m))
        throw GeometryError("t_mid must sit well within the active window");
    double cx = 0.0;
    switch (which) {
        case FluxonChoice::Left: cx = 0.0; break;
        case FluxonChoice::Right: cx = cfg.L; break;
        case FluxonChoice::Both:
            cx = 0.5 * cfg.L;
            if (!(radius > 0.5 * cfg.L + reg.core_radius))
                throw GeometryError("loop around both cores must clear both");
            break;
        case FluxonChoice::Neither: cx = -2.0 * cfg.L - radius; break;
    }
    if ((which == FluxonChoice::Left || which == FluxonChoice::Right) &&
        !(radius < cfg.L - reg.core_radius))
        throw GeometryError("single-core loop must clear the other core");

    std::vector<SpacetimePoint> v;
    v.reserve(n_vertices + 1);
    for (int i = 0; i < n_vertices; ++i) {
        const double a = 2.0 * kPi * i / n_vertices;
        v.push_back({t_mid, cx + radius * std::cos(a), radius * std::sin(a)});
    }
    v.push_back(v.front());
    return PolyPath::make(std::move(v), true);
}

PhaseBreakdown magnetic_path_phase(FluxonChoice which, double radius, double t_mid,
                                   const PotentialField& field, const QuadratureSpec& spec) {
    const PolyPath loop =
        magnetic_path_loop(which, radius, t_mid, field.config(), field.regularization());
    return loop_phase(field, loop, spec);
}

PathClassification classify_path(const PolyPath& loop, const SetupConfig& cfg,
                                 const RegularizationParams& reg) {
    if (!loop.closed) throw GeometryError("loop not closed");
    check_core_clearance(loop, cfg, std::max(reg.eps_x, reg.eps_y),
                         "loop passes within eps of a core");

    PathClassification cls;

    // Signed crossings of the sheet y = 0, counted inside the active region.
    // Cyclic walk starting from an off-sheet vertex; a run of on-sheet
    // vertices counts as one crossing at its first point iff the sign flips
    // across the run.
    const auto& vs = loop.vertices;
    std::vector<SpacetimePoint> ring(vs.begin(), vs.end() - 1);
    const std::size_t n = ring.size();
    std::size_t start = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (ring[i].y != 0.0) {
            start = i;
            break;
        }
    }
    if (start < n) {
        int last_sign = ring[start].y > 0.0 ? 1 : -1;
        bool pending = false;
        double cross_x = 0.0, cross_t = 0.0;
        const auto count = [&](double x_at, double t_at, int direction) {
            if (x_at > 0.0 && x_at < cfg.L && t_at > 0.0 && t_at < cfg.T)
                cls.sheet_crossings += direction;
        };
        for (std::size_t k = 1; k <= n; ++k) {
            const SpacetimePoint& prev = ring[(start + k - 1) % n];
            const SpacetimePoint& cur = ring[(start + k) % n];
            const int s = (cur.y > 0.0) ? 1 : (cur.y < 0.0 ? -1 : 0);
            if (s == 0) {
                if (!pending) {
                    pending = true;
                    cross_x = cur.x;
                    cross_t = cur.t;
                }
                continue;
            }
            if (pending) {
                if (s != last_sign) count(cross_x, cross_t, s);
                pending = false;
            } else if (s != last_sign) {
                const double frac = prev.y / (prev.y - cur.y);
                count(prev.x + frac * (cur.x - prev.x), prev.t + frac * (cur.t - prev.t), s);
            }
            last_sign = s;
        }
    }

    // Winding numbers of the (x, y) projection.
    const auto winding = [&vs](double cx, double cy) {
        double total = 0.0;
        for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
            const double a1 = std::atan2(vs[i].y - cy, vs[i].x - cx);
            const double a2 = std::atan2(vs[i + 1].y - cy, vs[i + 1].x - cx);
            double d = a2 - a1;
            while (d > kPi) d -= 2.0 * kPi;
            while (d < -kPi) d += 2.0 * kPi;
            total += d;
        }
        return static_cast<int>(std::lround(total / (2.0 * kPi)));
    };
    cls.winding_left = winding(0.0, 0.0);
    cls.winding_right = winding(cfg.L, 0.0);
    cls.predicted_phase = kPi * cls.sheet_crossings;
    return cls;
}

}  // namespace abphase

#include "cwqpt/classical.hpp"
#include "cwqpt/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace cwqpt {

std::string_view kind_name(FixedPointKind k) {
    switch (k) {
    case FixedPointKind::Minimum: return "minimum";
    case FixedPointKind::Maximum: return "maximum";
    case FixedPointKind::Saddle: return "saddle";
    case FixedPointKind::Degenerate: return "degenerate";
    }
    return "unknown";
}

std::string_view mechanism_name(BifurcationMechanism m) {
    switch (m) {
    case BifurcationMechanism::InteriorPointEntry: return "interior-point-entry";
    case BifurcationMechanism::StabilityChange: return "stability-change";
    }
    return "unknown";
}

namespace {

constexpr double pi = std::numbers::pi;

double angle_difference(double a, double b) { return wrap_angle(a - b); }

double cylinder_distance(PhasePoint a, PhasePoint b) {
    return std::hypot(a.p - b.p, angle_difference(a.q, b.q));
}

FixedPointKind classify_hessian(const Hessian& h, double degenerate_det) {
    const double det = h.det();
    if (std::abs(det) <= degenerate_det) return FixedPointKind::Degenerate;
    if (det < 0.0) return FixedPointKind::Saddle;
    return h.pp > 0.0 ? FixedPointKind::Minimum : FixedPointKind::Maximum;
}

/// Damped Newton iteration on grad H = 0 that never leaves |p| <= 1 - collar.
std::optional<PhasePoint> newton(const ClassicalModel& model, double lambda, PhasePoint x,
                                 const FixedPointOptions& opt) {
    const double p_limit = 1.0 - opt.collar;
    for (int it = 0; it < opt.max_iterations; ++it) {
        const Gradient g = model.gradient(x, lambda);
        const double gnorm = std::hypot(g.dp, g.dq);
        if (gnorm <= 1e-14) return x;
        const Hessian h = model.hessian(x, lambda);
        const double det = h.det();
        if (std::abs(det) < 1e-300 || !std::isfinite(det)) return std::nullopt;
        double step_p = -(h.qq * g.dp - h.pq * g.dq) / det;
        double step_q = -(-h.pq * g.dp + h.pp * g.dq) / det;
        int halvings = 0;
        while (std::abs(x.p + step_p) > p_limit) {
            step_p *= 0.5;
            step_q *= 0.5;
            if (++halvings > 50) return std::nullopt;
        }
        const PhasePoint next{x.p + step_p, wrap_angle(x.q + step_q)};
        if (std::hypot(step_p, step_q) <= 1e-15) {
            x = next;
            break;
        }
        x = next;
    }
    const Gradient g = model.gradient(x, lambda);
    if (std::hypot(g.dp, g.dq) <= opt.gradient_tol) return x;
    return std::nullopt;
}

} // namespace

FixedPointKind classify_pole(const ClassicalModel& model, double lambda, int side) {
    constexpr double delta = 1e-7;
    constexpr int samples = 4096;
    constexpr double tol = 1e-13;
    const double sign = side < 0 ? -1.0 : 1.0;
    const double pole = model.pole_energy(side, lambda);
    bool above = false;
    bool below = false;
    for (int k = 0; k < samples; ++k) {
        const double q = -pi + (k + 0.5) * (2.0 * pi / samples);
        const double diff = model.energy({sign * (1.0 - delta), q}, lambda) - pole;
        above = above || diff > tol;
        below = below || diff < -tol;
    }
    if (above && below) return FixedPointKind::Saddle;
    if (above) return FixedPointKind::Minimum;
    if (below) return FixedPointKind::Maximum;
    return FixedPointKind::Degenerate;
}

std::vector<FixedPoint> find_fixed_points(const ClassicalModel& model, double lambda,
                                          const FixedPointOptions& options) {
    if (!std::isfinite(lambda)) throw std::invalid_argument("find_fixed_points: lambda must be finite");
    const int n = options.seeds;
    const double p_limit = 1.0 - options.collar;
    std::vector<FixedPoint> points;
    for (int i = 0; i < n; ++i) {
        const double p0 = std::clamp(-1.0 + (i + 0.5) * (2.0 / n), -p_limit, p_limit);
        for (int k = 0; k < n; ++k) {
            const double q0 = -pi + (k + 0.5) * (2.0 * pi / n);
            const auto root = newton(model, lambda, {p0, q0}, options);
            if (!root) continue;
            const bool duplicate = std::any_of(points.begin(), points.end(), [&](const FixedPoint& fp) {
                return cylinder_distance(fp.x, *root) <= options.merge_radius;
            });
            if (duplicate) continue;
            FixedPoint fp;
            fp.x = *root;
            fp.energy = model.energy(*root, lambda);
            fp.kind = classify_hessian(model.hessian(*root, lambda), options.degenerate_det);
            points.push_back(fp);
        }
    }
    std::sort(points.begin(), points.end(), [](const FixedPoint& a, const FixedPoint& b) {
        if (a.x.p != b.x.p) return a.x.p < b.x.p;
        return a.x.q < b.x.q;
    });
    for (int side : {-1, 1}) {
        FixedPoint fp;
        fp.x = {static_cast<double>(side), 0.0};
        fp.energy = model.pole_energy(side, lambda);
        fp.kind = classify_pole(model, lambda, side);
        fp.on_boundary = true;
        points.push_back(fp);
    }
    return points;
}

std::vector<double> separatrix_energies(const ClassicalModel& model, double lambda) {
    std::vector<double> energies;
    if (!model.has_free_term()) return energies;
    for (const FixedPoint& fp : find_fixed_points(model, lambda)) {
        if (fp.kind == FixedPointKind::Saddle) energies.push_back(fp.energy);
    }
    std::sort(energies.begin(), energies.end());
    std::vector<double> merged;
    for (double e : energies) {
        if (merged.empty() || std::abs(e - merged.back()) > 1e-9) merged.push_back(e);
    }
    return merged;
}

EnergyRange energy_range(const ClassicalModel& model, double lambda) {
    EnergyRange r{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    auto include = [&r](double e) {
        r.min = std::min(r.min, e);
        r.max = std::max(r.max, e);
    };
    for (const FixedPoint& fp : find_fixed_points(model, lambda)) include(fp.energy);
    // Coarse sampling guards against a stationary point missed by the seeds.
    constexpr int coarse = 128;
    for (int i = 0; i <= coarse; ++i) {
        const double p = -1.0 + i * (2.0 / coarse);
        for (int k = 0; k < coarse; ++k) include(model.energy({p, -pi + k * (2.0 * pi / coarse)}, lambda));
    }
    return r;
}

Census census(const std::vector<FixedPoint>& points) {
    Census c;
    for (const FixedPoint& fp : points) {
        if (fp.on_boundary) {
            (fp.x.p < 0.0 ? c.lower_pole : c.upper_pole) = fp.kind;
            continue;
        }
        switch (fp.kind) {
        case FixedPointKind::Minimum: ++c.minima; break;
        case FixedPointKind::Maximum: ++c.maxima; break;
        case FixedPointKind::Saddle: ++c.saddles; break;
        case FixedPointKind::Degenerate: ++c.degenerate; break;
        }
    }
    return c;
}

BifurcationReport bifurcation_scan(const ClassicalModel& model, double lambda_low, double lambda_high, int steps,
                                   double tolerance) {
    if (steps < 10) throw std::invalid_argument("bifurcation_scan: steps must be >= 10");
    if (!(lambda_high > lambda_low)) throw std::invalid_argument("bifurcation_scan: empty lambda range");
    BifurcationReport report;
    report.id = model.id();
    report.lambda_grid.resize(steps + 1);
    report.census.resize(steps + 1);
    for (int k = 0; k <= steps; ++k) {
        report.lambda_grid[k] = lambda_low + (lambda_high - lambda_low) * k / steps;
    }
    parallel_for(report.census.size(), [&](std::size_t k) {
        report.census[k] = census(find_fixed_points(model, report.lambda_grid[k]));
    });

    std::vector<CriticalLambda> raw;
    for (int k = 0; k < steps; ++k) {
        if (report.census[k] == report.census[k + 1]) continue;
        double lo = report.lambda_grid[k];
        double hi = report.lambda_grid[k + 1];
        const Census before = report.census[k];
        // Half width so that two brackets merged across a degenerate grid point stay within tolerance.
        while (hi - lo > 0.5 * tolerance) {
            const double mid = 0.5 * (lo + hi);
            if (census(find_fixed_points(model, mid)) == before) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        raw.push_back({0.5 * (lo + hi), lo, hi, BifurcationMechanism::StabilityChange, before, report.census[k + 1]});
    }
    // A grid point landing on the transition itself (degenerate census) splits
    // one transition into two adjacent brackets.
    for (const CriticalLambda& c : raw) {
        if (!report.critical.empty() && c.bracket_low - report.critical.back().bracket_high <= 2.0 * tolerance &&
            (c.before.degenerate > 0 || c.before.lower_pole == FixedPointKind::Degenerate ||
             c.before.upper_pole == FixedPointKind::Degenerate)) {
            CriticalLambda& prev = report.critical.back();
            prev.bracket_high = c.bracket_high;
            prev.lambda = 0.5 * (prev.lambda + c.lambda);
            prev.after = c.after;
            continue;
        }
        report.critical.push_back(c);
    }
    for (CriticalLambda& c : report.critical) {
        c.mechanism = c.before.interior() != c.after.interior() ? BifurcationMechanism::InteriorPointEntry
                                                                : BifurcationMechanism::StabilityChange;
    }
    return report;
}

namespace {

struct FlowState {
    double p;
    double q; // unwrapped
};

std::optional<FlowState> flow(const ClassicalModel& model, double lambda, FlowState s, double collar) {
    if (!(std::abs(s.p) <= 1.0 - collar)) return std::nullopt;
    const Gradient g = model.gradient({s.p, s.q}, lambda);
    return FlowState{-g.dq, g.dp};
}

std::optional<FlowState> rk4_step(const ClassicalModel& model, double lambda, FlowState s, double h,
                                  double collar) {
    const auto k1 = flow(model, lambda, s, collar);
    if (!k1) return std::nullopt;
    const auto k2 = flow(model, lambda, {s.p + 0.5 * h * k1->p, s.q + 0.5 * h * k1->q}, collar);
    if (!k2) return std::nullopt;
    const auto k3 = flow(model, lambda, {s.p + 0.5 * h * k2->p, s.q + 0.5 * h * k2->q}, collar);
    if (!k3) return std::nullopt;
    const auto k4 = flow(model, lambda, {s.p + h * k3->p, s.q + h * k3->q}, collar);
    if (!k4) return std::nullopt;
    FlowState next{s.p + h / 6.0 * (k1->p + 2.0 * k2->p + 2.0 * k3->p + k4->p),
                   s.q + h / 6.0 * (k1->q + 2.0 * k2->q + 2.0 * k3->q + k4->q)};
    if (!(std::abs(next.p) <= 1.0 - collar)) return std::nullopt;
    return next;
}

} // namespace

Orbit integrate_orbit(const ClassicalModel& model, double lambda, PhasePoint start, double t_end, double dt,
                      const OrbitOptions& options) {
    if (!(dt > 0.0)) throw std::invalid_argument("integrate_orbit: dt must be positive");
    if (!(std::abs(start.p) < 1.0 - options.collar)) {
        throw std::invalid_argument("integrate_orbit: start must be interior");
    }
    const auto steps = static_cast<long>(std::ceil(t_end / dt - 1e-9));
    Orbit orbit;
    orbit.t.reserve(steps + 1);
    orbit.points.reserve(steps + 1);
    orbit.q_unwrapped.reserve(steps + 1);
    FlowState s{start.p, start.q};
    auto record = [&](double t) {
        orbit.t.push_back(t);
        orbit.points.push_back({s.p, wrap_angle(s.q)});
        orbit.q_unwrapped.push_back(s.q);
    };
    record(0.0);
    for (long n = 1; n <= steps; ++n) {
        double remaining = dt;
        double h = dt;
        while (remaining > 0.0) {
            h = std::min(h, remaining);
            const auto next = rk4_step(model, lambda, s, h, options.collar);
            if (next) {
                s = *next;
                remaining -= h;
                continue;
            }
            h *= 0.5;
            if (h < options.dt_min) {
                orbit.hit_boundary = true;
                orbit.q_advance = s.q - start.q;
                record(static_cast<double>(n - 1) * dt + (dt - remaining));
                return orbit;
            }
        }
        record(static_cast<double>(n) * dt);
    }
    orbit.q_advance = s.q - start.q;
    return orbit;
}

std::optional<OrbitReturn> first_return(const Orbit& orbit, double leave_radius) {
    const std::size_t n = orbit.points.size();
    if (n < 3) return std::nullopt;
    const PhasePoint start = orbit.points.front();
    std::size_t i = 1;
    while (i < n && cylinder_distance(orbit.points[i], start) <= leave_radius) ++i;
    for (; i + 1 < n; ++i) {
        const PhasePoint a = orbit.points[i];
        const PhasePoint b = orbit.points[i + 1];
        if (cylinder_distance(a, start) > leave_radius && cylinder_distance(b, start) > leave_radius) continue;
        // Closest approach on the segment a-b, in coordinates local to a.
        const double bp = b.p - a.p;
        const double bq = angle_difference(b.q, a.q);
        const double sp = start.p - a.p;
        const double sq = angle_difference(start.q, a.q);
        const double len2 = bp * bp + bq * bq;
        const double s = len2 > 0.0 ? std::clamp((sp * bp + sq * bq) / len2, 0.0, 1.0) : 0.0;
        const double dist = std::hypot(sp - s * bp, sq - s * bq);
        const double next_dist = i + 2 < n ? cylinder_distance(orbit.points[i + 2], start) : 0.0;
        // Closest approach is on this segment once the distance starts growing again.
        if (s < 1.0 || next_dist > cylinder_distance(b, start) || i + 2 >= n) {
            const double t = orbit.t[i] + s * (orbit.t[i + 1] - orbit.t[i]);
            const double qa = orbit.q_unwrapped[i] + s * (orbit.q_unwrapped[i + 1] - orbit.q_unwrapped[i]);
            return OrbitReturn{t, dist, qa - orbit.q_unwrapped.front()};
        }
    }
    return std::nullopt;
}

} // namespace cwqpt

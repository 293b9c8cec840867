#pragma once

#include "cwqpt/classical_model.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace cwqpt {

enum class FixedPointKind { Minimum, Maximum, Saddle, Degenerate };
std::string_view kind_name(FixedPointKind k);

struct FixedPoint {
    PhasePoint x;
    double energy = 0.0;
    FixedPointKind kind = FixedPointKind::Degenerate;
    /// Pole line p = +-1; kind comes from comparing H on a small ring with the pole energy.
    bool on_boundary = false;
};

struct FixedPointOptions {
    int seeds = 64;              ///< seeds per axis
    double collar = 1e-6;        ///< seeds and iterates stay in |p| <= 1 - collar
    double merge_radius = 1e-6;
    double gradient_tol = 1e-10;
    double degenerate_det = 1e-9;
    int max_iterations = 60;
};

/// Interior stationary points (Newton from a seed grid, merged, classified by
/// the Hessian) followed by the two pole lines. Sorted by (on_boundary, p, q).
std::vector<FixedPoint> find_fixed_points(const ClassicalModel& model, double lambda,
                                          const FixedPointOptions& options = {});

/// Classification of the pole line p = side (+-1) by the sign of H - H_pole on
/// the ring |p| = 1 - delta.
FixedPointKind classify_pole(const ClassicalModel& model, double lambda, int side);

/// Energies of the level sets separating orbit families: interior saddles and
/// saddle-like pole lines. Empty for Hamiltonians without a free term.
/// Ascending, duplicates merged.
std::vector<double> separatrix_energies(const ClassicalModel& model, double lambda);

/// Global extrema of H over the closed chart (fixed points plus poles).
struct EnergyRange {
    double min = 0.0;
    double max = 0.0;
};
EnergyRange energy_range(const ClassicalModel& model, double lambda);

// ---------------------------------------------------------------------------
// Bifurcations

struct Census {
    int minima = 0;
    int maxima = 0;
    int saddles = 0;
    int degenerate = 0;
    FixedPointKind lower_pole = FixedPointKind::Degenerate;
    FixedPointKind upper_pole = FixedPointKind::Degenerate;

    int interior() const { return minima + maxima + saddles + degenerate; }
    friend bool operator==(const Census&, const Census&) = default;
};

Census census(const std::vector<FixedPoint>& points);

enum class BifurcationMechanism { InteriorPointEntry, StabilityChange };
std::string_view mechanism_name(BifurcationMechanism m);

struct CriticalLambda {
    double lambda = 0.0;
    double bracket_low = 0.0;
    double bracket_high = 0.0;
    BifurcationMechanism mechanism = BifurcationMechanism::StabilityChange;
    Census before;
    Census after;
};

struct BifurcationReport {
    ModelId id = ModelId::Lipkin;
    std::vector<double> lambda_grid;
    std::vector<Census> census;
    std::vector<CriticalLambda> critical;
};

/// Census on steps+1 equally spaced values of [lambda_low, lambda_high];
/// every change is refined by bisection to a bracket of width <= tolerance.
BifurcationReport bifurcation_scan(const ClassicalModel& model, double lambda_low, double lambda_high, int steps,
                                   double tolerance = 1e-3);

// ---------------------------------------------------------------------------
// Orbits

struct Orbit {
    std::vector<double> t;
    std::vector<PhasePoint> points; ///< q wrapped to [-pi, pi)
    std::vector<double> q_unwrapped;
    double q_advance = 0.0;         ///< net change of the unwrapped angle
    bool hit_boundary = false;      ///< step underflow near |p| = 1
};

struct OrbitOptions {
    double dt_min = 1e-6;
    double collar = 1e-6;
};

/// Fixed-step RK4 for dq/dt = dH/dp, dp/dt = -dH/dq. Near |p| = 1 the step is
/// halved down to dt_min, after which the orbit is truncated and flagged.
Orbit integrate_orbit(const ClassicalModel& model, double lambda, PhasePoint start, double t_end, double dt,
                      const OrbitOptions& options = {});

struct OrbitReturn {
    double time = 0.0;
    double distance = 0.0;
    double q_advance = 0.0; ///< unwrapped angle change at the return
};

/// First time the orbit comes back to its start after leaving a ball of
/// radius leave_radius (distance on the cylinder). nullopt if it never does.
std::optional<OrbitReturn> first_return(const Orbit& orbit, double leave_radius = 1e-2);

// ---------------------------------------------------------------------------
// Phase portraits

struct Polyline {
    double energy = 0.0;
    std::vector<PhasePoint> points;
    bool closed = false;  ///< chain returns to its first cell edge
    int winding = 0;      ///< net number of turns in q (0 for librations)
    bool separatrix = false;
};

struct PhasePortrait {
    ModelId id = ModelId::Lipkin;
    double lambda = 0.0;
    int grid = 0;
    std::vector<double> energies;
    std::vector<Polyline> orbits; ///< ordered by (energy, leftmost point)
};

/// Level sets on a grid x grid sampling of [-1, 1] x [-pi, pi). When energies
/// is empty, 12 levels at cell centres of [min H, max H] plus the separatrix
/// energies are used.
PhasePortrait portrait(const ClassicalModel& model, double lambda, int grid,
                       const std::vector<double>& energies = {});

/// Marching squares for one level on the same sampling as portrait(). q is
/// periodic, so chains continue across the q = -pi seam. Crossing points are
/// located on each cell edge by a bracketed root solve of H itself rather than
/// by linear interpolation, which keeps them on-level next to the square-root
/// singularity at p = 1.
std::vector<Polyline> contour_levels(const ClassicalModel& model, double lambda, int grid, double level);

} // namespace cwqpt

#pragma once

#include "cwqpt/models.hpp"

#include <optional>
#include <vector>

namespace cwqpt {

struct Spectrum {
    ModelSpec spec;
    double g = 0.0;
    Vector eigenvalues;                 ///< ascending
    std::optional<Matrix> eigenvectors; ///< columns match eigenvalues
};

/// Full spectrum of a dense symmetric matrix. Throws std::invalid_argument
/// when the asymmetry exceeds 1e-10 * ||H||.
Spectrum diagonalize(const HamiltonianMatrix& h, bool want_vectors);

struct GroundState {
    double value = 0.0; ///< <observable> in the lowest eigenvector
    double energy = 0.0;
    double gap = 0.0;   ///< E1 - E0
    bool degenerate = false;
};

/// Degeneracy threshold on E1 - E0, relative to the max-abs norm of H.
inline constexpr double degeneracy_tolerance = 1e-9;

GroundState ground_expectation(const ModelSpec& spec, double g);

struct SweepPoint {
    double g = 0.0;
    Vector eigenvalues;
    GroundState ground;
};

struct SweepResult {
    ModelSpec spec;
    std::vector<SweepPoint> points; ///< one per grid value, ascending g
};

/// Diagonalizes every grid point (in parallel); grid must be nonempty and strictly ascending.
SweepResult sweep(const ModelSpec& spec, const std::vector<double>& g_grid);

enum class EsqptSearch {
    LowerHalf, ///< gaps below the band centre
    Full,      ///< every interior gap
};

struct EsqptMarker {
    double g = 0.0;
    double energy = 0.0;     ///< midpoint of the minimal smoothed gap
    double gap_at_min = 0.0; ///< smoothed gap value there
    int index = 0;           ///< gap index i (between levels i and i+1)
};

/// Smoothed nearest-neighbour gaps: centred moving average of width 2w+1.
/// Entries closer than w to either end are left as +inf.
std::vector<double> smoothed_gaps(const Vector& eigenvalues, int window);

/// Interior minimum of the smoothed gap sequence; std::nullopt when the
/// minimum sits on the edge of the searched range (monotone gaps).
/// Throws std::invalid_argument when window < 1 or the spectrum is shorter than 2w+3.
std::optional<EsqptMarker> esqpt_energy(const Vector& eigenvalues, int window,
                                        EsqptSearch search = EsqptSearch::LowerHalf);
std::optional<EsqptMarker> esqpt_energy(const Spectrum& spectrum, int window,
                                        EsqptSearch search = EsqptSearch::LowerHalf);

/// Upper-band ESQPT: the detector applied to -E, mapped back to E.
std::optional<EsqptMarker> esqpt_energy_upper(const Spectrum& spectrum, int window);

/// (E_max - E_min) / (D - 1)
double mean_level_spacing(const Vector& eigenvalues);

struct CriticalEstimate {
    double g = 0.0;
    double peak = 0.0;      ///< max of -d^2 E0/dg^2
    bool converged = true;  ///< false when the peak sits at the grid boundary
    std::vector<double> grid;
    std::vector<double> ground_energies;
};

/// Grid point maximizing -d^2 E0/dg^2 (second centred difference).
/// Requires a uniform grid of at least 5 points.
CriticalEstimate critical_g(const ModelSpec& spec, const std::vector<double>& g_grid);

/// Inclusive uniform grid start, start+step, ... up to stop (half-step tolerance).
std::vector<double> uniform_grid(double start, double stop, double step);

} // namespace cwqpt

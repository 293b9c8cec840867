#include "cwqpt/spectra.hpp"
#include "cwqpt/parallel.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cwqpt {

namespace {

Eigen::SelfAdjointEigenSolver<Matrix> solve(const Matrix& H, bool want_vectors) {
    const double scale = std::max(max_abs(H), std::numeric_limits<double>::min());
    if (H.rows() != H.cols()) throw std::invalid_argument("diagonalize: matrix is not square");
    if (max_abs(H - H.transpose()) > 1e-10 * scale) {
        throw std::invalid_argument("diagonalize: matrix is not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(H, want_vectors ? Eigen::ComputeEigenvectors
                                                                 : Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw std::runtime_error("diagonalize: eigensolver failed");
    return solver;
}

double spectral_norm(const Vector& eigenvalues) {
    return std::max(std::abs(eigenvalues(0)), std::abs(eigenvalues(eigenvalues.size() - 1)));
}

GroundState ground_from(const ModelSpec& spec, const Eigen::SelfAdjointEigenSolver<Matrix>& solver) {
    const Vector& e = solver.eigenvalues();
    const Vector v = solver.eigenvectors().col(0);
    GroundState gs;
    gs.energy = e(0);
    gs.value = v.cwiseAbs2().dot(observable_diagonal(spec));
    gs.gap = e.size() > 1 ? e(1) - e(0) : 0.0;
    gs.degenerate = e.size() > 1 && gs.gap <= degeneracy_tolerance * spectral_norm(e);
    return gs;
}

} // namespace

Spectrum diagonalize(const HamiltonianMatrix& h, bool want_vectors) {
    const auto solver = solve(h.H, want_vectors);
    Spectrum s{h.spec, h.g, solver.eigenvalues(), std::nullopt};
    if (want_vectors) s.eigenvectors = solver.eigenvectors();
    return s;
}

GroundState ground_expectation(const ModelSpec& spec, double g) {
    return ground_from(spec, solve(build_reduced_hamiltonian(spec, g).H, true));
}

SweepResult sweep(const ModelSpec& spec, const std::vector<double>& g_grid) {
    if (g_grid.empty()) throw std::invalid_argument("sweep: empty grid");
    for (std::size_t i = 1; i < g_grid.size(); ++i) {
        if (!(g_grid[i] > g_grid[i - 1])) throw std::invalid_argument("sweep: grid must be strictly ascending");
    }
    SweepResult result{spec, std::vector<SweepPoint>(g_grid.size())};
    parallel_for(g_grid.size(), [&](std::size_t i) {
        const auto solver = solve(build_reduced_hamiltonian(spec, g_grid[i]).H, true);
        result.points[i] = SweepPoint{g_grid[i], solver.eigenvalues(), ground_from(spec, solver)};
    });
    return result;
}

std::vector<double> smoothed_gaps(const Vector& eigenvalues, int window) {
    const Eigen::Index levels = eigenvalues.size();
    if (window < 1) throw std::invalid_argument("esqpt: window must be >= 1");
    if (levels < 2 * window + 3) throw std::invalid_argument("esqpt: spectrum too short for window");
    const int n_gaps = static_cast<int>(levels) - 1;
    std::vector<double> gaps(n_gaps);
    for (int i = 0; i < n_gaps; ++i) gaps[i] = eigenvalues(i + 1) - eigenvalues(i);
    std::vector<double> smooth(n_gaps, std::numeric_limits<double>::infinity());
    for (int i = window; i + window < n_gaps; ++i) {
        double sum = 0.0;
        for (int k = i - window; k <= i + window; ++k) sum += gaps[k];
        smooth[i] = sum / (2 * window + 1);
    }
    return smooth;
}

std::optional<EsqptMarker> esqpt_energy(const Vector& eigenvalues, int window, EsqptSearch search) {
    const std::vector<double> smooth = smoothed_gaps(eigenvalues, window);
    const int n_gaps = static_cast<int>(smooth.size());
    const int first = window;
    const int last = search == EsqptSearch::LowerHalf ? n_gaps / 2 - 1 : n_gaps - 1 - window;
    if (last - first < 2) return std::nullopt;

    int best = first;
    for (int i = first + 1; i <= last; ++i) {
        if (smooth[i] < smooth[best]) best = i;
    }
    // A minimum on the edge of the range means the gaps are monotone there.
    if (best == first || best == last) return std::nullopt;
    return EsqptMarker{0.0, 0.5 * (eigenvalues(best) + eigenvalues(best + 1)), smooth[best], best};
}

std::optional<EsqptMarker> esqpt_energy(const Spectrum& spectrum, int window, EsqptSearch search) {
    auto marker = esqpt_energy(spectrum.eigenvalues, window, search);
    if (marker) marker->g = spectrum.g;
    return marker;
}

std::optional<EsqptMarker> esqpt_energy_upper(const Spectrum& spectrum, int window) {
    const Vector negated = -spectrum.eigenvalues.reverse();
    auto marker = esqpt_energy(negated, window, EsqptSearch::LowerHalf);
    if (!marker) return std::nullopt;
    marker->g = spectrum.g;
    marker->energy = -marker->energy;
    marker->index = static_cast<int>(spectrum.eigenvalues.size()) - 2 - marker->index;
    return marker;
}

double mean_level_spacing(const Vector& eigenvalues) {
    if (eigenvalues.size() < 2) return 0.0;
    return (eigenvalues(eigenvalues.size() - 1) - eigenvalues(0)) / static_cast<double>(eigenvalues.size() - 1);
}

CriticalEstimate critical_g(const ModelSpec& spec, const std::vector<double>& g_grid) {
    const std::size_t n = g_grid.size();
    if (n < 5) throw std::invalid_argument("critical_g: grid needs at least 5 points");
    const double h = g_grid[1] - g_grid[0];
    if (!(h > 0.0)) throw std::invalid_argument("critical_g: grid must be ascending");
    for (std::size_t i = 1; i < n; ++i) {
        if (std::abs(g_grid[i] - g_grid[i - 1] - h) > 1e-9 * std::max(1.0, std::abs(h))) {
            throw std::invalid_argument("critical_g: grid must be uniform");
        }
    }
    CriticalEstimate est;
    est.grid = g_grid;
    est.ground_energies.resize(n);
    parallel_for(n, [&](std::size_t i) {
        est.ground_energies[i] = solve(build_reduced_hamiltonian(spec, g_grid[i]).H, false).eigenvalues()(0);
    });
    const auto& e = est.ground_energies;
    std::size_t best = 1;
    double best_value = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double curvature = -(e[i + 1] - 2.0 * e[i] + e[i - 1]) / (h * h);
        if (curvature > best_value) {
            best_value = curvature;
            best = i;
        }
    }
    est.g = g_grid[best];
    est.peak = best_value;
    est.converged = best != 1 && best != n - 2;
    return est;
}

std::vector<double> uniform_grid(double start, double stop, double step) {
    if (!(step > 0.0) || !std::isfinite(start) || !std::isfinite(stop) || start > stop) {
        throw std::invalid_argument("range must satisfy step > 0 and start <= stop");
    }
    const auto count = static_cast<long>(std::floor((stop - start) / step + 0.5));
    std::vector<double> grid;
    grid.reserve(count + 1);
    for (long k = 0; k <= count; ++k) grid.push_back(start + static_cast<double>(k) * step);
    return grid;
}

} // namespace cwqpt

#pragma once

#include "cwqpt/classical.hpp"
#include "cwqpt/spectra.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cwqpt {

struct ConvergenceRow {
    Spin j;
    double scaled_ground = 0.0; ///< E0 / j^k
    double deviation = 0.0;     ///< |scaled_ground - classical_ground|
};

struct CorrespondenceReport {
    ModelSpec spec; ///< spec at the largest j of the table
    double g = 0.0;
    double lambda = 0.0;
    /// Classical extremum mapped to quantum units: offset + scale * (min or max of H).
    double classical_ground = 0.0;
    double scaled_ground = 0.0; ///< last row of the table
    double deviation = 0.0;
    std::vector<ConvergenceRow> table;

    // ESQPT vs separatrix. Separatrix fields are absent for models without one,
    // ESQPT fields when the detector finds no interior gap minimum.
    std::optional<double> separatrix;   ///< lowest separatrix, mapped
    std::optional<double> esqpt_scaled; ///< E* / j^k
    std::optional<double> esqpt_deviation;
    std::optional<double> esqpt_tolerance; ///< 5 mean level spacings / j^k
    std::optional<bool> esqpt_match;
};

/// Classical ground energy in quantum units. Models with a negative energy
/// scale map the quantum ground state onto the classical maximum.
double mapped_classical_ground(const ModelSpec& spec, double lambda);

/// E0/j^k against the classical extremum for every j of an ascending list (max j <= 400).
CorrespondenceReport ground_energy_match(ModelId id, double g, const std::vector<Spin>& j_list);

/// ground_energy_match at a single j plus the ESQPT-separatrix comparison.
CorrespondenceReport esqpt_separatrix_match(ModelId id, double g, Spin j, int window = 2);

struct CriticalMatch {
    ModelId id = ModelId::Lipkin;
    Spin j;
    CriticalEstimate quantum;
    double mapped_lambda = 0.0; ///< lambda_of_g(g*)
    BifurcationReport classical;
    std::optional<double> lambda_c; ///< classical critical value nearest to mapped_lambda
    std::optional<double> difference; ///< |mapped_lambda - lambda_c|
    std::optional<double> literature_g;
    std::optional<double> literature_lambda;
    std::string note;
};

struct CriticalSearch {
    double g_start = 0.0;
    double g_stop = 0.0;
    double g_step = 0.01;
    double lambda_low = 0.0;
    double lambda_high = 0.0;
    int lambda_steps = 100;
};

/// Default quantum g grid and classical lambda range bracketing each model's transition.
CriticalSearch default_critical_search(ModelId id);

/// Remark on literature critical values that differ from the classical
/// bifurcation of the printed Hamiltonian; empty when they agree.
std::string critical_note(ModelId id);

CriticalMatch critical_match(ModelId id, Spin j = Spin::from_twice(200));
CriticalMatch critical_match(ModelId id, Spin j, const CriticalSearch& search);

} // namespace cwqpt

#include "cwqpt/correspondence.hpp"
#include "cwqpt/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cwqpt {

double mapped_classical_ground(const ModelSpec& spec, double lambda) {
    const EnergyRange range = energy_range(classical_hamiltonian(spec.id), lambda);
    const double extremum = spec.energy_scale > 0.0 ? range.min : range.max;
    return spec.energy_offset + spec.energy_scale * extremum;
}

CorrespondenceReport ground_energy_match(ModelId id, double g, const std::vector<Spin>& j_list) {
    if (j_list.empty()) throw std::invalid_argument("ground_energy_match: empty j list");
    for (std::size_t i = 0; i < j_list.size(); ++i) {
        if (j_list[i].twice() > 800) throw std::invalid_argument("ground_energy_match: j must be <= 400");
        if (i > 0 && !(j_list[i].twice() > j_list[i - 1].twice())) {
            throw std::invalid_argument("ground_energy_match: j list must be ascending");
        }
    }
    CorrespondenceReport report;
    report.spec = model_spec(id, j_list.back());
    report.g = g;
    report.lambda = lambda_of_g(report.spec, g);
    report.classical_ground = mapped_classical_ground(report.spec, report.lambda);
    report.table.resize(j_list.size());
    parallel_for(j_list.size(), [&](std::size_t i) {
        const ModelSpec spec = model_spec(id, j_list[i]);
        const double e0 = ground_expectation(spec, g).energy / spec.energy_unit();
        report.table[i] = {j_list[i], e0, std::abs(e0 - report.classical_ground)};
    });
    report.scaled_ground = report.table.back().scaled_ground;
    report.deviation = report.table.back().deviation;
    return report;
}

CorrespondenceReport esqpt_separatrix_match(ModelId id, double g, Spin j, int window) {
    CorrespondenceReport report = ground_energy_match(id, g, {j});
    const std::vector<double> separatrices = separatrix_energies(classical_hamiltonian(id), report.lambda);
    if (separatrices.empty()) return report;

    const ModelSpec& spec = report.spec;
    std::vector<double> mapped;
    for (double e : separatrices) mapped.push_back(spec.energy_offset + spec.energy_scale * e);
    report.separatrix = *std::min_element(mapped.begin(), mapped.end());

    const Spectrum spectrum = diagonalize(build_reduced_hamiltonian(spec, g), false);
    const auto marker = esqpt_energy(spectrum, window);
    if (!marker) return report;
    const double unit = spec.energy_unit();
    report.esqpt_scaled = marker->energy / unit;
    report.esqpt_deviation = std::abs(*report.esqpt_scaled - *report.separatrix);
    report.esqpt_tolerance = 5.0 * mean_level_spacing(spectrum.eigenvalues) / unit;
    report.esqpt_match = *report.esqpt_deviation <= *report.esqpt_tolerance;
    return report;
}

CriticalSearch default_critical_search(ModelId id) {
    switch (id) {
    case ModelId::Lipkin: return {0.5, 1.6, 0.01, 0.2, 1.2, 100};
    case ModelId::Pairing: return {0.5, 1.6, 0.01, -1.2, -0.2, 100};
    case ModelId::JCRotating: return {0.5, 1.6, 0.01, 0.2, 2.0, 90};
    case ModelId::JCCounterRotating: return {0.5, 1.6, 0.01, 0.5, 1.0, 50};
    case ModelId::Bilayer: return {0.4, 1.1, 0.01, 0.5, 1.0, 50};
    case ModelId::Heisenberg: return {-2.0, -0.3, 0.01, 0.5, 1.5, 100};
    }
    throw std::invalid_argument("default_critical_search: unknown model");
}

std::string critical_note(ModelId id) {
    switch (id) {
    case ModelId::Lipkin:
        return "literature quotes g = 1.0 and lambda = 1.0; the classical Hamiltonian "
               "p + lambda (1 - p^2) cos 2q gains interior fixed points at lambda = 0.5";
    case ModelId::Pairing:
        return "literature quotes g = 1.0 and lambda = -1.0; the classical Hamiltonian "
               "p + lambda (1 - p^2) cos^2(q/2) gains an interior fixed point at lambda = -0.5";
    case ModelId::JCRotating:
        return "no transition: the classical Hamiltonian is lambda times a fixed function";
    default: return "";
    }
}

CriticalMatch critical_match(ModelId id, Spin j) { return critical_match(id, j, default_critical_search(id)); }

CriticalMatch critical_match(ModelId id, Spin j, const CriticalSearch& search) {
    const ModelSpec spec = model_spec(id, j);
    CriticalMatch match;
    match.id = id;
    match.j = j;
    match.quantum = critical_g(spec, uniform_grid(search.g_start, search.g_stop, search.g_step));
    match.mapped_lambda = lambda_of_g(spec, match.quantum.g);
    match.classical =
        bifurcation_scan(classical_hamiltonian(id), search.lambda_low, search.lambda_high, search.lambda_steps);
    for (const CriticalLambda& c : match.classical.critical) {
        if (!match.lambda_c || std::abs(c.lambda - match.mapped_lambda) < std::abs(*match.lambda_c - match.mapped_lambda)) {
            match.lambda_c = c.lambda;
        }
    }
    if (match.lambda_c) match.difference = std::abs(match.mapped_lambda - *match.lambda_c);
    match.literature_g = spec.literature_critical_g;
    match.literature_lambda = spec.literature_critical_lambda;
    match.note = critical_note(id);
    return match;
}

} // namespace cwqpt

#pragma once

#include "cwqpt/su2.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cwqpt {

enum class ModelId { Lipkin, Pairing, JCRotating, JCCounterRotating, Bilayer, Heisenberg };

inline constexpr std::array<ModelId, 6> all_models{
    ModelId::Lipkin,  ModelId::Pairing,    ModelId::JCRotating, ModelId::JCCounterRotating,
    ModelId::Bilayer, ModelId::Heisenberg,
};

/// CLI token: lipkin, pairing, jc-rwa, jc-crw, bilayer, heisenberg.
std::string_view model_token(ModelId id);
ModelId parse_model(std::string_view token);
/// Models whose Hamiltonian lives on two components (spin-spin or spin-boson).
bool is_two_component(ModelId id);

enum class Observable { Jz, J1z, J2z };
std::string_view observable_name(Observable o);

struct Rational {
    int num = 0;
    int den = 1;
    double value() const { return static_cast<double>(num) / den; }
    friend bool operator==(Rational, Rational) = default;
};

struct ModelSpec {
    ModelId id = ModelId::Lipkin;
    Spin j;
    /// Particle number N; absent for Heisenberg.
    std::optional<int> particle_number;
    /// Balancing exponent s of H = H0 + g/N^s Hint.
    Rational balancing_exponent;
    /// Power n of the free term p^n in the classical Hamiltonian.
    int free_power = 1;
    Observable observable = Observable::Jz;
    std::string conserved;

    // Quantum energies map onto the printed classical Hamiltonian as
    //   E / j^energy_exponent  ~  energy_offset + energy_scale * H_cl(p, q; lambda(g)).
    int energy_exponent = 1;
    double energy_scale = 1.0;
    double energy_offset = 0.0;

    // Critical couplings as quoted in the literature for this model, where known.
    std::optional<double> literature_critical_g;
    std::optional<double> literature_critical_lambda;

    double N() const { return particle_number ? static_cast<double>(*particle_number) : 1.0; }
    /// j^energy_exponent
    double energy_unit() const;
};

ModelSpec model_spec(ModelId id, Spin j);

/// Linear map g -> lambda obtained from the large-j limit of the balanced Hamiltonian.
double lambda_of_g(const ModelSpec& spec, double g);
/// Inverse of lambda_of_g.
double g_of_lambda(const ModelSpec& spec, double lambda);

struct BasisLabel {
    double m = 0.0;
    /// Boson occupation for spin-boson models.
    std::optional<int> n;
};

struct HamiltonianMatrix {
    ModelSpec spec;
    double g = 0.0;
    Matrix H;
    std::vector<BasisLabel> basis;
};

/// (2j+1)-dimensional Hamiltonian on the conserved sector, basis m = -j ... j.
HamiltonianMatrix build_reduced_hamiltonian(const ModelSpec& spec, double g);

/// Diagonal of the model observable in the reduced basis.
Vector observable_diagonal(const ModelSpec& spec);

/// Brute-force Hamiltonian on the full tensor space (spin x spin or spin x
/// truncated boson, n_max = 2j). Lipkin returns its single-spin matrix.
/// Requires j <= 8.
Matrix build_full_hamiltonian(const ModelSpec& spec, double g);

/// Conserved operator on the full tensor space whose zero eigenspace is the
/// sector used by build_reduced_hamiltonian.
Matrix full_conserved_operator(const ModelSpec& spec);

/// Indices of full-space basis states spanning the conserved sector.
std::vector<int> conserved_sector_indices(const ModelSpec& spec);

} // namespace cwqpt

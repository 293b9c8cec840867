#include "cwqpt/models.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cwqpt {

std::string_view model_token(ModelId id) {
    switch (id) {
    case ModelId::Lipkin: return "lipkin";
    case ModelId::Pairing: return "pairing";
    case ModelId::JCRotating: return "jc-rwa";
    case ModelId::JCCounterRotating: return "jc-crw";
    case ModelId::Bilayer: return "bilayer";
    case ModelId::Heisenberg: return "heisenberg";
    }
    return "unknown";
}

ModelId parse_model(std::string_view token) {
    for (ModelId id : all_models) {
        if (model_token(id) == token) return id;
    }
    throw std::invalid_argument("unknown model '" + std::string(token) + "'");
}

bool is_two_component(ModelId id) { return id != ModelId::Lipkin; }

std::string_view observable_name(Observable o) {
    switch (o) {
    case Observable::Jz: return "Jz";
    case Observable::J1z: return "J1z";
    case Observable::J2z: return "J2z";
    }
    return "unknown";
}

double ModelSpec::energy_unit() const { return std::pow(j.value(), energy_exponent); }

ModelSpec model_spec(ModelId id, Spin j) {
    if (j.twice() < 1) throw std::invalid_argument("model_spec: j must be positive");
    ModelSpec spec;
    spec.id = id;
    spec.j = j;
    const int twice = j.twice();
    switch (id) {
    case ModelId::Lipkin:
        spec.particle_number = twice;
        spec.balancing_exponent = {1, 1};
        spec.free_power = 1;
        spec.observable = Observable::Jz;
        spec.conserved = "J^2 (single multiplet J = N/2)";
        spec.literature_critical_g = 1.0;
        spec.literature_critical_lambda = 1.0;
        break;
    case ModelId::Pairing:
        spec.particle_number = 2 * twice;
        spec.balancing_exponent = {1, 1};
        spec.free_power = 1;
        spec.observable = Observable::J2z;
        spec.conserved = "J1z + J2z = 0";
        spec.energy_scale = 2.0;
        spec.literature_critical_g = 1.0;
        spec.literature_critical_lambda = -1.0;
        break;
    case ModelId::JCRotating:
        spec.particle_number = twice;
        spec.balancing_exponent = {1, 2};
        spec.free_power = 0;
        spec.observable = Observable::J1z;
        spec.conserved = "J1z + J2z = 0";
        spec.energy_scale = 2.0;
        spec.energy_offset = 1.0;
        break;
    case ModelId::JCCounterRotating:
        spec.particle_number = twice;
        spec.balancing_exponent = {1, 2};
        spec.free_power = 1;
        spec.observable = Observable::J1z;
        spec.conserved = "J2z - J1z = 0";
        spec.energy_scale = 2.0;
        spec.energy_offset = 1.0;
        spec.literature_critical_g = 1.0;
        spec.literature_critical_lambda = 1.0 / std::sqrt(2.0);
        break;
    case ModelId::Bilayer:
        spec.particle_number = 2 * twice;
        spec.balancing_exponent = {1, 2};
        spec.free_power = 1;
        spec.observable = Observable::J2z;
        spec.conserved = "J1z + J2z = 0";
        spec.energy_offset = 1.0;
        spec.literature_critical_g = 1.0 / std::sqrt(2.0);
        spec.literature_critical_lambda = 1.0 / std::sqrt(2.0);
        break;
    case ModelId::Heisenberg:
        spec.balancing_exponent = {0, 1};
        spec.free_power = 2;
        spec.observable = Observable::J2z;
        spec.conserved = "J1z + J2z = 0";
        spec.energy_exponent = 2;
        spec.energy_scale = -1.0;
        spec.literature_critical_g = -1.0;
        spec.literature_critical_lambda = 1.0;
        break;
    }
    return spec;
}

namespace {

double lambda_per_g(ModelId id) {
    switch (id) {
    case ModelId::Lipkin: return 0.5;
    case ModelId::Pairing: return -0.5;
    case ModelId::JCRotating:
    case ModelId::JCCounterRotating: return 1.0 / std::sqrt(2.0);
    case ModelId::Bilayer: return 1.0;
    case ModelId::Heisenberg: return -1.0;
    }
    return 1.0;
}

} // namespace

double lambda_of_g(const ModelSpec& spec, double g) { return lambda_per_g(spec.id) * g; }

double g_of_lambda(const ModelSpec& spec, double lambda) { return lambda / lambda_per_g(spec.id); }

HamiltonianMatrix build_reduced_hamiltonian(const ModelSpec& spec, double g) {
    if (!std::isfinite(g)) throw std::invalid_argument("build_reduced_hamiltonian: g must be finite");
    const Spin j = spec.j;
    const int d = j.dim();
    const double jv = j.value();
    HamiltonianMatrix out{spec, g, Matrix::Zero(d, d), {}};
    out.basis.reserve(d);
    Matrix& H = out.H;

    auto set_pair = [&H](int row, int col, double v) {
        H(row, col) = v;
        H(col, row) = v;
    };

    for (int k = 0; k < d; ++k) {
        const double m = j.m(k);
        BasisLabel label{m, std::nullopt};
        switch (spec.id) {
        case ModelId::Lipkin:
            H(k, k) = m;
            if (k + 2 < d) {
                set_pair(k + 2, k, g / (2.0 * spec.N()) * raise_coefficient(j, m) * raise_coefficient(j, m + 1.0));
            }
            break;
        case ModelId::Pairing: {
            // |j,-m>_1 |j,m>_2
            const double l2 = lower_coefficient(j, m);
            const double l1 = lower_coefficient(j, -m);
            H(k, k) = 2.0 * m - g / spec.N() * (l2 * l2 + l1 * l1);
            if (k + 1 < d) set_pair(k + 1, k, -g / spec.N() * raise_coefficient(j, m) * lower_coefficient(j, -m));
            break;
        }
        case ModelId::JCRotating: {
            const int n = static_cast<int>(std::lround(jv - m));
            label.n = n;
            H(k, k) = jv;
            if (k + 1 < d) set_pair(k + 1, k, g / std::sqrt(spec.N()) * raise_coefficient(j, m) * std::sqrt(n));
            break;
        }
        case ModelId::JCCounterRotating: {
            const int n = static_cast<int>(std::lround(jv + m));
            label.n = n;
            H(k, k) = jv + 2.0 * m;
            if (k + 1 < d) set_pair(k + 1, k, g / std::sqrt(spec.N()) * raise_coefficient(j, m) * std::sqrt(n + 1.0));
            break;
        }
        case ModelId::Bilayer: {
            const int n = static_cast<int>(std::lround(jv - m));
            label.n = n;
            H(k, k) = n;
            if (k + 1 < d) set_pair(k + 1, k, g / std::sqrt(spec.N()) * raise_coefficient(j, m) * std::sqrt(n));
            break;
        }
        case ModelId::Heisenberg:
            H(k, k) = -m * m;
            if (k + 1 < d) set_pair(k + 1, k, 0.5 * g * raise_coefficient(j, m) * lower_coefficient(j, -m));
            break;
        }
        out.basis.push_back(label);
    }
    return out;
}

Vector observable_diagonal(const ModelSpec& spec) {
    const int d = spec.j.dim();
    Vector diag(d);
    const double sign = spec.id == ModelId::Bilayer ? -1.0 : 1.0;
    for (int k = 0; k < d; ++k) diag(k) = sign * spec.j.m(k);
    return diag;
}

namespace {

constexpr int max_full_twice_j = 16;

struct TwoComponent {
    Matrix J1z, J1p, J1m;
    Matrix A2z, A2p, A2m; // second factor: spin ladders, or (number - j, bdag, b)
};

TwoComponent embed_components(const ModelSpec& spec) {
    const Spin j = spec.j;
    const LadderSet s1 = build_spin_operators(j);
    const Matrix I = Matrix::Identity(j.dim(), j.dim());
    TwoComponent tc;
    tc.J1z = tensor_embed(s1.Jz, I);
    tc.J1p = tensor_embed(s1.Jplus, I);
    tc.J1m = tensor_embed(s1.Jminus, I);
    if (spec.id == ModelId::Pairing || spec.id == ModelId::Heisenberg) {
        tc.A2z = tensor_embed(I, s1.Jz);
        tc.A2p = tensor_embed(I, s1.Jplus);
        tc.A2m = tensor_embed(I, s1.Jminus);
    } else {
        const BosonSet boson = spinorized_boson(j);
        tc.A2z = tensor_embed(I, boson.number - j.value() * I);
        tc.A2p = tensor_embed(I, boson.bdag);
        tc.A2m = tensor_embed(I, boson.b);
    }
    return tc;
}

} // namespace

Matrix build_full_hamiltonian(const ModelSpec& spec, double g) {
    if (spec.j.twice() > max_full_twice_j) {
        throw std::invalid_argument("build_full_hamiltonian: j too large for the full tensor space (j <= 8)");
    }
    if (spec.id == ModelId::Lipkin) return build_reduced_hamiltonian(spec, g).H;

    const TwoComponent c = embed_components(spec);
    const double jv = spec.j.value();
    const Eigen::Index dim = c.J1z.rows();
    const Matrix I = Matrix::Identity(dim, dim);
    Matrix H;
    switch (spec.id) {
    case ModelId::Pairing:
        H = (c.A2z - c.J1z) - g / spec.N() * (c.A2p + c.J1p) * (c.A2m + c.J1m);
        break;
    case ModelId::JCRotating:
        // A2m = b, A2p = bdag
        H = jv * I + (c.J1z + c.A2z) + g / std::sqrt(spec.N()) * (c.A2m * c.J1p + c.A2p * c.J1m);
        break;
    case ModelId::JCCounterRotating:
        H = jv * I + (c.J1z + c.A2z) + g / std::sqrt(spec.N()) * (c.A2p * c.J1p + c.A2m * c.J1m);
        break;
    case ModelId::Bilayer:
        H = (jv * I + c.A2z) + g / std::sqrt(spec.N()) * (c.J1p * c.A2m + c.A2p * c.J1m);
        break;
    case ModelId::Heisenberg:
        H = c.J1z * c.A2z + 0.5 * g * (c.J1p * c.A2m + c.J1m * c.A2p);
        break;
    case ModelId::Lipkin:
        break;
    }
    // Products of exact ladder matrices are symmetric up to rounding.
    return 0.5 * (H + H.transpose());
}

Matrix full_conserved_operator(const ModelSpec& spec) {
    if (spec.id == ModelId::Lipkin) {
        const int d = spec.j.dim();
        return Matrix::Zero(d, d);
    }
    const TwoComponent c = embed_components(spec);
    if (spec.id == ModelId::JCCounterRotating) return c.A2z - c.J1z;
    return c.J1z + c.A2z;
}

std::vector<int> conserved_sector_indices(const ModelSpec& spec) {
    const int d = spec.j.dim();
    std::vector<int> idx;
    if (spec.id == ModelId::Lipkin) {
        for (int k = 0; k < d; ++k) idx.push_back(k);
        return idx;
    }
    // Reduced basis index k runs over the second-factor label that is
    // ascending in m of the first spin (spin-boson) or of spin 2 (spin-spin).
    for (int k = 0; k < d; ++k) {
        switch (spec.id) {
        case ModelId::Pairing:
        case ModelId::Heisenberg:
            // |-m>_1 |m>_2 : first index d-1-k
            idx.push_back((d - 1 - k) * d + k);
            break;
        case ModelId::JCRotating:
        case ModelId::Bilayer:
            // spin m_k, n = j - m_k = d-1-k
            idx.push_back(k * d + (d - 1 - k));
            break;
        case ModelId::JCCounterRotating:
            idx.push_back(k * d + k);
            break;
        case ModelId::Lipkin:
            break;
        }
    }
    return idx;
}

} // namespace cwqpt

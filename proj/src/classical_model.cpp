#include "cwqpt/classical_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cwqpt {

double wrap_angle(double q) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double w = std::fmod(q + std::numbers::pi, two_pi);
    if (w < 0.0) w += two_pi;
    w -= std::numbers::pi;
    // fmod can round up to exactly +pi
    if (w >= std::numbers::pi) w -= two_pi;
    return w;
}

ClassicalModel classical_hamiltonian(ModelId id) { return ClassicalModel(id); }

bool ClassicalModel::singular_at_upper_pole() const {
    return id_ == ModelId::JCRotating || id_ == ModelId::JCCounterRotating || id_ == ModelId::Bilayer;
}

void ClassicalModel::check_domain(PhasePoint x, bool derivative) const {
    if (!(x.p >= -1.0 && x.p <= 1.0)) throw std::domain_error("classical: p outside [-1, 1]");
    if (derivative && singular_at_upper_pole() && x.p >= 1.0) {
        throw std::domain_error("classical: derivative diverges at p = 1");
    }
}

namespace {

// f(p) = (1 + p) sqrt(1 - p) and derivatives.
double root_factor(double p) { return (1.0 + p) * std::sqrt(std::max(0.0, 1.0 - p)); }
double root_factor_d1(double p) { return (1.0 - 3.0 * p) / (2.0 * std::sqrt(1.0 - p)); }
double root_factor_d2(double p) { return (3.0 * p - 5.0) / (4.0 * std::pow(1.0 - p, 1.5)); }

} // namespace

double ClassicalModel::energy(PhasePoint x, double lambda) const {
    check_domain(x, false);
    const double p = x.p;
    const double q = x.q;
    switch (id_) {
    case ModelId::Lipkin: return p + lambda * (1.0 - p * p) * std::cos(2.0 * q);
    case ModelId::Pairing: {
        const double c = std::cos(0.5 * q);
        return p + lambda * (1.0 - p * p) * c * c;
    }
    case ModelId::JCRotating: return lambda * root_factor(p) * std::cos(q);
    case ModelId::JCCounterRotating:
    case ModelId::Bilayer: return p + lambda * root_factor(p) * std::cos(q);
    case ModelId::Heisenberg: return p * p + lambda * (1.0 - p * p) * std::cos(q);
    }
    return 0.0;
}

Gradient ClassicalModel::gradient(PhasePoint x, double lambda) const {
    check_domain(x, true);
    const double p = x.p;
    const double q = x.q;
    switch (id_) {
    case ModelId::Lipkin:
        return {1.0 - 2.0 * lambda * p * std::cos(2.0 * q), -2.0 * lambda * (1.0 - p * p) * std::sin(2.0 * q)};
    case ModelId::Pairing:
        return {1.0 - lambda * p * (1.0 + std::cos(q)), -0.5 * lambda * (1.0 - p * p) * std::sin(q)};
    case ModelId::JCRotating:
        return {lambda * root_factor_d1(p) * std::cos(q), -lambda * root_factor(p) * std::sin(q)};
    case ModelId::JCCounterRotating:
    case ModelId::Bilayer:
        return {1.0 + lambda * root_factor_d1(p) * std::cos(q), -lambda * root_factor(p) * std::sin(q)};
    case ModelId::Heisenberg:
        return {2.0 * p * (1.0 - lambda * std::cos(q)), -lambda * (1.0 - p * p) * std::sin(q)};
    }
    return {};
}

Hessian ClassicalModel::hessian(PhasePoint x, double lambda) const {
    check_domain(x, true);
    const double p = x.p;
    const double q = x.q;
    switch (id_) {
    case ModelId::Lipkin: {
        const double c2 = std::cos(2.0 * q);
        return {-2.0 * lambda * c2, 4.0 * lambda * p * std::sin(2.0 * q), -4.0 * lambda * (1.0 - p * p) * c2};
    }
    case ModelId::Pairing:
        return {-lambda * (1.0 + std::cos(q)), lambda * p * std::sin(q), -0.5 * lambda * (1.0 - p * p) * std::cos(q)};
    case ModelId::JCRotating:
    case ModelId::JCCounterRotating:
    case ModelId::Bilayer:
        return {lambda * root_factor_d2(p) * std::cos(q), -lambda * root_factor_d1(p) * std::sin(q),
                -lambda * root_factor(p) * std::cos(q)};
    case ModelId::Heisenberg:
        return {2.0 * (1.0 - lambda * std::cos(q)), 2.0 * lambda * p * std::sin(q),
                -lambda * (1.0 - p * p) * std::cos(q)};
    }
    return {};
}

double ClassicalModel::pole_energy(int side, double lambda) const {
    return energy({side < 0 ? -1.0 : 1.0, 0.0}, lambda);
}

} // namespace cwqpt

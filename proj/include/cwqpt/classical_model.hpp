#pragma once

#include "cwqpt/models.hpp"

#include <array>
#include <numbers>

namespace cwqpt {

/// Point of the (p, q) chart: p = lim Jz/J in [-1, 1], q in [-pi, pi).
struct PhasePoint {
    double p = 0.0;
    double q = 0.0;
};

struct Gradient {
    double dp = 0.0;
    double dq = 0.0;
};

struct Hessian {
    double pp = 0.0;
    double pq = 0.0;
    double qq = 0.0;
    double det() const { return pp * qq - pq * pq; }
};

/// Wraps q into [-pi, pi).
double wrap_angle(double q);

/// One-degree-of-freedom classical Hamiltonian of a model on its conserved sector:
///   lipkin      p + l (1 - p^2) cos 2q
///   pairing     p + l (1 - p^2) cos^2(q/2)
///   jc-rwa      l (1 + p) sqrt(1 - p) cos q
///   jc-crw      p + l (1 + p) sqrt(1 - p) cos q
///   bilayer     p + l (1 + p) sqrt(1 - p) cos q
///   heisenberg  p^2 + l (1 - p^2) cos q
class ClassicalModel {
public:
    explicit ClassicalModel(ModelId id) : id_(id) {}

    ModelId id() const { return id_; }
    /// False for jc-rwa, whose Hamiltonian is a pure multiple of the interaction.
    bool has_free_term() const { return id_ != ModelId::JCRotating; }
    /// True when the p-derivatives diverge at p = 1.
    bool singular_at_upper_pole() const;

    double energy(PhasePoint x, double lambda) const;
    /// Throws std::domain_error outside |p| <= 1 and at p = 1 for the
    /// square-root models.
    Gradient gradient(PhasePoint x, double lambda) const;
    Hessian hessian(PhasePoint x, double lambda) const;

    /// H on the pole line p = +-1 (independent of q).
    double pole_energy(int side, double lambda) const;

private:
    void check_domain(PhasePoint x, bool derivative) const;
    ModelId id_;
};

ClassicalModel classical_hamiltonian(ModelId id);

} // namespace cwqpt

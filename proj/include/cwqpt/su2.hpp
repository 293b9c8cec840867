#pragma once

#include <Eigen/Dense>

#include <string>
#include <string_view>

namespace cwqpt {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Half-integer spin quantum number, stored as the integer 2j.
class Spin {
public:
    Spin() = default;

    static Spin from_twice(int twice_j);
    static Spin from_double(double j);
    /// Accepts "100", "3/2" or "1.5".
    static Spin parse(std::string_view token);

    int twice() const { return twice_j_; }
    double value() const { return 0.5 * twice_j_; }
    int dim() const { return twice_j_ + 1; }
    /// Azimuthal quantum number of basis index k (m ascending from -j).
    double m(int k) const { return -value() + k; }
    bool is_integer() const { return twice_j_ % 2 == 0; }

    /// "100" or "3/2".
    std::string token() const;

    friend bool operator==(Spin, Spin) = default;

private:
    explicit Spin(int twice_j) : twice_j_(twice_j) {}
    int twice_j_ = 0;
};

/// Ladder matrices on |j,m>, m ascending from -j to j.
struct LadderSet {
    Spin j;
    Matrix Jz;
    Matrix Jplus;
    Matrix Jminus;
};

/// Truncated Fock-space operators on |0> ... |n_max>.
struct BosonSet {
    int n_max = 0;
    Matrix b;
    Matrix bdag;
    Matrix number;
};

/// sqrt(j(j+1) - m(m+1)): coefficient of J+ |j,m>.
double raise_coefficient(Spin j, double m);
/// sqrt(j(j+1) - m(m-1)): coefficient of J- |j,m>.
double lower_coefficient(Spin j, double m);

LadderSet build_spin_operators(Spin j);
BosonSet build_truncated_boson(int n_max);

/// Boson pair obtained from a spin-j2 ladder set by the inverse
/// Holstein-Primakoff map b = (j2 - J2z)^{-1/2} J2-, bdag = J2+ (j2 - J2z)^{-1/2}.
/// The singular direction m = j2 of the inverse square root is annihilated,
/// which reproduces build_truncated_boson(2 j2).
BosonSet spinorized_boson(Spin j2);

/// Kronecker product; first factor is the slow index.
Matrix tensor_embed(const Matrix& a, const Matrix& b);

/// AB - BA. Throws std::invalid_argument on shape mismatch.
Matrix commutator(const Matrix& a, const Matrix& b);

/// max_kl |A_kl|
double max_abs(const Matrix& a);

} // namespace cwqpt

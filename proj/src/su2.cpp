#include "cwqpt/su2.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace cwqpt {

Spin Spin::from_twice(int twice_j) {
    if (twice_j < 0) {
        throw std::invalid_argument("spin: 2j must be non-negative, got " + std::to_string(twice_j));
    }
    return Spin(twice_j);
}

Spin Spin::from_double(double j) {
    const double twice = 2.0 * j;
    const double rounded = std::round(twice);
    if (!std::isfinite(j) || std::abs(twice - rounded) > 1e-12 || rounded < 0) {
        throw std::invalid_argument("spin: j must be a non-negative half-integer");
    }
    return Spin(static_cast<int>(rounded));
}

namespace {

bool parse_int(std::string_view s, int& out) {
    if (s.empty()) return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

} // namespace

Spin Spin::parse(std::string_view token) {
    const auto slash = token.find('/');
    if (slash != std::string_view::npos) {
        int num = 0;
        int den = 0;
        if (!parse_int(token.substr(0, slash), num) || !parse_int(token.substr(slash + 1), den) ||
            (den != 1 && den != 2)) {
            throw std::invalid_argument("spin: malformed token '" + std::string(token) + "'");
        }
        return from_twice(den == 2 ? num : 2 * num);
    }
    int whole = 0;
    if (parse_int(token, whole)) return from_twice(2 * whole);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw std::invalid_argument("spin: malformed token '" + std::string(token) + "'");
    }
    return from_double(value);
}

std::string Spin::token() const {
    if (is_integer()) return std::to_string(twice_j_ / 2);
    return std::to_string(twice_j_) + "/2";
}

double raise_coefficient(Spin j, double m) {
    const double jj = j.value();
    const double arg = jj * (jj + 1.0) - m * (m + 1.0);
    return arg > 0.0 ? std::sqrt(arg) : 0.0;
}

double lower_coefficient(Spin j, double m) {
    const double jj = j.value();
    const double arg = jj * (jj + 1.0) - m * (m - 1.0);
    return arg > 0.0 ? std::sqrt(arg) : 0.0;
}

LadderSet build_spin_operators(Spin j) {
    const int d = j.dim();
    LadderSet set{j, Matrix::Zero(d, d), Matrix::Zero(d, d), Matrix::Zero(d, d)};
    for (int k = 0; k < d; ++k) {
        const double m = j.m(k);
        set.Jz(k, k) = m;
        if (k + 1 < d) {
            set.Jplus(k + 1, k) = raise_coefficient(j, m);
            set.Jminus(k, k + 1) = lower_coefficient(j, m + 1.0);
        }
    }
    return set;
}

BosonSet build_truncated_boson(int n_max) {
    if (n_max < 0) throw std::invalid_argument("boson: n_max must be non-negative");
    const int d = n_max + 1;
    BosonSet set{n_max, Matrix::Zero(d, d), Matrix::Zero(d, d), Matrix::Zero(d, d)};
    for (int n = 0; n < d; ++n) {
        set.number(n, n) = n;
        if (n >= 1) set.b(n - 1, n) = std::sqrt(static_cast<double>(n));
        if (n < n_max) set.bdag(n + 1, n) = std::sqrt(static_cast<double>(n + 1));
    }
    return set;
}

BosonSet spinorized_boson(Spin j2) {
    const LadderSet spin = build_spin_operators(j2);
    const int d = j2.dim();
    Matrix inv_sqrt = Matrix::Zero(d, d);
    for (int k = 0; k < d; ++k) {
        const double gap = j2.value() - j2.m(k);
        // m = j2 is the kernel of (j2 - J2z); annihilated.
        if (gap > 0.5) inv_sqrt(k, k) = 1.0 / std::sqrt(gap);
    }
    BosonSet set;
    set.n_max = j2.twice();
    set.b = inv_sqrt * spin.Jminus;
    set.bdag = spin.Jplus * inv_sqrt;
    set.number = spin.Jz + j2.value() * Matrix::Identity(d, d);
    return set;
}

Matrix tensor_embed(const Matrix& a, const Matrix& b) {
    if (a.rows() != a.cols() || b.rows() != b.cols()) {
        throw std::invalid_argument("tensor_embed: factors must be square");
    }
    const Eigen::Index da = a.rows();
    const Eigen::Index db = b.rows();
    Matrix out(da * db, da * db);
    for (Eigen::Index i = 0; i < da; ++i) {
        for (Eigen::Index k = 0; k < da; ++k) {
            out.block(i * db, k * db, db, db) = a(i, k) * b;
        }
    }
    return out;
}

Matrix commutator(const Matrix& a, const Matrix& b) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
        throw std::invalid_argument("commutator: operands must be square with equal dimension");
    }
    return a * b - b * a;
}

double max_abs(const Matrix& a) {
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

} // namespace cwqpt

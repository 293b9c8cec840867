#include "cwqpt/su2.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace cwqpt;

namespace {

double scale_of(const LadderSet& L) { return std::max(1.0, max_abs(L.Jplus * L.Jminus)); }

} // namespace

TEST_CASE("spin tokens") {
    CHECK(Spin::parse("3/2").twice() == 3);
    CHECK(Spin::parse("1.5").twice() == 3);
    CHECK(Spin::parse("100").twice() == 200);
    CHECK(Spin::parse("7/2").token() == "7/2");
    CHECK(Spin::parse("4/2").token() == "2");
    CHECK(Spin::from_double(0.5).dim() == 2);
    CHECK(Spin::parse("2").m(0) == doctest::Approx(-2.0));
    CHECK_THROWS(Spin::parse("1.3"));
    CHECK_THROWS(Spin::parse("abc"));
    CHECK_THROWS(Spin::parse("-1"));
    CHECK_THROWS(Spin::parse("3/4"));
    CHECK_THROWS(Spin::parse(""));
}

TEST_CASE("ladder coefficients vanish at the ends of the multiplet") {
    const Spin j = Spin::parse("7/2");
    CHECK(raise_coefficient(j, 3.5) == 0.0);
    CHECK(lower_coefficient(j, -3.5) == 0.0);
    CHECK(raise_coefficient(j, -0.5) == doctest::Approx(4.0)); // sqrt(63/4 + 1/4)
}

TEST_CASE("su(2) commutators and Casimir") {
    for (int twice : {1, 2, 3, 7, 20, 200}) {
        CAPTURE(twice);
        const LadderSet L = build_spin_operators(Spin::from_twice(twice));
        const double j = 0.5 * twice;
        const double tol = 1e-12 * scale_of(L);
        const Matrix I = Matrix::Identity(L.Jz.rows(), L.Jz.cols());
        CHECK(max_abs(commutator(L.Jplus, L.Jminus) - 2.0 * L.Jz) <= tol);
        CHECK(max_abs(commutator(L.Jz, L.Jplus) - L.Jplus) <= tol);
        CHECK(max_abs(commutator(L.Jz, L.Jminus) + L.Jminus) <= tol);
        CHECK(max_abs(L.Jplus * L.Jminus + L.Jz * L.Jz - L.Jz - j * (j + 1.0) * I) <= tol);
        CHECK(max_abs(L.Jminus - L.Jplus.transpose()) == 0.0);
    }
}

TEST_CASE("truncated boson") {
    const BosonSet b = build_truncated_boson(6);
    const Matrix c = commutator(b.b, b.bdag);
    for (int n = 0; n < 6; ++n) CHECK(c(n, n) == doctest::Approx(1.0));
    // Truncation defect sits on the last level only.
    CHECK(c(6, 6) == doctest::Approx(-6.0));
    CHECK(max_abs(b.bdag * b.b - b.number) <= 1e-13);
    CHECK_THROWS_AS(build_truncated_boson(-1), std::invalid_argument);
}

TEST_CASE("spinorized boson reproduces the truncated boson") {
    for (int twice = 1; twice <= 200; ++twice) {
        const BosonSet s = spinorized_boson(Spin::from_twice(twice));
        const BosonSet t = build_truncated_boson(twice);
        REQUIRE(s.n_max == twice);
        CHECK(max_abs(s.b - t.b) <= 1e-12);
        CHECK(max_abs(s.bdag - t.bdag) <= 1e-12);
        CHECK(max_abs(s.number - t.number) <= 1e-12);
    }
}

TEST_CASE("tensor embedding and commutator shapes") {
    const LadderSet a = build_spin_operators(Spin::from_twice(1));
    const LadderSet b = build_spin_operators(Spin::from_twice(2));
    const Matrix I2 = Matrix::Identity(2, 2);
    const Matrix I3 = Matrix::Identity(3, 3);
    const Matrix A = tensor_embed(a.Jz, I3);
    const Matrix B = tensor_embed(I2, b.Jplus);
    CHECK(A.rows() == 6);
    CHECK(max_abs(commutator(A, B)) == 0.0);
    CHECK(A(0, 0) == doctest::Approx(-0.5));
    CHECK(A(3, 3) == doctest::Approx(0.5));
    CHECK_THROWS_AS(commutator(a.Jz, b.Jz), std::invalid_argument);
}

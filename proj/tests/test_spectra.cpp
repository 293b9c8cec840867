#include "cwqpt/spectra.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace cwqpt;

namespace {

const Spin j100 = Spin::from_twice(200);

Spectrum spectrum_of(ModelId id, Spin j, double g, bool vectors = false) {
    return diagonalize(build_reduced_hamiltonian(model_spec(id, j), g), vectors);
}

} // namespace

TEST_CASE("diagonalize: limits and closed forms") {
    const Spectrum lip = spectrum_of(ModelId::Lipkin, j100, 0.0);
    for (int k = 0; k <= 200; ++k) CHECK(lip.eigenvalues(k) == doctest::Approx(k - 100.0));
    const Spectrum pair = spectrum_of(ModelId::Pairing, j100, 0.0);
    CHECK(pair.eigenvalues(0) == doctest::Approx(-200.0));
    CHECK(pair.eigenvalues(200) == doctest::Approx(200.0));
    CHECK(pair.eigenvalues(101) - pair.eigenvalues(100) == doctest::Approx(2.0));
}

TEST_CASE("diagonalize: residuals, orthonormality and trace") {
    for (ModelId id : all_models) {
        for (double g : {0.0, 1.0, 2.5}) {
            CAPTURE(model_token(id));
            CAPTURE(g);
            const double gg = id == ModelId::Heisenberg ? -g : g;
            const HamiltonianMatrix h = build_reduced_hamiltonian(model_spec(id, j100), gg);
            const Spectrum s = diagonalize(h, true);
            REQUIRE(s.eigenvectors.has_value());
            const Matrix& V = *s.eigenvectors;
            const double norm = max_abs(h.H);
            CHECK(max_abs(h.H * V - V * s.eigenvalues.asDiagonal()) <= 1e-8 * norm);
            CHECK(max_abs(V.transpose() * V - Matrix::Identity(V.cols(), V.cols())) <= 1e-10);
            CHECK(std::abs(h.H.trace() - s.eigenvalues.sum()) <= 1e-8 * norm * 201);
            for (int k = 1; k <= 200; ++k) CHECK(s.eigenvalues(k) >= s.eigenvalues(k - 1));
        }
    }
}

TEST_CASE("diagonalize rejects asymmetric input") {
    HamiltonianMatrix h = build_reduced_hamiltonian(model_spec(ModelId::Lipkin, Spin::from_twice(4)), 1.0);
    h.H(0, 2) += 1e-6;
    CHECK_THROWS_AS(diagonalize(h, false), std::invalid_argument);
}

TEST_CASE("lipkin spectrum is antisymmetric") {
    for (double g : {0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0}) {
        const HamiltonianMatrix h = build_reduced_hamiltonian(model_spec(ModelId::Lipkin, j100), g);
        const Vector e = diagonalize(h, false).eigenvalues;
        CHECK((e + e.reverse()).cwiseAbs().maxCoeff() <= 1e-8 * max_abs(h.H));
    }
}

TEST_CASE("ground expectations") {
    const ModelSpec lip = model_spec(ModelId::Lipkin, j100);
    const GroundState g0 = ground_expectation(lip, 0.0);
    CHECK(g0.value == -100.0);
    CHECK_FALSE(g0.degenerate);
    CHECK(ground_expectation(lip, 2.0).value / 100.0 == doctest::Approx(-0.5).epsilon(0.1));

    const GroundState heis = ground_expectation(model_spec(ModelId::Heisenberg, j100), 0.0);
    CHECK(heis.degenerate);
    CHECK(heis.energy == doctest::Approx(-1e4));
    CHECK(ground_expectation(model_spec(ModelId::Heisenberg, j100), -1e-6).degenerate);

    // Bilayer reports J2z = n - j = -m; at g = 0 the ground state is the boson vacuum n = 0.
    CHECK(ground_expectation(model_spec(ModelId::Bilayer, j100), 0.0).value == doctest::Approx(-100.0));
}

TEST_CASE("lipkin order parameter onset") {
    const ModelSpec lip = model_spec(ModelId::Lipkin, j100);
    std::vector<double> grid;
    for (int k = 0; k <= 56; ++k) grid.push_back(0.2 + 0.05 * k);
    const SweepResult r = sweep(lip, grid);
    double previous = -1e9;
    for (const SweepPoint& pt : r.points) {
        const double x = pt.ground.value / 100.0;
        if (pt.g <= 0.8 + 1e-12) CHECK(std::abs(x + 1.0) <= 0.02);
        if (pt.g >= 1.2 - 1e-12) {
            CHECK(x > previous);
            previous = x;
        }
    }
}

TEST_CASE("jc-rwa: constant observable, affine spectrum") {
    const ModelSpec spec = model_spec(ModelId::JCRotating, j100);
    const SweepResult r = sweep(spec, uniform_grid(0.5, 3.0, 0.5));
    for (const SweepPoint& pt : r.points) CHECK(std::abs(pt.ground.value - r.points.front().ground.value) <= 1e-8);
    // E_k(g) = j + (g / g0) (E_k(g0) - j)
    const Vector& base = r.points.front().eigenvalues;
    for (const SweepPoint& pt : r.points) {
        const Vector predicted = (100.0 + (pt.g / 0.5) * (base.array() - 100.0)).matrix();
        CHECK((pt.eigenvalues - predicted).cwiseAbs().maxCoeff() <= 1e-9);
    }
}

TEST_CASE("sweep preconditions") {
    const ModelSpec spec = model_spec(ModelId::Lipkin, Spin::from_twice(4));
    CHECK_THROWS_AS(sweep(spec, {}), std::invalid_argument);
    CHECK_THROWS_AS(sweep(spec, {1.0, 1.0}), std::invalid_argument);
    CHECK(sweep(spec, {0.5}).points.size() == 1);
}

TEST_CASE("esqpt detector on lipkin") {
    for (double g : {1.5, 2.0, 3.0}) {
        CAPTURE(g);
        const Spectrum s = spectrum_of(ModelId::Lipkin, j100, g);
        const double spacing = mean_level_spacing(s.eigenvalues);
        const auto lower = esqpt_energy(s, 2);
        REQUIRE(lower.has_value());
        CHECK(lower->g == g);
        CHECK(std::abs(lower->energy + 100.0) <= 3.0 * spacing);
        const auto upper = esqpt_energy_upper(s, 2);
        REQUIRE(upper.has_value());
        CHECK(std::abs(upper->energy - 100.0) <= 3.0 * spacing);
        CHECK(upper->index == 199 - lower->index);
    }
    CHECK_FALSE(esqpt_energy(spectrum_of(ModelId::Lipkin, j100, 0.5), 2).has_value());
}

TEST_CASE("esqpt detector preconditions and search modes") {
    Vector e(7);
    e << 0, 1, 2, 3, 4, 5, 6;
    CHECK_THROWS_AS(esqpt_energy(e, 0), std::invalid_argument);
    CHECK_THROWS_AS(esqpt_energy(e, 3), std::invalid_argument);
    // Uniform gaps: every minimum sits on the first index of the range.
    CHECK_FALSE(esqpt_energy(e, 1, EsqptSearch::Full).has_value());

    Vector f(13);
    f << 0, 2, 4, 6, 7, 7.5, 8, 8.5, 9.5, 11.5, 13.5, 15.5, 17.5;
    const auto m = esqpt_energy(f, 1, EsqptSearch::Full);
    REQUIRE(m.has_value());
    CHECK(m->index == 5);
    CHECK(m->energy == doctest::Approx(7.75));
    const std::vector<double> smooth = smoothed_gaps(f, 1);
    CHECK(std::isinf(smooth.front()));
    CHECK(smooth[5] == doctest::Approx(0.5));
}

TEST_CASE("critical coupling estimates at j=100") {
    const auto estimate = [](ModelId id, double a, double b) {
        return critical_g(model_spec(id, j100), uniform_grid(a, b, 0.01));
    };
    const CriticalEstimate bil = estimate(ModelId::Bilayer, 0.4, 1.1);
    CHECK(bil.converged);
    CHECK(bil.g >= 0.62);
    CHECK(bil.g <= 0.80);
    const CriticalEstimate heis = estimate(ModelId::Heisenberg, -2.0, -0.3);
    CHECK(heis.g >= -1.1);
    CHECK(heis.g <= -0.9);
    // A window that misses the transition reports a boundary peak.
    CHECK_FALSE(estimate(ModelId::Bilayer, 0.9, 1.2).converged);
    CHECK_THROWS_AS(critical_g(model_spec(ModelId::Lipkin, j100), {0.0, 0.1, 0.3, 0.4, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(critical_g(model_spec(ModelId::Lipkin, j100), {0.0, 0.1, 0.2}), std::invalid_argument);
}

TEST_CASE("uniform grids") {
    CHECK(uniform_grid(0.0, 3.0, 0.5).size() == 7);
    CHECK(uniform_grid(-3.0, -0.5, 0.5).size() == 6);
    CHECK(uniform_grid(2.0, 2.0, 1.0).size() == 1);
    CHECK(uniform_grid(0.0, 1.0, 0.3).back() == doctest::Approx(0.9)); // 1.0 is more than half a step away
    CHECK(uniform_grid(0.0, 1.0, 0.01).size() == 101);
    CHECK_THROWS(uniform_grid(1.0, 0.0, 0.1));
    CHECK_THROWS(uniform_grid(0.0, 1.0, 0.0));
}

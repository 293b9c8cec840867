#include "cwqpt/classical.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace cwqpt;

namespace {

constexpr double pi = std::numbers::pi;

std::vector<FixedPoint> interior(const std::vector<FixedPoint>& all) {
    std::vector<FixedPoint> out;
    for (const FixedPoint& fp : all) {
        if (!fp.on_boundary) out.push_back(fp);
    }
    return out;
}

bool near_angle(double a, double b, double tol) { return std::abs(wrap_angle(a - b)) <= tol; }

} // namespace

TEST_CASE("classical hamiltonians") {
    const ClassicalModel lip(ModelId::Lipkin);
    CHECK(lip.energy({0.2, 0.3}, 1.5) == doctest::Approx(0.2 + 1.5 * 0.96 * std::cos(0.6)));
    const ClassicalModel crw(ModelId::JCCounterRotating);
    CHECK(crw.energy({0.0, 0.0}, 1.0) == doctest::Approx(1.0));
    CHECK(crw.singular_at_upper_pole());
    CHECK_THROWS_AS(crw.gradient({1.0, 0.0}, 1.0), std::domain_error);
    CHECK_THROWS_AS(lip.gradient({1.2, 0.0}, 1.0), std::domain_error);
    CHECK(ClassicalModel(ModelId::Heisenberg).pole_energy(-1, 0.7) == doctest::Approx(1.0));
    CHECK_FALSE(ClassicalModel(ModelId::JCRotating).has_free_term());
    CHECK(wrap_angle(pi) == doctest::Approx(-pi));
    CHECK(wrap_angle(-pi) == doctest::Approx(-pi));
}

TEST_CASE("analytic derivatives agree with finite differences") {
    const double h = 1e-5;
    for (ModelId id : all_models) {
        const ClassicalModel m(id);
        for (PhasePoint x : {PhasePoint{-0.6, 0.4}, PhasePoint{0.3, -2.1}, PhasePoint{0.85, 2.9}}) {
            CAPTURE(model_token(id));
            const double lambda = 0.9;
            const Gradient g = m.gradient(x, lambda);
            const double dp = (m.energy({x.p + h, x.q}, lambda) - m.energy({x.p - h, x.q}, lambda)) / (2 * h);
            const double dq = (m.energy({x.p, x.q + h}, lambda) - m.energy({x.p, x.q - h}, lambda)) / (2 * h);
            CHECK(g.dp == doctest::Approx(dp).epsilon(1e-6));
            CHECK(g.dq == doctest::Approx(dq).epsilon(1e-6));
            const Hessian H = m.hessian(x, lambda);
            const Gradient gp = m.gradient({x.p + h, x.q}, lambda);
            const Gradient gm = m.gradient({x.p - h, x.q}, lambda);
            const Gradient qp = m.gradient({x.p, x.q + h}, lambda);
            const Gradient qm = m.gradient({x.p, x.q - h}, lambda);
            CHECK(H.pp == doctest::Approx((gp.dp - gm.dp) / (2 * h)).epsilon(1e-5));
            CHECK(H.pq == doctest::Approx((gp.dq - gm.dq) / (2 * h)).epsilon(1e-5));
            CHECK(H.qq == doctest::Approx((qp.dq - qm.dq) / (2 * h)).epsilon(1e-5));
        }
    }
}

TEST_CASE("lipkin fixed points") {
    const ClassicalModel lip(ModelId::Lipkin);
    const auto pts = interior(find_fixed_points(lip, 1.5));
    REQUIRE(pts.size() == 4);
    int minima = 0;
    int maxima = 0;
    for (const FixedPoint& fp : pts) {
        if (fp.kind == FixedPointKind::Minimum) {
            ++minima;
            CHECK(fp.x.p == doctest::Approx(-1.0 / 3.0).epsilon(1e-10));
            CHECK(std::abs(std::abs(fp.x.q) - pi / 2) <= 1e-8);
            CHECK(std::abs(fp.energy + 5.0 / 3.0) <= 1e-8);
        } else {
            CHECK(fp.kind == FixedPointKind::Maximum);
            ++maxima;
            CHECK(fp.x.p == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
            CHECK((near_angle(fp.x.q, 0.0, 1e-8) || near_angle(fp.x.q, pi, 1e-8)));
        }
    }
    CHECK(minima == 2);
    CHECK(maxima == 2);
    CHECK(interior(find_fixed_points(lip, 0.4)).empty());

    for (double lambda : {0.55, 0.8, 1.2, 2.0, 5.0}) {
        for (const FixedPoint& fp : interior(find_fixed_points(lip, lambda))) {
            CHECK(std::abs(std::abs(fp.x.p) - 1.0 / (2.0 * lambda)) <= 1e-8);
        }
    }
}

TEST_CASE("fixed points satisfy the stationarity and classification invariants") {
    for (ModelId id : all_models) {
        const ClassicalModel m(id);
        for (double lambda : {-1.3, -0.4, 0.3, 0.8, 1.6}) {
            for (const FixedPoint& fp : interior(find_fixed_points(m, lambda))) {
                CAPTURE(model_token(id));
                CAPTURE(lambda);
                const Gradient g = m.gradient(fp.x, lambda);
                CHECK(std::hypot(g.dp, g.dq) <= 1e-10);
                CHECK(fp.energy == doctest::Approx(m.energy(fp.x, lambda)));
                const Hessian H = m.hessian(fp.x, lambda);
                switch (fp.kind) {
                case FixedPointKind::Saddle: CHECK(H.det() < -1e-9); break;
                case FixedPointKind::Minimum: CHECK((H.det() > 1e-9 && H.pp > 0)); break;
                case FixedPointKind::Maximum: CHECK((H.det() > 1e-9 && H.pp < 0)); break;
                case FixedPointKind::Degenerate: CHECK(std::abs(H.det()) <= 1e-9); break;
                }
            }
        }
    }
}

TEST_CASE("heisenberg and bilayer fixed points") {
    const ClassicalModel heis(ModelId::Heisenberg);
    const auto at05 = interior(find_fixed_points(heis, 0.5));
    REQUIRE(at05.size() == 2);
    CHECK(at05[0].kind == FixedPointKind::Saddle);
    CHECK(at05[0].energy == doctest::Approx(0.5));
    CHECK(at05[1].kind == FixedPointKind::Minimum);
    CHECK(at05[1].energy == doctest::Approx(-0.5));
    CHECK(interior(find_fixed_points(heis, 1.5))[0].kind == FixedPointKind::Maximum);

    const auto a = interior(find_fixed_points(heis, 0.6));
    const auto b = interior(find_fixed_points(heis, 1.4));
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(std::abs(a[i].x.p - b[i].x.p) <= 1e-10);
        CHECK(std::abs(wrap_angle(a[i].x.q - b[i].x.q)) <= 1e-10);
    }

    const auto bil = interior(find_fixed_points(ClassicalModel(ModelId::Bilayer), 0.8));
    REQUIRE(bil.size() == 2);
    CHECK(bil[0].kind == FixedPointKind::Minimum);
    CHECK(std::abs(bil[0].x.p + 7.0 / 9.0) <= 1e-6);
    CHECK(near_angle(bil[0].x.q, pi, 1e-8));
    CHECK(bil[1].kind == FixedPointKind::Maximum);
    CHECK(bil[1].x.p == doctest::Approx(0.75));
    CHECK(bil[1].energy == doctest::Approx(1.45));
}

TEST_CASE("pole classification") {
    const ClassicalModel lip(ModelId::Lipkin);
    CHECK(classify_pole(lip, 0.4, -1) == FixedPointKind::Minimum);
    CHECK(classify_pole(lip, 0.4, 1) == FixedPointKind::Maximum);
    CHECK(classify_pole(lip, 1.5, -1) == FixedPointKind::Saddle);
    const auto all = find_fixed_points(lip, 1.5);
    CHECK(all.end()[-2].on_boundary);
    CHECK(all.end()[-2].x.p == -1.0);
    CHECK(all.back().x.p == 1.0);
}

TEST_CASE("separatrix energies") {
    CHECK(separatrix_energies(ClassicalModel(ModelId::Lipkin), 1.5) == std::vector<double>{-1.0, 1.0});
    CHECK(separatrix_energies(ClassicalModel(ModelId::Lipkin), 0.4).empty());
    const auto heis05 = separatrix_energies(ClassicalModel(ModelId::Heisenberg), 0.5);
    REQUIRE(heis05.size() == 1);
    CHECK(heis05[0] == doctest::Approx(0.5));
    CHECK(separatrix_energies(ClassicalModel(ModelId::Heisenberg), 1.5) == std::vector<double>{1.0});
    CHECK(separatrix_energies(ClassicalModel(ModelId::Bilayer), 0.5) == std::vector<double>{1.0});
    CHECK(separatrix_energies(ClassicalModel(ModelId::Pairing), -1.5) == std::vector<double>{-1.0});
    for (double lambda : {0.5, 1.0, 2.0}) CHECK(separatrix_energies(ClassicalModel(ModelId::JCRotating), lambda).empty());
}

TEST_CASE("energy range") {
    const EnergyRange r = energy_range(ClassicalModel(ModelId::Lipkin), 1.5);
    CHECK(r.min == doctest::Approx(-5.0 / 3.0));
    CHECK(r.max == doctest::Approx(5.0 / 3.0));
    const EnergyRange h = energy_range(ClassicalModel(ModelId::Heisenberg), 0.5);
    CHECK(h.min == doctest::Approx(-0.5));
    CHECK(h.max == doctest::Approx(1.0));
}

TEST_CASE("bifurcation scans") {
    const auto single = [](ModelId id, double a, double b, int steps) {
        const BifurcationReport r = bifurcation_scan(ClassicalModel(id), a, b, steps);
        REQUIRE(r.critical.size() == 1);
        CHECK(r.critical[0].bracket_high - r.critical[0].bracket_low <= 1e-3);
        CHECK(r.lambda_grid.size() == static_cast<std::size_t>(steps + 1));
        return r.critical[0];
    };
    const CriticalLambda crw = single(ModelId::JCCounterRotating, 0.5, 1.0, 50);
    CHECK(std::abs(crw.lambda - 1.0 / std::sqrt(2.0)) <= 1e-3);
    CHECK(crw.mechanism == BifurcationMechanism::InteriorPointEntry);
    const CriticalLambda heis = single(ModelId::Heisenberg, 0.5, 1.5, 100);
    CHECK(std::abs(heis.lambda - 1.0) <= 1e-3);
    CHECK(heis.mechanism == BifurcationMechanism::StabilityChange);
    CHECK(heis.before.saddles == 1);
    CHECK(heis.after.maxima == 1);
    CHECK(std::abs(single(ModelId::Lipkin, 0.2, 1.2, 100).lambda - 0.5) <= 1e-3);
    CHECK(std::abs(single(ModelId::Pairing, -1.2, -0.2, 100).lambda + 0.5) <= 1e-3);

    CHECK(bifurcation_scan(ClassicalModel(ModelId::JCRotating), 0.2, 2.0, 30).critical.empty());
    CHECK_THROWS_AS(bifurcation_scan(ClassicalModel(ModelId::Lipkin), 0.2, 1.2, 9), std::invalid_argument);
    CHECK(mechanism_name(BifurcationMechanism::StabilityChange) == "stability-change");
}

TEST_CASE("orbits") {
    const ClassicalModel lip(ModelId::Lipkin);
    SUBCASE("libration closes around the minimum") {
        const Orbit o = integrate_orbit(lip, 1.5, {-1.0 / 3.0 + 0.05, pi / 2}, 20.0, 1e-3);
        CHECK_FALSE(o.hit_boundary);
        const auto ret = first_return(o);
        REQUIRE(ret.has_value());
        CHECK(ret->distance <= 1e-3);
        CHECK(std::abs(ret->q_advance) <= 1e-3);
    }
    SUBCASE("rotation advances q by a full turn") {
        const Orbit o = integrate_orbit(lip, 0.4, {0.9, 0.0}, 30.0, 1e-3);
        const auto ret = first_return(o);
        REQUIRE(ret.has_value());
        CHECK(ret->distance <= 1e-3);
        CHECK(std::abs(std::abs(ret->q_advance) - 2.0 * pi) <= 1e-3);
    }
    SUBCASE("energy is conserved") {
        for (ModelId id : all_models) {
            const ClassicalModel m(id);
            const PhasePoint start{-0.3, 0.7};
            const Orbit o = integrate_orbit(m, 0.9, start, 100.0, 1e-3);
            const double e0 = m.energy(start, 0.9);
            double drift = 0.0;
            for (const PhasePoint& x : o.points) drift = std::max(drift, std::abs(m.energy(x, 0.9) - e0));
            CAPTURE(model_token(id));
            CHECK(drift <= 1e-6);
        }
    }
    SUBCASE("orbits running into the square-root pole are truncated") {
        // Near p = 1 the bilayer flow velocity diverges like 1/sqrt(1 - p).
        const ClassicalModel bil(ModelId::Bilayer);
        const Orbit o = integrate_orbit(bil, 1.0, {0.999, pi / 2}, 10.0, 1e-2);
        CHECK(o.hit_boundary);
        CHECK(o.t.back() < 10.0);
        for (const PhasePoint& x : o.points) CHECK(std::abs(x.p) < 1.0);
    }
    CHECK_THROWS_AS(integrate_orbit(lip, 1.0, {1.0, 0.0}, 1.0, 1e-3), std::invalid_argument);
    CHECK_THROWS_AS(integrate_orbit(lip, 1.0, {0.0, 0.0}, 1.0, 0.0), std::invalid_argument);
}

#include <doctest.h>

#include <cmath>
#include <random>

#include "delaybeam/resolvent.hpp"

using namespace delaybeam;

TEST_CASE("source field assembly") {
    BeamParameters p;
    SpaceGrid g(1.0, 16);

    SUBCASE("zero data gives zero source") {
        const auto d = StaticData::zero(g);
        CHECK(source_psi(d, p).norm() == 0.0);
    }
    SUBCASE("pure g passes through") {
        auto d = StaticData::zero(g);
        d.g = VectorXd::Ones(17);
        CHECK((source_psi(d, p) - VectorXd::Ones(17)).norm() == 0.0);
    }
    SUBCASE("f and constant h cancel at alpha = 0.5, tau = 1") {
        BeamParameters q;
        q.alpha = 0.5;
        auto d = StaticData::zero(g);
        d.f = VectorXd::Ones(17);
        d.h.setOnes();
        CHECK(source_psi(d, q).lpNorm<Eigen::Infinity>() <= 1e-15);
    }
}

TEST_CASE("wronskian matches -2 rho^5") {
    CHECK(wronskian(1.0) == doctest::Approx(-2.0).epsilon(1e-15));
    CHECK(wronskian(2.0) == doctest::Approx(-64.0).epsilon(1e-15));
    const double rho = 1.3;
    const double exact = -2.0 * std::pow(rho, 5);
    for (double x : {0.0, 0.5, 1.0}) {
        const double det = fundamental_matrix(x, rho).determinant();
        CHECK(std::abs(det - exact) <= 1e-10 * std::abs(exact));
    }
}

TEST_CASE("variation-of-constants derivatives satisfy the fundamental system") {
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> ux(0.0, 1.0);
    std::uniform_real_distribution<double> ur(0.3, 2.5);
    std::uniform_real_distribution<double> up(-3.0, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
        const double x = ux(rng), rho = ur(rng), psi = up(rng);
        const Eigen::Vector4d rhs = fundamental_matrix(x, rho) * cramer_derivatives(x, rho, psi);
        CHECK(std::abs(rhs[0]) <= 1e-12 * (1.0 + std::abs(psi)));
        CHECK(std::abs(rhs[1]) <= 1e-12 * (1.0 + std::abs(psi)));
        CHECK(std::abs(rhs[2]) <= 1e-12 * (1.0 + std::abs(psi)));
        CHECK(rhs[3] == doctest::Approx(-psi).epsilon(1e-12));
    }
}

TEST_CASE("particular solution oracles") {
    SpaceGrid g(1.0, 64);

    SUBCASE("zero source gives zero") {
        const auto yp = particular_solution(VectorXd::Zero(65), 1.0, g);
        for (double x : {0.0, 0.3, 1.0}) {
            const auto v = yp.evaluate(x);
            for (double c : v) CHECK(std::abs(c) <= 1e-14);
        }
    }
    SUBCASE("unit source at rho = 1 gives x^2/2 - (cosh x - 1)") {
        const auto yp = particular_solution(VectorXd::Ones(65), 1.0, g);
        for (double x : {0.25, 0.5, 1.0}) {
            const double exact = x * x / 2.0 - (std::cosh(x) - 1.0);
            CHECK(yp.evaluate(x)[0] == doctest::Approx(exact).epsilon(1e-10));
        }
        CHECK(yp.evaluate(1.0)[0] == doctest::Approx(0.5 - (std::cosh(1.0) - 1.0)).epsilon(1e-10));
    }
    SUBCASE("zero Cauchy data at the clamped end") {
        const auto d = StaticData::random_smooth(g, 17);
        BeamParameters p;
        const auto yp = particular_solution(source_psi(d, p), std::sqrt(p.tension), g);
        const auto v = yp.evaluate(0.0);
        CHECK(std::abs(v[0]) <= 1e-14);
        CHECK(std::abs(v[1]) <= 1e-14);
    }
    SUBCASE("residual of the static equation vanishes for smooth sources") {
        SpaceGrid gf(1.0, 128);
        BeamParameters p;
        p.tension = 1.7;
        const double rho = std::sqrt(p.tension);
        const auto d = StaticData::random_smooth(gf, 23);
        const VectorXd psi = source_psi(d, p);
        const auto yp = particular_solution(psi, rho, gf);
        // y'''' by centered differences of the evaluator's third derivative
        const double h = 1e-5;
        for (int j = 16; j <= 112; j += 16) {
            const double x = gf.nodes()[j];
            const double y4 = (yp.evaluate(x + h)[3] - yp.evaluate(x - h)[3]) / (2.0 * h);
            const double resid = y4 - p.tension * yp.evaluate(x)[2] + psi[j];
            CHECK(std::abs(resid) <= 1e-4 * (1.0 + psi.lpNorm<Eigen::Infinity>()));
        }
    }
}

TEST_CASE("boundary system solve") {
    BeamParameters p;
    SpaceGrid g(1.0, 64);

    SUBCASE("homogeneous data gives the zero solution") {
        const auto d = StaticData::zero(g);
        const auto sol = solve_coefficients(source_psi(d, p), p, d, g);
        for (double c : sol.coefficients()) CHECK(std::abs(c) <= 1e-14);
        CHECK(std::abs(sol.y(0.7)) <= 1e-14);
    }
    SUBCASE("system stays solvable when rho^3 - T rho vanishes") {
        // T = 1: pi(rho) = 0 but the assembled determinant is nonzero
        const auto d = StaticData::smooth(g);
        const auto sol = solve_coefficients(source_psi(d, p), p, d, g);
        CHECK(std::abs(sol.boundary_determinant()) > 0.0);
    }
    SUBCASE("reconstructed solution satisfies the boundary conditions") {
        BeamParameters q;
        q.tension = 0.8;
        q.alpha = 0.25;
        q.gain = 1.4;
        for (unsigned seed : {1u, 2u, 3u}) {
            const auto d = StaticData::random_smooth(g, seed);
            const auto sol = solve_coefficients(source_psi(d, q), q, d, g);
            double sup_y = 0.0, sup_d1 = 0.0, sup_d2 = 0.0, sup_d3 = 0.0;
            for (int j = 0; j <= 64; ++j) {
                const auto v = sol.evaluate(g.nodes()[j]);
                sup_y = std::max(sup_y, std::abs(v[0]));
                sup_d1 = std::max(sup_d1, std::abs(v[1]));
                sup_d2 = std::max(sup_d2, std::abs(v[2]));
                sup_d3 = std::max(sup_d3, std::abs(v[3]));
            }
            const auto at0 = sol.evaluate(0.0);
            const auto atl = sol.evaluate(1.0);
            CHECK(std::abs(at0[0]) <= 1e-8 * sup_y);
            CHECK(std::abs(at0[1]) <= 1e-8 * sup_d1);
            CHECK(std::abs(atl[2]) <= 1e-8 * sup_d2);
            const double shear = atl[3] - q.tension * atl[1] - q.gain * d.f[64];
            CHECK(std::abs(shear) <= 1e-8 * (sup_d3 + q.tension * sup_d1));
        }
    }
    SUBCASE("solution map is linear in the data") {
        const auto d1 = StaticData::random_smooth(g, 4);
        const auto d2 = StaticData::random_smooth(g, 5);
        StaticData d3;
        d3.f = 2.0 * d1.f - 0.5 * d2.f;
        d3.g = 2.0 * d1.g - 0.5 * d2.g;
        d3.h = 2.0 * d1.h - 0.5 * d2.h;
        BeamParameters q;
        q.alpha = 0.15;
        const auto s1 = solve_coefficients(source_psi(d1, q), q, d1, g);
        const auto s2 = solve_coefficients(source_psi(d2, q), q, d2, g);
        const auto s3 = solve_coefficients(source_psi(d3, q), q, d3, g);
        for (double x : {0.2, 0.6, 1.0}) {
            const double expect = 2.0 * s1.y(x) - 0.5 * s2.y(x);
            CHECK(s3.y(x) == doctest::Approx(expect).epsilon(1e-10));
        }
    }
}

TEST_CASE("finite-difference oracle") {
    BeamParameters p;

    SUBCASE("zero source gives the zero field") {
        SpaceGrid g(1.0, 32);
        CHECK(bvp_oracle(VectorXd::Zero(33), p, g, 0.0).norm() == 0.0);
    }
    SUBCASE("manufactured quartic is recovered at second order") {
        // y* = x^2 (x-1)^2 + a x^2 + b x^3 with (a, b) chosen so the free-end
        // moment and shear vanish at T = 1
        const double a = 11.0 / 3.0, b = -14.0 / 9.0;
        auto ystar = [a, b](double x) {
            return x * x * (x - 1.0) * (x - 1.0) + a * x * x + b * x * x * x;
        };
        auto d2 = [a, b](double x) { return 12.0 * x * x - 12.0 * x + 2.0 + 2.0 * a + 6.0 * b * x; };
        std::vector<double> errs;
        for (int n : {64, 128, 256}) {
            SpaceGrid g(1.0, n);
            VectorXd psi(n + 1);
            for (int j = 0; j <= n; ++j)
                psi[j] = -(24.0 - d2(g.nodes()[j]));  // -(y**** - T y'')
            const VectorXd y = bvp_oracle(psi, p, g, 0.0);
            double err = 0.0;
            for (int j = 0; j <= n; ++j)
                err = std::max(err, std::abs(y[j] - ystar(g.nodes()[j])));
            errs.push_back(err);
        }
        const double slope = std::log2(errs[0] / errs[2]) / 2.0;
        CHECK(slope >= 1.8);
        CHECK(slope <= 2.2);
        // the closed form reproduces the same manufactured solution directly
        SpaceGrid g(1.0, 64);
        VectorXd psi(65);
        for (int j = 0; j <= 64; ++j) psi[j] = -(24.0 - d2(g.nodes()[j]));
        const auto sol = solve_coefficients(psi, p, StaticData::zero(g), g);
        for (double x : {0.3, 0.7, 1.0})
            CHECK(sol.y(x) == doctest::Approx(ystar(x)).epsilon(1e-6));
    }
    SUBCASE("closed form and oracle agree at second order for random data") {
        BeamParameters q;
        q.alpha = 0.2;
        q.tension = 1.3;
        std::vector<double> errs;
        for (int n : {64, 128, 256}) {
            SpaceGrid g(1.0, n);
            const auto d = StaticData::random_smooth(g, 11);
            const VectorXd psi = source_psi(d, q);
            const auto sol = solve_coefficients(psi, q, d, g);
            const VectorXd y = bvp_oracle(psi, q, g, d.f[n]);
            double err = 0.0, sup = 0.0;
            for (int j = 0; j <= n; ++j) {
                err = std::max(err, std::abs(y[j] - sol.y(g.nodes()[j])));
                sup = std::max(sup, std::abs(sol.y(g.nodes()[j])));
            }
            errs.push_back(err / sup);
        }
        const double slope = std::log2(errs[0] / errs[2]) / 2.0;
        CHECK(slope >= 1.8);
        CHECK(slope <= 2.2);
    }
}

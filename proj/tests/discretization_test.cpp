#include <doctest.h>

#include <cmath>
#include <random>

#include "delaybeam/discretization.hpp"

using namespace delaybeam;

namespace {

VectorXd sample(const SpaceGrid& g, double (*f)(double)) {
    VectorXd y(g.n_cells() + 1);
    for (int j = 0; j <= g.n_cells(); ++j) y[j] = f(g.nodes()[j]);
    return y;
}

}  // namespace

TEST_CASE("quadratic field maps to -2T on interior nodes") {
    BeamParameters p;
    SpaceGrid g(1.0, 32);
    SpatialOperator op(p, g);
    const VectorXd y = sample(g, [](double x) { return x * x; });
    const VectorXd r = op.apply(y);
    // fourth difference of a quadratic vanishes, second difference is exact;
    // rows 0-1 and the last three rows carry the boundary closures
    for (int j = 2; j <= g.n_cells() - 4; ++j)
        CHECK(r[j] == doctest::Approx(-2.0).epsilon(1e-10));
}

TEST_CASE("cubic field is annihilated at zero tension on interior nodes") {
    BeamParameters p;
    p.tension = 0.0;
    SpaceGrid g(1.0, 32);
    SpatialOperator op(p, g);
    const VectorXd y = sample(g, [](double x) { return x * x * x; });
    const VectorXd r = op.apply(y);
    for (int j = 2; j <= g.n_cells() - 4; ++j)
        CHECK(std::abs(r[j]) <= 1e-9);
}

TEST_CASE("zero field and linearity") {
    BeamParameters p;
    SpaceGrid g(1.0, 16);
    SpatialOperator op(p, g);
    CHECK(op.apply(VectorXd::Zero(17)).norm() == 0.0);

    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    VectorXd y1(17), y2(17);
    for (int j = 0; j < 17; ++j) {
        y1[j] = u(rng);
        y2[j] = u(rng);
    }
    const VectorXd lhs = op.apply(2.5 * y1 - 0.75 * y2);
    const VectorXd rhs = 2.5 * op.apply(y1) - 0.75 * op.apply(y2);
    CHECK((lhs - rhs).lpNorm<Eigen::Infinity>() <= 1e-10 * rhs.lpNorm<Eigen::Infinity>());
}

TEST_CASE("sinusoid field converges at second order") {
    BeamParameters p;
    const double pi = std::acos(-1.0);
    double prev_err = 0.0;
    std::vector<double> errs;
    for (int n : {64, 128, 256}) {
        SpaceGrid g(1.0, n);
        SpatialOperator op(p, g);
        VectorXd y(n + 1);
        for (int j = 0; j <= n; ++j) y[j] = std::sin(pi * g.nodes()[j]);
        const VectorXd r = op.apply(y);
        double err = 0.0;
        for (int j = 2; j <= n - 4; ++j) {
            const double exact = (pi * pi * pi * pi + p.tension * pi * pi) *
                                 std::sin(pi * g.nodes()[j]);
            err = std::max(err, std::abs(r[j] - exact));
        }
        errs.push_back(err);
        (void)prev_err;
    }
    const double slope = std::log2(errs[0] / errs[2]) / 2.0;
    CHECK(slope > 1.9);
    CHECK(slope < 2.1);
}

TEST_CASE("tip slope examples") {
    SpaceGrid g(1.0, 64);
    CHECK(discrete_tip_slope(VectorXd::Zero(65), g) == 0.0);
    const VectorXd q = sample(g, [](double x) { return x * x; });
    // one-sided second-order rule is exact on quadratics
    CHECK(discrete_tip_slope(q, g) == doctest::Approx(2.0).epsilon(1e-12));

    std::vector<double> errs;
    for (int n : {32, 64, 128}) {
        SpaceGrid gn(1.0, n);
        const VectorXd c = sample(gn, [](double x) { return x * x * x; });
        errs.push_back(std::abs(discrete_tip_slope(c, gn) - 3.0));
    }
    const double slope = std::log2(errs[0] / errs[2]) / 2.0;
    CHECK(slope >= 2.0);
}

TEST_CASE("stiffness matrix is symmetric positive semi-definite") {
    BeamParameters p;
    SpaceGrid g(1.0, 48);
    SpatialOperator op(p, g);
    const MatrixXd& K = op.stiffness();
    const double scale = K.lpNorm<Eigen::Infinity>();
    CHECK((K - K.transpose()).lpNorm<Eigen::Infinity>() <= 1e-10 * scale);
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(K);
    CHECK(es.eigenvalues().minCoeff() >= -1e-10 * scale);
}

TEST_CASE("discrete trace inequality for clamped fields") {
    // tip_slope(y)^2 <= l * int y_xx^2 + O(dx) for fields with y(0) = 0 and
    // zero discrete slope at 0
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    BeamParameters p;
    for (int n : {32, 64, 128}) {
        SpaceGrid g(1.0, n);
        SpatialOperator op(p, g);
        const double pi = std::acos(-1.0);
        for (int trial = 0; trial < 10; ++trial) {
            VectorXd y(n + 1);
            const double a = u(rng), b = u(rng), c = u(rng);
            for (int j = 0; j <= n; ++j) {
                const double x = g.nodes()[j];
                y[j] = x * x * (a + b * x + c * std::sin(pi * x));
            }
            const double slope = discrete_tip_slope(y, g);
            const double bound = g.length() * op.bending_form(y);
            CHECK(slope * slope <= bound + 10.0 * g.dx());
        }
    }
}

TEST_CASE("quadratic forms match the energy quadratures") {
    BeamParameters p;
    SpaceGrid g(1.0, 128);
    SpatialOperator op(p, g);
    const VectorXd q = sample(g, [](double x) { return x * x; });
    // int (y'')^2 = 4, int (y')^2 = 4/3, int y^2 = 1/5
    CHECK(op.bending_form(q) == doctest::Approx(4.0).epsilon(1e-3));
    CHECK(op.tension_form(q) == doctest::Approx(4.0 / 3.0).epsilon(1e-3));
    CHECK(op.mass_form(q) == doctest::Approx(0.2).epsilon(1e-3));
}

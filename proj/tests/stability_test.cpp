#include <doctest.h>

#include <cmath>

#include "delaybeam/stability.hpp"

using namespace delaybeam;

namespace {

BeamParameters unit_params() {
    return BeamParameters{};  // l = T = kappa = tau = 1
}

LyapunovWeights unit_weights() {
    return {1.0, 0.25, 0.5, 1.0};
}

}  // namespace

TEST_CASE("membership and decay constant at the reference point") {
    const auto p = unit_params();
    const auto w = unit_weights();
    const auto c = sigma_member(0.1, 0.2, p, w);
    CHECK(c.member);
    CHECK_FALSE(c.marginal);
    // nu = 2 min{0.25, 0.5, e^{-1} 0.25/0.2, 0.5 - 0.25 - 0.15} = 0.2
    CHECK(c.nu == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(c.coeff_tip <= 0.0);
    CHECK(c.coeff_v <= 0.0);
    CHECK(c.coeff_delayed <= 0.0);
}

TEST_CASE("no admissible xi exists at alpha = 0.4") {
    const auto p = unit_params();
    const auto w = unit_weights();
    // first inequality needs xi < 0.1, second needs xi >= 0.536
    for (double xi : {0.01, 0.05, 0.09, 0.2, 0.536, 0.6})
        CHECK_FALSE(sigma_member(0.4, xi, p, w).member);
}

TEST_CASE("zero alpha admits a wide xi band") {
    const auto p = unit_params();
    const auto w = unit_weights();
    CHECK(sigma_member(0.0, 0.4, p, w).member);
}

TEST_CASE("membership is exactly symmetric in alpha") {
    const auto p = unit_params();
    const auto w = unit_weights();
    for (double alpha : {0.05, 0.1, 0.143, 0.3})
        for (double xi : {0.05, 0.2, 0.35}) {
            const auto cp = sigma_member(alpha, xi, p, w);
            const auto cm = sigma_member(-alpha, xi, p, w);
            CHECK(cp.member == cm.member);
            if (cp.member) CHECK(cp.nu == cm.nu);
        }
}

TEST_CASE("preconditions are enforced") {
    const auto p = unit_params();
    const auto w = unit_weights();
    CHECK_THROWS_AS(sigma_member(0.1, 0.0, p, w), std::invalid_argument);
    BeamParameters super = p;
    super.tension = 4.0;
    CHECK_THROWS_AS(sigma_member(0.1, 0.2, super, w), std::invalid_argument);
    // delta1 - 2 delta2 <= 0 violates the smallness conditions outright
    LyapunovWeights degenerate{0.2, 0.1, 0.5, 1.0};
    CHECK_THROWS_AS(sigma_member(0.1, 0.2, p, degenerate), std::invalid_argument);
}

TEST_CASE("quadratic boundary roots") {
    const auto p = unit_params();
    const auto w = unit_weights();
    const auto [a1, a2] = roots_alpha(p, w);
    CHECK(a1 == doctest::Approx(0.25 * (std::sqrt(1.0 + 4.0 * std::exp(-1.0)) - 1.0))
                    .epsilon(1e-14));
    CHECK(a1 == doctest::Approx(0.14303).epsilon(1e-4));
    CHECK(a2 == -a1);
    // root residual against the lower boundary expression
    const double resid = 2.0 * a1 * a1 + a1 - 2.0 * std::exp(-1.0) * 0.25;
    CHECK(std::abs(resid) <= 1e-12);

    LyapunovWeights small = w;
    small.delta2 = 1e-12;
    CHECK(std::abs(roots_alpha(p, small).first) <= 1e-11);
}

TEST_CASE("threshold roots and alpha0") {
    const auto p = unit_params();
    const auto [s1, s2] = roots_alpha_star(p);
    CHECK(s1 == doctest::Approx(0.25 * (1.0 + std::sqrt(1.0 + 4.0 * std::exp(-1.0))))
                    .epsilon(1e-14));
    CHECK(s1 == doctest::Approx(0.64303).epsilon(1e-4));
    CHECK(s2 == -s1);
    // Psi(a) = -(2 d1 l^2/T) a^2 + |a| + e^{-tau} d1 / 2 vanishes at the root
    const double psi = -2.0 * s1 * s1 + s1 + 0.5 * std::exp(-1.0);
    CHECK(std::abs(psi) <= 1e-12);
    CHECK(alpha_threshold(p) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
}

TEST_CASE("threshold vanishes in both gain limits") {
    auto p = unit_params();
    const double mid = alpha_threshold(p);
    p.gain = 1e-4;
    const double low = alpha_threshold(p);
    p.gain = 1e4;
    const double high = alpha_threshold(p);
    CHECK(low < mid);
    CHECK(high < mid);
    CHECK(low < 1e-3);
    CHECK(high < 1e-3);
}

TEST_CASE("region sampling is mirror-exact and non-empty") {
    const auto p = unit_params();
    const auto w = unit_weights();
    const auto s = sample_region(p, w, {-0.7, 0.7}, {1e-3, 1.0}, 41);
    REQUIRE(static_cast<int>(s.alpha_values.size()) == 41);
    int members = 0;
    for (int i = 0; i < 41; ++i) {
        CHECK(s.alpha_values[40 - i] == -s.alpha_values[i]);
        for (int j = 0; j < 41; ++j) {
            CHECK(s.membership(i, j) == s.membership(40 - i, j));
            if (s.membership(i, j)) {
                ++members;
                CHECK(s.nu(i, j) == s.nu(40 - i, j));
            } else {
                CHECK(std::isnan(s.nu(i, j)));
            }
        }
    }
    CHECK(members > 0);
    CHECK(s.boundary_linear.size() == 41);
    CHECK(s.boundary_quadratic.size() == 41);
    CHECK_THROWS_AS(sample_region(p, w, {-0.7, 0.7}, {1e-3, 1.0}, 4),
                    std::invalid_argument);
    CHECK_THROWS_AS(sample_region(p, w, {0.7, -0.7}, {1e-3, 1.0}, 16),
                    std::invalid_argument);
}

TEST_CASE("region inequalities agree with the decay-constant terms") {
    // member iff the fourth nu term is positive and the delayed coefficient
    // keeps its dissipative sign
    const auto p = unit_params();
    const auto w = unit_weights();
    for (double alpha = -0.6; alpha <= 0.6; alpha += 0.04) {
        for (double xi = 0.02; xi <= 0.9; xi += 0.04) {
            const auto c = sigma_member(alpha, xi, p, w);
            const double term4 = w.delta1 / 2.0 - w.delta2 - (std::abs(alpha) + xi) / 2.0;
            const bool expected = term4 > 0.0 && c.coeff_delayed <= 0.0;
            CHECK(c.member == expected);
        }
    }
}

TEST_CASE("monotonicity of the first constraint in |alpha|") {
    const auto p = unit_params();
    const auto w = unit_weights();
    for (double xi : {0.05, 0.15, 0.25}) {
        for (double alpha : {0.1, 0.2}) {
            if (!sigma_member(alpha, xi, p, w).member) continue;
            for (double frac : {0.0, 0.25, 0.5, 0.75}) {
                const double inner = frac * alpha;
                CHECK(xi < w.delta1 - 2.0 * w.delta2 - std::abs(inner));
            }
        }
    }
}

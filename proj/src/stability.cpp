#include "delaybeam/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace delaybeam {

StabilityCertificate sigma_member(double alpha, double xi, const BeamParameters& p,
                                  const LyapunovWeights& w) {
    if (!(xi > 0.0)) throw std::invalid_argument("sigma_member: xi must be positive");
    if (!p.tension_subcritical())
        throw std::invalid_argument("sigma_member: requires tension < 3/length^2");
    if (!weights_dissipative(w, p))
        throw std::invalid_argument("sigma_member: weights violate the smallness conditions");

    const double l = p.length;
    const double T = p.tension;
    const double d1 = w.delta1;
    const double d2 = w.delta2;
    const double aa = std::abs(alpha);
    const double et = std::exp(-p.delay);
    const double margin = 3.0 - T * l * l;

    StabilityCertificate c;
    c.coeff_tip = -p.gain + d1 * (l / 2.0 + p.gain * p.gain * l * l * l / margin);
    c.coeff_v = d2 - d1 / 2.0 + (aa + xi) / 2.0;
    c.coeff_bend = -margin / 4.0;
    c.coeff_delayed = -(et * d2 - d1 * alpha * alpha * l * l / T - (aa - xi) / 2.0);

    const bool linear_ok = xi < d1 - 2.0 * d2 - aa;  // strict
    const bool quadratic_ok =
        xi >= (2.0 * d1 * l * l / T) * alpha * alpha + aa - 2.0 * et * d2;

    c.nu = 2.0 * std::min({T * d1 / 4.0, margin / 4.0, et * d2 / xi,
                           d1 / 2.0 - d2 - (aa + xi) / 2.0});
    // Each negative term divided by the coefficient of the matching part of E
    // (1/2 on the fields, xi/(2 tau) on the history integral; the curvature
    // term carries its delta1).
    c.nu_safe = std::min({d1 / 2.0, d1 * margin / 2.0,
                          2.0 * p.delay * et * d2 / xi,
                          d1 - 2.0 * d2 - aa - xi});

    const double scale = equivalence_scale(p);
    c.gamma1 = 1.0 - d1 * scale + 2.0 * d2 / xi;
    c.gamma1_safe = 1.0 - d1 * scale;
    c.gamma2 = 1.0 + d1 * scale + 2.0 * d2 / xi;
    c.gamma2_safe = 1.0 + d1 * scale + 2.0 * p.delay * d2 / xi;

    const bool in_region = linear_ok && quadratic_ok;
    c.member = in_region && c.nu > 0.0;
    c.marginal = in_region && !(c.nu > 0.0);
    if (!c.member) {
        c.nu = std::numeric_limits<double>::quiet_NaN();
        c.nu_safe = std::numeric_limits<double>::quiet_NaN();
    }
    return c;
}

std::pair<double, double> roots_alpha(const BeamParameters& p, const LyapunovWeights& w) {
    if (!weights_dissipative(w, p))
        throw std::invalid_argument("roots_alpha: weights violate the smallness conditions");
    const double l2 = p.length * p.length;
    const double T = p.tension;
    const double inner = 1.0 + 16.0 * w.delta1 * w.delta2 * std::exp(-p.delay) * l2 / T;
    const double a1 = T / (4.0 * w.delta1 * l2) * (-1.0 + std::sqrt(inner));
    return {a1, -a1};
}

std::pair<double, double> roots_alpha_star(const BeamParameters& p) {
    const double d1 = default_weights(p).weights.delta1;
    const double l2 = p.length * p.length;
    const double T = p.tension;
    const double inner = 1.0 + 4.0 * std::exp(-p.delay) * d1 * d1 * l2 / T;
    const double a1 = T / (4.0 * d1 * l2) * (1.0 + std::sqrt(inner));
    return {a1, -a1};
}

double alpha_threshold(const BeamParameters& p) {
    const double d1 = default_weights(p).weights.delta1;
    return std::min(d1 / 6.0, roots_alpha_star(p).first);
}

RegionSample sample_region(const BeamParameters& p, const LyapunovWeights& w,
                           std::pair<double, double> alpha_range,
                           std::pair<double, double> xi_range, int resolution) {
    if (resolution < 8)
        throw std::invalid_argument("sample_region: resolution must be >= 8");
    if (!(alpha_range.first < alpha_range.second) ||
        !(xi_range.first < xi_range.second))
        throw std::invalid_argument("sample_region: empty range");
    if (!(xi_range.first > 0.0))
        throw std::invalid_argument("sample_region: xi range must be positive");

    RegionSample s;
    s.alpha_values.resize(resolution);
    s.xi_values.resize(resolution);
    for (int i = 0; i < resolution; ++i) {
        const double t = static_cast<double>(i) / (resolution - 1);
        s.alpha_values[i] = alpha_range.first + t * (alpha_range.second - alpha_range.first);
        s.xi_values[i] = xi_range.first + t * (xi_range.second - xi_range.first);
    }
    // A symmetric alpha range mirrors exactly, down to the last bit.
    if (alpha_range.first == -alpha_range.second) {
        for (int i = 0; i < resolution / 2; ++i)
            s.alpha_values[resolution - 1 - i] = -s.alpha_values[i];
        if (resolution % 2 == 1) s.alpha_values[resolution / 2] = 0.0;
    }

    s.membership.resize(resolution, resolution);
    s.nu.resize(resolution, resolution);
    for (int i = 0; i < resolution; ++i) {
        for (int j = 0; j < resolution; ++j) {
            const auto c = sigma_member(s.alpha_values[i], s.xi_values[j], p, w);
            s.membership(i, j) = c.member;
            s.nu(i, j) = c.nu;
        }
    }

    const double et = std::exp(-p.delay);
    s.boundary_linear.reserve(resolution);
    s.boundary_quadratic.reserve(resolution);
    for (int i = 0; i < resolution; ++i) {
        const double a = s.alpha_values[i];
        s.boundary_linear.push_back({a, w.delta1 - 2.0 * w.delta2 - std::abs(a)});
        s.boundary_quadratic.push_back(
            {a, (2.0 * w.delta1 * p.length * p.length / p.tension) * a * a +
                    std::abs(a) - 2.0 * et * w.delta2});
    }
    return s;
}

}  // namespace delaybeam

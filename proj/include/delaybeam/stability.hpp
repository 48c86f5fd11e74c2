#pragma once

#include "delaybeam/model.hpp"

namespace delaybeam {

/// Outcome of the pointwise stability test in the (alpha, xi)-plane.
struct StabilityCertificate {
    bool member = false;
    /// Both region inequalities hold but the decay constant degenerates to
    /// zero (possible only with degenerate weights); reported, not a member.
    bool marginal = false;
    double nu = 0.0;       ///< decay constant of dV/dt <= -nu E
    /// Variant of nu with each negative term divided by the matching energy
    /// coefficient (restores a delta1 on the curvature term and a 2 tau / xi
    /// scaling on the history term).
    double nu_safe = 0.0;

    // Bracketed coefficients of the dissipation estimate; membership requires
    // the dissipative signs (tip <= 0, v <= 0, delayed <= 0).
    double coeff_tip = 0.0;      ///< on y_t(l)^2
    double coeff_v = 0.0;        ///< on int y_t^2
    double coeff_bend = 0.0;     ///< on int y_xx^2
    double coeff_delayed = 0.0;  ///< on int y_t^2(., t - tau)

    // Sandwich constants gamma1 E <= V <= gamma2 E, as printed and as
    // guaranteed by the exact discrete quadrature bounds.
    double gamma1 = 0.0;
    double gamma1_safe = 0.0;
    double gamma2 = 0.0;
    double gamma2_safe = 0.0;
};

/// Membership in the stability region
///   Sigma = { xi < delta1 - 2 delta2 - |alpha|  (strict)
///             xi >= (2 delta1 l^2 / T) alpha^2 + |alpha| - 2 e^{-tau} delta2 },
/// with nu = 2 min{ T delta1/4, (3 - T l^2)/4, e^{-tau} delta2 / xi,
///                  delta1/2 - delta2 - (|alpha| + xi)/2 }.
/// Comparisons are exact, with no tolerance band. Requires subcritical
/// tension, xi > 0, and weights satisfying the smallness conditions.
StabilityCertificate sigma_member(double alpha, double xi, const BeamParameters& p,
                                  const LyapunovWeights& w);

/// Symmetric roots of the lower (quadratic) region boundary:
/// alpha1 = (T / (4 delta1 l^2)) [ -1 + sqrt(1 + 16 delta1 delta2 e^{-tau} l^2 / T) ],
/// alpha2 = -alpha1.
std::pair<double, double> roots_alpha(const BeamParameters& p, const LyapunovWeights& w);

/// Roots of Psi(a) = -(2 delta1 l^2 / T) a^2 + |a| + e^{-tau} delta1 / 2 with
/// delta1 from the default weight formula:
/// alpha1* = (T / (4 delta1 l^2)) [ 1 + sqrt(1 + 4 e^{-tau} delta1^2 l^2 / T) ],
/// alpha2* = -alpha1*.
std::pair<double, double> roots_alpha_star(const BeamParameters& p);

/// Smallness threshold alpha0 = min{ delta1 / 6, alpha1* } under the default
/// weights; vanishes in both the kappa -> 0 and kappa -> infinity limits.
double alpha_threshold(const BeamParameters& p);

/// Evaluates sigma_member on an (alpha, xi) grid and tabulates the two
/// boundary curves as polylines. A symmetric alpha range produces an exactly
/// mirror-symmetric table. Requires resolution >= 8 per axis and nonempty
/// ranges with positive xi.
RegionSample sample_region(const BeamParameters& p, const LyapunovWeights& w,
                           std::pair<double, double> alpha_range,
                           std::pair<double, double> xi_range, int resolution);

}  // namespace delaybeam

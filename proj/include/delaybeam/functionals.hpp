#pragma once

#include "delaybeam/discretization.hpp"
#include "delaybeam/model.hpp"

namespace delaybeam {

/// Log-linear decay fit E(t) ~ prefactor * E(0) * exp(-rate * t).
struct DecayFit {
    double rate = 0.0;       ///< fitted exponent; positive means decay
    double prefactor = 0.0;  ///< exp(intercept) / E(0)
    double t_a = 0.0;
    double t_b = 0.0;
    double residual = 0.0;   ///< RMS residual of the log-linear fit
    bool fully_decayed = false;  ///< energy below threshold on the whole window
};

/// E = 1/2 (int v^2 + int y_xx^2 + T int y_x^2)
///   + (xi/2) int_0^l int_0^1 v^2(x, t - s tau) ds dx.
/// All quadratures match the spatial operator's forms, and the s-integral is
/// the trapezoid over the M+1 delay-buffer slots.
double energy(const BeamState& state, const DelayHistory& history,
              const BeamParameters& p, const SpatialOperator& op);

/// The first three terms of the energy (no history contribution). This is
/// exactly the quadratic invariant of the conservative scheme.
double beam_energy(const BeamState& state, const SpatialOperator& op);

/// (xi/2) int_0^l int_0^1 v^2(x, t - s tau) ds dx over the buffer.
double history_energy(const DelayHistory& history, const BeamParameters& p,
                      const SpatialOperator& op);

/// I1 = int_0^l x y_x y_t dx, evaluated on cell midpoints so the bound
/// |I1| <= max{l, l/T} E holds exactly in the discrete setting.
double functional_I1(const BeamState& state, const SpaceGrid& g);

/// I2 = int_0^l int_{t-tau}^t e^{s-t} y_t^2(x,s) ds dx, double trapezoid over
/// the buffer slots with the exponential weight.
double functional_I2(const DelayHistory& history, const SpaceGrid& g,
                     const TimeGrid& tg);

/// V = E + delta1 I1 + delta2 I2. Rejects inadmissible weights.
double lyapunov(const BeamState& state, const DelayHistory& history,
                const BeamParameters& p, const SpaceGrid& g, const TimeGrid& tg,
                const LyapunovWeights& w, const SpatialOperator& op);

/// Least-squares line through (t, log E) on [t_a, t_b]. Returns a
/// fully-decayed marker when the energy is below 1e-300 on the window.
/// Throws when the window holds fewer than 10 usable samples.
DecayFit fit_decay(const EnergyTrace& trace, double t_a, double t_b);

/// Default fit window [max(5, 2 tau), t_f], skipping startup transients.
std::pair<double, double> default_fit_window(const BeamParameters& p, const TimeGrid& tg);

/// Per-step residual of the energy-balance identity
///   dE/dt = (xi/(2 tau)) (int v^2 - int v_del^2) - alpha int v_del v - kappa v(l)^2
/// with dE/dt by centered differences; endpoints dropped. Requires stride 1.
std::vector<double> energy_balance_residual(const EnergyTrace& trace,
                                            const BeamParameters& p,
                                            const TimeGrid& tg);

}  // namespace delaybeam

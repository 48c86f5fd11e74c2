#pragma once

#include <Eigen/Cholesky>
#include <functional>

#include "delaybeam/discretization.hpp"
#include "delaybeam/model.hpp"

namespace delaybeam {

/// Raised when the time stepper meets non-finite values.
struct NumericalBlowup : std::runtime_error {
    long step_index;
    NumericalBlowup(long step, const std::string& what)
        : std::runtime_error(what), step_index(step) {}
};

struct InitialData {
    VectorXd y0;  ///< displacement at t = 0
    VectorXd y1;  ///< velocity at t = 0
    /// f0(x, s) for s in (-tau, 0): velocity history before t = 0.
    std::function<double(double x, double s)> history;

    static InitialData zero(const SpaceGrid& g);
    /// y0 = 0, y1(x) = x^2, f0 == y1: satisfies the clamped compatibility
    /// v(0) = v'(0) = 0 with mild startup transients.
    static InitialData parabolic_velocity(const SpaceGrid& g);
    /// y0 = 0, y1(x) = x^2 sin(2 pi x / l), f0(x,s) = y1(x) e^{s}.
    static InitialData oscillatory(const SpaceGrid& g);
    /// y0 = 0, y1(x) = x^2 (l - x)^4, f0 == y1. The tip factor (l - x)^4
    /// makes the velocity and its first three derivatives vanish at the free
    /// end, so the startup transient stays smooth; used by convergence
    /// studies.
    static InitialData smooth_bump(const SpaceGrid& g);

    static InitialData by_name(const std::string& name, const SpaceGrid& g);
};

/// Default tolerance of the startup compatibility check
/// ||f0(.,0-) - y1||_inf <= tol * (1 + ||y1||_inf).
inline constexpr double kHistoryCompatTol = 1e-8;

/// Builds the t = 0 state and fills the delay buffer with f0 sampled at
/// {-tau, -tau + dt, ..., -dt} plus y1 at time 0. Rejects history that does
/// not match y1 at s -> 0- unless `override_compat` is set.
std::pair<BeamState, DelayHistory> initialize(const BeamParameters& p,
                                              const SpaceGrid& g,
                                              const TimeGrid& tg,
                                              const InitialData& init,
                                              double compat_tol = kHistoryCompatTol,
                                              bool override_compat = false);

/// One Crank-Nicolson step of the first-order system in (y, v): the stiff
/// spatial operator and the tip feedback are implicit, the delayed velocity
/// is read from the buffer (known at both endpoints of the step) and
/// averaged. The delayed value is the stored field from M steps back, exact
/// to the bit since dt = tau / M.
class Stepper {
  public:
    Stepper(const BeamParameters& p, const SpaceGrid& g, const TimeGrid& tg,
            const SpatialOperator& op);

    /// Advances one dt; rotates the buffer. Throws NumericalBlowup with the
    /// step index when the update is not finite.
    void step(BeamState& state, DelayHistory& history) const;

  private:
    const SpatialOperator& op_;
    double dt_;
    double alpha_;
    double gain_;
    int n_;  // reduced size (nodes 1..N)
    Eigen::LLT<MatrixXd> solver_;
    MatrixXd stiff_reduced_;
    VectorXd mass_reduced_;
    mutable long steps_taken_ = 0;
};

/// Steps to the horizon, sampling {t, E, I1, I2, V, y_t(l,t)} and the
/// energy-balance integrands every `stride` steps.
EnergyTrace run(const BeamParameters& p, const SpaceGrid& g, const TimeGrid& tg,
                const InitialData& init, const LyapunovWeights& weights,
                const SpatialOperator& op, int stride = 1);

}  // namespace delaybeam

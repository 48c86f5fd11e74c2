#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

namespace delaybeam {

using Eigen::VectorXd;

/// Physical and control constants of the clamped-free beam with boundary
/// velocity feedback and an internal velocity delay.
struct BeamParameters {
    double length = 1.0;   ///< beam length (> 0)
    double tension = 1.0;  ///< axial tension (> 0 for the static solver; >= 0 accepted by the integrator)
    double gain = 1.0;     ///< boundary feedback gain (> 0)
    double alpha = 0.0;    ///< delay-term coefficient, sign-indefinite
    double delay = 1.0;    ///< time delay in seconds (> 0)
    double xi = 1.0;       ///< history weight in the energy (> 0)

    // Region computations require the tension below 3/length^2.
    bool tension_subcritical() const {
        return tension < 3.0 / (length * length);
    }
};

/// Auxiliary constants of the Lyapunov analysis.
struct LyapunovWeights {
    double delta1 = 0.0;
    double delta2 = 0.0;
    double eps1 = 0.0;
    double eps2 = 0.0;
};

struct ValidationReport {
    std::vector<std::string> violations;
    std::vector<std::string> warnings;
    bool ok() const { return violations.empty(); }
};

/// Checks the BeamParameters invariants. Supercritical tension is a warning,
/// not an error: simulation is legal for any positive tension, only the
/// stability-region operations require the subcritical range.
ValidationReport validate_parameters(const BeamParameters& p);

/// Result of the default weight selection. `weights` holds the plain formula
/// values. `strict_weights` shrinks delta1 by 0.99 when the formula ties with
/// the equivalence bound 1/max{l, l/T}, so the sandwich constant stays
/// strictly positive; the Lyapunov evaluation uses the strict variant.
struct WeightSelection {
    LyapunovWeights weights;
    LyapunovWeights strict_weights;
    bool delta1_tightened = false;
};

/// delta1 = min{ 1/max{l, l/T}, kappa / (l/2 + kappa^2 l^3 / (3 - T l^2)) },
/// delta2 = delta1/4, eps1 = T/2, eps2 = (3 - T l^2) / (2 l).
/// Throws std::invalid_argument unless the tension is subcritical.
WeightSelection default_weights(const BeamParameters& p);

/// max{l, l/T}: the constant of the I1 bound and the sandwich estimate.
inline double equivalence_scale(const BeamParameters& p) {
    return std::max(p.length, p.length / p.tension);
}

/// The smallness conditions on (delta1, delta2) under which the Lyapunov
/// derivative estimate holds:
/// delta1 <= kappa (l/2 + kappa^2 l^3/(3 - T l^2))^{-1} and delta2 < delta1/2.
bool weights_dissipative(const LyapunovWeights& w, const BeamParameters& p);

/// Full admissibility for the Lyapunov functional: the dissipativity
/// conditions plus delta1 < 1/max{l, l/T} strictly, so the lower sandwich
/// constant is positive.
bool weights_admissible(const LyapunovWeights& w, const BeamParameters& p);

class SpaceGrid {
  public:
    SpaceGrid(double length, int n_cells);

    int n_cells() const { return n_; }
    double dx() const { return dx_; }
    double length() const { return length_; }
    const VectorXd& nodes() const { return nodes_; }

  private:
    int n_;
    double dx_;
    double length_;
    VectorXd nodes_;
};

class TimeGrid {
  public:
    /// dt := delay / steps_per_delay exactly, so the delayed velocity is read
    /// from a buffer slot without interpolation.
    TimeGrid(double delay, int steps_per_delay, double horizon);

    double dt() const { return dt_; }
    int steps_per_delay() const { return m_; }
    double horizon() const { return horizon_; }
    long total_steps() const;

  private:
    double dt_;
    int m_;
    double horizon_;
};

struct BeamState {
    double t = 0.0;
    VectorXd y;  ///< displacement, N+1 nodes
    VectorXd v;  ///< velocity, N+1 nodes
};

/// Ring buffer of M+1 velocity fields covering times {t - tau, ..., t},
/// oldest first. The newest slot equals the current velocity after every
/// accepted step.
class DelayHistory {
  public:
    explicit DelayHistory(int slots);

    int slots() const { return static_cast<int>(buf_.size()); }
    const VectorXd& oldest() const { return slot(0); }
    const VectorXd& newest() const { return slot(slots() - 1); }
    const VectorXd& slot(int k) const;  ///< k = 0 oldest ... slots()-1 newest
    VectorXd& slot(int k);

    /// Drops the oldest field and appends `v` as the newest.
    void push(VectorXd v);

  private:
    std::vector<VectorXd> buf_;
    int head_ = 0;
};

struct TraceRecord {
    double t = 0.0;
    double E = 0.0;
    double I1 = 0.0;
    double I2 = 0.0;
    double V = 0.0;
    double tip_velocity = 0.0;
    // Auxiliary integrands of the energy-balance identity, stored so the
    // residual diagnostics need no re-simulation.
    double beam_energy = 0.0;
    double int_v2 = 0.0;
    double int_vdel2 = 0.0;
    double int_v_vdel = 0.0;
};

struct EnergyTrace {
    std::vector<TraceRecord> records;
    int stride = 1;
};

/// Grid of (alpha, xi) points annotated with membership in the stability
/// region and the decay constant nu.
struct RegionSample {
    std::vector<double> alpha_values;
    std::vector<double> xi_values;
    // indexed [alpha][xi]
    Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> membership;
    Eigen::ArrayXXd nu;  ///< NaN where not a member
    std::vector<std::array<double, 2>> boundary_linear;     ///< xi = d1 - 2 d2 - |a|
    std::vector<std::array<double, 2>> boundary_quadratic;  ///< xi = (2 d1 l^2/T) a^2 + |a| - 2 e^{-tau} d2
};

}  // namespace delaybeam

#include "delaybeam/model.hpp"

#include <cmath>
#include <stdexcept>

namespace delaybeam {

ValidationReport validate_parameters(const BeamParameters& p) {
    ValidationReport r;
    if (!(p.length > 0.0)) r.violations.push_back("length > 0");
    if (!(p.tension > 0.0)) r.violations.push_back("tension > 0");
    if (!(p.gain > 0.0)) r.violations.push_back("gain > 0");
    if (!(p.delay > 0.0)) r.violations.push_back("delay > 0");
    if (!(p.xi > 0.0)) r.violations.push_back("xi > 0");
    if (p.length > 0.0 && !p.tension_subcritical()) {
        r.warnings.push_back(
            "tension_subcritical is false (tension >= 3/length^2): "
            "stability-region operations are unavailable");
    }
    return r;
}

WeightSelection default_weights(const BeamParameters& p) {
    const double l = p.length;
    const double T = p.tension;
    const double k = p.gain;
    if (!(l > 0.0) || !(T > 0.0) || !(k > 0.0))
        throw std::invalid_argument("default_weights: length, tension, gain must be positive");
    const double margin = 3.0 - T * l * l;
    if (!(margin > 0.0))
        throw std::invalid_argument("default_weights: requires tension < 3/length^2");

    const double sandwich_bound = 1.0 / equivalence_scale(p);
    const double feedback_bound = k / (l / 2.0 + k * k * l * l * l / margin);
    const double delta1 = std::min(sandwich_bound, feedback_bound);

    WeightSelection sel;
    sel.weights = LyapunovWeights{delta1, delta1 / 4.0, T / 2.0, margin / (2.0 * l)};
    sel.delta1_tightened = (delta1 >= sandwich_bound);
    // The sandwich constant 1 - delta1*max{l, l/T} must stay strictly positive.
    const double d1s = sel.delta1_tightened ? 0.99 * delta1 : delta1;
    sel.strict_weights = LyapunovWeights{d1s, d1s / 4.0, T / 2.0, margin / (2.0 * l)};
    return sel;
}

bool weights_dissipative(const LyapunovWeights& w, const BeamParameters& p) {
    const double l = p.length;
    const double T = p.tension;
    const double margin = 3.0 - T * l * l;
    if (!(margin > 0.0)) return false;
    if (!(w.delta1 > 0.0) || !(w.delta2 > 0.0)) return false;
    const double feedback_bound = p.gain / (l / 2.0 + p.gain * p.gain * l * l * l / margin);
    if (w.delta1 > feedback_bound) return false;
    if (!(w.delta2 < w.delta1 / 2.0)) return false;
    return true;
}

bool weights_admissible(const LyapunovWeights& w, const BeamParameters& p) {
    return weights_dissipative(w, p) && w.delta1 < 1.0 / equivalence_scale(p);
}

SpaceGrid::SpaceGrid(double length, int n_cells) : n_(n_cells), length_(length) {
    if (!(length > 0.0)) throw std::invalid_argument("SpaceGrid: length must be positive");
    if (n_cells < 8)
        throw std::invalid_argument("SpaceGrid: need at least 8 cells for the stencil and boundary closures");
    dx_ = length / n_cells;
    nodes_.resize(n_cells + 1);
    for (int j = 0; j <= n_cells; ++j) nodes_[j] = j * dx_;
    nodes_[n_cells] = length;
}

TimeGrid::TimeGrid(double delay, int steps_per_delay, double horizon)
    : m_(steps_per_delay), horizon_(horizon) {
    if (!(delay > 0.0)) throw std::invalid_argument("TimeGrid: delay must be positive");
    if (steps_per_delay < 4) throw std::invalid_argument("TimeGrid: need steps_per_delay >= 4");
    if (!(horizon > 0.0)) throw std::invalid_argument("TimeGrid: horizon must be positive");
    dt_ = delay / steps_per_delay;
}

long TimeGrid::total_steps() const {
    return std::lround(horizon_ / dt_);
}

DelayHistory::DelayHistory(int slots) {
    if (slots < 2) throw std::invalid_argument("DelayHistory: need at least 2 slots");
    buf_.resize(slots);
}

const VectorXd& DelayHistory::slot(int k) const {
    return buf_[(head_ + k) % buf_.size()];
}

VectorXd& DelayHistory::slot(int k) {
    return buf_[(head_ + k) % buf_.size()];
}

void DelayHistory::push(VectorXd v) {
    buf_[head_] = std::move(v);
    head_ = (head_ + 1) % static_cast<int>(buf_.size());
}

}  // namespace delaybeam

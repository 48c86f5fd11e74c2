#include "delaybeam/integrator.hpp"

#include <cmath>
#include <stdexcept>

#include "delaybeam/functionals.hpp"

namespace delaybeam {

namespace {

VectorXd sample(const SpaceGrid& g, const std::function<double(double)>& f) {
    VectorXd out(g.n_cells() + 1);
    for (int j = 0; j <= g.n_cells(); ++j) out[j] = f(g.nodes()[j]);
    return out;
}

}  // namespace

InitialData InitialData::zero(const SpaceGrid& g) {
    InitialData d;
    d.y0 = VectorXd::Zero(g.n_cells() + 1);
    d.y1 = VectorXd::Zero(g.n_cells() + 1);
    d.history = [](double, double) { return 0.0; };
    return d;
}

InitialData InitialData::parabolic_velocity(const SpaceGrid& g) {
    InitialData d;
    d.y0 = VectorXd::Zero(g.n_cells() + 1);
    d.y1 = sample(g, [](double x) { return x * x; });
    d.history = [](double x, double) { return x * x; };
    return d;
}

InitialData InitialData::oscillatory(const SpaceGrid& g) {
    InitialData d;
    const double l = g.length();
    d.y0 = VectorXd::Zero(g.n_cells() + 1);
    d.y1 = sample(g, [l](double x) { return x * x * std::sin(2.0 * M_PI * x / l); });
    d.history = [l](double x, double s) {
        return x * x * std::sin(2.0 * M_PI * x / l) * std::exp(s);
    };
    return d;
}

InitialData InitialData::smooth_bump(const SpaceGrid& g) {
    InitialData d;
    const double l = g.length();
    auto shape = [l](double x) {
        const double w = l - x;
        return x * x * w * w * w * w;
    };
    d.y0 = VectorXd::Zero(g.n_cells() + 1);
    d.y1 = sample(g, shape);
    d.history = [shape](double x, double) { return shape(x); };
    return d;
}

InitialData InitialData::by_name(const std::string& name, const SpaceGrid& g) {
    if (name == "zero") return zero(g);
    if (name == "default" || name == "parabolic") return parabolic_velocity(g);
    if (name == "oscillatory") return oscillatory(g);
    if (name == "smooth") return smooth_bump(g);
    throw std::invalid_argument("unknown initial-data preset: " + name);
}

std::pair<BeamState, DelayHistory> initialize(const BeamParameters& p,
                                              const SpaceGrid& g,
                                              const TimeGrid& tg,
                                              const InitialData& init,
                                              double compat_tol,
                                              bool override_compat) {
    const int n = g.n_cells();
    const int m = tg.steps_per_delay();
    if (init.y0.size() != n + 1 || init.y1.size() != n + 1)
        throw std::invalid_argument("initialize: initial fields do not match the grid");
    if (std::abs(init.y0[0]) > 0.0)
        throw std::invalid_argument("initialize: y0 violates the clamped condition y(0) = 0");

    // Startup compatibility: the history must meet y1 at s -> 0-.
    double mismatch = 0.0;
    for (int j = 0; j <= n; ++j)
        mismatch = std::max(mismatch,
                            std::abs(init.history(g.nodes()[j], 0.0) - init.y1[j]));
    const double scale = 1.0 + init.y1.cwiseAbs().maxCoeff();
    if (!override_compat && mismatch > compat_tol * scale)
        throw std::invalid_argument(
            "initialize: history f0(.,0-) does not match y1 (mismatch " +
            std::to_string(mismatch) + "); pass the override flag to proceed");

    BeamState state;
    state.t = 0.0;
    state.y = init.y0;
    state.v = init.y1;

    DelayHistory history(m + 1);
    for (int k = 0; k < m; ++k) {
        const double s = -p.delay + k * tg.dt();
        VectorXd field(n + 1);
        for (int j = 0; j <= n; ++j) field[j] = init.history(g.nodes()[j], s);
        history.slot(k) = std::move(field);
    }
    history.slot(m) = init.y1;
    return {std::move(state), std::move(history)};
}

Stepper::Stepper(const BeamParameters& p, const SpaceGrid& g, const TimeGrid& tg,
                 const SpatialOperator& op)
    : op_(op), dt_(tg.dt()), alpha_(p.alpha), gain_(p.gain), n_(g.n_cells()) {
    stiff_reduced_ = op.stiffness().block(1, 1, n_, n_);
    mass_reduced_ = op.mass().tail(n_);

    MatrixXd lhs = (dt_ * dt_ / 4.0) * stiff_reduced_;
    lhs.diagonal() += mass_reduced_;
    lhs(n_ - 1, n_ - 1) += gain_ * dt_ / 2.0;
    solver_.compute(lhs);
    if (solver_.info() != Eigen::Success)
        throw std::runtime_error("Stepper: Cholesky factorization failed");
}

void Stepper::step(BeamState& state, DelayHistory& history) const {
    const int n = n_;
    const auto y = state.y.tail(n);
    const auto v = state.v.tail(n);
    const auto vdel0 = history.slot(0).tail(n);  // v(t - tau)
    const auto vdel1 = history.slot(1).tail(n);  // v(t + dt - tau)

    VectorXd rhs = mass_reduced_.cwiseProduct(v) -
                   stiff_reduced_ * (dt_ * y + (dt_ * dt_ / 4.0) * v) -
                   (alpha_ * dt_ / 2.0) * mass_reduced_.cwiseProduct(vdel0 + vdel1);
    rhs(n - 1) -= gain_ * dt_ / 2.0 * v(n - 1);

    VectorXd v_new = solver_.solve(rhs);
    ++steps_taken_;
    if (!v_new.allFinite())
        throw NumericalBlowup(steps_taken_,
                              "non-finite velocity update at step " +
                                  std::to_string(steps_taken_));

    VectorXd v_full = VectorXd::Zero(n + 1);
    v_full.tail(n) = v_new;
    state.y.tail(n) += (dt_ / 2.0) * (v + v_new);
    state.y(0) = 0.0;
    state.v = v_full;
    state.t += dt_;
    history.push(std::move(v_full));
}

EnergyTrace run(const BeamParameters& p, const SpaceGrid& g, const TimeGrid& tg,
                const InitialData& init, const LyapunovWeights& weights,
                const SpatialOperator& op, int stride) {
    if (stride < 1) throw std::invalid_argument("run: stride must be >= 1");
    // Zero weights disable the Lyapunov functional (V then coincides with E).
    const bool with_lyapunov = weights.delta1 != 0.0 || weights.delta2 != 0.0;
    if (with_lyapunov && !weights_admissible(weights, p))
        throw std::invalid_argument("run: inadmissible Lyapunov weights");
    auto [state, history] = initialize(p, g, tg, init);
    Stepper stepper(p, g, tg, op);

    EnergyTrace trace;
    trace.stride = stride;
    const long total = tg.total_steps();
    trace.records.reserve(static_cast<std::size_t>(total / stride) + 2);

    auto record = [&]() {
        TraceRecord r;
        r.t = state.t;
        r.beam_energy = beam_energy(state, op);
        r.E = r.beam_energy + history_energy(history, p, op);
        r.I1 = functional_I1(state, g);
        r.I2 = functional_I2(history, g, tg);
        r.V = r.E + weights.delta1 * r.I1 + weights.delta2 * r.I2;
        r.tip_velocity = state.v(g.n_cells());
        r.int_v2 = op.mass_form(state.v);
        const VectorXd& vdel = history.oldest();
        r.int_vdel2 = op.mass_form(vdel);
        r.int_v_vdel = state.v.dot(op.mass().cwiseProduct(vdel));
        trace.records.push_back(r);
    };

    record();
    for (long k = 1; k <= total; ++k) {
        stepper.step(state, history);
        if (k % stride == 0 || k == total) record();
    }
    return trace;
}

}  // namespace delaybeam

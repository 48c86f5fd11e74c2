#include "delaybeam/functionals.hpp"

#include <cmath>
#include <stdexcept>

namespace delaybeam {

double beam_energy(const BeamState& state, const SpatialOperator& op) {
    return 0.5 * (op.mass_form(state.v) + op.bending_form(state.y) +
                  op.tension() * op.tension_form(state.y));
}

double history_energy(const DelayHistory& history, const BeamParameters& p,
                      const SpatialOperator& op) {
    const int m = history.slots() - 1;
    const double ds = 1.0 / m;
    double acc = 0.0;
    for (int k = 0; k <= m; ++k) {
        const double w = (k == 0 || k == m) ? ds / 2.0 : ds;
        acc += w * op.mass_form(history.slot(k));
    }
    return 0.5 * p.xi * acc;
}

double energy(const BeamState& state, const DelayHistory& history,
              const BeamParameters& p, const SpatialOperator& op) {
    return beam_energy(state, op) + history_energy(history, p, op);
}

double functional_I1(const BeamState& state, const SpaceGrid& g) {
    const int n = g.n_cells();
    if (state.y.size() != n + 1 || state.v.size() != n + 1)
        throw std::invalid_argument("functional_I1: field length mismatch");
    const double dx = g.dx();
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
        const double x_mid = (g.nodes()[j] + g.nodes()[j + 1]) / 2.0;
        const double slope = (state.y[j + 1] - state.y[j]) / dx;
        const double v_mid = (state.v[j] + state.v[j + 1]) / 2.0;
        acc += dx * x_mid * slope * v_mid;
    }
    return acc;
}

double functional_I2(const DelayHistory& history, const SpaceGrid& g,
                     const TimeGrid& tg) {
    const int m = history.slots() - 1;
    if (m != tg.steps_per_delay())
        throw std::invalid_argument("functional_I2: buffer does not cover one delay");
    const double dt = tg.dt();
    const double dx = g.dx();
    const int n = g.n_cells();
    double acc = 0.0;
    for (int k = 0; k <= m; ++k) {
        // slot k holds the velocity at s - t = -(m - k) dt
        const double w_s = ((k == 0 || k == m) ? dt / 2.0 : dt) * std::exp(-(m - k) * dt);
        const VectorXd& field = history.slot(k);
        double space = 0.0;
        for (int j = 0; j <= n; ++j) {
            const double w_x = (j == 0 || j == n) ? dx / 2.0 : dx;
            space += w_x * field[j] * field[j];
        }
        acc += w_s * space;
    }
    return acc;
}

double lyapunov(const BeamState& state, const DelayHistory& history,
                const BeamParameters& p, const SpaceGrid& g, const TimeGrid& tg,
                const LyapunovWeights& w, const SpatialOperator& op) {
    if (!weights_admissible(w, p))
        throw std::invalid_argument("lyapunov: weights violate the admissibility conditions");
    return energy(state, history, p, op) + w.delta1 * functional_I1(state, g) +
           w.delta2 * functional_I2(history, g, tg);
}

DecayFit fit_decay(const EnergyTrace& trace, double t_a, double t_b) {
    if (!(t_a < t_b)) throw std::invalid_argument("fit_decay: need t_a < t_b");
    constexpr double kFloor = 1e-300;

    std::vector<std::pair<double, double>> pts;  // (t, log E)
    bool any_in_window = false;
    for (const auto& r : trace.records) {
        if (r.t < t_a || r.t > t_b) continue;
        any_in_window = true;
        if (r.E < kFloor) break;  // fit aborts at the first decayed sample
        pts.emplace_back(r.t, std::log(r.E));
    }
    if (pts.empty() && any_in_window) {
        DecayFit f;
        f.t_a = t_a;
        f.t_b = t_b;
        f.fully_decayed = true;
        return f;
    }
    if (pts.size() < 10)
        throw std::invalid_argument("fit_decay: window holds fewer than 10 samples");

    const double n = static_cast<double>(pts.size());
    double st = 0.0, sl = 0.0, stt = 0.0, stl = 0.0;
    for (const auto& [t, le] : pts) {
        st += t;
        sl += le;
        stt += t * t;
        stl += t * le;
    }
    const double denom = n * stt - st * st;
    const double slope = (n * stl - st * sl) / denom;
    const double intercept = (sl - slope * st) / n;

    DecayFit f;
    f.rate = -slope;
    f.t_a = t_a;
    f.t_b = t_b;
    const double e0 = trace.records.empty() ? 1.0 : trace.records.front().E;
    f.prefactor = e0 > 0.0 ? std::exp(intercept) / e0 : std::exp(intercept);
    double ss = 0.0;
    for (const auto& [t, le] : pts) {
        const double r = le - (intercept + slope * t);
        ss += r * r;
    }
    f.residual = std::sqrt(ss / n);
    return f;
}

std::pair<double, double> default_fit_window(const BeamParameters& p, const TimeGrid& tg) {
    return {std::max(5.0, 2.0 * p.delay), tg.horizon()};
}

std::vector<double> energy_balance_residual(const EnergyTrace& trace,
                                            const BeamParameters& p,
                                            const TimeGrid& tg) {
    if (trace.stride != 1)
        throw std::invalid_argument("energy_balance_residual: trace must be recorded with stride 1");
    const double dt = tg.dt();
    std::vector<double> res;
    if (trace.records.size() < 3) return res;
    res.reserve(trace.records.size() - 2);
    for (std::size_t k = 1; k + 1 < trace.records.size(); ++k) {
        const auto& prev = trace.records[k - 1];
        const auto& cur = trace.records[k];
        const auto& next = trace.records[k + 1];
        const double dEdt = (next.E - prev.E) / (2.0 * dt);
        const double rhs = p.xi / (2.0 * p.delay) * (cur.int_v2 - cur.int_vdel2) -
                           p.alpha * cur.int_v_vdel -
                           p.gain * cur.tip_velocity * cur.tip_velocity;
        res.push_back(dEdt - rhs);
    }
    return res;
}

}  // namespace delaybeam

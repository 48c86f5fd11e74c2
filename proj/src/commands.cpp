#include "delaybeam/commands.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <thread>
#include <vector>

#include <json.hpp>

#include "delaybeam/discretization.hpp"
#include "delaybeam/functionals.hpp"
#include "delaybeam/integrator.hpp"
#include "delaybeam/resolvent.hpp"
#include "delaybeam/stability.hpp"

namespace delaybeam {

namespace {

using nlohmann::json;

std::string num(double x) {
    if (x == 0.0) x = 0.0;  // normalize -0
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_resolved_config(const RunConfig& cfg, const std::filesystem::path& dir) {
    std::ofstream out(dir / "config_resolved.txt");
    for (const auto& [k, v] : resolved_entries(cfg)) out << k << " = " << v << "\n";
}

std::filesystem::path prepare_out_dir(const std::string& out_dir) {
    std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    return dir;
}

int check_parameters(const BeamParameters& p) {
    const auto report = validate_parameters(p);
    for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
    if (!report.ok()) {
        for (const auto& v : report.violations)
            std::cerr << "config error: parameter constraint violated: " << v << "\n";
        return kExitConfig;
    }
    return kExitOk;
}

json certificate_json(const StabilityCertificate& c) {
    json j;
    j["member"] = c.member;
    j["marginal"] = c.marginal;
    j["nu"] = c.member ? json(c.nu) : json(nullptr);
    j["nu_safe"] = c.member ? json(c.nu_safe) : json(nullptr);
    j["coefficients"] = {{"tip", c.coeff_tip},
                         {"velocity", c.coeff_v},
                         {"curvature", c.coeff_bend},
                         {"delayed", c.coeff_delayed}};
    j["gamma"] = {{"gamma1", c.gamma1},
                  {"gamma1_safe", c.gamma1_safe},
                  {"gamma2", c.gamma2},
                  {"gamma2_safe", c.gamma2_safe}};
    return j;
}

json fit_json(const DecayFit& f) {
    json j;
    j["fully_decayed"] = f.fully_decayed;
    j["t_a"] = f.t_a;
    j["t_b"] = f.t_b;
    if (f.fully_decayed) {
        j["rate"] = nullptr;
        j["prefactor"] = nullptr;
        j["residual"] = nullptr;
    } else {
        j["rate"] = f.rate;
        j["prefactor"] = f.prefactor;
        j["residual"] = f.residual;
    }
    return j;
}

/// Number of samples where gamma1_safe E <= V <= gamma2_safe E fails.
int sandwich_violations(const EnergyTrace& trace, const BeamParameters& p,
                        const LyapunovWeights& w) {
    const double scale = equivalence_scale(p);
    const double g1 = 1.0 - w.delta1 * scale;
    const double g2 = 1.0 + w.delta1 * scale + 2.0 * p.delay * w.delta2 / p.xi;
    int bad = 0;
    for (const auto& r : trace.records)
        if (!(g1 * r.E <= r.V && r.V <= g2 * r.E)) ++bad;
    return bad;
}

}  // namespace

int cmd_simulate(const RunConfig& cfg, const std::string& out_dir) {
    if (const int rc = check_parameters(cfg.beam)) return rc;
    const auto dir = prepare_out_dir(out_dir);
    write_resolved_config(cfg, dir);

    try {
        SpaceGrid g(cfg.beam.length, cfg.n_cells);
        TimeGrid tg(cfg.beam.delay, cfg.steps_per_delay, cfg.horizon);
        SpatialOperator op(cfg.beam, g);
        const auto [region_w, lyap_w] = effective_weights(cfg);
        const InitialData init = InitialData::by_name(cfg.initial_preset, g);

        EnergyTrace trace;
        try {
            trace = run(cfg.beam, g, tg, init, lyap_w, op, cfg.output_stride);
        } catch (const NumericalBlowup& e) {
            std::cerr << "numerical blow-up at step " << e.step_index << ": "
                      << e.what() << "\n";
            return kExitNumerical;
        }

        {
            std::ofstream csv(dir / "trace.csv");
            csv << "t,E,I1,I2,V,tip_velocity\n";
            for (const auto& r : trace.records)
                csv << num(r.t) << ',' << num(r.E) << ',' << num(r.I1) << ','
                    << num(r.I2) << ',' << num(r.V) << ',' << num(r.tip_velocity)
                    << '\n';
        }

        json summary;
        const auto [ta, tb] = default_fit_window(cfg.beam, tg);
        summary["decay_fit"] = fit_json(fit_decay(trace, ta, tb));
        try {
            summary["certificate"] =
                certificate_json(sigma_member(cfg.beam.alpha, cfg.beam.xi, cfg.beam, region_w));
        } catch (const std::invalid_argument& e) {
            summary["certificate"] = nullptr;
            summary["certificate_skipped"] = e.what();
        }
        summary["sandwich_violations"] = sandwich_violations(trace, cfg.beam, lyap_w);
        summary["energy"] = {{"initial", trace.records.front().E},
                             {"final", trace.records.back().E}};
        summary["weights"] = {{"region", {{"delta1", region_w.delta1}, {"delta2", region_w.delta2}}},
                              {"lyapunov", {{"delta1", lyap_w.delta1}, {"delta2", lyap_w.delta2}}}};
        std::ofstream(dir / "summary.json") << summary.dump(2) << "\n";
        return kExitOk;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::runtime_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    }
}

int cmd_region(const RunConfig& cfg, const std::string& out_dir) {
    if (const int rc = check_parameters(cfg.beam)) return rc;
    if (!cfg.beam.tension_subcritical()) {
        std::cerr << "config error: region command requires tension < 3/length^2\n";
        return kExitConfig;
    }
    const auto dir = prepare_out_dir(out_dir);
    write_resolved_config(cfg, dir);

    try {
        const auto [region_w, lyap_w] = effective_weights(cfg);
        (void)lyap_w;
        const RegionSample s =
            sample_region(cfg.beam, region_w, {cfg.region_alpha_min, cfg.region_alpha_max},
                          {cfg.region_xi_min, cfg.region_xi_max}, cfg.region_resolution);

        {
            std::ofstream csv(dir / "region.csv");
            csv << "alpha,xi,member,nu\n";
            for (std::size_t i = 0; i < s.alpha_values.size(); ++i)
                for (std::size_t j = 0; j < s.xi_values.size(); ++j) {
                    csv << num(s.alpha_values[i]) << ',' << num(s.xi_values[j]) << ','
                        << (s.membership(i, j) ? 1 : 0) << ',';
                    if (s.membership(i, j)) csv << num(s.nu(i, j));
                    csv << '\n';
                }
        }
        {
            std::ofstream csv(dir / "boundaries.csv");
            csv << "curve,alpha,xi\n";
            for (const auto& [a, x] : s.boundary_linear)
                csv << "delta1-2*delta2-|alpha|," << num(a) << ',' << num(x) << '\n';
            for (const auto& [a, x] : s.boundary_quadratic)
                csv << "(2*delta1*l^2/T)*alpha^2+|alpha|-2*e^(-tau)*delta2," << num(a)
                    << ',' << num(x) << '\n';
        }
        return kExitOk;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
}

namespace {

struct SweepRow {
    double alpha = 0.0;
    double xi = 0.0;
    bool member = false;
    double nu = std::numeric_limits<double>::quiet_NaN();
    DecayFit fit;
    double energy_ratio = std::numeric_limits<double>::quiet_NaN();
    std::string status = "ok";
};

}  // namespace

int cmd_sweep(const RunConfig& cfg, const std::string& out_dir, int workers) {
    if (const int rc = check_parameters(cfg.beam)) return rc;
    if (cfg.sweep_alpha_count < 1 || cfg.sweep_xi_count < 1) {
        std::cerr << "config error: sweep.alpha_count and sweep.xi_count must be >= 1\n";
        return kExitConfig;
    }
    const auto dir = prepare_out_dir(out_dir);
    write_resolved_config(cfg, dir);

    try {
        SpaceGrid g(cfg.beam.length, cfg.n_cells);
        TimeGrid tg(cfg.beam.delay, cfg.steps_per_delay, cfg.horizon);
        // Stiffness and mass do not depend on (alpha, xi): one operator is
        // shared read-only by all workers.
        SpatialOperator op(cfg.beam, g);
        const auto [region_w, lyap_w] = effective_weights(cfg);
        const InitialData init = InitialData::by_name(cfg.initial_preset, g);
        const auto [ta, tb] = default_fit_window(cfg.beam, tg);

        std::vector<SweepRow> rows;
        for (int i = 0; i < cfg.sweep_alpha_count; ++i)
            for (int j = 0; j < cfg.sweep_xi_count; ++j) {
                SweepRow r;
                r.alpha = cfg.sweep_alpha_count == 1
                              ? cfg.sweep_alpha_min
                              : cfg.sweep_alpha_min +
                                    i * (cfg.sweep_alpha_max - cfg.sweep_alpha_min) /
                                        (cfg.sweep_alpha_count - 1);
                r.xi = cfg.sweep_xi_count == 1
                           ? cfg.sweep_xi_min
                           : cfg.sweep_xi_min + j * (cfg.sweep_xi_max - cfg.sweep_xi_min) /
                                                    (cfg.sweep_xi_count - 1);
                rows.push_back(r);
            }

        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            for (;;) {
                const std::size_t k = next.fetch_add(1);
                if (k >= rows.size()) return;
                SweepRow& r = rows[k];
                BeamParameters p = cfg.beam;
                p.alpha = r.alpha;
                p.xi = r.xi;
                if (p.tension_subcritical() && weights_dissipative(region_w, p)) {
                    const auto c = sigma_member(p.alpha, p.xi, p, region_w);
                    r.member = c.member;
                    r.nu = c.nu;
                }
                try {
                    const EnergyTrace trace =
                        run(p, g, tg, init, lyap_w, op, cfg.output_stride);
                    const auto& first = trace.records.front();
                    const auto& last = trace.records.back();
                    r.energy_ratio = first.E > 0.0 ? last.E / first.E : 0.0;
                    r.fit = fit_decay(trace, ta, tb);
                    if (r.fit.fully_decayed) r.status = "decayed";
                } catch (const NumericalBlowup&) {
                    r.status = "blowup";
                } catch (const std::invalid_argument&) {
                    r.status = "short";  // fit window held too few samples
                }
            }
        };

        const int n_workers = std::max(
            1, std::min<int>(workers, static_cast<int>(rows.size())));
        std::vector<std::thread> pool;
        for (int w = 1; w < n_workers; ++w) pool.emplace_back(worker);
        worker();
        for (auto& t : pool) t.join();

        // Row generation order is already lexicographic in (alpha, xi).
        std::ofstream csv(dir / "sweep.csv");
        csv << "alpha,xi,member,nu,fitted_rate,fit_residual,E_final_over_E0,status\n";
        for (const auto& r : rows) {
            csv << num(r.alpha) << ',' << num(r.xi) << ',' << (r.member ? 1 : 0) << ',';
            if (r.member) csv << num(r.nu);
            csv << ',';
            if (r.status == "ok") csv << num(r.fit.rate);
            csv << ',';
            if (r.status == "ok") csv << num(r.fit.residual);
            csv << ',';
            if (r.status != "blowup") csv << num(r.energy_ratio);
            csv << ',' << r.status << '\n';
        }
        return kExitOk;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
}

int cmd_resolvent(const RunConfig& cfg, const std::string& out_dir) {
    if (const int rc = check_parameters(cfg.beam)) return rc;
    const auto dir = prepare_out_dir(out_dir);
    write_resolved_config(cfg, dir);

    try {
        if (cfg.resolvent_n < 8) {
            std::cerr << "config error: resolvent.N must be >= 8\n";
            return kExitConfig;
        }

        auto make_data = [&](const SpaceGrid& g) {
            if (cfg.resolvent_preset == "zero") return StaticData::zero(g);
            if (cfg.resolvent_preset == "smooth") return StaticData::smooth(g);
            if (cfg.resolvent_preset == "random")
                return StaticData::random_smooth(g, cfg.resolvent_seed);
            throw ConfigError("unknown resolvent preset '" + cfg.resolvent_preset + "'");
        };

        std::vector<double> errors;
        json summary;
        for (int level = 0; level < 3; ++level) {
            const int n = cfg.resolvent_n << level;
            SpaceGrid g(cfg.beam.length, n);
            const StaticData d = make_data(g);
            const VectorXd psi = source_psi(d, cfg.beam);
            const ClosedFormSolution cf = solve_coefficients(psi, cfg.beam, d, g);
            const VectorXd oracle = bvp_oracle(psi, cfg.beam, g, d.f[n]);

            double diff = 0.0, scale = 0.0;
            VectorXd closed(n + 1);
            for (int j = 0; j <= n; ++j) {
                closed[j] = cf.y(g.nodes()[j]);
                diff = std::max(diff, std::abs(closed[j] - oracle[j]));
                scale = std::max(scale, std::abs(closed[j]));
            }
            errors.push_back(scale > 0.0 ? diff / scale : 0.0);

            if (level == 0) {
                std::ofstream csv(dir / "resolvent.csv");
                csv << "x,y_closed,y_oracle,abs_diff\n";
                for (int j = 0; j <= n; ++j)
                    csv << num(g.nodes()[j]) << ',' << num(closed[j]) << ','
                        << num(oracle[j]) << ',' << num(std::abs(closed[j] - oracle[j]))
                        << '\n';

                const auto& c = cf.coefficients();
                summary["coefficients"] = {{"c1", c[0]}, {"c2", c[1]}, {"c3", c[2]}, {"c4", c[3]}};
                summary["boundary_determinant"] = cf.boundary_determinant();

                // Residuals of the four boundary conditions, relative to the
                // magnitude of the matching derivative over the grid.
                double mag[4] = {0.0, 0.0, 0.0, 0.0};
                for (int j = 0; j <= n; ++j) {
                    const auto v = cf.evaluate(g.nodes()[j]);
                    for (int k = 0; k < 4; ++k) mag[k] = std::max(mag[k], std::abs(v[k]));
                }
                const double l = cfg.beam.length;
                const double shear =
                    cf.d3y(l) - cfg.beam.tension * cf.dy(l) - cfg.beam.gain * d.f[n];
                auto rel = [](double r, double s) { return std::abs(r) / std::max(s, 1e-300); };
                summary["boundary_residuals"] = {
                    {"clamped_value", rel(cf.y(0.0), mag[0])},
                    {"clamped_slope", rel(cf.dy(0.0), mag[1])},
                    {"free_moment", rel(cf.d2y(l), mag[2])},
                    {"free_shear", rel(shear, mag[3])}};
            }
        }

        summary["grid_levels"] = {cfg.resolvent_n, cfg.resolvent_n * 2, cfg.resolvent_n * 4};
        summary["relative_errors"] = errors;
        if (errors[0] > 0.0 && errors[1] > 0.0 && errors[2] > 0.0)
            summary["convergence_slope"] =
                0.5 * (std::log2(errors[0] / errors[1]) + std::log2(errors[1] / errors[2]));
        else
            summary["convergence_slope"] = nullptr;
        std::ofstream(dir / "resolvent_summary.json") << summary.dump(2) << "\n";
        return kExitOk;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::runtime_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    }
}

}  // namespace delaybeam

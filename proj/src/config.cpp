#include "delaybeam/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

namespace delaybeam {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': not a number: '" + v + "'");
    }
}

int parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long x = std::stol(v, &pos);
        if (pos != v.size() || x < -2147483647L || x > 2147483647L)
            throw std::invalid_argument(v);
        return static_cast<int>(x);
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': not an integer: '" + v + "'");
    }
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void assign(RunConfig& c, const std::string& key, const std::string& value) {
    auto d = [&] { return parse_double(key, value); };
    auto i = [&] { return parse_int(key, value); };
    auto weights_ref = [&]() -> LyapunovWeights& {
        if (!c.weights) c.weights = LyapunovWeights{};
        return *c.weights;
    };

    if (key == "beam.length") c.beam.length = d();
    else if (key == "beam.tension") c.beam.tension = d();
    else if (key == "beam.gain") c.beam.gain = d();
    else if (key == "beam.alpha") c.beam.alpha = d();
    else if (key == "beam.delay") c.beam.delay = d();
    else if (key == "beam.xi") c.beam.xi = d();
    else if (key == "grid.N") c.n_cells = i();
    else if (key == "grid.M") c.steps_per_delay = i();
    else if (key == "grid.t_f") c.horizon = d();
    else if (key == "weights.delta1") weights_ref().delta1 = d();
    else if (key == "weights.delta2") weights_ref().delta2 = d();
    else if (key == "initial.preset") c.initial_preset = value;
    else if (key == "output.stride") c.output_stride = i();
    else if (key == "sweep.alpha_min") c.sweep_alpha_min = d();
    else if (key == "sweep.alpha_max") c.sweep_alpha_max = d();
    else if (key == "sweep.alpha_count") c.sweep_alpha_count = i();
    else if (key == "sweep.xi_min") c.sweep_xi_min = d();
    else if (key == "sweep.xi_max") c.sweep_xi_max = d();
    else if (key == "sweep.xi_count") c.sweep_xi_count = i();
    else if (key == "region.alpha_min") c.region_alpha_min = d();
    else if (key == "region.alpha_max") c.region_alpha_max = d();
    else if (key == "region.xi_min") c.region_xi_min = d();
    else if (key == "region.xi_max") c.region_xi_max = d();
    else if (key == "region.resolution") c.region_resolution = i();
    else if (key == "resolvent.preset") c.resolvent_preset = value;
    else if (key == "resolvent.seed") c.resolvent_seed = static_cast<unsigned>(i());
    else if (key == "resolvent.N") c.resolvent_n = i();
    else throw ConfigError("unknown config key '" + key + "'");
}

}  // namespace

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    RunConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": expected 'key = value', got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": empty key or value in '" + line + "'");
        assign(cfg, key, value);
    }
    return cfg;
}

void apply_override(RunConfig& cfg, const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos)
        throw ConfigError("override must be key=value, got '" + spec + "'");
    const std::string key = trim(spec.substr(0, eq));
    const std::string value = trim(spec.substr(eq + 1));
    if (key.empty() || value.empty())
        throw ConfigError("override must be key=value, got '" + spec + "'");
    assign(cfg, key, value);
}

std::map<std::string, std::string> resolved_entries(const RunConfig& c) {
    std::map<std::string, std::string> m;
    m["beam.length"] = fmt(c.beam.length);
    m["beam.tension"] = fmt(c.beam.tension);
    m["beam.gain"] = fmt(c.beam.gain);
    m["beam.alpha"] = fmt(c.beam.alpha);
    m["beam.delay"] = fmt(c.beam.delay);
    m["beam.xi"] = fmt(c.beam.xi);
    m["grid.N"] = std::to_string(c.n_cells);
    m["grid.M"] = std::to_string(c.steps_per_delay);
    m["grid.t_f"] = fmt(c.horizon);
    if (c.weights) {
        m["weights.delta1"] = fmt(c.weights->delta1);
        m["weights.delta2"] = fmt(c.weights->delta2);
    }
    m["initial.preset"] = c.initial_preset;
    m["output.stride"] = std::to_string(c.output_stride);
    m["sweep.alpha_min"] = fmt(c.sweep_alpha_min);
    m["sweep.alpha_max"] = fmt(c.sweep_alpha_max);
    m["sweep.alpha_count"] = std::to_string(c.sweep_alpha_count);
    m["sweep.xi_min"] = fmt(c.sweep_xi_min);
    m["sweep.xi_max"] = fmt(c.sweep_xi_max);
    m["sweep.xi_count"] = std::to_string(c.sweep_xi_count);
    m["region.alpha_min"] = fmt(c.region_alpha_min);
    m["region.alpha_max"] = fmt(c.region_alpha_max);
    m["region.xi_min"] = fmt(c.region_xi_min);
    m["region.xi_max"] = fmt(c.region_xi_max);
    m["region.resolution"] = std::to_string(c.region_resolution);
    m["resolvent.preset"] = c.resolvent_preset;
    m["resolvent.seed"] = std::to_string(c.resolvent_seed);
    m["resolvent.N"] = std::to_string(c.resolvent_n);
    return m;
}

std::pair<LyapunovWeights, LyapunovWeights> effective_weights(const RunConfig& cfg) {
    if (cfg.weights) return {*cfg.weights, *cfg.weights};
    const WeightSelection sel = default_weights(cfg.beam);
    return {sel.weights, sel.strict_weights};
}

}  // namespace delaybeam

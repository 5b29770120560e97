#include "decosim/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace decosim::scenario {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ConfigError("config error at '" + path + "': " + what);
}

void require_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
    if (!obj.is_object()) fail(path, "expected an object");
    for (const auto& item : obj.items()) {
        if (!allowed.contains(item.key())) fail(path + "." + item.key(), "unknown key");
    }
}

template <typename T>
T get_field(const json& obj, const std::string& path, const char* key) {
    if (!obj.contains(key)) fail(path + "." + key, "missing required key");
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception& e) {
        fail(path + "." + key, e.what());
    }
}

template <typename T>
T get_field_or(const json& obj, const std::string& path, const char* key, T fallback) {
    if (!obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception& e) {
        fail(path + "." + key, e.what());
    }
}

QubitConfig parse_qubit(const json& obj) {
    require_keys(obj, "qubit", {"E_ch", "E_J", "n_g"});
    QubitConfig q;
    q.e_ch = get_field_or(obj, "qubit", "E_ch", q.e_ch);
    q.e_j = get_field_or(obj, "qubit", "E_J", q.e_j);
    q.n_g = get_field_or(obj, "qubit", "n_g", q.n_g);
    return q;
}

BathConfig parse_bath(const json& obj) {
    require_keys(obj, "bath",
                 {"N0", "N", "f_low_MHz", "f_high_MHz", "T_mK", "eta", "omega_c_MHz",
                  "cutoff_sign", "freq_convention", "g_prime_override"});
    BathConfig b;
    b.n0 = get_field_or(obj, "bath", "N0", b.n0);
    b.n = get_field_or(obj, "bath", "N", b.n);
    b.f_low_MHz = get_field_or(obj, "bath", "f_low_MHz", b.f_low_MHz);
    b.f_high_MHz = get_field_or(obj, "bath", "f_high_MHz", b.f_high_MHz);
    b.t_mK = get_field_or(obj, "bath", "T_mK", b.t_mK);
    b.eta = get_field_or(obj, "bath", "eta", b.eta);
    b.omega_c_MHz = get_field_or(obj, "bath", "omega_c_MHz", b.f_high_MHz);
    try {
        b.cutoff_sign = bath::cutoff_sign_from_string(
            get_field_or<std::string>(obj, "bath", "cutoff_sign", "paper_literal").c_str());
        b.freq_convention = units::freq_convention_from_string(
            get_field_or<std::string>(obj, "bath", "freq_convention", "angular").c_str());
    } catch (const std::domain_error& e) {
        fail("bath", e.what());
    }
    if (obj.contains("g_prime_override") && !obj.at("g_prime_override").is_null())
        b.g_prime_override = get_field<std::vector<double>>(obj, "bath", "g_prime_override");
    return b;
}

ScanConfig parse_scan(const json& obj) {
    require_keys(obj, "scan", {"t_min", "t_max", "points", "log_or_linear"});
    ScanConfig s;
    s.t_min = get_field_or(obj, "scan", "t_min", s.t_min);
    s.t_max = get_field_or(obj, "scan", "t_max", s.t_max);
    s.points = get_field_or(obj, "scan", "points", s.points);
    const std::string kind = get_field_or<std::string>(obj, "scan", "log_or_linear", "linear");
    if (kind == "linear")
        s.grid = GridKind::linear;
    else if (kind == "log")
        s.grid = GridKind::log;
    else
        fail("scan.log_or_linear", "must be 'linear' or 'log'");
    return s;
}

MeasureConfig parse_measure(const json& obj) {
    require_keys(obj, "measure", {"threshold", "bloch_grid", "refinement_rounds"});
    MeasureConfig m;
    m.threshold = get_field_or(obj, "measure", "threshold", m.threshold);
    if (obj.contains("bloch_grid")) {
        const auto grid = get_field<std::vector<int>>(obj, "measure", "bloch_grid");
        if (grid.size() != 2) fail("measure.bloch_grid", "expected [theta_points, phi_points]");
        m.bloch_theta = grid[0];
        m.bloch_phi = grid[1];
    }
    m.refinement_rounds = get_field_or(obj, "measure", "refinement_rounds", m.refinement_rounds);
    return m;
}

OracleConfig parse_oracle(const json& obj) {
    require_keys(obj, "oracle", {"mode", "n_max", "samples", "seed"});
    OracleConfig o;
    try {
        o.mode = oracle::sampler_mode_from_string(
            get_field_or<std::string>(obj, "oracle", "mode", "enumerate").c_str());
    } catch (const std::domain_error& e) {
        fail("oracle.mode", e.what());
    }
    o.n_max = get_field_or(obj, "oracle", "n_max", o.n_max);
    o.samples = get_field_or(obj, "oracle", "samples", o.samples);
    o.seed = get_field_or(obj, "oracle", "seed", o.seed);
    return o;
}

ScenarioConfig parse_config(const json& root) {
    require_keys(root, "config", {"qubit", "bath", "scan", "measure", "oracle"});
    ScenarioConfig config;
    if (root.contains("qubit")) config.qubit = parse_qubit(root.at("qubit"));
    if (root.contains("bath")) config.bath = parse_bath(root.at("bath"));
    if (root.contains("scan")) config.scan = parse_scan(root.at("scan"));
    if (root.contains("measure")) config.measure = parse_measure(root.at("measure"));
    if (root.contains("oracle")) config.oracle = parse_oracle(root.at("oracle"));
    config.validate();
    return config;
}

json to_json(const ScenarioConfig& c) {
    json root;
    root["qubit"] = {{"E_ch", c.qubit.e_ch}, {"E_J", c.qubit.e_j}, {"n_g", c.qubit.n_g}};
    root["bath"] = {{"N0", c.bath.n0},
                    {"N", c.bath.n},
                    {"f_low_MHz", c.bath.f_low_MHz},
                    {"f_high_MHz", c.bath.f_high_MHz},
                    {"T_mK", c.bath.t_mK},
                    {"eta", c.bath.eta},
                    {"omega_c_MHz", c.bath.omega_c_MHz},
                    {"cutoff_sign", bath::to_string(c.bath.cutoff_sign)},
                    {"freq_convention", units::to_string(c.bath.freq_convention)},
                    {"g_prime_override", c.bath.g_prime_override
                                             ? json(*c.bath.g_prime_override)
                                             : json(nullptr)}};
    root["scan"] = {{"t_min", c.scan.t_min},
                    {"t_max", c.scan.t_max},
                    {"points", c.scan.points},
                    {"log_or_linear", c.scan.grid == GridKind::linear ? "linear" : "log"}};
    root["measure"] = {{"threshold", c.measure.threshold},
                       {"bloch_grid", json::array({c.measure.bloch_theta, c.measure.bloch_phi})},
                       {"refinement_rounds", c.measure.refinement_rounds}};
    root["oracle"] = {{"mode", oracle::to_string(c.oracle.mode)},
                      {"n_max", c.oracle.n_max},
                      {"samples", c.oracle.samples},
                      {"seed", c.oracle.seed}};
    return root;
}

} // namespace

void ScenarioConfig::validate() const {
    if (!(qubit.e_j > 0.0)) throw ConfigError("config error at 'qubit.E_J': must be positive");
    if (qubit.e_ch < 0.0) throw ConfigError("config error at 'qubit.E_ch': must be non-negative");
    if (bath.n0 < 1 || bath.n < bath.n0)
        throw ConfigError("config error at 'bath.N0/N': must satisfy N >= N0 >= 1");
    if (!(bath.f_low_MHz > 0.0) || bath.f_low_MHz > bath.f_high_MHz)
        throw ConfigError("config error at 'bath.f_low_MHz/f_high_MHz': need 0 < f_low <= f_high");
    if (!(bath.t_mK > 0.0)) throw ConfigError("config error at 'bath.T_mK': must be positive");
    if (bath.eta < 0.0) throw ConfigError("config error at 'bath.eta': must be non-negative");
    if (!(bath.omega_c_MHz > 0.0))
        throw ConfigError("config error at 'bath.omega_c_MHz': must be positive");
    if (bath.g_prime_override &&
        bath.g_prime_override->size() != static_cast<std::size_t>(bath.n - bath.n0 + 1))
        throw ConfigError("config error at 'bath.g_prime_override': needs one value per mode");
    if (scan.points < 2) throw ConfigError("config error at 'scan.points': need at least 2");
    if (!(scan.t_max > scan.t_min))
        throw ConfigError("config error at 'scan.t_min/t_max': need t_min < t_max");
    if (scan.grid == GridKind::log && !(scan.t_min > 0.0))
        throw ConfigError("config error at 'scan.t_min': log grids need t_min > 0");
    if (!(measure.threshold > 0.0))
        throw ConfigError("config error at 'measure.threshold': must be positive");
    if (measure.bloch_theta < 2 || measure.bloch_phi < 1)
        throw ConfigError("config error at 'measure.bloch_grid': need at least [2, 1]");
    if (measure.refinement_rounds < 0)
        throw ConfigError("config error at 'measure.refinement_rounds': must be >= 0");
    if (oracle.n_max < 0) throw ConfigError("config error at 'oracle.n_max': must be >= 0");
    if (oracle.mode == decosim::oracle::SamplerMode::monte_carlo && oracle.samples < 1000)
        throw ConfigError("config error at 'oracle.samples': monte_carlo needs >= 1000");
}

ScenarioConfig preset(std::string_view name) {
    // eta calibrated with `decosim calibrate-eta --preset fig1 --target 8e-5`
    // under the angular MHz convention.
    constexpr double k_calibrated_eta = 2.3318786426770452e-08;

    ScenarioConfig config;
    config.qubit = {200.0, 51.8, 0.5};
    config.bath.n0 = 1;
    config.bath.n = 20;
    config.bath.f_low_MHz = 1.0;
    config.bath.f_high_MHz = 20.0;
    config.bath.omega_c_MHz = 20.0;
    config.bath.eta = k_calibrated_eta;
    config.scan.t_min = 0.0;
    config.scan.t_max = 4.0 / 51.8;  // four elementary gate times
    config.scan.points = 400;
    config.scan.grid = GridKind::linear;

    if (name == "fig1") {
        config.bath.t_mK = 30.0;
    } else if (name == "fig2") {
        config.bath.t_mK = 0.3;
    } else {
        throw ConfigError("unknown preset '" + std::string(name) + "' (expected fig1 or fig2)");
    }
    return config;
}

ScenarioConfig from_json_string(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return parse_config(root);
}

ScenarioConfig from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return from_json_string(buffer.str());
}

std::string to_json_string(const ScenarioConfig& config) {
    return to_json(config).dump();
}

void apply_override(ScenarioConfig& config, std::string_view key_equals_value) {
    const auto eq = key_equals_value.find('=');
    if (eq == std::string_view::npos)
        throw ConfigError("override must look like section.key=value, got '" +
                          std::string(key_equals_value) + "'");
    const std::string key(key_equals_value.substr(0, eq));
    const std::string value(key_equals_value.substr(eq + 1));

    const auto dot = key.find('.');
    if (dot == std::string::npos)
        throw ConfigError("override key must be section.key, got '" + key + "'");
    const std::string section = key.substr(0, dot);
    const std::string field = key.substr(dot + 1);

    json root = to_json(config);
    if (!root.contains(section) || !root.at(section).contains(field))
        throw ConfigError("override references unknown key '" + key + "'");
    json parsed;
    try {
        parsed = json::parse(value);
    } catch (const json::parse_error&) {
        parsed = value;  // bare strings like cutoff_sign=standard
    }
    root[section][field] = parsed;
    config = parse_config(root);
}

prop::Context make_context(const ScenarioConfig& config) {
    const qubit::Params q = qubit::build_qubit(config.qubit.e_ch, config.qubit.e_j, config.qubit.n_g);
    bath::OhmicSpec ohmic;
    ohmic.eta = config.bath.eta;
    ohmic.omega_c =
        units::mode_frequency_to_energy(config.bath.omega_c_MHz, config.bath.freq_convention);
    ohmic.cutoff_sign = config.bath.cutoff_sign;
    std::span<const double> overrides;
    if (config.bath.g_prime_override) overrides = *config.bath.g_prime_override;
    bath::Spec spec = bath::build_bath(config.bath.n0, config.bath.n, config.bath.f_low_MHz,
                                       config.bath.f_high_MHz, config.bath.t_mK, ohmic,
                                       config.bath.freq_convention, overrides);
    return prop::Context::make(q, std::move(spec));
}

std::vector<double> make_time_grid(const ScanConfig& scan) {
    std::vector<double> grid(static_cast<std::size_t>(scan.points));
    const double n1 = static_cast<double>(scan.points - 1);
    for (int i = 0; i < scan.points; ++i) {
        const double f = static_cast<double>(i) / n1;
        grid[static_cast<std::size_t>(i)] =
            scan.grid == GridKind::linear
                ? scan.t_min + (scan.t_max - scan.t_min) * f
                : scan.t_min * std::pow(scan.t_max / scan.t_min, f);
    }
    return grid;
}

measure::SearchPolicy make_policy(const MeasureConfig& m) {
    measure::SearchPolicy policy;
    policy.theta_points = m.bloch_theta;
    policy.phi_points = m.bloch_phi;
    policy.refinement_rounds = m.refinement_rounds;
    return policy;
}

oracle::SectorSampler make_sampler(const OracleConfig& o) {
    oracle::SectorSampler sampler;
    sampler.mode = o.mode;
    sampler.n_max = o.n_max;
    sampler.samples = o.samples;
    sampler.seed = o.seed;
    return sampler;
}

} // namespace decosim::scenario

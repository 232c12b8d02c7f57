#include "ffs/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ffs/errors.hpp"

namespace ffsim {

using nlohmann::json;

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double value) { return 10.0 * std::log10(value); }

namespace {

std::string join_path(const std::string& prefix, const std::string& key) {
    return prefix.empty() ? key : prefix + "." + key;
}

const json& require(const json& node, const std::string& prefix, const std::string& key) {
    if (!node.is_object())
        throw ConfigError(prefix.empty() ? "$" : prefix, "expected an object");
    auto it = node.find(key);
    if (it == node.end()) throw ConfigError(join_path(prefix, key), "missing required field");
    return *it;
}

double require_number(const json& node, const std::string& prefix, const std::string& key) {
    const json& v = require(node, prefix, key);
    if (!v.is_number()) throw ConfigError(join_path(prefix, key), "expected a number");
    return v.get<double>();
}

double number_or(const json& node, const std::string& prefix, const std::string& key,
                 double fallback) {
    if (!node.is_object() || !node.contains(key)) return fallback;
    const json& v = node.at(key);
    if (!v.is_number()) throw ConfigError(join_path(prefix, key), "expected a number");
    return v.get<double>();
}

std::vector<double> number_list(const json& node, const std::string& prefix,
                                const std::string& key) {
    if (!node.is_object() || !node.contains(key)) return {};
    const json& v = node.at(key);
    if (!v.is_array()) throw ConfigError(join_path(prefix, key), "expected an array");
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& e : v) {
        if (!e.is_number()) throw ConfigError(join_path(prefix, key), "expected numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

std::string fnv1a_hex(const std::string& text) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

ServiceClass parse_service(const json& node, const std::string& prefix, double area_m2,
                           double* density_per_m2) {
    ServiceClass svc;
    const json& kind = require(node, prefix, "kind");
    std::string k = kind.is_string() ? kind.get<std::string>() : "";
    if (k == "embb")
        svc.name = ServiceKind::Embb;
    else if (k == "urllc")
        svc.name = ServiceKind::Urllc;
    else
        throw ConfigError(join_path(prefix, "kind"), "must be \"embb\" or \"urllc\"");
    double density_km2 = require_number(node, prefix, "density_per_km2");
    if (density_km2 < 0.0)
        throw ConfigError(join_path(prefix, "density_per_km2"), "must be >= 0");
    *density_per_m2 = density_km2 * 1e-6;
    svc.user_count = *density_per_m2 * area_m2;
    svc.arrival_rate = require_number(node, prefix, "arrival_rate");
    svc.cycles_per_packet = require_number(node, prefix, "cycles_per_packet");
    svc.tti_s = require_number(node, prefix, "tti_s");
    svc.delay_budget_s = require_number(node, prefix, "delay_budget_s");
    svc.reliability_target = require_number(node, prefix, "reliability_target");
    svc.sinr_threshold_linear = db_to_linear(require_number(node, prefix, "sinr_threshold_db"));
    svc.gamma_linear = db_to_linear(number_or(node, prefix, "gamma_db", 0.0));
    return svc;
}

ModeProfile parse_mode(const json& node, const std::string& prefix) {
    ModeProfile m;
    m.beta_cu = require_number(node, prefix, "beta_cu");
    m.beta_du = 1.0 - m.beta_cu;
    m.control_overhead_s = require_number(node, prefix, "control_overhead_s");
    m.users_per_du = require_number(node, prefix, "users_per_du");
    return m;
}

}  // namespace

McConfig ExperimentConfig::mc() const {
    McConfig cfg;
    cfg.trials = experiment.trials;
    cfg.seed = experiment.seed;
    cfg.warmup_packets = experiment.warmup_packets;
    cfg.horizon_packets = experiment.horizon_packets;
    cfg.confidence = experiment.confidence;
    return cfg;
}

CfsmaOptions ExperimentConfig::cfsma_options() const {
    CfsmaOptions opt;
    opt.tol = experiment.tol;
    opt.gamma_max = db_to_linear(experiment.gamma_max_db);
    opt.outer_grid = experiment.outer_grid;
    opt.discipline = experiment.discipline;
    return opt;
}

ExperimentConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError("$", std::string("invalid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("$", "top level must be an object");

    ExperimentConfig cfg;
    cfg.schema_version = static_cast<int>(number_or(root, "", "schema_version", 1));
    if (cfg.schema_version != 1)
        throw ConfigError("schema_version", "unsupported schema version");

    const json& net = require(root, "", "network");
    NetworkModel& model = cfg.scenario.model;
    model.du_density = require_number(net, "network", "du_density_per_km2") * 1e-6;
    model.pathloss_exponent = require_number(net, "network", "pathloss_exponent");
    model.fading_mean = number_or(net, "network", "fading_mean", 1.0);
    model.tx_power_dbm = require_number(net, "network", "tx_power_dbm");
    model.noise_dbm = require_number(net, "network", "noise_dbm");
    model.window_side_m = require_number(net, "network", "window_side_m");
    model.max_comp_dus = static_cast<int>(number_or(net, "network", "max_comp_dus", 2));

    const json& services = require(root, "", "services");
    if (!services.is_array() || services.empty())
        throw ConfigError("services", "expected a non-empty array");
    for (std::size_t i = 0; i < services.size(); ++i) {
        std::string prefix = "services[" + std::to_string(i) + "]";
        double density = 0.0;
        cfg.scenario.services.push_back(
            parse_service(services[i], prefix, model.area_m2(), &density));
        model.user_densities.push_back(density);
    }

    const json& modes = require(root, "", "modes");
    cfg.scenario.modes.cm = parse_mode(require(modes, "modes", "cm"), "modes.cm");
    cfg.scenario.modes.dm = parse_mode(require(modes, "modes", "dm"), "modes.dm");

    const json& server = require(root, "", "server");
    cfg.scenario.server.cu_rate = require_number(server, "server", "cu_rate");
    cfg.scenario.server.du_efficiency = require_number(server, "server", "du_efficiency");
    cfg.scenario.server.du_count =
        static_cast<int>(require_number(server, "server", "du_count"));
    cfg.scenario.server.retrans_time_s = require_number(server, "server", "retrans_time_s");

    if (root.contains("experiment")) {
        const json& exp = root.at("experiment");
        ExperimentSettings& e = cfg.experiment;
        e.seed = static_cast<std::uint64_t>(number_or(exp, "experiment", "seed", 1));
        e.trials =
            static_cast<std::size_t>(number_or(exp, "experiment", "trials", 10000));
        e.warmup_packets = static_cast<std::size_t>(
            number_or(exp, "experiment", "warmup_packets", 2000));
        e.horizon_packets = static_cast<std::size_t>(
            number_or(exp, "experiment", "horizon_packets", 200000));
        e.confidence = number_or(exp, "experiment", "confidence", 0.95);
        e.gamma_grid_db = number_list(exp, "experiment", "gamma_grid_db");
        e.threshold_grid_db = number_list(exp, "experiment", "threshold_grid_db");
        e.axis_grid = number_list(exp, "experiment", "axis_grid");
        e.tol = number_or(exp, "experiment", "tol", 1e-3);
        e.gamma_max_db = number_or(exp, "experiment", "gamma_max_db", 40.0);
        e.outer_grid = static_cast<int>(number_or(exp, "experiment", "outer_grid", 101));
        if (exp.contains("discipline")) {
            const json& d = exp.at("discipline");
            std::string name = d.is_string() ? d.get<std::string>() : "";
            if (name == "ps")
                e.discipline = Discipline::PS;
            else if (name == "fcfs")
                e.discipline = Discipline::FCFS;
            else
                throw ConfigError("experiment.discipline", "must be \"ps\" or \"fcfs\"");
        }
        if (e.outer_grid < 2) throw ConfigError("experiment.outer_grid", "must be >= 2");
        if (!(e.tol > 0.0)) throw ConfigError("experiment.tol", "must be > 0");
    }

    try {
        cfg.scenario.validate();
    } catch (const Error& e) {
        throw ConfigError("scenario", e.what());
    }

    cfg.config_hash = fnv1a_hex(root.dump());
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("$", "cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string default_config_json() {
    // Baseline parameter set; density units users/km^2, dB only in *_db(m)
    // fields, seconds in *_s fields.
    return R"({
  "schema_version": 1,
  "network": {
    "du_density_per_km2": 20,
    "pathloss_exponent": 4,
    "fading_mean": 1.0,
    "tx_power_dbm": 30,
    "noise_dbm": -90,
    "window_side_m": 1000,
    "max_comp_dus": 2
  },
  "services": [
    {
      "kind": "embb",
      "density_per_km2": 200,
      "arrival_rate": 100,
      "cycles_per_packet": 50000,
      "tti_s": 0.0000625,
      "delay_budget_s": 0.01,
      "reliability_target": 0.9,
      "sinr_threshold_db": 0,
      "gamma_db": 0
    },
    {
      "kind": "urllc",
      "density_per_km2": 50,
      "arrival_rate": 10,
      "cycles_per_packet": 2500,
      "tti_s": 0.0000625,
      "delay_budget_s": 0.001,
      "reliability_target": 0.99999,
      "sinr_threshold_db": 0,
      "gamma_db": 0
    }
  ],
  "modes": {
    "cm": { "beta_cu": 0.7, "control_overhead_s": 0.00005, "users_per_du": 2 },
    "dm": { "beta_cu": 0.3, "control_overhead_s": 0.0, "users_per_du": 1 }
  },
  "server": {
    "cu_rate": 1e9,
    "du_efficiency": 0.2,
    "du_count": 20,
    "retrans_time_s": 0.0001
  },
  "experiment": {
    "seed": 1,
    "trials": 10000,
    "confidence": 0.95,
    "gamma_grid_db": [0, 5, 10, 15, 20, 25],
    "threshold_grid_db": [-10, -5, 0, 5, 10, 15, 20, 25],
    "axis_grid": [50, 100, 150, 200, 250, 300],
    "discipline": "ps",
    "tol": 0.001,
    "gamma_max_db": 40,
    "outer_grid": 101
  }
})";
}

}  // namespace ffsim

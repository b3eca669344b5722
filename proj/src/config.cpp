#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "dengue/errors.hpp"
#include "dengue/scenario.hpp"

namespace dengue {

namespace {

using KeySet = std::set<std::string>;

void reject_unknown(const YAML::Node& node, const std::string& section, const KeySet& allowed) {
    for (const auto& kv : node) {
        const auto key = kv.first.as<std::string>();
        if (!allowed.count(key)) {
            const std::string field = section.empty() ? key : section + "." + key;
            throw ValidationError(field, field + ": unknown key");
        }
    }
}

YAML::Node section(const YAML::Node& root, const std::string& name, bool required) {
    const YAML::Node node = root[name];
    if (!node) {
        if (required) throw ValidationError(name, name + ": section required");
        return node;
    }
    if (!node.IsMap()) throw ValidationError(name, name + ": must be a mapping");
    return node;
}

template <typename T>
T convert(const YAML::Node& node, const std::string& field) {
    try {
        return node.as<T>();
    } catch (const YAML::Exception&) {
        throw ValidationError(field.substr(field.rfind('.') + 1), field + ": not a valid value");
    }
}

double required_number(const YAML::Node& sec, const std::string& sec_name, const std::string& key,
                       const char* why = "required") {
    const std::string field = sec_name + "." + key;
    if (!sec || !sec[key]) throw ValidationError(key, key + " " + why);
    return convert<double>(sec[key], field);
}

template <typename T>
void optional_value(const YAML::Node& sec, const std::string& sec_name, const std::string& key, T& out) {
    if (sec && sec[key]) out = convert<T>(sec[key], sec_name + "." + key);
}

std::size_t count_value(const YAML::Node& sec, const std::string& sec_name, const std::string& key,
                        std::size_t fallback) {
    if (!sec || !sec[key]) return fallback;
    const double v = convert<double>(sec[key], sec_name + "." + key);
    if (!(v >= 1.0) || v != std::floor(v)) throw ValidationError(key, sec_name + "." + key + ": must be a positive integer");
    return static_cast<std::size_t>(v);
}

constexpr const char* kNoPublishedValue = "required: no published value, set it explicitly";

ModelParams read_params(const YAML::Node& root) {
    const YAML::Node sec = section(root, "params", true);
    reject_unknown(sec, "params", {"n_h", "bite_rate", "beta_mh", "beta_hm", "mu_h", "mu_m", "mu_a", "eta_h", "eta_a",
                                   "phi", "k", "sigma"});
    ModelParams p;
    p.n_h = required_number(sec, "params", "n_h");
    p.bite_rate = required_number(sec, "params", "bite_rate");
    p.beta_mh = required_number(sec, "params", "beta_mh");
    p.beta_hm = required_number(sec, "params", "beta_hm");
    p.mu_h = required_number(sec, "params", "mu_h");
    p.mu_m = required_number(sec, "params", "mu_m");
    p.mu_a = required_number(sec, "params", "mu_a", kNoPublishedValue);
    p.eta_h = required_number(sec, "params", "eta_h");
    p.eta_a = required_number(sec, "params", "eta_a", kNoPublishedValue);
    p.phi = required_number(sec, "params", "phi");
    p.k = required_number(sec, "params", "k");
    p.sigma = required_number(sec, "params", "sigma");
    return p;
}

CostWeights read_weights(const YAML::Node& root, std::vector<std::string>& warnings) {
    const YAML::Node sec = section(root, "weights", false);
    if (sec) reject_unknown(sec, "weights", {"gamma_i", "gamma_v"});
    CostWeights w;
    for (auto [key, slot] : {std::pair{"gamma_i", &w.gamma_i}, std::pair{"gamma_v", &w.gamma_v}}) {
        if (sec && sec[key]) {
            *slot = convert<double>(sec[key], std::string("weights.") + key);
        } else {
            warnings.push_back(std::string(key) + " not set; using 1.0 (inferred normalization, not a published value)");
        }
    }
    return w;
}

std::vector<Method> read_methods(const YAML::Node& root) {
    if (!root["method"]) return {Method::Indirect, Method::Direct};
    const auto m = convert<std::string>(root["method"], "method");
    if (m == "indirect") return {Method::Indirect};
    if (m == "direct") return {Method::Direct};
    if (m == "both") return {Method::Indirect, Method::Direct};
    throw ValidationError("method", "method: expected indirect, direct or both");
}

std::vector<Regime> read_controls(const YAML::Node& root) {
    const YAML::Node node = root["controls"];
    if (!node) return {Regime::optimal(), Regime::none(), Regime::full()};
    if (!node.IsSequence() || node.size() == 0)
        throw ValidationError("controls", "controls: expected a non-empty list");

    std::vector<Regime> out;
    for (const auto& item : node) {
        const auto text = convert<std::string>(item, "controls");
        Regime r;
        if (text == "optimal") {
            r = Regime::optimal();
        } else if (text == "none") {
            r = Regime::none();
        } else if (text == "full") {
            r = Regime::full();
        } else {
            const double level = convert<double>(item, "controls");
            if (!(level >= 0.0 && level <= 1.0))
                throw ValidationError("controls", "controls: constant level must lie in [0, 1]");
            r = Regime::constant(level);
        }
        for (const auto& seen : out)
            if (seen == r) throw ValidationError("controls", "controls: duplicate regime " + r.label());
        out.push_back(r);
    }
    return out;
}

} // namespace

ScenarioConfig parse_config(const std::string& text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw ParseError(std::string("malformed config: ") + e.what());
    }
    if (!root.IsMap()) throw ParseError("malformed config: top level must be a mapping");
    reject_unknown(root, "", {"params", "weights", "t_f", "h", "initial", "method", "controls", "sweep", "direct",
                              "output_dir"});

    ScenarioConfig cfg;
    cfg.params = read_params(root);
    cfg.weights = read_weights(root, cfg.warnings);

    if (!root["t_f"]) throw ValidationError("t_f", "t_f required");
    cfg.t_f = convert<double>(root["t_f"], "t_f");
    optional_value(root, "", "h", cfg.h);

    const YAML::Node init = section(root, "initial", true);
    reject_unknown(init, "initial", {"infected_humans_0", "m", "aquatic_fill"});
    cfg.initial.infected_humans_0 = required_number(init, "initial", "infected_humans_0");
    cfg.initial.m = required_number(init, "initial", "m");
    cfg.initial.aquatic_fill = required_number(init, "initial", "aquatic_fill");

    cfg.methods = read_methods(root);
    cfg.controls = read_controls(root);

    if (const YAML::Node sw = section(root, "sweep", false)) {
        reject_unknown(sw, "sweep", {"relaxation", "min_relaxation", "patience", "tol", "max_iters"});
        optional_value(sw, "sweep", "relaxation", cfg.sweep.relaxation);
        optional_value(sw, "sweep", "min_relaxation", cfg.sweep.min_relaxation);
        optional_value(sw, "sweep", "tol", cfg.sweep.tol);
        cfg.sweep.patience = count_value(sw, "sweep", "patience", cfg.sweep.patience);
        cfg.sweep.max_iters = count_value(sw, "sweep", "max_iters", cfg.sweep.max_iters);
    }
    if (const YAML::Node d = section(root, "direct", false)) {
        reject_unknown(d, "direct", {"n_intervals", "grad_tol", "max_iters", "ls_shrink", "initial_step", "armijo"});
        cfg.direct.n_intervals = count_value(d, "direct", "n_intervals", cfg.direct.n_intervals);
        cfg.direct.max_iters = count_value(d, "direct", "max_iters", cfg.direct.max_iters);
        optional_value(d, "direct", "grad_tol", cfg.direct.grad_tol);
        optional_value(d, "direct", "ls_shrink", cfg.direct.ls_shrink);
        optional_value(d, "direct", "initial_step", cfg.direct.initial_step);
        optional_value(d, "direct", "armijo", cfg.direct.armijo);
    }
    if (root["output_dir"]) cfg.output_dir = convert<std::string>(root["output_dir"], "output_dir");

    cfg.validate();
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

} // namespace dengue

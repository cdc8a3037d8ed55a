#include "heunlab/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "heunlab/presets.hpp"

namespace heun {

std::string to_string(ExperimentKind k) {
    switch (k) {
    case ExperimentKind::spectrum: return "spectrum";
    case ExperimentKind::svd: return "svd";
    case ExperimentKind::orbit: return "orbit";
    case ExperimentKind::special_cases: return "special-cases";
    case ExperimentKind::rank_one: return "rank-one";
    case ExperimentKind::tau_probe: return "tau-probe";
    }
    return "unknown";
}

std::optional<ExperimentKind> experiment_from_string(std::string_view s) {
    if (s == "spectrum") return ExperimentKind::spectrum;
    if (s == "svd") return ExperimentKind::svd;
    if (s == "orbit") return ExperimentKind::orbit;
    if (s == "special-cases") return ExperimentKind::special_cases;
    if (s == "rank-one") return ExperimentKind::rank_one;
    if (s == "tau-probe") return ExperimentKind::tau_probe;
    return std::nullopt;
}

void ExperimentConfig::validate() const {
    if (!(r > 0.0)) throw usage_error("config: r must be positive");
    if (!(alpha > 0.0)) throw usage_error("config: alpha must be positive");
    if (!(epsilon > 0.0)) throw usage_error("config: eps must be positive");
    if (basis_size < 2) throw usage_error("config: basis-size must be at least 2");
    if (quad_size < 2) throw usage_error("config: quad-size must be at least 2");
    if (!preset.empty() && !find_preset(preset))
        throw usage_error("config: unknown preset '" + preset + "'");
    if (!preset.empty() && g)
        throw usage_error("config: give either a preset or explicit couplings, not both");
}

CouplingVector ExperimentConfig::coupling() const {
    if (!preset.empty()) {
        const auto p = find_preset(preset);
        if (!p) throw usage_error("config: unknown preset '" + preset + "'");
        return *p;
    }
    if (g) return *g;
    throw usage_error("config: this experiment needs --g or --preset");
}

CouplingVector parse_coupling(const std::string& text) {
    CouplingVector v;
    std::stringstream ss(text);
    std::string item;
    int n = 0;
    while (std::getline(ss, item, ',')) {
        if (n >= 4) throw usage_error("couplings: expected exactly four comma-separated numbers");
        try {
            size_t used = 0;
            v.g[static_cast<size_t>(n)] = std::stod(item, &used);
            while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
            if (used != item.size()) throw usage_error("couplings: trailing characters in '" + item + "'");
        } catch (const std::invalid_argument&) {
            throw usage_error("couplings: cannot parse '" + item + "'");
        }
        ++n;
    }
    if (n != 4) throw usage_error("couplings: expected exactly four comma-separated numbers");
    return v;
}

ExperimentConfig load_config_file(const std::string& path, const ExperimentConfig& base) {
    std::ifstream in(path);
    if (!in) throw usage_error("config: cannot open '" + path + "'");
    ExperimentConfig cfg = base;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto notspace = [](unsigned char c) { return !std::isspace(c); };
        line.erase(line.begin(), std::find_if(line.begin(), line.end(), notspace));
        line.erase(std::find_if(line.rbegin(), line.rend(), notspace).base(), line.end());
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw usage_error("config: line " + std::to_string(lineno) + " is not key = value");
        std::string key = line.substr(0, eq);
        std::string val = line.substr(eq + 1);
        key.erase(std::find_if(key.rbegin(), key.rend(), notspace).base(), key.end());
        val.erase(val.begin(), std::find_if(val.begin(), val.end(), notspace));
        // strip optional quotes around strings
        if (val.size() >= 2 && val.front() == '"' && val.back() == '"')
            val = val.substr(1, val.size() - 2);

        try {
            if (key == "r") cfg.r = std::stod(val);
            else if (key == "alpha") cfg.alpha = std::stod(val);
            else if (key == "eps" || key == "epsilon") cfg.epsilon = std::stod(val);
            else if (key == "basis-size" || key == "basis_size") cfg.basis_size = std::stoi(val);
            else if (key == "quad-size" || key == "quad_size") cfg.quad_size = std::stoi(val);
            else if (key == "g") cfg.g = parse_coupling(val);
            else if (key == "preset") cfg.preset = val;
            else if (key == "experiment") {
                const auto k = experiment_from_string(val);
                if (!k) throw usage_error("config: unknown experiment '" + val + "'");
                cfg.experiment = *k;
            } else if (key == "out") cfg.out_path = val;
            else if (key == "format") {
                if (val == "json") cfg.format = OutputFormat::json;
                else if (val == "csv") cfg.format = OutputFormat::csv;
                else throw usage_error("config: format must be json or csv");
            } else if (key == "seed") cfg.seed = std::stoull(val);
            else throw usage_error("config: unknown key '" + key + "' on line " + std::to_string(lineno));
        } catch (const std::invalid_argument&) {
            throw usage_error("config: cannot parse value for '" + key + "' on line " + std::to_string(lineno));
        }
    }
    return cfg;
}

} // namespace heun

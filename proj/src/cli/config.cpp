#include "qar/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "qar/errors.hpp"

namespace qar::cli {

namespace {

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = [] {
        std::set<std::string> k = {"n", "omega", "counted", "workers", "seed", "out"};
        for (const char* res : {"cold", "hot", "work"})
            for (const char* field : {"gamma_bar", "epsilon", "delta", "beta", "coupling"})
                k.insert(std::string(res) + "." + field);
        for (const char* prefix : {"sweep", "sweep2"})
            for (const char* field : {"param", "scale", "min", "max", "count"})
                k.insert(std::string(prefix) + "." + field);
        for (const char* field :
             {"cutoff", "beta_init", "beta_final", "threshold", "t_max", "n_min",
              "n_max", "trajectory_n", "trajectory_points"})
            k.insert(std::string("dynamics.") + field);
        for (const char* field : {"gamma_bar", "epsilon", "delta", "cutoff",
                                  "omega_min", "omega_max", "count", "scale"})
            k.insert(std::string("rcmap.") + field);
        return k;
    }();
    return keys;
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

} // namespace

KeyValueConfig KeyValueConfig::defaults() { return KeyValueConfig{}; }

KeyValueConfig KeyValueConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    KeyValueConfig cfg;
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
                              ": expected 'key = value'");
        cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

void KeyValueConfig::set(const std::string& key, const std::string& value) {
    if (known_keys().count(key) == 0)
        throw ConfigError("unknown config key '" + key + "'");
    if (value.empty()) throw ConfigError("empty value for key '" + key + "'");
    values_[key] = value;
}

void KeyValueConfig::apply_overrides(const std::vector<std::string>& assignments) {
    for (const auto& item : assignments) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw ConfigError("--set expects key=value, got '" + item + "'");
        set(trim(item.substr(0, eq)), trim(item.substr(eq + 1)));
    }
}

bool KeyValueConfig::has(const std::string& key) const {
    return values_.count(key) != 0;
}

std::string KeyValueConfig::get_string(const std::string& key,
                                       const std::string& fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
        std::size_t pos = 0;
        const double value = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing junk");
        return value;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': cannot parse '" + it->second +
                          "' as a number");
    }
}

int KeyValueConfig::get_int(const std::string& key, int fallback) const {
    const double value = get_double(key, fallback);
    if (std::abs(value - std::round(value)) > 1e-9)
        throw ConfigError("key '" + key + "' must be an integer");
    return static_cast<int>(std::llround(value));
}

namespace {

CouplingKind parse_coupling(const std::string& name) {
    if (name == "jx") return CouplingKind::jx;
    if (name == "jx2_over_n") return CouplingKind::jx2_over_n;
    throw ConfigError("unknown coupling '" + name + "' (use jx or jx2_over_n)");
}

ReservoirSpec reservoir_from(const KeyValueConfig& cfg, const std::string& name,
                             Role role, double eps_default, double delta_default,
                             double beta_default, double omega) {
    ReservoirSpec spec = ReservoirSpec::thermal(
        role, cfg.get_double(name + ".gamma_bar", 1.0) * omega,
        cfg.get_double(name + ".epsilon", eps_default) * omega,
        cfg.get_double(name + ".delta", delta_default) * omega,
        cfg.get_double(name + ".beta", beta_default) / omega);
    if (cfg.has(name + ".coupling"))
        spec.coupling = parse_coupling(cfg.get_string(name + ".coupling", ""));
    spec.validate();
    return spec;
}

} // namespace

ModelConfig ModelConfig::from(const KeyValueConfig& cfg) {
    ModelConfig model;
    model.n_spins = cfg.get_int("n", 31);
    if (model.n_spins < 3 || model.n_spins % 2 == 0)
        throw ConfigError("n must be odd and >= 3");
    model.omega = cfg.get_double("omega", 1.0);
    if (!(model.omega > 0.0)) throw ConfigError("omega must be positive");
    try {
        model.counted = parse_role(cfg.get_string("counted", "cold"));
    } catch (const DomainError& err) {
        throw ConfigError(err.what());
    }
    // inputs are in units of Omega; reservoir_from rescales
    const double w = model.omega;
    model.cold = reservoir_from(cfg, "cold", Role::cold, 2.0, 0.1, 2.0, w);
    model.hot = reservoir_from(cfg, "hot", Role::hot, 6.0, 0.1, 1.0, w);
    model.work = reservoir_from(cfg, "work", Role::work, 4.0, 1e-3, 1e-3, w);
    return model;
}

std::vector<double> GridSpec::values() const {
    if (param.empty()) throw ConfigError("sweep.param is required");
    if (param == "n") {
        int lo = static_cast<int>(std::llround(min));
        int hi = static_cast<int>(std::llround(max));
        if (lo % 2 == 0) ++lo;
        if (lo < 3) lo = 3;
        std::vector<double> pts;
        if (count <= 0) {
            for (int n = lo; n <= hi; n += 2) pts.push_back(n);
        } else {
            for (int i = 0; i < count; ++i) {
                const double raw = min + (max - min) * i / (count - 1);
                int n = static_cast<int>(std::llround(raw));
                if (n % 2 == 0) ++n;
                if (pts.empty() || pts.back() != n) pts.push_back(n);
            }
        }
        if (pts.size() < 2) throw ConfigError("sweep over n needs at least 2 points");
        return pts;
    }
    if (count < 2) throw ConfigError("sweep.count must be >= 2");
    if (scale == "log") {
        if (!(min > 0.0) || !(max > 0.0))
            throw ConfigError("log grid needs positive bounds");
        std::vector<double> pts(count);
        const double ratio = std::log(max / min);
        for (int i = 0; i < count; ++i)
            pts[i] = min * std::exp(ratio * i / (count - 1));
        return pts;
    }
    if (scale != "linear") throw ConfigError("sweep.scale must be linear or log");
    std::vector<double> pts(count);
    for (int i = 0; i < count; ++i) pts[i] = min + (max - min) * i / (count - 1);
    return pts;
}

std::string format_number(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

} // namespace qar::cli

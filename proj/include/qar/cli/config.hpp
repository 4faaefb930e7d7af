#ifndef QAR_CLI_CONFIG_HPP
#define QAR_CLI_CONFIG_HPP

#include <map>
#include <string>
#include <vector>

#include "qar/reservoir.hpp"

namespace qar::cli {

/// Flat key-value configuration: one `key = value` per line, `#` comments.
/// Later assignments win, so command-line --set entries are applied last.
/// Keys outside the documented set are rejected.
class KeyValueConfig {
public:
    static KeyValueConfig from_file(const std::string& path);
    static KeyValueConfig defaults();

    void set(const std::string& key, const std::string& value);
    void apply_overrides(const std::vector<std::string>& assignments);  // "key=value"

    bool has(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;

    const std::map<std::string, std::string>& entries() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

/// One model evaluation point: system size, energy scale, three reservoirs.
struct ModelConfig {
    int n_spins = 31;
    double omega = 1.0;
    Role counted = Role::cold;
    ReservoirSpec cold;
    ReservoirSpec hot;
    ReservoirSpec work;

    static ModelConfig from(const KeyValueConfig& cfg);

    std::vector<ReservoirSpec> reservoirs() const { return {cold, hot, work}; }
};

/// 1D grid descriptor for sweeps.
struct GridSpec {
    std::string param;
    std::string scale = "linear";  // or "log"
    double min = 0.0;
    double max = 0.0;
    int count = 0;

    /// Grid points; the parameter "n" snaps to odd integers (deduplicated,
    /// whole odd range when count is omitted).
    std::vector<double> values() const;
};

std::string format_number(double value);  // 17 significant digits, locale-free

} // namespace qar::cli

#endif

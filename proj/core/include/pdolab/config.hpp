#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pdolab/common.hpp"

namespace pdolab {

/// Line-oriented key=value configuration: UTF-8, '#' comments, blank lines
/// ignored, comma-separated lists.  Keys consumed through the typed getters
/// are tracked; `finish()` rejects any key that was never consumed.
class KeyValueConfig {
  public:
    static KeyValueConfig from_file(const std::string& path);
    static KeyValueConfig from_string(const std::string& text);

    bool has(const std::string& key) const { return pairs_.count(key) != 0; }

    std::string get_string(const std::string& key);
    std::string get_string(const std::string& key, const std::string& fallback);
    double get_double(const std::string& key);
    double get_double(const std::string& key, double fallback);
    std::optional<double> get_double_opt(const std::string& key);
    long long get_int(const std::string& key);
    long long get_int(const std::string& key, long long fallback);
    std::uint64_t get_seed(const std::string& key, std::uint64_t fallback);
    bool get_bool(const std::string& key, bool fallback);
    std::vector<double> get_list(const std::string& key, const std::vector<double>& fallback);

    /// Throws ConfigError if any key was never consumed (unknown keys are errors).
    void finish() const;

    /// Deterministic echo of all pairs in sorted key order.
    std::vector<std::pair<std::string, std::string>> sorted_pairs() const;

  private:
    std::string take(const std::string& key);
    std::map<std::string, std::string> pairs_;
    std::set<std::string> consumed_;
};

/// "tag:p1,p2,...;m=..,rho=..,delta=..,rough=.." — the ;-part is optional and
/// each assignment within it is optional.
struct SymbolSpec {
    std::string tag;
    std::vector<double> params;
    std::optional<double> m, rho, delta;
    std::optional<bool> rough;
};

SymbolSpec parse_symbol_spec(const std::string& spec);

/// "atom:p=..,q=..,s=..,l=..,seed=.."
struct AtomSpec {
    double p = 1.0;
    double q = 2.0;
    int s = 0;
    double l = 0.0;
    std::uint64_t seed = 1;
};

AtomSpec parse_atom_spec(const std::string& spec);

}  // namespace pdolab

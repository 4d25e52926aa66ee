#include "pdolab/config.hpp"

#include <fstream>
#include <sstream>

namespace pdolab {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_double(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ConfigError(what + ": cannot parse number '" + s + "'");
    }
}

}  // namespace

KeyValueConfig KeyValueConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_string(ss.str());
}

KeyValueConfig KeyValueConfig::from_string(const std::string& text) {
    KeyValueConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        if (cfg.pairs_.count(key))
            throw ConfigError("config: duplicate key '" + key + "'");
        cfg.pairs_[key] = val;
    }
    return cfg;
}

std::string KeyValueConfig::take(const std::string& key) {
    consumed_.insert(key);
    const auto it = pairs_.find(key);
    if (it == pairs_.end()) throw ConfigError("config: missing required key '" + key + "'");
    return it->second;
}

std::string KeyValueConfig::get_string(const std::string& key) { return take(key); }

std::string KeyValueConfig::get_string(const std::string& key, const std::string& fallback) {
    consumed_.insert(key);
    const auto it = pairs_.find(key);
    return it == pairs_.end() ? fallback : it->second;
}

double KeyValueConfig::get_double(const std::string& key) {
    return parse_double(take(key), "config key '" + key + "'");
}

double KeyValueConfig::get_double(const std::string& key, double fallback) {
    consumed_.insert(key);
    const auto it = pairs_.find(key);
    return it == pairs_.end() ? fallback : parse_double(it->second, "config key '" + key + "'");
}

std::optional<double> KeyValueConfig::get_double_opt(const std::string& key) {
    consumed_.insert(key);
    const auto it = pairs_.find(key);
    if (it == pairs_.end()) return std::nullopt;
    return parse_double(it->second, "config key '" + key + "'");
}

long long KeyValueConfig::get_int(const std::string& key) {
    const double v = parse_double(take(key), "config key '" + key + "'");
    const long long n = static_cast<long long>(v);
    if (static_cast<double>(n) != v) throw ConfigError("config key '" + key + "': expected integer");
    return n;
}

long long KeyValueConfig::get_int(const std::string& key, long long fallback) {
    consumed_.insert(key);
    return pairs_.count(key) ? get_int(key) : fallback;
}

std::uint64_t KeyValueConfig::get_seed(const std::string& key, std::uint64_t fallback) {
    consumed_.insert(key);
    const auto it = pairs_.find(key);
    if (it == pairs_.end()) return fallback;
    try {
        return std::stoull(it->second);
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': cannot parse seed");
    }
}

bool KeyValueConfig::get_bool(const std::string& key, bool fallback) {
    consumed_.insert(key);
    const auto it = pairs_.find(key);
    if (it == pairs_.end()) return fallback;
    const std::string& v = it->second;
    if (v == "1" || v == "true" || v == "yes") return true;
    if (v == "0" || v == "false" || v == "no") return false;
    throw ConfigError("config key '" + key + "': expected boolean");
}

std::vector<double> KeyValueConfig::get_list(const std::string& key,
                                             const std::vector<double>& fallback) {
    consumed_.insert(key);
    const auto it = pairs_.find(key);
    if (it == pairs_.end()) return fallback;
    std::vector<double> out;
    for (const auto& part : split(it->second, ','))
        out.push_back(parse_double(trim(part), "config key '" + key + "'"));
    return out;
}

void KeyValueConfig::finish() const {
    std::string unknown;
    for (const auto& [k, v] : pairs_)
        if (!consumed_.count(k)) unknown += (unknown.empty() ? "" : ", ") + k;
    if (!unknown.empty()) throw ConfigError("config: unknown key(s): " + unknown);
}

std::vector<std::pair<std::string, std::string>> KeyValueConfig::sorted_pairs() const {
    return {pairs_.begin(), pairs_.end()};
}

SymbolSpec parse_symbol_spec(const std::string& spec) {
    SymbolSpec out;
    const auto semi = spec.find(';');
    const std::string head = spec.substr(0, semi);
    const auto colon = head.find(':');
    out.tag = trim(colon == std::string::npos ? head : head.substr(0, colon));
    if (out.tag.empty()) throw ConfigError("symbol spec: empty family tag");
    if (colon != std::string::npos) {
        const std::string plist = trim(head.substr(colon + 1));
        if (!plist.empty())
            for (const auto& part : split(plist, ','))
                out.params.push_back(parse_double(trim(part), "symbol spec parameter"));
    }
    if (semi != std::string::npos) {
        for (const auto& part : split(spec.substr(semi + 1), ',')) {
            const std::string item = trim(part);
            if (item.empty()) continue;
            const auto eq = item.find('=');
            if (eq == std::string::npos)
                throw ConfigError("symbol spec: expected name=value after ';'");
            const std::string name = trim(item.substr(0, eq));
            const std::string val = trim(item.substr(eq + 1));
            if (name == "m")
                out.m = parse_double(val, "symbol spec m");
            else if (name == "rho")
                out.rho = parse_double(val, "symbol spec rho");
            else if (name == "delta")
                out.delta = parse_double(val, "symbol spec delta");
            else if (name == "rough")
                out.rough = (val == "1" || val == "true");
            else
                throw ConfigError("symbol spec: unknown field '" + name + "'");
        }
    }
    return out;
}

AtomSpec parse_atom_spec(const std::string& spec) {
    std::string body = spec;
    if (body.rfind("atom:", 0) == 0) body = body.substr(5);
    AtomSpec out;
    bool have_l = false;
    for (const auto& part : split(body, ',')) {
        const std::string item = trim(part);
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ConfigError("atom spec: expected name=value entries");
        const std::string name = trim(item.substr(0, eq));
        const std::string val = trim(item.substr(eq + 1));
        if (name == "p")
            out.p = parse_double(val, "atom spec p");
        else if (name == "q")
            out.q = parse_double(val, "atom spec q");
        else if (name == "s")
            out.s = static_cast<int>(parse_double(val, "atom spec s"));
        else if (name == "l") {
            out.l = parse_double(val, "atom spec l");
            have_l = true;
        } else if (name == "seed")
            out.seed = static_cast<std::uint64_t>(parse_double(val, "atom spec seed"));
        else
            throw ConfigError("atom spec: unknown field '" + name + "'");
    }
    if (!have_l) throw ConfigError("atom spec: missing side length l");
    return out;
}

}  // namespace pdolab

#include "delayctl/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "delayctl/io.hpp"
#include "delayctl/spectral.hpp"

namespace delayctl {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double to_double(const std::string& v, const std::string& where) {
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (trim(v.substr(used)).empty()) return d;
    } catch (const std::exception&) {
    }
    throw ConfigError(where + ": not a number: '" + v + "'");
}

}  // namespace

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str(), path);
}

Config Config::parse_string(const std::string& text, const std::string& origin) {
    Config cfg;
    cfg.origin_ = origin;
    std::stringstream ss(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto where = origin + ":" + std::to_string(lineno);
        const std::size_t comment = line.find_first_of("#;");
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(where + ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) throw ConfigError(where + ": empty section name");
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(where + ": empty key");
        if (section.empty()) throw ConfigError(where + ": key '" + key + "' outside any section");
        cfg.set(section, key, value);
    }
    return cfg;
}

bool Config::has(const std::string& section, const std::string& key) const {
    for (const auto& s : sections_) {
        if (s.first != section) continue;
        for (const auto& kv : s.second) {
            if (kv.first == key) return true;
        }
    }
    return false;
}

std::string Config::get(const std::string& section, const std::string& key) const {
    for (const auto& s : sections_) {
        if (s.first != section) continue;
        for (const auto& kv : s.second) {
            if (kv.first == key) return kv.second;
        }
    }
    throw ConfigError(origin_ + ": missing key '" + key + "' in section [" + section + "]");
}

std::string Config::get_or(const std::string& section, const std::string& key,
                           const std::string& fallback) const {
    return has(section, key) ? get(section, key) : fallback;
}

double Config::get_double(const std::string& section, const std::string& key) const {
    return to_double(get(section, key), origin_ + " [" + section + "] " + key);
}

double Config::get_double_or(const std::string& section, const std::string& key,
                             double fallback) const {
    return has(section, key) ? get_double(section, key) : fallback;
}

int Config::get_int(const std::string& section, const std::string& key) const {
    const double d = get_double(section, key);
    const int i = static_cast<int>(d);
    if (static_cast<double>(i) != d) {
        throw ConfigError(origin_ + " [" + section + "] " + key + ": not an integer");
    }
    return i;
}

int Config::get_int_or(const std::string& section, const std::string& key, int fallback) const {
    return has(section, key) ? get_int(section, key) : fallback;
}

Complex Config::get_complex_or(const std::string& section, const std::string& key,
                               Complex fallback) const {
    if (!has(section, key)) return fallback;
    const std::string v = get(section, key);
    const auto where = origin_ + " [" + section + "] " + key;
    const std::size_t comma = v.find(',');
    if (comma == std::string::npos) return {to_double(v, where), 0.0};
    return {to_double(trim(v.substr(0, comma)), where), to_double(trim(v.substr(comma + 1)), where)};
}

std::vector<int> Config::get_int_list(const std::string& section, const std::string& key) const {
    const std::string v = get(section, key);
    const auto where = origin_ + " [" + section + "] " + key;
    std::vector<int> out;
    std::stringstream ss(v);
    std::string field;
    while (std::getline(ss, field, ',')) {
        field = trim(field);
        if (field.empty()) continue;
        const double d = to_double(field, where);
        out.push_back(static_cast<int>(d));
        if (static_cast<double>(out.back()) != d) throw ConfigError(where + ": not an integer list");
    }
    if (out.empty()) throw ConfigError(where + ": empty list");
    return out;
}

void Config::set(const std::string& section, const std::string& key, const std::string& value) {
    for (auto& s : sections_) {
        if (s.first != section) continue;
        for (auto& kv : s.second) {
            if (kv.first == key) {
                kv.second = value;
                return;
            }
        }
        s.second.emplace_back(key, value);
        return;
    }
    sections_.push_back({section, {{key, value}}});
}

std::string Config::serialize() const {
    std::stringstream out;
    bool first = true;
    for (const auto& s : sections_) {
        if (!first) out << '\n';
        first = false;
        out << '[' << s.first << "]\n";
        for (const auto& kv : s.second) out << kv.first << " = " << kv.second << '\n';
    }
    return out.str();
}

DelayKernel kernel_from_config(const Config& cfg) {
    const std::string kind = cfg.get_or("kernel", "kind", "zero");
    if (kind == "zero") return DelayKernel::zero();
    if (kind == "sampled") {
        const std::string path = cfg.get("kernel", "phi_file");
        try {
            return read_kernel_csv(path);
        } catch (const std::exception& e) {
            throw ConfigError("kernel phi_file '" + path + "': " + e.what());
        }
    }
    throw ConfigError("[kernel] kind must be 'zero' or 'sampled', got '" + kind + "'");
}

Horizon horizon_from_config(const Config& cfg) {
    const double T = cfg.get_double_or("horizon", "T", 1.5);
    try {
        return Horizon::of(T);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("[horizon] ") + e.what());
    }
}

SummationSchedule schedule_from_config(const Config& cfg) {
    SummationSchedule s;
    s.l_coeff = cfg.get_double_or("schedule", "l_coeff", 1.0);
    s.l_power = cfg.get_double_or("schedule", "l_power", 0.25);
    s.R_coeff = cfg.get_double_or("schedule", "R_coeff", 1.0);
    s.R_power = cfg.get_double_or("schedule", "R_power", 4.0);
    return s;
}

MState initial_state_from_config(const Config& cfg, std::size_t default_panels,
                                 const DelayKernel& kernel) {
    const std::string kind = cfg.get_or("initial", "kind", "ones");
    const auto panels =
        static_cast<std::size_t>(cfg.get_int_or("initial", "panels", static_cast<int>(default_panels)));
    if (kind == "ones") return MState::ones(panels);
    if (kind == "constant") {
        MState x = MState::ones(panels);
        const Complex value = cfg.get_complex_or("initial", "value", Complex{1.0, 0.0});
        x.head = cfg.get_complex_or("initial", "head", value);
        for (auto& s : x.tail) s = value;
        return x;
    }
    if (kind == "eigenvector") {
        const int branch = cfg.get_int("initial", "branch");
        const SpectrumSet spec = find_roots(kernel, branch, branch);
        return MState::eigenvector(spec.by_branch(branch).lambda, panels);
    }
    if (kind == "file") {
        const std::string path = cfg.get("initial", "state_file");
        try {
            return read_mstate_csv(path);
        } catch (const std::exception& e) {
            throw ConfigError("initial state_file '" + path + "': " + e.what());
        }
    }
    throw ConfigError("[initial] kind must be ones|constant|eigenvector|file, got '" + kind + "'");
}

}  // namespace delayctl

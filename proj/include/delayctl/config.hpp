#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "delayctl/control.hpp"
#include "delayctl/kernel.hpp"
#include "delayctl/state.hpp"
#include "delayctl/summation.hpp"
#include "delayctl/types.hpp"

namespace delayctl {

/// Configuration / input problems: mapped to exit code 2 by the CLI.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Flat `key = value` text with `[section]` headers. Insertion order is
/// preserved so serialization is deterministic; `#` and `;` start comments.
class Config {
public:
    static Config parse_file(const std::string& path);
    static Config parse_string(const std::string& text, const std::string& origin = "<string>");

    bool has(const std::string& section, const std::string& key) const;
    /// Throws ConfigError naming the missing section/key.
    std::string get(const std::string& section, const std::string& key) const;
    std::string get_or(const std::string& section, const std::string& key,
                       const std::string& fallback) const;

    double get_double(const std::string& section, const std::string& key) const;
    double get_double_or(const std::string& section, const std::string& key, double fallback) const;
    int get_int(const std::string& section, const std::string& key) const;
    int get_int_or(const std::string& section, const std::string& key, int fallback) const;
    /// Complex number written as `re,im`.
    Complex get_complex_or(const std::string& section, const std::string& key,
                           Complex fallback) const;
    /// Comma-separated integer list.
    std::vector<int> get_int_list(const std::string& section, const std::string& key) const;

    void set(const std::string& section, const std::string& key, const std::string& value);

    std::string serialize() const;

private:
    using Section = std::pair<std::string, std::vector<std::pair<std::string, std::string>>>;
    std::vector<Section> sections_;
    std::string origin_ = "<empty>";
};

/// [kernel] kind = zero | sampled, phi_file = PATH (sampled only).
DelayKernel kernel_from_config(const Config& cfg);
/// [horizon] T = value in (1,2).
Horizon horizon_from_config(const Config& cfg);
/// [schedule] l_coeff/l_power/R_coeff/R_power, defaulting to n^{1/4}, n^4.
SummationSchedule schedule_from_config(const Config& cfg);
/// [initial] kind = ones | eigenvector | constant | file, plus
/// branch / head / value / state_file as applicable.
MState initial_state_from_config(const Config& cfg, std::size_t default_panels,
                                 const DelayKernel& kernel);

}  // namespace delayctl

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cesaro/caps.hpp"
#include "cesaro/measure.hpp"
#include "cesaro/shift.hpp"

namespace cesaro::cli {

/// Parse or validation failure tied to a line of the experiment file.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& source, std::size_t line, const std::string& message)
        : std::runtime_error(source + ":" + std::to_string(line) + ": " + message), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Experiment file, one section per block:
///
///   [group]       p = <prime>, exponents = <s1> <s2> ...
///   [incidence]   |A| rows of 0/1 entries in canonical element order
///   [transition]  |A| rows of reals, or the single word `haar`
///   [params]      alpha, seed, cap_work, cap_enum (all optional)
///
/// '#' starts a comment; blank lines are ignored.
struct ExperimentConfig {
    std::string source = "<config>";
    std::uint32_t p = 0;
    std::vector<std::uint32_t> exponents;
    std::vector<std::vector<std::uint8_t>> incidence;
    std::vector<std::vector<double>> transition;
    bool haar_transition = false;
    std::optional<double> alpha;
    std::uint64_t seed = 1;
    Caps caps;

    // Line numbers of section headers, for diagnostics.
    std::size_t group_line = 0;
    std::size_t incidence_line = 0;
    std::size_t transition_line = 0;
    std::size_t params_line = 0;
    std::vector<std::size_t> incidence_row_lines;
    std::vector<std::size_t> transition_row_lines;
};

ExperimentConfig parse_config(std::istream& in, const std::string& source = "<config>");
ExperimentConfig load_config(const std::string& path);

GroupSpec build_group(const ExperimentConfig& cfg);
SubgroupShift build_shift(const ExperimentConfig& cfg);
/// Throws ConfigError when no [transition] section is present.
MarkovMeasure build_measure(const ExperimentConfig& cfg);

}  // namespace cesaro::cli

#include "cesaro_cli/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "cesaro/errors.hpp"

namespace cesaro::cli {
namespace {

enum class Section { none, group, incidence, transition, params };

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string tok; in >> tok;) out.push_back(tok);
    return out;
}

template <class T>
bool parse_int(const std::string& tok, T& out) {
    const auto* end = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(tok.data(), end, out);
    return ec == std::errc{} && ptr == end;
}

bool parse_double(const std::string& tok, double& out) {
    try {
        std::size_t used = 0;
        out = std::stod(tok, &used);
        return used == tok.size();
    } catch (const std::exception&) {
        return false;
    }
}

}  // namespace

ExperimentConfig parse_config(std::istream& in, const std::string& source) {
    ExperimentConfig cfg;
    cfg.source = source;
    Section section = Section::none;
    bool have_p = false;
    bool have_exponents = false;
    std::size_t lineno = 0;
    auto error = [&](const std::string& msg) { return ConfigError(source, lineno, msg); };

    for (std::string raw; std::getline(in, raw);) {
        ++lineno;
        std::string line = raw;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') throw error("unterminated section header");
            const std::string name = trim(line.substr(1, line.size() - 2));
            auto enter = [&](Section s, std::size_t& where) {
                if (where != 0) throw error("duplicate section [" + name + "]");
                where = lineno;
                section = s;
            };
            if (name == "group") enter(Section::group, cfg.group_line);
            else if (name == "incidence") enter(Section::incidence, cfg.incidence_line);
            else if (name == "transition") enter(Section::transition, cfg.transition_line);
            else if (name == "params") enter(Section::params, cfg.params_line);
            else throw error("unknown section [" + name + "]");
            continue;
        }

        switch (section) {
        case Section::none:
            throw error("content before the first section");
        case Section::group:
        case Section::params: {
            const auto eq = line.find('=');
            if (eq == std::string::npos) throw error("expected key = value");
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (value.empty()) throw error("missing value for '" + key + "'");
            if (section == Section::group) {
                if (key == "p") {
                    if (!parse_int(value, cfg.p)) throw error("p must be a positive integer");
                    have_p = true;
                } else if (key == "exponents") {
                    cfg.exponents.clear();
                    for (const auto& tok : split_ws(value)) {
                        std::uint32_t e = 0;
                        if (!parse_int(tok, e)) throw error("bad exponent '" + tok + "'");
                        cfg.exponents.push_back(e);
                    }
                    have_exponents = true;
                } else {
                    throw error("unknown key '" + key + "' in [group]");
                }
            } else {
                if (key == "alpha") {
                    double a = 0;
                    if (!parse_double(value, a)) throw error("alpha must be a real number");
                    cfg.alpha = a;
                } else if (key == "seed") {
                    if (!parse_int(value, cfg.seed)) throw error("seed must be a nonnegative integer");
                } else if (key == "cap_work") {
                    if (!parse_int(value, cfg.caps.work)) throw error("cap_work must be a nonnegative integer");
                } else if (key == "cap_enum") {
                    if (!parse_int(value, cfg.caps.enumeration)) throw error("cap_enum must be a nonnegative integer");
                } else if (key == "cap_brute") {
                    if (!parse_int(value, cfg.caps.brute)) throw error("cap_brute must be a nonnegative integer");
                } else {
                    throw error("unknown key '" + key + "' in [params]");
                }
            }
            break;
        }
        case Section::incidence: {
            std::vector<std::uint8_t> row;
            for (const auto& tok : split_ws(line)) {
                if (tok != "0" && tok != "1") throw error("incidence entries must be 0 or 1, got '" + tok + "'");
                row.push_back(tok == "1" ? 1 : 0);
            }
            cfg.incidence.push_back(std::move(row));
            cfg.incidence_row_lines.push_back(lineno);
            break;
        }
        case Section::transition: {
            if (line == "haar") {
                if (!cfg.transition.empty() || cfg.haar_transition) throw error("'haar' must be the only row");
                cfg.haar_transition = true;
                break;
            }
            if (cfg.haar_transition) throw error("'haar' must be the only row");
            std::vector<double> row;
            for (const auto& tok : split_ws(line)) {
                double v = 0;
                if (!parse_double(tok, v)) throw error("bad transition entry '" + tok + "'");
                row.push_back(v);
            }
            cfg.transition.push_back(std::move(row));
            cfg.transition_row_lines.push_back(lineno);
            break;
        }
        }
    }

    if (cfg.group_line == 0) throw ConfigError(source, 1, "missing [group] section");
    lineno = cfg.group_line;
    if (!have_p) throw error("[group] needs p");
    if (!have_exponents || cfg.exponents.empty()) throw error("[group] needs exponents");
    if (cfg.incidence_line == 0) throw ConfigError(source, 1, "missing [incidence] section");
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path, 0, "cannot open file");
    return parse_config(in, path);
}

GroupSpec build_group(const ExperimentConfig& cfg) {
    try {
        return GroupSpec(cfg.p, cfg.exponents);
    } catch (const Error& e) {
        throw ConfigError(cfg.source, cfg.group_line, e.what());
    }
}

SubgroupShift build_shift(const ExperimentConfig& cfg) {
    GroupSpec spec = build_group(cfg);
    const std::size_t n = spec.order();
    if (cfg.incidence.size() != n)
        throw ConfigError(cfg.source, cfg.incidence_line,
                          "expected " + std::to_string(n) + " incidence rows, got " + std::to_string(cfg.incidence.size()));
    std::vector<std::uint8_t> bits;
    bits.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        if (cfg.incidence[i].size() != n)
            throw ConfigError(cfg.source, cfg.incidence_row_lines[i],
                              "incidence row " + std::to_string(i) + " has " +
                                  std::to_string(cfg.incidence[i].size()) + " entries, expected " + std::to_string(n));
        bits.insert(bits.end(), cfg.incidence[i].begin(), cfg.incidence[i].end());
    }
    try {
        return validate_subgroup_shift(std::move(spec), IncidenceMatrix(n, std::move(bits)));
    } catch (const Error& e) {
        throw ConfigError(cfg.source, cfg.incidence_line, e.what());
    }
}

MarkovMeasure build_measure(const ExperimentConfig& cfg) {
    SubgroupShift shift = build_shift(cfg);
    if (cfg.transition_line == 0) throw ConfigError(cfg.source, 1, "missing [transition] section");
    if (cfg.haar_transition) return haar_measure(shift);
    const std::size_t n = shift.order();
    if (cfg.transition.size() != n)
        throw ConfigError(cfg.source, cfg.transition_line,
                          "expected " + std::to_string(n) + " transition rows, got " +
                              std::to_string(cfg.transition.size()));
    Eigen::MatrixXd P(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (cfg.transition[i].size() != n)
            throw ConfigError(cfg.source, cfg.transition_row_lines[i],
                              "transition row " + std::to_string(i) + " has " +
                                  std::to_string(cfg.transition[i].size()) + " entries, expected " + std::to_string(n));
        for (std::size_t j = 0; j < n; ++j) P(i, j) = cfg.transition[i][j];
    }
    try {
        return validate_measure(std::move(shift), std::move(P));
    } catch (const Error& e) {
        throw ConfigError(cfg.source, cfg.transition_line, e.what());
    }
}

}  // namespace cesaro::cli

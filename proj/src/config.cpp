#include "lindblad/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "lindblad/errors.hpp"

namespace lindblad {

namespace {

std::string trim(const std::string& s) {
    auto begin = s.begin();
    while (begin != s.end() && std::isspace(static_cast<unsigned char>(*begin)))
        ++begin;
    auto end = s.end();
    while (end != begin && std::isspace(static_cast<unsigned char>(*(end - 1))))
        --end;
    return std::string(begin, end);
}

struct Entry {
    std::string value;
    int line = 0;
};

const std::vector<std::string> kKnownKeys = {
    "m",          "omega",      "lambda",     "mu",
    "hbar",       "boltzmann",  "d_pp",       "d_qq",
    "d_pq",       "bath_temperature",         "x10",
    "x20",        "t_max",      "dt_output",  "fock_dim",
    "ode_dt",     "fock_dt",    "check_moments",
    "check_fock", "check_fp",   "output_format",
    "output_path"};

std::map<std::string, Entry> tokenize(const std::string& text) {
    std::map<std::string, Entry> entries;
    std::istringstream stream(text);
    std::string line;
    int line_number = 0;
    while (std::getline(stream, line)) {
        ++line_number;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected `key = value`", line_number);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("empty key", line_number);
        if (value.empty())
            throw ConfigError("empty value for key `" + key + "`", line_number);
        if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) ==
            kKnownKeys.end())
            throw ConfigError("unknown key `" + key + "`", line_number);
        if (entries.count(key))
            throw ConfigError("duplicate key `" + key + "` (first on line " +
                                  std::to_string(entries[key].line) + ")",
                              line_number);
        entries[key] = {value, line_number};
    }
    return entries;
}

class Lookup {
  public:
    explicit Lookup(std::map<std::string, Entry> entries)
        : entries_(std::move(entries)) {}

    bool has(const std::string& key) const { return entries_.count(key) > 0; }

    double number(const std::string& key, double fallback) const {
        if (!has(key)) return fallback;
        return parse_number(key);
    }

    double required_number(const std::string& key) const {
        if (!has(key)) throw ConfigError("missing required key `" + key + "`");
        return parse_number(key);
    }

    bool boolean(const std::string& key, bool fallback) const {
        if (!has(key)) return fallback;
        const Entry& e = entries_.at(key);
        if (e.value == "true" || e.value == "1") return true;
        if (e.value == "false" || e.value == "0") return false;
        throw ConfigError("expected true/false for `" + key + "`", e.line);
    }

    std::string text(const std::string& key, const std::string& fallback) const {
        return has(key) ? entries_.at(key).value : fallback;
    }

    int line(const std::string& key) const { return entries_.at(key).line; }

  private:
    double parse_number(const std::string& key) const {
        const Entry& e = entries_.at(key);
        try {
            std::size_t consumed = 0;
            const double v = std::stod(e.value, &consumed);
            if (consumed != e.value.size() || !std::isfinite(v))
                throw std::invalid_argument(e.value);
            return v;
        } catch (const std::exception&) {
            throw ConfigError("invalid number `" + e.value + "` for `" + key +
                                  "`",
                              e.line);
        }
    }

    std::map<std::string, Entry> entries_;
};

} // namespace

RunConfig parse_config(const std::string& text) {
    const Lookup lookup{tokenize(text)};

    RunConfig config;
    // Natural-unit defaults; the constructor enforces positivity and the
    // underdamped regime before anything else is looked at.
    config.params = OscillatorParams(
        lookup.number("m", 1.0), lookup.number("omega", 1.0),
        lookup.number("lambda", 0.0), lookup.number("mu", 0.0),
        lookup.number("hbar", 1.0), lookup.number("boltzmann", 1.0));

    const bool has_explicit =
        lookup.has("d_pp") || lookup.has("d_qq") || lookup.has("d_pq");
    const bool has_thermal = lookup.has("bath_temperature");
    if (has_explicit && has_thermal)
        throw ConfigError(
            "ambiguous diffusion: give either bath_temperature or explicit "
            "d_pp/d_qq/d_pq, not both");
    if (!has_explicit && !has_thermal)
        throw ConfigError(
            "missing diffusion: give bath_temperature or explicit d_pp/d_qq");
    if (!lookup.has("lambda"))
        throw ConfigError("missing required key `lambda`");

    if (has_thermal) {
        config.thermal = true;
        config.bath_temperature = lookup.required_number("bath_temperature");
        config.diffusion =
            thermal_coefficients(config.params, config.bath_temperature);
    } else {
        if (!lookup.has("d_pp") || !lookup.has("d_qq"))
            throw ConfigError("explicit diffusion requires both d_pp and d_qq");
        config.diffusion.d_pp = lookup.required_number("d_pp");
        config.diffusion.d_qq = lookup.required_number("d_qq");
        config.diffusion.d_pq = lookup.number("d_pq", 0.0);
    }
    config.constraints = validate_constraints(config.params, config.diffusion);

    config.x10 = lookup.number("x10", 0.0);
    config.x20 = lookup.number("x20", 0.0);

    if (lookup.has("t_max")) {
        config.has_t_max = true;
        config.t_max = lookup.required_number("t_max");
        if (config.t_max <= 0.0)
            throw ConfigError("t_max must be positive", lookup.line("t_max"));
    }
    config.dt_output =
        lookup.number("dt_output", config.has_t_max ? config.t_max / 100.0 : 0.0);
    if (lookup.has("dt_output") && config.dt_output <= 0.0)
        throw ConfigError("dt_output must be positive", lookup.line("dt_output"));

    config.check_moments = lookup.boolean("check_moments", true);
    config.check_fock = lookup.boolean("check_fock", true);
    config.check_fp = lookup.boolean("check_fp", true);

    config.fock_dim = static_cast<int>(lookup.number("fock_dim", 60.0));
    if (config.fock_dim < 2)
        throw ConfigError("fock_dim must be at least 2",
                          lookup.has("fock_dim") ? lookup.line("fock_dim") : 0);
    config.ode_dt = lookup.number("ode_dt", 0.0);
    if (lookup.has("ode_dt") && config.ode_dt <= 0.0)
        throw ConfigError("ode_dt must be positive", lookup.line("ode_dt"));
    config.fock_dt = lookup.number("fock_dt", 0.0);
    if (lookup.has("fock_dt") && config.fock_dt <= 0.0)
        throw ConfigError("fock_dt must be positive", lookup.line("fock_dt"));

    config.output_format = lookup.text("output_format", "csv");
    if (config.output_format != "csv")
        throw ConfigError("unsupported output_format `" + config.output_format +
                              "` (only csv)",
                          lookup.line("output_format"));
    config.output_path = lookup.text("output_path", "");
    return config;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return parse_config(buffer.str());
}

std::string override_key(const std::string& text, const std::string& key,
                         double value) {
    std::istringstream stream(text);
    std::ostringstream out;
    std::string line;
    while (std::getline(stream, line)) {
        const std::string code = line.substr(0, line.find('#'));
        const auto eq = code.find('=');
        if (eq != std::string::npos && trim(code.substr(0, eq)) == key) continue;
        out << line << '\n';
    }
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    out << key << " = " << buffer << '\n';
    return out.str();
}

} // namespace lindblad

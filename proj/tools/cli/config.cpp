#include "config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

namespace sbcli {
namespace {

constexpr std::array<std::string_view, 9> kParameterKeys{"E", "I", "rho", "rho0", "S", "l", "l0", "m", "kappa"};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const char* expected) {
    throw CliError(kExitConfig, "invalid value for '" + key + "': '" + value + "' (expected " + expected + ")");
}

double parse_double(const std::string& key, const std::string& value) {
    const auto text = trim(value);
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    if (ec != std::errc{} || ptr != text.data() + text.size()) bad_value(key, value, "a number");
    return out;
}

long parse_integer(const std::string& key, const std::string& value) {
    const auto text = trim(value);
    long out = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    if (ec != std::errc{} || ptr != text.data() + text.size()) bad_value(key, value, "an integer");
    return out;
}

std::vector<int> parse_index_list(const std::string& key, const std::string& value) {
    std::vector<int> out;
    std::string_view rest = value;
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const auto item = trim(rest.substr(0, comma));
        if (!item.empty()) {
            const long j = parse_integer(key, std::string(item));
            if (j < 1) bad_value(key, value, "positive mode indices");
            out.push_back(static_cast<int>(j));
        }
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    if (out.empty()) bad_value(key, value, "a comma-separated list of mode indices");
    return out;
}

}  // namespace

RunConfig default_run_config() {
    RunConfig config;
    sb_param_set* raw = nullptr;
    check(sb_param_set_reference(&raw), "reference parameters");
    ParamSetPtr owned(raw);
    for (auto key : kParameterKeys) {
        if (const char* v = sb_param_set_get(raw, std::string(key).c_str())) config.parameters[std::string(key)] = v;
    }
    return config;
}

bool is_parameter_key(std::string_view key) {
    return std::find(kParameterKeys.begin(), kParameterKeys.end(), key) != kParameterKeys.end();
}

void apply_setting(RunConfig& config, const std::string& key, const std::string& value) {
    if (is_parameter_key(key)) {
        // rho and (rho0, S) are alternative descriptions of the same density.
        if (key == "rho") {
            config.parameters.erase("rho0");
            config.parameters.erase("S");
        } else if (key == "rho0" || key == "S") {
            config.parameters.erase("rho");
        }
        config.parameters[key] = std::string(trim(value));
    } else if (key == "mu_min") {
        config.mu_min = parse_double(key, value);
    } else if (key == "mu_max") {
        config.mu_max = parse_double(key, value);
        config.n_roots.reset();
    } else if (key == "n_roots") {
        const long n = parse_integer(key, value);
        if (n < 1) bad_value(key, value, "N >= 1");
        config.n_roots = static_cast<int>(n);
        config.mu_max.reset();
    } else if (key == "step") {
        config.step = parse_double(key, value);
    } else if (key == "threads") {
        const long n = parse_integer(key, value);
        if (n < 1) bad_value(key, value, "at least one thread");
        config.threads = static_cast<unsigned>(n);
    } else if (key == "epsilon") {
        config.epsilon = parse_double(key, value);
    } else if (key == "threshold") {
        config.threshold = parse_double(key, value);
    } else if (key == "modes") {
        config.modes = parse_index_list(key, value);
    } else if (key == "samples") {
        const long n = parse_integer(key, value);
        if (n < 2) bad_value(key, value, "at least two samples");
        config.samples = static_cast<int>(n);
    } else if (key == "quadrature") {
        config.quadrature = static_cast<int>(parse_integer(key, value));
    } else if (key == "out") {
        config.out_dir = std::string(trim(value));
    } else {
        throw CliError(kExitConfig, "unknown setting '" + key + "'");
    }
}

void apply_config_text(RunConfig& config, std::string_view text, const std::string& origin) {
    int line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw CliError(kExitConfig, origin + ":" + std::to_string(line_no) + ": expected 'key = value'");
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty() || value.empty()) {
            throw CliError(kExitConfig, origin + ":" + std::to_string(line_no) + ": empty key or value");
        }
        try {
            apply_setting(config, key, value);
        } catch (const CliError& e) {
            throw CliError(e.exit_code(), origin + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
}

void apply_config_file(RunConfig& config, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw CliError(kExitConfig, "cannot read config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    apply_config_text(config, buf.str(), path.string());
}

ParamsPtr resolve_parameters(const RunConfig& config) {
    sb_param_set* raw = nullptr;
    check(sb_param_set_create(&raw), "parameters");
    ParamSetPtr owned(raw);
    for (const auto& [k, v] : config.parameters) check(sb_param_set_put(raw, k.c_str(), v.c_str()), "parameters");
    sb_params* params = nullptr;
    const sb_status st = sb_params_validate(raw, &params);
    if (st != SB_OK) throw CliError(kExitConfig, std::string("invalid beam parameters: ") + sb_last_error());
    return ParamsPtr(params);
}

void check_run_settings(const RunConfig& config) {
    if (!(config.mu_min > 0.0)) throw CliError(kExitConfig, "mu_min must be positive");
    if (config.mu_max && !(*config.mu_max > config.mu_min)) {
        throw CliError(kExitConfig, "empty window: mu_max must exceed mu_min");
    }
    if (!config.mu_max && !config.n_roots) throw CliError(kExitConfig, "set either mu_max or n_roots");
}

}  // namespace sbcli

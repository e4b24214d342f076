#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "handles.hpp"

namespace sbcli {

/// Everything a command needs. Beam parameters stay as text with units
/// until resolve_parameters() hands them to the library.
struct RunConfig {
    std::map<std::string, std::string> parameters;

    double mu_min = 0.1;
    /// Exactly one of mu_max and n_roots is set; setting one clears the other.
    std::optional<double> mu_max = 38.5;
    std::optional<int> n_roots;
    double step = 0.0;  // <= 0: library default
    unsigned threads = 1;

    double epsilon = 0.35;
    double threshold = 10.0;

    std::vector<int> modes{1, 2, 3, 4};
    int samples = 2001;
    int quadrature = 256;

    std::filesystem::path out_dir = ".";
    bool quiet = false;
};

/// Reference beam, window (0.1, 38.5), epsilon 0.35, M = 10, modes 1..4.
RunConfig default_run_config();

bool is_parameter_key(std::string_view key);

/// Sets one key. Parameter keys keep their text; run keys are parsed here.
/// Throws CliError(kExitConfig) for unknown keys or malformed values.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

/// Flat "key = value" lines; '#' starts a comment. origin names the source
/// in error messages.
void apply_config_text(RunConfig& config, std::string_view text, const std::string& origin);

/// Reads and applies a config file. Missing or unreadable files are
/// configuration errors (exit 1).
void apply_config_file(RunConfig& config, const std::filesystem::path& path);

/// Validates the beam parameters through the library.
ParamsPtr resolve_parameters(const RunConfig& config);

/// Validates run settings that do not depend on the beam.
void check_run_settings(const RunConfig& config);

}  // namespace sbcli

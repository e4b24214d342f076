#include "app.hpp"

#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "commands.hpp"

namespace sbcli {
namespace {

struct Overrides {
    std::string config;
    std::string out;
    bool quiet = false;
    std::optional<std::string> l;
    std::optional<std::string> l0;
    std::optional<std::string> n_roots;
    std::optional<std::string> mu_min;
    std::optional<std::string> mu_max;
    std::optional<std::string> step;
    std::optional<std::string> epsilon;
    std::optional<std::string> threshold;
    std::optional<std::string> modes;
    std::optional<std::string> samples;
    std::optional<std::string> threads;
    std::vector<std::string> settings;
};

void add_overrides(CLI::App& app, Overrides& o) {
    app.add_option("--config", o.config, "Config file (key = value lines)");
    app.add_option("--out", o.out, "Output directory");
    app.add_flag("--quiet", o.quiet, "No progress output");
    app.add_option("--l", o.l, "Beam length, e.g. '1.905 m'");
    app.add_option("--l0", o.l0, "Attachment point, e.g. '1.4 m'");
    app.add_option("--n-roots", o.n_roots, "Number of exact roots (replaces --mu-max)");
    app.add_option("--mu-min", o.mu_min, "Lower end of the scan window [1/m]");
    app.add_option("--mu-max", o.mu_max, "Upper end of the scan window [1/m]");
    app.add_option("--step", o.step, "Scan step [1/m]");
    app.add_option("--epsilon", o.epsilon, "Localization neighbourhood radius");
    app.add_option("--threshold", o.threshold, "Localization threshold M");
    app.add_option("--modes", o.modes, "Mode indices, e.g. 1,2,3,4");
    app.add_option("--samples", o.samples, "Samples per mode CSV");
    app.add_option("--threads", o.threads, "Worker threads for root scans");
    app.add_option("--set", o.settings, "Any config key, as key=value (repeatable)");
}

RunConfig build_config(const Overrides& o) {
    if (o.n_roots && o.mu_max) throw CliError(kExitConfig, "give only one of --n-roots and --mu-max");
    RunConfig config = default_run_config();
    if (!o.config.empty()) apply_config_file(config, o.config);
    const std::pair<const char*, const std::optional<std::string>*> flags[] = {
        {"l", &o.l},          {"l0", &o.l0},           {"n_roots", &o.n_roots},     {"mu_min", &o.mu_min},
        {"mu_max", &o.mu_max}, {"step", &o.step},       {"epsilon", &o.epsilon},     {"threshold", &o.threshold},
        {"modes", &o.modes},  {"samples", &o.samples}, {"threads", &o.threads},
    };
    for (const auto& [key, value] : flags) {
        if (*value) apply_setting(config, key, **value);
    }
    for (const auto& s : o.settings) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw CliError(kExitConfig, "--set expects key=value, got '" + s + "'");
        apply_setting(config, s.substr(0, eq), s.substr(eq + 1));
    }
    if (!o.out.empty()) config.out_dir = o.out;
    if (o.quiet) config.quiet = true;
    return config;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Eigenfrequencies and eigenmodes of a hinged beam with an attached shaker"};
    app.name("shakerbeam");
    app.require_subcommand(1);
    Overrides o;
    add_overrides(app, o);
    app.fallthrough();

    using Command = int (*)(const RunConfig&, std::ostream&);
    Command selected = nullptr;
    const std::pair<const char*, const char*> names[] = {
        {"roots", "Tabulate exact and truncated roots (roots.csv)"},
        {"verify", "Check root localization above a threshold (localization.json)"},
        {"modes", "Normalised eigenmodes (mode_<j>.csv, modes.svg)"},
        {"growth", "Root growth against index (growth.csv, growth.svg)"},
    };
    const Command commands[] = {cmd_roots, cmd_verify, cmd_modes, cmd_growth};
    for (std::size_t i = 0; i < std::size(names); ++i) {
        auto* sub = app.add_subcommand(names[i].first, names[i].second);
        sub->callback([&selected, cmd = commands[i]] { selected = cmd; });
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }

    try {
        const RunConfig config = build_config(o);
        return selected(config, out);
    } catch (const CliError& e) {
        err << "error: " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }
}

}  // namespace sbcli

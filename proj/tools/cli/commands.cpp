#include "commands.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>

#include <json.hpp>

#include "format.hpp"
#include "svg.hpp"

namespace sbcli {
namespace {

// Root columns carry more digits than the rest: at 9 significant digits the
// rounding of mu near 38 alone moves phi by more than 1e-8.
constexpr int kRootDigits = 12;

sb_scan_options scan_options(const RunConfig& config) {
    sb_scan_options o;
    sb_scan_options_init(&o);
    o.step = config.step;
    o.threads = config.threads;
    return o;
}

std::vector<double> scan(const sb_params* params, sb_target target, double lo, double hi,
                         const sb_scan_options& options) {
    sb_root_list* list = nullptr;
    check(sb_scan_roots(params, target, lo, hi, &options, &list), "root scan");
    RootListPtr owned(list);
    std::vector<double> out;
    out.reserve(sb_root_list_size(list));
    for (std::size_t i = 0; i < sb_root_list_size(list); ++i) {
        sb_root r;
        check(sb_root_list_get(list, i, &r), "root scan");
        out.push_back(r.mu);
    }
    return out;
}

sb_param_values values_of(const sb_params* params) {
    sb_param_values v;
    check(sb_params_get(params, &v), "parameters");
    return v;
}

double frequency_hz(const sb_params* params, double mu) {
    sb_spectral_point s;
    check(sb_spectral_point_of(params, mu, &s), "frequency");
    return s.nu;
}

nlohmann::json number_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

void require_roots(const RootSet& roots) {
    if (roots.exact.empty() && roots.truncated.empty()) {
        throw CliError(kExitNoRoots, "no roots found in (" + format_number(roots.mu_min) + ", " +
                                         format_number(roots.mu_max) + ")");
    }
}

std::string window_text(const RootSet& r) {
    return "(" + format_number(r.mu_min, 6) + ", " + format_number(r.mu_max, 6) + ")";
}

}  // namespace

RootSet compute_roots(const RunConfig& config, const sb_params* params, bool with_truncated) {
    check_run_settings(config);
    const auto options = scan_options(config);
    RootSet out;
    out.mu_min = config.mu_min;
    if (config.n_roots) {
        const int n = *config.n_roots;
        const double length = values_of(params).length;
        double hi = config.mu_min + 1.1 * (n + 1) * std::numbers::pi / length;
        for (int attempt = 0;; ++attempt) {
            auto exact = scan(params, SB_TARGET_PHI, config.mu_min, hi, options);
            if (static_cast<int>(exact.size()) > n) {
                out.mu_max = 0.5 * (exact[static_cast<std::size_t>(n) - 1] + exact[static_cast<std::size_t>(n)]);
                exact.resize(static_cast<std::size_t>(n));
                out.exact = std::move(exact);
                break;
            }
            if (attempt >= 40) {
                throw CliError(kExitNoRoots, "fewer than " + std::to_string(n) + " roots below " + format_number(hi));
            }
            hi *= 1.5;
        }
    } else {
        out.mu_max = *config.mu_max;
        out.exact = scan(params, SB_TARGET_PHI, out.mu_min, out.mu_max, options);
    }
    if (with_truncated) out.truncated = scan(params, SB_TARGET_PHI0, out.mu_min, out.mu_max, options);
    return out;
}

int cmd_roots(const RunConfig& config, std::ostream& log) {
    const auto params = resolve_parameters(config);
    const auto roots = compute_roots(config, params.get());
    require_roots(roots);

    sb_root_table* table = nullptr;
    check(sb_build_root_table(roots.exact.data(), roots.exact.size(), roots.truncated.data(), roots.truncated.size(),
                              config.epsilon, config.threshold, &table),
          "root table");
    RootTablePtr owned(table);

    CsvWriter csv({"j", "mu_bar", "mu", "nu_bar_hz", "nu_hz", "pairing_status", "abs_gap"});
    int ambiguous = 0;
    for (std::size_t i = 0; i < sb_root_table_size(table); ++i) {
        sb_table_row row;
        check(sb_root_table_get(table, i, &row), "root table");
        const auto mu_bar = row.has_truncated ? std::optional<double>(row.truncated_root) : std::nullopt;
        const auto mu = row.has_exact ? std::optional<double>(row.exact_root) : std::nullopt;
        const bool paired = row.has_truncated && row.has_exact;
        if (row.status == SB_ROW_PAIRED_AMBIGUOUS) ++ambiguous;
        csv.row({std::to_string(row.j), format_optional(mu_bar, kRootDigits), format_optional(mu, kRootDigits),
                 mu_bar ? format_number(frequency_hz(params.get(), *mu_bar)) : std::string{},
                 mu ? format_number(frequency_hz(params.get(), *mu)) : std::string{},
                 sb_row_status_string(row.status), paired ? format_number(row.abs_gap) : std::string{}});
    }
    write_file(config.out_dir / "roots.csv", csv.text());
    if (!config.quiet) {
        log << roots.exact.size() << " exact and " << roots.truncated.size() << " truncated roots in "
            << window_text(roots) << "; " << ambiguous << " paired rows below the threshold or outside epsilon\n"
            << "wrote " << (config.out_dir / "roots.csv").string() << '\n';
    }
    return kExitOk;
}

int cmd_verify(const RunConfig& config, std::ostream& log) {
    const auto params = resolve_parameters(config);
    check_run_settings(config);
    double mu_max = config.mu_max.value_or(0.0);
    if (config.n_roots) mu_max = compute_roots(config, params.get(), false).mu_max;

    const auto options = scan_options(config);
    sb_localization* report = nullptr;
    check(sb_verify_localization(params.get(), config.epsilon, config.threshold, mu_max, &options, &report),
          "localization");
    LocalizationPtr owned(report);
    sb_localization_summary s;
    check(sb_localization_get_summary(report, &s), "localization");

    nlohmann::ordered_json j;
    j["verdict"] = s.verdict != 0;
    j["epsilon"] = s.epsilon;
    j["threshold_M"] = s.threshold_M;
    j["mu_max"] = s.mu_max;
    auto pairs = nlohmann::ordered_json::array();
    double max_distance = 0.0;
    for (std::size_t i = 0; i < s.pairing_count; ++i) {
        sb_pairing p;
        check(sb_localization_pairing(report, i, &p), "localization");
        nlohmann::ordered_json e;
        e["truncated_root"] = p.truncated_root;
        e["exact_root"] = p.has_exact ? nlohmann::json(p.exact_root) : nlohmann::json(nullptr);
        e["distance"] = p.has_exact ? nlohmann::json(p.distance) : nlohmann::json(nullptr);
        e["exact_count"] = p.exact_count;
        e["status"] = sb_pairing_status_string(p.status);
        if (p.has_exact) max_distance = std::max(max_distance, p.distance);
        pairs.push_back(std::move(e));
    }
    j["pairings"] = std::move(pairs);
    auto strays = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < s.stray_count; ++i) {
        double v = 0.0;
        check(sb_localization_stray(report, i, &v), "localization");
        strays.push_back(v);
    }
    j["stray_roots"] = std::move(strays);
    j["max_distance"] = max_distance;
    j["margins"] = {
        {"min_abs_phi0_outside", number_or_null(s.min_abs_phi0_outside)},
        {"min_abs_dphi0_inside", number_or_null(s.min_abs_dphi0_inside)},
        {"max_abs_phi1", number_or_null(s.max_abs_phi1)},
        {"max_abs_dphi1", number_or_null(s.max_abs_dphi1)},
        {"certify", s.margins_certify != 0},
    };
    j["attachment_ratio"] = {{"rational", s.ratio_rational != 0}, {"p", s.ratio_p}, {"q", s.ratio_q}};
    auto warnings = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < s.warning_count; ++i) warnings.push_back(sb_localization_warning(report, i));
    j["warnings"] = std::move(warnings);

    write_file(config.out_dir / "localization.json", j.dump(2) + "\n");
    if (!config.quiet) {
        log << "verdict: " << (s.verdict ? "true" : "false") << " (epsilon " << format_number(s.epsilon)
            << ", M " << format_number(s.threshold_M) << ", mu_max " << format_number(s.mu_max) << ", "
            << s.pairing_count << " pairings, " << s.stray_count << " stray roots)\n";
        for (std::size_t i = 0; i < s.warning_count; ++i) log << "warning: " << sb_localization_warning(report, i) << '\n';
        log << "wrote " << (config.out_dir / "localization.json").string() << '\n';
    }
    return s.verdict ? kExitOk : kExitVerdictFalse;
}

int cmd_modes(const RunConfig& config, std::ostream& log) {
    const auto params = resolve_parameters(config);
    const auto roots = compute_roots(config, params.get(), false);
    if (roots.exact.empty()) throw CliError(kExitNoRoots, "no exact roots in " + window_text(roots));

    const auto n = static_cast<std::size_t>(config.samples);
    Plot plot;
    plot.title = "Normalised eigenmodes";
    plot.x_label = "x [m]";
    plot.y_label = "u";
    plot.zero_line = true;
    for (int j : config.modes) {
        if (static_cast<std::size_t>(j) > roots.exact.size()) {
            throw CliError(kExitConfig, "mode " + std::to_string(j) + " requested but only " +
                                            std::to_string(roots.exact.size()) + " exact roots lie in " +
                                            window_text(roots));
        }
        const double mu = roots.exact[static_cast<std::size_t>(j) - 1];
        sb_mode* raw = nullptr;
        check(sb_mode_solve(params.get(), mu, &raw), "mode " + std::to_string(j));
        ModePtr solved(raw);
        sb_mode* normed = nullptr;
        check(sb_mode_normalize(solved.get(), config.quadrature, &normed), "mode " + std::to_string(j));
        ModePtr mode(normed);

        Series s;
        s.label = "j = " + std::to_string(j) + ", mu = " + format_number(mu, 6);
        s.x.resize(n);
        s.y.resize(n);
        check(sb_mode_sample(mode.get(), params.get(), n, s.x.data(), s.y.data(), nullptr),
              "mode " + std::to_string(j));
        CsvWriter csv({"x", "u"});
        for (std::size_t i = 0; i < n; ++i) csv.row({format_number(s.x[i]), format_number(s.y[i])});
        const auto path = config.out_dir / ("mode_" + std::to_string(j) + ".csv");
        write_file(path, csv.text());
        if (!config.quiet) log << "wrote " << path.string() << '\n';
        plot.series.push_back(std::move(s));
    }
    write_file(config.out_dir / "modes.svg", render_svg(plot));
    if (!config.quiet) log << "wrote " << (config.out_dir / "modes.svg").string() << '\n';
    return kExitOk;
}

int cmd_growth(const RunConfig& config, std::ostream& log) {
    const auto params = resolve_parameters(config);
    const auto roots = compute_roots(config, params.get());
    require_roots(roots);

    const auto v = values_of(params.get());
    const bool symmetric = std::abs(v.length - 2.0 * v.attachment_point) <= 1e-12 * v.length;
    const std::size_t count = std::max(roots.exact.size(), roots.truncated.size());
    std::vector<double> closed(symmetric ? roots.truncated.size() : 0);
    if (!closed.empty()) {
        check(sb_closed_form_roots_half(v.length, static_cast<int>(closed.size()), closed.data()), "closed form");
    }

    std::vector<std::string> header{"j", "mu", "mu_bar"};
    if (symmetric) header.emplace_back("mu_closed_form");
    CsvWriter csv(header);
    Series exact{"exact mu_j", {}, {}, SeriesStyle::Markers, ""};
    Series truncated{"truncated mu_bar_j", {}, {}, SeriesStyle::Markers, ""};
    Series overlay{"closed form (l = 2 l0)", {}, {}, SeriesStyle::Line, "#555555"};
    for (std::size_t i = 0; i < count; ++i) {
        const double j = static_cast<double>(i + 1);
        std::vector<std::string> row{std::to_string(i + 1)};
        if (i < roots.exact.size()) {
            row.push_back(format_number(roots.exact[i], kRootDigits));
            exact.x.push_back(j);
            exact.y.push_back(roots.exact[i]);
        } else {
            row.emplace_back();
        }
        if (i < roots.truncated.size()) {
            row.push_back(format_number(roots.truncated[i], kRootDigits));
            truncated.x.push_back(j);
            truncated.y.push_back(roots.truncated[i]);
        } else {
            row.emplace_back();
        }
        if (symmetric) {
            if (i < closed.size()) {
                row.push_back(format_number(closed[i], kRootDigits));
                overlay.x.push_back(j);
                overlay.y.push_back(closed[i]);
            } else {
                row.emplace_back();
            }
        }
        csv.row(row);
    }
    write_file(config.out_dir / "growth.csv", csv.text());

    Plot plot;
    plot.title = "Spectral parameters against index";
    plot.x_label = "j";
    plot.y_label = "mu [1/m]";
    plot.series.push_back(std::move(exact));
    plot.series.push_back(std::move(truncated));
    if (symmetric) plot.series.push_back(std::move(overlay));
    write_file(config.out_dir / "growth.svg", render_svg(plot));
    if (!config.quiet) {
        log << roots.exact.size() << " exact and " << roots.truncated.size() << " truncated roots in "
            << window_text(roots) << '\n'
            << "wrote " << (config.out_dir / "growth.csv").string() << " and "
            << (config.out_dir / "growth.svg").string() << '\n';
    }
    return kExitOk;
}

}  // namespace sbcli

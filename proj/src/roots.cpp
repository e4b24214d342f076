#include "shakerbeam/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "shakerbeam/errors.hpp"
#include "shakerbeam/freqeq.hpp"

namespace shakerbeam {
namespace {

constexpr double kGridZero = 1e-13;
constexpr double kTangentFloor = 1e-10;

// Runs body(i) for i in [0, count), splitting the range into contiguous
// chunks over the requested number of threads.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body body) {
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads, count / 64 + 1));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t first = w * chunk;
        const std::size_t last = std::min(count, first + chunk);
        if (first >= last) break;
        pool.emplace_back([first, last, &body] {
            for (std::size_t i = first; i < last; ++i) body(i);
        });
    }
}

bool opposite_signs(double a, double b) { return (a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0); }

struct GoldenResult {
    double x;
    double value;  // signed value of f at x
};

// Minimises sign * f on [a, b]; stops early once the sign flips.
GoldenResult golden_minimum(const std::function<double(double)>& f, double a, double b, double sign) {
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < 80 && (b - a) > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
        if (sign * f1 <= 0.0) return {x1, f1};
        if (sign * f2 <= 0.0) return {x2, f2};
        if (sign * f1 < sign * f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = f(x2);
        }
    }
    return sign * f1 < sign * f2 ? GoldenResult{x1, f1} : GoldenResult{x2, f2};
}

}  // namespace

const char* to_string(Target t) { return t == Target::Phi ? "phi" : "phi0"; }

const char* to_string(PairingStatus s) {
    switch (s) {
        case PairingStatus::PairedUnique: return "paired_unique";
        case PairingStatus::NoExactRootInNeighborhood: return "no_exact_root_in_neighborhood";
        case PairingStatus::MultipleExactRoots: return "multiple_exact_roots";
        case PairingStatus::UnpairedExactRoot: return "unpaired_exact_root";
    }
    return "unknown";
}

const char* to_string(RowStatus s) {
    switch (s) {
        case RowStatus::PairedUnique: return "paired_unique";
        case RowStatus::PairedAmbiguous: return "paired_ambiguous";
        case RowStatus::TruncatedOnly: return "truncated_only";
        case RowStatus::ExactOnly: return "exact_only";
    }
    return "unknown";
}

double default_scan_step(double length) { return std::numbers::pi / (80.0 * length); }

double max_scan_step(double length) { return std::numbers::pi / (4.0 * length); }

double evaluate_target(Target target, double mu, const BeamParameters& params) {
    return target == Target::Phi ? phi(mu, params) : phi0(mu, params.length(), params.attachment_point());
}

Root refine_root(const std::function<double(double)>& f, Bracket bracket, double xtol) {
    double a = bracket.lo;
    double b = bracket.hi;
    double fa = f(a);
    double fb = f(b);
    Root root;
    root.bracket = bracket;
    if (fa == 0.0 || fb == 0.0) {
        root.mu = fa == 0.0 ? a : b;
        root.residual = 0.0;
        return root;
    }
    if (!opposite_signs(fa, fb)) {
        throw PreconditionError("refine_root: no sign change on [" + std::to_string(a) + ", " + std::to_string(b) + "]");
    }

    double c = a;
    double fc = fa;
    double d = b - a;
    double e = d;
    int it = 0;
    for (; it < 200; ++it) {
        if (opposite_signs(fb, fc) == false) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * xtol;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) break;

        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            // Inverse quadratic interpolation, secant when only two points.
            const double s = fb / fa;
            double p;
            double q;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
            const double min2 = std::abs(e * q);
            if (2.0 * p < std::min(min1, min2)) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol1 ? d : std::copysign(tol1, xm);
        fb = f(b);
    }
    root.mu = b;
    root.residual = fb;
    root.iterations = it;
    return root;
}

ScanResult scan_function(const std::function<double(double)>& f, Target tag, double mu_min, double mu_max,
                         const ScanOptions& options) {
    if (!(mu_min > 0.0) || !(mu_max > mu_min) || !std::isfinite(mu_max)) {
        throw ConfigurationError("scan window must satisfy 0 < mu_min < mu_max, got [" + std::to_string(mu_min) +
                                 ", " + std::to_string(mu_max) + "]");
    }
    if (!(options.step > 0.0)) throw ConfigurationError("scan step must be positive");

    const double step = options.step;
    auto cells = static_cast<std::size_t>(std::ceil((mu_max - mu_min) / step));
    if (cells == 0) cells = 1;
    std::vector<double> xs(cells + 1);
    for (std::size_t i = 0; i < cells; ++i) xs[i] = mu_min + static_cast<double>(i) * step;
    xs[cells] = mu_max;
    if (cells > 1 && xs[cells] - xs[cells - 1] < 1e-9 * step) {
        xs.erase(xs.begin() + static_cast<std::ptrdiff_t>(cells - 1));
    }
    const std::size_t n = xs.size();

    std::vector<double> vs(n);
    parallel_for(n, options.threads, [&](std::size_t i) { vs[i] = f(xs[i]); });

    std::vector<Bracket> brackets;
    std::vector<Root> grid_hits;
    ScanResult result;

    auto is_zero = [&](std::size_t i) { return std::abs(vs[i]) < kGridZero; };

    for (std::size_t i = 0; i < n; ++i) {
        if (is_zero(i)) {
            // A run of tiny values is one root; keep the smallest.
            std::size_t best = i;
            while (i + 1 < n && is_zero(i + 1)) {
                ++i;
                if (std::abs(vs[i]) < std::abs(vs[best])) best = i;
            }
            Root r;
            r.mu = xs[best];
            r.residual = vs[best];
            r.bracket = {xs[best], xs[best]};
            r.target = tag;
            r.grid_hit = true;
            grid_hits.push_back(r);
            continue;
        }
        if (i + 1 < n && !is_zero(i + 1) && opposite_signs(vs[i], vs[i + 1])) {
            brackets.push_back({xs[i], xs[i + 1]});
        }
    }

    // Local minima of |f| without a sign change: look for a hidden pair of
    // crossings inside the two adjacent cells, or a near-tangency.
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (is_zero(i - 1) || is_zero(i) || is_zero(i + 1)) continue;
        if (opposite_signs(vs[i - 1], vs[i]) || opposite_signs(vs[i], vs[i + 1])) continue;
        if (std::abs(vs[i]) > std::abs(vs[i - 1]) || std::abs(vs[i]) > std::abs(vs[i + 1])) continue;
        const double sign = vs[i] > 0.0 ? 1.0 : -1.0;
        const auto g = golden_minimum(f, xs[i - 1], xs[i + 1], sign);
        if (sign * g.value < 0.0) {
            brackets.push_back({xs[i - 1], g.x});
            brackets.push_back({g.x, xs[i + 1]});
        } else if (g.value == 0.0) {
            Root r;
            r.mu = g.x;
            r.bracket = {g.x, g.x};
            r.target = tag;
            r.grid_hit = true;
            grid_hits.push_back(r);
        } else if (std::abs(g.value) < kTangentFloor) {
            result.suspects.push_back(g.x);
        }
    }

    std::vector<Root> refined(brackets.size());
    parallel_for(brackets.size(), options.threads, [&](std::size_t k) {
        refined[k] = refine_root(f, brackets[k], options.xtol);
        refined[k].target = tag;
    });

    result.roots = std::move(refined);
    result.roots.insert(result.roots.end(), grid_hits.begin(), grid_hits.end());
    std::sort(result.roots.begin(), result.roots.end(), [](const Root& a, const Root& b) { return a.mu < b.mu; });
    std::sort(result.suspects.begin(), result.suspects.end());
    return result;
}

ScanResult scan_roots(Target target, const BeamParameters& params, double mu_min, double mu_max,
                      const ScanOptions& options) {
    ScanOptions opts = options;
    if (!(opts.step > 0.0)) opts.step = default_scan_step(params.length());
    if (opts.step >= max_scan_step(params.length())) {
        throw ConfigurationError("scan step " + std::to_string(opts.step) + " is too coarse: must be below pi/(4 l) = " +
                                 std::to_string(max_scan_step(params.length())) +
                                 " or adjacent roots may be skipped");
    }
    return scan_function([&params, target](double mu) { return evaluate_target(target, mu, params); }, target,
                         mu_min, mu_max, opts);
}

std::vector<double> closed_form_roots_half(double length, int count) {
    if (count < 1) throw ConfigurationError("closed_form_roots_half: count must be at least 1");
    if (!(length > 0.0)) throw DomainError("closed_form_roots_half: length must be positive");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int j = 1; j <= count; ++j) {
        const int whole = j / 2;
        const double frac = (j % 2 == 1) ? 0.5 : 0.0;
        out.push_back(std::numbers::pi / length * (frac + 2.0 * whole));
    }
    return out;
}

std::optional<std::pair<long long, long long>> rational_approximation(double x, long long max_denominator,
                                                                      double tolerance) {
    if (!std::isfinite(x) || x <= 0.0) return std::nullopt;
    long long h_prev = 1, h_prev2 = 0;
    long long k_prev = 0, k_prev2 = 1;
    double y = x;
    for (int it = 0; it < 64; ++it) {
        const double a_real = std::floor(y);
        if (a_real > 1e15) break;
        const auto a = static_cast<long long>(a_real);
        const long long h = a * h_prev + h_prev2;
        const long long k = a * k_prev + k_prev2;
        if (k > max_denominator) break;
        if (std::abs(x - static_cast<double>(h) / static_cast<double>(k)) <= tolerance * x) {
            return std::make_pair(h, k);
        }
        h_prev2 = h_prev;
        h_prev = h;
        k_prev2 = k_prev;
        k_prev = k;
        const double frac = y - a_real;
        if (frac <= 0.0) break;
        y = 1.0 / frac;
    }
    return std::nullopt;
}

LocalizationReport verify_localization(const BeamParameters& params, double epsilon, double threshold_M,
                                       double mu_max, const ScanOptions& options) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw PreconditionError("epsilon must be positive");
    if (!(mu_max > 0.0) || !std::isfinite(mu_max)) throw PreconditionError("mu_max must be positive");

    LocalizationReport report;
    report.threshold_M = threshold_M;
    report.epsilon = epsilon;
    report.mu_max = mu_max;

    const double l = params.length();
    const double l0 = params.attachment_point();
    if (const auto pq = rational_approximation(l0 / l, 1'000'000, 1e-14)) {
        report.ratio_rational = true;
        report.ratio_p = pq->first;
        report.ratio_q = pq->second;
    } else {
        report.warnings.emplace_back(
            "l0/l is not rational with denominator <= 1e6; the localization property is checked empirically only");
    }

    if (threshold_M >= mu_max) {
        report.verdict = true;
        report.warnings.emplace_back("threshold M >= mu_max: no truncated roots to check, verdict is vacuous");
        report.min_abs_phi0_outside = std::numeric_limits<double>::quiet_NaN();
        report.min_abs_dphi0_inside = std::numeric_limits<double>::quiet_NaN();
        report.max_abs_phi1 = std::numeric_limits<double>::quiet_NaN();
        report.max_abs_dphi1 = std::numeric_limits<double>::quiet_NaN();
        return report;
    }

    ScanOptions opts = options;
    if (!(opts.step > 0.0)) opts.step = default_scan_step(l);
    constexpr double kSmallestMu = 1e-3;
    const double lower = std::max(threshold_M, kSmallestMu);

    const auto truncated_scan =
        scan_roots(Target::Phi0, params, std::max(lower - 2.0 * epsilon, kSmallestMu), mu_max + 2.0 * epsilon, opts);
    std::vector<double> truncated_all;
    for (const auto& r : truncated_scan.roots) truncated_all.push_back(r.mu);
    std::vector<double> truncated;
    for (double t : truncated_all) {
        if (t > threshold_M && t <= mu_max) truncated.push_back(t);
    }

    for (std::size_t k = 1; k < truncated.size(); ++k) {
        const double gap = truncated[k] - truncated[k - 1];
        if (gap <= 2.0 * epsilon) {
            throw PreconditionError("neighbourhoods overlap: truncated roots " + std::to_string(truncated[k - 1]) +
                                    " and " + std::to_string(truncated[k]) + " are " + std::to_string(gap) +
                                    " apart, epsilon must be below " + std::to_string(gap / 2.0));
        }
    }

    const auto exact_scan =
        scan_roots(Target::Phi, params, std::max(lower - epsilon, kSmallestMu), mu_max + epsilon, opts);
    std::vector<double> exact;
    for (const auto& r : exact_scan.roots) exact.push_back(r.mu);

    for (double t : truncated) {
        RootPairing p;
        p.truncated_root = t;
        p.epsilon = epsilon;
        double best = std::numeric_limits<double>::infinity();
        for (double e : exact) {
            const double d = std::abs(e - t);
            if (d < epsilon) {
                ++p.exact_count;
                if (d < best) {
                    best = d;
                    p.exact_root = e;
                    p.distance = d;
                }
            }
        }
        p.status = p.exact_count == 1   ? PairingStatus::PairedUnique
                   : p.exact_count == 0 ? PairingStatus::NoExactRootInNeighborhood
                                        : PairingStatus::MultipleExactRoots;
        report.pairings.push_back(p);
    }

    auto inside_neighbourhood = [&](double mu) {
        return std::any_of(truncated_all.begin(), truncated_all.end(),
                           [&](double t) { return std::abs(mu - t) < epsilon; });
    };
    for (double e : exact) {
        if (e > threshold_M && e <= mu_max && !inside_neighbourhood(e)) report.stray_roots.push_back(e);
    }

    report.verdict = report.stray_roots.empty() &&
                     std::all_of(report.pairings.begin(), report.pairings.end(),
                                 [](const RootPairing& p) { return p.status == PairingStatus::PairedUnique; });

    // Empirical margins on a grid four times finer than the scan.
    const double h = opts.step / 4.0;
    double min_phi0_out = std::numeric_limits<double>::infinity();
    double min_dphi0_in = std::numeric_limits<double>::infinity();
    double max_phi1 = 0.0;
    double max_dphi1 = 0.0;
    for (double mu = lower + h * 0.5; mu <= mu_max; mu += h) {
        if (inside_neighbourhood(mu)) {
            min_dphi0_in = std::min(min_dphi0_in, std::abs(phi0_derivative(mu, l, l0)));
        } else {
            min_phi0_out = std::min(min_phi0_out, std::abs(phi0(mu, l, l0)));
        }
        max_phi1 = std::max(max_phi1, std::abs(phi1(mu, params)));
        const double dh = 1e-6 * std::max(1.0, mu);
        max_dphi1 = std::max(max_dphi1, std::abs(phi1(mu + dh, params) - phi1(mu - dh, params)) / (2.0 * dh));
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    report.min_abs_phi0_outside = std::isfinite(min_phi0_out) ? min_phi0_out : nan;
    report.min_abs_dphi0_inside = std::isfinite(min_dphi0_in) ? min_dphi0_in : nan;
    report.max_abs_phi1 = max_phi1;
    report.max_abs_dphi1 = max_dphi1;
    report.margins_certify = std::isfinite(min_phi0_out) && std::isfinite(min_dphi0_in) &&
                             max_phi1 < std::min(min_dphi0_in * epsilon, min_phi0_out) &&
                             max_dphi1 < 0.5 * min_dphi0_in;

    if (!exact_scan.suspects.empty() || !truncated_scan.suspects.empty()) {
        report.warnings.emplace_back("near-tangent minima detected; see scan suspects");
    }
    return report;
}

std::vector<TableRow> build_root_table(const std::vector<double>& exact, const std::vector<double>& truncated,
                                       double epsilon, double threshold_M) {
    auto nearest = [](const std::vector<double>& xs, double v) -> std::optional<std::size_t> {
        if (xs.empty()) return std::nullopt;
        const auto it = std::lower_bound(xs.begin(), xs.end(), v);
        std::size_t k = static_cast<std::size_t>(it - xs.begin());
        if (k == xs.size()) return xs.size() - 1;
        if (k > 0 && std::abs(xs[k - 1] - v) <= std::abs(xs[k] - v)) return k - 1;
        return k;
    };

    std::vector<std::optional<std::size_t>> partner_of_truncated(truncated.size());
    std::vector<bool> exact_used(exact.size(), false);
    for (std::size_t t = 0; t < truncated.size(); ++t) {
        const auto e = nearest(exact, truncated[t]);
        if (!e) continue;
        const auto back = nearest(truncated, exact[*e]);
        if (back && *back == t) {
            partner_of_truncated[t] = e;
            exact_used[*e] = true;
        }
    }

    struct Pending {
        double key;
        TableRow row;
    };
    std::vector<Pending> rows;
    for (std::size_t t = 0; t < truncated.size(); ++t) {
        TableRow row;
        row.truncated_root = truncated[t];
        if (const auto e = partner_of_truncated[t]) {
            row.exact_root = exact[*e];
            row.abs_gap = std::abs(exact[*e] - truncated[t]);
            const auto near_count = std::count_if(exact.begin(), exact.end(), [&](double x) {
                return std::abs(x - truncated[t]) < epsilon;
            });
            const bool verified = truncated[t] > threshold_M && row.abs_gap < epsilon && near_count == 1;
            row.status = verified ? RowStatus::PairedUnique : RowStatus::PairedAmbiguous;
            rows.push_back({exact[*e], row});
        } else {
            row.status = RowStatus::TruncatedOnly;
            rows.push_back({truncated[t], row});
        }
    }
    for (std::size_t e = 0; e < exact.size(); ++e) {
        if (exact_used[e]) continue;
        TableRow row;
        row.exact_root = exact[e];
        row.status = RowStatus::ExactOnly;
        rows.push_back({exact[e], row});
    }
    std::stable_sort(rows.begin(), rows.end(), [](const Pending& a, const Pending& b) { return a.key < b.key; });

    std::vector<TableRow> out;
    out.reserve(rows.size());
    int j = 0;
    for (auto& p : rows) {
        if (p.row.exact_root) ++j;
        p.row.j = j;
        out.push_back(p.row);
    }
    return out;
}

}  // namespace shakerbeam

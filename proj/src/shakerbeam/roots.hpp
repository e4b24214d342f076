#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "shakerbeam/core.hpp"

namespace shakerbeam {

enum class Target { Phi, Phi0 };

const char* to_string(Target t);

struct Bracket {
    double lo = 0.0;
    double hi = 0.0;
};

/// A located zero of a characteristic function.
struct Root {
    double mu = 0.0;
    double residual = 0.0;     // target evaluated at mu
    Bracket bracket;           // grid cell that held the sign change
    int iterations = 0;        // refinement steps
    Target target = Target::Phi;
    bool grid_hit = false;     // a grid point was already a zero; bracket is degenerate
};

struct ScanOptions {
    /// Grid spacing; <= 0 selects default_scan_step(l).
    double step = 0.0;
    /// Absolute width at which refinement stops.
    double xtol = 1e-13;
    /// Worker threads for grid evaluation and refinement.
    unsigned threads = 1;
};

struct ScanResult {
    std::vector<Root> roots;     // ascending in mu
    /// Abscissae of near-tangent minima of |f| (below 1e-10 without a sign
    /// change). These are not roots and are never paired.
    std::vector<double> suspects;
};

/// pi/(80 l): forty samples per period of sin(mu l).
double default_scan_step(double length);

/// Steps at or above pi/(4 l) are rejected.
double max_scan_step(double length);

/// Safeguarded bracketing refinement (bisection with inverse quadratic
/// interpolation) of a sign change of f on [lo, hi].
Root refine_root(const std::function<double(double)>& f, Bracket bracket, double xtol);

/// All positive roots of the target function in [mu_min, mu_max].
/// Throws ConfigurationError for an empty window or a step that could skip
/// adjacent roots.
ScanResult scan_roots(Target target, const BeamParameters& params, double mu_min, double mu_max,
                      const ScanOptions& options = {});

/// General scanner over an arbitrary function; used by scan_roots.
ScanResult scan_function(const std::function<double(double)>& f, Target tag, double mu_min, double mu_max,
                         const ScanOptions& options);

/// Truncated roots for the symmetric attachment l0 = l/2:
///   (pi/l) (frac(j/2) + 2 floor(j/2)),  j = 1..count.
std::vector<double> closed_form_roots_half(double length, int count);

double evaluate_target(Target target, double mu, const BeamParameters& params);

// --- localization ---------------------------------------------------------

enum class PairingStatus { PairedUnique, NoExactRootInNeighborhood, MultipleExactRoots, UnpairedExactRoot };

const char* to_string(PairingStatus s);

/// Exact-versus-truncated correspondence for one truncated root.
struct RootPairing {
    double truncated_root = 0.0;
    std::optional<double> exact_root;  // nearest exact root inside the neighbourhood
    double distance = 0.0;             // |exact - truncated| when present
    double epsilon = 0.0;
    int exact_count = 0;               // exact roots inside (truncated - eps, truncated + eps)
    PairingStatus status = PairingStatus::NoExactRootInNeighborhood;
};

struct LocalizationReport {
    double threshold_M = 0.0;
    double epsilon = 0.0;
    double mu_max = 0.0;
    std::vector<RootPairing> pairings;  // one per truncated root in (M, mu_max]
    std::vector<double> stray_roots;    // exact roots in (M, mu_max] outside every neighbourhood
    bool verdict = false;

    // Empirical margins standing in for the constants of the existence
    // argument: min |phi0| off the neighbourhoods, min |phi0'| on them, and
    // sup |phi1|, sup |phi1'| above M. NaN when the sampled set is empty.
    double min_abs_phi0_outside = 0.0;
    double min_abs_dphi0_inside = 0.0;
    double max_abs_phi1 = 0.0;
    double max_abs_dphi1 = 0.0;
    /// sup|phi1| < min(K eps, delta) and sup|phi1'| < K/2 with the margins above.
    bool margins_certify = false;

    /// l0/l matched by p/q with q <= 1e6.
    bool ratio_rational = false;
    long long ratio_p = 0;
    long long ratio_q = 0;

    std::vector<std::string> warnings;
};

/// Checks that every truncated root above threshold_M has exactly one exact
/// root within epsilon and that no exact root lies elsewhere above M.
/// Throws PreconditionError when epsilon <= 0 or when neighbourhoods of
/// consecutive truncated roots overlap. When threshold_M >= mu_max the
/// report is empty, the verdict vacuously true, and a warning is attached.
LocalizationReport verify_localization(const BeamParameters& params, double epsilon, double threshold_M,
                                       double mu_max, const ScanOptions& options = {});

/// Continued-fraction test for x = p/q with q <= max_denominator.
std::optional<std::pair<long long, long long>> rational_approximation(double x, long long max_denominator,
                                                                      double tolerance = 1e-12);

// --- tabulation --------------------------------------------------------------

enum class RowStatus { PairedUnique, PairedAmbiguous, TruncatedOnly, ExactOnly };

const char* to_string(RowStatus s);

/// One line of the exact/truncated comparison table.
struct TableRow {
    int j = 0;  // index of the exact root (rows before the first exact root get 0)
    std::optional<double> truncated_root;
    std::optional<double> exact_root;
    RowStatus status = RowStatus::ExactOnly;
    double abs_gap = 0.0;
};

/// Merges two ascending root lists into comparison rows. Roots pair when
/// they are mutual nearest neighbours; a pair is PairedUnique when it lies
/// above threshold_M, within epsilon, and no other exact root is within
/// epsilon of the truncated one, otherwise PairedAmbiguous.
std::vector<TableRow> build_root_table(const std::vector<double>& exact, const std::vector<double>& truncated,
                                       double epsilon, double threshold_M);

}  // namespace shakerbeam

#include "shakerbeam/shakerbeam.h"

#include <cmath>
#include <exception>
#include <limits>
#include <new>
#include <optional>
#include <string>
#include <utility>

#include "shakerbeam/core.hpp"
#include "shakerbeam/errors.hpp"
#include "shakerbeam/freqeq.hpp"
#include "shakerbeam/modes.hpp"
#include "shakerbeam/roots.hpp"
#include "shakerbeam/units.hpp"

struct sb_param_set {
    shakerbeam::RawParameters raw;
};

struct sb_params {
    shakerbeam::BeamParameters value;
};

struct sb_root_list {
    shakerbeam::ScanResult result;
};

struct sb_localization {
    shakerbeam::LocalizationReport report;
};

struct sb_root_table {
    std::vector<shakerbeam::TableRow> rows;
};

struct sb_mode {
    shakerbeam::ModeShape mode;
};

namespace {

using namespace shakerbeam;

struct LastError {
    std::string message;
    std::string field;
    double value = std::numeric_limits<double>::quiet_NaN();
};

thread_local LastError last_error;

void clear_error() {
    last_error.message.clear();
    last_error.field.clear();
    last_error.value = std::numeric_limits<double>::quiet_NaN();
}

sb_status fail(sb_status status, std::string message) {
    last_error.message = std::move(message);
    return status;
}

// Runs body and maps core exceptions onto status codes.
template <class F>
sb_status guarded(F&& body) {
    clear_error();
    try {
        body();
        return SB_OK;
    } catch (const ValidationError& e) {
        last_error.field = e.field();
        return fail(SB_ERR_VALIDATION, e.what());
    } catch (const DomainError& e) {
        return fail(SB_ERR_DOMAIN, e.what());
    } catch (const RangeError& e) {
        return fail(SB_ERR_RANGE, e.what());
    } catch (const ConfigurationError& e) {
        return fail(SB_ERR_CONFIGURATION, e.what());
    } catch (const PreconditionError& e) {
        return fail(SB_ERR_PRECONDITION, e.what());
    } catch (const DegenerateModeError& e) {
        last_error.value = e.det_m3();
        return fail(SB_ERR_DEGENERATE_MODE, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(SB_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::bad_alloc&) {
        return fail(SB_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(SB_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(SB_ERR_INTERNAL, "unknown error");
    }
}

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

ScanOptions to_options(const sb_scan_options* o) {
    ScanOptions out;
    if (o != nullptr) {
        out.step = o->step;
        if (o->xtol > 0.0) out.xtol = o->xtol;
        out.threads = o->threads == 0 ? 1 : o->threads;
    }
    return out;
}

template <class F>
sb_status eval_scalar(const sb_params* params, double mu, double* out, F&& f) {
    return guarded([&] {
        require(params != nullptr && out != nullptr, "null argument");
        *out = f(mu, params->value);
    });
}

}  // namespace

extern "C" {

const char* sb_version(void) { return "0.1.0"; }

const char* sb_status_string(sb_status status) {
    switch (status) {
        case SB_OK: return "ok";
        case SB_ERR_VALIDATION: return "validation error";
        case SB_ERR_DOMAIN: return "domain error";
        case SB_ERR_RANGE: return "range error";
        case SB_ERR_CONFIGURATION: return "configuration error";
        case SB_ERR_PRECONDITION: return "precondition violated";
        case SB_ERR_DEGENERATE_MODE: return "degenerate mode";
        case SB_ERR_INVALID_ARGUMENT: return "invalid argument";
        case SB_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* sb_last_error(void) { return last_error.message.c_str(); }
const char* sb_last_error_field(void) { return last_error.field.c_str(); }
double sb_last_error_value(void) { return last_error.value; }

// ---- parameters -------------------------------------------------------------

sb_status sb_param_set_create(sb_param_set** out) {
    return guarded([&] {
        require(out != nullptr, "null output");
        *out = new sb_param_set{};
    });
}

sb_status sb_param_set_put(sb_param_set* set, const char* key, const char* value) {
    return guarded([&] {
        require(set != nullptr && key != nullptr && value != nullptr, "null argument");
        set->raw[key] = value;
    });
}

const char* sb_param_set_get(const sb_param_set* set, const char* key) {
    if (set == nullptr || key == nullptr) return nullptr;
    const auto it = set->raw.find(key);
    return it == set->raw.end() ? nullptr : it->second.c_str();
}

sb_status sb_param_set_reference(sb_param_set** out) {
    return guarded([&] {
        require(out != nullptr, "null output");
        *out = new sb_param_set{reference_raw_parameters()};
    });
}

void sb_param_set_destroy(sb_param_set* set) { delete set; }

sb_status sb_params_validate(const sb_param_set* set, sb_params** out) {
    return guarded([&] {
        require(set != nullptr && out != nullptr, "null argument");
        *out = new sb_params{validate_parameters(set->raw)};
    });
}

sb_status sb_params_create(double youngs_modulus, double second_moment, double linear_density, double length,
                           double attachment_point, double shaker_mass, double spring_stiffness, sb_params** out) {
    return guarded([&] {
        require(out != nullptr, "null output");
        *out = new sb_params{BeamParameters::make(youngs_modulus, second_moment, linear_density, length,
                                                  attachment_point, shaker_mass, spring_stiffness)};
    });
}

sb_status sb_params_reference(sb_params** out) {
    return guarded([&] {
        require(out != nullptr, "null output");
        *out = new sb_params{reference_parameters()};
    });
}

sb_status sb_params_with_attachment_point(const sb_params* params, double attachment_point, sb_params** out) {
    return guarded([&] {
        require(params != nullptr && out != nullptr, "null argument");
        *out = new sb_params{params->value.with_attachment_point(attachment_point)};
    });
}

sb_status sb_params_with_shaker(const sb_params* params, double mass, double stiffness, sb_params** out) {
    return guarded([&] {
        require(params != nullptr && out != nullptr, "null argument");
        *out = new sb_params{params->value.with_shaker(mass, stiffness)};
    });
}

void sb_params_destroy(sb_params* params) { delete params; }

sb_status sb_params_get(const sb_params* params, sb_param_values* out) {
    return guarded([&] {
        require(params != nullptr && out != nullptr, "null argument");
        const auto& p = params->value;
        *out = {p.youngs_modulus(), p.second_moment(), p.linear_density(), p.length(), p.attachment_point(),
                p.shaker_mass(),    p.spring_stiffness(), p.flexural_rigidity(), p.frequency_scale()};
    });
}

sb_status sb_parse_quantity(const char* text, double* out_value, int dims[3]) {
    return guarded([&] {
        require(text != nullptr && out_value != nullptr, "null argument");
        const auto q = units::parse_quantity(text);
        *out_value = q.value;
        if (dims != nullptr) {
            dims[0] = q.dimension.mass;
            dims[1] = q.dimension.length;
            dims[2] = q.dimension.time;
        }
    });
}

// ---- characteristic functions ----------------------------------------------

sb_status sb_spectral_point_of(const sb_params* params, double mu, sb_spectral_point* out) {
    return guarded([&] {
        require(params != nullptr && out != nullptr, "null argument");
        const auto s = to_spectral_point(mu, params->value);
        *out = {s.mu, s.omega, s.lambda_imag, s.nu};
    });
}

sb_status sb_krylov(double mu, double x, double z[4]) {
    return guarded([&] {
        require(z != nullptr, "null output");
        const auto k = krylov(mu, x);
        z[0] = k.z1;
        z[1] = k.z2;
        z[2] = k.z3;
        z[3] = k.z4;
    });
}

sb_status sb_exp_xm(double mu, double x, double out[16]) {
    return guarded([&] {
        require(out != nullptr, "null output");
        const auto m = exp_xM(mu, x);
        for (std::size_t i = 0; i < 16; ++i) out[i] = m.a[i];
    });
}

sb_status sb_det_m_closed(const sb_params* params, double mu, double* out) {
    return eval_scalar(params, mu, out, [](double x, const BeamParameters& p) { return det_M_closed(x, p); });
}

sb_status sb_det_m_oracle(const sb_params* params, double mu, double* out) {
    return eval_scalar(params, mu, out, [](double x, const BeamParameters& p) { return det_M_oracle(x, p); });
}

sb_status sb_phi0(const sb_params* params, double mu, double* out) {
    return eval_scalar(params, mu, out,
                       [](double x, const BeamParameters& p) { return phi0(x, p.length(), p.attachment_point()); });
}

sb_status sb_phi0_derivative(const sb_params* params, double mu, double* out) {
    return eval_scalar(params, mu, out, [](double x, const BeamParameters& p) {
        return phi0_derivative(x, p.length(), p.attachment_point());
    });
}

sb_status sb_phi1(const sb_params* params, double mu, double* out) {
    return eval_scalar(params, mu, out, [](double x, const BeamParameters& p) { return phi1(x, p); });
}

sb_status sb_phi(const sb_params* params, double mu, double* out) {
    return eval_scalar(params, mu, out, [](double x, const BeamParameters& p) { return phi(x, p); });
}

sb_status sb_phi_prefactor(const sb_params* params, double mu, double* out) {
    return eval_scalar(params, mu, out, [](double x, const BeamParameters& p) { return phi_prefactor(x, p); });
}

sb_status sb_det_m3(const sb_params* params, double mu, double* out) {
    return eval_scalar(params, mu, out,
                       [](double x, const BeamParameters& p) { return det_M3(x, p.length(), p.attachment_point()); });
}

// ---- roots ----------------------------------------------------------------

void sb_scan_options_init(sb_scan_options* options) {
    if (options == nullptr) return;
    const ScanOptions d;
    *options = {d.step, d.xtol, d.threads};
}

double sb_default_scan_step(double length) { return default_scan_step(length); }
double sb_max_scan_step(double length) { return max_scan_step(length); }

sb_status sb_scan_roots(const sb_params* params, sb_target target, double mu_min, double mu_max,
                        const sb_scan_options* options, sb_root_list** out) {
    return guarded([&] {
        require(params != nullptr && out != nullptr, "null argument");
        require(target == SB_TARGET_PHI || target == SB_TARGET_PHI0, "unknown target");
        const Target t = target == SB_TARGET_PHI ? Target::Phi : Target::Phi0;
        *out = new sb_root_list{scan_roots(t, params->value, mu_min, mu_max, to_options(options))};
    });
}

size_t sb_root_list_size(const sb_root_list* list) { return list == nullptr ? 0 : list->result.roots.size(); }

sb_status sb_root_list_get(const sb_root_list* list, size_t index, sb_root* out) {
    return guarded([&] {
        require(list != nullptr && out != nullptr, "null argument");
        require(index < list->result.roots.size(), "root index out of range");
        const auto& r = list->result.roots[index];
        *out = {r.mu,
                r.residual,
                r.bracket.lo,
                r.bracket.hi,
                r.iterations,
                r.grid_hit ? 1 : 0,
                r.target == Target::Phi ? SB_TARGET_PHI : SB_TARGET_PHI0};
    });
}

size_t sb_root_list_suspect_count(const sb_root_list* list) {
    return list == nullptr ? 0 : list->result.suspects.size();
}

sb_status sb_root_list_suspect(const sb_root_list* list, size_t index, double* out) {
    return guarded([&] {
        require(list != nullptr && out != nullptr, "null argument");
        require(index < list->result.suspects.size(), "suspect index out of range");
        *out = list->result.suspects[index];
    });
}

void sb_root_list_destroy(sb_root_list* list) { delete list; }

sb_status sb_closed_form_roots_half(double length, int count, double* out) {
    return guarded([&] {
        require(out != nullptr || count == 0, "null output");
        const auto roots = closed_form_roots_half(length, count);
        for (std::size_t i = 0; i < roots.size(); ++i) out[i] = roots[i];
    });
}

// ---- localization --------------------------------------------------------------

const char* sb_pairing_status_string(sb_pairing_status status) {
    switch (status) {
        case SB_PAIRING_PAIRED_UNIQUE: return to_string(PairingStatus::PairedUnique);
        case SB_PAIRING_NO_EXACT_ROOT: return to_string(PairingStatus::NoExactRootInNeighborhood);
        case SB_PAIRING_MULTIPLE_EXACT_ROOTS: return to_string(PairingStatus::MultipleExactRoots);
        case SB_PAIRING_UNPAIRED_EXACT_ROOT: return to_string(PairingStatus::UnpairedExactRoot);
    }
    return "unknown";
}

sb_status sb_verify_localization(const sb_params* params, double epsilon, double threshold_M, double mu_max,
                                 const sb_scan_options* options, sb_localization** out) {
    return guarded([&] {
        require(params != nullptr && out != nullptr, "null argument");
        *out = new sb_localization{
            verify_localization(params->value, epsilon, threshold_M, mu_max, to_options(options))};
    });
}

sb_status sb_localization_get_summary(const sb_localization* report, sb_localization_summary* out) {
    return guarded([&] {
        require(report != nullptr && out != nullptr, "null argument");
        const auto& r = report->report;
        *out = {r.verdict ? 1 : 0,
                r.margins_certify ? 1 : 0,
                r.threshold_M,
                r.epsilon,
                r.mu_max,
                r.min_abs_phi0_outside,
                r.min_abs_dphi0_inside,
                r.max_abs_phi1,
                r.max_abs_dphi1,
                r.ratio_rational ? 1 : 0,
                r.ratio_p,
                r.ratio_q,
                r.pairings.size(),
                r.stray_roots.size(),
                r.warnings.size()};
    });
}

sb_status sb_localization_pairing(const sb_localization* report, size_t index, sb_pairing* out) {
    return guarded([&] {
        require(report != nullptr && out != nullptr, "null argument");
        require(index < report->report.pairings.size(), "pairing index out of range");
        const auto& p = report->report.pairings[index];
        sb_pairing_status s = SB_PAIRING_PAIRED_UNIQUE;
        switch (p.status) {
            case PairingStatus::PairedUnique: s = SB_PAIRING_PAIRED_UNIQUE; break;
            case PairingStatus::NoExactRootInNeighborhood: s = SB_PAIRING_NO_EXACT_ROOT; break;
            case PairingStatus::MultipleExactRoots: s = SB_PAIRING_MULTIPLE_EXACT_ROOTS; break;
            case PairingStatus::UnpairedExactRoot: s = SB_PAIRING_UNPAIRED_EXACT_ROOT; break;
        }
        *out = {p.truncated_root,
                p.exact_root ? 1 : 0,
                p.exact_root.value_or(std::numeric_limits<double>::quiet_NaN()),
                p.distance,
                p.epsilon,
                p.exact_count,
                s};
    });
}

sb_status sb_localization_stray(const sb_localization* report, size_t index, double* out) {
    return guarded([&] {
        require(report != nullptr && out != nullptr, "null argument");
        require(index < report->report.stray_roots.size(), "stray index out of range");
        *out = report->report.stray_roots[index];
    });
}

const char* sb_localization_warning(const sb_localization* report, size_t index) {
    if (report == nullptr || index >= report->report.warnings.size()) return nullptr;
    return report->report.warnings[index].c_str();
}

void sb_localization_destroy(sb_localization* report) { delete report; }

// ---- comparison table ---------------------------------------------------------

const char* sb_row_status_string(sb_row_status status) {
    switch (status) {
        case SB_ROW_PAIRED_UNIQUE: return to_string(RowStatus::PairedUnique);
        case SB_ROW_PAIRED_AMBIGUOUS: return to_string(RowStatus::PairedAmbiguous);
        case SB_ROW_TRUNCATED_ONLY: return to_string(RowStatus::TruncatedOnly);
        case SB_ROW_EXACT_ONLY: return to_string(RowStatus::ExactOnly);
    }
    return "unknown";
}

sb_status sb_build_root_table(const double* exact, size_t exact_count, const double* truncated,
                              size_t truncated_count, double epsilon, double threshold_M, sb_root_table** out) {
    return guarded([&] {
        require(out != nullptr, "null output");
        require(exact != nullptr || exact_count == 0, "null exact roots");
        require(truncated != nullptr || truncated_count == 0, "null truncated roots");
        std::vector<double> e(exact, exact + exact_count);
        std::vector<double> t(truncated, truncated + truncated_count);
        *out = new sb_root_table{build_root_table(e, t, epsilon, threshold_M)};
    });
}

size_t sb_root_table_size(const sb_root_table* table) { return table == nullptr ? 0 : table->rows.size(); }

sb_status sb_root_table_get(const sb_root_table* table, size_t index, sb_table_row* out) {
    return guarded([&] {
        require(table != nullptr && out != nullptr, "null argument");
        require(index < table->rows.size(), "row index out of range");
        const auto& r = table->rows[index];
        sb_row_status s = SB_ROW_EXACT_ONLY;
        switch (r.status) {
            case RowStatus::PairedUnique: s = SB_ROW_PAIRED_UNIQUE; break;
            case RowStatus::PairedAmbiguous: s = SB_ROW_PAIRED_AMBIGUOUS; break;
            case RowStatus::TruncatedOnly: s = SB_ROW_TRUNCATED_ONLY; break;
            case RowStatus::ExactOnly: s = SB_ROW_EXACT_ONLY; break;
        }
        const double nan = std::numeric_limits<double>::quiet_NaN();
        *out = {r.j,
                r.truncated_root ? 1 : 0,
                r.truncated_root.value_or(nan),
                r.exact_root ? 1 : 0,
                r.exact_root.value_or(nan),
                s,
                r.abs_gap};
    });
}

void sb_root_table_destroy(sb_root_table* table) { delete table; }

// ---- modes ------------------------------------------------------------------

sb_status sb_mode_solve(const sb_params* params, double mu, sb_mode** out) {
    return guarded([&] {
        require(params != nullptr && out != nullptr, "null argument");
        *out = new sb_mode{solve_mode(mu, params->value)};
    });
}

sb_status sb_mode_normalize(const sb_mode* mode, int quadrature_points, sb_mode** out) {
    return guarded([&] {
        require(mode != nullptr && out != nullptr, "null argument");
        *out = new sb_mode{normalize_L2(mode->mode, quadrature_points)};
    });
}

sb_status sb_mode_get_info(const sb_mode* mode, sb_mode_info* out) {
    return guarded([&] {
        require(mode != nullptr && out != nullptr, "null argument");
        const auto& m = mode->mode;
        const auto b = m.boundary_values();
        const auto& c = m.coefficients();
        *out = {m.mu(),
                m.omega(),
                m.length(),
                m.attachment_point(),
                m.det_m3(),
                m.normalization(),
                m.sign(),
                m.normalized() ? 1 : 0,
                b.u1_0,
                b.u3_0,
                b.u1_l,
                b.u3_l,
                m.attachment_displacement(),
                m.attachment_velocity_magnitude(),
                {c.sin_left, c.sinh_left, c.sin_right, c.sinh_right}};
    });
}

sb_status sb_mode_value(const sb_mode* mode, double x, double* out) {
    return guarded([&] {
        require(mode != nullptr && out != nullptr, "null argument");
        *out = mode->mode.value(x);
    });
}

sb_status sb_mode_derivative(const sb_mode* mode, double x, int order, double* out) {
    return guarded([&] {
        require(mode != nullptr && out != nullptr, "null argument");
        *out = mode->mode.derivative(x, order);
    });
}

sb_status sb_mode_branch_derivative(const sb_mode* mode, sb_branch branch, double x, int order, double* out) {
    return guarded([&] {
        require(mode != nullptr && out != nullptr, "null argument");
        require(branch == SB_BRANCH_LEFT || branch == SB_BRANCH_RIGHT, "unknown branch");
        *out = mode->mode.branch_derivative(branch == SB_BRANCH_LEFT ? Branch::Left : Branch::Right, x, order);
    });
}

sb_status sb_mode_l2_norm_squared(const sb_mode* mode, int quadrature_points, double* out) {
    return guarded([&] {
        require(mode != nullptr && out != nullptr, "null argument");
        *out = l2_norm_squared(mode->mode, quadrature_points);
    });
}

sb_status sb_mode_interface_residuals(const sb_mode* mode, const sb_params* params, double out[4]) {
    return guarded([&] {
        require(mode != nullptr && params != nullptr && out != nullptr, "null argument");
        const auto r = interface_residuals(mode->mode, params->value);
        out[0] = r.continuity[0];
        out[1] = r.continuity[1];
        out[2] = r.continuity[2];
        out[3] = r.jump_balance;
    });
}

sb_status sb_mode_sample(const sb_mode* mode, const sb_params* params, size_t samples, double* x, double* u,
                         double* v_magnitude) {
    return guarded([&] {
        require(mode != nullptr && params != nullptr && x != nullptr && u != nullptr, "null argument");
        const auto s = full_state(mode->mode, params->value, samples);
        for (std::size_t i = 0; i < samples; ++i) {
            x[i] = s.x[i];
            u[i] = s.u[i];
            if (v_magnitude != nullptr) v_magnitude[i] = s.v_magnitude[i];
        }
    });
}

void sb_mode_destroy(sb_mode* mode) { delete mode; }

sb_status sb_reference_boundary_values(const sb_params* params, double mu, double out[4]) {
    return guarded([&] {
        require(params != nullptr && out != nullptr, "null argument");
        const auto b = solve_boundary_values_reference(mu, params->value);
        out[0] = b.u1_0;
        out[1] = b.u3_0;
        out[2] = b.u1_l;
        out[3] = b.u3_l;
    });
}

}  // extern "C"

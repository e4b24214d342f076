#include "shakerbeam/modes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "shakerbeam/errors.hpp"
#include "shakerbeam/freqeq.hpp"
#include "shakerbeam/linalg.hpp"
#include "shakerbeam/quadrature.hpp"

namespace shakerbeam {
namespace {

constexpr double kNotEigenvalue = 1e-6;
constexpr double kRankDeficient = 1e-8;

// sinh(s)/sinh(t) and cosh(s)/sinh(t) for t > 0 without overflow.
double sinh_ratio(double s, double t) { return std::exp(s - t) * std::expm1(-2.0 * s) / std::expm1(-2.0 * t); }
double cosh_ratio(double s, double t) { return std::exp(s - t) * (1.0 + std::exp(-2.0 * s)) / -std::expm1(-2.0 * t); }

// k-th derivative of sin at s, in units of the argument.
double sin_derivative(double s, int k) {
    switch (k % 4) {
        case 0: return std::sin(s);
        case 1: return std::cos(s);
        case 2: return -std::sin(s);
        default: return -std::cos(s);
    }
}

const quadrature::Rule& panel_rule() {
    static const quadrature::Rule rule = quadrature::gauss_legendre(16);
    return rule;
}

}  // namespace

ModeShape::ModeShape(double mu, double omega, double length, double attachment_point,
                     ModeCoefficients coefficients, double det_m3)
    : mu_(mu),
      omega_(omega),
      length_(length),
      attachment_point_(attachment_point),
      coefficients_(coefficients),
      det_m3_(det_m3) {}

double ModeShape::branch_derivative(Branch branch, double x, int order) const {
    if (order < 0 || order > 4) throw DomainError("mode derivative order must be in [0, 4]");
    const double muk = std::pow(mu_, order);
    if (branch == Branch::Left) {
        const double s = mu_ * x;
        const double t = mu_ * attachment_point_;
        const double hyp = order % 2 == 0 ? sinh_ratio(s, t) : cosh_ratio(s, t);
        return muk * (coefficients_.sin_left * sin_derivative(s, order) + coefficients_.sinh_left * hyp);
    }
    const double s = mu_ * (length_ - x);
    const double t = mu_ * (length_ - attachment_point_);
    const double hyp = order % 2 == 0 ? sinh_ratio(s, t) : cosh_ratio(s, t);
    const double sign = order % 2 == 0 ? 1.0 : -1.0;
    return sign * muk * (coefficients_.sin_right * sin_derivative(s, order) + coefficients_.sinh_right * hyp);
}

double ModeShape::derivative(double x, int order) const {
    if (!(x >= 0.0 && x <= length_)) {
        throw DomainError("x = " + std::to_string(x) + " outside [0, " + std::to_string(length_) + "]");
    }
    return branch_derivative(x <= attachment_point_ ? Branch::Left : Branch::Right, x, order);
}

double ModeShape::value(double x) const { return derivative(x, 0); }

BoundaryValues ModeShape::boundary_values() const {
    return {branch_derivative(Branch::Left, 0.0, 1), branch_derivative(Branch::Left, 0.0, 3),
            branch_derivative(Branch::Right, length_, 1), branch_derivative(Branch::Right, length_, 3)};
}

BoundaryValues ModeShape::gauge_boundary_values() const {
    BoundaryValues b = boundary_values();
    const double mu3 = mu_ * mu_ * mu_;
    const double g = std::abs(b.u3_l) > 1e-12 * mu3 * amplitude() ? b.u3_l : b.u1_l;
    return {b.u1_0 / g, b.u3_0 / g, b.u1_l / g, b.u3_l / g};
}

double ModeShape::attachment_displacement() const { return branch_derivative(Branch::Left, attachment_point_, 0); }

double ModeShape::attachment_velocity_magnitude() const { return omega_ * attachment_displacement(); }

double ModeShape::amplitude() const {
    return std::max({std::abs(coefficients_.sin_left), std::abs(coefficients_.sinh_left),
                     std::abs(coefficients_.sin_right), std::abs(coefficients_.sinh_right)});
}

ModeShape ModeShape::scaled(double factor) const {
    ModeShape out = *this;
    out.coefficients_ = {factor * coefficients_.sin_left, factor * coefficients_.sinh_left,
                         factor * coefficients_.sin_right, factor * coefficients_.sinh_right};
    out.normalization_ = normalization_ * std::abs(factor);
    out.normalized_ = false;
    return out;
}

ModeShape ModeShape::as_normalized(double factor, int sign) const {
    ModeShape out = scaled(sign * factor);
    out.sign_ = sign * sign_;
    out.normalized_ = true;
    return out;
}

ModeShape solve_mode(const Root& root, const BeamParameters& params) {
    if (root.target != Target::Phi) {
        throw PreconditionError("solve_mode needs a root of the exact characteristic function");
    }
    return solve_mode(root.mu, params);
}

ModeShape solve_mode(double mu, const BeamParameters& params) {
    if (!(mu > 0.0)) throw DomainError("solve_mode: mu must be positive");
    const double l = params.length();
    const double l0 = params.attachment_point();
    const double r = l - l0;
    const double det3 = det_M3(mu, l, l0);

    const double s0 = std::sin(mu * l0);
    const double c0 = std::cos(mu * l0);
    const double s1 = std::sin(mu * r);
    const double c1 = std::cos(mu * r);
    const double k0 = cosh_ratio(mu * l0, mu * l0);
    const double k1 = cosh_ratio(mu * r, mu * r);
    const double beta = shaker_coupling(mu, params) / (mu * mu * mu);

    // Rows: u, u'/mu, u''/mu^2 continuity and the u''' jump balance / mu^3,
    // unknowns (sin_left, sinh_left, sin_right, sinh_right).
    const linalg::Matrix<double, 4> system{{
        {s0, 1.0, -s1, -1.0},
        {c0, k0, c1, k1},
        {-s0, 1.0, s1, -1.0},
        {-c0 - beta * s0, k0 - beta, -c1, k1},
    }};
    const auto null = linalg::null_vector(system);
    if (null.relative_pivots[2] < kRankDeficient) {
        throw DegenerateModeError("mode at mu = " + std::to_string(mu) +
                                      " is not unique (interface system rank < 3), det M3 = " + std::to_string(det3),
                                  det3);
    }
    if (null.relative_pivots[3] > kNotEigenvalue) {
        throw PreconditionError("mu = " + std::to_string(mu) +
                                " is not an eigenvalue: interface system is regular (relative pivot " +
                                std::to_string(null.relative_pivots[3]) + ")");
    }

    const auto& v = null.vector;
    ModeShape raw(mu, params.frequency_scale() * mu * mu, l, l0, ModeCoefficients{v[0], v[1], v[2], v[3]}, det3);
    const auto b = raw.boundary_values();
    const double mu3 = mu * mu * mu;
    const double gauge = std::abs(b.u3_l) > 1e-12 * mu3 * raw.amplitude() ? b.u3_l : b.u1_l;
    if (gauge == 0.0 || !std::isfinite(gauge)) {
        throw DegenerateModeError("mode at mu = " + std::to_string(mu) + " has vanishing end derivatives", det3);
    }
    const ModeShape gauged = raw.scaled(1.0 / gauge);
    return ModeShape(mu, gauged.omega(), l, l0, gauged.coefficients(), det3);
}

BoundaryValues solve_boundary_values_reference(double mu, const BeamParameters& params) {
    const auto m3 = boundary_matrix3(mu, params);
    const double det3 = det_M3(mu, params.length(), params.attachment_point());
    double scale = 0.0;
    for (const auto& row : m3) {
        for (double e : row) scale = std::max(scale, std::abs(e));
    }
    if (!(std::abs(det3) > 1e-10 * scale)) {
        throw DegenerateModeError("3x3 boundary system is singular at mu = " + std::to_string(mu) +
                                      ", det M3 = " + std::to_string(det3),
                                  det3);
    }
    const auto z = krylov(mu, params.attachment_point() - params.length());
    const auto x = linalg::lu_solve(m3, linalg::Vector<double, 3>{z.z4, z.z3, z.z2});
    if (!x) throw DegenerateModeError("3x3 boundary system is singular", det3);
    return {(*x)[0], (*x)[1], (*x)[2], 1.0};
}

double evaluate_mode(const ModeShape& mode, double x) { return mode.value(x); }

double l2_norm_squared(const ModeShape& mode, int quadrature_points) {
    const auto& rule = panel_rule();
    const double nodes_per_panel = static_cast<double>(rule.nodes.size());
    auto panels_for = [&](double width) {
        const double by_count = std::ceil(0.5 * quadrature_points / nodes_per_panel);
        const double by_wavelength = std::ceil(width * mode.mu() * 2.0 / 3.141592653589793);
        return static_cast<int>(std::max({1.0, by_count, by_wavelength}));
    };
    const double l0 = mode.attachment_point();
    const double l = mode.length();
    const double left = quadrature::integrate(
        [&](double x) {
            const double u = mode.branch_derivative(Branch::Left, x, 0);
            return u * u;
        },
        0.0, l0, panels_for(l0), rule);
    const double right = quadrature::integrate(
        [&](double x) {
            const double u = mode.branch_derivative(Branch::Right, x, 0);
            return u * u;
        },
        l0, l, panels_for(l - l0), rule);
    return left + right;
}

ModeShape normalize_L2(const ModeShape& mode, int quadrature_points) {
    if (quadrature_points < 64) throw ConfigurationError("normalize_L2 needs at least 64 quadrature points");
    const double norm2 = l2_norm_squared(mode, quadrature_points);
    if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
        throw DegenerateModeError("mode has zero L2 norm", mode.det_m3());
    }
    const double factor = 1.0 / std::sqrt(norm2);
    const int sign = mode.branch_derivative(Branch::Left, 0.0, 1) < 0.0 ? -1 : 1;
    return mode.as_normalized(factor, sign);
}

InterfaceResiduals interface_residuals(const ModeShape& mode, const BeamParameters& params) {
    InterfaceResiduals out;
    const double l0 = mode.attachment_point();
    const double amp = mode.amplitude();
    for (int k = 0; k < 3; ++k) {
        const double a = mode.branch_derivative(Branch::Left, l0, k);
        const double b = mode.branch_derivative(Branch::Right, l0, k);
        const double scale = std::max({std::abs(a), std::abs(b), std::pow(mode.mu(), k) * amp});
        out.continuity[static_cast<std::size_t>(k)] = std::abs(a - b) / scale;
    }
    const double EI = params.flexural_rigidity();
    const double lhs =
        EI * (mode.branch_derivative(Branch::Left, l0, 3) - mode.branch_derivative(Branch::Right, l0, 3));
    const double omega = mode.omega();
    const double rhs = (params.spring_stiffness() - params.shaker_mass() * omega * omega) * mode.attachment_displacement();
    const double scale = std::max({std::abs(lhs), std::abs(rhs), EI * std::pow(mode.mu(), 3) * amp});
    out.jump_balance = std::abs(lhs - rhs) / scale;
    return out;
}

StateSamples full_state(const ModeShape& mode, const BeamParameters& params, std::size_t samples) {
    if (!mode.normalized()) throw PreconditionError("full_state needs a normalised mode");
    if (samples < 2) throw ConfigurationError("full_state needs at least two samples");
    (void)params;
    StateSamples s;
    s.omega = mode.omega();
    const double l = mode.length();
    s.x.resize(samples);
    s.u.resize(samples);
    s.v_magnitude.resize(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        s.x[i] = i + 1 == samples ? l : l * static_cast<double>(i) / static_cast<double>(samples - 1);
        s.u[i] = mode.value(s.x[i]);
        s.v_magnitude[i] = s.omega * s.u[i];
    }
    s.p = mode.attachment_displacement();
    s.q_magnitude = s.omega * s.p;
    return s;
}

}  // namespace shakerbeam

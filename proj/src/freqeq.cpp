#include "shakerbeam/freqeq.hpp"

#include <quadmath.h>

#include <cmath>
#include <string>

#include "shakerbeam/errors.hpp"

namespace shakerbeam {
namespace {

using quad = __float128;

void require_positive_mu(double mu, const char* who) {
    if (!(mu > 0.0)) throw DomainError(std::string(who) + ": mu must be positive");
}

struct QuadKrylov {
    quad z1, z2, z3, z4;
};

QuadKrylov krylov_quad(quad mu, quad x) {
    const quad t = mu * x;
    const quad ch = coshq(t);
    const quad sh = sinhq(t);
    const quad c = cosq(t);
    const quad s = sinq(t);
    const quad mu2 = mu * mu;
    return {(ch + c) / 2, (sh + s) / (2 * mu), (ch - c) / (2 * mu2), (sh - s) / (2 * mu2 * mu)};
}

// Rows: continuity of u, u', u'' and the shaker force balance at l0.
template <typename T, typename Z>
linalg::Matrix<T, 4> assemble_interface(T mu, const Z& a, const Z& b, T coupling) {
    const T mu4 = mu * mu * mu * mu;
    return {{
        {a.z2, a.z4, -b.z2, -b.z4},
        {a.z1, a.z3, -b.z1, -b.z3},
        {mu4 * a.z4, a.z2, -mu4 * b.z4, -b.z2},
        {mu4 * a.z3 - coupling * a.z2, a.z1 - coupling * a.z4, -mu4 * b.z3, -b.z1},
    }};
}

}  // namespace

double shaker_coupling(double mu, const BeamParameters& params) {
    const double mu4 = mu * mu * mu * mu;
    return params.spring_stiffness() / params.flexural_rigidity() -
           params.shaker_mass() / params.linear_density() * mu4;
}

double det_M_closed(double mu, const BeamParameters& p) {
    require_positive_mu(mu, "det_M_closed");
    const double l = p.length();
    const double l0 = p.attachment_point();
    if (mu * l > kClosedFormMaxMuL) {
        throw RangeError("det_M_closed: mu*l = " + std::to_string(mu * l) +
                         " overflows the unscaled form; use phi for large mu");
    }
    const double L = mu * l;
    const double D = mu * (l - 2.0 * l0);
    const double sL = std::sin(L);
    const double cL = std::cos(L);
    const double shL = std::sinh(L);
    const double chL = std::cosh(L);
    const double cD = std::cos(D);
    const double chD = std::cosh(D);
    const double mu2 = mu * mu;
    const double mu5 = mu2 * mu2 * mu;

    const double mass_group = p.shaker_mass() / (4.0 * mu * p.linear_density()) * ((chD - chL) * sL + (cD - cL) * shL);
    const double beam_term = -sL * shL / mu2;
    const double spring_group =
        p.spring_stiffness() / (4.0 * p.flexural_rigidity() * mu5) * ((chL - chD) * sL + (cL - cD) * shL);
    return mass_group + beam_term + spring_group;
}

linalg::Matrix<double, 4> interface_matrix(double mu, const BeamParameters& p) {
    require_positive_mu(mu, "interface_matrix");
    const auto a = krylov(mu, p.attachment_point());
    const auto b = krylov(mu, p.attachment_point() - p.length());
    return assemble_interface(mu, a, b, shaker_coupling(mu, p));
}

double det_M_oracle(double mu, const BeamParameters& p) {
    require_positive_mu(mu, "det_M_oracle");
    if (mu * p.length() > kOracleMaxMuL) {
        throw RangeError("det_M_oracle: mu*l = " + std::to_string(mu * p.length()) + " exceeds " +
                         std::to_string(kOracleMaxMuL));
    }
    const quad qmu = mu;
    const quad l0 = p.attachment_point();
    const quad l = p.length();
    const quad mu4 = qmu * qmu * qmu * qmu;
    const quad coupling = quad(p.spring_stiffness()) / (quad(p.youngs_modulus()) * quad(p.second_moment())) -
                          quad(p.shaker_mass()) / quad(p.linear_density()) * mu4;
    const auto a = krylov_quad(qmu, l0);
    const auto b = krylov_quad(qmu, l0 - l);
    return static_cast<double>(linalg::lu_determinant(assemble_interface(qmu, a, b, coupling)));
}

double phi0(double mu, double l, double l0) {
    return 2.0 * std::sin(mu * (l - l0)) * std::sin(mu * l0) - std::sin(mu * l);
}

double phi0_derivative(double mu, double l, double l0) {
    const double r = l - l0;
    return 2.0 * r * std::cos(mu * r) * std::sin(mu * l0) + 2.0 * l0 * std::sin(mu * r) * std::cos(mu * l0) -
           l * std::cos(mu * l);
}

double phi1(double mu, const BeamParameters& p) {
    require_positive_mu(mu, "phi1");
    const double l = p.length();
    const double l0 = p.attachment_point();
    const double L = mu * l;
    const double D = mu * (l - 2.0 * l0);
    const double sL = std::sin(L);
    const double cL = std::cos(L);
    const double cD = std::cos(D);

    // Hyperbolics multiplied by exp(-mu l); each is bounded by one.
    const double e2L = std::exp(-2.0 * L);
    const double shL = -0.5 * std::expm1(-2.0 * L);
    const double chL = 0.5 * (1.0 + e2L);
    const double chD = 0.5 * (std::exp(-2.0 * mu * l0) + std::exp(-2.0 * mu * (l - l0)));

    // 2 sinh L cos D - 2 sinh L cos L - 2 cosh L sin L + 2 sin L cosh D
    // + exp(L) (cos L + sin L - cos D), all times exp(-L). Using
    // 2 sinh L exp(-L) - 1 = -exp(-2L) and 2 cosh L exp(-L) - 1 = exp(-2L)
    // removes the O(1) cancellation against the last bracket.
    const double mass_group = e2L * (cL - cD - sL) + 2.0 * sL * chD;
    const double beam_term = -8.0 * p.linear_density() / (p.shaker_mass() * mu) * shL * sL;
    const double mu4 = mu * mu * mu * mu;
    const double spring_group = 2.0 * p.spring_stiffness() * p.linear_density() /
                                (p.flexural_rigidity() * p.shaker_mass() * mu4) *
                                ((chL - chD) * sL + (cL - cD) * shL);
    return mass_group + beam_term + spring_group;
}

double phi(double mu, const BeamParameters& p) {
    return phi0(mu, p.length(), p.attachment_point()) + phi1(mu, p);
}

double phi_prefactor(double mu, const BeamParameters& p) {
    return p.shaker_mass() * std::exp(mu * p.length()) / (8.0 * p.linear_density() * mu);
}

double det_M3(double mu, double l, double l0) {
    require_positive_mu(mu, "det_M3");
    return (std::sinh(mu * l0) * std::sin(mu * l) + std::sin(mu * l0) * std::sinh(mu * l)) / (2.0 * mu * mu);
}

linalg::Matrix<double, 3> boundary_matrix3(double mu, const BeamParameters& p) {
    const auto m = interface_matrix(mu, p);
    return {{{m[0][0], m[0][1], m[0][2]}, {m[1][0], m[1][1], m[1][2]}, {m[2][0], m[2][1], m[2][2]}}};
}

FreqEvaluation evaluate(FreqForm form, double mu, const BeamParameters& p) {
    FreqEvaluation e{mu, 0.0, form};
    switch (form) {
        case FreqForm::ExactClosedForm:
            e.value_scaled = det_M_closed(mu, p) / phi_prefactor(mu, p);
            break;
        case FreqForm::ExactOracle4x4:
            e.value_scaled = det_M_oracle(mu, p) / phi_prefactor(mu, p);
            break;
        case FreqForm::TruncatedPhi0:
            e.value_scaled = phi0(mu, p.length(), p.attachment_point());
            break;
        case FreqForm::PhiSum:
            e.value_scaled = phi(mu, p);
            break;
    }
    return e;
}

}  // namespace shakerbeam

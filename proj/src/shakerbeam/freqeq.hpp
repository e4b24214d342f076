#pragma once

#include "shakerbeam/core.hpp"
#include "shakerbeam/linalg.hpp"

namespace shakerbeam {

/// Which characteristic function produced a value.
enum class FreqForm { ExactClosedForm, ExactOracle4x4, TruncatedPhi0, PhiSum };

struct FreqEvaluation {
    double mu = 0.0;
    double value_scaled = 0.0;
    FreqForm form = FreqForm::PhiSum;
};

/// Largest mu*l accepted by det_M_closed (cosh overflows near 710).
inline constexpr double kClosedFormMaxMuL = 690.0;
/// Largest mu*l accepted by det_M_oracle.
inline constexpr double kOracleMaxMuL = 170.0;

/// Shaker coupling coefficient kappa/EI - (m/rho) mu^4 entering the
/// third-derivative jump at the attachment point.
double shaker_coupling(double mu, const BeamParameters& params);

/// Closed-form determinant of the 4x4 interface matrix. Unscaled: grows
/// like exp(mu l). Throws DomainError for mu <= 0 and RangeError when
/// mu*l > kClosedFormMaxMuL.
double det_M_closed(double mu, const BeamParameters& params);

/// The 4x4 interface matrix, assembled entry by entry from Krylov values.
/// Unknowns are (u'(0), u'''(0), u'(l), u'''(l)).
linalg::Matrix<double, 4> interface_matrix(double mu, const BeamParameters& params);

/// Determinant of the interface matrix by LU with partial pivoting. The
/// assembly and elimination run in quad precision: in double the entries
/// lose exp(mu max(l0, l-l0)) in relative accuracy through cancellation
/// between hyperbolic and trigonometric parts. Independent of the closed
/// form, used as its oracle. Throws RangeError when mu*l > kOracleMaxMuL.
double det_M_oracle(double mu, const BeamParameters& params);

/// Truncated characteristic function 2 sin mu(l-l0) sin mu l0 - sin mu l.
double phi0(double mu, double l, double l0);

/// d phi0 / d mu.
double phi0_derivative(double mu, double l, double l0);

/// Remainder such that det M = m exp(mu l)/(8 rho mu) * (phi0 + phi1).
/// Every hyperbolic factor is folded against exp(-mu l) before evaluation,
/// so the result is finite for all mu > 0. Decays like 1/mu.
double phi1(double mu, const BeamParameters& params);

/// phi0 + phi1: the overflow-free characteristic function whose positive
/// zeros are the positive zeros of det M.
double phi(double mu, const BeamParameters& params);

/// m exp(mu l) / (8 rho mu): the positive factor with det M = factor * phi.
double phi_prefactor(double mu, const BeamParameters& params);

/// Determinant of the 3x3 boundary-value system used to reconstruct a mode
/// under the gauge u'''(l) = 1:
///   (sinh mu l0 sin mu l + sin mu l0 sinh mu l) / (2 mu^2).
double det_M3(double mu, double l, double l0);

/// The 3x3 boundary-value matrix (first three rows and columns of the
/// interface matrix).
linalg::Matrix<double, 3> boundary_matrix3(double mu, const BeamParameters& params);

FreqEvaluation evaluate(FreqForm form, double mu, const BeamParameters& params);

}  // namespace shakerbeam

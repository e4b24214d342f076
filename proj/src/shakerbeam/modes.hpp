#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "shakerbeam/core.hpp"
#include "shakerbeam/roots.hpp"

namespace shakerbeam {

enum class Branch { Left, Right };

/// End derivative data (u'(0), u'''(0), u'(l), u'''(l)). u, u'' vanish at
/// both ends for every mode.
struct BoundaryValues {
    double u1_0 = 0.0;
    double u3_0 = 0.0;
    double u1_l = 0.0;
    double u3_l = 0.0;
};

/// Coefficients of the piecewise eigenfunction
///   u(x) = a sin(mu x)     + b sinh(mu x)/sinh(mu l0),          0 <= x <= l0
///   u(x) = c sin(mu (l-x)) + d sinh(mu (l-x))/sinh(mu (l-l0)),  l0 <  x <= l
/// The scaled hyperbolic keeps every coefficient O(1) for any mu, which the
/// (u'(0), u'''(0), u'(l), u'''(l)) parametrisation does not.
struct ModeCoefficients {
    double sin_left = 0.0;
    double sinh_left = 0.0;
    double sin_right = 0.0;
    double sinh_right = 0.0;
};

/// One eigenmode. Immutable; rescaling returns a new value.
class ModeShape {
public:
    ModeShape(double mu, double omega, double length, double attachment_point, ModeCoefficients coefficients,
              double det_m3);

    double mu() const noexcept { return mu_; }
    double omega() const noexcept { return omega_; }
    double length() const noexcept { return length_; }
    double attachment_point() const noexcept { return attachment_point_; }
    const ModeCoefficients& coefficients() const noexcept { return coefficients_; }
    double det_m3() const noexcept { return det_m3_; }

    /// Factor applied by normalisation relative to the solved gauge.
    double normalization() const noexcept { return normalization_; }
    /// +1 or -1: sign flip applied to make u'(0) > 0.
    int sign() const noexcept { return sign_; }
    bool normalized() const noexcept { return normalized_; }

    BoundaryValues boundary_values() const;
    /// Boundary values rescaled to u'''(l) = 1, or u'(l) = 1 when u'''(l)
    /// vanishes.
    BoundaryValues gauge_boundary_values() const;

    /// p = u(l0), from the left branch.
    double attachment_displacement() const;
    /// |q| = omega p; the attachment velocity itself is i omega p.
    double attachment_velocity_magnitude() const;

    /// u(x) on [0, l]: left branch for x <= l0. Throws DomainError outside.
    double value(double x) const;
    /// k-th derivative (k <= 4) with the same branch rule as value().
    double derivative(double x, int order) const;
    /// k-th derivative of one branch's analytic expression; x is not
    /// restricted, so one-sided limits at l0 are available.
    double branch_derivative(Branch branch, double x, int order) const;

    ModeShape scaled(double factor) const;
    ModeShape as_normalized(double factor, int sign) const;

    /// Largest coefficient magnitude; |u| <= 2 * amplitude().
    double amplitude() const;

private:
    double mu_;
    double omega_;
    double length_;
    double attachment_point_;
    ModeCoefficients coefficients_;
    double det_m3_;
    double normalization_ = 1.0;
    int sign_ = 1;
    bool normalized_ = false;
};

/// Reconstructs the eigenmode at an exact root. The interface system is
/// solved for its one-dimensional null space, so reconstruction also works
/// where the 3x3 boundary system is singular. The result is gauged like the
/// 3x3 route: u'''(l) = 1, falling back to u'(l) = 1.
/// Throws PreconditionError if root.target is not Phi or mu is not an
/// eigenvalue, DegenerateModeError when the null space is not
/// one-dimensional.
ModeShape solve_mode(const Root& root, const BeamParameters& params);
ModeShape solve_mode(double mu, const BeamParameters& params);

/// Boundary values from the 3x3 system with u'''(l) = 1, entries taken from
/// the interface matrix. Loses about exp(mu l0) in relative accuracy, so it
/// is a cross-check for moderate mu only. Throws DegenerateModeError when
/// |det M3| <= 1e-10 * max|M3 entry|.
BoundaryValues solve_boundary_values_reference(double mu, const BeamParameters& params);

double evaluate_mode(const ModeShape& mode, double x);

/// Integral of u^2 over [0, l]; composite Gauss-Legendre applied to each
/// branch separately, with at least quadrature_points/2 nodes per branch and
/// panels no wider than a quarter wavelength.
double l2_norm_squared(const ModeShape& mode, int quadrature_points = 256);

/// Unit L2 norm on [0, l] and u'(0) > 0. Throws ConfigurationError for
/// quadrature_points < 64, DegenerateModeError for a zero mode.
ModeShape normalize_L2(const ModeShape& mode, int quadrature_points = 256);

/// Mismatch of u, u', u'' across l0 and of the shaker balance
/// EI (u'''(l0-) - u'''(l0+)) = (kappa - m omega^2) u(l0). Each entry is
/// |left - right| / max(|left|, |right|, mu^k * amplitude).
struct InterfaceResiduals {
    std::array<double, 3> continuity{};
    double jump_balance = 0.0;
};

InterfaceResiduals interface_residuals(const ModeShape& mode, const BeamParameters& params);

/// Sampled state (u, v, p, q) with v = i omega u and q = i omega p. The
/// imaginary unit is not stored: v_magnitude and q_magnitude carry omega u
/// and omega p.
struct StateSamples {
    std::vector<double> x;
    std::vector<double> u;
    std::vector<double> v_magnitude;
    double p = 0.0;
    double q_magnitude = 0.0;
    double omega = 0.0;
    bool velocity_is_imaginary = true;
};

/// Requires a normalised mode (PreconditionError otherwise) and samples >= 2.
/// Grid is uniform with x = 0 and x = l exact.
StateSamples full_state(const ModeShape& mode, const BeamParameters& params, std::size_t samples);

}  // namespace shakerbeam

#pragma once

#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

namespace shakerbeam {

/// Mechanical constants of a hinged beam carrying a grounded mass-spring
/// attachment, all in SI units. Instances are always valid: construction
/// goes through make() or validate_parameters().
class BeamParameters {
public:
    /// Throws ValidationError naming the offending field.
    static BeamParameters make(double youngs_modulus, double second_moment, double linear_density,
                               double length, double attachment_point, double shaker_mass,
                               double spring_stiffness);

    double youngs_modulus() const noexcept { return youngs_modulus_; }      // Pa
    double second_moment() const noexcept { return second_moment_; }        // m^4
    double linear_density() const noexcept { return linear_density_; }      // kg/m
    double length() const noexcept { return length_; }                      // m
    double attachment_point() const noexcept { return attachment_point_; }  // m
    double shaker_mass() const noexcept { return shaker_mass_; }            // kg
    double spring_stiffness() const noexcept { return spring_stiffness_; }  // N/m

    double flexural_rigidity() const noexcept { return youngs_modulus_ * second_moment_; }

    /// sqrt(EI/rho), the factor turning mu^2 into angular frequency.
    double frequency_scale() const noexcept { return std::sqrt(flexural_rigidity() / linear_density_); }

    BeamParameters with_attachment_point(double l0) const;
    BeamParameters with_shaker(double mass, double stiffness) const;

    friend bool operator==(const BeamParameters&, const BeamParameters&) = default;

private:
    BeamParameters() = default;

    double youngs_modulus_ = 0.0;
    double second_moment_ = 0.0;
    double linear_density_ = 0.0;
    double length_ = 0.0;
    double attachment_point_ = 0.0;
    double shaker_mass_ = 0.0;
    double spring_stiffness_ = 0.0;
};

/// Parameter name -> "value unit" text, e.g. {"kappa", "7 N/mm"}.
///
/// Recognised names: E, I, rho (linear density) or rho0 together with S
/// (volumetric density and cross-section area), l, l0, m, kappa. A value
/// without a unit is taken as already SI.
using RawParameters = std::map<std::string, std::string>;

/// Converts a raw parameter set to SI and validates it. Throws
/// ValidationError on missing fields, unit mismatches, non-positive
/// constants, or an attachment point outside the open span.
BeamParameters validate_parameters(const RawParameters& raw);

/// Laboratory set-up used for the reference modal table: aluminium strip,
/// shaker at 1.4 m on a 1.905 m span.
RawParameters reference_raw_parameters();
BeamParameters reference_parameters();

/// The (mu, omega, lambda, nu) bundle of one eigenvalue. The eigenvalue is
/// lambda = i * lambda_imag.
struct SpectralPoint {
    double mu = 0.0;           // 1/m
    double omega = 0.0;        // rad/s
    double lambda_imag = 0.0;  // rad/s
    double nu = 0.0;           // Hz
};

SpectralPoint to_spectral_point(double mu, const BeamParameters& params);

/// Values of the four fundamental solutions of u'''' = mu^4 u at x:
///   z1 = (cosh + cos)/2,          z2 = (sinh + sin)/(2 mu),
///   z3 = (cosh - cos)/(2 mu^2),   z4 = (sinh - sin)/(2 mu^3),
/// all evaluated at mu*x. x may be negative.
struct KrylovValues {
    double z1 = 0.0;
    double z2 = 0.0;
    double z3 = 0.0;
    double z4 = 0.0;
};

KrylovValues krylov(double mu, double x);

/// Row-major 4x4 matrix.
struct Matrix4 {
    std::array<double, 16> a{};

    double& operator()(int i, int j) { return a[static_cast<std::size_t>(4 * i + j)]; }
    double operator()(int i, int j) const { return a[static_cast<std::size_t>(4 * i + j)]; }

    static Matrix4 identity();
    friend Matrix4 operator*(const Matrix4& lhs, const Matrix4& rhs);
};

/// Matrix exponential exp(x M) of the companion matrix M of u'''' = mu^4 u,
/// assembled from the Krylov values; maps U(0) = (u, u', u'', u''') to U(x).
Matrix4 exp_xM(double mu, double x);

double determinant(const Matrix4& m);

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace shakerbeam

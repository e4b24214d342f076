#include "shakerbeam/core.hpp"

#include <stdexcept>

#include "shakerbeam/errors.hpp"
#include "shakerbeam/linalg.hpp"
#include "shakerbeam/units.hpp"

namespace shakerbeam {
namespace {

void require_positive(const char* field, double value) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw ValidationError(field, std::string(field) + " must be a positive finite number, got " +
                                         std::to_string(value));
    }
}

double quantity_in(const RawParameters& raw, const std::string& key, const units::Dimension& expected) {
    const auto it = raw.find(key);
    if (it == raw.end()) throw ValidationError(key, "missing parameter '" + key + "'");
    units::Quantity q;
    try {
        q = units::parse_quantity(it->second);
    } catch (const std::invalid_argument& e) {
        throw ValidationError(key, key + ": " + e.what());
    }
    // A bare number is read as SI in the expected dimension.
    if (q.dimension != units::kDimensionless && q.dimension != expected) {
        throw ValidationError(key, key + ": expected units of " + units::to_string(expected) + ", got " +
                                       units::to_string(q.dimension));
    }
    return q.value;
}

// z2..z4 for small |t| = |mu x| by their power series; avoids the
// cancellation in sinh - sin and cosh - cos.
struct SmallArgumentSums {
    double sinh_plus_sin;   // sinh t + sin t
    double sinh_minus_sin;  // sinh t - sin t
    double cosh_minus_cos;  // cosh t - cos t
    double cosh_plus_cos;   // cosh t + cos t
};

SmallArgumentSums small_argument_sums(double t) {
    // sinh t + sin t = 2 sum t^(4k+1)/(4k+1)!, and similarly for the others.
    const double t2 = t * t;
    const double t4 = t2 * t2;
    double a = 2.0 * t;       // k = 0 term of sinh + sin
    double b = t * t2 / 3.0;  // 2 t^3/3!
    double c = t2;            // 2 t^2/2!
    double d = 2.0;           // 2 t^0/0!
    SmallArgumentSums s{a, b, c, d};
    for (int k = 1; k < 12; ++k) {
        const double n = 4.0 * k;
        a *= t4 / ((n - 2.0) * (n - 1.0) * n * (n + 1.0));
        b *= t4 / ((n) * (n + 1.0) * (n + 2.0) * (n + 3.0));
        c *= t4 / ((n - 1.0) * n * (n + 1.0) * (n + 2.0));
        d *= t4 / ((n - 3.0) * (n - 2.0) * (n - 1.0) * n);
        s.sinh_plus_sin += a;
        s.sinh_minus_sin += b;
        s.cosh_minus_cos += c;
        s.cosh_plus_cos += d;
        if (std::abs(a) < 1e-18 * std::abs(s.sinh_plus_sin) && std::abs(d) < 1e-18 * s.cosh_plus_cos) break;
    }
    return s;
}

}  // namespace

BeamParameters BeamParameters::make(double youngs_modulus, double second_moment, double linear_density,
                                    double length, double attachment_point, double shaker_mass,
                                    double spring_stiffness) {
    require_positive("E", youngs_modulus);
    require_positive("I", second_moment);
    require_positive("rho", linear_density);
    require_positive("l", length);
    require_positive("m", shaker_mass);
    require_positive("kappa", spring_stiffness);
    if (!(attachment_point > 0.0 && attachment_point < length)) {
        throw ValidationError("l0", "attachment point outside span: l0 = " + std::to_string(attachment_point) +
                                        " must lie in (0, " + std::to_string(length) + ")");
    }
    BeamParameters p;
    p.youngs_modulus_ = youngs_modulus;
    p.second_moment_ = second_moment;
    p.linear_density_ = linear_density;
    p.length_ = length;
    p.attachment_point_ = attachment_point;
    p.shaker_mass_ = shaker_mass;
    p.spring_stiffness_ = spring_stiffness;
    return p;
}

BeamParameters BeamParameters::with_attachment_point(double l0) const {
    return make(youngs_modulus_, second_moment_, linear_density_, length_, l0, shaker_mass_, spring_stiffness_);
}

BeamParameters BeamParameters::with_shaker(double mass, double stiffness) const {
    return make(youngs_modulus_, second_moment_, linear_density_, length_, attachment_point_, mass, stiffness);
}

BeamParameters validate_parameters(const RawParameters& raw) {
    const double E = quantity_in(raw, "E", units::kPressure);
    const double I = quantity_in(raw, "I", units::kSecondMoment);

    double rho = 0.0;
    if (raw.contains("rho")) {
        if (raw.contains("rho0") || raw.contains("S")) {
            throw ValidationError("rho", "give either rho or rho0 with S, not both");
        }
        rho = quantity_in(raw, "rho", units::kLinearDensity);
    } else if (raw.contains("rho0") || raw.contains("S")) {
        const double rho0 = quantity_in(raw, "rho0", units::kVolumetricDensity);
        const double area = quantity_in(raw, "S", units::kArea);
        require_positive("rho0", rho0);
        require_positive("S", area);
        rho = rho0 * area;
    } else {
        throw ValidationError("rho", "missing parameter 'rho' (or 'rho0' and 'S')");
    }

    const double l = quantity_in(raw, "l", units::kLength);
    const double l0 = quantity_in(raw, "l0", units::kLength);
    const double m = quantity_in(raw, "m", units::kMass);
    const double kappa = quantity_in(raw, "kappa", units::kStiffness);
    return BeamParameters::make(E, I, rho, l, l0, m, kappa);
}

RawParameters reference_raw_parameters() {
    return {
        {"E", "6.9e10 Pa"},     {"I", "1.6875e-10 m^4"}, {"rho0", "2700 kg/m^3"}, {"S", "2.25e-4 m^2"},
        {"l", "1.905 m"},       {"l0", "1.4 m"},         {"m", "0.1 kg"},         {"kappa", "7 N/mm"},
    };
}

BeamParameters reference_parameters() { return validate_parameters(reference_raw_parameters()); }

SpectralPoint to_spectral_point(double mu, const BeamParameters& params) {
    if (!(mu > 0.0)) throw DomainError("spectral parameter mu must be positive");
    SpectralPoint s;
    s.mu = mu;
    s.omega = params.frequency_scale() * mu * mu;
    s.lambda_imag = s.omega;
    s.nu = s.omega / kTwoPi;
    return s;
}

KrylovValues krylov(double mu, double x) {
    if (!(mu > 0.0)) throw DomainError("krylov: mu must be positive");
    const double t = mu * x;
    const double mu2 = mu * mu;
    const double mu3 = mu2 * mu;
    if (std::abs(t) < 1.0) {
        const auto s = small_argument_sums(t);
        return {0.5 * s.cosh_plus_cos, 0.5 * s.sinh_plus_sin / mu, 0.5 * s.cosh_minus_cos / mu2,
                0.5 * s.sinh_minus_sin / mu3};
    }
    const double ch = std::cosh(t);
    const double sh = std::sinh(t);
    const double c = std::cos(t);
    const double s = std::sin(t);
    return {0.5 * (ch + c), 0.5 * (sh + s) / mu, 0.5 * (ch - c) / mu2, 0.5 * (sh - s) / mu3};
}

Matrix4 Matrix4::identity() {
    Matrix4 m;
    for (int i = 0; i < 4; ++i) m(i, i) = 1.0;
    return m;
}

Matrix4 operator*(const Matrix4& lhs, const Matrix4& rhs) {
    Matrix4 out;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            double s = 0.0;
            for (int k = 0; k < 4; ++k) s += lhs(i, k) * rhs(k, j);
            out(i, j) = s;
        }
    }
    return out;
}

Matrix4 exp_xM(double mu, double x) {
    const auto z = krylov(mu, x);
    const double mu4 = mu * mu * mu * mu;
    const std::array<double, 4> row0{z.z1, z.z2, z.z3, z.z4};
    // Row i is row 0 shifted right by i, with the wrapped entries scaled by mu^4.
    Matrix4 m;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const int k = j - i;
            m(i, j) = k >= 0 ? row0[static_cast<std::size_t>(k)] : mu4 * row0[static_cast<std::size_t>(k + 4)];
        }
    }
    return m;
}

double determinant(const Matrix4& m) {
    linalg::Matrix<double, 4> a{};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j);
    }
    return linalg::lu_determinant(a);
}

}  // namespace shakerbeam

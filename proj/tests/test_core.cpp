#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <utility>

#include "shakerbeam/core.hpp"
#include "shakerbeam/errors.hpp"
#include "support/oracles.hpp"

using namespace shakerbeam;

namespace {

RawParameters reference_raw() { return reference_raw_parameters(); }

double max_abs(const Matrix4& m) {
    double out = 0.0;
    for (double v : m.a) out = std::max(out, std::abs(v));
    return out;
}

}  // namespace

// ---- parameters ----------------------------------------------------------

TEST(ValidateParameters, DensityFromVolumetricDensityAndArea) {
    const auto p = reference_parameters();
    EXPECT_NEAR(p.linear_density(), 0.6075, 1e-15);
}

TEST(ValidateParameters, SpringStiffnessFromNewtonPerMillimetre) {
    EXPECT_DOUBLE_EQ(reference_parameters().spring_stiffness(), 7000.0);
}

TEST(ValidateParameters, ReferenceValuesInSi) {
    const auto p = reference_parameters();
    EXPECT_DOUBLE_EQ(p.youngs_modulus(), 6.9e10);
    EXPECT_DOUBLE_EQ(p.second_moment(), 1.6875e-10);
    EXPECT_DOUBLE_EQ(p.length(), 1.905);
    EXPECT_DOUBLE_EQ(p.attachment_point(), 1.4);
    EXPECT_DOUBLE_EQ(p.shaker_mass(), 0.1);
    EXPECT_NEAR(p.flexural_rigidity(), 11.64375, 1e-12);
}

TEST(ValidateParameters, AttachmentPointOutsideSpan) {
    auto raw = reference_raw();
    raw["l0"] = "2.0 m";
    try {
        validate_parameters(raw);
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        EXPECT_EQ(e.field(), "l0");
        EXPECT_NE(std::string(e.what()).find("attachment point outside span"), std::string::npos);
    }
    raw["l0"] = "0 m";
    EXPECT_THROW(validate_parameters(raw), ValidationError);
    raw["l0"] = "1.905 m";
    EXPECT_THROW(validate_parameters(raw), ValidationError);
}

TEST(ValidateParameters, NonPositiveConstantNamesField) {
    for (const char* key : {"E", "I", "l", "m", "kappa"}) {
        auto raw = reference_raw();
        raw[key] = "-1";
        try {
            validate_parameters(raw);
            FAIL() << key;
        } catch (const ValidationError& e) {
            EXPECT_EQ(e.field(), key);
        }
    }
}

TEST(ValidateParameters, UnitMismatchIsRejected) {
    auto raw = reference_raw();
    raw["kappa"] = "7 kg";
    EXPECT_THROW(validate_parameters(raw), ValidationError);
}

TEST(ValidateParameters, MissingField) {
    auto raw = reference_raw();
    raw.erase("kappa");
    try {
        validate_parameters(raw);
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_EQ(e.field(), "kappa");
    }
}

TEST(ValidateParameters, LinearDensityDirectlyOrBothButNotMixed) {
    auto raw = reference_raw();
    raw.erase("rho0");
    raw.erase("S");
    raw["rho"] = "0.6075 kg/m";
    EXPECT_NEAR(validate_parameters(raw).linear_density(), 0.6075, 1e-15);
    raw["S"] = "2.25e-4 m^2";
    EXPECT_THROW(validate_parameters(raw), ValidationError);
}

TEST(ValidateParameters, BareNumbersAreSi) {
    auto raw = reference_raw();
    raw["kappa"] = "7000";
    EXPECT_EQ(validate_parameters(raw), reference_parameters());
}

TEST(BeamParameters, CopiesWithNewAttachment) {
    const auto p = reference_parameters();
    const auto q = p.with_attachment_point(0.9525);
    EXPECT_DOUBLE_EQ(q.attachment_point(), 0.9525);
    EXPECT_DOUBLE_EQ(q.length(), p.length());
    EXPECT_THROW(p.with_attachment_point(3.0), ValidationError);
    EXPECT_THROW(p.with_shaker(0.0, 1.0), ValidationError);
}

// ---- Krylov functions ----------------------------------------------------

TEST(Krylov, AtOrigin) {
    const auto z = krylov(3.7, 0.0);
    EXPECT_EQ(z.z1, 1.0);
    EXPECT_EQ(z.z2, 0.0);
    EXPECT_EQ(z.z3, 0.0);
    EXPECT_EQ(z.z4, 0.0);
}

TEST(Krylov, AtPi) {
    const double pi = std::numbers::pi;
    EXPECT_NEAR(krylov(1.0, pi).z1, 0.5 * (std::cosh(pi) - 1.0), 1e-14);
}

TEST(Krylov, MatchesDefinitionsAcrossSeriesSwitch) {
    for (double mu : {0.3, 1.0, 2.0, 7.5}) {
        for (double x : {-1.3, -0.4, -0.01, 0.02, 0.49, 0.51, 1.1, 1.9}) {
            const long double t = (long double)mu * x;
            const long double ch = std::cosh(t), sh = std::sinh(t), c = std::cos(t), s = std::sin(t);
            const long double m = mu;
            const auto z = krylov(mu, x);
            auto rel = [](double a, long double b) { return std::abs(a - (double)b) / std::max(1e-300, std::abs((double)b)); };
            EXPECT_LT(rel(z.z1, (ch + c) / 2), 1e-12) << mu << ' ' << x;
            EXPECT_LT(rel(z.z2, (sh + s) / (2 * m)), 1e-9) << mu << ' ' << x;
            EXPECT_LT(rel(z.z3, (ch - c) / (2 * m * m)), 1e-9) << mu << ' ' << x;
            if (std::abs(mu * x) > 0.05) {
                EXPECT_LT(rel(z.z4, (sh - s) / (2 * m * m * m)), 1e-6) << mu << ' ' << x;
            }
        }
    }
}

TEST(Krylov, SmallArgumentSeries) {
    // z4 = x^3/6 + mu^4 x^7/5040 + ...
    const double mu = 2.0, x = 1e-3;
    const double expected = x * x * x / 6.0 + std::pow(mu, 4) * std::pow(x, 7) / 5040.0;
    EXPECT_NEAR(krylov(mu, x).z4 / expected, 1.0, 1e-14);
}

TEST(Krylov, RejectsNonPositiveMu) {
    EXPECT_THROW(krylov(0.0, 1.0), DomainError);
    EXPECT_THROW(krylov(-1.0, 1.0), DomainError);
}

TEST(Krylov, DerivativeChainByFiniteDifferences) {
    const double h = 1e-6;
    for (double mu : {0.7, 2.0, 5.0}) {
        for (double x : {-0.8, 0.3, 1.2}) {
            const auto p = krylov(mu, x + h);
            const auto m = krylov(mu, x - h);
            const auto z = krylov(mu, x);
            const double mu4 = std::pow(mu, 4);
            auto check = [](double fd, double exact) {
                EXPECT_LE(std::abs(fd - exact), 1e-5 * std::max(std::abs(exact), 1e-3));
            };
            check((p.z1 - m.z1) / (2 * h), mu4 * z.z4);
            check((p.z2 - m.z2) / (2 * h), z.z1);
            check((p.z3 - m.z3) / (2 * h), z.z2);
            check((p.z4 - m.z4) / (2 * h), z.z3);
        }
    }
}

// ---- matrix exponential ----------------------------------------------------

TEST(ExpXM, IdentityAtZero) {
    const auto e = exp_xM(2.3, 0.0);
    const auto id = Matrix4::identity();
    for (std::size_t i = 0; i < 16; ++i) EXPECT_EQ(e.a[i], id.a[i]);
}

TEST(ExpXM, MatchesIntegratedFundamentalMatrix) {
    const auto e = exp_xM(2.0, 0.7);
    const auto ode = oracle::rk4_fundamental(2.0, 0.7, 4000);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) EXPECT_NEAR(e(i, j), ode[i][j], 1e-10) << i << ',' << j;
}

TEST(ExpXM, SecondColumnLayout) {
    const double mu = 2.0, x = 0.3;
    const auto e = exp_xM(mu, x);
    const auto z = krylov(mu, x);
    const double mu4 = std::pow(mu, 4);
    EXPECT_DOUBLE_EQ(e(0, 1), z.z2);
    EXPECT_DOUBLE_EQ(e(1, 1), z.z1);
    EXPECT_DOUBLE_EQ(e(2, 1), mu4 * z.z4);
    EXPECT_DOUBLE_EQ(e(3, 1), mu4 * z.z3);
}

TEST(ExpXM, Semigroup) {
    const double mu = 3.0, a = 0.2, b = 0.5;
    const auto lhs = exp_xM(mu, a) * exp_xM(mu, b);
    const auto rhs = exp_xM(mu, a + b);
    for (std::size_t i = 0; i < 16; ++i) EXPECT_NEAR(lhs.a[i], rhs.a[i], 1e-9 * std::abs(rhs.a[i]) + 1e-12);
}

TEST(ExpXM, SemigroupRandom) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> mu_d(0.1, 20.0), x_d(-1.0, 1.0);
    for (int k = 0; k < 200; ++k) {
        const double mu = mu_d(rng), a = x_d(rng), b = x_d(rng);
        const auto lhs = exp_xM(mu, a) * exp_xM(mu, b);
        const auto rhs = exp_xM(mu, a + b);
        Matrix4 diff;
        for (std::size_t i = 0; i < 16; ++i) diff.a[i] = lhs.a[i] - rhs.a[i];
        EXPECT_LE(max_abs(diff), 1e-8 * std::max(1.0, std::exp(mu * (std::abs(a) + std::abs(b)))))
            << mu << ' ' << a << ' ' << b;
    }
}

TEST(ExpXM, UnitDeterminant) {
    for (double mu : {0.1, 1.0, 5.0, 20.0, 60.0}) {
        for (double x : {-1.905, -0.5, 0.25, 1.0, 1.905}) {
            const double d = determinant(exp_xM(mu, x));
            // Entries reach cosh(mu x) and carry a relative rounding error, so
            // to first order the determinant moves by eps * sum |entry * cofactor|.
            const double scale = std::pow(std::max(1.0, std::cosh(mu * x)), 4);
            EXPECT_NEAR(d, 1.0, std::max(1e-8, 4e-15 * scale)) << mu << ' ' << x;
        }
    }
}

TEST(ExpXM, UnitDeterminantModerateRange) {
    // 1e-8 is reachable in double only while mu |x| stays below about 8.
    for (double mu = 0.5; mu <= 8.0; mu += 0.5) {
        for (double x : {-1.0, -0.3, 0.6, 1.0}) EXPECT_NEAR(determinant(exp_xM(mu, x)), 1.0, 1e-8) << mu << ' ' << x;
    }
}

// ---- spectral points ----------------------------------------------------------

TEST(SpectralPoint, TabulatedFrequencies) {
    const auto p = reference_parameters();
    // The tabulated mu is rounded to 5e-4 and nu = k mu^2, so the tolerance
    // carries 2 k mu * 5e-4 on top of the rounding of nu itself.
    const double k = to_spectral_point(1.0, p).nu;
    for (auto [mu, nu] : {std::pair{2.552, 4.537}, std::pair{37.863, 998.922}}) {
        EXPECT_NEAR(to_spectral_point(mu, p).nu, nu, 2 * k * mu * 5e-4 + 5e-4) << mu;
    }
}

TEST(SpectralPoint, Invariants) {
    const auto p = reference_parameters();
    const auto s = to_spectral_point(5.0, p);
    EXPECT_DOUBLE_EQ(s.omega, std::sqrt(p.flexural_rigidity() / p.linear_density()) * 25.0);
    EXPECT_EQ(s.lambda_imag, s.omega);
    EXPECT_DOUBLE_EQ(s.nu, s.omega / (2.0 * std::numbers::pi));
    EXPECT_NEAR(to_spectral_point(10.0, p).nu / s.nu, 4.0, 1e-14);
    EXPECT_THROW(to_spectral_point(0.0, p), DomainError);
}

TEST(SpectralPoint, StrictlyMonotone) {
    const auto p = reference_parameters();
    double prev = 0.0;
    for (double mu = 0.01; mu < 100.0; mu *= 1.07) {
        const double nu = to_spectral_point(mu, p).nu;
        EXPECT_GT(nu, prev);
        prev = nu;
    }
}

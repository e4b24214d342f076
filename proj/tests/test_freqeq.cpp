#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "shakerbeam/errors.hpp"
#include "shakerbeam/freqeq.hpp"
#include "shakerbeam/linalg.hpp"
#include "shakerbeam/roots.hpp"
#include "support/oracles.hpp"

using namespace shakerbeam;

namespace {

const BeamParameters& ref() {
    static const BeamParameters p = reference_parameters();
    return p;
}

oracle::Beam as_beam(const BeamParameters& p) {
    return {p.flexural_rigidity(), p.linear_density(), p.length(), p.attachment_point(), p.shaker_mass(),
            p.spring_stiffness()};
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Remainder written out with unscaled hyperbolics; fine for small mu.
double phi1_direct(double mu, const BeamParameters& p) {
    const double l = p.length(), l0 = p.attachment_point();
    const double L = mu * l, D = mu * (l - 2 * l0);
    const double rho = p.linear_density(), m = p.shaker_mass(), EI = p.flexural_rigidity();
    const double e = std::exp(-L);
    const double mass = 2 * e * ((std::cosh(D) - std::cosh(L)) * std::sin(L) + (std::cos(D) - std::cos(L)) * std::sinh(L));
    const double beam = -8 * rho / (m * mu) * e * std::sin(L) * std::sinh(L);
    const double spring = 2 * p.spring_stiffness() * rho / (EI * m * std::pow(mu, 4)) * e *
                          ((std::cosh(L) - std::cosh(D)) * std::sin(L) + (std::cos(L) - std::cos(D)) * std::sinh(L));
    return mass + beam + spring - oracle::truncated(mu, l, l0);
}

}  // namespace

// ---- determinant forms ------------------------------------------------------

TEST(DetM, ClosedFormMatchesLibraryOracle) {
    for (double mu : {0.5, 1.7, 4.3, 9.1}) EXPECT_LT(rel(det_M_closed(mu, ref()), det_M_oracle(mu, ref())), 1e-8) << mu;
}

TEST(DetM, ClosedFormMatchesIndependentOracle) {
    for (double mu : {0.5, 1.7, 4.3, 9.1, 15.0, 19.9}) {
        EXPECT_LT(rel(det_M_closed(mu, ref()), oracle::interface_det(mu, as_beam(ref()))), 1e-8) << mu;
    }
}

TEST(DetM, LibraryOracleMatchesIndependentOracle) {
    std::mt19937_64 rng(11);
    // Both oracles cancel terms of size exp(2 mu l) in quad precision, so
    // their agreement degrades past mu ~ 30.
    std::uniform_real_distribution<double> mu_d(0.1, 30.0);
    for (int k = 0; k < 50; ++k) {
        const double mu = mu_d(rng);
        EXPECT_LT(rel(det_M_oracle(mu, ref()), oracle::interface_det(mu, as_beam(ref()))), 1e-12) << mu;
    }
}

TEST(DetM, NearlyVanishesAtFirstRoot) {
    const auto roots = scan_roots(Target::Phi, ref(), 2.4, 2.7).roots;
    ASSERT_EQ(roots.size(), 1u);
    EXPECT_NEAR(roots[0].mu, 2.552, 5e-4);
    EXPECT_LE(std::abs(det_M_closed(roots[0].mu, ref())), 1e-6 * phi_prefactor(roots[0].mu, ref()));
}

TEST(DetM, SymmetricUnderMirroredAttachment) {
    const auto mirrored = ref().with_attachment_point(ref().length() - ref().attachment_point());
    EXPECT_LT(rel(det_M_closed(3.3, mirrored), det_M_closed(3.3, ref())), 1e-12);
    EXPECT_LT(rel(det_M_oracle(3.3, mirrored), det_M_oracle(3.3, ref())), 1e-12);
}

TEST(DetM, SignChangeAroundFirstRoot) {
    EXPECT_LT(det_M_oracle(2.5, ref()) * det_M_oracle(2.6, ref()), 0.0);
}

TEST(DetM, BareBeamLimit) {
    const auto p = ref().with_shaker(1e-12, 1e-12);
    const double mu = 2.0, l = p.length();
    const double bare = -std::sin(mu * l) * std::sinh(mu * l) / (mu * mu);
    EXPECT_LT(rel(det_M_oracle(mu, p), bare), 1e-9);
    EXPECT_LT(rel(det_M_closed(mu, p), bare), 1e-9);
}

TEST(DetM, VanishingMassLeavesSpringAndBeamTerms) {
    const auto p = ref().with_shaker(1e-300, ref().spring_stiffness());
    for (double mu : {0.8, 2.0, 6.5}) {
        const double l = p.length(), l0 = p.attachment_point();
        const double L = mu * l, D = mu * (l - 2 * l0);
        const double spring = p.spring_stiffness() / (4 * p.flexural_rigidity() * std::pow(mu, 5)) *
                              ((std::cosh(L) - std::cosh(D)) * std::sin(L) + (std::cos(L) - std::cos(D)) * std::sinh(L));
        const double expected = spring - std::sin(L) * std::sinh(L) / (mu * mu);
        EXPECT_LT(rel(det_M_closed(mu, p), expected), 1e-13) << mu;
    }
}

TEST(DetM, RangeAndDomainErrors) {
    const double l = ref().length();
    EXPECT_THROW(det_M_closed(0.0, ref()), DomainError);
    EXPECT_THROW(det_M_closed(691.0 / l, ref()), RangeError);
    EXPECT_NO_THROW(det_M_closed(689.0 / l, ref()));
    EXPECT_THROW(det_M_oracle(171.0 / l, ref()), RangeError);
    EXPECT_NO_THROW(det_M_oracle(169.0 / l, ref()));
}

// ---- truncated function -------------------------------------------------------

TEST(Phi0, ClosedFormRootForHalfAttachment) {
    const double l = 2.0;
    EXPECT_NEAR(phi0(std::numbers::pi / (2 * l), l, l / 2), 0.0, 1e-15);
}

TEST(Phi0, ExtraLowRoot) {
    EXPECT_NEAR(phi0(0.9949, 1.905, 1.4), 0.0, 1e-3);
    const auto r = scan_roots(Target::Phi0, ref(), 0.5, 1.5).roots;
    ASSERT_EQ(r.size(), 1u);
    EXPECT_NEAR(r[0].mu, 0.9949, 5e-5);
}

TEST(Phi0, VanishesAtZero) {
    EXPECT_EQ(phi0(0.0, 1.905, 1.4), 0.0);
    // Linear term: 2 mu^2 (l - l0) l0 is second order, so phi0 ~ -mu l.
    EXPECT_NEAR(phi0(1e-6, 1.905, 1.4) / 1e-6, -1.905, 1e-5);
}

TEST(Phi0, MatchesIndependentFormula) {
    for (double mu = 0.05; mu < 60.0; mu += 0.37) {
        EXPECT_NEAR(phi0(mu, 1.905, 1.4), oracle::truncated(mu, 1.905, 1.4), 1e-13) << mu;
    }
}

TEST(Phi0, DerivativeByFiniteDifferences) {
    const double h = 1e-6;
    for (double mu : {0.7, 3.1, 12.4, 33.0}) {
        const double fd = (phi0(mu + h, 1.905, 1.4) - phi0(mu - h, 1.905, 1.4)) / (2 * h);
        EXPECT_NEAR(phi0_derivative(mu, 1.905, 1.4), fd, 1e-7) << mu;
    }
}

TEST(Phi0, PeriodicForRationalAttachmentRatio) {
    // l0/l = 1/4: period 2 pi q / l with q = 4.
    const double l = 2.0, l0 = 0.5, period = 2 * std::numbers::pi * 4 / l;
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> mu_d(0.0, 40.0);
    for (int k = 0; k < 50; ++k) {
        const double mu = mu_d(rng);
        EXPECT_NEAR(phi0(mu + period, l, l0), phi0(mu, l, l0), 1e-12) << mu;
    }
}

TEST(Phi0, PeriodicForReferenceRatio) {
    // 1.4 / 1.905 = 280 / 381.
    const double l = 1.905, l0 = 1.4, period = 2 * std::numbers::pi * 381 / l;
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> mu_d(0.0, 40.0);
    for (int k = 0; k < 50; ++k) {
        const double mu = mu_d(rng);
        EXPECT_NEAR(phi0(mu + period, l, l0), phi0(mu, l, l0), 1e-11) << mu;
    }
}

// ---- remainder and full function ------------------------------------------------

TEST(Phi1, FoldedMatchesDirectAtSmallMu) {
    EXPECT_LT(rel(phi1(0.5, ref()), phi1_direct(0.5, ref())), 1e-10);
    for (double mu : {0.2, 1.3, 3.0, 6.0}) EXPECT_LT(rel(phi1(mu, ref()), phi1_direct(mu, ref())), 1e-9) << mu;
}

TEST(Phi1, LargeAtSmallMu) {
    // The spring group carries 1 / mu^4 and swamps phi0 at the low end.
    EXPECT_GT(std::abs(phi1(0.5, ref())), 100.0);
    EXPECT_GT(std::abs(phi1(0.5, ref())), std::abs(phi1(2.0, ref())));
    EXPECT_GT(std::abs(phi1(2.0, ref())), 10.0 * std::abs(phi1(8.0, ref())));
}

TEST(Phi1, DecaysLikeInverseMu) {
    auto sup = [](double a, double b) {
        double s = 0.0;
        for (double mu = a; mu <= b; mu += 0.01) s = std::max(s, std::abs(phi1(mu, ref())));
        return s;
    };
    const double near50 = sup(45.0, 55.0);
    const double near500 = sup(495.0, 505.0);
    EXPECT_LT(std::abs(phi1(50.0, ref())), 0.5);
    EXPECT_LT(near50, 0.6);
    // Decay by about the ratio of the abscissae.
    EXPECT_LT(near500, 0.15 * near50);
    EXPECT_GT(near500, 0.05 * near50);
}

TEST(Phi, PrefactorIdentity) {
    for (double mu : {1.0, 3.0, 7.0}) {
        const double lhs = det_M_closed(mu, ref());
        const double rhs = phi_prefactor(mu, ref()) * (phi0(mu, ref().length(), ref().attachment_point()) + phi1(mu, ref()));
        EXPECT_LT(rel(rhs, lhs), 1e-8) << mu;
        EXPECT_LT(rel(phi_prefactor(mu, ref()) * phi(mu, ref()), lhs), 1e-8) << mu;
    }
}

TEST(Phi, SmallNearTabulatedFirstRoot) {
    // 2.552 is rounded to 5e-4; phi has slope ~ 240 there.
    const double h = 1e-6;
    const double slope = (phi(2.552 + h, ref()) - phi(2.552 - h, ref())) / (2 * h);
    EXPECT_LE(std::abs(phi(2.552, ref())), 5e-4 * std::abs(slope));
}

TEST(Phi, SignAgreesWithDeterminant) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> mu_d(0.1, 20.0);
    for (int k = 0; k < 100; ++k) {
        const double mu = mu_d(rng);
        EXPECT_EQ(std::signbit(phi(mu, ref())), std::signbit(det_M_closed(mu, ref()))) << mu;
    }
}

TEST(Phi, NoHiddenZerosBetweenSecondAndThirdRoot) {
    const auto roots = scan_roots(Target::Phi, ref(), 4.0, 6.0).roots;
    ASSERT_EQ(roots.size(), 2u);
    const double eps = 1e-3;
    int changes = 0;
    double prev = phi(roots[0].mu + eps, ref());
    for (double mu = roots[0].mu + eps; mu <= roots[1].mu - eps; mu += 1e-4) {
        const double v = phi(mu, ref());
        if (std::signbit(v) != std::signbit(prev)) ++changes;
        prev = v;
    }
    EXPECT_EQ(changes, 0);
}

TEST(Phi, FiniteFarBeyondOverflow) {
    for (double mu = 1e-3; mu <= 1e6; mu *= 1.01) ASSERT_TRUE(std::isfinite(phi(mu, ref()))) << mu;
    EXPECT_TRUE(std::isfinite(phi(1e6, ref())));
}

TEST(Evaluate, ScaledFormsAgree) {
    for (double mu : {0.7, 4.0, 15.0}) {
        const double s = evaluate(FreqForm::PhiSum, mu, ref()).value_scaled;
        EXPECT_LT(rel(evaluate(FreqForm::ExactClosedForm, mu, ref()).value_scaled, s), 1e-8);
        EXPECT_LT(rel(evaluate(FreqForm::ExactOracle4x4, mu, ref()).value_scaled, s), 1e-8);
        EXPECT_EQ(evaluate(FreqForm::TruncatedPhi0, mu, ref()).value_scaled,
                  phi0(mu, ref().length(), ref().attachment_point()));
    }
}

// ---- boundary system determinant --------------------------------------------------

TEST(DetM3, NonZeroAtEveryRootOfWindow) {
    const auto roots = scan_roots(Target::Phi, ref(), 0.1, 38.5).roots;
    ASSERT_GE(roots.size(), 22u);
    for (const auto& r : roots) {
        const double scale = std::sinh(r.mu * ref().length()) / (2 * r.mu * r.mu);
        EXPECT_GT(std::abs(det_M3(r.mu, ref().length(), ref().attachment_point())), 1e-6 * scale) << r.mu;
    }
}

TEST(DetM3, MidspanAtFirstHalfWave) {
    const double l = 1.905, mu = std::numbers::pi / l;
    EXPECT_NEAR(det_M3(mu, l, l / 2), std::sinh(std::numbers::pi) / (2 * mu * mu), 1e-12);
}

TEST(DetM3, FiniteLimitAtSmallMu) {
    const double l = 1.905, l0 = 1.4;
    EXPECT_NEAR(det_M3(1e-4, l, l0), l * l0, 1e-6);
    EXPECT_NEAR(det_M3(1e-5, l, l0), l * l0, 1e-8);
}

TEST(DetM3, MatchesDeterminantOfBoundaryBlock) {
    for (double mu : {0.9, 2.552, 4.0, 7.7}) {
        const double d = linalg::lu_determinant(boundary_matrix3(mu, ref()));
        EXPECT_LT(rel(d, det_M3(mu, ref().length(), ref().attachment_point())), 1e-8) << mu;
    }
}

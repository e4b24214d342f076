#pragma once

// Reference computations that share no code with the library.

#include <quadmath.h>

#include <array>
#include <cmath>
#include <utility>

namespace oracle {

using quad = __float128;
using Mat4 = std::array<std::array<quad, 4>, 4>;

struct Beam {
    double EI;
    double rho;
    double l;
    double l0;
    double m;
    double kappa;
};

// Fundamental matrix of (u, u', u'', u''')' = A (u, u', u'', u''') with
// u'''' = mu^4 u, from the four scalar solutions written out directly:
// row k holds the k-th derivatives of the solutions with unit initial data.
inline Mat4 fundamental(quad mu, quad x) {
    const quad t = mu * x;
    const quad ch = coshq(t), sh = sinhq(t), c = cosq(t), s = sinq(t);
    const quad mu2 = mu * mu, mu3 = mu2 * mu;
    // Column j is the solution with U(0) = e_j; its derivatives of order k.
    const quad f[4][4] = {
        // e_0: (ch + c)/2
        {(ch + c) / 2, mu * (sh - s) / 2, mu2 * (ch - c) / 2, mu3 * (sh + s) / 2},
        // e_1: (sh + s)/(2 mu)
        {(sh + s) / (2 * mu), (ch + c) / 2, mu * (sh - s) / 2, mu2 * (ch - c) / 2},
        // e_2: (ch - c)/(2 mu^2)
        {(ch - c) / (2 * mu2), (sh + s) / (2 * mu), (ch + c) / 2, mu * (sh - s) / 2},
        // e_3: (sh - s)/(2 mu^3)
        {(sh - s) / (2 * mu3), (ch - c) / (2 * mu2), (sh + s) / (2 * mu), (ch + c) / 2},
    };
    Mat4 out{};
    for (int k = 0; k < 4; ++k)
        for (int j = 0; j < 4; ++j) out[k][j] = f[j][k];
    return out;
}

inline quad det4(Mat4 a) {
    quad det = 1;
    for (int c = 0; c < 4; ++c) {
        int p = c;
        for (int r = c + 1; r < 4; ++r)
            if (fabsq(a[r][c]) > fabsq(a[p][c])) p = r;
        if (a[p][c] == 0) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (int r = c + 1; r < 4; ++r) {
            const quad f = a[r][c] / a[c][c];
            for (int k = c; k < 4; ++k) a[r][k] -= f * a[c][k];
        }
    }
    return det;
}

// Interface determinant built from first principles: unknowns
// (u'(0), u'''(0), u'(l), u'''(l)), state at l0 propagated from each end,
// rows u, u', u'' continuity and the shaker balance
//   (u'''(l0-) - u'''(l0+)) - (kappa/EI - m mu^4/rho) u(l0) = 0.
inline double interface_det(double mu_d, const Beam& b) {
    const quad mu = mu_d;
    const Mat4 L = fundamental(mu, (quad)b.l0);
    const Mat4 R = fundamental(mu, (quad)b.l0 - (quad)b.l);
    const quad coupling = (quad)b.kappa / (quad)b.EI - (quad)b.m * mu * mu * mu * mu / (quad)b.rho;
    Mat4 M{};
    for (int k = 0; k < 3; ++k) {
        M[k] = {L[k][1], L[k][3], -R[k][1], -R[k][3]};
    }
    M[3] = {L[3][1] - coupling * L[0][1], L[3][3] - coupling * L[0][3], -R[3][1], -R[3][3]};
    return (double)det4(M);
}

// Classical RK4 on U' = A U with a fixed number of steps.
inline std::array<std::array<double, 4>, 4> rk4_fundamental(double mu, double x, int steps) {
    using V = std::array<long double, 4>;
    const long double mu4 = (long double)mu * mu * mu * mu;
    auto rhs = [&](const V& u) { return V{u[1], u[2], u[3], mu4 * u[0]}; };
    std::array<std::array<double, 4>, 4> out{};
    const long double h = (long double)x / steps;
    for (int j = 0; j < 4; ++j) {
        V u{};
        u[j] = 1;
        for (int s = 0; s < steps; ++s) {
            const V k1 = rhs(u);
            V t;
            for (int i = 0; i < 4; ++i) t[i] = u[i] + h / 2 * k1[i];
            const V k2 = rhs(t);
            for (int i = 0; i < 4; ++i) t[i] = u[i] + h / 2 * k2[i];
            const V k3 = rhs(t);
            for (int i = 0; i < 4; ++i) t[i] = u[i] + h * k3[i];
            const V k4 = rhs(t);
            for (int i = 0; i < 4; ++i) u[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
        }
        for (int i = 0; i < 4; ++i) out[i][j] = (double)u[i];
    }
    return out;
}

// Truncated characteristic function, written independently.
inline double truncated(double mu, double l, double l0) {
    return 2.0 * std::sin(mu * (l - l0)) * std::sin(mu * l0) - std::sin(mu * l);
}

}  // namespace oracle

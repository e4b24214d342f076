#pragma once

// Fixed-size dense LU for the tiny systems that appear in the interface
// conditions (3x3 and 4x4). Scalar type is a template parameter so the same
// code runs in double and in __float128.

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <utility>

namespace shakerbeam::linalg {

template <typename T>
constexpr T magnitude(T v) {
    return v < T(0) ? -v : v;
}

template <typename T, std::size_t N>
using Matrix = std::array<std::array<T, N>, N>;

template <typename T, std::size_t N>
using Vector = std::array<T, N>;

template <typename T, std::size_t N>
struct LuFactors {
    Matrix<T, N> lu{};
    std::array<std::size_t, N> perm{};
    int parity = 1;
    bool singular = false;
};

/// Doolittle LU with partial (row) pivoting.
template <typename T, std::size_t N>
LuFactors<T, N> lu_factor(Matrix<T, N> a) {
    LuFactors<T, N> f;
    for (std::size_t i = 0; i < N; ++i) f.perm[i] = i;
    for (std::size_t k = 0; k < N; ++k) {
        std::size_t pivot = k;
        for (std::size_t i = k + 1; i < N; ++i) {
            if (magnitude(a[i][k]) > magnitude(a[pivot][k])) pivot = i;
        }
        if (pivot != k) {
            std::swap(a[pivot], a[k]);
            std::swap(f.perm[pivot], f.perm[k]);
            f.parity = -f.parity;
        }
        if (a[k][k] == T(0)) {
            f.singular = true;
            continue;
        }
        for (std::size_t i = k + 1; i < N; ++i) {
            const T factor = a[i][k] / a[k][k];
            a[i][k] = factor;
            for (std::size_t j = k + 1; j < N; ++j) a[i][j] -= factor * a[k][j];
        }
    }
    f.lu = a;
    return f;
}

template <typename T, std::size_t N>
T lu_determinant(const Matrix<T, N>& a) {
    const auto f = lu_factor(a);
    T det = T(f.parity);
    for (std::size_t k = 0; k < N; ++k) det *= f.lu[k][k];
    return det;
}

/// Solves a x = b; std::nullopt when a pivot is exactly zero.
template <typename T, std::size_t N>
std::optional<Vector<T, N>> lu_solve(const Matrix<T, N>& a, const Vector<T, N>& b) {
    const auto f = lu_factor(a);
    if (f.singular) return std::nullopt;
    Vector<T, N> y{};
    for (std::size_t i = 0; i < N; ++i) {
        T s = b[f.perm[i]];
        for (std::size_t j = 0; j < i; ++j) s -= f.lu[i][j] * y[j];
        y[i] = s;
    }
    Vector<T, N> x{};
    for (std::size_t i = N; i-- > 0;) {
        T s = y[i];
        for (std::size_t j = i + 1; j < N; ++j) s -= f.lu[i][j] * x[j];
        x[i] = s / f.lu[i][i];
    }
    return x;
}

template <typename T, std::size_t N>
Vector<T, N> multiply(const Matrix<T, N>& a, const Vector<T, N>& x) {
    Vector<T, N> y{};
    for (std::size_t i = 0; i < N; ++i) {
        T s = T(0);
        for (std::size_t j = 0; j < N; ++j) s += a[i][j] * x[j];
        y[i] = s;
    }
    return y;
}

template <typename T, std::size_t N>
struct NullVector {
    Vector<T, N> vector{};
    // |pivot_k| / |pivot_0| for the complete-pivoting elimination; the last
    // entry measures how singular the matrix is, the one before it whether
    // the null space is more than one-dimensional.
    std::array<T, N> relative_pivots{};
};

/// Gaussian elimination with complete pivoting; returns the vector spanning
/// the (numerical) null space obtained by setting the last pivoted unknown
/// to one. Meaningful when the matrix has numerical rank N-1.
template <typename T, std::size_t N>
NullVector<T, N> null_vector(Matrix<T, N> a) {
    std::array<std::size_t, N> col{};
    for (std::size_t j = 0; j < N; ++j) col[j] = j;

    NullVector<T, N> out;
    T first_pivot = T(0);
    for (std::size_t k = 0; k < N; ++k) {
        std::size_t pr = k;
        std::size_t pc = k;
        for (std::size_t i = k; i < N; ++i) {
            for (std::size_t j = k; j < N; ++j) {
                if (magnitude(a[i][j]) > magnitude(a[pr][pc])) {
                    pr = i;
                    pc = j;
                }
            }
        }
        std::swap(a[pr], a[k]);
        if (pc != k) {
            for (std::size_t i = 0; i < N; ++i) std::swap(a[i][pc], a[i][k]);
            std::swap(col[pc], col[k]);
        }
        if (k == 0) first_pivot = magnitude(a[0][0]);
        out.relative_pivots[k] = first_pivot > T(0) ? magnitude(a[k][k]) / first_pivot : T(0);
        if (k + 1 == N || a[k][k] == T(0)) continue;
        for (std::size_t i = k + 1; i < N; ++i) {
            const T factor = a[i][k] / a[k][k];
            for (std::size_t j = k; j < N; ++j) a[i][j] -= factor * a[k][j];
        }
    }

    // Back substitution on the leading (N-1)x(N-1) block with the last
    // permuted unknown fixed to one.
    Vector<T, N> y{};
    y[N - 1] = T(1);
    for (std::size_t i = N - 1; i-- > 0;) {
        T s = T(0);
        for (std::size_t j = i + 1; j < N; ++j) s += a[i][j] * y[j];
        y[i] = a[i][i] == T(0) ? T(0) : -s / a[i][i];
    }
    for (std::size_t j = 0; j < N; ++j) out.vector[col[j]] = y[j];
    return out;
}

}  // namespace shakerbeam::linalg

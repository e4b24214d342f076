#pragma once

// Published modal table for the laboratory beam (l = 1.905 m, l0 = 1.4 m).
// A missing truncated entry is NaN.

#include <array>
#include <limits>

namespace reference {

struct Row {
    int j;
    double mu_bar;
    double mu;
    double nu_bar;
    double nu;
};

inline constexpr double kNone = std::numeric_limits<double>::quiet_NaN();

inline constexpr std::array<Row, 22> kTable{{
    {1, 2.616, 2.552, 4.767, 4.537},
    {2, 4.714, 4.573, 15.485, 14.570},
    {3, kNone, 5.618, kNone, 21.994},
    {4, 6.553, 6.608, 29.921, 30.427},
    {5, 7.460, 8.198, 38.774, 46.830},
    {6, 9.309, 9.721, 60.378, 65.850},
    {7, 11.407, 11.494, 90.661, 92.061},
    {8, 13.013, 13.142, 117.997, 120.342},
    {9, 14.018, 14.501, 136.914, 146.510},
    {10, 16.009, 16.226, 178.565, 183.445},
    {11, 18.085, 18.113, 227.881, 228.610},
    {12, 20.648, 20.988, 297.075, 306.918},
    {13, 22.711, 22.846, 359.376, 363.683},
    {14, 24.732, 24.734, 426.184, 426.273},
    {15, 25.803, 26.084, 463.925, 474.083},
    {16, 27.318, 27.554, 519.992, 528.997},
    {17, 29.411, 29.497, 602.735, 606.252},
    {18, 31.318, 31.325, 683.413, 683.723},
    {19, 32.238, 32.533, 724.138, 737.484},
    {20, 34.007, 34.172, 805.799, 813.665},
    {21, 36.107, 36.158, 908.419, 910.975},
    {22, 37.814, 37.863, 996.296, 998.922},
}};

// Extra low truncated root with no exact partner.
inline constexpr double kMuBar0 = 0.9949;

}  // namespace reference

#pragma once

#include <string>
#include <string_view>

namespace shakerbeam::units {

/// Exponents of the SI base dimensions mass, length and time.
struct Dimension {
    int mass = 0;
    int length = 0;
    int time = 0;

    friend bool operator==(const Dimension&, const Dimension&) = default;
};

inline constexpr Dimension kDimensionless{};
inline constexpr Dimension kMass{1, 0, 0};
inline constexpr Dimension kLength{0, 1, 0};
inline constexpr Dimension kArea{0, 2, 0};
inline constexpr Dimension kSecondMoment{0, 4, 0};
inline constexpr Dimension kPressure{1, -1, -2};
inline constexpr Dimension kLinearDensity{1, -1, 0};
inline constexpr Dimension kVolumetricDensity{1, -3, 0};
inline constexpr Dimension kStiffness{1, 0, -2};

struct Quantity {
    double value = 0.0;
    Dimension dimension;
};

/// Parses "<number> [unit]" such as "7 N/mm", "2700 kg/m^3" or "6.9e10".
/// Unit expressions are products and quotients of prefixed base units
/// (g, m, s, N, Pa) with optional integer exponents. A bare number is
/// dimensionless; the caller decides whether that means SI.
/// Throws std::invalid_argument on malformed text.
Quantity parse_quantity(std::string_view text);

std::string to_string(const Dimension& d);

}  // namespace shakerbeam::units

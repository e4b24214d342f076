#include "shakerbeam/units.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace shakerbeam::units {
namespace {

struct UnitEntry {
    std::string_view symbol;
    double factor;
    Dimension dimension;
};

constexpr std::array kBaseUnits{
    UnitEntry{"g", 1e-3, kMass},
    UnitEntry{"m", 1.0, kLength},
    UnitEntry{"s", 1.0, Dimension{0, 0, 1}},
    UnitEntry{"N", 1.0, Dimension{1, 1, -2}},
    UnitEntry{"Pa", 1.0, kPressure},
};

constexpr std::array<std::pair<std::string_view, double>, 8> kPrefixes{{
    {"G", 1e9},
    {"M", 1e6},
    {"k", 1e3},
    {"c", 1e-2},
    {"m", 1e-3},
    {"u", 1e-6},
    {"\xC2\xB5", 1e-6},  // micro sign
    {"n", 1e-9},
}};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

const UnitEntry* find_base(std::string_view symbol) {
    for (const auto& u : kBaseUnits) {
        if (u.symbol == symbol) return &u;
    }
    return nullptr;
}

UnitEntry resolve_symbol(std::string_view symbol) {
    if (const auto* base = find_base(symbol)) return *base;
    for (const auto& [prefix, scale] : kPrefixes) {
        if (symbol.size() > prefix.size() && symbol.starts_with(prefix)) {
            if (const auto* base = find_base(symbol.substr(prefix.size()))) {
                return UnitEntry{symbol, scale * base->factor, base->dimension};
            }
        }
    }
    throw std::invalid_argument("unknown unit '" + std::string(symbol) + "'");
}

// Reads an optional exponent after a unit symbol: "^3", "^-1", or one of
// the superscripts ², ³, ⁴.
int read_exponent(std::string_view& rest) {
    if (rest.starts_with("^")) {
        rest.remove_prefix(1);
        int value = 0;
        const char* first = rest.data();
        const char* last = rest.data() + rest.size();
        if (!rest.empty() && rest.front() == '+') ++first;
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{}) throw std::invalid_argument("malformed unit exponent");
        rest.remove_prefix(static_cast<std::size_t>(ptr - rest.data()));
        return value;
    }
    constexpr std::array<std::pair<std::string_view, int>, 3> kSuperscripts{{
        {"\xC2\xB2", 2}, {"\xC2\xB3", 3}, {"\xE2\x81\xB4", 4}}};
    for (const auto& [glyph, value] : kSuperscripts) {
        if (rest.starts_with(glyph)) {
            rest.remove_prefix(glyph.size());
            return value;
        }
    }
    return 1;
}

}  // namespace

Quantity parse_quantity(std::string_view text) {
    text = trim(text);
    if (text.empty()) throw std::invalid_argument("empty quantity");

    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || !std::isfinite(value)) {
        throw std::invalid_argument("malformed number in '" + std::string(text) + "'");
    }
    std::string_view rest = trim(text.substr(static_cast<std::size_t>(ptr - text.data())));

    Quantity q{value, kDimensionless};
    int sign = 1;
    bool expect_symbol = true;
    bool after_operator = false;
    while (!rest.empty()) {
        if (!expect_symbol) {
            std::size_t width = 1;
            if (rest.front() == '/') {
                sign = -1;
            } else if (rest.front() == '*' || rest.front() == '.') {
                sign = 1;
            } else if (rest.starts_with("\xC2\xB7")) {  // middle dot
                sign = 1;
                width = 2;
            } else {
                throw std::invalid_argument("unexpected '" + std::string(rest) + "' in unit");
            }
            rest = trim(rest.substr(width));
            expect_symbol = true;
            after_operator = true;
            continue;
        }

        std::size_t n = 0;
        while (n < rest.size()) {
            const auto c = static_cast<unsigned char>(rest[n]);
            if (std::isalpha(c)) {
                ++n;
            } else if (c == 0xC2 && n + 1 < rest.size() &&
                       static_cast<unsigned char>(rest[n + 1]) == 0xB5) {
                n += 2;  // micro sign as a prefix
            } else {
                break;
            }
        }
        if (n == 0) throw std::invalid_argument("missing unit symbol in '" + std::string(text) + "'");

        const UnitEntry unit = resolve_symbol(rest.substr(0, n));
        rest.remove_prefix(n);
        const int exponent = sign * read_exponent(rest);
        rest = trim(rest);

        q.value *= std::pow(unit.factor, exponent);
        q.dimension.mass += unit.dimension.mass * exponent;
        q.dimension.length += unit.dimension.length * exponent;
        q.dimension.time += unit.dimension.time * exponent;
        sign = 1;
        expect_symbol = false;
        after_operator = false;
    }
    if (after_operator) {
        throw std::invalid_argument("dangling operator in unit");
    }
    return q;
}

std::string to_string(const Dimension& d) {
    std::string out;
    auto append = [&out](const char* symbol, int exponent) {
        if (exponent == 0) return;
        if (!out.empty()) out += ' ';
        out += symbol;
        if (exponent != 1) out += '^' + std::to_string(exponent);
    };
    append("kg", d.mass);
    append("m", d.length);
    append("s", d.time);
    return out.empty() ? "1" : out;
}

}  // namespace shakerbeam::units

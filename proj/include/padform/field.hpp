#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace padform {

// The two supported ramified quadratic extensions of the 2-adic numbers:
//   gaussian:  K = Q_2(sqrt(-1)),  theta^2 = -1
//   m5:        K = Q_2(sqrt(-5)),  theta^2 = -5
// In both, pi = 1 + theta is a uniformizer and v(2) = 2
// (ramification index 2), so v(a + b*theta) = v_2(a^2 - m*b^2).
enum class FieldTag : std::uint8_t { gaussian = 0, m5 = 1 };

inline constexpr int kFormDegree = 6;

constexpr int field_m(FieldTag tag) { return tag == FieldTag::gaussian ? -1 : -5; }

constexpr const char* field_name(FieldTag tag) {
    return tag == FieldTag::gaussian ? "gaussian" : "m5";
}

inline std::optional<FieldTag> parse_field(std::string_view s) {
    if (s == "gaussian") return FieldTag::gaussian;
    if (s == "m5") return FieldTag::m5;
    return std::nullopt;
}

}  // namespace padform

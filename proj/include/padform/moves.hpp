#pragma once

#include <cstdint>

namespace padform {

// The four contraction kinds plus the level-lowering rename
// pi^r x^6 = pi^(r-6) (pi x)^6.
//   d:  two variables, same level, different pi-coefficients -> exactly +1,
//       output pi-coefficient freely chosen
//   s2: same level, same pi-coefficient -> exactly +2
//   s3: same level, same pi-coefficient -> +3 or +4 (or a terminal win)
//   t:  a pair out of three same-level same-pi-coefficient variables -> +4
//       (or a terminal win)
enum class MoveKind : std::uint8_t { d = 0, s2 = 1, s3 = 2, t = 3, rename_down = 4 };

// A win needs a contraction chain rising five levels above its lowest
// anchor; slack tracks that rise exactly.
inline constexpr int kWinSlack = 5;

constexpr const char* move_kind_name(MoveKind k) {
    switch (k) {
        case MoveKind::d: return "d";
        case MoveKind::s2: return "s2";
        case MoveKind::s3: return "s3";
        case MoveKind::t: return "t";
        case MoveKind::rename_down: return "rename";
    }
    return "?";
}

}  // namespace padform

#pragma once

// Shared generators for the unit and acceptance suites.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "padform/contraction.hpp"
#include "padform/element.hpp"
#include "padform/form.hpp"

namespace padform::testing {

using Rng = std::mt19937_64;

// Exact element with components uniform in roughly +-2^20.
inline Element random_exact_element(Rng& rng, FieldTag field) {
    std::uniform_int_distribution<std::int64_t> dist(-(1 << 20), 1 << 20);
    while (true) {
        std::int64_t a = dist(rng);
        std::int64_t b = dist(rng);
        if (a == 0 && b == 0) continue;
        return Element::from_integers(a, b, field);
    }
}

// Nonzero coefficient with components uniform mod 2^24 (the batch
// generator's distribution).
inline Element random_coefficient(Rng& rng, FieldTag field) {
    std::uniform_int_distribution<std::uint64_t> dist(0, (1u << 24) - 1);
    while (true) {
        std::uint64_t a = dist(rng);
        std::uint64_t b = dist(rng);
        if (a == 0 && b == 0) continue;
        return Element::from_integers(static_cast<std::int64_t>(a),
                                      static_cast<std::int64_t>(b), field);
    }
}

inline DiagonalForm random_form(Rng& rng, FieldTag field, std::size_t variables) {
    std::vector<Element> coeffs;
    coeffs.reserve(variables);
    for (std::size_t i = 0; i < variables; ++i) coeffs.push_back(random_coefficient(rng, field));
    return make_form(field, std::move(coeffs));
}

// Random contraction tree over a fresh normalized form: applies random
// legal realizer moves (including renames) until a terminal node
// appears or the pool thins out.  `all_measured` is false when some
// move's delta was only a lower bound (vanishing coefficient).
struct RandomTree {
    ContractionArena arena;
    DiagonalForm form;  // the normalized form the arena was built on
    int root = -1;
    bool all_measured = true;
};

inline RandomTree random_contraction_tree(Rng& rng, FieldTag field,
                                          const SixthPowerTable& table) {
    DiagonalForm form = normalize(random_form(rng, field, 7));
    RandomTree out{ContractionArena(form), form};
    std::vector<int> alive;
    for (std::size_t i = 0; i < form.size(); ++i) alive.push_back(out.arena.leaf(i));

    auto remove_id = [&](int id) {
        alive.erase(std::find(alive.begin(), alive.end(), id));
    };

    int last_internal = -1;
    std::size_t moves = 4 + rng() % 5;
    for (std::size_t step = 0; step < moves; ++step) {
        struct Option {
            MoveKind kind;
            int a, b, c;
        };
        std::vector<Option> options;
        for (std::size_t i = 0; i < alive.size(); ++i) {
            const VarNode& ni = out.arena.node(alive[i]);
            if (ni.level >= kFormDegree)
                options.push_back({MoveKind::rename_down, alive[i], -1, -1});
            for (std::size_t j = i + 1; j < alive.size(); ++j) {
                const VarNode& nj = out.arena.node(alive[j]);
                if (ni.level != nj.level) continue;
                if (ni.pi_coefficient != nj.pi_coefficient) {
                    options.push_back({MoveKind::d, alive[i], alive[j], -1});
                } else {
                    options.push_back({MoveKind::s2, alive[i], alive[j], -1});
                    options.push_back({MoveKind::s3, alive[i], alive[j], -1});
                    for (std::size_t k = j + 1; k < alive.size(); ++k) {
                        const VarNode& nk = out.arena.node(alive[k]);
                        if (nk.level == ni.level &&
                            nk.pi_coefficient == ni.pi_coefficient)
                            options.push_back({MoveKind::t, alive[i], alive[j], alive[k]});
                    }
                }
            }
        }
        if (options.empty()) break;
        Option pick = options[rng() % options.size()];
        RealizedMove mv;
        switch (pick.kind) {
            case MoveKind::d:
                mv = realize_d(out.arena, pick.a, pick.b, static_cast<int>(rng() % 2), table);
                break;
            case MoveKind::s2: mv = realize_s2(out.arena, pick.a, pick.b, table); break;
            case MoveKind::s3: mv = realize_s3(out.arena, pick.a, pick.b, table); break;
            case MoveKind::t: mv = realize_t(out.arena, pick.a, pick.b, pick.c, table); break;
            case MoveKind::rename_down: mv = rename_down(out.arena, pick.a); break;
        }
        if (!mv.delta_exact || mv.exact_zero) out.all_measured = false;
        remove_id(mv.inputs[0]);
        if (mv.inputs[1] >= 0) remove_id(mv.inputs[1]);
        last_internal = mv.output;
        if (mv.terminal) break;
        alive.push_back(mv.output);
    }
    out.root = last_internal;
    return out;
}

// 2-adic valuation of the norm a^2 - m*b^2, computed independently of
// the element code path.  Requires an exact element.
inline int norm_valuation_oracle(const Element& x) {
    __int128 a = static_cast<std::int64_t>(x.a());
    __int128 b = static_cast<std::int64_t>(x.b());
    __int128 n = a * a - field_m(x.field()) * b * b;
    if (n < 0) n = -n;
    if (n == 0) return -1;  // caller handles zero separately
    int v = 0;
    while ((n & 1) == 0) {
        n >>= 1;
        ++v;
    }
    return v;
}

}  // namespace padform::testing

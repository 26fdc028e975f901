// Concrete realization of the contraction calculus.  Realizers search
// unit substitutions over the sixth-power class table, build provenance
// nodes, and keep the slack bookkeeping exact so that the gap measured
// by unwind_assignment equals the root's slack.

#include "padform/contraction.hpp"

#include <algorithm>
#include <stdexcept>

namespace padform {

ContractionArena::ContractionArena(const DiagonalForm& form) : form_(form) {
    if (!form.normalized)
        throw std::invalid_argument("contraction: form must be normalized");
    nodes_.reserve(form.size() * 2);
    for (std::size_t i = 0; i < form.size(); ++i) {
        UnitDecomposition ud = unit_decompose(form.coefficients[i]);
        VarNode leaf;
        leaf.coefficient = form.coefficients[i];
        leaf.level = ud.valuation;
        leaf.pi_coefficient = ud.pi_coefficient;
        leaf.slack = 0;
        leaf.leaf_index = static_cast<int>(i);
        nodes_.push_back(leaf);
    }
}

int ContractionArena::add_node(VarNode n) {
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size() - 1);
}

namespace {

struct PairContext {
    const VarNode* x;
    const VarNode* y;
    int level;
    int max_slack;
};

PairContext pair_context(const ContractionArena& arena, int xi, int yi) {
    const VarNode& x = arena.node(xi);
    const VarNode& y = arena.node(yi);
    if (x.level < 0 || y.level < 0 || x.level != y.level)
        throw std::invalid_argument("contraction: inputs must share a level");
    return {&x, &y, x.level, std::max(x.slack, y.slack)};
}

// Builds the output node for a realized pair contraction and fills the
// delta/terminal fields of the move.
RealizedMove finish_contraction(ContractionArena& arena, MoveKind kind, int xi, int yi,
                                const Element& alpha, const Element& beta,
                                const Element& coeff) {
    const PairContext ctx = pair_context(arena, xi, yi);
    RealizedMove move;
    move.kind = kind;
    move.inputs[0] = xi;
    move.inputs[1] = yi;

    VarNode out;
    out.coefficient = coeff;
    out.left = xi;
    out.right = yi;
    out.alpha = alpha;
    out.beta = beta;

    if (coeff.is_exact_zero()) {
        out.level = -1;
        out.pi_coefficient = 0;
        out.slack = kInfiniteValuation;
        move.exact_zero = true;
        move.terminal = true;
        move.achieved_delta = kInfiniteValuation;
        move.delta_exact = false;
    } else {
        ValuationBound vb = valuation_bound(coeff);
        if (vb.is_exact) {
            out.level = vb.v;
            out.pi_coefficient = pi_coefficient_of_unit(div_pow_pi(coeff, vb.v));
            move.achieved_delta = vb.v - ctx.level;
            move.delta_exact = true;
        } else {
            out.level = -1;
            out.pi_coefficient = 0;
            move.achieved_delta = vb.v - ctx.level;  // lower bound
            move.delta_exact = false;
        }
        out.slack = move.achieved_delta + ctx.max_slack;
        move.terminal = out.slack >= kWinSlack;
    }
    move.achieved_bit = out.pi_coefficient;
    move.output = arena.add_node(std::move(out));
    return move;
}

void check_table(const ContractionArena& arena, const SixthPowerTable& table) {
    if (table.field() != arena.form().field)
        throw std::invalid_argument("contraction: table field mismatch");
}

}  // namespace

RealizedMove realize_d(ContractionArena& arena, int x, int y, int want_bit,
                       const SixthPowerTable& table) {
    check_table(arena, table);
    const PairContext ctx = pair_context(arena, x, y);
    if (ctx.x->pi_coefficient == ctx.y->pi_coefficient)
        throw std::invalid_argument("realize_d: inputs must have different pi-coefficients");
    const auto& sixths = table.witness_sixth_powers();
    const auto& wits = table.witnesses();
    for (std::size_t i = 0; i < sixths.size(); ++i) {
        Element ta = mul(sixths[i], ctx.x->coefficient);
        for (std::size_t j = 0; j < sixths.size(); ++j) {
            Element c = add(ta, mul(sixths[j], ctx.y->coefficient));
            ValuationBound vb = valuation_bound(c);
            if (!vb.is_exact || vb.v != ctx.level + 1) continue;
            if (pi_coefficient_of_unit(div_pow_pi(c, vb.v)) != want_bit) continue;
            return finish_contraction(arena, MoveKind::d, x, y, wits[i], wits[j], c);
        }
    }
    throw RealizationFailure("realize_d: no witness pair achieves the requested bit");
}

RealizedMove realize_s2(ContractionArena& arena, int x, int y, const SixthPowerTable& table) {
    check_table(arena, table);
    const PairContext ctx = pair_context(arena, x, y);
    if (ctx.x->pi_coefficient != ctx.y->pi_coefficient)
        throw std::invalid_argument("realize_s2: inputs must share a pi-coefficient");
    const auto& sixths = table.witness_sixth_powers();
    const auto& wits = table.witnesses();
    for (std::size_t i = 0; i < sixths.size(); ++i) {
        Element ta = mul(sixths[i], ctx.x->coefficient);
        for (std::size_t j = 0; j < sixths.size(); ++j) {
            Element c = add(ta, mul(sixths[j], ctx.y->coefficient));
            ValuationBound vb = valuation_bound(c);
            if (!vb.is_exact || vb.v != ctx.level + 2) continue;
            return finish_contraction(arena, MoveKind::s2, x, y, wits[i], wits[j], c);
        }
    }
    throw RealizationFailure("realize_s2: no witness pair achieves exactly +2");
}

namespace {

// Shared search for the ">= delta_min" realizers (s3, t).  Prefers the
// first candidate whose output slack reaches kWinSlack; otherwise the
// first candidate with the smallest exact delta >= delta_min.
struct RaiseCandidate {
    bool found = false;
    std::size_t i = 0, j = 0;
    Element coeff;
};

struct RaiseSearch {
    RaiseCandidate terminal;
    RaiseCandidate planner;
    int planner_delta = 0;

    void offer(std::size_t i, std::size_t j, const Element& c, const ValuationBound& vb,
               bool zero, int level, int max_slack, int delta_min) {
        int delta = vb.v - level;
        bool is_terminal = zero || !vb.is_exact || delta + max_slack >= kWinSlack;
        if (is_terminal) {
            if (!zero && vb.is_exact && delta < delta_min) return;
            if (!terminal.found) terminal = {true, i, j, c};
            return;
        }
        if (delta < delta_min) return;
        if (!planner.found || delta < planner_delta) {
            planner = {true, i, j, c};
            planner_delta = delta;
        }
    }

    const RaiseCandidate* pick() const {
        if (terminal.found) return &terminal;
        if (planner.found) return &planner;
        return nullptr;
    }
};

}  // namespace

RealizedMove realize_s3(ContractionArena& arena, int x, int y, const SixthPowerTable& table) {
    check_table(arena, table);
    const PairContext ctx = pair_context(arena, x, y);
    if (ctx.x->pi_coefficient != ctx.y->pi_coefficient)
        throw std::invalid_argument("realize_s3: inputs must share a pi-coefficient");
    const auto& sixths = table.witness_sixth_powers();
    const auto& wits = table.witnesses();
    RaiseSearch search;
    for (std::size_t i = 0; i < sixths.size(); ++i) {
        Element ta = mul(sixths[i], ctx.x->coefficient);
        for (std::size_t j = 0; j < sixths.size(); ++j) {
            Element c = add(ta, mul(sixths[j], ctx.y->coefficient));
            if (c.is_exact_zero()) {
                search.offer(i, j, c, {kInfiniteValuation, true}, true, ctx.level,
                             ctx.max_slack, 3);
                continue;
            }
            ValuationBound vb = valuation_bound(c);
            if (vb.is_exact && vb.v < ctx.level + 3) continue;
            search.offer(i, j, c, vb, false, ctx.level, ctx.max_slack, 3);
        }
    }
    if (const RaiseCandidate* best = search.pick())
        return finish_contraction(arena, MoveKind::s3, x, y, wits[best->i], wits[best->j],
                                  best->coeff);
    throw RealizationFailure("realize_s3: no witness pair reaches +3");
}

RealizedMove realize_t(ContractionArena& arena, int x, int y, int z,
                       const SixthPowerTable& table) {
    check_table(arena, table);
    const VarNode& nx = arena.node(x);
    const VarNode& ny = arena.node(y);
    const VarNode& nz = arena.node(z);
    if (nx.level != ny.level || ny.level != nz.level || nx.level < 0)
        throw std::invalid_argument("realize_t: inputs must share a level");
    if (nx.pi_coefficient != ny.pi_coefficient || ny.pi_coefficient != nz.pi_coefficient)
        throw std::invalid_argument("realize_t: inputs must share a pi-coefficient");
    const auto& sixths = table.witness_sixth_powers();
    const auto& wits = table.witnesses();
    const int pairs[3][2] = {{x, y}, {x, z}, {y, z}};
    for (const auto& pair : pairs) {
        const PairContext ctx = pair_context(arena, pair[0], pair[1]);
        RaiseSearch search;
        for (std::size_t i = 0; i < sixths.size(); ++i) {
            Element ta = mul(sixths[i], ctx.x->coefficient);
            for (std::size_t j = 0; j < sixths.size(); ++j) {
                Element c = add(ta, mul(sixths[j], ctx.y->coefficient));
                if (c.is_exact_zero()) {
                    search.offer(i, j, c, {kInfiniteValuation, true}, true, ctx.level,
                                 ctx.max_slack, 4);
                    continue;
                }
                ValuationBound vb = valuation_bound(c);
                if (vb.is_exact && vb.v < ctx.level + 4) continue;
                search.offer(i, j, c, vb, false, ctx.level, ctx.max_slack, 4);
            }
        }
        if (const RaiseCandidate* best = search.pick())
            return finish_contraction(arena, MoveKind::t, pair[0], pair[1], wits[best->i],
                                      wits[best->j], best->coeff);
    }
    throw RealizationFailure("realize_t: no pair among the three reaches +4");
}

RealizedMove rename_down(ContractionArena& arena, int x) {
    const VarNode& n = arena.node(x);
    if (n.level < kFormDegree)
        throw std::invalid_argument("rename_down: level must be at least 6");
    VarNode out;
    out.coefficient = div_pow_pi(n.coefficient, kFormDegree);
    out.level = n.level - kFormDegree;
    out.pi_coefficient = n.pi_coefficient;  // the unit part is untouched
    out.slack = n.slack;                    // the gap moves down with the coefficient
    out.rename_power = 1;
    out.left = x;
    out.alpha = Element::one(n.coefficient.field());
    out.beta = Element::one(n.coefficient.field());

    RealizedMove move;
    move.kind = MoveKind::rename_down;
    move.inputs[0] = x;
    move.achieved_delta = -kFormDegree;
    move.achieved_bit = out.pi_coefficient;
    move.terminal = false;
    move.output = arena.add_node(std::move(out));
    return move;
}

Unwound unwind_assignment(const ContractionArena& arena, int root, const DiagonalForm& form) {
    if (root < 0 || root >= arena.size())
        throw std::invalid_argument("unwind: root out of range");
    if (form.size() != arena.form().size() || form.field != arena.form().field)
        throw std::invalid_argument("unwind: form does not match the arena");

    struct Pending {
        int id;
        Element value;  // product of unit multipliers along the path
        int exponent;   // -(renames crossed); the leaf picks up pi^(exponent - min)
    };
    struct LeafValue {
        int index;
        Element value;
        int exponent;
    };
    std::vector<char> used(form.size(), 0);
    std::vector<LeafValue> leaves;
    std::vector<Pending> stack;
    stack.push_back({root, Element::one(form.field), 0});
    while (!stack.empty()) {
        Pending p = stack.back();
        stack.pop_back();
        const VarNode& n = arena.node(p.id);
        if (n.is_leaf()) {
            if (used[static_cast<std::size_t>(n.leaf_index)])
                throw std::invalid_argument("unwind: inconsistent tree (duplicate leaf)");
            used[static_cast<std::size_t>(n.leaf_index)] = 1;
            leaves.push_back({n.leaf_index, p.value, p.exponent});
        } else if (n.is_rename()) {
            stack.push_back({n.left, p.value, p.exponent - 1});
        } else {
            stack.push_back({n.left, mul(p.value, n.alpha), p.exponent});
            stack.push_back({n.right, mul(p.value, n.beta), p.exponent});
        }
    }

    int min_exponent = 0;
    for (const LeafValue& lf : leaves) min_exponent = std::min(min_exponent, lf.exponent);

    Unwound out;
    out.assignment.assign(form.size(), Element::zero(form.field));
    int min_term = kInfiniteValuation;
    for (const LeafValue& lf : leaves) {
        int scale = lf.exponent - min_exponent;
        out.assignment[static_cast<std::size_t>(lf.index)] = mul_pow_pi(lf.value, scale);
        // lf.value is a product of units, so the term valuation is exact.
        int term_v = valuation(form.coefficients[static_cast<std::size_t>(lf.index)]) +
                     kFormDegree * scale;
        if (term_v < min_term) {
            min_term = term_v;
            out.anchor_index = lf.index;
        }
    }

    out.sum = evaluate(form, out.assignment);
    if (out.sum.is_exact_zero()) {
        out.gap = kInfiniteValuation;
        out.gap_exact = true;
    } else {
        ValuationBound vb = valuation_bound(out.sum);
        out.gap = vb.v - min_term;
        out.gap_exact = vb.is_exact;
    }
    return out;
}

}  // namespace padform

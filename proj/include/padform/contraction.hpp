#pragma once

#include <vector>

#include "padform/form.hpp"
#include "padform/moves.hpp"
#include "padform/sixth_power.hpp"

namespace padform {

// Provenance tree node.  Leaves carry a form variable; contraction
// nodes combine two children with unit multipliers (alpha, beta) so
// that coefficient = alpha^6 * left + beta^6 * right; rename nodes
// divide their child's coefficient by pi^6 (rename_power = 1) and the
// eventual leaf assignments pick up a compensating power of pi.
//
// slack invariant: slack = level - min over anchor leaves of
// (leaf level - 6 * renames below), i.e. contraction nodes have
// slack = delta + max(child slacks) and renames preserve slack (the
// coefficient and the minimal term move down together).
struct VarNode {
    Element coefficient;
    int level = 0;           // absolute; -1 when the coefficient is zero/unmeasurable
    int pi_coefficient = 0;  // c1 digit of the unit part
    int slack = 0;
    int rename_power = 0;    // 1 on rename nodes
    int left = -1;           // child ids; right < 0 && left >= 0 marks a rename node
    int right = -1;
    Element alpha;  // multiplier applied to the left child's variable
    Element beta;   // multiplier applied to the right child's variable
    int leaf_index = -1;

    bool is_leaf() const { return leaf_index >= 0; }
    bool is_rename() const { return left >= 0 && right < 0; }
};

struct RealizedMove {
    MoveKind kind = MoveKind::d;
    int inputs[3] = {-1, -1, -1};  // consumed node ids (t: the consumed pair)
    int output = -1;
    int achieved_delta = 0;  // rename: -6
    bool delta_exact = true;
    int achieved_bit = 0;
    bool terminal = false;  // output slack >= kWinSlack (or exact zero)
    bool exact_zero = false;
};

// Node storage; ids are indices and never move.
class ContractionArena {
public:
    explicit ContractionArena(const DiagonalForm& form);

    const DiagonalForm& form() const { return form_; }
    const VarNode& node(int id) const { return nodes_.at(static_cast<std::size_t>(id)); }
    int size() const { return static_cast<int>(nodes_.size()); }
    // Leaf ids are 0..form.size()-1 in variable order.
    int leaf(std::size_t variable) const { return static_cast<int>(variable); }

    int add_node(VarNode n);

private:
    DiagonalForm form_;
    std::vector<VarNode> nodes_;
};

// Contract two different-pi-coefficient variables at the same level to
// exactly one level up, arranging the requested output pi-coefficient.
RealizedMove realize_d(ContractionArena& arena, int x, int y, int want_bit,
                       const SixthPowerTable& table);
// Same pi-coefficient, exactly two levels up (output bit not chosen).
RealizedMove realize_s2(ContractionArena& arena, int x, int y, const SixthPowerTable& table);
// Same pi-coefficient, at least three levels up.  Prefers an outcome
// with slack >= kWinSlack (immediate win); otherwise the smallest delta
// in {3,4} so the planner's adversary branch always applies.
RealizedMove realize_s3(ContractionArena& arena, int x, int y, const SixthPowerTable& table);
// Among three same-level same-pi-coefficient variables, contracts some
// pair at least four levels up; the search picks the pair.
RealizedMove realize_t(ContractionArena& arena, int x, int y, int z,
                       const SixthPowerTable& table);
// pi^r x^6 = pi^(r-6) (pi x)^6 for r >= 6: level -6, slack preserved.
RealizedMove rename_down(ContractionArena& arena, int x);

// Sets the root's variable to 1, propagates multipliers to the leaves,
// zeroes unused variables and scales projectively so the minimum
// valuation over used coordinates is 0.  Returns the anchor leaf (the
// variable of minimal term valuation) and gap = v(sum) - v(anchor term),
// which equals the root's slack.
struct Unwound {
    std::vector<Element> assignment;
    int anchor_index = -1;
    int gap = 0;          // kInfiniteValuation when the sum is exactly zero
    bool gap_exact = true;  // false when only a lower bound is measurable
    Element sum;
};
Unwound unwind_assignment(const ContractionArena& arena, int root, const DiagonalForm& form);

}  // namespace padform

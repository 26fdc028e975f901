#pragma once

#include <span>
#include <vector>

#include "padform/element.hpp"

namespace padform {

inline constexpr int kMaxFormVariables = 16;

// A diagonal sextic form a_1 x_1^6 + ... + a_s x_s^6 over one of the
// two fields.  After normalize() every coefficient has valuation in
// 0..5; variable_scales records the power of pi folded into each
// variable (pi^(6t) * u * x^6 = u' * (pi^t x)^6 with u' at level
// v mod 6), so solubility is preserved and certificates map back.
struct DiagonalForm {
    FieldTag field = FieldTag::gaussian;
    std::vector<Element> coefficients;
    std::vector<int> variable_scales;  // per-variable pi power from normalization
    bool normalized = false;

    std::size_t size() const { return coefficients.size(); }
};

// Validates 1..16 nonzero coefficients of the given field.
DiagonalForm make_form(FieldTag field, std::vector<Element> coefficients);

DiagonalForm normalize(const DiagonalForm& form);

// Exact sum a_i x_i^6 at the surviving precision.
Element evaluate(const DiagonalForm& form, std::span<const Element> assignment);

}  // namespace padform

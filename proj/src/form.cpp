#include "padform/form.hpp"

#include <stdexcept>

namespace padform {

DiagonalForm make_form(FieldTag field, std::vector<Element> coefficients) {
    if (coefficients.empty() || coefficients.size() > kMaxFormVariables)
        throw std::invalid_argument("form: 1..16 coefficients required");
    for (const Element& c : coefficients) {
        if (c.field() != field) throw std::invalid_argument("form: coefficient field mismatch");
        if (c.is_exact_zero()) throw std::invalid_argument("form: zero coefficient");
    }
    DiagonalForm form;
    form.field = field;
    form.coefficients = std::move(coefficients);
    form.variable_scales.assign(form.coefficients.size(), 0);
    return form;
}

DiagonalForm normalize(const DiagonalForm& form) {
    DiagonalForm out;
    out.field = form.field;
    out.coefficients.reserve(form.size());
    out.variable_scales.reserve(form.size());
    for (std::size_t i = 0; i < form.size(); ++i) {
        UnitDecomposition ud = unit_decompose(form.coefficients[i]);
        out.coefficients.push_back(mul_pow_pi(ud.unit, ud.level));
        out.variable_scales.push_back(form.variable_scales[i] + ud.shift);
    }
    out.normalized = true;
    return out;
}

Element evaluate(const DiagonalForm& form, std::span<const Element> assignment) {
    if (assignment.size() != form.size())
        throw std::invalid_argument("evaluate: assignment length mismatch");
    Element sum = Element::zero(form.field);
    for (std::size_t i = 0; i < form.size(); ++i)
        sum = add(sum, mul(form.coefficients[i], pow_u(assignment[i], 6)));
    return sum;
}

}  // namespace padform

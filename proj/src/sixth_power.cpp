#include "padform/sixth_power.hpp"

#include <map>
#include <stdexcept>

namespace padform {

SixthPowerTable SixthPowerTable::build(FieldTag field, int modulus_exponent) {
    if (modulus_exponent < 1 || modulus_exponent > 16)
        throw std::invalid_argument("sixth_power_table: modulus exponent out of range (1..16)");
    const int p = modulus_exponent;
    SixthPowerTable table;
    table.field_ = field;
    table.modulus_exponent_ = p;

    // Units mod pi^P are exactly the digit vectors with c0 = 1.
    // std::map keeps the class order deterministic (by residue string).
    std::map<std::string, std::string> seen;
    const std::uint32_t unit_count = 1u << (p - 1);
    for (std::uint32_t bits = 0; bits < unit_count; ++bits) {
        std::string digits(static_cast<std::size_t>(p), '0');
        digits[0] = '1';
        for (int i = 1; i < p; ++i)
            if (bits & (1u << (i - 1))) digits[static_cast<std::size_t>(i)] = '1';
        Element u = from_pi_digits(digits, field);
        std::string residue = pi_digits(pow_u(u, 6), p);
        seen.emplace(residue, digits);
    }
    for (auto& [residue, witness] : seen) {
        table.classes_.push_back({residue, witness});
        Element w = from_pi_digits(witness, field);
        table.witnesses_.push_back(w);
        table.sixths_.push_back(pow_u(w, 6));
    }
    return table;
}

SixthRootResult sixth_root(const Element& d, const Element& seed, int target_precision) {
    if (target_precision < 1)
        throw std::invalid_argument("sixth_root: target precision must be positive");
    {
        ValuationBound vd = valuation_bound(d);
        if (!vd.is_exact || vd.v != 0)
            throw PreconditionViolated("sixth_root: d must be a unit");
        ValuationBound vs = valuation_bound(seed);
        if (!vs.is_exact || vs.v != 0)
            throw PreconditionViolated("sixth_root: seed must be a unit");
    }

    Element x = seed;
    Element g = sub(pow_u(x, 6), d);
    ValuationBound vg = valuation_bound(g);
    if (vg.is_exact && vg.v < 5)
        throw PreconditionViolated("sixth_root: v(seed^6 - d) < 5", vg.v);

    SixthRootResult result;
    result.residual_valuations.push_back(vg.v);
    const Element six = Element::from_integers(6, 0, d.field());
    int iterations = 0;
    while (!valuation_at_least(g, target_precision)) {
        if (++iterations > 64)
            throw PrecisionExhausted("sixth_root: iteration budget exceeded");
        Element correction = divide(g, mul(six, pow_u(x, 5)));
        x = sub(x, correction);
        g = sub(pow_u(x, 6), d);
        ValuationBound v = valuation_bound(g);
        if (v.is_exact && v.v <= result.residual_valuations.back())
            throw PrecisionExhausted("sixth_root: residual stopped improving");
        result.residual_valuations.push_back(v.v);
    }
    result.root = x;
    return result;
}

}  // namespace padform

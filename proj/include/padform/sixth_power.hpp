#pragma once

#include <string>
#include <vector>

#include "padform/element.hpp"

namespace padform {

// The set of sixth powers of units modulo pi^P, one witness per class.
// Finite carrier over which contraction realizations are searched:
// contracting a*x^6 + b*y^6 with unit substitutions x = alpha*T,
// y = beta*T only ever needs alpha^6, beta^6 up to pi^P.
//
// Every class residue is congruent to 1 mod pi^2 (the binomial terms of
// (1 + z)^6 all have valuation >= 2), so sixth powers never carry a
// pi-coefficient.
class SixthPowerTable {
public:
    struct Entry {
        std::string residue;  // u^6 mod pi^P, little-endian pi-digit string of length P
        std::string witness;  // a unit u with witness^6 == residue mod pi^P
    };

    // Enumerates all 2^(P-1) unit residues mod pi^P in digit order and
    // collects their sixth powers.  P in 1..16.
    static SixthPowerTable build(FieldTag field, int modulus_exponent);

    FieldTag field() const { return field_; }
    int modulus_exponent() const { return modulus_exponent_; }
    const std::vector<Entry>& classes() const { return classes_; }
    std::size_t class_count() const { return classes_.size(); }

    // Witnesses materialized at full precision, parallel to classes().
    const std::vector<Element>& witnesses() const { return witnesses_; }
    // witness^6 at full precision, parallel to classes().
    const std::vector<Element>& witness_sixth_powers() const { return sixths_; }

private:
    FieldTag field_ = FieldTag::gaussian;
    int modulus_exponent_ = 0;
    std::vector<Entry> classes_;
    std::vector<Element> witnesses_;
    std::vector<Element> sixths_;
};

// Newton root extraction for x^6 = d at a unit seed.
// Preconditions: v(d) = 0, v(seed) = 0, v(seed^6 - d) >= 5
// (with g' = 6x^5 and v(6) = 2 that is v(g) > 2*v(g'), the Newton
// condition).  Produces x with v(x^6 - d) >= target_precision and
// x == seed mod pi^3.  The residual valuation at each step is recorded;
// it satisfies v_{k+1} >= 2*v_k - 4 and is strictly increasing.
struct SixthRootResult {
    Element root;
    std::vector<int> residual_valuations;
};
SixthRootResult sixth_root(const Element& d, const Element& seed, int target_precision);

}  // namespace padform

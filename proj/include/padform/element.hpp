#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "padform/errors.hpp"
#include "padform/field.hpp"

namespace padform {

// Sentinel valuation of an exact zero.
inline constexpr int kInfiniteValuation = 1 << 28;

// An element a + b*theta of the ring of integers O = Z_2[theta], with
// both components truncated 2-adic integers.
//
// Components are stored mod 2^64.  `prec2` is the number of valid
// 2-adic digits per component; an element is known mod pi^(2*prec2).
// When `exact` is set the components are true int64 values (two's
// complement) and the element is known completely; exact implies
// prec2 == 64.  Operations record the tightest surviving precision and
// never silently increase it; division by pi (or by 2) consumes one
// 2-adic digit per component unless the result stays exact.
class Element {
public:
    Element() = default;

    // Raw constructor used by serialization; components are masked to prec2.
    static Element from_raw(std::uint64_t a, std::uint64_t b, FieldTag field, int prec2,
                            bool exact);
    // From machine integers (always exact).
    static Element from_integers(std::int64_t a, std::int64_t b, FieldTag field);

    static Element zero(FieldTag field) { return from_integers(0, 0, field); }
    static Element one(FieldTag field) { return from_integers(1, 0, field); }
    static Element theta(FieldTag field) { return from_integers(0, 1, field); }
    // pi = 1 + theta in both fields.
    static Element uniformizer(FieldTag field) { return from_integers(1, 1, field); }

    std::uint64_t a() const { return a_; }
    std::uint64_t b() const { return b_; }
    FieldTag field() const { return field_; }
    int prec2() const { return prec2_; }
    int pi_precision() const { return 2 * prec2_; }
    bool is_exact() const { return exact_; }
    bool is_exact_zero() const { return exact_ && a_ == 0 && b_ == 0; }

    bool operator==(const Element&) const = default;

private:
    std::uint64_t a_ = 0;
    std::uint64_t b_ = 0;
    FieldTag field_ = FieldTag::gaussian;
    std::uint8_t prec2_ = 64;
    bool exact_ = true;
};

// make_element: parse decimal integer strings (optionally negative) into
// an element truncated to at least the requested precision (pi-digits).
// Throws std::invalid_argument on malformed strings or precision < 1.
Element make_element(std::string_view a, std::string_view b, FieldTag field, int pi_precision);

Element add(const Element& x, const Element& y);
Element sub(const Element& x, const Element& y);
Element neg(const Element& x);
Element mul(const Element& x, const Element& y);
Element pow_u(const Element& x, unsigned n);

inline Element operator+(const Element& x, const Element& y) { return add(x, y); }
inline Element operator-(const Element& x, const Element& y) { return sub(x, y); }
inline Element operator-(const Element& x) { return neg(x); }
inline Element operator*(const Element& x, const Element& y) { return mul(x, y); }

// Result of measuring a valuation: either the exact value (is_exact),
// or only the lower bound `v` (element indistinguishable from zero at
// the current precision).
struct ValuationBound {
    int v;
    bool is_exact;
};
ValuationBound valuation_bound(const Element& x);

// Exact pi-adic valuation.  Returns kInfiniteValuation for an exact
// zero; throws PrecisionExhausted when the element is congruent to zero
// at full precision but not known to be zero.
int valuation(const Element& x);

// True iff v(x) >= t is certain at the current precision.
bool valuation_at_least(const Element& x, int t);

// x / pi^k (exact division; requires v(x) >= k).
Element div_pow_pi(const Element& x, int k);
// x * pi^k.
Element mul_pow_pi(const Element& x, int k);
// Inverse of a unit (v = 0), computed as conj(x) / norm(x) with the
// exact 2-adic inverse of the odd norm.
Element invert_unit(const Element& x);
// x / y for v(y) <= v(x), y != 0.
Element divide(const Element& x, const Element& y);

// v(x - y) >= k, i.e. x and y agree on the first k pi-digits.
bool congruent_mod_pi(const Element& x, const Element& y, int k);

// pi^v * unit decomposition of a nonzero element.
struct UnitDecomposition {
    int valuation;       // pi-adic valuation
    Element unit;        // x / pi^valuation, v = 0, first digit 1
    int level;           // valuation mod 6
    int shift;           // valuation div 6
    int pi_coefficient;  // c1 digit of the unit
};
UnitDecomposition unit_decompose(const Element& x);

// c1 digit of a unit (its pi-coefficient).
int pi_coefficient_of_unit(const Element& u);

// Greedy digit expansion x = c0 + c1*pi + c2*pi^2 + ..., c_i in {0,1}.
// Returns `count` digits, least significant first, as a '0'/'1' string.
std::string pi_digits(const Element& x, int count);

// Sum c_i pi^i for a little-endian bit string.
Element from_pi_digits(std::string_view digits, FieldTag field);

}  // namespace padform

#include "doctest.h"

#include <random>

#include "padform/element.hpp"
#include "support.hpp"

using namespace padform;
using padform::testing::Rng;

namespace {
const FieldTag kFields[2] = {FieldTag::gaussian, FieldTag::m5};
}

TEST_CASE("make_element basics") {
    Element one = make_element("1", "0", FieldTag::gaussian, 16);
    CHECK(valuation(one) == 0);

    Element pi = make_element("1", "1", FieldTag::gaussian, 16);
    CHECK(valuation(pi) == 1);
    CHECK(pi == Element::uniformizer(FieldTag::gaussian));

    // theta has norm 5 over Q_2(sqrt(-5)), hence is a unit.
    Element th = make_element("0", "1", FieldTag::m5, 16);
    CHECK(valuation(th) == 0);

    CHECK_THROWS_AS(make_element("", "0", FieldTag::gaussian, 16), std::invalid_argument);
    CHECK_THROWS_AS(make_element("12x", "0", FieldTag::gaussian, 16), std::invalid_argument);
    CHECK_THROWS_AS(make_element("1", "0", FieldTag::gaussian, 0), std::invalid_argument);

    // Negative and oversized strings still land on the right residue.
    Element minus_one = make_element("-1", "0", FieldTag::gaussian, 16);
    CHECK(valuation(add(minus_one, one)) == kInfiniteValuation);
    Element big = make_element("18446744073709551617", "0", FieldTag::gaussian, 16);  // 2^64+1
    CHECK(big.a() == 1);
    CHECK_FALSE(big.is_exact());
}

TEST_CASE("ring arithmetic examples") {
    const FieldTag g = FieldTag::gaussian;
    // (1+i)^2 = 2i
    Element sq = mul(Element::uniformizer(g), Element::uniformizer(g));
    CHECK(sq == Element::from_integers(0, 2, g));

    // additive inverse cancels exactly
    Element x = Element::from_integers(371, -25, g);
    CHECK(valuation(add(x, neg(x))) == kInfiniteValuation);

    // (1+theta)(1-theta) = 1 - theta^2 = 6 over Q_2(sqrt(-5))
    Element six = mul(Element::from_integers(1, 1, FieldTag::m5),
                      Element::from_integers(1, -1, FieldTag::m5));
    CHECK(six == Element::from_integers(6, 0, FieldTag::m5));

    CHECK_THROWS_AS(add(Element::one(FieldTag::gaussian), Element::one(FieldTag::m5)),
                    std::invalid_argument);
}

TEST_CASE("valuation examples") {
    for (FieldTag f : kFields) CHECK(valuation(Element::from_integers(2, 0, f)) == 2);
    CHECK(valuation(Element::from_integers(3, 1, FieldTag::gaussian)) == 1);
    CHECK(valuation(Element::zero(FieldTag::m5)) == kInfiniteValuation);

    // Zero to full precision without an exactness claim fails loudly.
    Element fuzzy = Element::from_raw(0, 0, FieldTag::gaussian, 8, false);
    CHECK_THROWS_AS(valuation(fuzzy), PrecisionExhausted);
    CHECK(valuation_at_least(fuzzy, 16));
    CHECK_FALSE(valuation_at_least(fuzzy, 17));
}

TEST_CASE("valuation properties: multiplicativity, ultrametric, norm consistency") {
    Rng rng(0x9e3779b97f4a7c15ull);
    for (FieldTag f : kFields) {
        for (int iter = 0; iter < 1000; ++iter) {
            Element x = padform::testing::random_exact_element(rng, f);
            Element y = padform::testing::random_exact_element(rng, f);
            int vx = valuation(x);
            int vy = valuation(y);
            CHECK(valuation(mul(x, y)) == vx + vy);

            Element s = add(x, y);
            int vs = s.is_exact_zero() ? kInfiniteValuation : valuation(s);
            CHECK(vs >= std::min(vx, vy));
            if (vx != vy) CHECK(vs == std::min(vx, vy));

            CHECK(vx == padform::testing::norm_valuation_oracle(x));
        }
    }
}

TEST_CASE("unit decomposition") {
    const FieldTag g = FieldTag::gaussian;
    Element pi3 = mul_pow_pi(Element::one(g), 3);
    UnitDecomposition ud = unit_decompose(pi3);
    CHECK(ud.valuation == 3);
    CHECK(ud.level == 3);
    CHECK(ud.shift == 0);
    CHECK(ud.pi_coefficient == 0);

    // theta = 1 + pi + pi^2 + ... so its c1 digit is 1
    UnitDecomposition th = unit_decompose(Element::theta(g));
    CHECK(th.valuation == 0);
    CHECK(th.level == 0);
    CHECK(th.pi_coefficient == 1);

    // 3 = 1 + 2 and v(2) = 2, so c1 = 0
    UnitDecomposition three = unit_decompose(Element::from_integers(3, 0, g));
    CHECK(three.valuation == 0);
    CHECK(three.pi_coefficient == 0);

    Element pi8 = mul_pow_pi(Element::theta(g), 8);
    UnitDecomposition big = unit_decompose(pi8);
    CHECK(big.valuation == 8);
    CHECK(big.level == 2);
    CHECK(big.shift == 1);

    CHECK_THROWS_AS(unit_decompose(Element::zero(g)), std::invalid_argument);
    CHECK_THROWS_AS(unit_decompose(Element::from_raw(0, 0, g, 8, false)), PrecisionExhausted);
}

TEST_CASE("pi digit expansion") {
    const FieldTag g = FieldTag::gaussian;
    CHECK(pi_digits(Element::one(g), 8) == "10000000");

    // (theta - 1)/pi = theta: the expansion of theta is all ones.
    CHECK(pi_digits(Element::theta(g), 12) == "111111111111");

    // 2 = pi^2 + pi^3 + pi^5 + pi^6 + pi^7 + ...
    Element two = Element::from_integers(2, 0, g);
    CHECK(pi_digits(two, 12) == "001101111111");
    // partial-sum cross-check: v(2 - (pi^2 + pi^3 + pi^5)) = 6
    Element partial = from_pi_digits("001101", g);
    CHECK(valuation(sub(two, partial)) == 6);

    CHECK(from_pi_digits("1", g) == Element::one(g));
    CHECK(from_pi_digits("01", g) == Element::uniformizer(g));
    CHECK(congruent_mod_pi(from_pi_digits("001101111111", g), two, 12));

    CHECK_THROWS_AS(from_pi_digits("", g), std::invalid_argument);
    CHECK_THROWS_AS(from_pi_digits("0120", g), std::invalid_argument);
    CHECK_THROWS_AS(pi_digits(Element::from_raw(1, 0, g, 8, false), 9), PrecisionExhausted);
}

TEST_CASE("digit round-trip") {
    Rng rng(42);
    for (FieldTag f : kFields) {
        for (int iter = 0; iter < 400; ++iter) {
            Element x = padform::testing::random_exact_element(rng, f);
            int n = 1 + static_cast<int>(rng() % 24);
            Element back = from_pi_digits(pi_digits(x, n), f);
            CHECK(congruent_mod_pi(back, x, n));
        }
    }
}

TEST_CASE("division and inversion") {
    Rng rng(7);
    for (FieldTag f : kFields) {
        for (int iter = 0; iter < 200; ++iter) {
            Element x = padform::testing::random_exact_element(rng, f);
            int k = static_cast<int>(rng() % 6);
            Element shifted = mul_pow_pi(x, k);
            Element back = div_pow_pi(shifted, k);
            CHECK(congruent_mod_pi(back, x, 40));

            UnitDecomposition ud = unit_decompose(x);
            Element inv = invert_unit(ud.unit);
            CHECK(congruent_mod_pi(mul(inv, ud.unit), Element::one(f), 40));

            Element q = divide(shifted, x);
            CHECK(congruent_mod_pi(q, mul_pow_pi(Element::one(f), k), 40));
        }
    }
    CHECK_THROWS_AS(div_pow_pi(Element::one(FieldTag::gaussian), 1), std::invalid_argument);
    CHECK_THROWS_AS(invert_unit(Element::from_integers(2, 0, FieldTag::m5)),
                    std::invalid_argument);
}

TEST_CASE("precision ledger") {
    const FieldTag f = FieldTag::m5;
    // 3 + theta is divisible by pi but the quotient leaves Z[theta]:
    // the division costs one 2-adic digit and drops exactness.
    Element x = Element::from_integers(3, 1, f);
    CHECK(valuation(x) == 1);
    Element q = div_pow_pi(x, 1);
    CHECK_FALSE(q.is_exact());
    CHECK(q.prec2() == 63);
    CHECK(congruent_mod_pi(mul_pow_pi(q, 1), x, 100));

    // Precision never increases through arithmetic.
    Element low = Element::from_raw(5, 3, f, 10, false);
    CHECK(add(low, Element::one(f)).prec2() == 10);
    CHECK(mul(low, Element::theta(f)).prec2() == 10);
}

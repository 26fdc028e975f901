// Exact arithmetic in O = Z_2[theta] for theta^2 = -1 and theta^2 = -5.
//
// Components are 2-adic integers truncated mod 2^64.  The pi-adic
// valuation is computed without precision loss from the component
// structure: with j = min(v_2(a), v_2(b)) and y = x / 2^j, either one
// component of y is odd and the other even (y is a unit) or both are
// odd (then norm(y) = a^2 - m*b^2 == 2 mod 8, so v(y) = 1 exactly).
// Hence v(x) = 2*j + (0 or 1), measurable up to 2*prec2 - 1.
//
// Division by pi uses pi^(-1) = (1 - theta)/(1 - m): multiply by the
// conjugate, halve (both components are even when pi | x), and for
// theta^2 = -5 multiply by the exact 2-adic inverse of 3.  Each such
// division consumes one 2-adic digit per component unless the element
// is exact and the quotient stays integral.

#include "padform/element.hpp"

#include <bit>
#include <limits>
#include <stdexcept>

namespace padform {

namespace {

constexpr std::uint64_t kInv3 = 0xAAAAAAAAAAAAAAABull;  // 3 * kInv3 == 1 mod 2^64

std::uint64_t mask_for(int prec2) {
    return prec2 >= 64 ? ~0ull : ((1ull << prec2) - 1);
}

bool fits_i64(__int128 v) {
    return v >= std::numeric_limits<std::int64_t>::min() &&
           v <= std::numeric_limits<std::int64_t>::max();
}

Element make_inexact(std::uint64_t a, std::uint64_t b, FieldTag f, int prec2) {
    if (prec2 <= 0) throw PrecisionExhausted("element: no valid digits left");
    return Element::from_raw(a, b, f, prec2, false);
}

void check_same_field(const Element& x, const Element& y) {
    if (x.field() != y.field())
        throw std::invalid_argument("element: field mismatch");
}

}  // namespace

Element Element::from_raw(std::uint64_t a, std::uint64_t b, FieldTag field, int prec2,
                          bool exact) {
    if (exact) {
        Element e;
        e.a_ = a;
        e.b_ = b;
        e.field_ = field;
        e.prec2_ = 64;
        e.exact_ = true;
        return e;
    }
    if (prec2 < 1 || prec2 > 64)
        throw std::invalid_argument("element: precision out of range");
    Element e;
    e.a_ = a & mask_for(prec2);
    e.b_ = b & mask_for(prec2);
    e.field_ = field;
    e.prec2_ = static_cast<std::uint8_t>(prec2);
    e.exact_ = false;
    return e;
}

Element Element::from_integers(std::int64_t a, std::int64_t b, FieldTag field) {
    return from_raw(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b), field, 64,
                    true);
}

namespace {

struct ParsedInt {
    std::uint64_t residue;
    bool exact;
};

ParsedInt parse_decimal(std::string_view s) {
    std::size_t i = 0;
    bool negative = false;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
        negative = s[i] == '-';
        ++i;
    }
    if (i >= s.size()) throw std::invalid_argument("malformed integer string");
    std::uint64_t r = 0;
    __int128 v = 0;
    bool exact = true;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c < '0' || c > '9') throw std::invalid_argument("malformed integer string");
        r = r * 10 + static_cast<std::uint64_t>(c - '0');
        if (exact) {
            v = v * 10 + (c - '0');
            if (v > std::numeric_limits<std::int64_t>::max()) exact = false;
        }
    }
    if (negative) {
        r = ~r + 1;
        v = -v;
    }
    return {r, exact};
}

}  // namespace

Element make_element(std::string_view a, std::string_view b, FieldTag field, int pi_precision) {
    if (pi_precision < 1 || pi_precision > 128)
        throw std::invalid_argument("make_element: precision out of range (1..128)");
    ParsedInt pa = parse_decimal(a);
    ParsedInt pb = parse_decimal(b);
    return Element::from_raw(pa.residue, pb.residue, field, 64, pa.exact && pb.exact);
}

Element add(const Element& x, const Element& y) {
    check_same_field(x, y);
    if (x.is_exact() && y.is_exact()) {
        __int128 ra = static_cast<__int128>(static_cast<std::int64_t>(x.a())) +
                      static_cast<std::int64_t>(y.a());
        __int128 rb = static_cast<__int128>(static_cast<std::int64_t>(x.b())) +
                      static_cast<std::int64_t>(y.b());
        if (fits_i64(ra) && fits_i64(rb))
            return Element::from_integers(static_cast<std::int64_t>(ra),
                                          static_cast<std::int64_t>(rb), x.field());
    }
    int p = std::min(x.prec2(), y.prec2());
    return make_inexact(x.a() + y.a(), x.b() + y.b(), x.field(), p);
}

Element sub(const Element& x, const Element& y) {
    check_same_field(x, y);
    if (x.is_exact() && y.is_exact()) {
        __int128 ra = static_cast<__int128>(static_cast<std::int64_t>(x.a())) -
                      static_cast<std::int64_t>(y.a());
        __int128 rb = static_cast<__int128>(static_cast<std::int64_t>(x.b())) -
                      static_cast<std::int64_t>(y.b());
        if (fits_i64(ra) && fits_i64(rb))
            return Element::from_integers(static_cast<std::int64_t>(ra),
                                          static_cast<std::int64_t>(rb), x.field());
    }
    int p = std::min(x.prec2(), y.prec2());
    return make_inexact(x.a() - y.a(), x.b() - y.b(), x.field(), p);
}

Element neg(const Element& x) {
    return sub(Element::zero(x.field()), x);
}

Element mul(const Element& x, const Element& y) {
    check_same_field(x, y);
    const int m = field_m(x.field());
    if (x.is_exact() && y.is_exact()) {
        __int128 xa = static_cast<std::int64_t>(x.a());
        __int128 xb = static_cast<std::int64_t>(x.b());
        __int128 ya = static_cast<std::int64_t>(y.a());
        __int128 yb = static_cast<std::int64_t>(y.b());
        __int128 ra = xa * ya + m * (xb * yb);
        __int128 rb = xa * yb + xb * ya;
        if (fits_i64(ra) && fits_i64(rb))
            return Element::from_integers(static_cast<std::int64_t>(ra),
                                          static_cast<std::int64_t>(rb), x.field());
    }
    std::uint64_t ra =
        x.a() * y.a() + static_cast<std::uint64_t>(static_cast<std::int64_t>(m)) * (x.b() * y.b());
    std::uint64_t rb = x.a() * y.b() + x.b() * y.a();
    int p = std::min(x.prec2(), y.prec2());
    return make_inexact(ra, rb, x.field(), p);
}

Element pow_u(const Element& x, unsigned n) {
    Element result = Element::one(x.field());
    Element base = x;
    while (n > 0) {
        if (n & 1) result = mul(result, base);
        base = mul(base, base);
        n >>= 1;
    }
    return result;
}

ValuationBound valuation_bound(const Element& x) {
    if (x.is_exact() && x.a() == 0 && x.b() == 0) return {kInfiniteValuation, true};
    std::uint64_t a = x.a();
    std::uint64_t b = x.b();
    if (a == 0 && b == 0) return {2 * x.prec2(), false};
    int ja = a ? std::countr_zero(a) : 128;
    int jb = b ? std::countr_zero(b) : 128;
    int j = std::min(ja, jb);
    int bit_a = static_cast<int>((a >> j) & 1);
    int bit_b = static_cast<int>((b >> j) & 1);
    // (bit_a + bit_b) odd: one component of x/2^j is a unit, v = 2j.
    // Both odd: norm == 2 mod 8, v = 2j + 1 exactly.
    int v = 2 * j + (((bit_a + bit_b) & 1) ? 0 : 1);
    if (!x.is_exact() && v >= 2 * x.prec2()) return {2 * x.prec2(), false};
    return {v, true};
}

int valuation(const Element& x) {
    ValuationBound vb = valuation_bound(x);
    if (!vb.is_exact)
        throw PrecisionExhausted("valuation: element is zero to full precision");
    return vb.v;
}

bool valuation_at_least(const Element& x, int t) {
    ValuationBound vb = valuation_bound(x);
    return vb.v >= t;
}

namespace {

// x / 2; requires both components even.
Element div_two(const Element& x) {
    if (x.is_exact())
        return Element::from_integers(static_cast<std::int64_t>(x.a()) / 2,
                                      static_cast<std::int64_t>(x.b()) / 2, x.field());
    return make_inexact(x.a() >> 1, x.b() >> 1, x.field(), x.prec2() - 1);
}

// x / pi; requires v(x) >= 1.
Element div_pi_once(const Element& x) {
    const int m = field_m(x.field());
    const int dm = 1 - m;  // norm of pi: 2 or 6
    if (x.is_exact()) {
        __int128 a = static_cast<std::int64_t>(x.a());
        __int128 b = static_cast<std::int64_t>(x.b());
        __int128 ya = a - static_cast<__int128>(m) * b;
        __int128 yb = b - a;
        if (ya % dm == 0 && yb % dm == 0) {
            __int128 qa = ya / dm;
            __int128 qb = yb / dm;
            if (fits_i64(qa) && fits_i64(qb))
                return Element::from_integers(static_cast<std::int64_t>(qa),
                                              static_cast<std::int64_t>(qb), x.field());
        }
    }
    std::uint64_t ya =
        x.a() + static_cast<std::uint64_t>(static_cast<std::int64_t>(-m)) * x.b();
    std::uint64_t yb = x.b() - x.a();
    // v(x * (1 - theta)) >= 2, so both components are even.
    std::uint64_t qa = ya >> 1;
    std::uint64_t qb = yb >> 1;
    if (m == -5) {
        qa *= kInv3;
        qb *= kInv3;
    }
    return make_inexact(qa, qb, x.field(), x.prec2() - 1);
}

}  // namespace

Element div_pow_pi(const Element& x, int k) {
    if (k < 0) throw std::invalid_argument("div_pow_pi: negative exponent");
    if (!valuation_at_least(x, k))
        throw std::invalid_argument("div_pow_pi: element not divisible by pi^k");
    Element cur = x;
    // While the element stays exact, plain pi-divisions are free (the
    // quotient remains in Z[theta] or the step itself goes inexact).
    while (k > 0 && cur.is_exact()) {
        cur = div_pi_once(cur);
        --k;
    }
    if (k == 0) return cur;
    // Inexact route: pi^2 = 2u with u = theta (gaussian) or theta - 2
    // (m5), so halving t times costs t digits and the unit fix is free.
    int t = k / 2;
    if (t > 0) {
        for (int i = 0; i < t; ++i) cur = div_two(cur);
        const Element u = x.field() == FieldTag::gaussian
                              ? Element::from_integers(0, 1, x.field())
                              : Element::from_integers(-2, 1, x.field());
        cur = mul(cur, pow_u(invert_unit(u), static_cast<unsigned>(t)));
    }
    if (k & 1) cur = div_pi_once(cur);
    return cur;
}

Element mul_pow_pi(const Element& x, int k) {
    if (k < 0) throw std::invalid_argument("mul_pow_pi: negative exponent");
    return mul(x, pow_u(Element::uniformizer(x.field()), static_cast<unsigned>(k)));
}

Element invert_unit(const Element& x) {
    ValuationBound vb = valuation_bound(x);
    if (!vb.is_exact || vb.v != 0)
        throw std::invalid_argument("invert_unit: element is not a unit");
    const int m = field_m(x.field());
    std::uint64_t n =
        x.a() * x.a() - static_cast<std::uint64_t>(static_cast<std::int64_t>(m)) * (x.b() * x.b());
    // Newton inverse of the odd norm; n*n == 1 mod 8 seeds three correct bits.
    std::uint64_t inv = n;
    for (int i = 0; i < 5; ++i) inv *= 2 - n * inv;
    std::uint64_t ca = x.a() * inv;
    std::uint64_t cb = (~x.b() + 1) * inv;
    return make_inexact(ca, cb, x.field(), x.prec2());
}

Element divide(const Element& x, const Element& y) {
    UnitDecomposition ud = unit_decompose(y);
    Element q = div_pow_pi(x, ud.valuation);
    return mul(q, invert_unit(ud.unit));
}

bool congruent_mod_pi(const Element& x, const Element& y, int k) {
    return valuation_at_least(sub(x, y), k);
}

UnitDecomposition unit_decompose(const Element& x) {
    ValuationBound vb = valuation_bound(x);
    if (vb.is_exact && vb.v == kInfiniteValuation)
        throw std::invalid_argument("unit_decompose: zero input");
    if (!vb.is_exact)
        throw PrecisionExhausted("unit_decompose: element is zero to full precision");
    Element unit = div_pow_pi(x, vb.v);
    UnitDecomposition ud;
    ud.valuation = vb.v;
    ud.unit = unit;
    ud.level = vb.v % kFormDegree;
    ud.shift = vb.v / kFormDegree;
    ud.pi_coefficient = pi_coefficient_of_unit(unit);
    return ud;
}

int pi_coefficient_of_unit(const Element& u) {
    Element d = sub(u, Element::one(u.field()));
    if (d.is_exact_zero()) return 0;
    Element e = div_pi_once(d);
    return static_cast<int>((e.a() + e.b()) & 1);
}

std::string pi_digits(const Element& x, int count) {
    if (count < 1) throw std::invalid_argument("pi_digits: count must be positive");
    int budget = x.is_exact() ? 64 : x.prec2();
    if (count > budget)
        throw PrecisionExhausted("pi_digits: requested more digits than the precision budget");
    std::string out;
    out.reserve(static_cast<std::size_t>(count));
    Element cur = x;
    for (int i = 0; i < count; ++i) {
        int c0 = static_cast<int>((cur.a() + cur.b()) & 1);
        out += static_cast<char>('0' + c0);
        if (i + 1 == count) break;
        if (c0) cur = sub(cur, Element::one(cur.field()));
        if (cur.is_exact_zero()) {
            out.append(static_cast<std::size_t>(count - i - 1), '0');
            break;
        }
        cur = div_pi_once(cur);
    }
    return out;
}

Element from_pi_digits(std::string_view digits, FieldTag field) {
    if (digits.empty()) throw std::invalid_argument("from_pi_digits: empty digit string");
    Element acc = Element::zero(field);
    const Element pi = Element::uniformizer(field);
    const Element one = Element::one(field);
    for (std::size_t i = digits.size(); i-- > 0;) {
        char c = digits[i];
        if (c != '0' && c != '1')
            throw std::invalid_argument("from_pi_digits: digits must be 0 or 1");
        acc = mul(acc, pi);
        if (c == '1') acc = add(acc, one);
    }
    return acc;
}

}  // namespace padform

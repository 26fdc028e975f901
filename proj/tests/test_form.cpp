#include "doctest.h"

#include "padform/certificates.hpp"
#include "padform/form.hpp"
#include "support.hpp"

using namespace padform;
using padform::testing::Rng;

namespace {

DiagonalForm witness_form(FieldTag f) {
    std::vector<Element> coeffs;
    for (int i = 0; i < 6; ++i) coeffs.push_back(mul_pow_pi(Element::one(f), i));
    return make_form(f, std::move(coeffs));
}

}  // namespace

TEST_CASE("normalize examples") {
    const FieldTag g = FieldTag::gaussian;
    DiagonalForm f = make_form(
        g, {Element::one(g), mul_pow_pi(Element::one(g), 7)});
    DiagonalForm n = normalize(f);
    CHECK(n.coefficients[0] == Element::one(g));
    CHECK(congruent_mod_pi(n.coefficients[1], Element::uniformizer(g), 60));
    CHECK(n.variable_scales == std::vector<int>{0, 1});

    // x0^6 + pi x1^6 + ... + pi^5 x5^6 is already normalized
    DiagonalForm w = witness_form(g);
    DiagonalForm wn = normalize(w);
    for (std::size_t i = 0; i < w.size(); ++i) {
        CHECK(wn.coefficients[i] == w.coefficients[i]);
        CHECK(wn.variable_scales[i] == 0);
    }

    // 2*theta = pi^2 exactly: level-2 coefficient with unit part 1
    DiagonalForm t = normalize(make_form(g, {Element::from_integers(0, 2, g)}));
    UnitDecomposition ud = unit_decompose(t.coefficients[0]);
    CHECK(ud.valuation == 2);
    CHECK(congruent_mod_pi(ud.unit, Element::one(g), 60));

    CHECK_THROWS_AS(make_form(g, {Element::zero(g)}), std::invalid_argument);
    CHECK_THROWS_AS(make_form(g, {}), std::invalid_argument);
}

TEST_CASE("evaluate examples") {
    const FieldTag g = FieldTag::gaussian;
    DiagonalForm f = make_form(g, {Element::one(g), Element::one(g)});
    std::vector<Element> zeros(2, Element::zero(g));
    CHECK(evaluate(f, zeros).is_exact_zero());

    DiagonalForm cancel =
        make_form(g, {Element::from_integers(3, 7, g), Element::from_integers(-3, -7, g)});
    std::vector<Element> ones(2, Element::one(g));
    CHECK(evaluate(cancel, ones).is_exact_zero());

    CHECK(valuation(evaluate(f, ones)) == 2);

    std::vector<Element> three(3, Element::one(g));
    CHECK_THROWS_AS(evaluate(f, three), std::invalid_argument);
}

TEST_CASE("normalize is idempotent and projectively sound") {
    Rng rng(99);
    for (FieldTag f : {FieldTag::gaussian, FieldTag::m5}) {
        for (int iter = 0; iter < 50; ++iter) {
            // mix plain coefficients with pi-shifted ones so scales appear
            std::vector<Element> coeffs;
            std::size_t s = 2 + rng() % 5;
            for (std::size_t i = 0; i < s; ++i) {
                Element c = padform::testing::random_coefficient(rng, f);
                coeffs.push_back(mul_pow_pi(c, static_cast<int>(rng() % 14)));
            }
            DiagonalForm form = make_form(f, coeffs);
            DiagonalForm norm = normalize(form);
            for (const Element& c : norm.coefficients) {
                int v = valuation(c);
                CHECK(v >= 0);
                CHECK(v <= 5);
            }
            DiagonalForm twice = normalize(norm);
            for (std::size_t i = 0; i < norm.size(); ++i) {
                CHECK(congruent_mod_pi(twice.coefficients[i], norm.coefficients[i], 40));
                CHECK(twice.variable_scales[i] == norm.variable_scales[i]);
            }

            // evaluate(original, x) == evaluate(normalized, pi^scale * x)
            std::vector<Element> x, scaled;
            for (std::size_t i = 0; i < s; ++i) {
                Element xi = padform::testing::random_exact_element(rng, f);
                x.push_back(xi);
                scaled.push_back(mul_pow_pi(xi, norm.variable_scales[i]));
            }
            Element lhs = evaluate(form, x);
            Element rhs = evaluate(norm, scaled);
            CHECK(congruent_mod_pi(lhs, rhs, 40));
        }
    }
}

TEST_CASE("verify_solution") {
    const FieldTag g = FieldTag::gaussian;
    DiagonalForm f =
        make_form(g, {Element::from_integers(5, 2, g), Element::from_integers(-5, -2, g)});

    SolutionCertificate cert;
    cert.field = g;
    cert.assignment = {Element::one(g), Element::one(g)};
    cert.unit_index = 0;
    cert.residual_valuation = 60;
    CHECK(verify_solution(f, cert, 60));

    // a pi-scaled assignment loses its unit coordinate until renormalized
    SolutionCertificate scaled = cert;
    scaled.assignment = {mul_pow_pi(Element::one(g), 2), mul_pow_pi(Element::one(g), 2)};
    CHECK(verify_solution_status(f, scaled, 60) == VerifyStatus::no_unit_coordinate);
    scaled.assignment = {div_pow_pi(scaled.assignment[0], 2), div_pow_pi(scaled.assignment[1], 2)};
    CHECK(verify_solution(f, scaled, 60));

    SolutionCertificate trivial = cert;
    trivial.assignment = {Element::zero(g), Element::zero(g)};
    CHECK(verify_solution_status(f, trivial, 40) == VerifyStatus::trivial_assignment);

    SolutionCertificate tampered = cert;
    tampered.assignment[1] = add(tampered.assignment[1], mul_pow_pi(Element::one(g), 3));
    CHECK(verify_solution_status(f, tampered, 40) == VerifyStatus::residual_too_small);

    SolutionCertificate wrong_len = cert;
    wrong_len.assignment.push_back(Element::one(g));
    CHECK(verify_solution_status(f, wrong_len, 40) == VerifyStatus::length_mismatch);
}

#include "doctest.h"

#include "padform/pipeline.hpp"
#include "support.hpp"

using namespace padform;
using padform::testing::Rng;

namespace {

const SixthPowerTable& table_for(FieldTag f) {
    static SixthPowerTable g = SixthPowerTable::build(FieldTag::gaussian, 8);
    static SixthPowerTable m = SixthPowerTable::build(FieldTag::m5, 8);
    return f == FieldTag::gaussian ? g : m;
}

GameSolver& shared_solver() {
    static GameSolver solver;
    return solver;
}

DiagonalForm witness_form(FieldTag f) {
    std::vector<Element> coeffs;
    for (int i = 0; i < 6; ++i) coeffs.push_back(mul_pow_pi(Element::one(f), i));
    return make_form(f, std::move(coeffs));
}

DiagonalForm all_ones(FieldTag f, std::size_t n = 7) {
    return make_form(f, std::vector<Element>(n, Element::one(f)));
}

}  // namespace

TEST_CASE("solve: all-ones seven-variable form") {
    for (FieldTag f : {FieldTag::gaussian, FieldTag::m5}) {
        DiagonalForm form = all_ones(f);
        SolutionCertificate cert = solve(form, shared_solver(), table_for(f));
        CHECK(cert.residual_valuation >= 48);
        CHECK(verify_solution(form, cert, 40));
        CHECK(cert.unit_index >= 0);
        CHECK_FALSE(cert.trace.empty());
    }
}

TEST_CASE("solve: exact cancellation short-circuit") {
    const FieldTag g = FieldTag::gaussian;
    std::vector<Element> coeffs = {Element::from_integers(7, 3, g),
                                   Element::from_integers(-7, -3, g)};
    for (int i = 0; i < 5; ++i) coeffs.push_back(Element::from_integers(1 + i, 0, g));
    DiagonalForm form = make_form(g, std::move(coeffs));
    SolutionCertificate cert = solve(form, shared_solver(), table_for(g));
    CHECK(cert.trace.empty());
    CHECK_FALSE(cert.hensel.applied);
    CHECK(evaluate(form, cert.assignment).is_exact_zero());
    CHECK(verify_solution(form, cert, 100));
}

TEST_CASE("solve: witness form has no strategy") {
    for (FieldTag f : {FieldTag::gaussian, FieldTag::m5})
        CHECK_THROWS_AS(solve(witness_form(f), shared_solver(), table_for(f)),
                        StrategyUnavailable);
}

TEST_CASE("solve: random seven-variable forms over both fields") {
    Rng rng(4242);
    for (FieldTag f : {FieldTag::gaussian, FieldTag::m5}) {
        for (int iter = 0; iter < 25; ++iter) {
            DiagonalForm form = padform::testing::random_form(rng, f, 7);
            SolutionCertificate cert = solve(form, shared_solver(), table_for(f));
            CHECK(verify_solution(form, cert, 40));
            CHECK(cert.residual_valuation >= 48);
        }
    }
}

TEST_CASE("certify_insoluble: the six-variable witness") {
    for (FieldTag f : {FieldTag::gaussian, FieldTag::m5}) {
        InsolubilityOutcome out = certify_insoluble(witness_form(f), 10);
        REQUIRE(out.certificate.has_value());
        CHECK(out.certificate->modulus_exponent <= 6);
        CHECK(out.certificate->classes_enumerated > 0);
    }
}

TEST_CASE("certify_insoluble: soluble and level-separated forms") {
    const FieldTag g = FieldTag::gaussian;
    // x^6 - y^6 is soluble: every modulus admits a combination
    DiagonalForm sol = make_form(g, {Element::one(g), neg(Element::one(g))});
    CHECK_FALSE(certify_insoluble(sol, 12).certificate.has_value());

    // x^6 + pi y^6: term valuations 6t vs 1+6t never meet
    DiagonalForm sep = make_form(g, {Element::one(g), Element::uniformizer(g)});
    InsolubilityOutcome out = certify_insoluble(sep, 10);
    REQUIRE(out.certificate.has_value());
    CHECK(out.certificate->modulus_exponent <= 4);

    CHECK_THROWS_AS(certify_insoluble(sol, 0), std::invalid_argument);
    CHECK_THROWS_AS(certify_insoluble(sol, 15), std::invalid_argument);
}

TEST_CASE("audit_lemmas at P=8") {
    for (FieldTag f : {FieldTag::gaussian, FieldTag::m5}) {
        AuditReport report = audit_lemmas(f, 8);
        CHECK(report.all_pass);
        CHECK(report.unit_classes == 128);
        CHECK(report.sixth_power_classes == 16);  // frozen enumeration constant
        REQUIRE(report.checks.size() == 4);
        for (const AuditCheck& c : report.checks) {
            CHECK(c.pass);
            CHECK(c.cases > 0);
            CHECK_FALSE(c.witnesses.empty());
        }
        // d quantifies over different-bit pairs, s2/s3 over same-bit pairs
        CHECK(report.checks[0].cases == 64 * 64);            // cross pairs
        CHECK(report.checks[1].cases == 2 * (64 * 65) / 2);  // same-bit pairs incl. equal
    }
    CHECK_THROWS_AS(audit_lemmas(FieldTag::gaussian, 1), std::invalid_argument);
}

TEST_CASE("batch_solve determinism across thread counts") {
    BatchSummary one = batch_solve(FieldTag::gaussian, 20, 99, 1, shared_solver(),
                                   table_for(FieldTag::gaussian));
    BatchSummary two = batch_solve(FieldTag::gaussian, 20, 99, 2, shared_solver(),
                                   table_for(FieldTag::gaussian));
    CHECK(one.verified == 20);
    CHECK(one.solved == two.solved);
    CHECK(one.verified == two.verified);
    CHECK(one.failures == two.failures);
    CHECK(one.min_residual == two.min_residual);
    CHECK(one.median_residual == two.median_residual);
    CHECK(one.max_residual == two.max_residual);
    for (int i = 0; i < 20; ++i) {
        CHECK(one.results[i].residual == two.results[i].residual);
        CHECK(one.results[i].verified == two.results[i].verified);
    }
    CHECK(one.min_residual >= 40);
}

TEST_CASE("solve and certify are mutually exclusive") {
    Rng rng(60601);
    int solved = 0, certified = 0;
    for (int iter = 0; iter < 60; ++iter) {
        FieldTag f = (rng() % 2) ? FieldTag::gaussian : FieldTag::m5;
        DiagonalForm form = padform::testing::random_form(rng, f, 6);
        bool has_solution = false;
        try {
            SolutionCertificate cert = solve(form, shared_solver(), table_for(f));
            has_solution = verify_solution(form, cert, 40);
        } catch (const StrategyUnavailable&) {
        }
        bool insoluble = certify_insoluble(form, 8).certificate.has_value();
        CHECK_FALSE((has_solution && insoluble));
        solved += has_solution ? 1 : 0;
        certified += insoluble ? 1 : 0;
    }
    // the sample should exercise both paths
    CHECK(solved > 0);
    CHECK(certified > 0);
}

#include "padform/certificates.hpp"

namespace padform {

const char* verify_status_name(VerifyStatus s) {
    switch (s) {
        case VerifyStatus::ok: return "ok";
        case VerifyStatus::length_mismatch: return "length_mismatch";
        case VerifyStatus::trivial_assignment: return "trivial_assignment";
        case VerifyStatus::no_unit_coordinate: return "no_unit_coordinate";
        case VerifyStatus::residual_too_small: return "residual_too_small";
        case VerifyStatus::precision_exhausted: return "precision_exhausted";
    }
    return "?";
}

VerifyStatus verify_solution_status(const DiagonalForm& form, const SolutionCertificate& cert,
                                    int demand) {
    if (cert.assignment.size() != form.size()) return VerifyStatus::length_mismatch;
    try {
        bool any_nonzero = false;
        bool any_unit = false;
        for (const Element& x : cert.assignment) {
            if (x.is_exact_zero()) continue;
            ValuationBound vb = valuation_bound(x);
            if (!vb.is_exact) continue;  // indistinguishable from zero: not a unit
            any_nonzero = true;
            if (vb.v == 0) any_unit = true;
        }
        if (!any_nonzero) return VerifyStatus::trivial_assignment;
        if (!any_unit) return VerifyStatus::no_unit_coordinate;
        Element sum = evaluate(form, cert.assignment);
        if (!valuation_at_least(sum, demand)) return VerifyStatus::residual_too_small;
        return VerifyStatus::ok;
    } catch (const PrecisionExhausted&) {
        return VerifyStatus::precision_exhausted;
    } catch (const std::invalid_argument&) {
        return VerifyStatus::length_mismatch;
    }
}

bool verify_solution(const DiagonalForm& form, const SolutionCertificate& cert, int demand) {
    return verify_solution_status(form, cert, demand) == VerifyStatus::ok;
}

}  // namespace padform

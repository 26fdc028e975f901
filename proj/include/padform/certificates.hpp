#pragma once

#include <string>
#include <vector>

#include "padform/contraction.hpp"
#include "padform/form.hpp"
#include "padform/moves.hpp"

namespace padform {

// One realized move, enough to replay the construction: which nodes
// were combined, with which unit multipliers, and what came out.
struct TraceRecord {
    MoveKind kind = MoveKind::d;
    std::vector<int> inputs;
    int output = -1;
    int level = -1;  // output level; -1 when the coefficient vanished
    int delta = 0;
    int bit = 0;
    int slack = 0;
    Element alpha;
    Element beta;
};

struct HenselRecord {
    bool applied = false;
    int anchor_index = -1;
    Element root;
    std::vector<int> residual_valuations;
};

struct SolutionCertificate {
    FieldTag field = FieldTag::gaussian;
    std::vector<Element> assignment;
    int unit_index = -1;         // index with minimal valuation (0 after scaling)
    int residual_valuation = 0;  // certified lower bound on v(sum)
    std::vector<TraceRecord> trace;
    HenselRecord hensel;
};

struct InsolubilityCertificate {
    FieldTag field = FieldTag::gaussian;
    int modulus_exponent = 0;        // no residue solution mod pi^M
    std::uint64_t classes_enumerated = 0;
    std::string conclusion = "no residue solution with a unit coordinate";
};

enum class VerifyStatus {
    ok,
    length_mismatch,
    trivial_assignment,
    no_unit_coordinate,
    residual_too_small,
    precision_exhausted,
};

const char* verify_status_name(VerifyStatus s);

// True iff the assignment is nontrivial, has a unit coordinate, and the
// form evaluates to valuation >= demand.  Never throws; failures come
// back as a reason code.
VerifyStatus verify_solution_status(const DiagonalForm& form, const SolutionCertificate& cert,
                                    int demand);
bool verify_solution(const DiagonalForm& form, const SolutionCertificate& cert, int demand);

}  // namespace padform

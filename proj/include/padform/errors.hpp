#pragma once

#include <stdexcept>
#include <string>

namespace padform {

// Raised when an operation would need more two-adic digits than the
// operands carry.  Operations fail loudly instead of returning garbage.
struct PrecisionExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised by sixth_root when the seed is not close enough to a root.
// Carries the observed valuation of seed^6 - d (or -1 if a different
// precondition failed).
struct PreconditionViolated : std::runtime_error {
    explicit PreconditionViolated(const std::string& msg, int observed_valuation = -1)
        : std::runtime_error(msg), observed(observed_valuation) {}
    int observed;
};

// A contraction realizer could not meet its level/bit contract over the
// sixth-power table.  The lemma audits prove this never fires at P = 8
// for the two supported fields.
struct RealizationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An exhaustive lemma audit found a violating residue-class pair.
struct AuditFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// solve() was asked for a form whose configuration is a game loss
// (only possible with fewer than seven variables).
struct StrategyUnavailable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace padform

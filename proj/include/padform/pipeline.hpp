#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "padform/certificates.hpp"
#include "padform/contraction.hpp"
#include "padform/game.hpp"
#include "padform/sixth_power.hpp"

namespace padform {

struct SolveOptions {
    int demand = 48;  // residual pi-digits the certificate must certify
};

// Plan-realize-lift: computes the abstract configuration, follows a
// winning strategy (realizing each move and feeding the observed
// adversary outcome back in), and on a terminal slack >= 5 unwinds the
// assignment and corrects the anchor coordinate by a sixth root.
// The returned certificate is verified against `form` before returning.
// Throws StrategyUnavailable when the configuration is a game loss
// (possible only for fewer than seven variables).
SolutionCertificate solve(const DiagonalForm& form, GameSolver& solver,
                          const SixthPowerTable& table, const SolveOptions& options = {});

// Residue enumeration: for even modulus exponents m <= max_modulus,
// checks whether sum a_i v_i == 0 mod pi^m is reachable with the v_i
// ranging over sixth-power value classes pi^(6t) * u^6 (plus zero) and
// at least one coordinate a unit.  Any nontrivial zero, projectively
// scaled to minimum valuation zero, reduces to such a combination at
// every m, so an m with no combination certifies insolubility.
struct InsolubilityOutcome {
    std::optional<InsolubilityCertificate> certificate;  // empty: Unknown
    int max_modulus_tried = 0;
};
InsolubilityOutcome certify_insoluble(const DiagonalForm& form, int max_modulus_exponent);

// Exhaustive verification of the contraction contracts over all unit
// residue classes mod pi^P:
//   d:  every different-bit pair reaches exactly +1 with either output bit
//   s2: every same-bit pair reaches exactly +2
//   s3: every same-bit pair reaches at least +3
//   t:  every same-bit triple has a pair reaching at least +4
// Throws AuditFailure naming the violating classes if any check fails.
struct AuditCheck {
    std::string name;
    std::uint64_t cases = 0;
    bool pass = false;
    // one row per case; layout per check:
    //   d:  {ua, ub, want_bit, alpha_class, beta_class, -1}
    //   s2/s3: {ua, ub, alpha_class, beta_class, -1, -1}
    //   t:  {ua, ub, uc, pair_index, alpha_class, beta_class}
    std::vector<std::array<int, 6>> witnesses;
};
struct AuditReport {
    FieldTag field = FieldTag::gaussian;
    int modulus_exponent = 0;
    std::uint64_t unit_classes = 0;
    std::uint64_t sixth_power_classes = 0;
    std::vector<AuditCheck> checks;
    bool all_pass = false;
    double elapsed_seconds = 0.0;
};
AuditReport audit_lemmas(FieldTag field, int modulus_exponent);

// Seeded random 7-variable forms (components uniform mod 2^24, zero
// coefficients rejected), solved and verified.  Per-form results depend
// only on (seed, index), so the summary minus timings is identical
// across runs and thread counts.
struct BatchFormResult {
    bool solved = false;
    bool verified = false;
    int residual = 0;
    std::string error;
    double millis = 0.0;
};
struct BatchSummary {
    FieldTag field = FieldTag::gaussian;
    std::uint64_t seed = 0;
    int count = 0;
    int demand = 0;
    int solved = 0;
    int verified = 0;
    int failures = 0;
    int min_residual = 0;
    int median_residual = 0;
    int max_residual = 0;
    double median_millis = 0.0;
    double total_seconds = 0.0;
    std::vector<BatchFormResult> results;
};
BatchSummary batch_solve(FieldTag field, int count, std::uint64_t seed, int jobs,
                         GameSolver& solver, const SixthPowerTable& table, int demand = 40);

}  // namespace padform

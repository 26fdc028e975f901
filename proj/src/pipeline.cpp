#include "padform/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <random>
#include <set>
#include <thread>

namespace padform {

namespace {

TraceRecord record_of(const ContractionArena& arena, const RealizedMove& mv) {
    TraceRecord rec;
    rec.kind = mv.kind;
    for (int id : mv.inputs)
        if (id >= 0) rec.inputs.push_back(id);
    rec.output = mv.output;
    const VarNode& node = arena.node(mv.output);
    rec.level = node.level;
    rec.delta = mv.achieved_delta;
    rec.bit = mv.achieved_bit;
    rec.slack = node.slack;
    rec.alpha = node.alpha;
    rec.beta = node.beta;
    return rec;
}

// Picks `want` alive node ids with the given level/bit/slack signature.
std::vector<int> pick_nodes(const ContractionArena& arena, const std::vector<int>& alive,
                            int level, int bit, std::initializer_list<int> slacks) {
    std::vector<int> picked;
    for (int slack : slacks) {
        for (int id : alive) {
            const VarNode& n = arena.node(id);
            if (n.level != level || n.pi_coefficient != bit || n.slack != slack) continue;
            if (std::find(picked.begin(), picked.end(), id) != picked.end()) continue;
            picked.push_back(id);
            break;
        }
    }
    if (picked.size() != slacks.size())
        throw std::logic_error("solve: concrete pool does not match the abstract move");
    return picked;
}

SolutionCertificate finish_certificate(const DiagonalForm& form,
                                       const std::vector<int>& scales,
                                       std::vector<Element> assignment,
                                       std::vector<TraceRecord> trace, HenselRecord hensel,
                                       int demand) {
    // Map the normalized-form assignment back to the input variables:
    // x_i -> pi^(S - scale_i) x_i, then renormalize to minimum valuation 0.
    int max_scale = 0;
    for (std::size_t i = 0; i < assignment.size(); ++i)
        if (!assignment[i].is_exact_zero())
            max_scale = std::max(max_scale, scales[i]);
    int min_v = kInfiniteValuation;
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        if (assignment[i].is_exact_zero()) continue;
        assignment[i] = mul_pow_pi(assignment[i], max_scale - scales[i]);
        min_v = std::min(min_v, valuation(assignment[i]));
    }
    SolutionCertificate cert;
    cert.field = form.field;
    cert.trace = std::move(trace);
    cert.hensel = std::move(hensel);
    cert.assignment.reserve(assignment.size());
    int unit_index = -1;
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        Element x = assignment[i];
        if (!x.is_exact_zero() && min_v > 0) x = div_pow_pi(x, min_v);
        if (unit_index < 0 && !x.is_exact_zero() && valuation(x) == 0)
            unit_index = static_cast<int>(i);
        cert.assignment.push_back(std::move(x));
    }
    cert.unit_index = unit_index;
    cert.residual_valuation = valuation_bound(evaluate(form, cert.assignment)).v;
    if (!verify_solution(form, cert, demand))
        throw PrecisionExhausted("solve: produced certificate failed verification");
    return cert;
}

}  // namespace

SolutionCertificate solve(const DiagonalForm& form, GameSolver& solver,
                          const SixthPowerTable& table, const SolveOptions& options) {
    if (table.field() != form.field)
        throw std::invalid_argument("solve: table field mismatch");
    const int demand = options.demand;

    // Exact cancellation short-circuit: a_i + a_j = 0 solves with x = e_i + e_j.
    for (std::size_t i = 0; i < form.size(); ++i)
        for (std::size_t j = i + 1; j < form.size(); ++j)
            if (add(form.coefficients[i], form.coefficients[j]).is_exact_zero()) {
                std::vector<Element> x(form.size(), Element::zero(form.field));
                x[i] = Element::one(form.field);
                x[j] = Element::one(form.field);
                std::vector<int> zero_scales(form.size(), 0);
                return finish_certificate(form, zero_scales, std::move(x), {}, {}, demand);
            }

    DiagonalForm fresh = make_form(form.field, form.coefficients);
    DiagonalForm norm = normalize(fresh);
    ContractionArena arena(norm);
    std::vector<int> alive;
    for (std::size_t i = 0; i < norm.size(); ++i) alive.push_back(arena.leaf(i));

    auto abstraction_of = [&]() {
        std::vector<PoolVar> pool;
        pool.reserve(alive.size());
        for (int id : alive) {
            const VarNode& n = arena.node(id);
            pool.push_back({n.level, n.pi_coefficient, n.slack});
        }
        return abstract_pool(pool);
    };

    Abstraction ab = abstraction_of();
    if (solver.solve_config(ab.config) == Verdict::loss)
        throw StrategyUnavailable("no winning contraction strategy for this configuration");

    std::vector<TraceRecord> trace;
    int root = -1;
    for (int step = 0; step < 512 && root < 0; ++step) {
        std::optional<GameMove> mv = solver.winning_move(ab.config);
        if (!mv) throw std::logic_error("solve: strategy vanished mid-realization");
        RealizedMove realized;
        switch (mv->kind) {
            case MoveKind::d: {
                int x = pick_nodes(arena, alive, mv->level, ab.class_bit[0],
                                   {mv->slacks[0]})[0];
                int y = pick_nodes(arena, alive, mv->level, ab.class_bit[1],
                                   {mv->slacks[1]})[0];
                int want_bit = ab.class_bit[mv->out_cls];
                realized = realize_d(arena, x, y, want_bit, table);
                break;
            }
            case MoveKind::s2:
            case MoveKind::s3: {
                auto picked = pick_nodes(arena, alive, mv->level, ab.class_bit[mv->cls],
                                         {mv->slacks[0], mv->slacks[1]});
                realized = mv->kind == MoveKind::s2
                               ? realize_s2(arena, picked[0], picked[1], table)
                               : realize_s3(arena, picked[0], picked[1], table);
                break;
            }
            case MoveKind::t: {
                auto picked = pick_nodes(arena, alive, mv->level, ab.class_bit[mv->cls],
                                         {mv->slacks[0], mv->slacks[1], mv->slacks[2]});
                realized = realize_t(arena, picked[0], picked[1], picked[2], table);
                break;
            }
            case MoveKind::rename_down: {
                int x = pick_nodes(arena, alive, mv->level, ab.class_bit[mv->cls],
                                   {mv->slacks[0]})[0];
                realized = rename_down(arena, x);
                break;
            }
        }
        trace.push_back(record_of(arena, realized));
        for (int id : realized.inputs)
            if (id >= 0) alive.erase(std::find(alive.begin(), alive.end(), id));
        if (realized.terminal) {
            root = realized.output;
            break;
        }
        alive.push_back(realized.output);

        // Plan coherence: the observed outcome must be one the planner
        // enumerated for this move.
        Abstraction next = abstraction_of();
        bool covered = false;
        for (const Outcome& o : move_outcomes(ab.config, *mv))
            if (!o.win && o.next == next.config) {
                covered = true;
                break;
            }
        if (!covered)
            throw std::logic_error("solve: realized outcome outside the planner's option set");
        ab = std::move(next);
    }
    if (root < 0) throw std::logic_error("solve: strategy did not terminate");

    Unwound unwound = unwind_assignment(arena, root, norm);
    std::vector<Element> x = unwound.assignment;
    HenselRecord hensel;
    Element sum = unwound.sum;
    if (!sum.is_exact_zero() && !valuation_at_least(sum, demand)) {
        int j = unwound.anchor_index;
        Element term = mul(norm.coefficients[static_cast<std::size_t>(j)],
                           pow_u(x[static_cast<std::size_t>(j)], 6));
        Element ratio = divide(sum, term);  // v(ratio) = gap >= 5
        Element target = sub(Element::one(form.field), ratio);
        SixthRootResult lift = sixth_root(target, Element::one(form.field), demand);
        x[static_cast<std::size_t>(j)] = mul(x[static_cast<std::size_t>(j)], lift.root);
        hensel.applied = true;
        hensel.anchor_index = j;
        hensel.root = lift.root;
        hensel.residual_valuations = lift.residual_valuations;
    }
    return finish_certificate(form, norm.variable_scales, std::move(x), std::move(trace),
                              std::move(hensel), demand);
}

namespace {

// Canonical residue of an element mod pi^m for even m: components mod
// 2^(m/2), packed into one key.
std::uint32_t residue_key(const Element& e, int half_bits) {
    std::uint32_t mask = (1u << half_bits) - 1;
    return ((static_cast<std::uint32_t>(e.a()) & mask) << half_bits) |
           (static_cast<std::uint32_t>(e.b()) & mask);
}

std::uint32_t key_add(std::uint32_t x, std::uint32_t y, int half_bits) {
    std::uint32_t mask = (1u << half_bits) - 1;
    std::uint32_t a = ((x >> half_bits) + (y >> half_bits)) & mask;
    std::uint32_t b = ((x & mask) + (y & mask)) & mask;
    return (a << half_bits) | b;
}

}  // namespace

InsolubilityOutcome certify_insoluble(const DiagonalForm& form, int max_modulus_exponent) {
    if (max_modulus_exponent < 1 || max_modulus_exponent > 14)
        throw std::invalid_argument("certify_insoluble: modulus exponent must be in 1..14");
    InsolubilityOutcome outcome;
    for (int m = 2; m <= max_modulus_exponent; m += 2) {
        outcome.max_modulus_tried = m;
        const int half = m / 2;
        SixthPowerTable table = SixthPowerTable::build(form.field, m);

        struct ValueClass {
            std::uint32_t key;
            bool unit;
        };
        std::uint64_t classes_enumerated = 0;
        std::vector<std::vector<ValueClass>> variable_classes;
        for (const Element& a : form.coefficients) {
            std::set<std::uint32_t> seen_unit, seen_rest;
            seen_rest.insert(0);  // x = 0 (or 6t >= m)
            for (int t = 0; 6 * t < m; ++t)
                for (const Element& c : table.witness_sixth_powers()) {
                    Element value = mul_pow_pi(mul(a, c), 6 * t);
                    (t == 0 ? seen_unit : seen_rest).insert(residue_key(value, half));
                }
            std::vector<ValueClass> classes;
            for (std::uint32_t k : seen_unit) classes.push_back({k, true});
            for (std::uint32_t k : seen_rest) classes.push_back({k, false});
            classes_enumerated += classes.size();
            variable_classes.push_back(std::move(classes));
        }

        // Reachable (residue, unit-used) pairs after each variable.
        const std::size_t keys = 1u << m;
        std::vector<std::uint8_t> reach(keys * 2, 0);
        reach[0] = 1;
        for (const auto& classes : variable_classes) {
            std::vector<std::uint8_t> next(keys * 2, 0);
            for (std::size_t k = 0; k < keys; ++k)
                for (int flag = 0; flag < 2; ++flag) {
                    if (!reach[k * 2 + static_cast<std::size_t>(flag)]) continue;
                    for (const ValueClass& c : classes) {
                        std::uint32_t nk = key_add(static_cast<std::uint32_t>(k), c.key, half);
                        int nf = flag | (c.unit ? 1 : 0);
                        next[nk * 2 + static_cast<std::size_t>(nf)] = 1;
                    }
                }
            reach = std::move(next);
        }
        if (!reach[0 * 2 + 1]) {
            InsolubilityCertificate cert;
            cert.field = form.field;
            cert.modulus_exponent = m;
            cert.classes_enumerated = classes_enumerated;
            outcome.certificate = cert;
            return outcome;
        }
    }
    return outcome;
}

AuditReport audit_lemmas(FieldTag field, int modulus_exponent) {
    if (modulus_exponent < 7 || modulus_exponent > 10)
        throw std::invalid_argument(
            "audit_lemmas: modulus exponent must be in 7..10 (the +4 contract needs P >= 7)");
    auto start = std::chrono::steady_clock::now();
    const int p = modulus_exponent;
    SixthPowerTable table = SixthPowerTable::build(field, p);
    const auto& cand6 = table.witness_sixth_powers();
    const int ncand = static_cast<int>(cand6.size());

    // All unit residue classes mod pi^P, as exact elements.
    const int nunits = 1 << (p - 1);
    std::vector<Element> units;
    std::vector<int> unit_bit;
    units.reserve(static_cast<std::size_t>(nunits));
    for (int bits = 0; bits < nunits; ++bits) {
        std::string digits(static_cast<std::size_t>(p), '0');
        digits[0] = '1';
        for (int i = 1; i < p; ++i)
            if (bits & (1 << (i - 1))) digits[static_cast<std::size_t>(i)] = '1';
        Element u = from_pi_digits(digits, field);
        units.push_back(u);
        unit_bit.push_back(pi_coefficient_of_unit(u));
    }

    // Per ordered pair: which contracts are achievable, with witnesses.
    struct PairInfo {
        int bit_witness[2] = {-1, -1};  // candidate index pair achieving +1 with bit 0/1
        int exact2 = -1;
        int ge3 = -1;
        int ge4 = -1;
    };
    std::vector<PairInfo> pairs(static_cast<std::size_t>(nunits) * nunits);
    for (int i = 0; i < nunits; ++i) {
        std::vector<Element> lhs;
        lhs.reserve(static_cast<std::size_t>(ncand));
        for (int a = 0; a < ncand; ++a) lhs.push_back(mul(cand6[static_cast<std::size_t>(a)], units[static_cast<std::size_t>(i)]));
        for (int j = 0; j < nunits; ++j) {
            PairInfo& info = pairs[static_cast<std::size_t>(i) * nunits + j];
            bool same_bit = unit_bit[static_cast<std::size_t>(i)] == unit_bit[static_cast<std::size_t>(j)];
            for (int a = 0; a < ncand && (info.bit_witness[0] < 0 || info.bit_witness[1] < 0 ||
                                          info.exact2 < 0 || info.ge3 < 0 || info.ge4 < 0);
                 ++a) {
                for (int b = 0; b < ncand; ++b) {
                    Element s = add(lhs[static_cast<std::size_t>(a)],
                                    mul(cand6[static_cast<std::size_t>(b)],
                                        units[static_cast<std::size_t>(j)]));
                    ValuationBound vb = valuation_bound(s);
                    int v = vb.is_exact ? vb.v : kInfiniteValuation;
                    int code = a * ncand + b;
                    if (!same_bit) {
                        if (v != 1) continue;  // different bits always land at +1
                        int bit = pi_coefficient_of_unit(div_pow_pi(s, 1));
                        if (info.bit_witness[bit] < 0) info.bit_witness[bit] = code;
                    } else {
                        if (v == 2 && info.exact2 < 0) info.exact2 = code;
                        if (v >= 3 && info.ge3 < 0) info.ge3 = code;
                        if (v >= 4 && info.ge4 < 0) info.ge4 = code;
                    }
                }
            }
        }
    }

    AuditReport report;
    report.field = field;
    report.modulus_exponent = p;
    report.unit_classes = static_cast<std::uint64_t>(nunits);
    report.sixth_power_classes = table.class_count();

    AuditCheck d{"d", 0, true, {}};
    AuditCheck s2{"s2", 0, true, {}};
    AuditCheck s3{"s3", 0, true, {}};
    AuditCheck t{"t", 0, true, {}};
    std::string failure;

    for (int i = 0; i < nunits && failure.empty(); ++i)
        for (int j = i; j < nunits; ++j) {
            const PairInfo& info = pairs[static_cast<std::size_t>(i) * nunits + j];
            if (unit_bit[static_cast<std::size_t>(i)] != unit_bit[static_cast<std::size_t>(j)]) {
                ++d.cases;
                for (int bit = 0; bit < 2; ++bit) {
                    int w = info.bit_witness[bit];
                    if (w < 0) {
                        d.pass = false;
                        failure = "d check failed for unit classes " + std::to_string(i) +
                                  ", " + std::to_string(j) + " with target bit " +
                                  std::to_string(bit);
                        break;
                    }
                    d.witnesses.push_back({i, j, bit, w / ncand, w % ncand, -1});
                }
            } else {
                ++s2.cases;
                ++s3.cases;
                if (info.exact2 < 0) {
                    s2.pass = false;
                    failure = "s2 check failed for unit classes " + std::to_string(i) + ", " +
                              std::to_string(j);
                    break;
                }
                s2.witnesses.push_back({i, j, info.exact2 / ncand, info.exact2 % ncand, -1, -1});
                if (info.ge3 < 0) {
                    s3.pass = false;
                    failure = "s3 check failed for unit classes " + std::to_string(i) + ", " +
                              std::to_string(j);
                    break;
                }
                s3.witnesses.push_back({i, j, info.ge3 / ncand, info.ge3 % ncand, -1, -1});
            }
        }

    for (int i = 0; i < nunits && failure.empty(); ++i)
        for (int j = i; j < nunits && failure.empty(); ++j) {
            if (unit_bit[static_cast<std::size_t>(i)] != unit_bit[static_cast<std::size_t>(j)])
                continue;
            for (int k = j; k < nunits; ++k) {
                if (unit_bit[static_cast<std::size_t>(j)] !=
                    unit_bit[static_cast<std::size_t>(k)])
                    continue;
                ++t.cases;
                const int trio[3] = {i, j, k};
                const int pair_idx[3][2] = {{0, 1}, {0, 2}, {1, 2}};
                int found_pair = -1, found_code = -1;
                for (int q = 0; q < 3 && found_pair < 0; ++q) {
                    int a = trio[pair_idx[q][0]], b = trio[pair_idx[q][1]];
                    int w = pairs[static_cast<std::size_t>(a) * nunits + b].ge4;
                    if (w >= 0) {
                        found_pair = q;
                        found_code = w;
                    }
                }
                if (found_pair < 0) {
                    t.pass = false;
                    failure = "t check failed for unit classes " + std::to_string(i) + ", " +
                              std::to_string(j) + ", " + std::to_string(k);
                    break;
                }
                t.witnesses.push_back(
                    {i, j, k, found_pair, found_code / ncand, found_code % ncand});
            }
        }

    report.checks = {std::move(d), std::move(s2), std::move(s3), std::move(t)};
    report.all_pass = failure.empty();
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!failure.empty()) throw AuditFailure(failure);
    return report;
}

BatchSummary batch_solve(FieldTag field, int count, std::uint64_t seed, int jobs,
                         GameSolver& solver, const SixthPowerTable& table, int demand) {
    if (count < 0) throw std::invalid_argument("batch_solve: negative count");
    auto start = std::chrono::steady_clock::now();
    BatchSummary summary;
    summary.field = field;
    summary.seed = seed;
    summary.count = count;
    summary.demand = demand;
    summary.results.assign(static_cast<std::size_t>(count), {});

    std::atomic<int> next{0};
    auto worker = [&]() {
        int i;
        while ((i = next.fetch_add(1)) < count) {
            BatchFormResult& r = summary.results[static_cast<std::size_t>(i)];
            auto t0 = std::chrono::steady_clock::now();
            try {
                std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(i + 1));
                std::vector<Element> coeffs;
                while (coeffs.size() < 7) {
                    std::uint64_t a = rng() & ((1u << 24) - 1);
                    std::uint64_t b = rng() & ((1u << 24) - 1);
                    if (a == 0 && b == 0) continue;
                    coeffs.push_back(Element::from_integers(static_cast<std::int64_t>(a),
                                                            static_cast<std::int64_t>(b), field));
                }
                DiagonalForm form = make_form(field, std::move(coeffs));
                SolveOptions opt;
                opt.demand = demand;
                SolutionCertificate cert = solve(form, solver, table, opt);
                r.solved = true;
                r.verified = verify_solution(form, cert, demand);
                r.residual = cert.residual_valuation;
            } catch (const std::exception& e) {
                r.error = e.what();
            }
            r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                           .count();
        }
    };
    int threads = std::max(1, std::min(jobs, count));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::vector<int> residuals;
    std::vector<double> times;
    for (const BatchFormResult& r : summary.results) {
        if (r.solved) ++summary.solved;
        if (r.verified) {
            ++summary.verified;
            residuals.push_back(r.residual);
        } else {
            ++summary.failures;
        }
        times.push_back(r.millis);
    }
    if (!residuals.empty()) {
        std::sort(residuals.begin(), residuals.end());
        summary.min_residual = residuals.front();
        summary.max_residual = residuals.back();
        summary.median_residual = residuals[residuals.size() / 2];
    }
    if (!times.empty()) {
        std::sort(times.begin(), times.end());
        summary.median_millis = times[times.size() / 2];
    }
    summary.total_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return summary;
}

}  // namespace padform

// The adversarial contraction game over stacked-partition configurations.
//
// Prover: picks the move, the consumed variables, and a d-output's bit
// class.  Adversary: the output class of s2/s3/t and renames, the s3
// delta (3 or 4), and which pair of a t-trio is consumed — the most
// conservative sound reading of what a contraction cannot control.
// A move outcome whose slack reaches 5 is a terminal win (the Hensel
// step applies); everything else recurses.

#include "padform/game.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <set>
#include <stdexcept>
#include <thread>

namespace padform {

int AbstractConfig::class_total(int level, int cls) const {
    int t = 0;
    for (int s = 0; s <= kMaxSlack; ++s) t += counts_[level][cls][s];
    return t;
}

int AbstractConfig::size() const {
    int t = 0;
    for (int l = 0; l <= kMaxLevel; ++l) t += level_total(l);
    return t;
}

void AbstractConfig::add(int level, int cls, int slack) {
    if (level < 0 || level > kMaxLevel || cls < 0 || cls > 1 || slack < 0 || slack > kMaxSlack)
        throw std::invalid_argument("config: variable out of range");
    ++counts_[level][cls][slack];
}

void AbstractConfig::remove(int level, int cls, int slack) {
    if (level < 0 || level > kMaxLevel || cls < 0 || cls > 1 || slack < 0 ||
        slack > kMaxSlack || counts_[level][cls][slack] == 0)
        throw std::invalid_argument("config: removing an absent variable");
    --counts_[level][cls][slack];
}

void AbstractConfig::canonicalize() {
    AbstractConfig flipped = *this;
    for (int l = 0; l <= kMaxLevel; ++l) std::swap(flipped.counts_[l][0], flipped.counts_[l][1]);
    if (flipped.key() < key()) *this = flipped;
}

AbstractConfig::Key AbstractConfig::key() const {
    std::array<std::uint8_t, 16> bytes;
    bytes.fill(0xFF);
    int idx = 0;
    for (int l = 0; l <= kMaxLevel; ++l)
        for (int cls = 0; cls < 2; ++cls)
            for (int s = 0; s <= kMaxSlack; ++s)
                for (int n = 0; n < counts_[l][cls][s]; ++n) {
                    if (idx >= 16) throw std::invalid_argument("config: more than 16 variables");
                    bytes[static_cast<std::size_t>(idx++)] =
                        static_cast<std::uint8_t>((l << 4) | (cls << 3) | s);
                }
    Key k;
    for (int i = 0; i < 8; ++i) k.lo |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
    for (int i = 0; i < 8; ++i) k.hi |= static_cast<std::uint64_t>(bytes[i + 8]) << (8 * i);
    return k;
}

namespace {

bool move_less(const GameMove& a, const GameMove& b) {
    auto t = [](const GameMove& m) {
        return std::make_tuple(static_cast<int>(m.kind), m.level, m.cls, m.slacks[0],
                               m.slacks[1], m.slacks[2], m.out_cls);
    };
    return t(a) < t(b);
}

}  // namespace

std::vector<GameMove> legal_moves(const AbstractConfig& cfg) {
    std::vector<GameMove> moves;
    for (int l = 0; l <= kMaxLevel; ++l) {
        if (l + 1 <= kMaxLevel && cfg.class_total(l, 0) > 0 && cfg.class_total(l, 1) > 0) {
            for (int s0 = 0; s0 <= kMaxSlack; ++s0) {
                if (cfg.count(l, 0, s0) == 0) continue;
                for (int s1 = 0; s1 <= kMaxSlack; ++s1) {
                    if (cfg.count(l, 1, s1) == 0) continue;
                    for (int out = 0; out < 2; ++out) {
                        GameMove m;
                        m.kind = MoveKind::d;
                        m.level = static_cast<std::uint8_t>(l);
                        m.slacks[0] = static_cast<std::uint8_t>(s0);
                        m.slacks[1] = static_cast<std::uint8_t>(s1);
                        m.out_cls = static_cast<std::uint8_t>(out);
                        moves.push_back(m);
                    }
                }
            }
        }
        for (int cls = 0; cls < 2; ++cls) {
            if (l >= kFormDegree)
                for (int s = 0; s <= kMaxSlack; ++s)
                    if (cfg.count(l, cls, s) > 0) {
                        GameMove m;
                        m.kind = MoveKind::rename_down;
                        m.level = static_cast<std::uint8_t>(l);
                        m.cls = static_cast<std::uint8_t>(cls);
                        m.slacks[0] = static_cast<std::uint8_t>(s);
                        moves.push_back(m);
                    }
            if (cfg.class_total(l, cls) < 2) continue;
            for (int sa = 0; sa <= kMaxSlack; ++sa) {
                if (cfg.count(l, cls, sa) == 0) continue;
                for (int sb = sa; sb <= kMaxSlack; ++sb) {
                    int need = sa == sb ? 2 : 1;
                    if (cfg.count(l, cls, sb) < need) continue;
                    GameMove m;
                    m.level = static_cast<std::uint8_t>(l);
                    m.cls = static_cast<std::uint8_t>(cls);
                    m.slacks[0] = static_cast<std::uint8_t>(sa);
                    m.slacks[1] = static_cast<std::uint8_t>(sb);
                    if (l + 2 <= kMaxLevel) {
                        m.kind = MoveKind::s2;
                        moves.push_back(m);
                    }
                    if (l + 4 <= kMaxLevel) {
                        m.kind = MoveKind::s3;
                        moves.push_back(m);
                    }
                    if (l + 4 > kMaxLevel || cfg.class_total(l, cls) < 3) continue;
                    for (int sc = sb; sc <= kMaxSlack; ++sc) {
                        int need_c = 1 + (sc == sa ? 1 : 0) + (sc == sb ? 1 : 0);
                        if (cfg.count(l, cls, sc) < need_c) continue;
                        GameMove mt = m;
                        mt.kind = MoveKind::t;
                        mt.slacks[2] = static_cast<std::uint8_t>(sc);
                        moves.push_back(mt);
                    }
                }
            }
        }
    }
    std::sort(moves.begin(), moves.end(), move_less);
    return moves;
}

namespace {

void push_outcome(std::vector<Outcome>& outs, const AbstractConfig& base, int out_level,
                  int new_slack, int insert_cls) {
    if (new_slack >= kWinSlack) {
        for (const Outcome& o : outs)
            if (o.win) return;
        outs.push_back({true, {}});
        return;
    }
    if (out_level > kMaxLevel) throw std::logic_error("game: level cap exceeded");
    AbstractConfig next = base;
    next.add(out_level, insert_cls, new_slack);
    next.canonicalize();
    for (const Outcome& o : outs)
        if (!o.win && o.next == next) return;
    outs.push_back({false, std::move(next)});
}

}  // namespace

std::vector<Outcome> move_outcomes(const AbstractConfig& cfg, const GameMove& mv) {
    std::vector<Outcome> outs;
    const int l = mv.level;
    switch (mv.kind) {
        case MoveKind::d: {
            AbstractConfig base = cfg;
            base.remove(l, 0, mv.slacks[0]);
            base.remove(l, 1, mv.slacks[1]);
            int slack = 1 + std::max<int>(mv.slacks[0], mv.slacks[1]);
            // the prover chose the output class: a single outcome
            push_outcome(outs, base, l + 1, slack, mv.out_cls);
            break;
        }
        case MoveKind::s2: {
            AbstractConfig base = cfg;
            base.remove(l, mv.cls, mv.slacks[0]);
            base.remove(l, mv.cls, mv.slacks[1]);
            int slack = 2 + std::max<int>(mv.slacks[0], mv.slacks[1]);
            for (int cls = 0; cls < 2; ++cls) push_outcome(outs, base, l + 2, slack, cls);
            break;
        }
        case MoveKind::s3: {
            AbstractConfig base = cfg;
            base.remove(l, mv.cls, mv.slacks[0]);
            base.remove(l, mv.cls, mv.slacks[1]);
            int raised = std::max<int>(mv.slacks[0], mv.slacks[1]);
            for (int delta = 3; delta <= 4; ++delta)
                for (int cls = 0; cls < 2; ++cls)
                    push_outcome(outs, base, l + delta, delta + raised, cls);
            break;
        }
        case MoveKind::t: {
            const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
            for (const auto& p : pairs) {
                AbstractConfig base = cfg;
                base.remove(l, mv.cls, mv.slacks[p[0]]);
                base.remove(l, mv.cls, mv.slacks[p[1]]);
                int slack = 4 + std::max<int>(mv.slacks[p[0]], mv.slacks[p[1]]);
                for (int cls = 0; cls < 2; ++cls) push_outcome(outs, base, l + 4, slack, cls);
            }
            break;
        }
        case MoveKind::rename_down: {
            if (l < kFormDegree) throw std::invalid_argument("rename: level below 6");
            AbstractConfig base = cfg;
            base.remove(l, mv.cls, mv.slacks[0]);
            // the unit part is untouched: the variable keeps its class
            push_outcome(outs, base, l - kFormDegree, mv.slacks[0], mv.cls);
            break;
        }
    }
    return outs;
}

GameSolver::GameSolver() : shards_(new Shard[kShards]) {}

GameSolver::Shard& GameSolver::shard_for(const AbstractConfig::Key& k) {
    return shards_[AbstractConfig::KeyHash{}(k) % kShards];
}

std::optional<Verdict> GameSolver::lookup(const AbstractConfig::Key& k) {
    Shard& s = shard_for(k);
    std::lock_guard<std::mutex> lock(s.mu);
    auto it = s.map.find(k);
    if (it == s.map.end()) return std::nullopt;
    return it->second;
}

void GameSolver::publish(const AbstractConfig::Key& k, Verdict v) {
    Shard& s = shard_for(k);
    std::lock_guard<std::mutex> lock(s.mu);
    s.map.emplace(k, v);
}

std::uint64_t GameSolver::memo_states() const {
    std::uint64_t total = 0;
    for (int i = 0; i < kShards; ++i) {
        std::lock_guard<std::mutex> lock(shards_[i].mu);
        total += shards_[i].map.size();
    }
    return total;
}

Verdict GameSolver::solve_config(const AbstractConfig& cfg) {
    if (cfg.size() > kMaxFormVariables)
        throw std::invalid_argument("solve_config: more than 16 variables");
    AbstractConfig c = cfg;
    c.canonicalize();
    AbstractConfig::Key k = c.key();
    if (auto v = lookup(k)) return *v;
    Verdict verdict = Verdict::loss;
    for (const GameMove& mv : legal_moves(c)) {
        bool all_win = true;
        for (const Outcome& o : move_outcomes(c, mv)) {
            if (o.win) continue;
            if (solve_config(o.next) == Verdict::loss) {
                all_win = false;
                break;
            }
        }
        if (all_win) {
            verdict = Verdict::win;
            break;
        }
    }
    publish(k, verdict);
    return verdict;
}

std::optional<GameMove> GameSolver::winning_move(const AbstractConfig& cfg) {
    AbstractConfig c = cfg;
    c.canonicalize();
    if (solve_config(c) == Verdict::loss) return std::nullopt;
    for (const GameMove& mv : legal_moves(c)) {
        bool all_win = true;
        for (const Outcome& o : move_outcomes(c, mv)) {
            if (!o.win && solve_config(o.next) == Verdict::loss) {
                all_win = false;
                break;
            }
        }
        if (all_win) return mv;
    }
    throw std::logic_error("winning_move: win verdict without a winning move");
}

std::unique_ptr<StrategyNode> extract_strategy(GameSolver& solver, const AbstractConfig& cfg) {
    auto node = std::make_unique<StrategyNode>();
    node->config = cfg;
    node->config.canonicalize();
    std::optional<GameMove> mv = solver.winning_move(node->config);
    node->win = mv.has_value();
    if (!node->win) return node;
    node->move = mv;
    for (const Outcome& o : move_outcomes(node->config, *mv)) {
        if (o.win) continue;
        node->outcome_configs.push_back(o.next);
        node->children.push_back(extract_strategy(solver, o.next));
    }
    return node;
}

void collect_strategy(GameSolver& solver, const AbstractConfig& cfg,
                      std::map<AbstractConfig::Key, StrategyEntry>& out) {
    AbstractConfig c = cfg;
    c.canonicalize();
    AbstractConfig::Key k = c.key();
    if (out.count(k)) return;
    std::optional<GameMove> mv = solver.winning_move(c);
    if (!mv) return;
    out.emplace(k, StrategyEntry{c, *mv});
    for (const Outcome& o : move_outcomes(c, *mv))
        if (!o.win) collect_strategy(solver, o.next, out);
}

std::vector<AbstractConfig> enumerate_initial_configs(int count, bool cyclic_dedup) {
    if (count < 1 || count > 9)
        throw std::invalid_argument("enumerate_initial_configs: count must be in 1..9");
    std::vector<AbstractConfig> out;
    std::set<AbstractConfig::Key> seen;
    AbstractConfig cfg;
    auto emit = [&]() {
        AbstractConfig c = cfg;
        c.canonicalize();
        if (!seen.insert(c.key()).second) return;  // global-flip duplicate
        if (cyclic_dedup) {
            AbstractConfig::Key best = c.key();
            for (int shift = 1; shift < kFormDegree; ++shift) {
                AbstractConfig shifted;
                for (int l = 0; l < kFormDegree; ++l)
                    for (int cls = 0; cls < 2; ++cls)
                        for (int n = 0; n < cfg.count(l, cls, 0); ++n)
                            shifted.add((l + shift) % kFormDegree, cls, 0);
                shifted.canonicalize();
                if (shifted.key() < best) return;  // a smaller representative exists
            }
        }
        out.push_back(std::move(c));
    };
    // distribute `count` over levels 0..5 with every class assignment
    auto rec = [&](auto&& self, int level, int remaining) -> void {
        if (level == kFormDegree) {
            if (remaining == 0) emit();
            return;
        }
        for (int s = 0; s <= remaining; ++s) {
            for (int y = 0; y <= s; ++y) {
                int x = s - y;
                for (int n = 0; n < x; ++n) cfg.add(level, 0, 0);
                for (int n = 0; n < y; ++n) cfg.add(level, 1, 0);
                self(self, level + 1, remaining - s);
                for (int n = 0; n < x; ++n) cfg.remove(level, 0, 0);
                for (int n = 0; n < y; ++n) cfg.remove(level, 1, 0);
            }
        }
    };
    rec(rec, 0, count);
    return out;
}

TheoremReport check_all(GameSolver& solver, int vars, int jobs, bool cyclic_dedup) {
    auto start = std::chrono::steady_clock::now();
    std::vector<AbstractConfig> configs = enumerate_initial_configs(vars, cyclic_dedup);
    TheoremReport report;
    report.vars = vars;
    report.cyclic_dedup = cyclic_dedup;
    report.initial_configs = configs.size();
    report.jobs = std::max(1, jobs);

    std::vector<std::uint8_t> verdicts(configs.size(), 0);
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        std::size_t i;
        while ((i = next.fetch_add(1)) < configs.size())
            verdicts[i] = solver.solve_config(configs[i]) == Verdict::win ? 1 : 0;
    };
    int threads = std::min<int>(report.jobs, static_cast<int>(configs.size()));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    for (std::size_t i = 0; i < configs.size(); ++i) {
        if (verdicts[i]) {
            ++report.wins;
        } else {
            ++report.losses;
            report.loss_configs.push_back(format_config(configs[i]));
        }
    }
    report.memo_states = solver.memo_states();
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

Abstraction abstract_pool(std::span<const PoolVar> vars) {
    Abstraction a;
    for (const PoolVar& v : vars) a.config.add(v.level, v.bit, v.slack);
    AbstractConfig canonical = a.config;
    canonical.canonicalize();
    bool flipped = !(canonical == a.config);
    a.class_bit = flipped ? std::array<int, 2>{1, 0} : std::array<int, 2>{0, 1};
    a.config = canonical;
    return a;
}

AbstractConfig abstract_config(const DiagonalForm& form) {
    if (!form.normalized)
        throw std::invalid_argument("abstract_config: form must be normalized");
    std::vector<PoolVar> vars;
    vars.reserve(form.size());
    for (const Element& c : form.coefficients) {
        UnitDecomposition ud = unit_decompose(c);
        vars.push_back({ud.level, ud.pi_coefficient, 0});
    }
    return abstract_pool(vars).config;
}

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else if (c != ' ') {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

int parse_small_int(const std::string& s) {
    if (s.empty() || s.size() > 2) throw std::invalid_argument("config: bad number '" + s + "'");
    int v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') throw std::invalid_argument("config: bad number '" + s + "'");
        v = v * 10 + (c - '0');
    }
    return v;
}

}  // namespace

AbstractConfig parse_config(const std::string& text) {
    AbstractConfig cfg;
    if (text.find('/') != std::string::npos) {
        for (const std::string& part : split(text, ',')) {
            std::vector<std::string> t = split(part, '/');
            if (t.size() != 3)
                throw std::invalid_argument("config: expected level/class/slack triples");
            cfg.add(parse_small_int(t[0]), parse_small_int(t[1]), parse_small_int(t[2]));
        }
    } else {
        std::vector<std::string> fields = split(text, ',');
        if (fields.size() != kFormDegree)
            throw std::invalid_argument("config: expected six comma-separated fields");
        for (int l = 0; l < kFormDegree; ++l) {
            std::vector<std::string> parts = split(fields[static_cast<std::size_t>(l)], '+');
            if (parts.size() > 2)
                throw std::invalid_argument("config: at most two stacked classes per level");
            for (std::size_t cls = 0; cls < parts.size(); ++cls)
                for (int n = 0; n < parse_small_int(parts[cls]); ++n)
                    cfg.add(l, static_cast<int>(cls), 0);
        }
    }
    if (cfg.size() > kMaxFormVariables)
        throw std::invalid_argument("config: more than 16 variables");
    cfg.canonicalize();
    return cfg;
}

std::string format_config(const AbstractConfig& cfg) {
    bool plain = true;
    for (int l = 0; l <= kMaxLevel && plain; ++l)
        for (int cls = 0; cls < 2 && plain; ++cls)
            for (int s = 0; s <= kMaxSlack; ++s)
                if (cfg.count(l, cls, s) > 0 && (s > 0 || l >= kFormDegree)) {
                    plain = false;
                    break;
                }
    std::string out;
    if (plain) {
        for (int l = 0; l < kFormDegree; ++l) {
            if (l) out += ',';
            out += std::to_string(cfg.class_total(l, 0));
            if (cfg.class_total(l, 1) > 0) {
                out += '+';
                out += std::to_string(cfg.class_total(l, 1));
            }
        }
        return out;
    }
    bool first = true;
    for (int l = 0; l <= kMaxLevel; ++l)
        for (int cls = 0; cls < 2; ++cls)
            for (int s = 0; s <= kMaxSlack; ++s)
                for (int n = 0; n < cfg.count(l, cls, s); ++n) {
                    if (!first) out += ',';
                    first = false;
                    out += std::to_string(l) + "/" + std::to_string(cls) + "/" +
                           std::to_string(s);
                }
    return out;
}

}  // namespace padform

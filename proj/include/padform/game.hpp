#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "padform/form.hpp"
#include "padform/moves.hpp"

namespace padform {

// Levels are absolute.  Initial configurations live at 0..5; contraction
// outputs stay at most 4 above their inputs and a rename is available
// from 6 up, so no reachable variable needs to exceed level 11.  The cap
// is asserted, not assumed: the exhaustive check passes under it.
inline constexpr int kMaxLevel = 11;
inline constexpr int kMaxSlack = 4;  // slack 5 is a terminal win, never stored

// A game state: multiset of (level, bit class, slack) triples.  Bit
// classes are global labels for the two pi-coefficient values, canonical
// up to one global flip (flipping every variable's class is a game
// symmetry; per-level relabeling is not, because a rename correlates
// levels six apart).  Which class is "0" carries no meaning beyond the
// canonical ordering.
class AbstractConfig {
public:
    using Counts =
        std::array<std::array<std::array<std::uint8_t, kMaxSlack + 1>, 2>, kMaxLevel + 1>;

    struct Key {
        std::uint64_t lo = 0;
        std::uint64_t hi = 0;
        bool operator==(const Key&) const = default;
        bool operator<(const Key& o) const {
            return hi != o.hi ? hi < o.hi : lo < o.lo;
        }
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            std::uint64_t x = k.lo ^ (k.hi * 0x9e3779b97f4a7c15ull);
            x ^= x >> 30;
            x *= 0xbf58476d1ce4e5b9ull;
            x ^= x >> 27;
            return static_cast<std::size_t>(x);
        }
    };

    AbstractConfig() : counts_{} {}

    int count(int level, int cls, int slack) const {
        return counts_[level][cls][slack];
    }
    int class_total(int level, int cls) const;
    int level_total(int level) const { return class_total(level, 0) + class_total(level, 1); }
    int size() const;

    void add(int level, int cls, int slack);
    void remove(int level, int cls, int slack);

    // Picks the lexicographically smaller of the two global class
    // labelings.
    void canonicalize();
    // Packed canonical key; requires a canonical config of <= 16 variables.
    Key key() const;

    bool operator==(const AbstractConfig& o) const { return counts_ == o.counts_; }

private:
    Counts counts_;
};

// A prover move: which kind, acting level/class, and the exact slacks of
// the consumed variables.  For d the prover also chooses the class the
// output joins at the target level; for s2/s3/t the output class, the s3
// delta (3 or 4) and the t consumed pair are the adversary's.
struct GameMove {
    MoveKind kind = MoveKind::d;
    std::uint8_t level = 0;
    std::uint8_t cls = 0;          // class of consumed vars (d: slacks[0] from class 0,
                                   // slacks[1] from class 1)
    std::uint8_t slacks[3] = {0, 0, 0};
    std::uint8_t out_cls = 0;      // d only: insertion class at level+1

    bool operator==(const GameMove&) const = default;
};

// One adversary outcome of a move: either an immediate win (slack >= 5)
// or a successor configuration.
struct Outcome {
    bool win = false;
    AbstractConfig next;
};

std::vector<GameMove> legal_moves(const AbstractConfig& cfg);
// Distinct outcomes of a legal move (deduplicated; wins collapse to one).
std::vector<Outcome> move_outcomes(const AbstractConfig& cfg, const GameMove& move);

enum class Verdict : std::uint8_t { win, loss };

// Memoized AND-OR search: the prover picks a move (OR), the adversary an
// outcome (AND).  Pure modulo the memo table; concurrent duplicate
// computation is allowed and published verdicts are immutable, so any
// thread count gives identical verdicts.
class GameSolver {
public:
    GameSolver();

    Verdict solve_config(const AbstractConfig& cfg);
    // First winning move in canonical move order (deterministic across
    // runs and thread counts).  Empty when the config is a loss.
    std::optional<GameMove> winning_move(const AbstractConfig& cfg);
    std::uint64_t memo_states() const;

private:
    static constexpr int kShards = 64;
    struct Shard {
        std::mutex mu;
        std::unordered_map<AbstractConfig::Key, Verdict, AbstractConfig::KeyHash> map;
    };
    Shard& shard_for(const AbstractConfig::Key& k);
    std::optional<Verdict> lookup(const AbstractConfig::Key& k);
    void publish(const AbstractConfig::Key& k, Verdict v);

    std::unique_ptr<Shard[]> shards_;
};

// Winning strategy tree: the chosen move and one child per non-winning
// adversary outcome.
struct StrategyNode {
    AbstractConfig config;
    bool win = false;
    std::optional<GameMove> move;
    std::vector<AbstractConfig> outcome_configs;  // non-win outcomes, move order
    std::vector<std::unique_ptr<StrategyNode>> children;
};
std::unique_ptr<StrategyNode> extract_strategy(GameSolver& solver, const AbstractConfig& cfg);

// Flat strategy database: every winning configuration reachable from
// cfg under the canonical strategy, with its chosen move.  Keyed (and
// hence ordered) by canonical config key, so the collection is
// deterministic across runs and thread counts.
struct StrategyEntry {
    AbstractConfig config;
    GameMove move;
};
void collect_strategy(GameSolver& solver, const AbstractConfig& cfg,
                      std::map<AbstractConfig::Key, StrategyEntry>& out);

// All slack-0 configurations with `count` variables at levels 0..5 and
// every per-level bit partition, deduplicated by class canonicalization
// and optionally by cyclic level shift (which preserves solubility).
std::vector<AbstractConfig> enumerate_initial_configs(int count, bool cyclic_dedup = false);

struct TheoremReport {
    int vars = 0;
    bool cyclic_dedup = false;
    std::uint64_t initial_configs = 0;
    std::uint64_t wins = 0;
    std::uint64_t losses = 0;
    std::vector<std::string> loss_configs;
    // stats (not part of the deterministic verdict)
    std::uint64_t memo_states = 0;
    double elapsed_seconds = 0.0;
    int jobs = 1;
};
TheoremReport check_all(GameSolver& solver, int vars, int jobs, bool cyclic_dedup = false);

// Pool abstraction used by the realization pipeline: the canonical
// config plus which actual pi-coefficient each canonical class stands
// for.
struct PoolVar {
    int level;
    int bit;
    int slack;
};
struct Abstraction {
    AbstractConfig config;
    std::array<int, 2> class_bit = {0, 1};
};
Abstraction abstract_pool(std::span<const PoolVar> vars);

// Initial configuration of a normalized form: levels 0..5 grouped by
// pi-coefficient, all slacks zero.
AbstractConfig abstract_config(const DiagonalForm& form);

// Text forms: "3+1,2,1,0,0,0" (six comma fields, `n` or `n+m`) for
// slack-free configs at levels 0..5, or an explicit triple list
// "level/class/slack,..." for mid-game configs.
AbstractConfig parse_config(const std::string& text);
std::string format_config(const AbstractConfig& cfg);

}  // namespace padform

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "cfgame/play.hpp"

namespace cfgame {

// Subexpressions of all replacement rules, hash-consed. Nodes 0..k-1 are
// the alphabet symbols themselves, so a symbol occurring inside a rule and
// the symbol being played share a node.
struct SubexprIndex {
    enum class Kind { Symbol, Epsilon, Concat, Union, Star };
    struct Node {
        Kind kind;
        int left = -1, right = -1;
        Symbol symbol = -1;
    };
    enum class Role { ConcatLeft, ConcatRight, UnionChild, StarInner };
    struct Parent {
        int node;
        Role role;
    };

    std::vector<Node> nodes;
    std::vector<int> root;                     // per symbol, -1 for non-function symbols
    std::vector<std::vector<Symbol>> rule_of;  // per node, symbols whose rule is rooted there
    std::vector<std::vector<Parent>> parents;

    static SubexprIndex build(const Game& g);
    std::size_t size() const { return nodes.size(); }
};

// Product of a strategy automaton with the target, restricted to the pairs
// reachable from the initial pair. Called symbols leave the target state
// unchanged.
class AnalysisAutomaton {
public:
    AnalysisAutomaton(const Game& g, const StrategyAutomaton& a);

    std::size_t num_states() const { return pairs_.size(); }
    int initial() const { return 0; }
    int strategy_state(int s) const { return pairs_[static_cast<std::size_t>(s)].first; }
    int target_state(int s) const { return pairs_[static_cast<std::size_t>(s)].second; }
    int after_read(int s, Symbol a) const { return read_[static_cast<std::size_t>(s) * k_ + static_cast<std::size_t>(a)]; }
    int after_call(int s, Symbol a) const { return call_[static_cast<std::size_t>(s) * k_ + static_cast<std::size_t>(a)]; }
    bool calls(int s, Symbol a) const { return calls_[static_cast<std::size_t>(s) * k_ + static_cast<std::size_t>(a)]; }
    // -1 if the pair is not reachable
    int index_of(int strategy_state, int target_state) const;

private:
    std::size_t k_;
    std::size_t num_t_;
    std::vector<std::pair<int, int>> pairs_;
    std::vector<int> id_;
    std::vector<int> read_, call_;
    std::vector<char> calls_;
};

// Configurations for which blocked() holds are treated as unexplored: no
// play is continued through them, but reaching them is still recorded in
// the Next relation.
using BlockedFn = std::function<bool(int state, Symbol a)>;

// Move, Next and Inf over the analysis automaton, saturated semi-naively.
//   move(q, r, q'): some finished play from q on a word of L(r) ends in q'
//   next(q, r, q', a): such a play passes a configuration (q', a)
//   inf(q, r): Romeo can make the play from q on some word of L(r) infinite
class Relations {
public:
    Relations(const Game& g, const StrategyAutomaton& a, const BlockedFn& blocked = {});

    const AnalysisAutomaton& automaton() const { return aut_; }
    const SubexprIndex& index() const { return idx_; }
    std::size_t num_symbols() const { return k_; }

    const Bitset& move_targets(int q, int node) const { return move_[slot(q, node)]; }
    bool move(int q, int node, int q2) const { return move_targets(q, node).test(static_cast<std::size_t>(q2)); }
    // bit q2 * k + a
    const Bitset& next_set(int q, int node) const { return next_[slot(q, node)]; }
    bool next(int q, int node, int q2, Symbol a) const {
        return next_set(q, node).test(static_cast<std::size_t>(q2) * k_ + static_cast<std::size_t>(a));
    }
    bool inf(int q, int node) const { return inf_[static_cast<std::size_t>(q)].test(static_cast<std::size_t>(node)); }

    std::size_t move_count() const;
    std::size_t next_count() const;
    std::size_t inf_count() const;

private:
    std::size_t slot(int q, int node) const { return static_cast<std::size_t>(q) * idx_.size() + static_cast<std::size_t>(node); }

    std::size_t k_;
    SubexprIndex idx_;
    AnalysisAutomaton aut_;
    std::vector<Bitset> move_, move_rev_, next_;
    std::vector<Bitset> inf_;
};

// NFA over the plain alphabet accepting exactly the words on which the
// strategy does not win: states are the analysis states plus a final
// absorbing state for plays Romeo can keep alive forever.
Nfa losing_nfa(const Game& g, const Relations& rel);
Nfa losing_nfa(const Game& g, const StrategyAutomaton& a);

bool is_winning(const Game& g, const StrategyAutomaton& a, const Word& w);
std::vector<Word> winning_set_upto(const Game& g, const StrategyAutomaton& a, std::size_t max_len);
// Deterministic automaton for the winning set.
Dfa winning_dfa(const Game& g, const StrategyAutomaton& a);

struct DominanceResult {
    bool dominated = true;        // W(a1) is a subset of W(a2)
    std::optional<Word> witness;  // shortlex-least word won by a1 but not by a2
};
DominanceResult is_dominated(const Game& g, const StrategyAutomaton& a1, const StrategyAutomaton& a2);

enum class SetRelation { Equal, Subset, Superset, Incomparable };
const char* relation_name(SetRelation r);
struct ComparisonResult {
    SetRelation relation = SetRelation::Equal;
    std::optional<Word> only_first, only_second;
    Order shortlex = Order::Equal;
};
ComparisonResult compare_strategies(const Game& g, const StrategyAutomaton& a1, const StrategyAutomaton& a2);

// ---- search for a winning strongly regular strategy on one word ----------------

enum class SearchMode {
    Exhaustive,   // every reroute set, in increasing bit order
    Incremental,  // every reroute set, fewest reroutes first
    Lazy          // branch only on reroute pairs the plays on the word can reach
};

struct SearchOptions {
    SearchMode mode = SearchMode::Lazy;
    std::uint64_t budget = std::uint64_t{1} << 20;
    bool parallel = true;
    std::function<bool()> cancelled;  // polled; a true result stops with incomplete set
};

struct SearchResult {
    std::optional<StronglyRegularSpec> spec;
    std::uint64_t candidates = 0;
    bool incomplete = false;
};

// Throws BudgetExceeded when the candidate space (or, in lazy mode, the
// number of search nodes) exceeds the budget.
SearchResult exists_winning_sreg(const Game& g, const Word& w, const SearchOptions& opt = {});

// Reroute pairs in the bit order used by the exhaustive modes.
std::vector<std::pair<int, Symbol>> reroute_pairs(const Game& g);
StronglyRegularSpec spec_from_mask(const std::vector<std::pair<int, Symbol>>& pairs, std::uint64_t mask);

}  // namespace cfgame

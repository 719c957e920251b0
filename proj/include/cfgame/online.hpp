#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cfgame/automata.hpp"
#include "cfgame/io.hpp"

namespace cfgame {

// Online word problem: the player picks one transition per revealed symbol
// and wins on w if the state reached after w is accepting.
struct OnlineInstance {
    Alphabet alphabet;
    Nfa nfa;  // one initial state, at least one transition per state and symbol

    static OnlineInstance from_nfa(Nfa n, Alphabet ab);  // throws InputError when not total
    int initial() const { return nfa.initial().front(); }
};

OnlineInstance load_online_instance(const json& j);
json online_instance_to_json(const OnlineInstance& inst);

// Explicit strategy: state chosen after every word up to some length.
using OnlineTable = std::map<Word, int>;

struct PruneResult {
    Nfa pruned;                      // transitions kept after stabilisation
    Dfa strategy;                    // pruned, ties broken by smallest successor
    std::vector<std::size_t> levels; // word-length levels at which transitions were removed
    std::size_t removed = 0;
};

// Removes, level by level, every transition whose successor achieves a
// shortlex-smaller set of words up to that length than a sibling. Levels
// at which no sibling pair differs are skipped.
PruneResult prune_weakly_dominant(const OnlineInstance& inst);

// On the determinisation of n, every reachable subset containing an
// accepting state contains only accepting states.
bool nondeterministic_implies_universal(const Nfa& n);

std::vector<Word> online_win_set(const OnlineInstance& inst, const Dfa& strategy, std::size_t max_len);
std::vector<Word> online_win_set(const OnlineInstance& inst, const OnlineTable& strategy, std::size_t max_len);

// Shortlex-greatest winning set truncated to max_len over all strategy
// tables, by exhaustive enumeration. Throws BudgetExceeded when more than
// `budget` tables would be visited.
std::vector<Word> brute_force_best_online(const OnlineInstance& inst, std::size_t max_len,
                                          std::uint64_t budget = std::uint64_t{1} << 26);

// ---- diagnostics ------------------------------------------------------------------

// Alternative rule: compare full successor languages of the current
// automaton each round and stop after a round without removals.
Nfa prune_full_language(const OnlineInstance& inst);

struct BoundedDiagnosis {
    std::size_t bound = 0;
    Nfa replayed;  // after levels 0..bound with explicitly enumerated languages
    // transitions (q, a, p) present in exactly one of the two automata
    std::vector<std::tuple<int, Symbol, int>> only_replayed, only_main;
    bool agrees() const { return only_replayed.empty() && only_main.empty(); }
};
// Replays levels 0..bound one by one with explicit word sets and compares
// the transitions kept with the main result restricted to removals made up
// to that level.
BoundedDiagnosis diagnose_bounded(const OnlineInstance& inst, std::size_t bound);

}  // namespace cfgame

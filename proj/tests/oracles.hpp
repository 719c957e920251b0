#pragma once

// Independent reference implementations used only by tests.

#include <cstdint>
#include <set>
#include <vector>

#include "cfgame/play.hpp"

namespace oracle {

using cfgame::Game;
using cfgame::Word;

// -1, 0, 1 as a is shortlex-smaller, equal, greater than b; both sorted in
// shortlex order. The greater set contains the least word of the
// symmetric difference.
int compare_word_sets(const std::vector<Word>& a, const std::vector<Word>& b);

// Shortlex-greatest set of words up to max_word_len won by a one-pass
// strategy that may call only while the history is shorter than
// max_history (and reads afterwards). Explores the strategy tree directly,
// keeping the inclusion-maximal win masks per node. Needs finite rules.
std::vector<Word> best_truncated_win_set(const Game& g, std::size_t max_word_len, std::size_t max_history,
                                         std::uint64_t budget = std::uint64_t{1} << 24);

// Direct regex membership by splitting the word, no automata involved.
bool regex_matches(const cfgame::Regex& r, const Word& w);

// Number of Myhill-Nerode classes of the reachable part of a total DFA,
// by pairwise table filling.
std::size_t table_filling_classes(const cfgame::Dfa& d);

// Outcome of every play on w for a regular strategy, by expanding Romeo's
// replies explicitly (finite rules). Plays nested deeper than max_depth
// count as divergent.
enum class Explored { Win, Lose, Diverges };
Explored explore_plays(const Game& g, const cfgame::StrategyAutomaton& a, const Word& w, std::size_t max_depth);

// End (strategy state, target state) pairs of every play on w started from
// the given pair; diverged is set when some play nests deeper than max_depth.
struct ExploredEnds {
    std::set<std::pair<int, int>> ends;
    bool diverged = false;
};
ExploredEnds explore_from(const Game& g, const cfgame::StrategyAutomaton& a, int qa, int qt, const Word& w,
                          std::size_t max_depth);

// Random regular expression over k symbols.
cfgame::Regex random_regex(std::size_t k, std::size_t depth, std::uint64_t seed);

// Brute-force prefix-free check over all words up to max_len.
bool prefix_free_upto(const cfgame::Dfa& d, std::size_t max_len);

}  // namespace oracle

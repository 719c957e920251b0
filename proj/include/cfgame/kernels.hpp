#pragma once

// Data-parallel kernels. Each has a serial reference with the same result;
// the OpenMP versions fall back to the serial code when OpenMP is absent.

#include <atomic>
#include <cstdint>
#include <functional>
#include <vector>

#include "cfgame/automata.hpp"
#include "cfgame/play.hpp"

namespace cfgame::kernels {

int max_threads();

struct SearchScan {
    long long index = -1;  // first winning position in the candidate order
    std::uint64_t checked = 0;
    bool cancelled = false;
};

// All masks over `bits` bits, fewest set bits first, ties by value.
std::vector<std::uint64_t> masks_by_popcount(std::size_t bits);

// Scans candidate reroute sets (order[i], or i itself when order is empty)
// for the first one whose strongly regular strategy wins on w.
SearchScan first_winning_serial(const Game& g, const Word& w, const std::vector<std::pair<int, Symbol>>& pairs,
                                const std::vector<std::uint64_t>& order, std::uint64_t total,
                                const std::function<bool()>& cancelled);
SearchScan first_winning_parallel(const Game& g, const Word& w, const std::vector<std::pair<int, Symbol>>& pairs,
                                  const std::vector<std::uint64_t>& order, std::uint64_t total,
                                  const std::function<bool()>& cancelled);

// Membership of many words in one automaton.
std::vector<char> batch_accepts_serial(const Nfa& n, const std::vector<Word>& words);
std::vector<char> batch_accepts_parallel(const Nfa& n, const std::vector<Word>& words);

// Runs body(i) for i in [0, count), in parallel when available.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace cfgame::kernels

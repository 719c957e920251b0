#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cfgame/online.hpp"
#include "cfgame/play.hpp"

namespace cfgame {

// Named example games: sandbox, g1-recursive, g2-regular-not-sreg,
// g1c-undominated, g2c-undominated.
std::vector<std::string> fixture_names();
Game fixture(const std::string& name);
// Strategies that come with a fixture, by name (e.g. "read-all").
std::map<std::string, StrategyAutomaton> fixture_strategies(const std::string& name, const Game& g);

// ---- 3SAT -----------------------------------------------------------------------------

// Literals are +v / -v for variable v >= 1.
struct Cnf {
    int num_vars = 0;
    std::vector<std::array<int, 3>> clauses;
};
// "1,2,-3;-1,-1,2"
Cnf parse_cnf(const std::string& text);
std::string cnf_to_string(const Cnf& f);
bool brute_force_sat(const Cnf& f);

struct SatInstance {
    Game game;
    Word word;
};
// Juliet has a winning strongly regular strategy on the word iff the
// formula is satisfiable.
SatInstance from_3sat(const Cnf& f);

// ---- NFA universality --------------------------------------------------------

struct UniversalityInstance {
    Game game;
    StronglyRegularSpec first, second;
    bool fixed_negative = false;  // the NFA rejects the empty word
};
// The first strategy is dominated by the second iff the NFA (over {0,1},
// one initial state) accepts every word.
UniversalityInstance from_nfa_universality(const Nfa& n);
bool brute_force_universal(const Nfa& n);

// ---- random instances -------------------------------------------------------------

struct RandomGameParams {
    std::size_t alphabet_size = 3;
    std::size_t target_states = 4;
    double accept_prob = 0.4;
    double function_prob = 0.6;
    std::size_t max_rule_words = 3;
    std::size_t max_word_len = 3;
    bool finite = true;
    bool prefix_free = false;
    bool non_recursive = false;
    std::size_t max_attempts = 1000;
};
// "alphabet=3,states=4,words=3,len=3,finite=1,prefix-free=0,non-recursive=0"
RandomGameParams parse_random_params(const std::string& text);

Game random_game(const RandomGameParams& p, std::uint64_t seed);
StrategyAutomaton random_general_strategy(const Game& g, std::size_t states, std::uint64_t seed);
StrategyAutomaton random_forgetful_strategy(const Game& g, std::size_t states, std::uint64_t seed);
StronglyRegularSpec random_sreg_spec(const Game& g, double reroute_prob, std::uint64_t seed);
// Single initial state 0.
Nfa random_nfa(std::size_t states, std::size_t alphabet_size, double edge_prob, std::uint64_t seed);
// Total instance over the symbols a, b, ...; every state keeps at least one
// transition per symbol.
OnlineInstance random_online_instance(std::size_t states, std::size_t alphabet_size, double edge_prob, std::uint64_t seed);

}  // namespace cfgame

#pragma once

#include <map>
#include <string>
#include <vector>

#include "cfgame/automata.hpp"
#include "cfgame/io.hpp"

namespace cfgame {

struct Rule {
    Regex regex;
    Nfa nfa;
    Dfa dfa;  // canonical minimal
};

// A replacement game: alphabet, one regular replacement language per
// function symbol, and a minimal total target DFA.
class Game {
public:
    Game() = default;
    // Validates the rules and minimizes the target. A non-minimal target is
    // replaced by its canonical minimal form and a notice is recorded.
    Game(Alphabet alphabet, const std::map<Symbol, Regex>& rules, Dfa target);

    const Alphabet& alphabet() const { return alphabet_; }
    std::size_t num_symbols() const { return alphabet_.size(); }
    bool is_function(Symbol a) const { return rules_[static_cast<std::size_t>(a)].has_value(); }
    const Rule& rule(Symbol a) const;
    const std::vector<Symbol>& function_symbols() const { return functions_; }
    const Dfa& target() const { return target_; }
    const std::vector<std::string>& notices() const { return notices_; }

    // Same rules, another target (minimized).
    Game with_target(const Dfa& target) const;
    std::map<Symbol, Regex> rule_map() const;

private:
    Alphabet alphabet_;
    std::vector<std::optional<Rule>> rules_;
    std::vector<Symbol> functions_;
    Dfa target_;
    std::vector<std::string> notices_;
};

Game game_from_json(const json& j);
Game load_game(const std::string& path);
json game_to_json(const Game& g);

struct Classification {
    bool prefix_free = false;
    bool non_recursive = false;
    bool unary = false;
    bool finite_target = false;
    bool finite_rules = false;
    std::vector<Symbol> function_symbols;
    // rule digraph: edges[a] lists the symbols occurring in words of L_a
    std::map<Symbol, std::vector<Symbol>> occurs;
};

Classification classify(const Game& g);
json classification_json(const Classification& c, const Alphabet& ab);

// Symbols occurring in some word of the language.
std::vector<Symbol> occurring_symbols(const Dfa& d);
bool is_finite_language(const Dfa& d);

// Appends an end marker to every replacement word and lets the target skip
// the marker everywhere. The marker becomes the last symbol.
Game to_prefix_free(const Game& g, const std::string& end_symbol = "$");

}  // namespace cfgame

#pragma once

#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cfgame/game.hpp"

namespace cfgame {

// History symbols: a plain symbol a is a, the called symbol is k + a.
inline Symbol hat(Symbol a, std::size_t k) { return a + static_cast<Symbol>(k); }
inline bool is_hat(Symbol h, std::size_t k) { return h >= static_cast<Symbol>(k); }
inline Symbol unhat(Symbol h, std::size_t k) { return is_hat(h, k) ? h - static_cast<Symbol>(k) : h; }
// "a" for plain, "^a" for called symbols
std::vector<std::string> history_labels(const Alphabet& ab);
std::string format_history(const std::vector<Symbol>& h, const Alphabet& ab);

enum class StrategyKind { General, Forgetful, StronglyRegular };
const char* kind_name(StrategyKind k);

// Juliet strategy given by a total DFA over the history alphabet: she calls
// the current function symbol a iff the state reached after reading a is
// accepting. Non-function symbols are always read.
class StrategyAutomaton {
public:
    StrategyAutomaton() = default;
    StrategyAutomaton(Dfa over_history, std::size_t num_symbols, StrategyKind kind = StrategyKind::General);
    // Automaton over the plain alphabet that ignores called symbols.
    static StrategyAutomaton forgetful(const Dfa& over_symbols);

    const Dfa& dfa() const { return dfa_; }
    std::size_t num_symbols() const { return k_; }
    std::size_t num_states() const { return dfa_.num_states(); }
    StrategyKind kind() const { return kind_; }
    int initial() const { return dfa_.initial(); }

    bool calls(const Game& g, int state, Symbol a) const {
        return g.is_function(a) && dfa_.accepting(dfa_.next(state, a));
    }
    int after_read(int state, Symbol a) const { return dfa_.next(state, a); }
    int after_call(int state, Symbol a) const { return dfa_.next(state, hat(a, k_)); }

private:
    Dfa dfa_;
    std::size_t k_ = 0;
    StrategyKind kind_ = StrategyKind::General;
};

// Reroute set of a strongly regular strategy: pairs (target state, function
// symbol) on which Juliet calls.
struct StronglyRegularSpec {
    std::set<std::pair<int, Symbol>> reroutes;
};

// States are the target states plus one Call state (index = |Q_T|). The
// automaton follows the target on plain symbols, stays put on called ones.
StrategyAutomaton strongly_regular_automaton(const Game& g, const StronglyRegularSpec& spec);

StrategyAutomaton strategy_from_json(const json& j, const Game& g);
json strategy_to_json(const StrategyAutomaton& s, const Game& g);
StrategyAutomaton load_strategy(const std::string& path, const Game& g);
StronglyRegularSpec spec_from_json(const json& j, const Game& g);
json spec_to_json(const StronglyRegularSpec& s, const Game& g);

// ---- plays ----------------------------------------------------------------------

enum class MoveKind { Read, Call };

using History = std::vector<Symbol>;
using JulietStrategy = std::function<MoveKind(const History&, Symbol)>;
using RomeoStrategy = std::function<Word(const History&, Symbol)>;

JulietStrategy juliet_from_automaton(const Game& g, const StrategyAutomaton& a);
RomeoStrategy romeo_table(std::map<Symbol, Word> replies);
RomeoStrategy romeo_shortlex(const Game& g);
// Replays the given replies in order; running out is a protocol error.
RomeoStrategy romeo_scripted(std::vector<Word> replies);

enum class Outcome { WinJuliet, WinRomeo, Truncated };
const char* outcome_name(Outcome o);

struct PlayStep {
    MoveKind move;
    Symbol symbol;
    Word reply;  // empty for Read
    std::size_t depth;  // nesting level of the symbol
};

struct Configuration {
    History history;
    Word remaining;
};

struct Play {
    Word input;
    std::vector<PlayStep> steps;
    Outcome outcome = Outcome::Truncated;
    std::size_t depth = 0;  // maximal call nesting
    Word final_string;      // plain part of the history
    std::size_t num_symbols = 0;

    // Rebuilt from the steps on demand (they can be long for deep plays).
    std::vector<Configuration> configurations() const;
};

Play run_play(const Game& g, const JulietStrategy& juliet, const RomeoStrategy& romeo, const Word& w,
              std::size_t step_limit = 10000);
Play run_play(const Game& g, const StrategyAutomaton& a, const RomeoStrategy& romeo, const Word& w,
              std::size_t step_limit = 10000);

// ---- exhaustive oracle for finite replacement languages ---------------------

enum class BruteOutcome { Win, Lose, RomeoCanForceInfinite };
const char* brute_outcome_name(BruteOutcome o);

// End states of every sub-play, computed over concrete replies.
struct BruteForceTable {
    std::size_t num_a = 0, num_t = 0, k = 0;
    // ends[(qa * num_t + qt) * k + a]: reachable (qa', qt') pairs encoded as qa' * num_t + qt'
    std::vector<std::vector<int>> ends;
    // diverges[qa * k + a]: Romeo can keep the sub-play on a alive forever
    std::vector<char> diverges;

    const std::vector<int>& end_states(int qa, int qt, Symbol a) const {
        return ends[(static_cast<std::size_t>(qa) * num_t + static_cast<std::size_t>(qt)) * k + static_cast<std::size_t>(a)];
    }
};

// Throws ScopeError unless every replacement language is finite.
BruteForceTable brute_force_table(const Game& g, const StrategyAutomaton& a);
BruteOutcome brute_force_outcome(const Game& g, const StrategyAutomaton& a, const BruteForceTable& t, const Word& w);
BruteOutcome brute_force_outcome(const Game& g, const StrategyAutomaton& a, const Word& w);

}  // namespace cfgame

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cfgame/game.hpp"
#include "cfgame/online.hpp"
#include "cfgame/play.hpp"

namespace cfgame {

// Playing symbol a from target state p can be made to end in a state of S.
struct EffectTriple {
    int p = 0;
    Symbol a = 0;
    Bitset S;
};

// Strategy that starts by calling a and, on every play over a word of L_a,
// reaches a state marked with the target state the sub-play ended in,
// exactly when the sub-play ends.
struct InducingAutomaton {
    StrategyAutomaton automaton;
    std::vector<int> partition;  // per automaton state: target state, or -1
};

// Effect triples kept as the inclusion-minimal sets per (p, a); a triple is
// present iff one of them is contained in its set. Non-trivial triples carry
// an inducing automaton.
class EffectSet {
public:
    EffectSet() = default;
    explicit EffectSet(const Game& g);  // trivial triples only

    std::size_t num_states() const { return q_; }
    std::size_t num_symbols() const { return k_; }
    const std::vector<Bitset>& minimal(int p, Symbol a) const { return min_[slot(p, a)]; }
    bool contains(int p, Symbol a, const Bitset& S) const;
    bool is_trivial(const EffectTriple& t) const;
    std::vector<EffectTriple> triples() const;  // minimal ones
    std::size_t size() const;

    // Non-trivial triple with S contained in `within`, smallest S in bit
    // order. Returns its index into inducing().
    std::optional<std::size_t> select(int p, Symbol a, const Bitset& within) const;
    const InducingAutomaton& inducing(std::size_t id) const { return inducing_[id].second; }
    const EffectTriple& inducing_triple(std::size_t id) const { return inducing_[id].first; }
    std::size_t num_inducing() const { return inducing_.size(); }

    void add(const EffectTriple& t, InducingAutomaton a);
    std::size_t strata = 0;  // rounds until the fixpoint

private:
    std::size_t slot(int p, Symbol a) const { return static_cast<std::size_t>(p) * k_ + static_cast<std::size_t>(a); }
    std::size_t q_ = 0, k_ = 0;
    std::vector<std::vector<Bitset>> min_;
    std::vector<std::pair<EffectTriple, InducingAutomaton>> inducing_;
};

// Subset automaton over the plain alphabet whose transitions are certified
// by effect triples. Only successors that are minimal unions of minimal
// triples are built unless all_supersets is set.
struct NeAutomaton {
    OnlineInstance instance;
    std::vector<Bitset> sets;  // per state
};
NeAutomaton build_ne(const Game& g, const EffectSet& E, bool all_supersets = false);

struct SynthesisOptions {
    std::size_t cap = 10;  // largest target accepted
    bool verify = true;    // re-check every admitted triple by playing its inducing automaton
};

EffectSet effect_fixpoint(const Game& g, const SynthesisOptions& opt = {});

// Strategy following D (a strategy of build_ne(g, E)) that calls whenever
// the transition of D cannot be realised by reading.
StrategyAutomaton build_top_automaton(const Game& g, const EffectSet& E, const NeAutomaton& ne, const Dfa& D);

// Inducing automaton for t from the triples of E; throws ScopeError when E
// cannot realise t.
InducingAutomaton build_inducing_automaton(const Game& g, const EffectTriple& t, const EffectSet& E);

// True iff the automaton, started on the single symbol t.a from t.p, always
// terminates in a state of t.S.
bool realises_triple(const Game& g, const EffectTriple& t, const StrategyAutomaton& a);

struct SynthesisResult {
    StrategyAutomaton strategy;
    EffectSet effects;
    NeAutomaton ne;
    PruneResult pruned;
};
SynthesisResult synthesize_weakly_dominant(const Game& g, const SynthesisOptions& opt = {});

}  // namespace cfgame

#include "cfgame/synthesis.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>

#include "cfgame/analysis.hpp"
#include "cfgame/kernels.hpp"

namespace cfgame {

// ---- effect sets ------------------------------------------------------------------

EffectSet::EffectSet(const Game& g) : q_(g.target().num_states()), k_(g.num_symbols()), min_(q_ * k_) {
    for (std::size_t p = 0; p < q_; ++p)
        for (std::size_t a = 0; a < k_; ++a) {
            Bitset s(q_);
            s.set(static_cast<std::size_t>(g.target().next(static_cast<int>(p), static_cast<Symbol>(a))));
            min_[p * k_ + a].push_back(s);
        }
}

bool EffectSet::contains(int p, Symbol a, const Bitset& S) const {
    for (auto& m : minimal(p, a))
        if (m.subset_of(S)) return true;
    return false;
}

bool EffectSet::is_trivial(const EffectTriple& t) const {
    // the first minimal set of every pair is the singleton of the read successor
    const Bitset& read = min_[slot(t.p, t.a)].front();
    return read.subset_of(t.S);
}

std::vector<EffectTriple> EffectSet::triples() const {
    std::vector<EffectTriple> out;
    for (std::size_t p = 0; p < q_; ++p)
        for (std::size_t a = 0; a < k_; ++a)
            for (auto& m : min_[p * k_ + a]) out.push_back({static_cast<int>(p), static_cast<Symbol>(a), m});
    return out;
}

std::size_t EffectSet::size() const {
    std::size_t n = 0;
    for (auto& v : min_) n += v.size();
    return n;
}

std::optional<std::size_t> EffectSet::select(int p, Symbol a, const Bitset& within) const {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < inducing_.size(); ++i) {
        const EffectTriple& t = inducing_[i].first;
        if (t.p != p || t.a != a || !t.S.subset_of(within)) continue;
        if (!best || t.S < inducing_[*best].first.S) best = i;
    }
    return best;
}

void EffectSet::add(const EffectTriple& t, InducingAutomaton a) {
    auto& v = min_[slot(t.p, t.a)];
    // keep the read singleton first; drop sets the new one makes redundant
    std::vector<Bitset> kept{v.front()};
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!t.S.subset_of(v[i])) kept.push_back(v[i]);
    if (!v.front().subset_of(t.S)) kept.push_back(t.S);
    v = std::move(kept);
    inducing_.emplace_back(t, std::move(a));
}

// ---- subset layers ----------------------------------------------------------------

namespace {

// Online instance whose states pair a set of possible target states with a
// state of an automaton for the word being consumed (x = -1 when absent).
struct Layer {
    OnlineInstance instance;
    std::vector<Bitset> sets;
    std::vector<int> x;
};

std::vector<Bitset> successor_sets(const EffectSet& E, const Bitset& from, Symbol b, bool all_supersets) {
    std::size_t n = E.num_states();
    std::vector<Bitset> cur{Bitset(n)};
    from.for_each([&](std::size_t p) {
        std::vector<Bitset> next;
        for (auto& m : E.minimal(static_cast<int>(p), b))
            for (auto& c : cur) {
                Bitset u = c;
                u |= m;
                if (std::find(next.begin(), next.end(), u) == next.end()) next.push_back(std::move(u));
            }
        cur = std::move(next);
    });
    std::vector<Bitset> out;
    if (all_supersets) {
        if (n > 20) throw ScopeError("all-supersets subset automaton limited to 20 target states");
        for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) {
            Bitset s(n);
            for (std::size_t i = 0; i < n; ++i)
                if ((m >> i) & 1u) s.set(i);
            if (std::any_of(cur.begin(), cur.end(), [&](const Bitset& c) { return c.subset_of(s); })) out.push_back(s);
        }
    } else {
        for (std::size_t i = 0; i < cur.size(); ++i) {
            bool dominated = false;
            for (std::size_t j = 0; j < cur.size() && !dominated; ++j)
                dominated = j != i && cur[j].subset_of(cur[i]) && !(cur[j] == cur[i]);
            if (!dominated) out.push_back(cur[i]);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// word == nullptr: plain subset automaton from {p0}.
Layer build_layer(const Game& g, const EffectSet& E, int p0, const Dfa* word, bool all_supersets) {
    std::size_t n = E.num_states(), k = g.num_symbols();
    Layer L;
    Nfa nfa(0, k);
    std::map<std::pair<std::vector<int>, int>, int> id;
    auto intern = [&](const Bitset& s, int x) {
        auto key = std::make_pair(s.members(), x);
        auto it = id.find(key);
        if (it != id.end()) return it->second;
        int q = nfa.add_state();
        id.emplace(std::move(key), q);
        L.sets.push_back(s);
        L.x.push_back(x);
        return q;
    };
    Bitset start(n);
    start.set(static_cast<std::size_t>(p0));
    nfa.add_initial(intern(start, word ? word->initial() : -1));
    for (std::size_t i = 0; i < L.sets.size(); ++i) {
        Bitset s = L.sets[i];
        int x = L.x[i];
        for (std::size_t b = 0; b < k; ++b) {
            int nx = word ? word->next(x, static_cast<Symbol>(b)) : -1;
            for (auto& t : successor_sets(E, s, static_cast<Symbol>(b), all_supersets))
                nfa.add_transition(static_cast<int>(i), static_cast<Symbol>(b), intern(t, nx));
        }
    }
    L.instance = OnlineInstance::from_nfa(std::move(nfa), g.alphabet());
    return L;
}

void set_layer_acceptance(Layer& L, const Dfa* word, const Bitset& allowed) {
    for (std::size_t i = 0; i < L.sets.size(); ++i) {
        bool acc = L.sets[i].subset_of(allowed) && (!word || word->accepting(L.x[i]));
        L.instance.nfa.set_accepting(static_cast<int>(i), acc);
    }
}

Dfa total_rule_dfa(const Game& g, Symbol a) {
    Dfa d = g.rule(a).dfa;
    d.complete();
    return d;
}

// ---- composite strategy automata ----------------------------------------------

enum Kind { Top, Sim, CallState, DeadState };
using Key = std::array<int, 4>;  // Top: q, I; Sim: I, triple id, inner state

struct Composite {
    Dfa dfa;
    std::vector<Key> keys;
};

// Strategy automaton over the history alphabet that follows the online
// strategy D over the layer, starting in target state q0 (state 0).
Composite compose(const Game& g, const EffectSet& E, const Layer& L, const Dfa& D, int q0) {
    std::size_t k = g.num_symbols(), hk = 2 * k;
    const Dfa& T = g.target();
    std::map<Key, int> id;
    Composite c;
    auto intern = [&](const Key& key) {
        auto it = id.find(key);
        if (it != id.end()) return it->second;
        int q = static_cast<int>(c.keys.size());
        id.emplace(key, q);
        c.keys.push_back(key);
        return q;
    };
    intern({Top, q0, D.initial(), 0});
    int call = intern({CallState, 0, 0, 0});
    int dead = intern({DeadState, 0, 0, 0});
    std::vector<std::vector<int>> delta;
    for (std::size_t i = 0; i < c.keys.size(); ++i) {
        Key key = c.keys[i];
        std::vector<int> row(hk, dead);
        if (key[0] == CallState) {
            std::fill(row.begin(), row.end(), call);
        } else if (key[0] == Top) {
            int q = key[1], I = key[2];
            for (std::size_t a = 0; a < k; ++a) {
                Symbol sa = static_cast<Symbol>(a);
                int I2 = D.next(I, sa);
                const Bitset& within = L.sets[static_cast<std::size_t>(I2)];
                int read = T.next(q, sa);
                if (!g.is_function(sa) || within.test(static_cast<std::size_t>(read))) {
                    row[a] = intern({Top, read, I2, 0});
                    continue;
                }
                auto t = E.select(q, sa, within);
                if (!t) throw std::logic_error("no effect triple realises a transition of the online strategy");
                row[a] = call;
                const InducingAutomaton& A = E.inducing(*t);
                int r = A.automaton.dfa().next(A.automaton.initial(), hat(sa, k));
                row[k + a] = intern({Sim, I2, static_cast<int>(*t), r});
            }
        } else if (key[0] == Sim) {
            const InducingAutomaton& A = E.inducing(static_cast<std::size_t>(key[2]));
            for (std::size_t x = 0; x < hk; ++x) {
                int r = A.automaton.dfa().next(key[3], static_cast<Symbol>(x));
                int q = A.partition[static_cast<std::size_t>(r)];
                row[x] = q >= 0 ? intern({Top, q, key[1], 0}) : intern({Sim, key[1], key[2], r});
            }
        }
        delta.push_back(std::move(row));
    }
    c.dfa = Dfa(c.keys.size(), hk, 0);
    for (std::size_t i = 0; i < c.keys.size(); ++i) {
        const Key& key = c.keys[i];
        for (std::size_t x = 0; x < hk; ++x) c.dfa.set_transition(static_cast<int>(i), static_cast<Symbol>(x), delta[i][x]);
        if (key[0] == CallState) c.dfa.set_accepting(static_cast<int>(i));
        if (key[0] == Sim)
            c.dfa.set_accepting(static_cast<int>(i),
                                E.inducing(static_cast<std::size_t>(key[2])).automaton.dfa().accepting(key[3]));
    }
    return c;
}

InducingAutomaton wrap_inducing(const Game& g, const EffectSet& E, const Layer& L, const Dfa& D, const Dfa& word,
                                const EffectTriple& t) {
    std::size_t k = g.num_symbols(), hk = 2 * k;
    Composite c = compose(g, E, L, D, t.p);
    std::size_t n = c.dfa.num_states();
    // 0: start, 1: call, 2: dead, then the composite shifted by 3
    Dfa d(n + 3, hk, 0);
    d.set_accepting(1);
    for (std::size_t x = 0; x < hk; ++x) {
        d.set_transition(0, static_cast<Symbol>(x), 2);
        d.set_transition(1, static_cast<Symbol>(x), 1);
        d.set_transition(2, static_cast<Symbol>(x), 2);
    }
    d.set_transition(0, t.a, 1);
    d.set_transition(0, hat(t.a, k), 3);
    InducingAutomaton A;
    A.partition.assign(n + 3, -1);
    for (std::size_t i = 0; i < n; ++i) {
        int s = static_cast<int>(i + 3);
        d.set_accepting(s, c.dfa.accepting(static_cast<int>(i)));
        for (std::size_t x = 0; x < hk; ++x)
            d.set_transition(s, static_cast<Symbol>(x), c.dfa.next(static_cast<int>(i), static_cast<Symbol>(x)) + 3);
        const Key& key = c.keys[i];
        // the replacement word is complete once the rule automaton accepts;
        // prefix-freeness makes this happen only at its end
        if (key[0] == Top && word.accepting(L.x[static_cast<std::size_t>(key[2])])) A.partition[i + 3] = key[1];
    }
    A.automaton = StrategyAutomaton(d, k, StrategyKind::General);
    return A;
}

struct Admission {
    bool admitted = false;
    Layer layer;
    PruneResult pruned;
};

Admission try_admit(const Game& g, Layer layer, const Dfa& word, const EffectTriple& t) {
    set_layer_acceptance(layer, &word, t.S);
    Admission r;
    r.pruned = prune_weakly_dominant(layer.instance);
    r.admitted = contains(g.rule(t.a).nfa, r.pruned.strategy.to_nfa()).included;
    r.layer = std::move(layer);
    return r;
}

void check_scope(const Game& g, const SynthesisOptions& opt) {
    if (!classify(g).prefix_free)
        throw ScopeError("synthesis needs a prefix-free game; apply the prefix-free transform first (cfgame transform --prefix-free)");
    if (g.target().num_states() > opt.cap)
        throw ScopeError("target has " + std::to_string(g.target().num_states()) + " states, above the synthesis cap of " +
                         std::to_string(opt.cap));
}

}  // namespace

NeAutomaton build_ne(const Game& g, const EffectSet& E, bool all_supersets) {
    Layer L = build_layer(g, E, g.target().initial(), nullptr, all_supersets);
    Bitset F(E.num_states());
    for (std::size_t q = 0; q < E.num_states(); ++q)
        if (g.target().accepting(static_cast<int>(q))) F.set(q);
    set_layer_acceptance(L, nullptr, F);
    return {std::move(L.instance), std::move(L.sets)};
}

bool realises_triple(const Game& g, const EffectTriple& t, const StrategyAutomaton& a) {
    Dfa T = g.target().with_initial(t.p);
    for (std::size_t q = 0; q < T.num_states(); ++q) T.set_accepting(static_cast<int>(q), t.S.test(q));
    return is_winning(g.with_target(T), a, Word{t.a});
}

InducingAutomaton build_inducing_automaton(const Game& g, const EffectTriple& t, const EffectSet& E) {
    if (!g.is_function(t.a)) throw ScopeError("inducing automata exist only for function symbols");
    Dfa word = total_rule_dfa(g, t.a);
    Admission adm = try_admit(g, build_layer(g, E, t.p, &word, false), word, t);
    if (!adm.admitted) throw ScopeError("effect triple is not realisable from the given triples");
    return wrap_inducing(g, E, adm.layer, adm.pruned.strategy, word, t);
}

EffectSet effect_fixpoint(const Game& g, const SynthesisOptions& opt) {
    check_scope(g, opt);
    EffectSet E(g);
    std::size_t n = E.num_states();
    std::vector<std::uint64_t> masks = kernels::masks_by_popcount(n);
    std::vector<std::pair<int, Symbol>> pairs;
    for (std::size_t p = 0; p < n; ++p)
        for (Symbol a : g.function_symbols()) pairs.emplace_back(static_cast<int>(p), a);
    for (;;) {
        ++E.strata;
        std::vector<std::vector<std::pair<EffectTriple, InducingAutomaton>>> found(pairs.size());
        kernels::parallel_for(pairs.size(), [&](std::size_t i) {
            auto [p, a] = pairs[i];
            Dfa word = total_rule_dfa(g, a);
            Layer base = build_layer(g, E, p, &word, false);
            for (std::uint64_t m : masks) {
                if (m == 0) continue;
                EffectTriple t{p, a, Bitset(n)};
                for (std::size_t j = 0; j < n; ++j)
                    if ((m >> j) & 1u) t.S.set(j);
                if (E.contains(p, a, t.S)) continue;
                if (std::any_of(found[i].begin(), found[i].end(), [&](const auto& f) { return f.first.S.subset_of(t.S); })) continue;
                Admission adm = try_admit(g, base, word, t);
                if (!adm.admitted) continue;
                InducingAutomaton A = wrap_inducing(g, E, adm.layer, adm.pruned.strategy, word, t);
                if (opt.verify && !realises_triple(g, t, A.automaton))
                    throw std::logic_error("inducing automaton does not realise its effect triple");
                found[i].emplace_back(std::move(t), std::move(A));
            }
        });
        bool added = false;
        for (auto& f : found)
            for (auto& [t, A] : f) {
                E.add(t, std::move(A));
                added = true;
            }
        if (!added) break;
    }
    return E;
}

StrategyAutomaton build_top_automaton(const Game& g, const EffectSet& E, const NeAutomaton& ne, const Dfa& D) {
    Layer L{ne.instance, ne.sets, std::vector<int>(ne.sets.size(), -1)};
    Composite c = compose(g, E, L, D, g.target().initial());
    return StrategyAutomaton(minimize(c.dfa), g.num_symbols(), StrategyKind::General);
}

SynthesisResult synthesize_weakly_dominant(const Game& g, const SynthesisOptions& opt) {
    SynthesisResult r;
    r.effects = effect_fixpoint(g, opt);
    r.ne = build_ne(g, r.effects);
    r.pruned = prune_weakly_dominant(r.ne.instance);
    r.strategy = build_top_automaton(g, r.effects, r.ne, r.pruned.strategy);
    return r;
}

}  // namespace cfgame

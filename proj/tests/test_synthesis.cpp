#include <doctest.h>

#include "cfgame/analysis.hpp"
#include "cfgame/generators.hpp"
#include "cfgame/synthesis.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace cfgame;

namespace {

Bitset set_of(std::size_t n, std::initializer_list<int> xs) {
    Bitset b(n);
    for (int x : xs) b.set(static_cast<std::size_t>(x));
    return b;
}

}  // namespace

TEST_CASE("synthesis refuses games that are not prefix-free") {
    Alphabet ab({"a", "b"});
    Game g(ab, {{0, parse_regex("b+bb", ab)}}, regex_to_dfa(parse_regex("bb", ab), 2));
    CHECK_THROWS_AS(effect_fixpoint(g), ScopeError);
    CHECK_THROWS_AS(synthesize_weakly_dominant(g), ScopeError);
}

TEST_CASE("synthesis refuses targets above the cap") {
    Game g = to_prefix_free(fixture("sandbox"));
    SynthesisOptions opt;
    opt.cap = 2;
    CHECK_THROWS_AS(synthesize_weakly_dominant(g, opt), ScopeError);
}

TEST_CASE("game without function symbols has only trivial triples") {
    Alphabet ab({"a", "b"});
    Game g(ab, {}, regex_to_dfa(parse_regex("ab", ab), 2));
    EffectSet E = effect_fixpoint(g);
    CHECK(E.size() == g.target().num_states() * 2);
    for (auto& t : E.triples()) CHECK(E.is_trivial(t));
    auto r = synthesize_weakly_dominant(g);
    CHECK(test::names(g, winning_set_upto(g, r.strategy, 3)) == test::words({"ab"}));
}

TEST_CASE("prefix-free sandbox: the call effect of a is admitted") {
    Game g = to_prefix_free(fixture("sandbox"));
    const Dfa& T = g.target();
    Symbol a = g.alphabet().index("a");
    int s = T.initial();
    int after = T.run(g.alphabet().parse("b$"), s);
    EffectSet E = effect_fixpoint(g);
    EffectTriple t{s, a, set_of(T.num_states(), {after})};
    CHECK(E.contains(s, a, t.S));
    CHECK_FALSE(E.is_trivial(t));

    auto id = E.select(s, a, t.S);
    REQUIRE(id);
    const InducingAutomaton& A = E.inducing(*id);
    CHECK(realises_triple(g, t, A.automaton));

    // replaying the only reply b$: the run ends in the partition of `after`
    // and no proper prefix of the history reaches a partition state
    std::size_t k = g.num_symbols();
    Word hist{hat(a, k), g.alphabet().index("b"), g.alphabet().index("$")};
    int q = A.automaton.initial();
    for (std::size_t i = 0; i < hist.size(); ++i) {
        q = A.automaton.dfa().next(q, hist[i]);
        if (i + 1 < hist.size()) CHECK(A.partition[static_cast<std::size_t>(q)] == -1);
    }
    CHECK(A.partition[static_cast<std::size_t>(q)] == after);
}

TEST_CASE("N_E with the call effect accepts a$c") {
    Game g = to_prefix_free(fixture("sandbox"));
    EffectSet E = effect_fixpoint(g);
    NeAutomaton ne = build_ne(g, E);
    CHECK(ne.instance.nfa.accepts(g.alphabet().parse("a$c")));
    EffectSet trivial(g);
    NeAutomaton plain = build_ne(g, trivial);
    CHECK_FALSE(plain.instance.nfa.accepts(g.alphabet().parse("a$c")));
    // trivial triples: the subset automaton is the target itself
    CHECK(equivalent(plain.instance.nfa, g.target().to_nfa()));
}

TEST_CASE("minimal-union successors give the same optimum as all supersets") {
    Game g = to_prefix_free(fixture("sandbox"));
    EffectSet E = effect_fixpoint(g);
    auto small = prune_weakly_dominant(build_ne(g, E).instance);
    auto full_ne = build_ne(g, E, true);
    auto full = prune_weakly_dominant(full_ne.instance);
    CHECK(equivalent(small.strategy.to_nfa(), full.strategy.to_nfa()));
}

TEST_CASE("prefix-free sandbox: synthesized strategy beats the two introduction strategies") {
    Game g = to_prefix_free(fixture("sandbox"));
    auto r = synthesize_weakly_dominant(g);
    auto won = winning_set_upto(g, r.strategy, 4);
    Symbol a = g.alphabet().index("a");
    for (auto& spec : {StronglyRegularSpec{}, StronglyRegularSpec{{{g.target().initial(), a}}}}) {
        auto other = winning_set_upto(g, strongly_regular_automaton(g, spec), 4);
        CHECK(oracle::compare_word_sets(won, other) >= 0);
    }
    auto best = oracle::best_truncated_win_set(g, 4, 6);
    CHECK(oracle::compare_word_sets(won, best) >= 0);
}

TEST_CASE("synthesized strategy agrees with its online strategy") {
    Game g = to_prefix_free(fixture("sandbox"));
    auto r = synthesize_weakly_dominant(g);
    auto online = online_win_set(r.ne.instance, r.pruned.strategy, 4);
    auto won = winning_set_upto(g, r.strategy, 4);
    for (auto& w : online) CHECK(std::binary_search(won.begin(), won.end(), w, shortlex_less));
}

TEST_CASE("prefix-free G1 reaches the brute-force optimum") {
    Game g = to_prefix_free(fixture("g1-recursive"));
    auto r = synthesize_weakly_dominant(g);
    auto won = winning_set_upto(g, r.strategy, 6);
    auto best = oracle::best_truncated_win_set(g, 6, 8);
    CHECK(oracle::compare_word_sets(won, best) >= 0);
    CHECK(!won.empty());
}

#include <doctest.h>

#include "cfgame/analysis.hpp"
#include "cfgame/generators.hpp"
#include "test_util.hpp"

using namespace cfgame;

TEST_CASE("fixture facts") {
    Game g2 = fixture("g2-regular-not-sreg");
    const Alphabet& ab = g2.alphabet();
    CHECK(test::names(g2, enumerate_upto(g2.rule(ab.index("d")).dfa, 4)) == test::words({"bad"}));
    Game c2 = fixture("g2c-undominated");
    CHECK(test::names(c2, enumerate_upto(c2.target(), 5)) == test::words({"bbc", "bcc", "cbc", "ccc"}));
    CHECK_THROWS_AS(fixture("nope"), InputError);
    CHECK(fixture_names().size() == 5);
}

TEST_CASE("CNF parsing") {
    Cnf f = parse_cnf("1,2,-3; -1,-1,2");
    CHECK(f.num_vars == 3);
    CHECK(f.clauses.size() == 2);
    CHECK(parse_cnf(cnf_to_string(f)).clauses == f.clauses);
    CHECK_THROWS_AS(parse_cnf("1,2"), InputError);
    CHECK_THROWS_AS(parse_cnf("1,0,2"), InputError);
    CHECK_THROWS_AS(parse_cnf("1,x,2"), InputError);
}

TEST_CASE("3SAT instances") {
    SatInstance one = from_3sat(parse_cnf("1,1,1"));
    CHECK(exists_winning_sreg(one.game, one.word).spec);
    SatInstance contra = from_3sat(parse_cnf("1,1,1;-1,-1,-1"));
    CHECK_FALSE(exists_winning_sreg(contra.game, contra.word).spec);

    for (auto text : {"1,1,1", "1,-2,2;-1,2,2", "1,2,-2;-1,-1,-1;2,2,1"}) {
        SatInstance inst = from_3sat(parse_cnf(text));
        Classification c = classify(inst.game);
        CHECK(c.non_recursive);
        CHECK(c.finite_rules);
        CHECK(c.prefix_free);
        // the constructed target is already minimal
        CHECK(determinize_minimize(inst.game.target().to_nfa()).num_states() == inst.game.target().num_states());
        CHECK(inst.game.notices().empty());
    }
}

TEST_CASE("universality instances") {
    Nfa all(1, 2);
    all.add_initial(0);
    all.set_accepting(0);
    all.add_transition(0, 0, 0);
    all.add_transition(0, 1, 0);
    CHECK(brute_force_universal(all));
    UniversalityInstance u = from_nfa_universality(all);
    CHECK(is_dominated(u.game, strongly_regular_automaton(u.game, u.first), strongly_regular_automaton(u.game, u.second))
              .dominated);

    // s, b, c: s-0->b, s-0->c, b-0->b, b-1->c; s and b accepting
    Nfa fig(3, 2);
    fig.add_initial(0);
    fig.set_accepting(0);
    fig.set_accepting(1);
    fig.add_transition(0, 0, 1);
    fig.add_transition(0, 0, 2);
    fig.add_transition(1, 0, 1);
    fig.add_transition(1, 1, 2);
    CHECK_FALSE(brute_force_universal(fig));
    UniversalityInstance v = from_nfa_universality(fig);
    CHECK_FALSE(v.fixed_negative);
    StrategyAutomaton a2 = strongly_regular_automaton(v.game, v.second);
    CHECK_FALSE(is_dominated(v.game, strongly_regular_automaton(v.game, v.first), a2).dominated);
    CHECK(v.game.target().num_states() == 4);
    Symbol zero = v.game.alphabet().index("0"), one = v.game.alphabet().index("1");
    auto won = winning_set_upto(v.game, a2, 2);
    for (auto& w : all_words_upto(v.game.num_symbols(), 2)) {
        bool binary = std::all_of(w.begin(), w.end(), [&](Symbol x) { return x == zero || x == one; });
        bool in = std::binary_search(won.begin(), won.end(), w, shortlex_less);
        CHECK(in == !binary);
    }

    Nfa no_eps(1, 2);
    no_eps.add_initial(0);
    UniversalityInstance neg = from_nfa_universality(no_eps);
    CHECK(neg.fixed_negative);
    CHECK_FALSE(is_dominated(neg.game, strongly_regular_automaton(neg.game, neg.first),
                             strongly_regular_automaton(neg.game, neg.second))
                    .dominated);
}

TEST_CASE("random online instances are total and deterministic per seed") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        OnlineInstance a = random_online_instance(4, 2, 0.3, seed), b = random_online_instance(4, 2, 0.3, seed);
        CHECK(online_instance_to_json(a) == online_instance_to_json(b));
        for (int q = 0; q < 4; ++q)
            for (Symbol x = 0; x < 2; ++x) CHECK_FALSE(a.nfa.successors(q, x).empty());
    }
}

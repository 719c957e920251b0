#include <doctest.h>

#include "cfgame/analysis.hpp"
#include "cfgame/generators.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace cfgame;

namespace {

std::string data_file(const std::string& rel) { return std::string(CFGAME_DATA_DIR) + "/" + rel; }

RandomGameParams small_params(std::uint64_t seed) {
    RandomGameParams p;
    p.alphabet_size = 2 + seed % 2;
    p.target_states = 2 + seed % 3;
    p.max_rule_words = 2;
    p.max_word_len = 3;
    return p;
}

}  // namespace

TEST_CASE("game files: loading, rejection and round trip") {
    Game sandbox = load_game(data_file("games/sandbox.json"));
    CHECK(sandbox.function_symbols() == std::vector<Symbol>{sandbox.alphabet().index("a")});
    CHECK(test::names(sandbox, enumerate_upto(sandbox.target(), 4)) == test::words({"ab", "bc"}));

    json bad = game_to_json(sandbox);
    bad["rules"]["a"] = "b*";
    CHECK_THROWS_AS(game_from_json(bad), InputError);
    json unknown = game_to_json(sandbox);
    unknown["rules"]["z"] = "b";
    CHECK_THROWS_AS(game_from_json(unknown), InputError);

    for (auto& name : fixture_names()) {
        Game g = fixture(name);
        Game back = game_from_json(game_to_json(g));
        CHECK(game_to_json(back) == game_to_json(g));
        CHECK(back.target() == g.target());
        CHECK(game_to_json(load_game(data_file("games/" + name + ".json"))) == game_to_json(g));
    }
}

TEST_CASE("a non-minimal target is minimized with a notice") {
    Alphabet ab({"a", "b"});
    // two equivalent accepting states
    Dfa t(3, 2);
    t.set_accepting(1);
    t.set_accepting(2);
    for (int q = 0; q < 3; ++q) {
        t.set_transition(q, 0, q == 0 ? 1 : 2);
        t.set_transition(q, 1, q == 0 ? 0 : (q == 1 ? 2 : 1));
    }
    Game g(ab, {}, t);
    CHECK(g.target().num_states() == 2);
    CHECK_FALSE(g.notices().empty());
}

TEST_CASE("classification of the fixtures") {
    CHECK_FALSE(classify(fixture("g1-recursive")).non_recursive);
    Classification c = classify(fixture("g2c-undominated"));
    CHECK(c.non_recursive);
    CHECK(c.finite_target);
    CHECK(classify(to_prefix_free(fixture("g1-recursive"))).prefix_free);
    for (auto& name : fixture_names()) CHECK(classify(fixture(name)).prefix_free);
    Alphabet ab({"a", "b"});
    Game g(ab, {{0, parse_regex("b+bb", ab)}}, regex_to_dfa(parse_regex("bb", ab), 2));
    CHECK_FALSE(classify(g).prefix_free);
    CHECK(classify(to_prefix_free(g)).prefix_free);
}

TEST_CASE("prefix-free transform of the sandbox") {
    Game g = to_prefix_free(fixture("sandbox"));
    const Alphabet& ab = g.alphabet();
    CHECK(ab.names().back() == "$");
    CHECK(test::names(g, enumerate_upto(g.rule(ab.index("a")).dfa, 3)) == test::words({"b$"}));
    CHECK(g.target().accepts(ab.parse("a$b")));
    CHECK(g.target().accepts(ab.parse("$$bc$")));
    CHECK_FALSE(g.target().accepts(ab.parse("a$c")));
    CHECK_THROWS_AS(to_prefix_free(g), InputError);
}

TEST_CASE("plays from the introduction and the recursive game") {
    Game g = fixture("sandbox");
    auto st = fixture_strategies("sandbox", g);
    Play p = run_play(g, st.at("read-all"), romeo_shortlex(g), g.alphabet().parse("ab"));
    CHECK(p.outcome == Outcome::WinJuliet);
    CHECK(g.alphabet().format(p.final_string) == "ab");
    Play q = run_play(g, st.at("call-initial-a"), romeo_table({{0, Word{1}}}), g.alphabet().parse("ac"));
    CHECK(q.outcome == Outcome::WinJuliet);
    CHECK(g.alphabet().format(q.final_string) == "bc");
    auto conf = q.configurations();
    CHECK(conf.size() == q.steps.size() + 1);
    CHECK(conf.back().remaining.empty());
    CHECK(format_history(conf.back().history, g.alphabet()) == "^a b c");

    Game g1 = fixture("g1-recursive");
    auto s1 = fixture_strategies("g1-recursive", g1);
    Play t = run_play(g1, s1.at("always-call"), romeo_table({{0, Word{0, 0}}}), Word{0}, 50);
    CHECK(t.outcome == Outcome::Truncated);
    CHECK(run_play(g1, s1.at("read-all"), romeo_shortlex(g1), Word{0}).outcome == Outcome::WinRomeo);
}

TEST_CASE("plays reject replies outside the rule") {
    Game g = fixture("sandbox");
    auto st = fixture_strategies("sandbox", g);
    CHECK_THROWS_AS(run_play(g, st.at("call-initial-a"), romeo_table({{0, Word{2}}}), Word{0, 2}), ProtocolError);
    CHECK_THROWS_AS(run_play(g, st.at("call-initial-a"), romeo_scripted({}), Word{0, 2}), ProtocolError);
}

TEST_CASE("strongly regular automata") {
    for (auto& name : fixture_names()) {
        Game g = fixture(name);
        StrategyAutomaton empty = strongly_regular_automaton(g, {});
        CHECK(empty.num_states() == g.target().num_states() + 1);
        CHECK(empty.kind() == StrategyKind::StronglyRegular);
        // the empty spec never calls, so it wins exactly on the target
        CHECK(winning_set_upto(g, empty, 3) == enumerate_upto(g.target(), 3));
    }
}

TEST_CASE("strategy JSON round trip for every kind") {
    Game g = fixture("g2-regular-not-sreg");
    auto st = fixture_strategies("g2-regular-not-sreg", g);
    StronglyRegularSpec spec{{{0, g.alphabet().index("c")}, {1, g.alphabet().index("a")}}};
    json sj = spec_to_json(spec, g);
    CHECK(spec_from_json(sj, g).reroutes == spec.reroutes);
    std::vector<StrategyAutomaton> all{st.at("fixture"), strongly_regular_automaton(g, spec),
                                       strategy_from_json(sj, g)};
    for (auto& s : all) {
        StrategyAutomaton back = strategy_from_json(strategy_to_json(s, g), g);
        CHECK(winning_set_upto(g, back, 4) == winning_set_upto(g, s, 4));
    }
    json forgetful = dfa_to_json(st.at("fixture").dfa(), Alphabet(history_labels(g.alphabet())));
    forgetful["kind"] = "nonsense";
    CHECK_THROWS_AS(strategy_from_json(forgetful, g), InputError);
}

TEST_CASE("brute force needs finite rules") {
    Game g1 = fixture("g1-recursive");
    Alphabet ab({"a", "b"});
    Game inf(ab, {{0, parse_regex("bb*", ab)}}, regex_to_dfa(parse_regex("b*", ab), 2));
    CHECK_THROWS_AS(brute_force_table(inf, strongly_regular_automaton(inf, {})), ScopeError);
    CHECK_NOTHROW(brute_force_table(g1, strongly_regular_automaton(g1, {})));
}

TEST_CASE("explicit play explorer agrees with the brute-force table and the decision procedure") {
    std::size_t games = 0;
    for (std::uint64_t seed = 0; games < 120; ++seed) {
        RandomGameParams p = small_params(seed);
        p.non_recursive = true;
        Game g = random_game(p, seed);
        ++games;
        StrategyAutomaton s = seed % 3 == 0   ? random_general_strategy(g, 3, seed)
                              : seed % 3 == 1 ? random_forgetful_strategy(g, 3, seed)
                                              : strongly_regular_automaton(g, random_sreg_spec(g, 0.5, seed));
        BruteForceTable t = brute_force_table(g, s);
        for (auto& w : all_words_upto(g.num_symbols(), 4)) {
            auto e = oracle::explore_plays(g, s, w, g.num_symbols() + 1);
            REQUIRE(e != oracle::Explored::Diverges);
            bool win = e == oracle::Explored::Win;
            REQUIRE(is_winning(g, s, w) == win);
            REQUIRE((brute_force_outcome(g, s, t, w) == BruteOutcome::Win) == win);
        }
    }
}

TEST_CASE("random generator determinism and constraints") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        RandomGameParams p = small_params(seed);
        p.prefix_free = seed % 2 == 0;
        p.non_recursive = seed % 4 == 0;
        Game a = random_game(p, seed), b = random_game(p, seed);
        CHECK(game_to_json(a) == game_to_json(b));
        Classification c = classify(a);
        CHECK(c.finite_rules);
        if (p.prefix_free) CHECK(c.prefix_free);
        if (p.non_recursive) CHECK(c.non_recursive);
        CHECK_NOTHROW(brute_force_table(a, strongly_regular_automaton(a, {})));
    }
    auto q = parse_random_params("alphabet=2,states=5,prefix-free=1");
    CHECK(q.alphabet_size == 2);
    CHECK(q.target_states == 5);
    CHECK(q.prefix_free);
    CHECK_THROWS_AS(parse_random_params("colour=3"), InputError);
}

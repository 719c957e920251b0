#include <doctest.h>

#include "cfgame/analysis.hpp"
#include "cfgame/generators.hpp"
#include "cfgame/synthesis.hpp"
#include "test_util.hpp"

using namespace cfgame;
using test::words;

TEST_CASE("sandbox fixture has one rule a->b") {
    Game g = fixture("sandbox");
    CHECK(g.function_symbols() == std::vector<Symbol>{g.alphabet().index("a")});
    CHECK(test::language(g.target(), g.alphabet(), 3) == words({"ab", "bc"}));
}

TEST_CASE("g2c target language") {
    Game g = fixture("g2c-undominated");
    CHECK(test::language(g.target(), g.alphabet(), 5) == words({"bbc", "bcc", "cbc", "ccc"}));
}

TEST_CASE("g2c fixture strategy winning set") {
    Game g = fixture("g2c-undominated");
    auto s = fixture_strategies("g2c-undominated", g).at("fixture");
    CHECK(test::names(g, winning_set_upto(g, s, 3)) == words({"a", "bb", "bcc", "cbc", "ccc"}));
}

TEST_CASE("g1c fixture strategy winning set") {
    Game g = fixture("g1c-undominated");
    auto s = fixture_strategies("g1c-undominated", g).at("fixture");
    CHECK(test::names(g, winning_set_upto(g, s, 1)) == words({"a", "b", "c", "e"}));
    // nothing longer starting with a is won
    for (auto& w : test::names(g, winning_set_upto(g, s, 3))) CHECK((w.size() == 1 || w[0] != 'a'));
}

TEST_CASE("g1 strategy that calls until its first call wins every nonempty word") {
    Game g = fixture("g1-recursive");
    auto st = fixture_strategies("g1-recursive", g);
    CHECK(test::names(g, winning_set_upto(g, st.at("call-until-first-call"), 4)) == words({"a", "aa", "aaa", "aaaa"}));
    CHECK(winning_set_upto(g, st.at("always-call"), 4).empty());
    CHECK(test::names(g, winning_set_upto(g, st.at("read-all"), 3)) == words({"aa", "aaa"}));
}

TEST_CASE("g2 fixture strategy wins everything") {
    Game g = fixture("g2-regular-not-sreg");
    auto s = fixture_strategies("g2-regular-not-sreg", g).at("fixture");
    CHECK(winning_set_upto(g, s, 4).size() == 1 + 4 + 16 + 64 + 256);
    Dfa w = winning_dfa(g, s);
    CHECK(w.num_states() == 1);
    CHECK(w.accepting(0));
}

TEST_CASE("sandbox strategies from the introduction") {
    Game g = fixture("sandbox");
    auto st = fixture_strategies("sandbox", g);
    CHECK(is_winning(g, st.at("read-all"), g.alphabet().parse("ab")));
    CHECK(is_winning(g, st.at("call-initial-a"), g.alphabet().parse("ac")));
    CHECK_FALSE(is_winning(g, st.at("read-all"), g.alphabet().parse("ac")));
}

TEST_CASE("sandbox: shortlex prefers reading the initial a over calling it") {
    Game g = fixture("sandbox");
    auto st = fixture_strategies("sandbox", g);
    auto c = compare_strategies(g, st.at("read-all"), st.at("call-initial-a"));
    CHECK(c.relation == SetRelation::Incomparable);
    CHECK(c.shortlex == Order::Greater);
    REQUIRE(c.only_first);
    CHECK(g.alphabet().format(*c.only_first) == "ab");
    auto r = synthesize_weakly_dominant(g);
    CHECK(test::names(g, winning_set_upto(g, r.strategy, 3)) == test::words({"aa", "ab", "bc"}));
}

#include <doctest.h>

#include "cfgame/generators.hpp"
#include "cfgame/online.hpp"

using namespace cfgame;

namespace {

// s branches on a into p and r. Full successor languages: L(p) = {ba, bbb},
// L(r) = {ba, bb}, but from r only one of ba and bb can be won.
OnlineInstance trap_instance() {
    Alphabet ab({"a", "b"});
    enum { S, P, R, P1, ACC, P2, R1, R2, SINK, N };
    Nfa n(N, 2);
    n.add_initial(S);
    n.set_accepting(ACC);
    auto e = [&](int q, const char* a, int p) { n.add_transition(q, ab.index(a), p); };
    e(S, "a", P);
    e(S, "a", R);
    e(S, "b", SINK);
    e(P, "b", P1);
    e(P, "a", SINK);
    e(P1, "a", ACC);
    e(P1, "b", P2);
    e(P2, "b", ACC);
    e(P2, "a", SINK);
    e(R, "b", R1);
    e(R, "b", R2);
    e(R, "a", SINK);
    e(R1, "a", ACC);
    e(R1, "b", SINK);
    e(R2, "b", ACC);
    e(R2, "a", SINK);
    for (int q : {ACC, SINK}) {
        e(q, "a", SINK);
        e(q, "b", SINK);
    }
    return OnlineInstance::from_nfa(n, ab);
}

std::vector<Word> parse_all(const Alphabet& ab, std::initializer_list<const char*> ws) {
    std::vector<Word> out;
    for (auto w : ws) out.push_back(ab.parse(w));
    return out;
}

}  // namespace

TEST_CASE("non-total instance is rejected") {
    Nfa n(2, 1);
    n.add_initial(0);
    n.add_transition(0, 0, 1);
    CHECK_THROWS_AS(OnlineInstance::from_nfa(n, Alphabet({"a"})), InputError);
}

TEST_CASE("deterministic instance is returned unchanged") {
    Nfa n(2, 2);
    n.add_initial(0);
    n.set_accepting(1);
    n.add_transition(0, 0, 1);
    n.add_transition(0, 1, 0);
    n.add_transition(1, 0, 1);
    n.add_transition(1, 1, 0);
    auto inst = OnlineInstance::from_nfa(n, Alphabet({"a", "b"}));
    auto r = prune_weakly_dominant(inst);
    CHECK(r.removed == 0);
    CHECK(r.pruned.num_transitions() == n.num_transitions());
    CHECK(online_win_set(inst, r.strategy, 3) == enumerate_upto(n, 3));
}

TEST_CASE("edge to a state with a smaller language is removed") {
    Nfa n(3, 1);
    n.add_initial(0);
    n.set_accepting(1);
    n.add_transition(0, 0, 1);
    n.add_transition(0, 0, 2);
    n.add_transition(1, 0, 1);
    n.add_transition(2, 0, 2);
    auto r = prune_weakly_dominant(OnlineInstance::from_nfa(n, Alphabet({"a"})));
    CHECK(r.pruned.successors(0, 0) == std::vector<int>{1});
}

TEST_CASE("comparing full successor languages picks the wrong branch") {
    auto inst = trap_instance();
    auto r = prune_weakly_dominant(inst);
    auto best = brute_force_best_online(inst, 4);
    CHECK(best == parse_all(inst.alphabet, {"aba", "abbb"}));
    CHECK(online_win_set(inst, r.strategy, 4) == best);
    CHECK(nondeterministic_implies_universal(r.pruned));

    Nfa full = prune_full_language(inst);
    CHECK(full.successors(0, inst.alphabet.index("a")) == std::vector<int>{2});
    auto d = diagnose_bounded(inst, 4);
    CHECK(d.agrees());
}

TEST_CASE("table strategy and automaton strategy agree") {
    auto inst = trap_instance();
    auto r = prune_weakly_dominant(inst);
    OnlineTable t;
    for (auto& w : all_words_upto(2, 4)) t[w] = r.strategy.run(w);
    CHECK(online_win_set(inst, t, 4) == online_win_set(inst, r.strategy, 4));
    t.erase(inst.alphabet.parse("bbbb"));
    CHECK_THROWS_AS(online_win_set(inst, t, 4), InputError);
}

TEST_CASE("pruned strategy matches the exhaustive optimum on random instances") {
    for (std::uint64_t seed = 0; seed < 80; ++seed) {
        auto inst = random_online_instance(1 + seed % 3, 2, 0.45, seed);
        auto r = prune_weakly_dominant(inst);
        CAPTURE(seed);
        CHECK(online_win_set(inst, r.strategy, 3) == brute_force_best_online(inst, 3));
        CHECK(nondeterministic_implies_universal(r.pruned));
        CHECK(equivalent(r.pruned, r.strategy.to_nfa()));
        CHECK(diagnose_bounded(inst, 4).agrees());
        // pruning only removes transitions
        for (std::size_t q = 0; q < inst.nfa.num_states(); ++q)
            for (Symbol a : {0, 1})
                for (int p : r.pruned.successors(static_cast<int>(q), a)) {
                    const auto& s = inst.nfa.successors(static_cast<int>(q), a);
                    CHECK(std::find(s.begin(), s.end(), p) != s.end());
                }
    }
}

TEST_CASE("larger random instances agree with the exhaustive optimum") {
    for (std::uint64_t seed = 100; seed < 130; ++seed) {
        auto inst = random_online_instance(4, 2, 0.35, seed);
        auto r = prune_weakly_dominant(inst);
        CAPTURE(seed);
        CHECK(online_win_set(inst, r.strategy, 3) == brute_force_best_online(inst, 3));
        CHECK(nondeterministic_implies_universal(r.pruned));
    }
}

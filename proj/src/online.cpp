#include "cfgame/online.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "cfgame/kernels.hpp"

namespace cfgame {

namespace {

using Kept = std::vector<std::vector<std::vector<int>>>;  // [q][a] -> successors

Kept kept_of(const Nfa& n) {
    Kept k(n.num_states(), std::vector<std::vector<int>>(n.alphabet_size()));
    for (std::size_t q = 0; q < n.num_states(); ++q)
        for (std::size_t a = 0; a < n.alphabet_size(); ++a) k[q][a] = n.successors(static_cast<int>(q), static_cast<Symbol>(a));
    return k;
}

Nfa nfa_of(const Nfa& base, const Kept& k) {
    Nfa n(base.num_states(), base.alphabet_size());
    for (int q : base.initial()) n.add_initial(q);
    for (std::size_t q = 0; q < base.num_states(); ++q) {
        n.set_accepting(static_cast<int>(q), base.accepting(static_cast<int>(q)));
        for (std::size_t a = 0; a < base.alphabet_size(); ++a)
            for (int p : k[q][a]) n.add_transition(static_cast<int>(q), static_cast<Symbol>(a), p);
    }
    return n;
}

Bitset single(const Nfa& n, int q) {
    Bitset b(n.num_states());
    b.set(static_cast<std::size_t>(q));
    return b;
}

OrderResult compare_states(const Nfa& n, int p, int r, std::optional<std::size_t> max_len) {
    return compare_shortlex_from(n, single(n, p), n, single(n, r), max_len);
}

// Keeps, for every (q, a), the successors whose languages truncated to
// `level` are shortlex-maximal. Returns the number of removed transitions.
std::size_t prune_level(const Nfa& base, Kept& kept, std::size_t level) {
    Nfa cur = nfa_of(base, kept);
    std::size_t k = base.alphabet_size();
    std::vector<std::vector<int>> next(kept.size() * k);
    kernels::parallel_for(kept.size() * k, [&](std::size_t i) {
        const auto& succ = kept[i / k][i % k];
        if (succ.size() < 2) {
            next[i] = succ;
            return;
        }
        int best = succ.front();
        for (std::size_t j = 1; j < succ.size(); ++j)
            if (compare_states(cur, succ[j], best, level).order == Order::Greater) best = succ[j];
        for (int p : succ)
            if (p == best || compare_states(cur, p, best, level).order == Order::Equal) next[i].push_back(p);
    });
    std::size_t removed = 0;
    for (std::size_t i = 0; i < next.size(); ++i) {
        removed += kept[i / k][i % k].size() - next[i].size();
        kept[i / k][i % k] = std::move(next[i]);
    }
    return removed;
}

// Smallest length of a word telling two kept siblings apart, if any.
std::optional<std::size_t> next_difference(const Nfa& base, const Kept& kept) {
    Nfa cur = nfa_of(base, kept);
    std::optional<std::size_t> best;
    for (auto& row : kept)
        for (auto& succ : row)
            for (std::size_t j = 1; j < succ.size(); ++j) {
                auto r = compare_states(cur, succ.front(), succ[j], best);
                if (r.witness && (!best || r.witness->size() < *best)) best = r.witness->size();
            }
    return best;
}

struct LevelRun {
    Kept kept;
    std::vector<std::size_t> levels;
    std::size_t removed = 0;
};

LevelRun run_levels(const Nfa& base, std::optional<std::size_t> max_level) {
    LevelRun run{kept_of(base), {}, 0};
    std::size_t level = 0;
    while (!max_level || level <= *max_level) {
        std::size_t r = prune_level(base, run.kept, level);
        if (r) run.levels.push_back(level);
        run.removed += r;
        auto d = next_difference(base, run.kept);
        if (!d) break;
        level = *d;
    }
    return run;
}

Dfa tie_break(const Nfa& base, const Kept& kept) {
    Dfa d(base.num_states(), base.alphabet_size(), base.initial().front());
    for (std::size_t q = 0; q < base.num_states(); ++q) {
        d.set_accepting(static_cast<int>(q), base.accepting(static_cast<int>(q)));
        for (std::size_t a = 0; a < base.alphabet_size(); ++a)
            d.set_transition(static_cast<int>(q), static_cast<Symbol>(a), kept[q][a].front());
    }
    return d;
}

// -1, 0, 1 as a is shortlex-smaller, equal, greater than b (sets sorted in shortlex order)
int compare_word_sets(const std::vector<Word>& a, const std::vector<Word>& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) {
            ++i;
            ++j;
            continue;
        }
        return shortlex_less(a[i], b[j]) ? 1 : -1;
    }
    if (i < a.size()) return 1;
    if (j < b.size()) return -1;
    return 0;
}

std::vector<Word> language_from(const Nfa& n, int q, std::size_t max_len) {
    Nfa fresh(n.num_states(), n.alphabet_size());
    fresh.add_initial(q);
    for (std::size_t p = 0; p < n.num_states(); ++p) {
        fresh.set_accepting(static_cast<int>(p), n.accepting(static_cast<int>(p)));
        for (std::size_t a = 0; a < n.alphabet_size(); ++a)
            for (int t : n.successors(static_cast<int>(p), static_cast<Symbol>(a)))
                fresh.add_transition(static_cast<int>(p), static_cast<Symbol>(a), t);
    }
    return enumerate_upto(fresh, max_len);
}

}  // namespace

OnlineInstance OnlineInstance::from_nfa(Nfa n, Alphabet ab) {
    if (n.initial().size() != 1) throw InputError("online instance needs exactly one initial state");
    if (n.alphabet_size() != ab.size()) throw InputError("online instance alphabet size mismatch");
    for (std::size_t q = 0; q < n.num_states(); ++q)
        for (std::size_t a = 0; a < n.alphabet_size(); ++a)
            if (n.successors(static_cast<int>(q), static_cast<Symbol>(a)).empty())
                throw InputError("online instance is not total: state " + std::to_string(q) + " has no transition on '" +
                                 ab.name(static_cast<Symbol>(a)) + "'");
    return {std::move(ab), std::move(n)};
}

OnlineInstance load_online_instance(const json& j) {
    if (!j.contains("alphabet")) throw InputError("online instance needs an \"alphabet\" field");
    Alphabet ab(j.at("alphabet").get<std::vector<std::string>>());
    return OnlineInstance::from_nfa(nfa_from_json(j, ab), ab);
}

json online_instance_to_json(const OnlineInstance& inst) {
    json j = nfa_to_json(inst.nfa, inst.alphabet);
    j["alphabet"] = inst.alphabet.names();
    j["initial"] = inst.initial();
    j["nondeterministic"] = true;
    return j;
}

PruneResult prune_weakly_dominant(const OnlineInstance& inst) {
    LevelRun run = run_levels(inst.nfa, std::nullopt);
    PruneResult r;
    r.pruned = nfa_of(inst.nfa, run.kept);
    r.strategy = tie_break(inst.nfa, run.kept);
    r.levels = std::move(run.levels);
    r.removed = run.removed;
    return r;
}

bool nondeterministic_implies_universal(const Nfa& n) {
    std::set<std::vector<int>> seen;
    std::vector<Bitset> queue{n.initial_set()};
    seen.insert(queue.front().members());
    for (std::size_t i = 0; i < queue.size(); ++i) {
        bool any = false, all = true;
        queue[i].for_each([&](std::size_t q) {
            if (n.accepting(static_cast<int>(q))) any = true;
            else all = false;
        });
        if (any && !all) return false;
        for (std::size_t a = 0; a < n.alphabet_size(); ++a) {
            Bitset t = n.step(queue[i], static_cast<Symbol>(a));
            if (seen.insert(t.members()).second) queue.push_back(std::move(t));
        }
    }
    return true;
}

std::vector<Word> online_win_set(const OnlineInstance& inst, const Dfa& strategy, std::size_t max_len) {
    if (strategy.num_states() != inst.nfa.num_states() || strategy.alphabet_size() != inst.nfa.alphabet_size() ||
        strategy.initial() != inst.initial())
        throw InputError("strategy automaton does not match the instance");
    for (std::size_t q = 0; q < strategy.num_states(); ++q)
        for (std::size_t a = 0; a < strategy.alphabet_size(); ++a) {
            int p = strategy.next(static_cast<int>(q), static_cast<Symbol>(a));
            const auto& succ = inst.nfa.successors(static_cast<int>(q), static_cast<Symbol>(a));
            if (!std::binary_search(succ.begin(), succ.end(), p))
                throw InputError("strategy uses a transition that is not in the instance");
        }
    std::vector<Word> out;
    for (auto& w : all_words_upto(inst.nfa.alphabet_size(), max_len))
        if (inst.nfa.accepting(strategy.run(w))) out.push_back(w);
    return out;
}

std::vector<Word> online_win_set(const OnlineInstance& inst, const OnlineTable& strategy, std::size_t max_len) {
    std::vector<Word> out;
    for (auto& w : all_words_upto(inst.nfa.alphabet_size(), max_len)) {
        auto it = strategy.find(w);
        if (it == strategy.end()) throw InputError("strategy table has no entry for a word of length " + std::to_string(w.size()));
        int q = it->second;
        if (w.empty()) {
            if (q != inst.initial()) throw InputError("strategy table does not start in the initial state");
        } else {
            Word parent(w.begin(), w.end() - 1);
            const auto& succ = inst.nfa.successors(strategy.at(parent), w.back());
            if (!std::binary_search(succ.begin(), succ.end(), q)) throw InputError("strategy table uses a missing transition");
        }
        if (inst.nfa.accepting(q)) out.push_back(w);
    }
    return out;
}

std::vector<Word> brute_force_best_online(const OnlineInstance& inst, std::size_t max_len, std::uint64_t budget) {
    std::vector<Word> words = all_words_upto(inst.nfa.alphabet_size(), max_len);
    if (words.size() > 64) throw ScopeError("brute_force_best_online supports at most 64 words");
    std::size_t n = words.size(), k = inst.nfa.alphabet_size();
    // parent of word i is (i - 1) / k in shortlex order; bit n-1-i marks word i
    std::vector<int> state(n);
    state[0] = inst.initial();
    std::uint64_t best = 0, visited = 0;
    bool have = false;
    std::function<void(std::size_t, std::uint64_t)> go = [&](std::size_t i, std::uint64_t mask) {
        if (++visited > budget) throw BudgetExceeded("brute_force_best_online: more than " + std::to_string(budget) + " search nodes");
        if (i == n) {
            if (!have || mask > best) best = mask;
            have = true;
            return;
        }
        int parent = state[(i - 1) / k];
        Symbol a = static_cast<Symbol>((i - 1) % k);
        for (int p : inst.nfa.successors(parent, a)) {
            state[i] = p;
            go(i + 1, mask | (inst.nfa.accepting(p) ? std::uint64_t{1} << (n - 1 - i) : 0));
        }
    };
    go(1, inst.nfa.accepting(state[0]) ? std::uint64_t{1} << (n - 1) : 0);
    std::vector<Word> out;
    for (std::size_t i = 0; i < n; ++i)
        if ((best >> (n - 1 - i)) & 1u) out.push_back(words[i]);
    return out;
}

Nfa prune_full_language(const OnlineInstance& inst) {
    Kept kept = kept_of(inst.nfa);
    for (;;) {
        Nfa cur = nfa_of(inst.nfa, kept);
        std::size_t removed = 0;
        for (auto& row : kept)
            for (auto& succ : row) {
                if (succ.size() < 2) continue;
                int best = succ.front();
                for (int p : succ)
                    if (compare_states(cur, p, best, std::nullopt).order == Order::Greater) best = p;
                std::vector<int> keep;
                for (int p : succ)
                    if (p == best || compare_states(cur, p, best, std::nullopt).order == Order::Equal) keep.push_back(p);
                removed += succ.size() - keep.size();
                succ = std::move(keep);
            }
        if (!removed) return cur;
    }
}

BoundedDiagnosis diagnose_bounded(const OnlineInstance& inst, std::size_t bound) {
    Kept kept = kept_of(inst.nfa);
    for (std::size_t level = 0; level <= bound; ++level) {
        Nfa cur = nfa_of(inst.nfa, kept);
        std::vector<std::vector<Word>> lang(cur.num_states());
        for (std::size_t q = 0; q < cur.num_states(); ++q) lang[q] = language_from(cur, static_cast<int>(q), level);
        for (auto& row : kept)
            for (auto& succ : row) {
                if (succ.size() < 2) continue;
                int best = succ.front();
                for (int p : succ)
                    if (compare_word_sets(lang[static_cast<std::size_t>(p)], lang[static_cast<std::size_t>(best)]) > 0) best = p;
                std::vector<int> keep;
                for (int p : succ)
                    if (compare_word_sets(lang[static_cast<std::size_t>(p)], lang[static_cast<std::size_t>(best)]) == 0) keep.push_back(p);
                succ = std::move(keep);
            }
    }
    BoundedDiagnosis d;
    d.bound = bound;
    d.replayed = nfa_of(inst.nfa, kept);
    LevelRun main = run_levels(inst.nfa, bound);
    for (std::size_t q = 0; q < kept.size(); ++q)
        for (std::size_t a = 0; a < kept[q].size(); ++a) {
            const auto& x = kept[q][a];
            const auto& y = main.kept[q][a];
            for (int p : x)
                if (!std::binary_search(y.begin(), y.end(), p)) d.only_replayed.emplace_back(static_cast<int>(q), static_cast<Symbol>(a), p);
            for (int p : y)
                if (!std::binary_search(x.begin(), x.end(), p)) d.only_main.emplace_back(static_cast<int>(q), static_cast<Symbol>(a), p);
        }
    return d;
}

}  // namespace cfgame

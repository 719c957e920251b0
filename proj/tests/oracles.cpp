#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>

namespace oracle {

using namespace cfgame;

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

namespace {

using Mask = std::vector<std::uint64_t>;
using Situation = std::pair<int, Word>;  // word index, symbols still to process
using Situations = std::set<Situation>;

bool subset(const Mask& a, const Mask& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] & ~b[i]) return false;
    return true;
}

void add_maximal(std::vector<Mask>& chain, const Mask& m) {
    for (auto& c : chain)
        if (subset(m, c)) return;
    chain.erase(std::remove_if(chain.begin(), chain.end(), [&](const Mask& c) { return subset(c, m); }), chain.end());
    chain.push_back(m);
}

// the greater mask has a 1 at the lowest differing word index
bool mask_less(const Mask& a, const Mask& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::uint64_t d = a[i] ^ b[i];
        if (!d) continue;
        std::uint64_t low = d & (~d + 1);
        return (b[i] & low) != 0;
    }
    return false;
}

struct Explorer {
    const Game& g;
    std::size_t max_history;
    std::size_t width;
    std::uint64_t budget, visited = 0;
    std::vector<std::vector<Word>> replies;
    std::map<std::tuple<int, std::size_t, Situations>, std::vector<Mask>> memo;

    std::vector<Mask> solve(int q, std::size_t len, const Situations& sits) {
        auto key = std::make_tuple(q, len, sits);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        if (++visited > budget) throw BudgetExceeded("truncated strategy oracle exceeded its node budget");
        Mask base(width, ~std::uint64_t{0});
        std::map<Symbol, Situations> groups;
        for (auto& [w, rest] : sits) {
            if (rest.empty()) {
                if (!g.target().accepting(q)) base[static_cast<std::size_t>(w) / 64] &= ~(std::uint64_t{1} << (w % 64));
                continue;
            }
            groups[rest.front()].insert({w, rest});
        }
        std::vector<Mask> result{base};
        for (auto& [a, group] : groups) {
            std::vector<Mask> options;
            Situations read;
            for (auto& [w, rest] : group) read.insert({w, Word(rest.begin() + 1, rest.end())});
            for (auto& m : solve(g.target().next(q, a), len + 1, read)) add_maximal(options, m);
            if (g.is_function(a) && len < max_history) {
                Situations call;
                for (auto& [w, rest] : group)
                    for (auto& u : replies[static_cast<std::size_t>(a)]) {
                        Word r = u;
                        r.insert(r.end(), rest.begin() + 1, rest.end());
                        call.insert({w, r});
                    }
                for (auto& m : solve(q, len + 1, call)) add_maximal(options, m);
            }
            std::vector<Mask> next;
            for (auto& x : result)
                for (auto& y : options) {
                    Mask z(width);
                    for (std::size_t i = 0; i < width; ++i) z[i] = x[i] & y[i];
                    add_maximal(next, z);
                }
            result = std::move(next);
        }
        memo.emplace(std::move(key), result);
        return result;
    }
};

}  // namespace

std::vector<Word> best_truncated_win_set(const Game& g, std::size_t max_word_len, std::size_t max_history,
                                         std::uint64_t budget) {
    std::vector<Word> words = all_words_upto(g.num_symbols(), max_word_len);
    Explorer ex{g, max_history, (words.size() + 63) / 64, budget, 0, {}, {}};
    ex.replies.resize(g.num_symbols());
    for (Symbol a : g.function_symbols()) {
        const Dfa& d = g.rule(a).dfa;
        if (!is_finite_language(d)) throw ScopeError("truncated strategy oracle needs finite replacement languages");
        ex.replies[static_cast<std::size_t>(a)] = enumerate_upto(d, d.num_states());
    }
    Situations root;
    for (std::size_t i = 0; i < words.size(); ++i) root.insert({static_cast<int>(i), words[i]});
    auto chain = ex.solve(g.target().initial(), 0, root);
    Mask best = chain.front();
    for (auto& m : chain)
        if (mask_less(best, m)) best = m;
    std::vector<Word> out;
    for (std::size_t i = 0; i < words.size(); ++i)
        if ((best[i / 64] >> (i % 64)) & 1u) out.push_back(words[i]);
    return out;
}

bool regex_matches(const Regex& r, const Word& w) {
    using K = RegexNode::Kind;
    switch (r->kind) {
        case K::Epsilon: return w.empty();
        case K::Symbol: return w.size() == 1 && w[0] == r->symbol;
        case K::Union: return regex_matches(r->left, w) || regex_matches(r->right, w);
        case K::Concat:
            for (std::size_t i = 0; i <= w.size(); ++i)
                if (regex_matches(r->left, Word(w.begin(), w.begin() + static_cast<long>(i))) &&
                    regex_matches(r->right, Word(w.begin() + static_cast<long>(i), w.end())))
                    return true;
            return false;
        case K::Star:
            if (w.empty()) return true;
            // first iteration takes a non-empty prefix
            for (std::size_t i = 1; i <= w.size(); ++i)
                if (regex_matches(r->left, Word(w.begin(), w.begin() + static_cast<long>(i))) &&
                    regex_matches(r, Word(w.begin() + static_cast<long>(i), w.end())))
                    return true;
            return false;
    }
    return false;
}

std::size_t table_filling_classes(const Dfa& d) {
    std::vector<int> reach{d.initial()};
    std::vector<char> seen(d.num_states(), 0);
    seen[static_cast<std::size_t>(d.initial())] = 1;
    for (std::size_t i = 0; i < reach.size(); ++i)
        for (Symbol a = 0; a < static_cast<Symbol>(d.alphabet_size()); ++a) {
            int t = d.next(reach[i], a);
            if (!seen[static_cast<std::size_t>(t)]) {
                seen[static_cast<std::size_t>(t)] = 1;
                reach.push_back(t);
            }
        }
    std::size_t n = reach.size();
    std::vector<std::vector<char>> diff(n, std::vector<char>(n, 0));
    std::map<int, std::size_t> pos;
    for (std::size_t i = 0; i < n; ++i) pos[reach[i]] = i;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) diff[i][j] = d.accepting(reach[i]) != d.accepting(reach[j]);
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (diff[i][j]) continue;
                for (Symbol a = 0; a < static_cast<Symbol>(d.alphabet_size()); ++a)
                    if (diff[pos[d.next(reach[i], a)]][pos[d.next(reach[j], a)]]) {
                        diff[i][j] = 1;
                        changed = true;
                        break;
                    }
            }
    }
    std::size_t classes = 0;
    for (std::size_t i = 0; i < n; ++i) {
        bool first = true;
        for (std::size_t j = 0; j < i; ++j)
            if (!diff[i][j]) first = false;
        if (first) ++classes;
    }
    return classes;
}

namespace {

struct PlayExplorer {
    const Game& g;
    const StrategyAutomaton& a;
    std::size_t max_depth;
    std::vector<std::vector<Word>> replies;
    bool diverged = false;

    // strategy and target state after every possible play on w
    std::set<std::pair<int, int>> run(const Word& w, std::set<std::pair<int, int>> from, std::size_t depth) {
        for (Symbol x : w) {
            std::set<std::pair<int, int>> next;
            for (auto [qa, qt] : from) {
                if (!a.calls(g, qa, x)) {
                    next.insert({a.after_read(qa, x), g.target().next(qt, x)});
                    continue;
                }
                if (depth >= max_depth) {
                    diverged = true;
                    continue;
                }
                int qc = a.after_call(qa, x);
                for (auto& u : replies[static_cast<std::size_t>(x)]) {
                    auto ends = run(u, {{qc, qt}}, depth + 1);
                    next.insert(ends.begin(), ends.end());
                }
            }
            from = std::move(next);
        }
        return from;
    }
};

}  // namespace

ExploredEnds explore_from(const Game& g, const StrategyAutomaton& a, int qa, int qt, const Word& w,
                          std::size_t max_depth) {
    PlayExplorer ex{g, a, max_depth, std::vector<std::vector<Word>>(g.num_symbols())};
    for (Symbol f : g.function_symbols()) {
        const Dfa& d = g.rule(f).dfa;
        if (!is_finite_language(d)) throw ScopeError("play explorer needs finite replacement languages");
        ex.replies[static_cast<std::size_t>(f)] = enumerate_upto(d, d.num_states());
    }
    ExploredEnds out;
    out.ends = ex.run(w, {{qa, qt}}, 0);
    out.diverged = ex.diverged;
    return out;
}

Explored explore_plays(const Game& g, const StrategyAutomaton& a, const Word& w, std::size_t max_depth) {
    auto r = explore_from(g, a, a.initial(), g.target().initial(), w, max_depth);
    for (auto [qa, qt] : r.ends)
        if (!g.target().accepting(qt)) return Explored::Lose;
    return r.diverged ? Explored::Diverges : Explored::Win;
}

Regex random_regex(std::size_t k, std::size_t depth, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::function<Regex(std::size_t)> gen = [&](std::size_t d) -> Regex {
        int choice = d == 0 ? static_cast<int>(rng() % 5) : static_cast<int>(rng() % 9);
        if (choice == 0) return re_epsilon();
        if (choice < 5) return re_symbol(static_cast<Symbol>(rng() % k));
        if (choice < 7) return re_concat(gen(d - 1), gen(d - 1));
        if (choice < 8) return re_union(gen(d - 1), gen(d - 1));
        return re_star(gen(d - 1));
    };
    return gen(depth);
}

bool prefix_free_upto(const Dfa& d, std::size_t max_len) {
    auto ws = enumerate_upto(d, max_len);
    for (auto& u : ws)
        for (auto& v : ws)
            if (u.size() < v.size() && std::equal(u.begin(), u.end(), v.begin())) return false;
    return true;
}

}  // namespace oracle

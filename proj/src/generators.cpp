#include "cfgame/generators.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <tuple>

namespace cfgame {

namespace {

using Edge = std::tuple<int, std::string, int>;

Dfa dfa_from_edges(const Alphabet& ab, std::size_t states, int initial, const std::vector<int>& accepting,
                   const std::vector<Edge>& edges) {
    Dfa d(states, ab.size(), initial);
    for (int q : accepting) d.set_accepting(q);
    for (auto& [from, sym, to] : edges) d.set_transition(from, ab.index(sym), to);
    d.complete();
    return d;
}

std::map<Symbol, Regex> rules_from(const Alphabet& ab, const std::vector<std::pair<std::string, std::string>>& rules) {
    std::map<Symbol, Regex> out;
    for (auto& [a, re] : rules) out[ab.index(a)] = parse_regex(re, ab);
    return out;
}

Game regex_target_game(const std::vector<std::string>& symbols,
                       const std::vector<std::pair<std::string, std::string>>& rules, const std::string& target) {
    Alphabet ab(symbols);
    return Game(ab, rules_from(ab, rules), regex_to_dfa(parse_regex(target, ab), ab.size()));
}

StrategyAutomaton general_from_edges(const Game& g, std::size_t states, const std::vector<int>& accepting,
                                     const std::vector<Edge>& edges) {
    Alphabet hist(history_labels(g.alphabet()));
    return StrategyAutomaton(dfa_from_edges(hist, states, 0, accepting, edges), g.num_symbols(), StrategyKind::General);
}

StrategyAutomaton forgetful_from_edges(const Game& g, std::size_t states, const std::vector<int>& accepting,
                                       const std::vector<Edge>& edges) {
    return StrategyAutomaton::forgetful(dfa_from_edges(g.alphabet(), states, 0, accepting, edges));
}

}  // namespace

std::vector<std::string> fixture_names() {
    return {"sandbox", "g1-recursive", "g2-regular-not-sreg", "g1c-undominated", "g2c-undominated"};
}

Game fixture(const std::string& name) {
    if (name == "sandbox") return regex_target_game({"a", "b", "c"}, {{"a", "b"}}, "ab+bc");
    if (name == "g1-recursive") return regex_target_game({"a"}, {{"a", "aa"}}, "aaa*");
    if (name == "g2-regular-not-sreg") {
        Alphabet ab({"a", "b", "c", "d"});
        Dfa t = dfa_from_edges(ab, 3, 0, {0, 1},
                               {{0, "a", 0}, {0, "d", 0}, {0, "b", 1}, {0, "c", 2},
                                {1, "b", 0}, {1, "c", 0}, {1, "a", 2}, {1, "d", 2},
                                {2, "a", 2}, {2, "b", 2}, {2, "c", 2}, {2, "d", 2}});
        return Game(ab, rules_from(ab, {{"a", "b"}, {"c", "ac"}, {"d", "bad"}}), t);
    }
    if (name == "g1c-undominated")
        return regex_target_game({"a", "b", "c", "d", "e"}, {{"a", "b+c"}, {"b", "cd"}, {"c", "e"}}, "e+cd");
    if (name == "g2c-undominated") {
        Alphabet ab({"a", "b", "c"});
        Dfa t = dfa_from_edges(ab, 5, 0, {3},
                               {{0, "b", 1}, {0, "c", 1}, {0, "a", 4},
                                {1, "b", 2}, {1, "c", 2}, {1, "a", 4},
                                {2, "c", 3}, {2, "a", 4}, {2, "b", 4},
                                {3, "a", 4}, {3, "b", 4}, {3, "c", 4},
                                {4, "a", 4}, {4, "b", 4}, {4, "c", 4}});
        return Game(ab, rules_from(ab, {{"a", "bb+cbc"}, {"b", "cc"}}), t);
    }
    throw InputError("unknown fixture '" + name + "'");
}

std::map<std::string, StrategyAutomaton> fixture_strategies(const std::string& name, const Game& g) {
    std::map<std::string, StrategyAutomaton> out;
    out.emplace("read-all", strongly_regular_automaton(g, {}));
    if (name == "sandbox") {
        out.emplace("call-initial-a", strongly_regular_automaton(g, {{{0, g.alphabet().index("a")}}}));
    } else if (name == "g1-recursive") {
        // calls until the first call has happened
        out.emplace("call-until-first-call", general_from_edges(g, 3, {2}, {{0, "a", 2}, {0, "^a", 1}, {1, "a", 1}, {1, "^a", 1}}));
        out.emplace("always-call", forgetful_from_edges(g, 2, {1}, {{0, "a", 1}, {1, "a", 1}}));
    } else if (name == "g2-regular-not-sreg") {
        // states: q0, q0', q1, Call; missing transitions fall into a sink
        out.emplace("fixture", forgetful_from_edges(g, 4, {3},
                                                    {{0, "d", 0}, {0, "a", 1}, {0, "b", 2}, {0, "c", 3},
                                                     {1, "d", 0}, {1, "b", 2}, {1, "a", 3}, {1, "c", 3},
                                                     {2, "b", 0}, {2, "c", 0}, {2, "a", 3}, {2, "d", 3}}));
    } else if (name == "g1c-undominated") {
        // calls on a, b, c at the start and on b, c right after a call of a
        std::vector<Edge> e;
        int call = 2, dead = 3;
        for (auto s : {"a", "b", "c"}) e.emplace_back(0, s, call);
        e.emplace_back(0, "^a", 1);
        for (auto s : {"b", "c"}) e.emplace_back(1, s, call);
        for (auto& n : history_labels(g.alphabet())) {
            bool set0 = std::any_of(e.begin(), e.end(), [&](const Edge& x) { return std::get<0>(x) == 0 && std::get<1>(x) == n; });
            bool set1 = std::any_of(e.begin(), e.end(), [&](const Edge& x) { return std::get<0>(x) == 1 && std::get<1>(x) == n; });
            if (!set0) e.emplace_back(0, n, dead);
            if (!set1) e.emplace_back(1, n, dead);
            e.emplace_back(call, n, dead);
            e.emplace_back(dead, n, dead);
        }
        out.emplace("fixture", general_from_edges(g, 4, {call}, e));
    } else if (name == "g2c-undominated") {
        out.emplace("fixture", forgetful_from_edges(g, 6, {5},
                                                    {{0, "b", 1}, {0, "c", 2}, {0, "a", 5},
                                                     {1, "c", 3}, {1, "a", 5}, {1, "b", 5},
                                                     {2, "b", 3}, {2, "c", 3}, {2, "a", 5},
                                                     {3, "c", 4}, {3, "a", 5}, {3, "b", 5},
                                                     {4, "c", 4}, {4, "a", 5}, {4, "b", 5}}));
    }
    return out;
}

// ---- 3SAT ---------------------------------------------------------------------------

Cnf parse_cnf(const std::string& text) {
    Cnf f;
    std::stringstream clauses(text);
    std::string clause;
    while (std::getline(clauses, clause, ';')) {
        if (clause.find_first_not_of(" \t") == std::string::npos) continue;
        std::stringstream lits(clause);
        std::string lit;
        std::vector<int> c;
        while (std::getline(lits, lit, ',')) {
            try {
                std::size_t used = 0;
                int v = std::stoi(lit, &used);
                if (v == 0) throw InputError("literal 0 is not allowed");
                c.push_back(v);
            } catch (const std::invalid_argument&) {
                throw InputError("bad literal '" + lit + "'");
            } catch (const std::out_of_range&) {
                throw InputError("bad literal '" + lit + "'");
            }
        }
        if (c.size() != 3) throw InputError("clause '" + clause + "' does not have three literals");
        f.clauses.push_back({c[0], c[1], c[2]});
        for (int v : c) f.num_vars = std::max(f.num_vars, std::abs(v));
    }
    if (f.clauses.empty()) throw InputError("formula has no clauses");
    return f;
}

std::string cnf_to_string(const Cnf& f) {
    std::string s;
    for (std::size_t i = 0; i < f.clauses.size(); ++i) {
        if (i) s += ';';
        for (std::size_t j = 0; j < 3; ++j) s += (j ? "," : "") + std::to_string(f.clauses[i][j]);
    }
    return s;
}

bool brute_force_sat(const Cnf& f) {
    for (unsigned m = 0; m < (1u << f.num_vars); ++m) {
        bool all = true;
        for (auto& c : f.clauses) {
            bool any = false;
            for (int l : c) {
                bool val = (m >> (std::abs(l) - 1)) & 1u;
                if ((l > 0) == val) any = true;
            }
            if (!any) {
                all = false;
                break;
            }
        }
        if (all) return true;
    }
    return false;
}

SatInstance from_3sat(const Cnf& f) {
    int n = f.num_vars;
    if (n < 1 || f.clauses.empty()) throw InputError("formula needs at least one variable and one clause");
    std::vector<std::string> names{"0", "1", "C", "D", "E", "b", "c", "d"};
    for (int i = 1; i <= n; ++i) names.push_back("a" + std::to_string(i));
    Alphabet ab(names);
    auto sym = [&](const std::string& s) { return ab.index(s); };
    auto ai = [&](int i) { return sym("a" + std::to_string(i)); };
    // component i (0-based) uses states 6i + {s, b, c, f, d, t}
    enum { S, B, Cc, F, Dd, Tt };
    auto st = [](int i, int role) { return 6 * i + role; };
    int qe = 6 * n;
    Dfa t(static_cast<std::size_t>(qe + 1), ab.size(), st(0, S));
    for (int i = 0; i < n; ++i) {
        t.set_accepting(st(i, F));
        t.set_transition(st(i, S), sym("0"), st(i, B));
        t.set_transition(st(i, S), sym("b"), st(i, F));
        t.set_transition(st(i, S), sym("1"), st(i, Dd));
        t.set_transition(st(i, B), sym("C"), st(i, Cc));
        t.set_transition(st(i, Cc), sym("d"), st(i, S));
        t.set_transition(st(i, Dd), sym("D"), st(i, Tt));
        t.set_transition(st(i, F), sym("c"), st(i, S));
        t.set_transition(st(i, F), sym("b"), st(i, F));
        for (int j = 1; j <= n; ++j) t.set_transition(st(i, F), ai(j), st(i, F));
        t.set_transition(st(i, F), sym("d"), st(i, Tt));
        if (i > 0) t.set_transition(st(i - 1, Tt), ai(i + 1), st(i, S));
    }
    for (int q = 0; q < qe; ++q) {
        int role = q % 6, comp = q / 6;
        if (role == F) continue;
        if (role == Tt && comp < n - 1) continue;
        for (int j = 1; j <= n; ++j) t.set_transition(q, ai(j), st(j - 1, S));
    }
    for (int q = 0; q <= qe; ++q)
        for (std::size_t a = 0; a < ab.size(); ++a)
            if (t.next(q, static_cast<Symbol>(a)) < 0) t.set_transition(q, static_cast<Symbol>(a), qe);

    std::map<Symbol, Regex> rules;
    rules[sym("0")] = re_symbol(sym("b"));
    rules[sym("1")] = re_symbol(sym("b"));
    rules[sym("C")] = re_word({sym("c"), sym("1")});
    rules[sym("D")] = re_word({sym("d"), sym("1"), sym("d")});
    std::vector<Regex> alts;
    for (auto& c : f.clauses) {
        Word w;
        for (int l : c) {
            w.push_back(ai(std::abs(l)));
            w.push_back(sym(l > 0 ? "1" : "0"));
        }
        alts.push_back(re_word(w));
    }
    rules[sym("E")] = re_union_of(alts);

    Word w{sym("0"), sym("C"), sym("D")};
    for (int i = 2; i <= n; ++i) {
        w.push_back(ai(i));
        w.insert(w.end(), {sym("0"), sym("C"), sym("D")});
    }
    w.push_back(sym("E"));
    return {Game(ab, rules, t), w};
}

// ---- universality ---------------------------------------------------------------

bool brute_force_universal(const Nfa& n) {
    // explore every reachable subset; universal iff all of them accept
    std::vector<Bitset> seen{n.initial_set()};
    for (std::size_t i = 0; i < seen.size(); ++i) {
        if (!n.accepts_set(seen[i])) return false;
        for (std::size_t a = 0; a < n.alphabet_size(); ++a) {
            Bitset t = n.step(seen[i], static_cast<Symbol>(a));
            if (std::find(seen.begin(), seen.end(), t) == seen.end()) seen.push_back(t);
        }
    }
    return true;
}

UniversalityInstance from_nfa_universality(const Nfa& nin) {
    if (nin.alphabet_size() != 2) throw InputError("universality reduction expects an NFA over {0,1}");
    if (nin.initial().size() != 1) throw InputError("universality reduction expects exactly one initial state");
    UniversalityInstance inst;
    int s0 = nin.initial()[0];
    if (!nin.accepting(s0)) {
        inst.game = fixture("sandbox");
        inst.first = {};
        inst.second = {{{0, inst.game.alphabet().index("a")}}};
        inst.fixed_negative = true;
        return inst;
    }
    // drop unreachable states, renumber with the initial state first
    std::vector<int> order{s0}, id(nin.num_states(), -1);
    id[static_cast<std::size_t>(s0)] = 0;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (Symbol a : {0, 1})
            for (int t : nin.successors(order[i], a))
                if (id[static_cast<std::size_t>(t)] < 0) {
                    id[static_cast<std::size_t>(t)] = static_cast<int>(order.size());
                    order.push_back(t);
                }
    int nq = static_cast<int>(order.size());
    std::vector<std::string> names{"0", "1", "#"};
    auto pair_name = [](const std::string& a, int p) { return "(" + a + "," + std::to_string(p) + ")"; };
    for (const char* a : {"0", "1"})
        for (int p = 0; p < nq; ++p) names.push_back(pair_name(a, p));
    for (int p = 1; p < nq; ++p) names.push_back(pair_name("$", p));
    Alphabet ab(names);
    std::size_t k = ab.size();
    int f = nq;
    Dfa t(static_cast<std::size_t>(nq + 1), k, 0);
    t.set_accepting(f);
    for (int p = 0; p < nq; ++p)
        if (!nin.accepting(order[static_cast<std::size_t>(p)])) t.set_accepting(p);
    for (int p = 0; p <= nq; ++p)
        for (std::size_t a = 0; a < k; ++a) t.set_transition(p, static_cast<Symbol>(a), f);
    for (int p = 0; p < nq; ++p) {
        t.set_transition(p, ab.index("0"), p);
        t.set_transition(p, ab.index("1"), p);
        for (int a = 0; a < 2; ++a) {
            const auto& succ = nin.successors(order[static_cast<std::size_t>(p)], a);
            for (int q = 0; q < nq; ++q) {
                bool edge = std::find(succ.begin(), succ.end(), order[static_cast<std::size_t>(q)]) != succ.end();
                t.set_transition(p, ab.index(pair_name(std::to_string(a), q)), edge ? q : f);
            }
        }
        if (p != 0) t.set_transition(p, ab.index(pair_name("$", p)), 0);
    }
    std::map<Symbol, Regex> rules;
    Regex hash = re_symbol(ab.index("#"));
    for (int a = 0; a < 2; ++a) {
        std::vector<Regex> alts;
        for (int p = 0; p < nq; ++p) alts.push_back(re_symbol(ab.index(pair_name(std::to_string(a), p))));
        rules[ab.index(std::to_string(a))] = re_union_of(alts);
        for (int p = 0; p < nq; ++p) rules[ab.index(pair_name(std::to_string(a), p))] = hash;
    }
    for (int p = 1; p < nq; ++p) rules[ab.index(pair_name("$", p))] = hash;

    // Strategies are described on the constructed target; map its states to
    // the canonical numbering used by the game.
    std::vector<int> canon;
    Dfa tc = t;
    minimize(tc, &canon);
    inst.game = Game(ab, rules, t);
    auto is_pair_symbol = [&](Symbol a) {
        const std::string& n = ab.name(a);
        return n.size() > 3 && (n[1] == '0' || n[1] == '1');
    };
    for (int p = 0; p <= nq; ++p)
        for (std::size_t a = 0; a < k; ++a) {
            Symbol sa = static_cast<Symbol>(a);
            if (!inst.game.is_function(sa)) continue;
            int cp = canon[static_cast<std::size_t>(p)];
            if (!is_pair_symbol(sa)) inst.first.reroutes.insert({cp, sa});
            bool keep2 = p == f || (p == 0 && (ab.name(sa) == "0" || ab.name(sa) == "1"));
            if (!keep2) inst.second.reroutes.insert({cp, sa});
        }
    return inst;
}

// ---- random instances -----------------------------------------------------------

RandomGameParams parse_random_params(const std::string& text) {
    RandomGameParams p;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos) throw InputError("random params: expected key=value, got '" + item + "'");
        std::string key = item.substr(0, eq), val = item.substr(eq + 1);
        try {
            if (key == "alphabet") p.alphabet_size = std::stoul(val);
            else if (key == "states") p.target_states = std::stoul(val);
            else if (key == "accept") p.accept_prob = std::stod(val);
            else if (key == "functions") p.function_prob = std::stod(val);
            else if (key == "words") p.max_rule_words = std::stoul(val);
            else if (key == "len") p.max_word_len = std::stoul(val);
            else if (key == "finite") p.finite = val != "0";
            else if (key == "prefix-free") p.prefix_free = val != "0";
            else if (key == "non-recursive") p.non_recursive = val != "0";
            else throw InputError("random params: unknown key '" + key + "'");
        } catch (const std::logic_error&) {
            throw InputError("random params: bad value for '" + key + "'");
        }
    }
    if (p.alphabet_size < 1 || p.alphabet_size > 26) throw InputError("random params: alphabet must be 1..26");
    if (p.target_states < 1) throw InputError("random params: states must be positive");
    if (p.max_rule_words < 1 || p.max_word_len < 1) throw InputError("random params: words and len must be positive");
    return p;
}

Game random_game(const RandomGameParams& p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    auto pick = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
    std::vector<std::string> names;
    for (std::size_t i = 0; i < p.alphabet_size; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
    Alphabet ab(names);
    std::size_t k = ab.size();
    for (std::size_t attempt = 0; attempt < p.max_attempts; ++attempt) {
        Dfa t(p.target_states, k, 0);
        for (std::size_t q = 0; q < p.target_states; ++q) {
            t.set_accepting(static_cast<int>(q), coin(rng) < p.accept_prob);
            for (std::size_t a = 0; a < k; ++a) t.set_transition(static_cast<int>(q), static_cast<Symbol>(a), static_cast<int>(pick(0, p.target_states - 1)));
        }
        std::map<Symbol, Regex> rules;
        for (std::size_t a = 0; a < k; ++a) {
            if (coin(rng) >= p.function_prob) continue;
            std::vector<Regex> alts;
            std::size_t count = pick(1, p.max_rule_words);
            for (std::size_t i = 0; i < count; ++i) {
                std::size_t len = pick(1, p.max_word_len);
                Regex r;
                std::size_t plain = pick(0, len - 1);  // at least one position without a star
                for (std::size_t j = 0; j < len; ++j) {
                    Regex atom = re_symbol(static_cast<Symbol>(pick(0, k - 1)));
                    if (!p.finite && j != plain && coin(rng) < 0.3) atom = re_star(atom);
                    r = r ? re_concat(r, atom) : atom;
                }
                alts.push_back(r);
            }
            Regex rule = re_union_of(alts);
            if (p.prefix_free && !is_prefix_free(regex_to_nfa(rule, k)).prefix_free) {
                // retry this symbol with a single word, which is always prefix-free
                Word w;
                std::size_t len = pick(1, p.max_word_len);
                for (std::size_t j = 0; j < len; ++j) w.push_back(static_cast<Symbol>(pick(0, k - 1)));
                rule = re_word(w);
            }
            rules[static_cast<Symbol>(a)] = rule;
        }
        if (rules.empty()) {
            Symbol a = static_cast<Symbol>(pick(0, k - 1));
            rules[a] = re_symbol(static_cast<Symbol>(pick(0, k - 1)));
        }
        Game g(ab, rules, t);
        if (p.non_recursive && !classify(g).non_recursive) continue;
        return g;
    }
    throw BudgetExceeded("random_game: no game met the constraints within the attempt limit");
}

StrategyAutomaton random_general_strategy(const Game& g, std::size_t states, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<int> st(0, static_cast<int>(states) - 1);
    std::size_t k = g.num_symbols();
    Dfa d(states, 2 * k, 0);
    for (std::size_t q = 0; q < states; ++q) {
        d.set_accepting(static_cast<int>(q), coin(rng) < 0.35);
        for (std::size_t a = 0; a < 2 * k; ++a) d.set_transition(static_cast<int>(q), static_cast<Symbol>(a), st(rng));
    }
    return StrategyAutomaton(d, k, StrategyKind::General);
}

StrategyAutomaton random_forgetful_strategy(const Game& g, std::size_t states, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<int> st(0, static_cast<int>(states) - 1);
    std::size_t k = g.num_symbols();
    Dfa d(states, k, 0);
    for (std::size_t q = 0; q < states; ++q) {
        d.set_accepting(static_cast<int>(q), coin(rng) < 0.35);
        for (std::size_t a = 0; a < k; ++a) d.set_transition(static_cast<int>(q), static_cast<Symbol>(a), st(rng));
    }
    return StrategyAutomaton::forgetful(d);
}

StronglyRegularSpec random_sreg_spec(const Game& g, double reroute_prob, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    StronglyRegularSpec s;
    for (std::size_t q = 0; q < g.target().num_states(); ++q)
        for (Symbol a : g.function_symbols())
            if (coin(rng) < reroute_prob) s.reroutes.insert({static_cast<int>(q), a});
    return s;
}

Nfa random_nfa(std::size_t states, std::size_t alphabet_size, double edge_prob, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    Nfa n(states, alphabet_size);
    n.add_initial(0);
    for (std::size_t q = 0; q < states; ++q) {
        n.set_accepting(static_cast<int>(q), coin(rng) < 0.6);
        for (std::size_t a = 0; a < alphabet_size; ++a)
            for (std::size_t t = 0; t < states; ++t)
                if (coin(rng) < edge_prob) n.add_transition(static_cast<int>(q), static_cast<Symbol>(a), static_cast<int>(t));
    }
    return n;
}

OnlineInstance random_online_instance(std::size_t states, std::size_t alphabet_size, double edge_prob, std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_int_distribution<int> st(0, static_cast<int>(states) - 1);
    Nfa n = random_nfa(states, alphabet_size, edge_prob, seed);
    for (std::size_t q = 0; q < states; ++q)
        for (std::size_t a = 0; a < alphabet_size; ++a)
            if (n.successors(static_cast<int>(q), static_cast<Symbol>(a)).empty())
                n.add_transition(static_cast<int>(q), static_cast<Symbol>(a), st(rng));
    std::vector<std::string> names;
    for (std::size_t i = 0; i < alphabet_size; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
    return OnlineInstance::from_nfa(std::move(n), Alphabet(names));
}

}  // namespace cfgame

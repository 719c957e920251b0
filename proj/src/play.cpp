#include "cfgame/play.hpp"

#include <algorithm>
#include <memory>

namespace cfgame {

std::vector<std::string> history_labels(const Alphabet& ab) {
    std::vector<std::string> out = ab.names();
    for (auto& n : ab.names()) out.push_back("^" + n);
    return out;
}

std::string format_history(const std::vector<Symbol>& h, const Alphabet& ab) {
    std::size_t k = ab.size();
    std::string out;
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (i) out += ' ';
        if (is_hat(h[i], k)) out += '^';
        out += ab.name(unhat(h[i], k));
    }
    return out;
}

const char* kind_name(StrategyKind k) {
    switch (k) {
        case StrategyKind::General: return "general";
        case StrategyKind::Forgetful: return "forgetful";
        case StrategyKind::StronglyRegular: return "strongly-regular";
    }
    return "?";
}

StrategyAutomaton::StrategyAutomaton(Dfa over_history, std::size_t num_symbols, StrategyKind kind)
    : dfa_(std::move(over_history)), k_(num_symbols), kind_(kind) {
    if (dfa_.alphabet_size() != 2 * k_) throw InputError("strategy automaton must read the history alphabet");
    dfa_.complete();
}

StrategyAutomaton StrategyAutomaton::forgetful(const Dfa& over_symbols) {
    Dfa d = over_symbols;
    d.complete();
    std::size_t k = d.alphabet_size();
    Dfa h(d.num_states(), 2 * k, d.initial());
    for (std::size_t q = 0; q < d.num_states(); ++q) {
        int qi = static_cast<int>(q);
        h.set_accepting(qi, d.accepting(qi));
        for (std::size_t a = 0; a < k; ++a) {
            h.set_transition(qi, static_cast<Symbol>(a), d.next(qi, static_cast<Symbol>(a)));
            h.set_transition(qi, hat(static_cast<Symbol>(a), k), qi);
        }
    }
    return StrategyAutomaton(h, k, StrategyKind::Forgetful);
}

StrategyAutomaton strongly_regular_automaton(const Game& g, const StronglyRegularSpec& spec) {
    const Dfa& t = g.target();
    std::size_t n = t.num_states(), k = g.num_symbols();
    int call = static_cast<int>(n);
    for (auto [q, a] : spec.reroutes) {
        if (q < 0 || static_cast<std::size_t>(q) >= n) throw InputError("reroute names target state " + std::to_string(q) + " which does not exist");
        if (a < 0 || static_cast<std::size_t>(a) >= k || !g.is_function(a))
            throw InputError("reroute on a symbol that is not a function symbol");
    }
    Dfa d(n + 1, 2 * k, t.initial());
    d.set_accepting(call);
    for (std::size_t q = 0; q < n; ++q) {
        int qi = static_cast<int>(q);
        for (std::size_t a = 0; a < k; ++a) {
            Symbol s = static_cast<Symbol>(a);
            d.set_transition(qi, s, spec.reroutes.count({qi, s}) ? call : t.next(qi, s));
            d.set_transition(qi, hat(s, k), qi);
        }
    }
    for (std::size_t a = 0; a < 2 * k; ++a) d.set_transition(call, static_cast<Symbol>(a), call);
    return StrategyAutomaton(d, k, StrategyKind::StronglyRegular);
}

StronglyRegularSpec spec_from_json(const json& j, const Game& g) {
    StronglyRegularSpec s;
    if (!j.contains("reroutes")) return s;
    for (auto& r : j["reroutes"]) {
        if (!r.is_array() || r.size() != 2 || !r[0].is_number_integer() || !r[1].is_string())
            throw InputError("reroutes must be [state, \"symbol\"] pairs");
        s.reroutes.insert({r[0].get<int>(), g.alphabet().index(r[1].get<std::string>())});
    }
    return s;
}

json spec_to_json(const StronglyRegularSpec& s, const Game& g) {
    json j;
    j["kind"] = "strongly-regular";
    json r = json::array();
    for (auto [q, a] : s.reroutes) r.push_back({q, g.alphabet().name(a)});
    j["reroutes"] = r;
    return j;
}

StrategyAutomaton strategy_from_json(const json& j, const Game& g) {
    if (!j.is_object()) throw InputError("strategy file must be a JSON object");
    std::string kind = j.value("kind", "general");
    std::size_t k = g.num_symbols();
    if (kind == "strongly-regular") return strongly_regular_automaton(g, spec_from_json(j, g));
    if (kind == "forgetful") return StrategyAutomaton::forgetful(dfa_from_json(j, g.alphabet()));
    if (kind == "general") {
        Alphabet hist(history_labels(g.alphabet()));
        return StrategyAutomaton(dfa_from_json(j, hist), k, StrategyKind::General);
    }
    throw InputError("unknown strategy kind '" + kind + "'");
}

json strategy_to_json(const StrategyAutomaton& s, const Game& g) {
    Alphabet hist(history_labels(g.alphabet()));
    json j = dfa_to_json(s.dfa(), hist);
    j["kind"] = "general";
    return j;
}

StrategyAutomaton load_strategy(const std::string& path, const Game& g) { return strategy_from_json(read_json_file(path), g); }

// ---- plays ----------------------------------------------------------------------

JulietStrategy juliet_from_automaton(const Game& g, const StrategyAutomaton& a) {
    struct Tracker {
        int state;
        std::size_t seen = 0;
    };
    auto tr = std::make_shared<Tracker>(Tracker{a.initial()});
    const Game* gp = &g;
    return [tr, a, gp](const History& h, Symbol sym) {
        if (h.size() < tr->seen) *tr = Tracker{a.initial()};
        for (; tr->seen < h.size(); ++tr->seen) tr->state = a.dfa().next(tr->state, h[tr->seen]);
        return a.calls(*gp, tr->state, sym) ? MoveKind::Call : MoveKind::Read;
    };
}

RomeoStrategy romeo_table(std::map<Symbol, Word> replies) {
    return [replies = std::move(replies)](const History&, Symbol a) {
        auto it = replies.find(a);
        if (it == replies.end()) throw ProtocolError("reply table has no entry for the called symbol");
        return it->second;
    };
}

RomeoStrategy romeo_shortlex(const Game& g) {
    std::map<Symbol, Word> table;
    for (Symbol a : g.function_symbols()) table[a] = *shortest_word(g.rule(a).dfa);
    return romeo_table(std::move(table));
}

RomeoStrategy romeo_scripted(std::vector<Word> replies) {
    auto pos = std::make_shared<std::size_t>(0);
    return [replies = std::move(replies), pos](const History&, Symbol) {
        if (*pos >= replies.size()) throw ProtocolError("scripted replies exhausted");
        return replies[(*pos)++];
    };
}

const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::WinJuliet: return "win-juliet";
        case Outcome::WinRomeo: return "win-romeo";
        case Outcome::Truncated: return "truncated";
    }
    return "?";
}

std::vector<Configuration> Play::configurations() const {
    std::vector<Configuration> out;
    Configuration c{{}, input};
    out.push_back(c);
    for (auto& st : steps) {
        c.remaining.erase(c.remaining.begin());
        if (st.move == MoveKind::Read) {
            c.history.push_back(st.symbol);
        } else {
            c.history.push_back(hat(st.symbol, num_symbols));
            c.remaining.insert(c.remaining.begin(), st.reply.begin(), st.reply.end());
        }
        out.push_back(c);
    }
    return out;
}

Play run_play(const Game& g, const JulietStrategy& juliet, const RomeoStrategy& romeo, const Word& w,
              std::size_t step_limit) {
    std::size_t k = g.num_symbols();
    Play p;
    p.input = w;
    p.num_symbols = k;
    History history;
    std::vector<std::pair<Symbol, std::size_t>> rest;  // back is the current symbol
    for (auto it = w.rbegin(); it != w.rend(); ++it) rest.push_back({*it, 0});
    while (!rest.empty()) {
        if (p.steps.size() >= step_limit) {
            p.outcome = Outcome::Truncated;
            for (Symbol h : history)
                if (!is_hat(h, k)) p.final_string.push_back(h);
            return p;
        }
        auto [a, level] = rest.back();
        MoveKind m = juliet(history, a);
        rest.pop_back();
        if (m == MoveKind::Read) {
            history.push_back(a);
            p.steps.push_back({MoveKind::Read, a, {}, level});
            continue;
        }
        if (!g.is_function(a)) throw ProtocolError("call on non-function symbol '" + g.alphabet().name(a) + "'");
        Word x = romeo(history, a);
        if (!g.rule(a).dfa.accepts(x))
            throw ProtocolError("reply '" + g.alphabet().format(x) + "' is not in the replacement language of '" +
                                g.alphabet().name(a) + "'");
        history.push_back(hat(a, k));
        for (auto it = x.rbegin(); it != x.rend(); ++it) rest.push_back({*it, level + 1});
        p.depth = std::max(p.depth, level + 1);
        p.steps.push_back({MoveKind::Call, a, std::move(x), level});
    }
    for (Symbol h : history)
        if (!is_hat(h, k)) p.final_string.push_back(h);
    p.outcome = g.target().accepts(p.final_string) ? Outcome::WinJuliet : Outcome::WinRomeo;
    return p;
}

Play run_play(const Game& g, const StrategyAutomaton& a, const RomeoStrategy& romeo, const Word& w,
              std::size_t step_limit) {
    return run_play(g, juliet_from_automaton(g, a), romeo, w, step_limit);
}

// ---- brute force ----------------------------------------------------------------

const char* brute_outcome_name(BruteOutcome o) {
    switch (o) {
        case BruteOutcome::Win: return "win";
        case BruteOutcome::Lose: return "lose";
        case BruteOutcome::RomeoCanForceInfinite: return "romeo-can-force-infinite";
    }
    return "?";
}

BruteForceTable brute_force_table(const Game& g, const StrategyAutomaton& a) {
    std::size_t k = g.num_symbols();
    std::vector<std::vector<Word>> replies(k);
    for (Symbol f : g.function_symbols()) {
        const Dfa& d = g.rule(f).dfa;
        if (!is_finite_language(d))
            throw ScopeError("exhaustive play search needs finite replacement languages ('" + g.alphabet().name(f) + "' is infinite)");
        replies[static_cast<std::size_t>(f)] = enumerate_upto(d, d.num_states());
    }
    const Dfa& t = g.target();
    BruteForceTable tb;
    tb.num_a = a.num_states();
    tb.num_t = t.num_states();
    tb.k = k;
    std::size_t nt = tb.num_t;
    tb.ends.assign(tb.num_a * nt * k, {});
    auto idx = [&](std::size_t qa, std::size_t qt, std::size_t s) { return (qa * nt + qt) * k + s; };

    // Sub-plays of reads are immediate; sub-plays of calls are the least
    // fixpoint of running every reply through the current end-state table.
    for (std::size_t qa = 0; qa < tb.num_a; ++qa)
        for (std::size_t qt = 0; qt < nt; ++qt)
            for (std::size_t s = 0; s < k; ++s) {
                Symbol sym = static_cast<Symbol>(s);
                if (!a.calls(g, static_cast<int>(qa), sym))
                    tb.ends[idx(qa, qt, s)] = {a.after_read(static_cast<int>(qa), sym) * static_cast<int>(nt) + t.next(static_cast<int>(qt), sym)};
            }
    auto run_reply = [&](int start, const Word& x, std::size_t upto) {
        std::vector<int> cur{start};
        for (std::size_t i = 0; i < upto && !cur.empty(); ++i) {
            std::vector<int> nxt;
            for (int st : cur) {
                auto& e = tb.ends[idx(static_cast<std::size_t>(st) / nt, static_cast<std::size_t>(st) % nt, static_cast<std::size_t>(x[i]))];
                nxt.insert(nxt.end(), e.begin(), e.end());
            }
            std::sort(nxt.begin(), nxt.end());
            nxt.erase(std::unique(nxt.begin(), nxt.end()), nxt.end());
            cur.swap(nxt);
        }
        return cur;
    };
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t qa = 0; qa < tb.num_a; ++qa)
            for (std::size_t s = 0; s < k; ++s) {
                Symbol sym = static_cast<Symbol>(s);
                if (!a.calls(g, static_cast<int>(qa), sym)) continue;
                int qa2 = a.after_call(static_cast<int>(qa), sym);
                for (std::size_t qt = 0; qt < nt; ++qt) {
                    std::vector<int> all;
                    for (auto& x : replies[s]) {
                        auto e = run_reply(qa2 * static_cast<int>(nt) + static_cast<int>(qt), x, x.size());
                        all.insert(all.end(), e.begin(), e.end());
                    }
                    std::sort(all.begin(), all.end());
                    all.erase(std::unique(all.begin(), all.end()), all.end());
                    auto& slot = tb.ends[idx(qa, qt, s)];
                    if (all != slot) {
                        slot = std::move(all);
                        changed = true;
                    }
                }
            }
    }

    // Nesting graph on calling pairs (qa, a): an edge to (qa', b) when some
    // reply of a reaches b with the strategy in state qa' and b is called.
    // The strategy state does not depend on the target, so target state 0
    // stands in for all of them.
    std::size_t nodes = tb.num_a * k;
    std::vector<std::vector<int>> edges(nodes);
    for (std::size_t qa = 0; qa < tb.num_a; ++qa)
        for (std::size_t s = 0; s < k; ++s) {
            Symbol sym = static_cast<Symbol>(s);
            if (!a.calls(g, static_cast<int>(qa), sym)) continue;
            int qa2 = a.after_call(static_cast<int>(qa), sym);
            for (auto& x : replies[s])
                for (std::size_t i = 0; i < x.size(); ++i) {
                    for (int st : run_reply(qa2 * static_cast<int>(nt), x, i)) {
                        int qb = st / static_cast<int>(nt);
                        if (a.calls(g, qb, x[i])) edges[qa * k + s].push_back(qb * static_cast<int>(k) + x[i]);
                    }
                }
        }
    // Depth-first search with an explicit nesting stack: meeting an entry
    // that is still on the stack means Romeo can repeat that nesting forever.
    tb.diverges.assign(nodes, 0);
    std::vector<int> mark(nodes, 0);  // 0 new, 1 on stack, 2 done
    std::function<void(int)> dfs = [&](int v) {
        mark[static_cast<std::size_t>(v)] = 1;
        for (int w : edges[static_cast<std::size_t>(v)]) {
            if (mark[static_cast<std::size_t>(w)] == 1) {
                tb.diverges[static_cast<std::size_t>(v)] = 1;
                // everything on the stack between w and v lies on the cycle too
                tb.diverges[static_cast<std::size_t>(w)] = 1;
            } else if (mark[static_cast<std::size_t>(w)] == 0) {
                dfs(w);
            }
            if (tb.diverges[static_cast<std::size_t>(w)]) tb.diverges[static_cast<std::size_t>(v)] = 1;
        }
        mark[static_cast<std::size_t>(v)] = 2;
    };
    for (std::size_t v = 0; v < nodes; ++v)
        if (!mark[v]) dfs(static_cast<int>(v));
    // Propagate backwards until stable: a pair that can reach a diverging
    // pair diverges as well (covers nodes finished before the cycle closed).
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t v = 0; v < nodes; ++v) {
            if (tb.diverges[v]) continue;
            for (int w : edges[v])
                if (tb.diverges[static_cast<std::size_t>(w)]) {
                    tb.diverges[v] = 1;
                    changed = true;
                    break;
                }
        }
    }
    return tb;
}

BruteOutcome brute_force_outcome(const Game& g, const StrategyAutomaton& a, const BruteForceTable& tb, const Word& w) {
    std::size_t nt = tb.num_t;
    std::vector<int> cur{a.initial() * static_cast<int>(nt) + g.target().initial()};
    bool diverge = false;
    for (Symbol s : w) {
        std::vector<int> nxt;
        for (int st : cur) {
            int qa = st / static_cast<int>(nt), qt = st % static_cast<int>(nt);
            if (a.calls(g, qa, s) && tb.diverges[static_cast<std::size_t>(qa) * tb.k + static_cast<std::size_t>(s)]) diverge = true;
            auto& e = tb.end_states(qa, qt, s);
            nxt.insert(nxt.end(), e.begin(), e.end());
        }
        std::sort(nxt.begin(), nxt.end());
        nxt.erase(std::unique(nxt.begin(), nxt.end()), nxt.end());
        cur.swap(nxt);
    }
    for (int st : cur)
        if (!g.target().accepting(st % static_cast<int>(nt))) return BruteOutcome::Lose;
    return diverge ? BruteOutcome::RomeoCanForceInfinite : BruteOutcome::Win;
}

BruteOutcome brute_force_outcome(const Game& g, const StrategyAutomaton& a, const Word& w) {
    return brute_force_outcome(g, a, brute_force_table(g, a), w);
}

}  // namespace cfgame

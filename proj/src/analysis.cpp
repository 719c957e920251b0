#include "cfgame/analysis.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "cfgame/kernels.hpp"

namespace cfgame {

// ---- subexpressions ----------------------------------------------------------

SubexprIndex SubexprIndex::build(const Game& g) {
    SubexprIndex ix;
    std::size_t k = g.num_symbols();
    for (std::size_t a = 0; a < k; ++a) ix.nodes.push_back({Kind::Symbol, -1, -1, static_cast<Symbol>(a)});
    std::map<std::tuple<int, int, int>, int> interned;
    std::function<int(const Regex&)> add = [&](const Regex& r) -> int {
        using K = RegexNode::Kind;
        Kind kind;
        int l = -1, rr = -1;
        switch (r->kind) {
            case K::Symbol: return r->symbol;
            case K::Epsilon: kind = Kind::Epsilon; break;
            case K::Concat:
                kind = Kind::Concat;
                l = add(r->left);
                rr = add(r->right);
                break;
            case K::Union:
                kind = Kind::Union;
                l = add(r->left);
                rr = add(r->right);
                break;
            case K::Star:
                kind = Kind::Star;
                l = add(r->left);
                break;
            default: kind = Kind::Epsilon;
        }
        auto key = std::make_tuple(static_cast<int>(kind), l, rr);
        auto it = interned.find(key);
        if (it != interned.end()) return it->second;
        int id = static_cast<int>(ix.nodes.size());
        ix.nodes.push_back({kind, l, rr, -1});
        interned.emplace(key, id);
        return id;
    };
    ix.root.assign(k, -1);
    for (Symbol a : g.function_symbols()) ix.root[static_cast<std::size_t>(a)] = add(g.rule(a).regex);
    ix.rule_of.assign(ix.nodes.size(), {});
    for (Symbol a : g.function_symbols()) ix.rule_of[static_cast<std::size_t>(ix.root[static_cast<std::size_t>(a)])].push_back(a);
    ix.parents.assign(ix.nodes.size(), {});
    for (std::size_t n = 0; n < ix.nodes.size(); ++n) {
        const Node& nd = ix.nodes[n];
        int id = static_cast<int>(n);
        switch (nd.kind) {
            case Kind::Concat:
                ix.parents[static_cast<std::size_t>(nd.left)].push_back({id, Role::ConcatLeft});
                ix.parents[static_cast<std::size_t>(nd.right)].push_back({id, Role::ConcatRight});
                break;
            case Kind::Union:
                ix.parents[static_cast<std::size_t>(nd.left)].push_back({id, Role::UnionChild});
                if (nd.right != nd.left) ix.parents[static_cast<std::size_t>(nd.right)].push_back({id, Role::UnionChild});
                break;
            case Kind::Star: ix.parents[static_cast<std::size_t>(nd.left)].push_back({id, Role::StarInner}); break;
            default: break;
        }
    }
    return ix;
}

// ---- analysis automaton -----------------------------------------------------------

AnalysisAutomaton::AnalysisAutomaton(const Game& g, const StrategyAutomaton& a)
    : k_(g.num_symbols()), num_t_(g.target().num_states()) {
    const Dfa& t = g.target();
    id_.assign(a.num_states() * num_t_, -1);
    auto intern = [&](int p, int q) {
        int& slot = id_[static_cast<std::size_t>(p) * num_t_ + static_cast<std::size_t>(q)];
        if (slot < 0) {
            slot = static_cast<int>(pairs_.size());
            pairs_.emplace_back(p, q);
        }
        return slot;
    };
    intern(a.initial(), t.initial());
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
        auto [p, q] = pairs_[i];
        for (std::size_t s = 0; s < k_; ++s) {
            Symbol sym = static_cast<Symbol>(s);
            int r = intern(a.after_read(p, sym), t.next(q, sym));
            int c = intern(a.after_call(p, sym), q);
            read_.push_back(r);
            call_.push_back(c);
            calls_.push_back(a.calls(g, p, sym));
        }
    }
}

int AnalysisAutomaton::index_of(int strategy_state, int target_state) const {
    std::size_t i = static_cast<std::size_t>(strategy_state) * num_t_ + static_cast<std::size_t>(target_state);
    return i < id_.size() ? id_[i] : -1;
}

// ---- relations --------------------------------------------------------------------

Relations::Relations(const Game& g, const StrategyAutomaton& a, const BlockedFn& blocked)
    : k_(g.num_symbols()), idx_(SubexprIndex::build(g)), aut_(g, a) {
    using Kind = SubexprIndex::Kind;
    using Role = SubexprIndex::Role;
    std::size_t n = aut_.num_states(), nn = idx_.size(), k = k_;
    move_.assign(n * nn, Bitset(n));
    move_rev_.assign(n * nn, Bitset(n));
    next_.assign(n * nn, Bitset(n * k));
    inf_.assign(n, Bitset(nn));

    auto is_blocked = [&](int q, Symbol s) { return blocked && blocked(q, s); };
    auto reads = [&](int q, Symbol s) { return !aut_.calls(q, s) && !is_blocked(q, s); };
    auto calls = [&](int q, Symbol s) { return aut_.calls(q, s) && !is_blocked(q, s); };

    // callers[q1]: configurations (q, a) that call a and resume the
    // sub-play in q1
    std::vector<std::vector<std::pair<int, Symbol>>> callers(n);
    for (std::size_t q = 0; q < n; ++q)
        for (std::size_t s = 0; s < k; ++s)
            if (calls(static_cast<int>(q), static_cast<Symbol>(s)))
                callers[static_cast<std::size_t>(aut_.after_call(static_cast<int>(q), static_cast<Symbol>(s)))].push_back(
                    {static_cast<int>(q), static_cast<Symbol>(s)});

    // Move
    struct Triple {
        int q, r, q2;
    };
    std::vector<Triple> work;
    auto add_move = [&](int q, int r, int q2) {
        Bitset& b = move_[slot(q, r)];
        if (b.test(static_cast<std::size_t>(q2))) return;
        b.set(static_cast<std::size_t>(q2));
        move_rev_[slot(q2, r)].set(static_cast<std::size_t>(q));
        work.push_back({q, r, q2});
    };
    for (std::size_t q = 0; q < n; ++q) {
        int qi = static_cast<int>(q);
        for (std::size_t s = 0; s < k; ++s)
            if (reads(qi, static_cast<Symbol>(s))) add_move(qi, static_cast<int>(s), aut_.after_read(qi, static_cast<Symbol>(s)));
        for (std::size_t r = 0; r < nn; ++r)
            if (idx_.nodes[r].kind == Kind::Epsilon || idx_.nodes[r].kind == Kind::Star) add_move(qi, static_cast<int>(r), qi);
    }
    while (!work.empty()) {
        Triple t = work.back();
        work.pop_back();
        for (auto& par : idx_.parents[static_cast<std::size_t>(t.r)]) {
            const auto& pn = idx_.nodes[static_cast<std::size_t>(par.node)];
            switch (par.role) {
                case Role::ConcatLeft: {
                    Bitset tgt = move_[slot(t.q2, pn.right)];
                    tgt.for_each([&](std::size_t q3) { add_move(t.q, par.node, static_cast<int>(q3)); });
                    break;
                }
                case Role::ConcatRight: {
                    Bitset src = move_rev_[slot(t.q, pn.left)];
                    src.for_each([&](std::size_t q0) { add_move(static_cast<int>(q0), par.node, t.q2); });
                    break;
                }
                case Role::UnionChild: add_move(t.q, par.node, t.q2); break;
                case Role::StarInner: {
                    Bitset tgt = move_[slot(t.q2, par.node)];
                    tgt.for_each([&](std::size_t q3) { add_move(t.q, par.node, static_cast<int>(q3)); });
                    break;
                }
            }
        }
        if (idx_.nodes[static_cast<std::size_t>(t.r)].kind == Kind::Star) {
            Bitset src = move_rev_[slot(t.q, idx_.nodes[static_cast<std::size_t>(t.r)].left)];
            src.for_each([&](std::size_t q0) { add_move(static_cast<int>(q0), t.r, t.q2); });
        }
        for (Symbol s : idx_.rule_of[static_cast<std::size_t>(t.r)])
            for (auto [qc, cs] : callers[static_cast<std::size_t>(t.q)])
                if (cs == s) add_move(qc, s, t.q2);
    }

    // Next, propagated as whole bit-vector deltas
    struct Delta {
        int q, r;
        Bitset bits;
    };
    std::vector<Delta> nwork;
    auto add_next = [&](int q, int r, const Bitset& bits) {
        Bitset& cur = next_[slot(q, r)];
        Bitset fresh = bits.minus(cur);
        if (fresh.none()) return;
        cur |= fresh;
        nwork.push_back({q, r, std::move(fresh)});
    };
    for (std::size_t q = 0; q < n; ++q)
        for (std::size_t s = 0; s < k; ++s) {
            Bitset b(n * k);
            b.set(q * k + s);
            add_next(static_cast<int>(q), static_cast<int>(s), b);
        }
    while (!nwork.empty()) {
        Delta d = std::move(nwork.back());
        nwork.pop_back();
        for (auto& par : idx_.parents[static_cast<std::size_t>(d.r)]) {
            const auto& pn = idx_.nodes[static_cast<std::size_t>(par.node)];
            switch (par.role) {
                case Role::ConcatLeft:
                case Role::UnionChild: add_next(d.q, par.node, d.bits); break;
                case Role::ConcatRight: {
                    Bitset src = move_rev_[slot(d.q, pn.left)];
                    src.for_each([&](std::size_t q0) { add_next(static_cast<int>(q0), par.node, d.bits); });
                    break;
                }
                case Role::StarInner: {
                    Bitset src = move_rev_[slot(d.q, par.node)];
                    src.for_each([&](std::size_t q0) { add_next(static_cast<int>(q0), par.node, d.bits); });
                    break;
                }
            }
        }
        for (Symbol s : idx_.rule_of[static_cast<std::size_t>(d.r)])
            for (auto [qc, cs] : callers[static_cast<std::size_t>(d.q)])
                if (cs == s) add_next(qc, s, d.bits);
    }

    // Inf
    std::vector<std::pair<int, int>> iwork;
    auto add_inf = [&](int q, int r) {
        Bitset& b = inf_[static_cast<std::size_t>(q)];
        if (b.test(static_cast<std::size_t>(r))) return;
        b.set(static_cast<std::size_t>(r));
        iwork.push_back({q, r});
    };
    for (std::size_t q = 0; q < n; ++q)
        for (std::size_t s = 0; s < k; ++s) {
            int qi = static_cast<int>(q);
            Symbol sym = static_cast<Symbol>(s);
            if (!calls(qi, sym)) continue;
            int q1 = aut_.after_call(qi, sym);
            if (next(q1, idx_.root[s], qi, sym)) add_inf(qi, sym);
        }
    while (!iwork.empty()) {
        auto [q, r] = iwork.back();
        iwork.pop_back();
        for (auto& par : idx_.parents[static_cast<std::size_t>(r)]) {
            const auto& pn = idx_.nodes[static_cast<std::size_t>(par.node)];
            switch (par.role) {
                case Role::ConcatLeft:
                case Role::UnionChild: add_inf(q, par.node); break;
                case Role::ConcatRight: {
                    Bitset src = move_rev_[slot(q, pn.left)];
                    src.for_each([&](std::size_t q0) { add_inf(static_cast<int>(q0), par.node); });
                    break;
                }
                case Role::StarInner: {
                    Bitset src = move_rev_[slot(q, par.node)];
                    src.for_each([&](std::size_t q0) { add_inf(static_cast<int>(q0), par.node); });
                    break;
                }
            }
        }
        for (Symbol s : idx_.rule_of[static_cast<std::size_t>(r)])
            for (auto [qc, cs] : callers[static_cast<std::size_t>(q)])
                if (cs == s) add_inf(qc, s);
    }
}

std::size_t Relations::move_count() const {
    std::size_t c = 0;
    for (auto& b : move_) c += b.count();
    return c;
}
std::size_t Relations::next_count() const {
    std::size_t c = 0;
    for (auto& b : next_) c += b.count();
    return c;
}
std::size_t Relations::inf_count() const {
    std::size_t c = 0;
    for (auto& b : inf_) c += b.count();
    return c;
}

// ---- losing automaton and deciders ---------------------------------------------------

Nfa losing_nfa(const Game& g, const Relations& rel) {
    const auto& aut = rel.automaton();
    std::size_t n = aut.num_states(), k = g.num_symbols();
    int sink = static_cast<int>(n);
    Nfa nfa(n + 1, k);
    nfa.add_initial(aut.initial());
    nfa.set_accepting(sink);
    for (std::size_t q = 0; q < n; ++q) {
        int qi = static_cast<int>(q);
        if (!g.target().accepting(aut.target_state(qi))) nfa.set_accepting(qi);
        for (std::size_t s = 0; s < k; ++s) {
            Symbol sym = static_cast<Symbol>(s);
            rel.move_targets(qi, sym).for_each([&](std::size_t q2) { nfa.add_transition(qi, sym, static_cast<int>(q2)); });
            if (rel.inf(qi, sym)) nfa.add_transition(qi, sym, sink);
        }
    }
    for (std::size_t s = 0; s < k; ++s) nfa.add_transition(sink, static_cast<Symbol>(s), sink);
    return nfa;
}

Nfa losing_nfa(const Game& g, const StrategyAutomaton& a) { return losing_nfa(g, Relations(g, a)); }

bool is_winning(const Game& g, const StrategyAutomaton& a, const Word& w) { return !losing_nfa(g, a).accepts(w); }

Dfa winning_dfa(const Game& g, const StrategyAutomaton& a) {
    return minimize(complement(determinize_minimize(losing_nfa(g, a))));
}

std::vector<Word> winning_set_upto(const Game& g, const StrategyAutomaton& a, std::size_t max_len) {
    return enumerate_upto(winning_dfa(g, a), max_len);
}

DominanceResult is_dominated(const Game& g, const StrategyAutomaton& a1, const StrategyAutomaton& a2) {
    // W1 is inside W2 iff every word lost by a2 is lost by a1
    auto inc = contains(losing_nfa(g, a2), losing_nfa(g, a1));
    return {inc.included, inc.witness};
}

const char* relation_name(SetRelation r) {
    switch (r) {
        case SetRelation::Equal: return "equal";
        case SetRelation::Subset: return "subset";
        case SetRelation::Superset: return "superset";
        case SetRelation::Incomparable: return "incomparable";
    }
    return "?";
}

ComparisonResult compare_strategies(const Game& g, const StrategyAutomaton& a1, const StrategyAutomaton& a2) {
    Nfa l1 = losing_nfa(g, a1), l2 = losing_nfa(g, a2);
    auto in12 = contains(l2, l1);  // W1 in W2
    auto in21 = contains(l1, l2);  // W2 in W1
    ComparisonResult r;
    r.only_first = in12.witness;
    r.only_second = in21.witness;
    if (in12.included && in21.included) r.relation = SetRelation::Equal;
    else if (in12.included) r.relation = SetRelation::Subset;
    else if (in21.included) r.relation = SetRelation::Superset;
    else r.relation = SetRelation::Incomparable;
    // the shortlex order on winning sets is the reverse of the order on losing sets
    auto o = compare_shortlex(l1, l2);
    r.shortlex = o.order == Order::Less ? Order::Greater : o.order == Order::Greater ? Order::Less : Order::Equal;
    return r;
}

// ---- strongly regular search ---------------------------------------------------------

std::vector<std::pair<int, Symbol>> reroute_pairs(const Game& g) {
    std::vector<std::pair<int, Symbol>> out;
    for (std::size_t q = 0; q < g.target().num_states(); ++q)
        for (Symbol a : g.function_symbols()) out.push_back({static_cast<int>(q), a});
    return out;
}

StronglyRegularSpec spec_from_mask(const std::vector<std::pair<int, Symbol>>& pairs, std::uint64_t mask) {
    StronglyRegularSpec s;
    for (std::size_t i = 0; i < pairs.size(); ++i)
        if ((mask >> i) & 1u) s.reroutes.insert(pairs[i]);
    return s;
}

namespace {

SearchResult lazy_search(const Game& g, const Word& w, const SearchOptions& opt) {
    // Decisions on (target state, symbol) pairs: 0 read, 1 call, -1 open.
    // Open pairs are blocked in the analysis, so a losing play that avoids
    // them loses in every completion, and the first open pair some play on w
    // reaches is branched on.
    std::size_t nq = g.target().num_states(), k = g.num_symbols();
    std::vector<int> decision(nq * k, -1);
    for (std::size_t q = 0; q < nq; ++q)
        for (std::size_t a = 0; a < k; ++a)
            if (!g.is_function(static_cast<Symbol>(a))) decision[q * k + a] = 0;
    SearchResult res;
    std::function<bool()> dfs = [&]() -> bool {
        if (opt.cancelled && opt.cancelled()) {
            res.incomplete = true;
            return true;
        }
        if (++res.candidates > opt.budget)
            throw BudgetExceeded("strongly regular search exceeded the budget of " + std::to_string(opt.budget) + " nodes");
        StronglyRegularSpec spec;
        for (std::size_t q = 0; q < nq; ++q)
            for (std::size_t a = 0; a < k; ++a)
                if (decision[q * k + a] == 1) spec.reroutes.insert({static_cast<int>(q), static_cast<Symbol>(a)});
        StrategyAutomaton sa = strongly_regular_automaton(g, spec);
        AnalysisAutomaton probe(g, sa);
        auto blocked = [&](int st, Symbol a) {
            return decision[static_cast<std::size_t>(probe.target_state(st)) * k + static_cast<std::size_t>(a)] < 0;
        };
        Relations rel(g, sa, blocked);
        if (losing_nfa(g, rel).accepts(w)) return false;
        // configurations reachable on w through decided pairs
        const auto& aut = rel.automaton();
        std::size_t n = aut.num_states();
        Bitset cur(n);
        cur.set(static_cast<std::size_t>(aut.initial()));
        int open_pair = -1;
        for (Symbol a : w) {
            Bitset nxt(n);
            cur.for_each([&](std::size_t q) {
                const Bitset& cfg = rel.next_set(static_cast<int>(q), a);
                cfg.for_each([&](std::size_t bit) {
                    int st = static_cast<int>(bit / k);
                    Symbol b = static_cast<Symbol>(bit % k);
                    if (blocked(st, b)) {
                        int p = aut.target_state(st) * static_cast<int>(k) + b;
                        if (open_pair < 0 || p < open_pair) open_pair = p;
                    }
                });
                nxt |= rel.move_targets(static_cast<int>(q), a);
            });
            if (open_pair >= 0) break;
            cur = std::move(nxt);
        }
        if (open_pair < 0) {
            res.spec = spec;
            return true;
        }
        for (int choice : {0, 1}) {
            decision[static_cast<std::size_t>(open_pair)] = choice;
            if (dfs()) return true;
        }
        decision[static_cast<std::size_t>(open_pair)] = -1;
        return false;
    };
    dfs();
    if (res.incomplete) res.spec.reset();
    return res;
}

}  // namespace

SearchResult exists_winning_sreg(const Game& g, const Word& w, const SearchOptions& opt) {
    if (opt.mode == SearchMode::Lazy) return lazy_search(g, w, opt);
    auto pairs = reroute_pairs(g);
    if (pairs.size() >= 63 || (std::uint64_t{1} << pairs.size()) > opt.budget)
        throw BudgetExceeded(std::to_string(pairs.size()) + " reroute pairs give more candidates than the budget of " +
                             std::to_string(opt.budget));
    std::uint64_t total = std::uint64_t{1} << pairs.size();
    std::vector<std::uint64_t> order;
    if (opt.mode == SearchMode::Incremental) order = kernels::masks_by_popcount(pairs.size());
    kernels::SearchScan scan = opt.parallel ? kernels::first_winning_parallel(g, w, pairs, order, total, opt.cancelled)
                                            : kernels::first_winning_serial(g, w, pairs, order, total, opt.cancelled);
    SearchResult res;
    res.candidates = scan.checked;
    res.incomplete = scan.cancelled;
    if (scan.index >= 0 && !scan.cancelled) {
        std::uint64_t mask = order.empty() ? static_cast<std::uint64_t>(scan.index) : order[static_cast<std::size_t>(scan.index)];
        res.spec = spec_from_mask(pairs, mask);
    }
    return res;
}

}  // namespace cfgame

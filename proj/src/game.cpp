#include "cfgame/game.hpp"

#include <functional>

namespace cfgame {

namespace {

// States that are both reachable and can reach acceptance.
std::vector<char> useful_states(const Dfa& d) {
    std::size_t n = d.num_states(), k = d.alphabet_size();
    std::vector<char> reach(n, 0), live(n, 0);
    std::vector<int> st{d.initial()};
    reach[static_cast<std::size_t>(d.initial())] = 1;
    while (!st.empty()) {
        int q = st.back();
        st.pop_back();
        for (std::size_t a = 0; a < k; ++a) {
            int t = d.next(q, static_cast<Symbol>(a));
            if (t >= 0 && !reach[static_cast<std::size_t>(t)]) {
                reach[static_cast<std::size_t>(t)] = 1;
                st.push_back(t);
            }
        }
    }
    for (std::size_t q = 0; q < n; ++q) live[q] = d.accepting(static_cast<int>(q));
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t q = 0; q < n; ++q) {
            if (live[q]) continue;
            for (std::size_t a = 0; a < k; ++a) {
                int t = d.next(static_cast<int>(q), static_cast<Symbol>(a));
                if (t >= 0 && live[static_cast<std::size_t>(t)]) {
                    live[q] = 1;
                    changed = true;
                    break;
                }
            }
        }
    }
    for (std::size_t q = 0; q < n; ++q) live[q] = live[q] && reach[q];
    return live;
}

bool has_cycle(std::size_t n, const std::function<std::vector<int>(int)>& succ) {
    std::vector<int> color(n, 0);
    std::function<bool(int)> dfs = [&](int v) {
        color[static_cast<std::size_t>(v)] = 1;
        for (int w : succ(v)) {
            if (color[static_cast<std::size_t>(w)] == 1) return true;
            if (color[static_cast<std::size_t>(w)] == 0 && dfs(w)) return true;
        }
        color[static_cast<std::size_t>(v)] = 2;
        return false;
    };
    for (std::size_t v = 0; v < n; ++v)
        if (color[v] == 0 && dfs(static_cast<int>(v))) return true;
    return false;
}

}  // namespace

std::vector<Symbol> occurring_symbols(const Dfa& d) {
    auto useful = useful_states(d);
    std::vector<char> occ(d.alphabet_size(), 0);
    for (std::size_t q = 0; q < d.num_states(); ++q) {
        if (!useful[q]) continue;
        for (std::size_t a = 0; a < d.alphabet_size(); ++a) {
            int t = d.next(static_cast<int>(q), static_cast<Symbol>(a));
            if (t >= 0 && useful[static_cast<std::size_t>(t)]) occ[a] = 1;
        }
    }
    std::vector<Symbol> out;
    for (std::size_t a = 0; a < occ.size(); ++a)
        if (occ[a]) out.push_back(static_cast<Symbol>(a));
    return out;
}

bool is_finite_language(const Dfa& d) {
    auto useful = useful_states(d);
    return !has_cycle(d.num_states(), [&](int q) {
        std::vector<int> out;
        if (!useful[static_cast<std::size_t>(q)]) return out;
        for (std::size_t a = 0; a < d.alphabet_size(); ++a) {
            int t = d.next(q, static_cast<Symbol>(a));
            if (t >= 0 && useful[static_cast<std::size_t>(t)]) out.push_back(t);
        }
        return out;
    });
}

Game::Game(Alphabet alphabet, const std::map<Symbol, Regex>& rules, Dfa target)
    : alphabet_(std::move(alphabet)), rules_(alphabet_.size()) {
    std::size_t k = alphabet_.size();
    if (k == 0) throw InputError("game alphabet is empty");
    for (auto& [a, re] : rules) {
        if (a < 0 || static_cast<std::size_t>(a) >= k) throw InputError("rule for a symbol outside the alphabet");
        Rule r{re, regex_to_nfa(re, k), Dfa()};
        r.dfa = determinize_minimize(r.nfa);
        const std::string& name = alphabet_.name(a);
        if (r.dfa.accepting(r.dfa.initial()))
            throw InputError("rule for '" + name + "' accepts the empty word");
        if (is_empty(r.dfa)) throw InputError("rule for '" + name + "' denotes the empty language");
        rules_[static_cast<std::size_t>(a)] = std::move(r);
        functions_.push_back(a);
    }
    if (target.alphabet_size() != k) throw InputError("target automaton alphabet does not match the game");
    if (target.num_states() == 0) throw InputError("target automaton has no states");
    Dfa completed = target;
    completed.complete();
    target_ = minimize(completed);
    if (target_.num_states() < completed.num_states())
        notices_.push_back("target was not minimal: " + std::to_string(completed.num_states()) + " states reduced to " +
                           std::to_string(target_.num_states()));
}

const Rule& Game::rule(Symbol a) const {
    const auto& r = rules_.at(static_cast<std::size_t>(a));
    if (!r) throw InputError("'" + alphabet_.name(a) + "' is not a function symbol");
    return *r;
}

std::map<Symbol, Regex> Game::rule_map() const {
    std::map<Symbol, Regex> m;
    for (Symbol a : functions_) m[a] = rules_[static_cast<std::size_t>(a)]->regex;
    return m;
}

Game Game::with_target(const Dfa& target) const { return Game(alphabet_, rule_map(), target); }

Game game_from_json(const json& j) {
    if (!j.is_object()) throw InputError("game file must be a JSON object");
    for (const char* key : {"alphabet", "rules", "target"})
        if (!j.contains(key)) throw InputError(std::string("game file: missing '") + key + "'");
    if (!j["alphabet"].is_array()) throw InputError("game file: 'alphabet' must be an array of strings");
    std::vector<std::string> names;
    for (auto& s : j["alphabet"]) {
        if (!s.is_string()) throw InputError("game file: 'alphabet' must be an array of strings");
        names.push_back(s.get<std::string>());
    }
    Alphabet ab(names);
    if (!j["rules"].is_object()) throw InputError("game file: 'rules' must be an object");
    std::map<Symbol, Regex> rules;
    for (auto& [key, val] : j["rules"].items()) {
        if (!val.is_string()) throw InputError("game file: rule for '" + key + "' must be a regex string");
        auto a = ab.find(key);
        if (!a) throw InputError("game file: rule for unknown symbol '" + key + "'");
        rules[*a] = parse_regex(val.get<std::string>(), ab);
    }
    return Game(ab, rules, dfa_from_json(j["target"], ab));
}

Game load_game(const std::string& path) { return game_from_json(read_json_file(path)); }

json game_to_json(const Game& g) {
    json j;
    j["alphabet"] = g.alphabet().names();
    json rules = json::object();
    for (Symbol a : g.function_symbols()) rules[g.alphabet().name(a)] = regex_to_string(g.rule(a).regex, g.alphabet());
    j["rules"] = rules;
    j["target"] = dfa_to_json(g.target(), g.alphabet());
    return j;
}

Classification classify(const Game& g) {
    Classification c;
    std::size_t k = g.num_symbols();
    c.function_symbols = g.function_symbols();
    c.prefix_free = true;
    c.finite_rules = true;
    for (Symbol a : g.function_symbols()) {
        const Rule& r = g.rule(a);
        if (!is_prefix_free(r.nfa).prefix_free) c.prefix_free = false;
        if (!is_finite_language(r.dfa)) c.finite_rules = false;
        c.occurs[a] = occurring_symbols(r.dfa);
    }
    c.non_recursive = !has_cycle(k, [&](int a) {
        std::vector<int> out;
        auto it = c.occurs.find(a);
        if (it != c.occurs.end())
            for (Symbol b : it->second)
                if (g.is_function(b)) out.push_back(b);
        return out;
    });
    c.unary = k == 1;
    c.finite_target = is_finite_language(g.target());
    return c;
}

json classification_json(const Classification& c, const Alphabet& ab) {
    json j;
    j["prefix_free"] = c.prefix_free;
    j["non_recursive"] = c.non_recursive;
    j["unary"] = c.unary;
    j["finite_target"] = c.finite_target;
    j["finite_rules"] = c.finite_rules;
    json fs = json::array();
    for (Symbol a : c.function_symbols) fs.push_back(ab.name(a));
    j["function_symbols"] = fs;
    return j;
}

Game to_prefix_free(const Game& g, const std::string& end_symbol) {
    if (g.alphabet().find(end_symbol)) throw InputError("end symbol '" + end_symbol + "' already belongs to the alphabet");
    Alphabet ab = g.alphabet();
    Symbol end = ab.add(end_symbol);
    std::size_t k = ab.size();
    std::map<Symbol, Regex> rules;
    for (Symbol a : g.function_symbols()) rules[a] = re_concat(g.rule(a).regex, re_symbol(end));
    const Dfa& t = g.target();
    Dfa nt(t.num_states(), k, t.initial());
    for (std::size_t q = 0; q < t.num_states(); ++q) {
        int qi = static_cast<int>(q);
        nt.set_accepting(qi, t.accepting(qi));
        for (std::size_t a = 0; a + 1 < k; ++a) nt.set_transition(qi, static_cast<Symbol>(a), t.next(qi, static_cast<Symbol>(a)));
        nt.set_transition(qi, end, qi);
    }
    return Game(ab, rules, nt);
}

}  // namespace cfgame

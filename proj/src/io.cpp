#include "cfgame/io.hpp"

#include <fstream>
#include <sstream>

namespace cfgame {

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError("'" + path + "' is not valid JSON: " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << text;
}

namespace {

int get_int(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer()) throw InputError(std::string("automaton: missing integer '") + key + "'");
    return j[key].get<int>();
}

std::vector<int> int_list(const json& j, const char* key, bool required) {
    std::vector<int> out;
    if (!j.contains(key)) {
        if (required) throw InputError(std::string("automaton: missing '") + key + "'");
        return out;
    }
    const json& v = j[key];
    if (v.is_number_integer()) return {v.get<int>()};
    if (!v.is_array()) throw InputError(std::string("automaton: '") + key + "' must be an integer or array");
    for (auto& x : v) {
        if (!x.is_number_integer()) throw InputError(std::string("automaton: '") + key + "' entries must be integers");
        out.push_back(x.get<int>());
    }
    return out;
}

struct RawAutomaton {
    int states;
    std::vector<int> initial, accepting;
    std::vector<std::tuple<int, Symbol, int>> edges;
};

RawAutomaton read_raw(const json& j, const Alphabet& given) {
    if (!j.is_object()) throw InputError("automaton must be a JSON object");
    Alphabet local;
    const Alphabet* ab = &given;
    if (j.contains("alphabet")) {
        local = Alphabet(j["alphabet"].get<std::vector<std::string>>());
        ab = &local;
    }
    RawAutomaton r;
    r.states = get_int(j, "states");
    if (r.states <= 0) throw InputError("automaton: 'states' must be positive");
    r.initial = int_list(j, "initial", true);
    r.accepting = int_list(j, "accepting", false);
    auto check = [&](int q) {
        if (q < 0 || q >= r.states) throw InputError("automaton: state " + std::to_string(q) + " out of range");
    };
    for (int q : r.initial) check(q);
    for (int q : r.accepting) check(q);
    if (j.contains("transitions")) {
        for (auto& t : j["transitions"]) {
            if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() || !t[1].is_string() || !t[2].is_number_integer())
                throw InputError("automaton: transitions must be [from, \"symbol\", to]");
            int from = t[0].get<int>(), to = t[2].get<int>();
            check(from);
            check(to);
            Symbol s = ab->index(t[1].get<std::string>());
            // re-map into the caller's alphabet if the file carried its own
            if (ab != &given) s = given.index(ab->name(s));
            r.edges.emplace_back(from, s, to);
        }
    }
    return r;
}

}  // namespace

Dfa dfa_from_json(const json& j, const Alphabet& alphabet) {
    RawAutomaton r = read_raw(j, alphabet);
    if (r.initial.size() != 1) throw InputError("deterministic automaton needs exactly one initial state");
    Dfa d(static_cast<std::size_t>(r.states), alphabet.size(), r.initial[0]);
    for (int q : r.accepting) d.set_accepting(q);
    for (auto [from, s, to] : r.edges) {
        int old = d.next(from, s);
        if (old >= 0 && old != to)
            throw InputError("automaton is not deterministic: state " + std::to_string(from) + " on '" +
                             alphabet.name(s) + "'");
        d.set_transition(from, s, to);
    }
    return d;
}

json dfa_to_json(const Dfa& d, const Alphabet& alphabet) {
    json j;
    j["states"] = d.num_states();
    j["initial"] = d.initial();
    json acc = json::array(), tr = json::array();
    for (std::size_t q = 0; q < d.num_states(); ++q) {
        if (d.accepting(static_cast<int>(q))) acc.push_back(q);
        for (std::size_t a = 0; a < d.alphabet_size(); ++a) {
            int t = d.next(static_cast<int>(q), static_cast<Symbol>(a));
            if (t >= 0) tr.push_back({q, alphabet.name(static_cast<Symbol>(a)), t});
        }
    }
    j["accepting"] = acc;
    j["transitions"] = tr;
    return j;
}

Nfa nfa_from_json(const json& j, const Alphabet& alphabet) {
    RawAutomaton r = read_raw(j, alphabet);
    Nfa n(static_cast<std::size_t>(r.states), alphabet.size());
    for (int q : r.initial) n.add_initial(q);
    for (int q : r.accepting) n.set_accepting(q);
    for (auto [from, s, to] : r.edges) n.add_transition(from, s, to);
    return n;
}

json nfa_to_json(const Nfa& n, const Alphabet& alphabet) {
    json j;
    j["states"] = n.num_states();
    j["initial"] = n.initial();
    json acc = json::array(), tr = json::array();
    for (std::size_t q = 0; q < n.num_states(); ++q) {
        if (n.accepting(static_cast<int>(q))) acc.push_back(q);
        for (std::size_t a = 0; a < n.alphabet_size(); ++a)
            for (int t : n.successors(static_cast<int>(q), static_cast<Symbol>(a)))
                tr.push_back({q, alphabet.name(static_cast<Symbol>(a)), t});
    }
    j["accepting"] = acc;
    j["transitions"] = tr;
    return j;
}

json word_list_json(const std::vector<Word>& words, const Alphabet& alphabet) {
    json a = json::array();
    for (auto& w : words) a.push_back(alphabet.format(w));
    return a;
}

}  // namespace cfgame

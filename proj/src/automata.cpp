#include "cfgame/automata.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

namespace cfgame {

// ---- Alphabet -------------------------------------------------------------------

Alphabet::Alphabet(std::vector<std::string> symbols) {
    for (auto& s : symbols) add(s);
}

Symbol Alphabet::add(const std::string& s) {
    if (s.empty()) throw InputError("empty symbol name");
    if (index_.count(s)) throw InputError("duplicate symbol '" + s + "'");
    Symbol id = static_cast<Symbol>(names_.size());
    names_.push_back(s);
    index_.emplace(s, id);
    return id;
}

std::optional<Symbol> Alphabet::find(std::string_view s) const {
    auto it = index_.find(std::string(s));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Symbol Alphabet::index(std::string_view s) const {
    auto f = find(s);
    if (!f) throw InputError("unknown symbol '" + std::string(s) + "'");
    return *f;
}

std::string Alphabet::format(const Word& w) const {
    bool packed = std::all_of(names_.begin(), names_.end(), [](const std::string& n) { return n.size() == 1; });
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!packed && i) out += ' ';
        out += name(w[i]);
    }
    return out;
}

Word Alphabet::parse(std::string_view text) const {
    Word w;
    if (text.empty() || text == "ε") return w;
    bool spaced = std::any_of(text.begin(), text.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
    if (spaced) {
        std::istringstream in{std::string(text)};
        std::string tok;
        while (in >> tok) w.push_back(index(tok));
        return w;
    }
    std::size_t i = 0;
    while (i < text.size()) {
        std::size_t best = 0;
        Symbol best_sym = -1;
        for (std::size_t a = 0; a < names_.size(); ++a) {
            const auto& n = names_[a];
            if (n.size() > best && text.compare(i, n.size(), n) == 0) {
                best = n.size();
                best_sym = static_cast<Symbol>(a);
            }
        }
        if (best_sym < 0) throw InputError("cannot split word '" + std::string(text) + "' into symbols");
        w.push_back(best_sym);
        i += best;
    }
    return w;
}

// ---- Regex ------------------------------------------------------------------------

Regex re_symbol(Symbol a) { return std::make_shared<RegexNode>(RegexNode{RegexNode::Kind::Symbol, a, nullptr, nullptr}); }
Regex re_epsilon() { return std::make_shared<RegexNode>(RegexNode{RegexNode::Kind::Epsilon, -1, nullptr, nullptr}); }
Regex re_concat(Regex l, Regex r) {
    return std::make_shared<RegexNode>(RegexNode{RegexNode::Kind::Concat, -1, std::move(l), std::move(r)});
}
Regex re_union(Regex l, Regex r) {
    return std::make_shared<RegexNode>(RegexNode{RegexNode::Kind::Union, -1, std::move(l), std::move(r)});
}
Regex re_star(Regex r) { return std::make_shared<RegexNode>(RegexNode{RegexNode::Kind::Star, -1, std::move(r), nullptr}); }

Regex re_word(const Word& w) {
    if (w.empty()) return re_epsilon();
    Regex r = re_symbol(w[0]);
    for (std::size_t i = 1; i < w.size(); ++i) r = re_concat(r, re_symbol(w[i]));
    return r;
}

Regex re_union_of(const std::vector<Regex>& parts) {
    if (parts.empty()) throw InputError("union of no expressions");
    Regex r = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) r = re_union(r, parts[i]);
    return r;
}

bool regex_equal(const Regex& a, const Regex& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind || a->symbol != b->symbol) return false;
    return regex_equal(a->left, b->left) && regex_equal(a->right, b->right);
}

namespace {

class RegexParser {
public:
    RegexParser(std::string_view text, const Alphabet& ab) : s_(text), ab_(ab) {}

    Regex parse() {
        skip();
        if (pos_ >= s_.size()) fail("empty expression");
        Regex r = parse_union();
        skip();
        if (pos_ < s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& msg) {
        throw InputError("regex '" + std::string(s_) + "' at offset " + std::to_string(pos_) + ": " + msg);
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool at_atom_start() {
        skip();
        if (pos_ >= s_.size()) return false;
        char c = s_[pos_];
        return c != '+' && c != '*' && c != ')';
    }
    Regex parse_union() {
        Regex r = parse_concat();
        for (;;) {
            skip();
            if (pos_ < s_.size() && s_[pos_] == '+') {
                ++pos_;
                r = re_union(r, parse_concat());
            } else {
                return r;
            }
        }
    }
    Regex parse_concat() {
        if (!at_atom_start()) fail("expected an expression");
        Regex r = parse_star();
        while (at_atom_start()) r = re_concat(r, parse_star());
        return r;
    }
    Regex parse_star() {
        Regex r = parse_atom();
        for (;;) {
            skip();
            if (pos_ < s_.size() && s_[pos_] == '*') {
                ++pos_;
                r = re_star(r);
            } else {
                return r;
            }
        }
    }
    Regex parse_atom() {
        skip();
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            skip();
            if (pos_ < s_.size() && s_[pos_] == ')') fail("empty group");
            Regex r = parse_union();
            skip();
            if (pos_ >= s_.size() || s_[pos_] != ')') fail("missing ')'");
            ++pos_;
            return r;
        }
        if (c == '"') {
            auto end = s_.find('"', pos_ + 1);
            if (end == std::string_view::npos) fail("unterminated quote");
            std::string name(s_.substr(pos_ + 1, end - pos_ - 1));
            auto sym = ab_.find(name);
            if (!sym) fail("unknown symbol \"" + name + "\"");
            pos_ = end + 1;
            return re_symbol(*sym);
        }
        // one UTF-8 code point
        std::size_t len = 1;
        auto u = static_cast<unsigned char>(c);
        if (u >= 0xF0) len = 4;
        else if (u >= 0xE0) len = 3;
        else if (u >= 0xC0) len = 2;
        std::string name(s_.substr(pos_, len));
        auto sym = ab_.find(name);
        if (!sym && name == "ε") {
            pos_ += len;
            return re_epsilon();
        }
        if (!sym) fail("unknown symbol '" + name + "'");
        pos_ += len;
        return re_symbol(*sym);
    }

    std::string_view s_;
    const Alphabet& ab_;
    std::size_t pos_ = 0;
};

bool needs_quotes(const std::string& n) {
    if (n.size() == 1) {
        char c = n[0];
        return c == '+' || c == '*' || c == '(' || c == ')' || c == '"' || std::isspace(static_cast<unsigned char>(c));
    }
    // a single multi-byte code point can stay bare
    auto u = static_cast<unsigned char>(n[0]);
    std::size_t len = u >= 0xF0 ? 4 : u >= 0xE0 ? 3 : u >= 0xC0 ? 2 : 1;
    return len != n.size();
}

void print_regex(const Regex& r, const Alphabet& ab, int ctx, std::string& out) {
    using K = RegexNode::Kind;
    int prec = r->kind == K::Union ? 0 : r->kind == K::Concat ? 1 : r->kind == K::Star ? 2 : 3;
    bool paren = prec < ctx;
    if (paren) out += '(';
    switch (r->kind) {
        case K::Symbol: {
            const auto& n = ab.name(r->symbol);
            if (needs_quotes(n)) out += '"' + n + '"';
            else out += n;
            break;
        }
        case K::Epsilon: out += "ε"; break;
        case K::Union:
            print_regex(r->left, ab, 0, out);
            out += '+';
            print_regex(r->right, ab, 1, out);
            break;
        case K::Concat:
            print_regex(r->left, ab, 1, out);
            if (out.size() && out.back() != ' ') out += ' ';
            print_regex(r->right, ab, 2, out);
            break;
        case K::Star:
            print_regex(r->left, ab, 3, out);
            out += '*';
            break;
    }
    if (paren) out += ')';
}

}  // namespace

Regex parse_regex(std::string_view text, const Alphabet& alphabet) { return RegexParser(text, alphabet).parse(); }

std::string regex_to_string(const Regex& r, const Alphabet& alphabet) {
    std::string out;
    print_regex(r, alphabet, 0, out);
    // packed alphabets read better without the separating blanks
    bool packed = std::all_of(alphabet.names().begin(), alphabet.names().end(),
                              [](const std::string& n) { return !needs_quotes(n); });
    if (packed) out.erase(std::remove(out.begin(), out.end(), ' '), out.end());
    return out;
}

// ---- Nfa ---------------------------------------------------------------------------

Nfa::Nfa(std::size_t states, std::size_t alphabet_size)
    : k_(alphabet_size), succ_(states, std::vector<std::vector<int>>(alphabet_size)), acc_(states, false) {}

int Nfa::add_state() {
    succ_.emplace_back(k_);
    acc_.push_back(false);
    return static_cast<int>(succ_.size() - 1);
}

void Nfa::add_transition(int from, Symbol a, int to) {
    auto& v = succ_[static_cast<std::size_t>(from)][static_cast<std::size_t>(a)];
    auto it = std::lower_bound(v.begin(), v.end(), to);
    if (it == v.end() || *it != to) v.insert(it, to);
}

void Nfa::add_initial(int q) {
    auto it = std::lower_bound(init_.begin(), init_.end(), q);
    if (it == init_.end() || *it != q) init_.insert(it, q);
}

Bitset Nfa::initial_set() const {
    Bitset s(num_states());
    for (int q : init_) s.set(static_cast<std::size_t>(q));
    return s;
}

Bitset Nfa::step(const Bitset& s, Symbol a) const {
    Bitset r(num_states());
    s.for_each([&](std::size_t q) {
        for (int p : succ_[q][static_cast<std::size_t>(a)]) r.set(static_cast<std::size_t>(p));
    });
    return r;
}

bool Nfa::accepts_set(const Bitset& s) const {
    bool acc = false;
    s.for_each([&](std::size_t q) { acc = acc || acc_[q]; });
    return acc;
}

bool Nfa::accepts(const Word& w) const {
    Bitset s = initial_set();
    for (Symbol a : w) s = step(s, a);
    return accepts_set(s);
}

std::size_t Nfa::num_transitions() const {
    std::size_t c = 0;
    for (auto& row : succ_)
        for (auto& v : row) c += v.size();
    return c;
}

// ---- Dfa ---------------------------------------------------------------------------

Dfa::Dfa(std::size_t states, std::size_t alphabet_size, int initial)
    : k_(alphabet_size), init_(initial), delta_(states * alphabet_size, -1), acc_(states, false) {}

int Dfa::add_state(bool accepting) {
    delta_.resize(delta_.size() + k_, -1);
    acc_.push_back(accepting);
    return static_cast<int>(acc_.size() - 1);
}

int Dfa::run(const Word& w, int from) const {
    int q = from;
    for (Symbol a : w) {
        q = next(q, a);
        if (q < 0) return -1;
    }
    return q;
}

bool Dfa::accepts(const Word& w) const {
    int q = run(w);
    return q >= 0 && accepting(q);
}

bool Dfa::is_total() const {
    return std::none_of(delta_.begin(), delta_.end(), [](int t) { return t < 0; });
}

bool Dfa::complete() {
    if (is_total() && !acc_.empty()) return false;
    int sink = add_state(false);
    for (auto& t : delta_)
        if (t < 0) t = sink;
    return true;
}

Dfa Dfa::with_initial(int q) const {
    Dfa d = *this;
    d.init_ = q;
    return d;
}

Nfa Dfa::to_nfa() const {
    Nfa n(num_states(), k_);
    for (std::size_t q = 0; q < num_states(); ++q) {
        n.set_accepting(static_cast<int>(q), acc_[q]);
        for (std::size_t a = 0; a < k_; ++a) {
            int t = delta_[q * k_ + a];
            if (t >= 0) n.add_transition(static_cast<int>(q), static_cast<Symbol>(a), t);
        }
    }
    n.add_initial(init_);
    return n;
}

// ---- constructions ------------------------------------------------------------

namespace {

struct Glushkov {
    std::vector<Symbol> pos_sym;           // symbol of each position
    std::vector<std::vector<int>> follow;  // follow sets

    struct Info {
        bool nullable;
        std::vector<int> first, last;
    };

    Info walk(const Regex& r) {
        using K = RegexNode::Kind;
        switch (r->kind) {
            case K::Epsilon: return {true, {}, {}};
            case K::Symbol: {
                int p = static_cast<int>(pos_sym.size());
                pos_sym.push_back(r->symbol);
                follow.emplace_back();
                return {false, {p}, {p}};
            }
            case K::Union: {
                Info l = walk(r->left), rr = walk(r->right);
                l.first.insert(l.first.end(), rr.first.begin(), rr.first.end());
                l.last.insert(l.last.end(), rr.last.begin(), rr.last.end());
                return {l.nullable || rr.nullable, std::move(l.first), std::move(l.last)};
            }
            case K::Concat: {
                Info l = walk(r->left), rr = walk(r->right);
                for (int p : l.last) follow[static_cast<std::size_t>(p)].insert(follow[static_cast<std::size_t>(p)].end(), rr.first.begin(), rr.first.end());
                Info out;
                out.nullable = l.nullable && rr.nullable;
                out.first = l.first;
                if (l.nullable) out.first.insert(out.first.end(), rr.first.begin(), rr.first.end());
                out.last = rr.last;
                if (rr.nullable) out.last.insert(out.last.end(), l.last.begin(), l.last.end());
                return out;
            }
            case K::Star: {
                Info in = walk(r->left);
                for (int p : in.last) follow[static_cast<std::size_t>(p)].insert(follow[static_cast<std::size_t>(p)].end(), in.first.begin(), in.first.end());
                return {true, std::move(in.first), std::move(in.last)};
            }
        }
        return {false, {}, {}};
    }
};

struct PairHash {
    std::size_t operator()(const std::pair<Bitset, Bitset>& p) const {
        return p.first.hash() * 31 + p.second.hash();
    }
};

// Shared skeleton for breadth-first searches over pairs of subset states:
// returns the first dequeued pair for which stop() holds, with its word.
template <class Stop, class Skip>
std::optional<Word> pair_bfs(const Nfa& a, const Bitset& sa, const Nfa& b, const Bitset& sb,
                             std::optional<std::size_t> max_len, Stop stop, Skip skip) {
    struct Node {
        Bitset x, y;
        int parent;
        Symbol sym;
        std::size_t len;
    };
    std::vector<Node> nodes;
    std::unordered_set<std::pair<Bitset, Bitset>, PairHash> seen;
    nodes.push_back({sa, sb, -1, -1, 0});
    seen.insert({sa, sb});
    std::size_t k = a.alphabet_size();
    for (std::size_t head = 0; head < nodes.size(); ++head) {
        if (stop(nodes[head].x, nodes[head].y)) {
            Word w;
            for (int i = static_cast<int>(head); nodes[static_cast<std::size_t>(i)].parent >= 0; i = nodes[static_cast<std::size_t>(i)].parent)
                w.push_back(nodes[static_cast<std::size_t>(i)].sym);
            std::reverse(w.begin(), w.end());
            return w;
        }
        if (max_len && nodes[head].len >= *max_len) continue;
        for (std::size_t s = 0; s < k; ++s) {
            Bitset nx = a.step(nodes[head].x, static_cast<Symbol>(s));
            Bitset ny = b.step(nodes[head].y, static_cast<Symbol>(s));
            if (skip(nx, ny)) continue;
            if (!seen.insert({nx, ny}).second) continue;
            nodes.push_back({std::move(nx), std::move(ny), static_cast<int>(head), static_cast<Symbol>(s), nodes[head].len + 1});
        }
    }
    return std::nullopt;
}

}  // namespace

Nfa regex_to_nfa(const Regex& r, std::size_t alphabet_size) {
    Glushkov g;
    auto info = g.walk(r);
    std::size_t n = g.pos_sym.size() + 1;
    Nfa nfa(n, alphabet_size);
    nfa.add_initial(0);
    if (info.nullable) nfa.set_accepting(0);
    for (int p : info.first) nfa.add_transition(0, g.pos_sym[static_cast<std::size_t>(p)], p + 1);
    for (std::size_t p = 0; p < g.follow.size(); ++p)
        for (int q : g.follow[p]) nfa.add_transition(static_cast<int>(p) + 1, g.pos_sym[static_cast<std::size_t>(q)], q + 1);
    for (int p : info.last) nfa.set_accepting(p + 1);
    return nfa;
}

Dfa determinize(const Nfa& n) {
    std::size_t k = n.alphabet_size();
    std::unordered_map<Bitset, int, BitsetHash> id;
    std::vector<Bitset> sets;
    Dfa d(0, k);
    auto intern = [&](Bitset s) {
        auto it = id.find(s);
        if (it != id.end()) return it->second;
        int q = d.add_state(n.accepts_set(s));
        id.emplace(s, q);
        sets.push_back(std::move(s));
        return q;
    };
    intern(n.initial_set());
    for (std::size_t i = 0; i < sets.size(); ++i) {
        for (std::size_t a = 0; a < k; ++a) {
            int t = intern(n.step(sets[i], static_cast<Symbol>(a)));
            d.set_transition(static_cast<int>(i), static_cast<Symbol>(a), t);
        }
    }
    d.set_initial(0);
    return d;
}

Dfa minimize(const Dfa& in, std::vector<int>* old_to_new) {
    Dfa d = in;
    d.complete();
    std::size_t n = d.num_states(), k = d.alphabet_size();
    // reachable states
    std::vector<char> reach(n, 0);
    std::vector<int> stack{d.initial()};
    reach[static_cast<std::size_t>(d.initial())] = 1;
    while (!stack.empty()) {
        int q = stack.back();
        stack.pop_back();
        for (std::size_t a = 0; a < k; ++a) {
            int t = d.next(q, static_cast<Symbol>(a));
            if (!reach[static_cast<std::size_t>(t)]) {
                reach[static_cast<std::size_t>(t)] = 1;
                stack.push_back(t);
            }
        }
    }
    // Moore refinement
    std::vector<int> cls(n, -1);
    for (std::size_t q = 0; q < n; ++q)
        if (reach[q]) cls[q] = d.accepting(static_cast<int>(q)) ? 1 : 0;
    std::size_t num_classes = 0;
    for (;;) {
        std::map<std::vector<int>, int> sig_id;
        std::vector<int> next_cls(n, -1);
        for (std::size_t q = 0; q < n; ++q) {
            if (!reach[q]) continue;
            std::vector<int> sig;
            sig.reserve(k + 1);
            sig.push_back(cls[q]);
            for (std::size_t a = 0; a < k; ++a) sig.push_back(cls[static_cast<std::size_t>(d.next(static_cast<int>(q), static_cast<Symbol>(a)))]);
            auto it = sig_id.emplace(std::move(sig), static_cast<int>(sig_id.size())).first;
            next_cls[q] = it->second;
        }
        std::size_t nc = sig_id.size();
        cls.swap(next_cls);
        if (nc == num_classes) break;
        num_classes = nc;
    }
    // canonical numbering by breadth-first discovery
    std::vector<int> rep(num_classes, -1), order(num_classes, -1);
    for (std::size_t q = 0; q < n; ++q)
        if (reach[q] && rep[static_cast<std::size_t>(cls[q])] < 0) rep[static_cast<std::size_t>(cls[q])] = static_cast<int>(q);
    std::vector<int> queue{cls[static_cast<std::size_t>(d.initial())]};
    order[static_cast<std::size_t>(queue[0])] = 0;
    for (std::size_t h = 0; h < queue.size(); ++h) {
        int q = rep[static_cast<std::size_t>(queue[h])];
        for (std::size_t a = 0; a < k; ++a) {
            int c = cls[static_cast<std::size_t>(d.next(q, static_cast<Symbol>(a)))];
            if (order[static_cast<std::size_t>(c)] < 0) {
                order[static_cast<std::size_t>(c)] = static_cast<int>(queue.size());
                queue.push_back(c);
            }
        }
    }
    Dfa out(num_classes, k, 0);
    for (std::size_t c = 0; c < num_classes; ++c) {
        int q = rep[c];
        int nc = order[c];
        out.set_accepting(nc, d.accepting(q));
        for (std::size_t a = 0; a < k; ++a)
            out.set_transition(nc, static_cast<Symbol>(a), order[static_cast<std::size_t>(cls[static_cast<std::size_t>(d.next(q, static_cast<Symbol>(a)))])]);
    }
    if (old_to_new) {
        old_to_new->assign(in.num_states(), -1);
        for (std::size_t q = 0; q < in.num_states(); ++q)
            if (reach[q]) (*old_to_new)[q] = order[static_cast<std::size_t>(cls[q])];
    }
    return out;
}

Dfa determinize_minimize(const Nfa& n) { return minimize(determinize(n)); }

Dfa regex_to_dfa(const Regex& r, std::size_t alphabet_size) {
    return determinize_minimize(regex_to_nfa(r, alphabet_size));
}

Dfa product(const Dfa& a, const Dfa& b, const std::function<bool(int, int)>& accept,
            std::vector<std::pair<int, int>>* pairs) {
    if (a.alphabet_size() != b.alphabet_size()) throw InputError("product of automata over different alphabets");
    Dfa ta = a, tb = b;
    ta.complete();
    tb.complete();
    std::size_t k = a.alphabet_size();
    std::map<std::pair<int, int>, int> id;
    std::vector<std::pair<int, int>> list;
    Dfa out(0, k);
    auto intern = [&](int p, int q) {
        auto it = id.find({p, q});
        if (it != id.end()) return it->second;
        int s = out.add_state(accept(p, q));
        id.emplace(std::make_pair(p, q), s);
        list.emplace_back(p, q);
        return s;
    };
    intern(ta.initial(), tb.initial());
    for (std::size_t i = 0; i < list.size(); ++i) {
        auto [p, q] = list[i];
        for (std::size_t s = 0; s < k; ++s) {
            int t = intern(ta.next(p, static_cast<Symbol>(s)), tb.next(q, static_cast<Symbol>(s)));
            out.set_transition(static_cast<int>(i), static_cast<Symbol>(s), t);
        }
    }
    if (pairs) *pairs = list;
    return out;
}

Dfa product(const Dfa& a, const Dfa& b, Combine how) {
    auto acc = [&](int p, int q) {
        bool x = a.num_states() > static_cast<std::size_t>(p) && p >= 0 && a.accepting(p);
        bool y = b.num_states() > static_cast<std::size_t>(q) && q >= 0 && b.accepting(q);
        switch (how) {
            case Combine::And: return x && y;
            case Combine::Or: return x || y;
            case Combine::Diff: return x && !y;
        }
        return false;
    };
    return product(a, b, acc);
}

Dfa complement(const Dfa& d) {
    Dfa c = d;
    c.complete();
    for (std::size_t q = 0; q < c.num_states(); ++q) c.set_accepting(static_cast<int>(q), !c.accepting(static_cast<int>(q)));
    return c;
}

std::optional<Word> shortest_word(const Dfa& d) {
    std::size_t n = d.num_states(), k = d.alphabet_size();
    if (n == 0) return std::nullopt;
    std::vector<int> parent(n, -2);
    std::vector<Symbol> via(n, -1);
    std::vector<int> queue{d.initial()};
    parent[static_cast<std::size_t>(d.initial())] = -1;
    for (std::size_t h = 0; h < queue.size(); ++h) {
        int q = queue[h];
        if (d.accepting(q)) {
            Word w;
            for (int x = q; parent[static_cast<std::size_t>(x)] >= 0; x = parent[static_cast<std::size_t>(x)]) w.push_back(via[static_cast<std::size_t>(x)]);
            std::reverse(w.begin(), w.end());
            return w;
        }
        for (std::size_t a = 0; a < k; ++a) {
            int t = d.next(q, static_cast<Symbol>(a));
            if (t >= 0 && parent[static_cast<std::size_t>(t)] == -2) {
                parent[static_cast<std::size_t>(t)] = q;
                via[static_cast<std::size_t>(t)] = static_cast<Symbol>(a);
                queue.push_back(t);
            }
        }
    }
    return std::nullopt;
}

bool is_empty(const Dfa& d) { return !shortest_word(d).has_value(); }

InclusionResult contains(const Nfa& a, const Nfa& b, bool antichain) {
    if (a.alphabet_size() != b.alphabet_size()) throw InputError("inclusion check over different alphabets");
    // For every subset of a, the b-subsets already discovered. A pair whose
    // b-part is a superset of a discovered one cannot yield a smaller witness.
    std::unordered_map<Bitset, std::vector<Bitset>, BitsetHash> frontier;
    auto dominated = [&](const Bitset& x, const Bitset& y) {
        if (x.none()) return true;
        if (!antichain) return false;
        auto it = frontier.find(x);
        if (it != frontier.end())
            for (auto& seen_y : it->second)
                if (seen_y.subset_of(y)) return true;
        frontier[x].push_back(y);
        return false;
    };
    Bitset sa = a.initial_set(), sb = b.initial_set();
    if (antichain) frontier[sa].push_back(sb);
    auto w = pair_bfs(
        a, sa, b, sb, std::nullopt,
        [&](const Bitset& x, const Bitset& y) { return a.accepts_set(x) && !b.accepts_set(y); },
        dominated);
    InclusionResult r;
    if (w) {
        r.included = false;
        r.witness = std::move(w);
    }
    return r;
}

bool equivalent(const Nfa& a, const Nfa& b) { return contains(a, b).included && contains(b, a).included; }

OrderResult compare_shortlex_from(const Nfa& a, const Bitset& start_a, const Nfa& b, const Bitset& start_b,
                                  std::optional<std::size_t> max_len) {
    if (a.alphabet_size() != b.alphabet_size()) throw InputError("comparison over different alphabets");
    auto w = pair_bfs(
        a, start_a, b, start_b, max_len,
        [&](const Bitset& x, const Bitset& y) { return a.accepts_set(x) != b.accepts_set(y); },
        [](const Bitset& x, const Bitset& y) { return x.none() && y.none(); });
    OrderResult r;
    if (!w) return r;
    Bitset x = start_a;
    for (Symbol s : *w) x = a.step(x, s);
    r.order = a.accepts_set(x) ? Order::Greater : Order::Less;
    r.witness = std::move(w);
    return r;
}

OrderResult compare_shortlex(const Nfa& a, const Nfa& b) {
    return compare_shortlex_from(a, a.initial_set(), b, b.initial_set());
}

PrefixFreeResult is_prefix_free(const Nfa& n) {
    Dfa d = determinize_minimize(n);
    std::size_t sz = d.num_states(), k = d.alphabet_size();
    // co-reachable states
    std::vector<char> live(sz, 0);
    for (std::size_t q = 0; q < sz; ++q) live[q] = d.accepting(static_cast<int>(q));
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t q = 0; q < sz; ++q) {
            if (live[q]) continue;
            for (std::size_t a = 0; a < k; ++a)
                if (live[static_cast<std::size_t>(d.next(static_cast<int>(q), static_cast<Symbol>(a)))]) {
                    live[q] = 1;
                    changed = true;
                    break;
                }
        }
    }
    // shortlex-least access word of each state; BFS order is shortlex order
    std::vector<Word> access(sz);
    std::vector<char> seen(sz, 0);
    std::vector<int> order{0};
    seen[0] = 1;
    for (std::size_t h = 0; h < order.size(); ++h) {
        int q = order[h];
        for (std::size_t a = 0; a < k; ++a) {
            int t = d.next(q, static_cast<Symbol>(a));
            if (!seen[static_cast<std::size_t>(t)]) {
                seen[static_cast<std::size_t>(t)] = 1;
                access[static_cast<std::size_t>(t)] = access[static_cast<std::size_t>(q)];
                access[static_cast<std::size_t>(t)].push_back(static_cast<Symbol>(a));
                order.push_back(t);
            }
        }
    }
    for (int q : order) {
        if (!d.accepting(q)) continue;
        // shortest non-empty path from q back into an accepting state
        std::vector<int> parent(sz, -2);
        std::vector<Symbol> via(sz, -1);
        std::vector<std::pair<int, Word>> queue;
        for (std::size_t a = 0; a < k; ++a) {
            int t = d.next(q, static_cast<Symbol>(a));
            if (live[static_cast<std::size_t>(t)] && parent[static_cast<std::size_t>(t)] == -2) {
                parent[static_cast<std::size_t>(t)] = q;
                queue.push_back({t, Word{static_cast<Symbol>(a)}});
            }
        }
        for (std::size_t h = 0; h < queue.size(); ++h) {
            auto [p, v] = queue[h];
            if (d.accepting(p)) {
                Word u = access[static_cast<std::size_t>(q)];
                Word uv = u;
                uv.insert(uv.end(), v.begin(), v.end());
                return {false, std::make_pair(u, uv)};
            }
            for (std::size_t a = 0; a < k; ++a) {
                int t = d.next(p, static_cast<Symbol>(a));
                if (live[static_cast<std::size_t>(t)] && parent[static_cast<std::size_t>(t)] == -2) {
                    parent[static_cast<std::size_t>(t)] = p;
                    Word nv = v;
                    nv.push_back(static_cast<Symbol>(a));
                    queue.push_back({t, std::move(nv)});
                }
            }
        }
    }
    return {};
}

std::vector<Word> enumerate_upto(const Dfa& din, std::size_t max_len) {
    Dfa d = din;
    d.complete();
    std::size_t n = d.num_states(), k = d.alphabet_size();
    std::vector<char> live(n, 0);
    for (std::size_t q = 0; q < n; ++q) live[q] = d.accepting(static_cast<int>(q));
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t q = 0; q < n; ++q) {
            if (live[q]) continue;
            for (std::size_t a = 0; a < k; ++a)
                if (live[static_cast<std::size_t>(d.next(static_cast<int>(q), static_cast<Symbol>(a)))]) {
                    live[q] = 1;
                    changed = true;
                    break;
                }
        }
    }
    std::vector<Word> out;
    std::vector<std::pair<Word, int>> layer;
    if (live[static_cast<std::size_t>(d.initial())]) layer.push_back({{}, d.initial()});
    for (std::size_t len = 0; !layer.empty(); ++len) {
        for (auto& [w, q] : layer)
            if (d.accepting(q)) out.push_back(w);
        if (len == max_len) break;
        std::vector<std::pair<Word, int>> next;
        for (auto& [w, q] : layer)
            for (std::size_t a = 0; a < k; ++a) {
                int t = d.next(q, static_cast<Symbol>(a));
                if (!live[static_cast<std::size_t>(t)]) continue;
                Word nw = w;
                nw.push_back(static_cast<Symbol>(a));
                next.push_back({std::move(nw), t});
            }
        layer.swap(next);
    }
    return out;
}

std::vector<Word> enumerate_upto(const Nfa& n, std::size_t max_len) {
    return enumerate_upto(determinize_minimize(n), max_len);
}

std::vector<Word> all_words_upto(std::size_t alphabet_size, std::size_t max_len) {
    std::vector<Word> out{{}};
    std::size_t begin = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i)
            for (std::size_t a = 0; a < alphabet_size; ++a) {
                Word w = out[i];
                w.push_back(static_cast<Symbol>(a));
                out.push_back(std::move(w));
            }
        begin = end;
    }
    return out;
}

namespace {
std::string dot_escape(const std::string& s) {
    std::string o;
    for (char c : s) {
        if (c == '"' || c == '\\') o += '\\';
        o += c;
    }
    return o;
}

std::string dot_body(std::size_t n, const std::vector<int>& initial, const std::function<bool(int)>& acc,
                     const std::map<std::pair<int, int>, std::vector<std::string>>& edges, const std::string& name) {
    std::ostringstream o;
    o << "digraph \"" << dot_escape(name) << "\" {\n  rankdir=LR;\n  node [shape=circle];\n";
    for (std::size_t q = 0; q < n; ++q)
        o << "  " << q << (acc(static_cast<int>(q)) ? " [shape=doublecircle];\n" : ";\n");
    for (std::size_t i = 0; i < initial.size(); ++i)
        o << "  init" << i << " [shape=point];\n  init" << i << " -> " << initial[i] << ";\n";
    for (auto& [e, labels] : edges) {
        std::string l;
        for (std::size_t i = 0; i < labels.size(); ++i) l += (i ? "," : "") + labels[i];
        o << "  " << e.first << " -> " << e.second << " [label=\"" << dot_escape(l) << "\"];\n";
    }
    o << "}\n";
    return o.str();
}
}  // namespace

std::string to_dot(const Nfa& n, const std::vector<std::string>& labels, const std::string& name) {
    std::map<std::pair<int, int>, std::vector<std::string>> edges;
    for (std::size_t q = 0; q < n.num_states(); ++q)
        for (std::size_t a = 0; a < n.alphabet_size(); ++a)
            for (int t : n.successors(static_cast<int>(q), static_cast<Symbol>(a)))
                edges[{static_cast<int>(q), t}].push_back(a < labels.size() ? labels[a] : std::to_string(a));
    return dot_body(n.num_states(), n.initial(), [&](int q) { return n.accepting(q); }, edges, name);
}

std::string to_dot(const Dfa& d, const std::vector<std::string>& labels, const std::string& name) {
    std::map<std::pair<int, int>, std::vector<std::string>> edges;
    for (std::size_t q = 0; q < d.num_states(); ++q)
        for (std::size_t a = 0; a < d.alphabet_size(); ++a) {
            int t = d.next(static_cast<int>(q), static_cast<Symbol>(a));
            if (t >= 0) edges[{static_cast<int>(q), t}].push_back(a < labels.size() ? labels[a] : std::to_string(a));
        }
    return dot_body(d.num_states(), {d.initial()}, [&](int q) { return d.accepting(q); }, edges, name);
}

}  // namespace cfgame

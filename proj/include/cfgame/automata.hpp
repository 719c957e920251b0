#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cfgame/common.hpp"

namespace cfgame {

// Ordered set of opaque symbols. The order of insertion is the symbol order
// used by every shortlex comparison.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> symbols);

    std::size_t size() const { return names_.size(); }
    const std::string& name(Symbol a) const { return names_.at(static_cast<std::size_t>(a)); }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<Symbol> find(std::string_view s) const;
    Symbol index(std::string_view s) const;  // throws InputError
    Symbol add(const std::string& s);

    // Single-character alphabets print words as plain strings, others
    // separate symbols with spaces.
    std::string format(const Word& w) const;
    // Accepts whitespace separated symbols, or a packed string split by
    // greedy longest match. "" and "ε" give the empty word.
    Word parse(std::string_view text) const;

    bool operator==(const Alphabet& o) const { return names_ == o.names_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, Symbol> index_;
};

// ---- regular expressions -------------------------------------------------

struct RegexNode;
using Regex = std::shared_ptr<const RegexNode>;

struct RegexNode {
    enum class Kind { Symbol, Concat, Union, Star, Epsilon };
    Kind kind;
    Symbol symbol = -1;
    Regex left, right;
};

Regex re_symbol(Symbol a);
Regex re_epsilon();
Regex re_concat(Regex l, Regex r);
Regex re_union(Regex l, Regex r);
Regex re_star(Regex r);
Regex re_word(const Word& w);  // epsilon for the empty word
Regex re_union_of(const std::vector<Regex>& parts);

bool regex_equal(const Regex& a, const Regex& b);

// Juxtaposition concatenates, '+' is union, '*' is star, parentheses group.
// Bare symbols are single characters; longer symbols are written in double
// quotes. A bare ε is the empty word unless it is a symbol. Whitespace is ignored.
Regex parse_regex(std::string_view text, const Alphabet& alphabet);
std::string regex_to_string(const Regex& r, const Alphabet& alphabet);

// ---- automata -----------------------------------------------------------------

class Nfa {
public:
    Nfa() = default;
    Nfa(std::size_t states, std::size_t alphabet_size);

    std::size_t num_states() const { return succ_.size(); }
    std::size_t alphabet_size() const { return k_; }

    int add_state();
    void add_transition(int from, Symbol a, int to);
    void add_initial(int q);
    void set_accepting(int q, bool acc = true) { acc_[static_cast<std::size_t>(q)] = acc; }

    const std::vector<int>& successors(int q, Symbol a) const {
        return succ_[static_cast<std::size_t>(q)][static_cast<std::size_t>(a)];
    }
    const std::vector<int>& initial() const { return init_; }
    bool accepting(int q) const { return acc_[static_cast<std::size_t>(q)]; }

    Bitset initial_set() const;
    Bitset step(const Bitset& s, Symbol a) const;
    bool accepts_set(const Bitset& s) const;
    bool accepts(const Word& w) const;
    std::size_t num_transitions() const;

private:
    std::size_t k_ = 0;
    std::vector<std::vector<std::vector<int>>> succ_;
    std::vector<int> init_;
    std::vector<bool> acc_;
};

// Deterministic automaton. Transitions may be -1 (missing) until complete()
// is called; every algorithm in this module expects total automata.
class Dfa {
public:
    Dfa() = default;
    Dfa(std::size_t states, std::size_t alphabet_size, int initial = 0);

    std::size_t num_states() const { return acc_.size(); }
    std::size_t alphabet_size() const { return k_; }
    int initial() const { return init_; }
    void set_initial(int q) { init_ = q; }

    int add_state(bool accepting = false);
    int next(int q, Symbol a) const { return delta_[static_cast<std::size_t>(q) * k_ + static_cast<std::size_t>(a)]; }
    void set_transition(int q, Symbol a, int to) { delta_[static_cast<std::size_t>(q) * k_ + static_cast<std::size_t>(a)] = to; }
    bool accepting(int q) const { return acc_[static_cast<std::size_t>(q)]; }
    void set_accepting(int q, bool acc = true) { acc_[static_cast<std::size_t>(q)] = acc; }

    int run(const Word& w, int from) const;
    int run(const Word& w) const { return run(w, init_); }
    bool accepts(const Word& w) const;

    bool is_total() const;
    // Adds a non-accepting sink for missing transitions. Returns true if a
    // sink was added.
    bool complete();
    Dfa with_initial(int q) const;
    Nfa to_nfa() const;

    bool operator==(const Dfa& o) const {
        return k_ == o.k_ && init_ == o.init_ && delta_ == o.delta_ && acc_ == o.acc_;
    }

private:
    std::size_t k_ = 0;
    int init_ = 0;
    std::vector<int> delta_;
    std::vector<bool> acc_;
};

Nfa regex_to_nfa(const Regex& r, std::size_t alphabet_size);

Dfa determinize(const Nfa& n);
// Canonical minimal DFA: only reachable states, state 0 initial, states
// numbered in breadth-first order following the symbol order. If old_to_new
// is given it receives the class of every input state (-1 when unreachable).
Dfa minimize(const Dfa& d, std::vector<int>* old_to_new = nullptr);
Dfa determinize_minimize(const Nfa& n);
Dfa regex_to_dfa(const Regex& r, std::size_t alphabet_size);

enum class Combine { And, Or, Diff };
Dfa product(const Dfa& a, const Dfa& b, Combine how);
// Reachable product; pair (p, q) is accepting iff accept(p, q).
Dfa product(const Dfa& a, const Dfa& b, const std::function<bool(int, int)>& accept,
            std::vector<std::pair<int, int>>* pairs = nullptr);

Dfa complement(const Dfa& d);
bool is_empty(const Dfa& d);
// Shortlex-least accepted word, if any.
std::optional<Word> shortest_word(const Dfa& d);

struct InclusionResult {
    bool included = true;
    std::optional<Word> witness;  // shortlex-least word of L(a) \ L(b)
};
// Breadth-first search over pairs of subset states, pruned with antichains.
InclusionResult contains(const Nfa& a, const Nfa& b, bool antichain = true);
bool equivalent(const Nfa& a, const Nfa& b);

enum class Order { Less, Equal, Greater };
struct OrderResult {
    Order order = Order::Equal;
    std::optional<Word> witness;  // shortlex-least word in the symmetric difference
};
// Languages are compared by their shortlex-least differing word: the
// language that contains it is the greater one.
OrderResult compare_shortlex(const Nfa& a, const Nfa& b);
// Same comparison with explicit start sets and an optional length bound
// (words longer than max_len are ignored).
OrderResult compare_shortlex_from(const Nfa& a, const Bitset& start_a, const Nfa& b, const Bitset& start_b,
                                  std::optional<std::size_t> max_len = std::nullopt);

struct PrefixFreeResult {
    bool prefix_free = true;
    std::optional<std::pair<Word, Word>> witness;  // u and a proper extension, both accepted
};
PrefixFreeResult is_prefix_free(const Nfa& n);

// Accepted words of length <= max_len in shortlex order.
std::vector<Word> enumerate_upto(const Nfa& n, std::size_t max_len);
std::vector<Word> enumerate_upto(const Dfa& d, std::size_t max_len);
// All words of length <= max_len in shortlex order.
std::vector<Word> all_words_upto(std::size_t alphabet_size, std::size_t max_len);

std::string to_dot(const Nfa& n, const std::vector<std::string>& labels, const std::string& name = "nfa");
std::string to_dot(const Dfa& d, const std::vector<std::string>& labels, const std::string& name = "dfa");

}  // namespace cfgame

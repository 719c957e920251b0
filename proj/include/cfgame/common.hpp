#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cfgame {

using Symbol = int;
using Word = std::vector<Symbol>;

// Input problems (bad files, bad regex, schema violations). CLI exit code 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Enumeration or candidate space larger than the configured budget. CLI exit code 3.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Request outside the scope an algorithm supports (e.g. synthesis on a
// non-prefix-free game, brute force on infinite replacement languages).
class ScopeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A strategy broke the rules of the game during a play.
class ProtocolError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

bool shortlex_less(const Word& a, const Word& b);

// Fixed-width set of small integers. Ordering treats the set as a binary
// number with element i weighing 2^i, so S subset of S' implies S <= S'.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }
    bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i) { w_[i >> 6] |= (uint64_t{1} << (i & 63)); }
    void reset(std::size_t i) { w_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }
    void clear() { std::fill(w_.begin(), w_.end(), 0); }

    bool any() const;
    bool none() const { return !any(); }
    std::size_t count() const;
    bool intersects(const Bitset& o) const;
    bool subset_of(const Bitset& o) const;

    Bitset& operator|=(const Bitset& o);
    Bitset& operator&=(const Bitset& o);
    // this & ~o
    Bitset minus(const Bitset& o) const;

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t k = 0; k < w_.size(); ++k) {
            uint64_t x = w_[k];
            while (x) {
                int b = __builtin_ctzll(x);
                f(k * 64 + static_cast<std::size_t>(b));
                x &= x - 1;
            }
        }
    }
    std::vector<int> members() const;

    bool operator==(const Bitset& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator<(const Bitset& o) const;
    std::size_t hash() const;

    const std::vector<uint64_t>& words() const { return w_; }

private:
    std::size_t n_ = 0;
    std::vector<uint64_t> w_;
};

struct BitsetHash {
    std::size_t operator()(const Bitset& b) const { return b.hash(); }
};

}  // namespace cfgame

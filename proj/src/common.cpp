#include "cfgame/common.hpp"

#include <algorithm>

namespace cfgame {

bool shortlex_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

bool Bitset::any() const {
    for (auto x : w_)
        if (x) return true;
    return false;
}

std::size_t Bitset::count() const {
    std::size_t c = 0;
    for (auto x : w_) c += static_cast<std::size_t>(__builtin_popcountll(x));
    return c;
}

bool Bitset::intersects(const Bitset& o) const {
    for (std::size_t k = 0; k < w_.size(); ++k)
        if (w_[k] & o.w_[k]) return true;
    return false;
}

bool Bitset::subset_of(const Bitset& o) const {
    for (std::size_t k = 0; k < w_.size(); ++k)
        if (w_[k] & ~o.w_[k]) return false;
    return true;
}

Bitset& Bitset::operator|=(const Bitset& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
    return *this;
}

Bitset& Bitset::operator&=(const Bitset& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
    return *this;
}

Bitset Bitset::minus(const Bitset& o) const {
    Bitset r = *this;
    for (std::size_t k = 0; k < w_.size(); ++k) r.w_[k] &= ~o.w_[k];
    return r;
}

std::vector<int> Bitset::members() const {
    std::vector<int> out;
    for_each([&](std::size_t i) { out.push_back(static_cast<int>(i)); });
    return out;
}

bool Bitset::operator<(const Bitset& o) const {
    if (n_ != o.n_) return n_ < o.n_;
    for (std::size_t k = w_.size(); k-- > 0;)
        if (w_[k] != o.w_[k]) return w_[k] < o.w_[k];
    return false;
}

std::size_t Bitset::hash() const {
    std::size_t h = n_ * 0x9e3779b97f4a7c15ull;
    for (auto x : w_) h = (h ^ x) * 0x100000001b3ull + (h >> 29);
    return h;
}

}  // namespace cfgame

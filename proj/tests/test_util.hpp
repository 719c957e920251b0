#pragma once

#include <set>
#include <string>
#include <vector>

#include "cfgame/game.hpp"

namespace test {

inline std::vector<std::string> words(std::initializer_list<const char*> ws) {
    return {ws.begin(), ws.end()};
}

inline std::vector<std::string> names(const cfgame::Game& g, const std::vector<cfgame::Word>& ws) {
    std::vector<std::string> out;
    for (auto& w : ws) out.push_back(g.alphabet().format(w));
    return out;
}

inline std::vector<std::string> language(const cfgame::Dfa& d, const cfgame::Alphabet& ab, std::size_t max_len) {
    std::vector<std::string> out;
    for (auto& w : cfgame::enumerate_upto(d, max_len)) out.push_back(ab.format(w));
    return out;
}

}  // namespace test

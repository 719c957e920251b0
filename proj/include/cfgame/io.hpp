#pragma once

#include <string>

#include "cfgame/automata.hpp"
#include "json.hpp"

namespace cfgame {

using json = nlohmann::json;

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// Automaton files: {"states": n, "initial": i or [i,...], "accepting": [...],
// "transitions": [[from, symbol, to], ...]}. Symbols are looked up in the
// given alphabet (or in an "alphabet" array inside the object if present).
Dfa dfa_from_json(const json& j, const Alphabet& alphabet);
json dfa_to_json(const Dfa& d, const Alphabet& alphabet);
Nfa nfa_from_json(const json& j, const Alphabet& alphabet);
json nfa_to_json(const Nfa& n, const Alphabet& alphabet);

json word_list_json(const std::vector<Word>& words, const Alphabet& alphabet);

}  // namespace cfgame

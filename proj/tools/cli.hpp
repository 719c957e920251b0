#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace cfgame::cli {

// Exit codes shared by every subcommand.
enum Exit : int { Affirmative = 0, Negative = 1, UsageError = 2, OutOfScope = 3 };

struct Streams {
    std::istream& in;
    std::ostream& out;
    std::ostream& err;
    // polled by long enumerations; true stops them with partial results
    std::function<bool()> interrupted = [] { return false; };
};

// args excludes the program name.
int run(const std::vector<std::string>& args, Streams io);

}  // namespace cfgame::cli

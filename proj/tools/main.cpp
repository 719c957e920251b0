#include <atomic>
#include <csignal>
#include <iostream>

#include "cli.hpp"

namespace {
std::atomic<bool> interrupted{false};
extern "C" void on_interrupt(int) { interrupted = true; }
}  // namespace

int main(int argc, char** argv) {
    std::signal(SIGINT, on_interrupt);
    std::vector<std::string> args(argv + 1, argv + argc);
    cfgame::cli::Streams io{std::cin, std::cout, std::cerr, [] { return interrupted.load(); }};
    return cfgame::cli::run(args, io);
}

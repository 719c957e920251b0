#include "cfgame/kernels.hpp"

#include <algorithm>

#include "cfgame/analysis.hpp"

#ifdef CFGAME_HAVE_OPENMP
#include <omp.h>
#endif

namespace cfgame::kernels {

int max_threads() {
#ifdef CFGAME_HAVE_OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

std::vector<std::uint64_t> masks_by_popcount(std::size_t bits) {
    std::vector<std::uint64_t> out;
    std::uint64_t total = std::uint64_t{1} << bits;
    out.reserve(total);
    for (std::uint64_t m = 0; m < total; ++m) out.push_back(m);
    std::stable_sort(out.begin(), out.end(),
                     [](std::uint64_t a, std::uint64_t b) { return __builtin_popcountll(a) < __builtin_popcountll(b); });
    return out;
}

namespace {
bool candidate_wins(const Game& g, const Word& w, const std::vector<std::pair<int, Symbol>>& pairs, std::uint64_t mask) {
    return is_winning(g, strongly_regular_automaton(g, spec_from_mask(pairs, mask)), w);
}
}  // namespace

SearchScan first_winning_serial(const Game& g, const Word& w, const std::vector<std::pair<int, Symbol>>& pairs,
                                const std::vector<std::uint64_t>& order, std::uint64_t total,
                                const std::function<bool()>& cancelled) {
    SearchScan s;
    for (std::uint64_t i = 0; i < total; ++i) {
        if (cancelled && (i & 255) == 0 && cancelled()) {
            s.cancelled = true;
            return s;
        }
        ++s.checked;
        if (candidate_wins(g, w, pairs, order.empty() ? i : order[i])) {
            s.index = static_cast<long long>(i);
            return s;
        }
    }
    return s;
}

SearchScan first_winning_parallel(const Game& g, const Word& w, const std::vector<std::pair<int, Symbol>>& pairs,
                                  const std::vector<std::uint64_t>& order, std::uint64_t total,
                                  const std::function<bool()>& cancelled) {
#ifdef CFGAME_HAVE_OPENMP
    std::atomic<long long> best{static_cast<long long>(total)};
    std::atomic<bool> stop{false};
    std::uint64_t checked = 0;
    long long n = static_cast<long long>(total);
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : checked)
    for (long long i = 0; i < n; ++i) {
        if (stop.load(std::memory_order_relaxed) || i >= best.load(std::memory_order_relaxed)) continue;
        if (cancelled && (i & 255) == 0 && cancelled()) {
            stop = true;
            continue;
        }
        ++checked;
        if (candidate_wins(g, w, pairs, order.empty() ? static_cast<std::uint64_t>(i) : order[static_cast<std::size_t>(i)])) {
            long long cur = best.load();
            while (i < cur && !best.compare_exchange_weak(cur, i)) {
            }
        }
    }
    SearchScan s;
    s.checked = checked;
    s.cancelled = stop.load();
    if (best.load() < n) s.index = best.load();
    return s;
#else
    return first_winning_serial(g, w, pairs, order, total, cancelled);
#endif
}

std::vector<char> batch_accepts_serial(const Nfa& n, const std::vector<Word>& words) {
    std::vector<char> out(words.size());
    for (std::size_t i = 0; i < words.size(); ++i) out[i] = n.accepts(words[i]);
    return out;
}

std::vector<char> batch_accepts_parallel(const Nfa& n, const std::vector<Word>& words) {
    std::vector<char> out(words.size());
    long long count = static_cast<long long>(words.size());
#ifdef CFGAME_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 32)
#endif
    for (long long i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = n.accepts(words[static_cast<std::size_t>(i)]);
    return out;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
    long long n = static_cast<long long>(count);
#ifdef CFGAME_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
    for (long long i = 0; i < n; ++i) body(static_cast<std::size_t>(i));
}

}  // namespace cfgame::kernels

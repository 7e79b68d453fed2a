#include "eclab/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>

namespace eclab {

double tree_reduce(std::span<const double> xs) {
    if (xs.empty()) return 0.0;
    std::vector<double> level(xs.begin(), xs.end());
    while (level.size() > 1) {
        std::vector<double> next;
        next.reserve((level.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < level.size(); i += 2) next.push_back(level[i] + level[i + 1]);
        if (level.size() % 2 == 1) next.push_back(level.back());
        level = std::move(next);
    }
    return level[0];
}

void run_blocks(std::size_t n, int threads, std::size_t n_blocks,
                const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
    if (n == 0) return;
    n_blocks = std::min(n_blocks, n);
    const std::size_t base = n / n_blocks, extra = n % n_blocks;
    auto block_range = [&](std::size_t b) {
        const std::size_t begin = b * base + std::min(b, extra);
        return std::pair{begin, begin + base + (b < extra ? 1 : 0)};
    };
    threads = std::max(1, threads);
    if (threads == 1 || n_blocks == 1) {
        for (std::size_t b = 0; b < n_blocks; ++b) {
            auto [lo, hi] = block_range(b);
            fn(lo, hi, b);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t b = next.fetch_add(1);
            if (b >= n_blocks) break;
            auto [lo, hi] = block_range(b);
            fn(lo, hi, b);
        }
    };
    std::vector<std::thread> pool;
    const int nt = std::min<std::size_t>(static_cast<std::size_t>(threads), n_blocks);
    pool.reserve(static_cast<std::size_t>(nt));
    for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

std::vector<double> block_accumulate(std::size_t n, int threads, std::size_t n_stats,
                                     const std::function<void(std::size_t, std::size_t, std::vector<KahanSum>&)>& body,
                                     std::size_t n_blocks) {
    if (n == 0) return std::vector<double>(n_stats, 0.0);
    n_blocks = std::min(n_blocks, n);
    std::vector<std::vector<double>> per_block(n_blocks, std::vector<double>(n_stats, 0.0));
    run_blocks(n, threads, n_blocks, [&](std::size_t lo, std::size_t hi, std::size_t b) {
        std::vector<KahanSum> acc(n_stats);
        body(lo, hi, acc);
        for (std::size_t j = 0; j < n_stats; ++j) per_block[b][j] = acc[j].value();
    });
    std::vector<double> out(n_stats);
    std::vector<double> col(n_blocks);
    for (std::size_t j = 0; j < n_stats; ++j) {
        for (std::size_t b = 0; b < n_blocks; ++b) col[b] = per_block[b][j];
        out[j] = tree_reduce(col);
    }
    return out;
}

int default_threads() {
    if (const char* env = std::getenv("ECLAB_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(std::min(hc, 8u));
}

}  // namespace eclab

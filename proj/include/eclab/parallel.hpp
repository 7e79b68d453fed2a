#pragma once

// Deterministic block-parallel accumulation. Work is split into a fixed
// block grid that does not depend on the worker count; each block is summed
// sequentially with compensated (Kahan) accumulation and block results are
// merged in a fixed pairwise-tree order. Serial and parallel runs therefore
// agree bit for bit.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace eclab {

struct KahanSum {
    double s = 0.0;
    double c = 0.0;
    void add(double x) {
        const double y = x - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    double value() const { return s; }
};

// Pairwise-tree reduction over block sums, shape fixed by the block count.
double tree_reduce(std::span<const double> xs);

// Runs fn(begin, end, block_index) over [0, n) split into n_blocks contiguous
// blocks, using `threads` workers. Block boundaries depend only on n and
// n_blocks.
void run_blocks(std::size_t n, int threads, std::size_t n_blocks,
                const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

// Deterministic parallel map-reduce: each block produces n_stats Kahan sums;
// per statistic the block values are tree-reduced. Returns n_stats totals.
std::vector<double> block_accumulate(std::size_t n, int threads, std::size_t n_stats,
                                     const std::function<void(std::size_t, std::size_t, std::vector<KahanSum>&)>& body,
                                     std::size_t n_blocks = 128);

int default_threads();

}  // namespace eclab

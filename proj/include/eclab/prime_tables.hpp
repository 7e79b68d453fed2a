#pragma once

// Per-prime tables of the exact trace values a_{alpha,beta}(p), exploiting
// mod-p periodicity and the quadratic-twist structure: every class with
// alpha*beta != 0 is a twist of (u, u) for u = alpha^3 beta^{-2}, so storage
// is O(p) per prime (diagonal plus the two axes) instead of O(p^2).
//
// Tables are built once, single-threaded per prime (primes split across
// workers), and are immutable afterwards; sweeps read them concurrently.

#include <memory>
#include <span>
#include <vector>

#include "eclab/arith.hpp"

namespace eclab::curves {

class PrimeLambdaTable {
  public:
    explicit PrimeLambdaTable(i64 p);  // odd prime

    i64 p() const { return p_; }
    int qr(i64 x) const { return qr_[static_cast<size_t>(x)]; }  // (x/p), qr(0) = 0

    // a_{alpha,beta}(p) for 0 <= alpha, beta < p
    i64 a_of(i64 alpha, i64 beta) const {
        if (beta == 0) return line_b0_[static_cast<size_t>(alpha)];
        if (alpha == 0) return line_a0_[static_cast<size_t>(beta)];
        const i64 sign = qr_[static_cast<size_t>(alpha * beta % p_)];
        const i64 ib = inv_[static_cast<size_t>(beta)];
        const i64 u = alpha * alpha % p_ * alpha % p_ * (ib * ib % p_) % p_;
        return sign * diag_[static_cast<size_t>(u)];
    }

    std::size_t memory_bytes() const;

  private:
    i64 p_;
    std::vector<int8_t> qr_;
    std::vector<int16_t> diag_;     // a_{u,u}, u in [1, p)
    std::vector<int16_t> line_b0_;  // a_{alpha, 0}
    std::vector<int16_t> line_a0_;  // a_{0, beta}
    std::vector<int32_t> inv_;      // modular inverses
};

// All odd-prime tables up to `bound`, plus the divisor-structure plan that
// turns per-prime values into a full multiplicative coefficient fill.
class SweepTables {
  public:
    SweepTables(i64 bound, int threads, std::size_t memory_budget_bytes = std::size_t{1} << 31);

    i64 bound() const { return bound_; }

    // a(n) for n in [0, bound] of the curve (a, b); buf.size() >= bound + 1.
    void fill(i64 a, i64 b, std::span<i64> buf) const;

    const PrimeLambdaTable& table_for(i64 p) const;  // p an odd prime <= bound
    const std::vector<i64>& odd_primes() const { return odd_primes_; }

  private:
    i64 bound_;
    std::vector<i64> odd_primes_;
    std::vector<int32_t> prime_index_;            // p -> index in odd_primes_, else -1
    std::vector<std::unique_ptr<PrimeLambdaTable>> tables_;
    std::vector<int32_t> spf_, pe_, cof_;         // n = pe[n] * cof[n], p = spf[n]
};

}  // namespace eclab::curves

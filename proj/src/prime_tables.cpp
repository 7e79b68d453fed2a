#include "eclab/prime_tables.hpp"

#include <algorithm>

#include "eclab/parallel.hpp"

namespace eclab::curves {

PrimeLambdaTable::PrimeLambdaTable(i64 p) : p_(p) {
    const auto n = static_cast<size_t>(p);
    qr_.assign(n, -1);
    qr_[0] = 0;
    for (i64 x = 1; x < p; ++x) qr_[static_cast<size_t>(x * x % p)] = 1;

    inv_.assign(n, 0);
    if (p > 1) inv_[1] = 1;
    for (i64 x = 2; x < p; ++x)
        inv_[static_cast<size_t>(x)] = static_cast<int32_t>(p - (p / x) * inv_[static_cast<size_t>(p % x)] % p);

    std::vector<int32_t> cube(n);
    for (i64 x = 0; x < p; ++x) cube[static_cast<size_t>(x)] = static_cast<int32_t>(x * x % p * x % p);

    // For fixed x the index (cube[x] + c*step) mod p advances by a constant
    // step as c increments, so each table is filled by p incremental sweeps
    // with no division in the inner loop. The qr table fits in L1.
    std::vector<int32_t> acc(n, 0);
    auto sweep = [&](i64 start, i64 step, i64 c_begin) {
        i64 idx = (start + c_begin * step) % p;
        const int8_t* q = qr_.data();
        int32_t* A = acc.data();
        for (i64 c = c_begin; c < p; ++c) {
            A[static_cast<size_t>(c)] += q[static_cast<size_t>(idx)];
            idx += step;
            if (idx >= p) idx -= p;
        }
    };

    diag_.assign(n, 0);
    line_b0_.assign(n, 0);
    line_a0_.assign(n, 0);

    std::fill(acc.begin(), acc.end(), 0);
    for (i64 x = 0; x < p; ++x) sweep(cube[static_cast<size_t>(x)], (x + 1) % p, 1);  // a_{u,u}
    for (i64 u = 1; u < p; ++u) diag_[static_cast<size_t>(u)] = static_cast<int16_t>(-acc[static_cast<size_t>(u)]);

    std::fill(acc.begin(), acc.end(), 0);
    for (i64 x = 0; x < p; ++x) sweep(cube[static_cast<size_t>(x)], x, 0);  // a_{alpha,0}
    for (i64 alpha = 0; alpha < p; ++alpha) line_b0_[static_cast<size_t>(alpha)] = static_cast<int16_t>(-acc[static_cast<size_t>(alpha)]);

    std::fill(acc.begin(), acc.end(), 0);
    for (i64 x = 0; x < p; ++x) sweep(cube[static_cast<size_t>(x)], 1, 0);  // a_{0,beta}
    for (i64 beta = 0; beta < p; ++beta) line_a0_[static_cast<size_t>(beta)] = static_cast<int16_t>(-acc[static_cast<size_t>(beta)]);
}

std::size_t PrimeLambdaTable::memory_bytes() const {
    return qr_.size() + 2 * (diag_.size() + line_b0_.size() + line_a0_.size()) + 4 * inv_.size();
}

SweepTables::SweepTables(i64 bound, int threads, std::size_t memory_budget_bytes) : bound_(std::max<i64>(bound, 2)) {
    // divisor-structure plan
    const auto n = static_cast<size_t>(bound_) + 1;
    spf_.assign(n, 0);
    for (i64 i = 2; i <= bound_; ++i)
        if (spf_[static_cast<size_t>(i)] == 0)
            for (i64 j = i; j <= bound_; j += i)
                if (spf_[static_cast<size_t>(j)] == 0) spf_[static_cast<size_t>(j)] = static_cast<int32_t>(i);
    pe_.assign(n, 1);
    cof_.assign(n, 1);
    for (i64 m = 2; m <= bound_; ++m) {
        const i64 p = spf_[static_cast<size_t>(m)];
        i64 q = p, c = m / p;
        while (c % p == 0) {
            q *= p;
            c /= p;
        }
        pe_[static_cast<size_t>(m)] = static_cast<int32_t>(q);
        cof_[static_cast<size_t>(m)] = static_cast<int32_t>(c);
    }

    prime_index_.assign(n, -1);
    std::size_t estimate = 0;
    for (i64 p = 3; p <= bound_; p += 2)
        if (spf_[static_cast<size_t>(p)] == p) {
            prime_index_[static_cast<size_t>(p)] = static_cast<int32_t>(odd_primes_.size());
            odd_primes_.push_back(p);
            estimate += 11 * static_cast<size_t>(p);
        }
    if (estimate > memory_budget_bytes)
        throw CostGuardError("SweepTables: per-prime tables exceed the configured memory budget");

    tables_.resize(odd_primes_.size());
    run_blocks(odd_primes_.size(), threads, std::max<std::size_t>(odd_primes_.size() / 8, 1),
               [&](std::size_t lo, std::size_t hi, std::size_t) {
                   for (std::size_t i = lo; i < hi; ++i) tables_[i] = std::make_unique<PrimeLambdaTable>(odd_primes_[i]);
               });
}

const PrimeLambdaTable& SweepTables::table_for(i64 p) const {
    const int32_t idx = prime_index_[static_cast<size_t>(p)];
    if (idx < 0) throw std::invalid_argument("SweepTables: not an odd prime within bound");
    return *tables_[static_cast<size_t>(idx)];
}

void SweepTables::fill(i64 a, i64 b, std::span<i64> buf) const {
    buf[0] = 0;
    buf[1] = 1;
    for (i64 m = 2; m <= bound_; m += 2) buf[static_cast<size_t>(m)] = 0;
    for (std::size_t i = 0; i < odd_primes_.size(); ++i) {
        const i64 p = odd_primes_[i];
        buf[static_cast<size_t>(p)] = tables_[i]->a_of(a % p, b % p);
    }
    for (i64 m = 9; m <= bound_; m += 2) {
        const i64 q = pe_[static_cast<size_t>(m)];
        const i64 c = cof_[static_cast<size_t>(m)];
        if (c > 1) {
            buf[static_cast<size_t>(m)] = buf[static_cast<size_t>(q)] * buf[static_cast<size_t>(c)];
        } else if (q != spf_[static_cast<size_t>(m)]) {
            // m = p^e with e >= 2
            const i64 p = spf_[static_cast<size_t>(m)];
            const i64 am = a % p, bm = b % p;
            const bool bad = (4 * (am * am % p) % p * am + 27 * (bm * bm % p)) % p == 0;
            const i64 mp = m / p, mpp = mp / p;
            buf[static_cast<size_t>(m)] =
                buf[static_cast<size_t>(p)] * buf[static_cast<size_t>(mp)] - (bad ? 0 : p) * buf[static_cast<size_t>(mpp)];
        }
    }
}

}  // namespace eclab::curves

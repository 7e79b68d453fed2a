#include "doctest.h"

#include <cmath>

#include "eclab/dirichlet.hpp"

using namespace eclab;
using namespace eclab::arith;

namespace {
const FactorSieve& sieve() {
    static FactorSieve s(10000);
    return s;
}
}  // namespace

TEST_CASE("character group size and orthogonality") {
    for (i64 n = 1; n <= 30; ++n) {
        const auto grp = DirichletGroup::build(n, sieve());
        CHECK(static_cast<i64>(grp.chars.size()) == sieve().phi(n));
        // row orthogonality: sum_a chi_i(a) conj(chi_j(a)) = phi(n) delta_ij
        for (size_t i = 0; i < grp.chars.size(); ++i)
            for (size_t j = 0; j < grp.chars.size(); ++j) {
                cplx s = 0;
                for (i64 a = 0; a < n; ++a) s += grp.chars[i][static_cast<size_t>(a)] * std::conj(grp.chars[j][static_cast<size_t>(a)]);
                const double want = i == j ? static_cast<double>(sieve().phi(n)) : 0.0;
                CHECK(std::abs(s - cplx{want, 0.0}) < 1e-9);
            }
        // multiplicativity of each character table
        for (const auto& chi : grp.chars)
            for (i64 a = 0; a < n; ++a)
                for (i64 b = 0; b < n; ++b)
                    CHECK(std::abs(chi[static_cast<size_t>(a)] * chi[static_cast<size_t>(b)] -
                                   chi[static_cast<size_t>(a * b % std::max<i64>(n, 1))]) < 1e-9);
    }
}

TEST_CASE("additive-to-multiplicative identity via Gauss sums") {
    // e(a/n) = (1/phi(n)) sum_chi tau(chi) conj(chi)(a) for (a, n) = 1
    for (i64 n = 1; n <= 30; ++n) {
        const auto grp = DirichletGroup::build(n, sieve());
        const double phi = static_cast<double>(sieve().phi(n));
        for (i64 a = 0; a < std::max<i64>(n, 1); ++a) {
            if (n > 1 && gcd(a, n) != 1) continue;
            cplx rhs = 0;
            for (size_t j = 0; j < grp.chars.size(); ++j)
                rhs += grp.tau(j) * std::conj(grp.chars[j][static_cast<size_t>(a)]);
            rhs /= phi;
            CHECK(std::abs(rhs - unit_e(static_cast<double>(a) / static_cast<double>(n))) < 1e-9);
        }
    }
}

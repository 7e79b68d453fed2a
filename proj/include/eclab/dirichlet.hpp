#pragma once

// Dirichlet characters mod n as explicit value tables, built from a
// CRT-decomposed generator set of (Z/nZ)*. Only tiny moduli ever occur
// (the additive-to-multiplicative identity check); no primitive-character
// machinery.

#include "eclab/arith.hpp"

namespace eclab::arith {

struct DirichletGroup {
    i64 modulus = 1;
    // chars[j][a] = chi_j(a) for a in [0, modulus); 0 when gcd(a, n) > 1.
    std::vector<std::vector<cplx>> chars;

    static DirichletGroup build(i64 n, const FactorSieve& sieve);

    // tau(chi) = sum_a chi(a) e(a/n)
    cplx tau(size_t j) const;
};

}  // namespace eclab::arith

#include "eclab/dirichlet.hpp"

namespace eclab::arith {

namespace {

// One cyclic component of (Z/nZ)*: a generator lifted to be 1 modulo the
// complementary part of n, with its order.
struct CyclicPart {
    i64 gen;  // already lifted mod n
    i64 order;
};

i64 crt(i64 a1, i64 m1, i64 a2, i64 m2) {
    // x = a1 mod m1, x = a2 mod m2 for coprime m1, m2
    const i64 n = m1 * m2;
    const i64 u = mod_inverse(m1 % m2 == 0 ? 1 : m1 % m2, m2);
    i64 x = a1 + m1 * (static_cast<i128>((a2 - a1) % m2 + m2) * u % m2);
    x %= n;
    if (x < 0) x += n;
    return x;
}

i64 primitive_root(i64 pk, i64 p, const FactorSieve& sieve) {
    const i64 phi = sieve.phi(pk);
    const auto fac = sieve.factor(phi);
    for (i64 g = 2; g < pk; ++g) {
        if (g % p == 0) continue;
        bool ok = true;
        for (const auto& [q, e] : fac.factors)
            if (mod_pow(g, phi / q, pk) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    throw std::logic_error("primitive_root: none found");
}

}  // namespace

DirichletGroup DirichletGroup::build(i64 n, const FactorSieve& sieve) {
    DirichletGroup grp;
    grp.modulus = n;

    // Cyclic decomposition per prime power: odd p^k is cyclic; 2 is trivial,
    // 4 = <3>, 2^k (k >= 3) = <-1> x <5>. Generators are lifted by CRT to be
    // 1 modulo the rest of n.
    std::vector<CyclicPart> parts;
    for (const auto& [p, e] : sieve.factor(n).factors) {
        i64 pk = 1;
        for (int i = 0; i < e; ++i) pk *= p;
        const i64 rest = n / pk;
        auto lift = [&](i64 g) { return rest == 1 ? g % n : crt(g, pk, 1, rest); };
        if (p != 2) {
            parts.push_back({lift(primitive_root(pk, p, sieve)), sieve.phi(pk)});
        } else if (e == 2) {
            parts.push_back({lift(3), 2});
        } else if (e >= 3) {
            parts.push_back({lift(pk - 1), 2});
            parts.push_back({lift(5), pk / 4});
        }
    }

    // Enumerate all exponent tuples once; each reaches a distinct unit.
    const size_t np = parts.size();
    i64 total = 1;
    for (const auto& part : parts) total *= part.order;
    std::vector<std::vector<i64>> unit_exps(static_cast<size_t>(n));
    for (i64 idx = 0; idx < total; ++idx) {
        i64 t = idx;
        std::vector<i64> exps(np);
        i64 a = 1 % n;
        for (size_t i = 0; i < np; ++i) {
            exps[i] = t % parts[i].order;
            t /= parts[i].order;
            a = static_cast<i64>(static_cast<i128>(a) * mod_pow(parts[i].gen, exps[i], n) % n);
        }
        unit_exps[static_cast<size_t>(a % n)] = std::move(exps);
    }

    for (i64 idx = 0; idx < total; ++idx) {
        i64 t = idx;
        std::vector<i64> ts(np);
        for (size_t i = 0; i < np; ++i) {
            ts[i] = t % parts[i].order;
            t /= parts[i].order;
        }
        std::vector<cplx> values(static_cast<size_t>(n), cplx{0.0, 0.0});
        for (i64 a = 0; a < n; ++a) {
            if (n > 1 && gcd(a, n) != 1) continue;
            const auto& exps = unit_exps[static_cast<size_t>(a)];
            double phase = 0.0;
            for (size_t i = 0; i < np; ++i)
                phase += static_cast<double>(ts[i]) * static_cast<double>(exps[i]) / static_cast<double>(parts[i].order);
            values[static_cast<size_t>(a)] = unit_e(phase);
        }
        grp.chars.push_back(std::move(values));
    }
    return grp;
}

cplx DirichletGroup::tau(size_t j) const {
    cplx s = 0.0;
    for (i64 a = 0; a < modulus; ++a)
        s += chars[j][static_cast<size_t>(a)] * unit_e(static_cast<double>(a) / static_cast<double>(modulus));
    return s;
}

}  // namespace eclab::arith

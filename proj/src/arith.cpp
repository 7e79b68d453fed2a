#include "eclab/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace eclab::arith {

i64 gcd(i64 a, i64 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

i64 mod_pow(i64 base, i64 exp, i64 mod) {
    base %= mod;
    if (base < 0) base += mod;
    i64 r = 1 % mod;
    while (exp > 0) {
        if (exp & 1) r = static_cast<i64>(static_cast<i128>(r) * base % mod);
        base = static_cast<i64>(static_cast<i128>(base) * base % mod);
        exp >>= 1;
    }
    return r;
}

cplx unit_e(double x) {
    const double t = 2.0 * std::numbers::pi * x;
    return {std::cos(t), std::sin(t)};
}

int jacobi(i64 a, i64 n) {
    if (n <= 0 || n % 2 == 0) throw std::invalid_argument("jacobi: modulus must be positive and odd");
    a %= n;
    if (a < 0) a += n;
    if (n == 1) return 1;
    int sign = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            const i64 m = n % 8;
            if (m == 3 || m == 5) sign = -sign;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) sign = -sign;
        a %= n;
    }
    return n == 1 ? sign : 0;
}

i64 mod_inverse(i64 a, i64 n) {
    if (n <= 0) throw std::invalid_argument("mod_inverse: modulus must be positive");
    a %= n;
    if (a < 0) a += n;
    // extended Euclid on (a, n)
    i64 r0 = a, r1 = n, s0 = 1, s1 = 0;
    while (r1 != 0) {
        const i64 q = r0 / r1;
        r0 -= q * r1;
        std::swap(r0, r1);
        s0 -= q * s1;
        std::swap(s0, s1);
    }
    if (r0 != 1) throw std::domain_error("mod_inverse: arguments are not coprime");
    s0 %= n;
    if (s0 < 0) s0 += n;
    return s0;
}

i64 mod_inverse_or_zero(i64 a, i64 n) {
    if (n == 1) return 0;
    a %= n;
    if (a < 0) a += n;
    if (gcd(a, n) != 1) return 0;
    return mod_inverse(a, n);
}

i64 Factorization::value() const {
    i64 v = 1;
    for (const auto& [p, e] : factors)
        for (int i = 0; i < e; ++i) v *= p;
    return v;
}

bool Factorization::squarefree() const {
    return std::all_of(factors.begin(), factors.end(), [](const PrimePower& q) { return q.e == 1; });
}

int Factorization::mu() const {
    if (!squarefree()) return 0;
    return factors.size() % 2 == 0 ? 1 : -1;
}

i64 Factorization::phi() const {
    i64 v = 1;
    for (const auto& [p, e] : factors) {
        v *= p - 1;
        for (int i = 1; i < e; ++i) v *= p;
    }
    return v;
}

i64 Factorization::radical() const {
    i64 v = 1;
    for (const auto& [p, e] : factors) v *= p;
    return v;
}

FactorSieve::FactorSieve(i64 bound) : bound_(std::max<i64>(bound, 16)) {
    spf_.assign(static_cast<size_t>(bound_) + 1, 0);
    for (i64 i = 2; i <= bound_; ++i) {
        if (spf_[static_cast<size_t>(i)] == 0) {
            primes_.push_back(i);
            for (i64 j = i; j <= bound_; j += i)
                if (spf_[static_cast<size_t>(j)] == 0) spf_[static_cast<size_t>(j)] = static_cast<int32_t>(i);
        }
    }
}

bool FactorSieve::is_prime(i64 n) const {
    if (n < 2) return false;
    if (n <= bound_) return spf(n) == n;
    for (i64 p : primes_) {
        if (p * p > n) return true;
        if (n % p == 0) return false;
    }
    // n > bound^2: not reachable for the input ranges this project uses
    throw std::invalid_argument("FactorSieve::is_prime: input exceeds bound^2");
}

Factorization FactorSieve::factor(i64 n) const {
    if (n < 1) throw std::invalid_argument("factor: input must be positive");
    Factorization f;
    if (n <= bound_) {
        while (n > 1) {
            const i64 p = spf(n);
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            f.factors.push_back({p, e});
        }
        return f;
    }
    for (i64 p : primes_) {
        if (p * p > n) break;
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            f.factors.push_back({p, e});
        }
    }
    if (n > 1) {
        if (n > bound_ * bound_) throw std::invalid_argument("factor: input exceeds bound^2");
        f.factors.push_back({n, 1});
    }
    return f;
}

int FactorSieve::mu(i64 n) const { return factor(n).mu(); }
i64 FactorSieve::phi(i64 n) const { return factor(n).phi(); }
i64 FactorSieve::radical(i64 n) const { return factor(n).radical(); }

std::pair<i64, i64> FactorSieve::split_exact_part(i64 n) const {
    i64 exact = 1;
    for (const auto& [p, e] : factor(n).factors)
        if (e == 1) exact *= p;
    return {exact, n / exact};
}

i64 FactorSieve::cube_radical(i64 e) const {
    i64 t = 1;
    for (const auto& [p, k] : factor(e).factors) {
        const int pow = (k + 2) / 3;  // ceil(k/3)
        for (int i = 0; i < pow; ++i) t *= p;
    }
    return t;
}

std::vector<i64> FactorSieve::primes_up_to(i64 n) const {
    if (n > bound_) throw std::invalid_argument("primes_up_to: exceeds sieve bound");
    auto it = std::upper_bound(primes_.begin(), primes_.end(), n);
    return {primes_.begin(), it};
}

namespace {
bool odd_squarefree(i64 r) {
    if (r <= 0 || r % 2 == 0) return false;
    for (i64 d = 3; d * d <= r; d += 2)
        if (r % (d * d) == 0) return false;
    return true;
}
}  // namespace

cplx gauss_sum(i64 r, i64 k) {
    if (!odd_squarefree(r)) throw std::domain_error("gauss_sum: r must be odd and squarefree");
    cplx s = 0.0;
    for (i64 y = 0; y < r; ++y) {
        const int chi = jacobi(y, r);
        if (chi == 0) continue;
        s += static_cast<double>(chi) * unit_e(static_cast<double>(k % r) * static_cast<double>(y) / static_cast<double>(r));
    }
    return s;
}

cplx eps_r(i64 r) { return r % 4 == 1 ? cplx{1.0, 0.0} : cplx{0.0, 1.0}; }

cplx gauss_sum_closed(i64 r, i64 k) {
    if (!odd_squarefree(r)) throw std::domain_error("gauss_sum_closed: r must be odd and squarefree");
    return eps_r(r) * std::sqrt(static_cast<double>(r)) * static_cast<double>(jacobi(k, r));
}

}  // namespace eclab::arith

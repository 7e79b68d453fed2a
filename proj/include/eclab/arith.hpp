#pragma once

// Exact modular and multiplicative arithmetic shared by every other module.
// All integer work is done in int64 with __int128 intermediates where products
// can overflow; complex values are double with a 1e-9 comparison tolerance.

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace eclab {

using i64 = std::int64_t;
using i128 = __int128;
using cplx = std::complex<double>;

// Thrown when a brute-force evaluation would exceed its configured budget.
struct CostGuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when a kernel truncation bound cannot be met.
struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace arith {

i64 gcd(i64 a, i64 b);
i64 mod_pow(i64 base, i64 exp, i64 mod);

// e(x) = exp(2*pi*i*x)
cplx unit_e(double x);

// Jacobi symbol (a/n) for odd n >= 1; (a/1) = 1 for all a, including a = 0.
// Throws std::invalid_argument for even or nonpositive n.
int jacobi(i64 a, i64 n);

// Inverse of a modulo n, in [0, n). Requires gcd(a, n) = 1; throws
// std::domain_error otherwise. Callers that want the "set k-bar = 0"
// convention use mod_inverse_or_zero.
i64 mod_inverse(i64 a, i64 n);
i64 mod_inverse_or_zero(i64 a, i64 n);

struct PrimePower {
    i64 p;
    int e;
};

// Prime-exponent pairs sorted by increasing p; exponents >= 1; the product
// of p^e reconstructs the input.
struct Factorization {
    std::vector<PrimePower> factors;

    i64 value() const;
    bool squarefree() const;
    int mu() const;       // 0 if not squarefree
    i64 phi() const;
    i64 radical() const;  // product of distinct primes
};

// Trial-division factor cache. The smallest-prime-factor table is built once
// (single-threaded) up to `bound`; afterwards everything is read-only and
// safe to share across workers. Inputs above bound fall back to trial
// division by the sieved primes (valid up to bound^2).
class FactorSieve {
  public:
    explicit FactorSieve(i64 bound = 1'000'000);

    i64 bound() const { return bound_; }
    bool is_prime(i64 n) const;
    Factorization factor(i64 n) const;

    int mu(i64 n) const;
    i64 phi(i64 n) const;
    i64 radical(i64 n) const;

    // ((n)_1, (n)_2): product of primes exactly dividing n, and the
    // complementary power-full part. (n)_1 * (n)_2 = n, gcd = 1.
    std::pair<i64, i64> split_exact_part(i64 n) const;

    // Least t with e | t^3.
    i64 cube_radical(i64 e) const;

    const std::vector<i64>& primes() const { return primes_; }
    std::vector<i64> primes_up_to(i64 n) const;

    // Smallest prime factor for 2 <= n <= bound.
    i64 spf(i64 n) const { return spf_[static_cast<size_t>(n)]; }

  private:
    i64 bound_;
    std::vector<int32_t> spf_;
    std::vector<i64> primes_;
};

// Gauss sum G_k(r) = sum_{y mod r} (y/r) e(ky/r) for odd squarefree r,
// computed by direct summation. Throws std::domain_error for even or
// non-squarefree r.
cplx gauss_sum(i64 r, i64 k);

// Closed form eps_r sqrt(r) (k/r), eps_r = 1 for r = 1 mod 4, i for 3 mod 4.
cplx gauss_sum_closed(i64 r, i64 k);

// eps_r of the closed form above.
cplx eps_r(i64 r);

}  // namespace arith
}  // namespace eclab

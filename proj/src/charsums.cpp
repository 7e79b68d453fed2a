#include "eclab/charsums.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "eclab/curves.hpp"
#include "eclab/prime_tables.hpp"

namespace eclab::charsums {

using arith::eps_r;
using arith::gcd;
using arith::jacobi;
using arith::mod_inverse_or_zero;
using arith::unit_e;
using curves::PrimeLambdaTable;

namespace {

i64 mod_norm(i64 x, i64 m) { return ((x % m) + m) % m; }

// a(p^k) from a(p): Chebyshev-type recurrence at good p, a(p)^k at bad p.
i64 a_pk_value(i64 ap, bool bad, i64 p, int k) {
    if (k == 0) return 1;
    i64 prev2 = 1, prev1 = ap;
    for (int i = 2; i <= k; ++i) {
        const i64 cur = bad ? ap * prev1 : ap * prev1 - p * prev2;
        prev2 = prev1;
        prev1 = cur;
    }
    return prev1;
}

// Per-prime-power table of a_{alpha,beta}(p^e) over residue pairs mod p.
struct PrimePowerTable {
    i64 p;
    int e;
    std::vector<i64> a;  // p*p entries, index alpha*p + beta
};

PrimePowerTable build_ppe_table(i64 p, int e) {
    PrimePowerTable t{p, e, {}};
    t.a.assign(static_cast<size_t>(p * p), 0);
    PrimeLambdaTable base(p);
    for (i64 alpha = 0; alpha < p; ++alpha) {
        const i64 a3 = alpha * alpha % p * alpha % p;
        for (i64 beta = 0; beta < p; ++beta) {
            const i64 ap = base.a_of(alpha, beta);
            const bool bad = (4 * a3 + 27 * (beta * beta % p)) % p == 0;
            t.a[static_cast<size_t>(alpha * p + beta)] = a_pk_value(ap, bad, p, e);
        }
    }
    return t;
}

}  // namespace

CompleteSumResult Q_t(i64 r, i64 t, const FactorSieve& sieve, i64 max_inner_evals) {
    if (r < 1 || t < 1) throw std::invalid_argument("Q_t: r and t must be positive");
    CompleteSumResult out;
    out.r = r;
    if (r == 1) {
        out.scaled = 1;  // the single empty pair, lambda = 1
        out.value = 1.0;
        return out;
    }
    if (r % 2 == 0) return out;  // lambda(2^k) = 0 kills every term

    const auto fr = sieve.factor(r);
    const i64 rstar = fr.radical();
    const i64 npairs = rstar * rstar;
    i64 cost = npairs * static_cast<i64>(fr.factors.size());
    for (const auto& [p, e] : fr.factors) cost += p * p;
    if (cost > max_inner_evals) throw CostGuardError("Q_t: brute-force size exceeds the inner-evaluation guard");

    std::vector<PrimePowerTable> tables;
    tables.reserve(fr.factors.size());
    for (const auto& [p, e] : fr.factors) tables.push_back(build_ppe_table(p, e));

    const i64 m = gcd(rstar, t);
    i64 scaled = 0;
    for (i64 alpha = 0; alpha < rstar; ++alpha) {
        for (i64 beta = 0; beta < rstar; ++beta) {
            if (m > 1) {
                const i64 Dm = ((4 * (alpha % m) * (alpha % m) % m * (alpha % m) + 27 * (beta % m) * (beta % m)) % m);
                if (Dm != 0) continue;
            }
            i64 v = 1;
            for (const auto& tb : tables) {
                v *= tb.a[static_cast<size_t>((alpha % tb.p) * tb.p + beta % tb.p)];
                if (v == 0) break;
            }
            scaled += v;
        }
    }
    out.scaled = scaled;
    out.value = static_cast<double>(scaled) / std::sqrt(static_cast<double>(r));
    return out;
}

CompleteSumResult Q(i64 r, const FactorSieve& sieve, i64 max_inner_evals) { return Q_t(r, 1, sieve, max_inner_evals); }

CompleteSumResult Q_prime(i64 k, i64 r, const FactorSieve& sieve, i64 max_inner_evals) {
    if (r < 1 || k < 1) throw std::invalid_argument("Q_prime: k and r must be positive");
    CompleteSumResult out;
    out.r = r;
    if (r == 1) {
        out.scaled = 1;
        out.value = 1.0;
        return out;
    }
    if (r % 2 == 0) return out;

    const i64 g0 = gcd(k, r);
    if (g0 % 2 == 0) return out;  // psi_Delta vanishes on even arguments
    if (g0 == 1) return Q_t(r, 1, sieve, max_inner_evals);

    const auto fr = sieve.factor(r);
    const i64 rstar = fr.radical();
    i64 cost = rstar * rstar * static_cast<i64>(fr.factors.size());
    for (const auto& [p, e] : fr.factors) cost += p * p;
    if (cost > max_inner_evals) throw CostGuardError("Q_prime: brute-force size exceeds the inner-evaluation guard");

    std::vector<PrimePowerTable> tables;
    for (const auto& [p, e] : fr.factors) tables.push_back(build_ppe_table(p, e));
    const auto g0_primes = sieve.factor(g0).factors;

    i64 scaled = 0;
    for (i64 alpha = 0; alpha < rstar; ++alpha) {
        for (i64 beta = 0; beta < rstar; ++beta) {
            bool coprime = true;  // psi_Delta(g0): every prime of g0 avoids Delta
            for (const auto& [q, e] : g0_primes) {
                const i64 am = alpha % q, bm = beta % q;
                if ((4 * (am * am % q) % q * am + 27 * (bm * bm % q)) % q == 0) {
                    coprime = false;
                    break;
                }
            }
            if (!coprime) continue;
            i64 v = 1;
            for (const auto& tb : tables) {
                v *= tb.a[static_cast<size_t>((alpha % tb.p) * tb.p + beta % tb.p)];
                if (v == 0) break;
            }
            scaled += v;
        }
    }
    out.scaled = scaled;
    out.value = static_cast<double>(scaled) / std::sqrt(static_cast<double>(r));
    return out;
}

// ---------------------------------------------------------------------------
// Lemma verifier over odd squarefree r

LemmaVerifier::LemmaVerifier(i64 r, const FactorSieve& sieve) : r_(r) {
    const auto fr = sieve.factor(r);
    if (r < 1 || r % 2 == 0 || !fr.squarefree())
        throw std::domain_error("LemmaVerifier: r must be odd and squarefree");
    mu_r_ = fr.mu();
    sqrt_r_ = std::sqrt(static_cast<double>(r));

    a_.assign(static_cast<size_t>(r * r), 1);
    for (const auto& [p, e] : fr.factors) {
        PrimeLambdaTable tb(p);
        for (i64 alpha = 0; alpha < r; ++alpha)
            for (i64 beta = 0; beta < r; ++beta) a_[static_cast<size_t>(alpha * r + beta)] *= tb.a_of(alpha % p, beta % p);
    }

    root_.resize(static_cast<size_t>(r));
    for (i64 j = 0; j < r; ++j) root_[static_cast<size_t>(j)] = unit_e(static_cast<double>(j) / static_cast<double>(r));

    for (i64 alpha = 0; alpha < r; ++alpha)
        for (i64 beta = 0; beta < r; ++beta)
            if ((4 * alpha * alpha * alpha + 27 * beta * beta) % r == 0) solutions_.emplace_back(alpha, beta);
}

double LemmaVerifier::maincharsum_error(i64 h, i64 k) const {
    cplx lhs = 0.0;
    for (i64 alpha = 0; alpha < r_; ++alpha)
        for (i64 beta = 0; beta < r_; ++beta) {
            const i64 av = a_[static_cast<size_t>(alpha * r_ + beta)];
            if (av != 0) lhs += static_cast<double>(av) * eroot(alpha * h + beta * k);
        }
    lhs /= sqrt_r_;
    const i64 kbar = mod_inverse_or_zero(k, r_);
    const cplx rhs = eps_r(r_) * static_cast<double>(mu_r_) * static_cast<double>(r_) *
                     static_cast<double>(jacobi(k, r_)) * eroot(-(h % r_) * (h % r_) % r_ * (h % r_) % r_ * (kbar * kbar % r_));
    return std::abs(lhs - rhs);
}

double LemmaVerifier::degenerate_exp_error(i64 h, i64 k) const {
    cplx lhs = 0.0;
    for (const auto& [alpha, beta] : solutions_) lhs += eroot(alpha * h + beta * k);
    cplx rhs = 0.0;
    for (i64 g = 0; g < r_; ++g) rhs += eroot(-3 * g * g % r_ * h + 2 * g * g % r_ * g % r_ * k);
    return std::abs(lhs - rhs);
}

double LemmaVerifier::degenerate_char_error(i64 h, i64 k) const {
    cplx lhs = 0.0;
    for (const auto& [alpha, beta] : solutions_) {
        const i64 av = a_[static_cast<size_t>(alpha * r_ + beta)];
        if (av != 0) lhs += static_cast<double>(av) * eroot(alpha * h + beta * k);
    }
    lhs /= sqrt_r_;
    cplx rhs = 0.0;
    for (i64 g = 0; g < r_; ++g) {
        const int chi = jacobi(g, r_);
        if (chi != 0) rhs += static_cast<double>(chi) * eroot(-3 * g * g % r_ * h + 2 * g * g % r_ * g % r_ * k);
    }
    rhs *= static_cast<double>(jacobi(3, r_)) / sqrt_r_;
    return std::abs(lhs - rhs);
}

double LemmaVerifier::maincompletesum_error(i64 t, i64 h, i64 k) const {
    if (t < 1 || r_ % t != 0) throw std::invalid_argument("maincompletesum: t must divide r");
    const i64 r0 = r_ / t;
    cplx lhs = 0.0;
    for (i64 alpha = 0; alpha < r_; ++alpha)
        for (i64 beta = 0; beta < r_; ++beta) {
            if ((4 * alpha * alpha * alpha + 27 * beta * beta) % t != 0) continue;
            const i64 av = a_[static_cast<size_t>(alpha * r_ + beta)];
            if (av != 0) lhs += static_cast<double>(av) * eroot(alpha * h + beta * k);
        }
    lhs /= sqrt_r_;

    // rhs = eps_{r0} mu(r0) (r0/sqrt(t)) (3/t) (kt/r0) e(-h^3 kbar^2 tbar / r0)
    //       * sum_{g mod t} (g/t) e((-3g^2 h + 2g^3 k) r0bar / t)
    int mu_r0 = 1;
    {
        i64 m = r0;
        for (i64 d = 3; d * d <= m; d += 2)
            while (m % d == 0) {
                mu_r0 = -mu_r0;
                m /= d;
            }
        if (m > 1) mu_r0 = -mu_r0;
    }
    const i64 kbar = mod_inverse_or_zero(k, r0);
    const i64 tbar = mod_inverse_or_zero(t, r0);
    const i64 r0bar = mod_inverse_or_zero(r0, t);
    const i64 hm = mod_norm(h, r0);
    const i64 num0 = mod_norm(hm * hm % r0 * hm % r0 * (kbar * kbar % r0) % r0 * tbar, r0);
    const cplx front = eps_r(r0) * static_cast<double>(mu_r0) * (static_cast<double>(r0) / std::sqrt(static_cast<double>(t))) *
                       static_cast<double>(jacobi(3, t)) * static_cast<double>(jacobi(k % r0 * (t % r0), r0));
    const cplx phase = unit_e(-static_cast<double>(num0) / static_cast<double>(r0));
    cplx gsum = 0.0;
    for (i64 g = 0; g < t; ++g) {
        const int chi = jacobi(g, t);
        if (chi == 0) continue;
        const i64 num = mod_norm(mod_norm(-3 * g * g * h + 2 * g * g * g % t * k, t) * r0bar, t);
        gsum += static_cast<double>(chi) * root_[static_cast<size_t>(num * (r_ / t) % r_)];
    }
    const cplx rhs = front * phase * gsum;
    return std::abs(lhs - rhs);
}

bool LemmaVerifier::parameterization_ok() const {
    std::set<std::pair<i64, i64>> sols(solutions_.begin(), solutions_.end());
    std::set<std::pair<i64, i64>> images;
    for (i64 g = 0; g < r_; ++g) {
        const i64 alpha = ((-3 * g * g) % r_ + r_) % r_;
        const i64 beta = ((2 * g * g % r_ * g) % r_ + r_) % r_;
        images.emplace(alpha, beta);
    }
    return sols == images && static_cast<i64>(images.size()) == r_ &&
           static_cast<i64>(solutions_.size()) == r_;
}

bool verify_maincharsum(i64 r, i64 h, i64 k, const FactorSieve& sieve, double tol) {
    return LemmaVerifier(r, sieve).maincharsum_error(h, k) <= tol;
}
bool verify_parameterization(i64 r, const FactorSieve& sieve) { return LemmaVerifier(r, sieve).parameterization_ok(); }
bool verify_degenerate(i64 r, i64 h, i64 k, const FactorSieve& sieve, double tol) {
    LemmaVerifier v(r, sieve);
    return v.degenerate_exp_error(h, k) <= tol && v.degenerate_char_error(h, k) <= tol;
}
bool verify_maincompletesum(i64 r, i64 t, i64 h, i64 k, const FactorSieve& sieve, double tol) {
    return LemmaVerifier(r, sieve).maincompletesum_error(t, h, k) <= tol;
}

// ---------------------------------------------------------------------------
// c_S

CSResult c_S(i64 pmax, int kmax, const FactorSieve& sieve, i64 max_inner_evals) {
    if (pmax < 3 || kmax < 1) throw std::invalid_argument("c_S: require pmax >= 3 and kmax >= 1");
    CSResult out;
    out.pmax = pmax;
    out.kmax = kmax;

    i64 cost = 0;
    for (i64 p : sieve.primes()) {
        if (p > pmax) break;
        cost += p * p * (kmax + 1);
    }
    if (cost > max_inner_evals) throw CostGuardError("c_S: brute-force size exceeds the inner-evaluation guard");

    double next_shell_total = 0.0;  // exactly computed first omitted shell
    for (i64 p : sieve.primes()) {
        if (p > pmax) break;
        if (p == 2) continue;  // lambda(2^k) = 0: the p = 2 factor is 1
        PrimeLambdaTable tb(p);
        double shell_sum = 0.0, next_shell = 0.0;
        for (int k = 1; k <= kmax + 2; ++k) {
            i64 scaled = 0;
            for (i64 alpha = 0; alpha < p; ++alpha) {
                const i64 a3 = alpha * alpha % p * alpha % p;
                for (i64 beta = 0; beta < p; ++beta) {
                    const i64 ap = tb.a_of(alpha, beta);
                    const bool bad = (4 * a3 + 27 * (beta * beta % p)) % p == 0;
                    scaled += a_pk_value(ap, bad, p, 2 * k);
                }
            }
            // Q(p^{2k}) = scaled / p^k; the k-th shell is Q / p^{k+2} = scaled / p^{2k+2}
            const double term = static_cast<double>(scaled) / std::pow(static_cast<double>(p), 2 * k + 2);
            if (k <= kmax)
                shell_sum += term;
            else if (k == kmax + 1)
                next_shell += std::abs(term);
            else
                next_shell += 2.0 * std::abs(term);  // shells can skip zeros; weight the second one
        }
        const double factor = 1.0 + shell_sum / (1.0 - std::pow(static_cast<double>(p), -5.0));
        out.local_factors.emplace_back(p, factor);
        out.value *= factor;
        next_shell_total += std::abs(next_shell);
    }

    // Tail estimate: the exactly-computed shell kmax+1 per prime doubled for
    // the geometric remainder (shell ratios stay under 1/2), plus the p > pmax
    // primes at their trivial first-shell bound with square-root cancellation,
    // everything with a 2x safety factor.
    double prime_tail = 0.0;
    for (i64 p : sieve.primes()) {
        if (p <= pmax) continue;
        prime_tail += 5.0 * std::pow(static_cast<double>(p), -2.5);
    }
    out.tail_estimate = 2.0 * (2.0 * next_shell_total + prime_tail);
    return out;
}

}  // namespace eclab::charsums

#include "eclab/curves.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace eclab::curves {

using arith::gcd;
using arith::jacobi;

void CurveParams::validate() const {
    if (a < 1 || b < 1) throw std::invalid_argument("CurveParams: require a >= 1 and b >= 1");
}

bool in_family_S(i64 a, i64 b, const FactorSieve& sieve) {
    if (b % 2 == 0) return false;
    for (const auto& [p, e] : sieve.factor(a).factors) {
        if (e < 2) continue;
        if (b % (p * p * p) == 0) return false;
    }
    return true;
}

bool in_family_S(CurveParams c, const FactorSieve& sieve) { return in_family_S(c.a, c.b, sieve); }

CurveInvariants invariants(CurveParams c, const FactorSieve& sieve) {
    c.validate();
    CurveInvariants inv;
    inv.D = c.D();
    inv.in_S = in_family_S(c, sieve);
    inv.D_squarefree = sieve.factor(inv.D).squarefree();
    inv.gcd_ab = gcd(c.a, c.b);
    return inv;
}

i64 a_p(CurveParams c, i64 p) {
    if (p == 2) return 0;
    const i64 am = ((c.a % p) + p) % p;
    const i64 bm = ((c.b % p) + p) % p;
    const i64 Dm = (4 * (am * am % p) % p * am + 27 * (bm * bm % p)) % p;
    if (Dm == 0) return jacobi(6 * bm, p);
    // residue table, then one pass over x
    std::vector<int8_t> qr(static_cast<size_t>(p), -1);
    qr[0] = 0;
    for (i64 x = 1; x < p; ++x) qr[static_cast<size_t>(x * x % p)] = 1;
    i64 s = 0;
    for (i64 x = 0; x < p; ++x) {
        const i64 v = (x * x % p * x + am * x + bm) % p;
        s += qr[static_cast<size_t>(v)];
    }
    return -s;
}

namespace {
i64 a_pk_from_ap(i64 ap, bool bad, i64 p, int k) {
    if (k == 0) return 1;
    if (bad) {
        i64 v = 1;
        for (int i = 0; i < k; ++i) v *= ap;
        return v;
    }
    i64 prev2 = 1, prev1 = ap;  // a(p^0), a(p^1)
    for (int i = 2; i <= k; ++i) {
        const i64 cur = ap * prev1 - p * prev2;
        prev2 = prev1;
        prev1 = cur;
    }
    return prev1;
}
}  // namespace

i64 a_pk(CurveParams c, i64 p, int k) {
    if (k == 0) return 1;
    if (p == 2) return 0;
    const i64 ap = a_p(c, p);
    const bool bad = c.D() % p == 0;
    return a_pk_from_ap(ap, bad, p, k);
}

i64 a_n(CurveParams c, i64 n, const FactorSieve& sieve) {
    if (n < 1) throw std::invalid_argument("a_n: n must be positive");
    i64 v = 1;
    for (const auto& [p, e] : sieve.factor(n).factors) {
        v *= a_pk(c, p, e);
        if (v == 0) return 0;
    }
    return v;
}

CoeffSeries::CoeffSeries(CurveParams c, i64 bound, const FactorSieve& sieve) : curve_(c) {
    c.validate();
    if (bound < 1) throw std::invalid_argument("CoeffSeries: bound must be >= 1");
    if (bound > sieve.bound()) throw std::invalid_argument("CoeffSeries: bound exceeds factor sieve");
    table_.assign(static_cast<size_t>(bound) + 1, 0);
    table_[1] = 1;
    const i64 D = c.D();
    for (i64 p : sieve.primes()) {
        if (p > bound) break;
        if (p == 2) continue;
        table_[static_cast<size_t>(p)] = a_p(c, p);
    }
    for (i64 n = 9; n <= bound; n += 2) {
        const i64 p = sieve.spf(n);
        if (p == n) continue;  // prime, already set
        i64 q = p, m = n / p;
        while (m % p == 0) {
            q *= p;
            m /= p;
        }
        if (m > 1) {
            table_[static_cast<size_t>(n)] = table_[static_cast<size_t>(q)] * table_[static_cast<size_t>(m)];
        } else {
            // n = p^e, e >= 2
            const bool bad = D % p == 0;
            const i64 np = n / p, npp = np / p;
            table_[static_cast<size_t>(n)] =
                table_[static_cast<size_t>(p)] * table_[static_cast<size_t>(np)] -
                (bad ? 0 : p) * table_[static_cast<size_t>(npp)];
        }
    }
}

double CoeffSeries::lambda(i64 n) const {
    return static_cast<double>(a(n)) / std::sqrt(static_cast<double>(n));
}

double RhoValue::value() const { return static_cast<double>(num) / std::sqrt(static_cast<double>(radicand)); }

RhoValue rho_m(CurveParams c, i64 m, const FactorSieve& sieve) {
    if (m < 1) throw std::invalid_argument("rho_m: m must be positive");
    // split k = m0 * l^2 with m0 l squarefree: exponent 1 goes to m0, 2 to l
    i64 m0 = 1, l = 1;
    for (const auto& [p, e] : sieve.factor(m).factors) {
        if (e == 1)
            m0 *= p;
        else if (e == 2)
            l *= p;
        else
            return {0, 1};
    }
    // (l, Delta) = 1: Delta carries 2 and the primes of D
    if (l % 2 == 0) return {0, 1};
    const i64 D = c.D();
    for (const auto& [p, e] : sieve.factor(l).factors)
        if (D % p == 0) return {0, 1};
    const int mu = sieve.mu(m0);
    return {mu * a_n(c, m0, sieve), m0};
}

double MollifierSpec::eval_P(double x) const {
    if (x < 0) return 0.0;
    double v = 0.0;
    for (size_t j = P.size(); j-- > 0;) v = v * x + P[j];
    return v;
}

double MollifierSpec::P_at_one() const {
    double s = 0.0;
    for (double c : P) s += c;
    return s;
}

void MollifierSpec::validate() const {
    if (M < 1.0) throw std::invalid_argument("MollifierSpec: M must be >= 1");
    if (!P.empty() && P[0] != 0.0) throw std::invalid_argument("MollifierSpec: P(0) must be 0");
}

double mollifier_value(const CoeffSeries& series, const MollifierSpec& spec, const FactorSieve& sieve) {
    spec.validate();
    const double M = spec.M;
    if (M < 2.0) return spec.eval_P(1.0);  // only the m = l = 1 term survives
    if (series.bound() < static_cast<i64>(M)) throw std::invalid_argument("mollifier_value: coefficient table too short");
    const double logM = std::log(M);
    const i64 D = series.curve().D();
    double total = 0.0;
    for (i64 m = 1; static_cast<double>(m) <= M; ++m) {
        const auto fm = sieve.factor(m);
        if (!fm.squarefree()) continue;
        const i64 am = series.a(m);
        if (am == 0 && m > 1) continue;
        const double mu_m = fm.mu();
        for (i64 l = 1; static_cast<double>(m) * l * l <= M; ++l) {
            if (l > 1) {
                if (l % 2 == 0) continue;  // psi_Delta kills even l
                if (gcd(l, m) != 1) continue;
                const auto fl = sieve.factor(l);
                if (!fl.squarefree()) continue;
                bool coprime_D = true;
                for (const auto& [p, e] : fl.factors)
                    if (D % p == 0) {
                        coprime_D = false;
                        break;
                    }
                if (!coprime_D) continue;
            }
            const double x = std::log(M / (static_cast<double>(m) * l * l)) / logM;
            total += mu_m * static_cast<double>(am) / (static_cast<double>(m) * l) * spec.eval_P(x);
        }
    }
    return total;
}

double CutoffKernel::Y(double u) const { return std::exp(-u); }

i64 afe_nmax(double T) {
    if (T <= 0) return 1;
    const double u = 2.0 * std::numbers::pi / T;
    // e^{-u N} <= 1e-12 and 2 e^{-u N}/(1 - e^{-u}) <= 1e-10
    const double denom = -std::expm1(-u);  // 1 - e^{-u}
    const double need = std::max(std::log(1e12), std::log(2e10 / denom));
    return std::max<i64>(1, static_cast<i64>(std::ceil(need / u)) + 1);
}

double partial_sum_raw(std::span<const i64> a, double T, i64 nmax, CutoffKernel kernel) {
    if (nmax < 1 || nmax >= static_cast<i64>(a.size())) throw TruncationError("partial_sum: nmax outside coefficient table");
    if (T > 0) {
        const double u = 2.0 * std::numbers::pi / T;
        if (std::exp(-u * static_cast<double>(nmax)) >= 1e-12 ||
            2.0 * std::exp(-u * static_cast<double>(nmax)) / -std::expm1(-u) > 1e-10)
            throw TruncationError("partial_sum: nmax too small for the 1e-10 tail bound");
    }
    double s = 0.0;
    for (i64 n = nmax; n >= 1; --n) {
        const i64 an = a[static_cast<size_t>(n)];
        if (an == 0) continue;
        s += static_cast<double>(an) / static_cast<double>(n) * kernel.Y(2.0 * std::numbers::pi * static_cast<double>(n) / T);
    }
    return s;
}

double partial_sum_L(const CoeffSeries& series, double T, i64 nmax, CutoffKernel kernel) {
    return partial_sum_raw(series.table(), T, nmax, kernel);
}

double partial_sum_L(const CoeffSeries& series, double T, CutoffKernel kernel) {
    return partial_sum_raw(series.table(), T, afe_nmax(T), kernel);
}

RootNumberIdentity root_number_identity(CurveParams c, const FactorSieve& sieve) {
    c.validate();
    RootNumberIdentity out;
    out.D = c.D();
    const auto fD = sieve.factor(out.D);
    if (!fD.squarefree()) throw std::domain_error("root_number_identity: 4a^3 + 27b^2 must be squarefree");
    int lhs = 1;
    for (const auto& [p, e] : fD.factors) lhs *= static_cast<int>(a_p(c, p));
    out.lhs = lhs;
    const int chi4 = (c.b % 4 == 1) ? 1 : -1;
    const int sign_a = (c.a % 2 == 0) ? 1 : -1;
    out.rhs = chi4 * sign_a * jacobi(c.a, 3 * c.b);
    return out;
}

namespace {

std::vector<i64> default_afe_candidates(i64 D) {
    // N = 2^alpha 3^beta prod_{p | Delta, (p,6)=1} p. Delta = -16 D with D
    // odd here, so the odd-away-from-3 part is D with any 3 removed.
    i64 core = D;
    int three = 0;
    while (core % 3 == 0) {
        core /= 3;
        ++three;
    }
    std::vector<i64> out;
    for (int alpha = 1; alpha <= 8; ++alpha)
        for (int beta = 0; beta <= (three > 0 ? 5 : 0); ++beta) {
            i64 N = core << alpha;
            for (int i = 0; i < beta; ++i) N *= 3;
            out.push_back(N);
        }
    return out;
}

}  // namespace

AfeSearchResult afe_search_impl(CurveParams c, const FactorSieve& sieve, std::vector<i64> candidates,
                                double variance_threshold) {
    c.validate();
    const auto inv = invariants(c, sieve);
    if (inv.gcd_ab != 1) throw std::domain_error("afe_consistency_search: requires gcd(a, b) = 1");
    if (!inv.D_squarefree) throw std::domain_error("afe_consistency_search: requires squarefree 4a^3 + 27b^2");

    double maxT = 0.0;
    for (i64 N : candidates) maxT = std::max(maxT, 4.0 * std::sqrt(static_cast<double>(N)));
    const i64 bound = afe_nmax(maxT);
    CoeffSeries series(c, bound, sieve);

    AfeSearchResult res;
    for (i64 N : candidates) {
        const double sqN = std::sqrt(static_cast<double>(N));
        const double Us[5] = {sqN / 4, sqN / 2, sqN, 2 * sqN, 4 * sqN};
        double LU[5], LV[5];
        for (int i = 0; i < 5; ++i) {
            LU[i] = partial_sum_L(series, Us[i]);
            LV[i] = partial_sum_L(series, static_cast<double>(N) / Us[i]);
        }
        for (int eps = -1; eps <= 1; eps += 2) {
            double mean = 0;
            for (int i = 0; i < 5; ++i) mean += LU[i] + eps * LV[i];
            mean /= 5;
            double var = 0;
            for (int i = 0; i < 5; ++i) {
                const double d = LU[i] + eps * LV[i] - mean;
                var += d * d;
            }
            var /= 5;
            res.candidates.push_back({N, eps, mean, var});
        }
    }
    std::sort(res.candidates.begin(), res.candidates.end(),
              [](const AfeCandidate& x, const AfeCandidate& y) { return x.variance < y.variance; });
    const AfeCandidate& best = res.candidates.front();
    res.N = best.N;
    res.eps = best.eps;
    res.central_value = best.mean;
    res.variance = best.variance;
    res.best_competitor_variance = res.candidates.size() > 1 ? res.candidates[1].variance : 0.0;
    res.ambiguous = std::sqrt(best.variance) / std::max(std::abs(best.mean), 1.0) >= variance_threshold;

    // grid spread of the winner
    const double sqN = std::sqrt(static_cast<double>(best.N));
    double spread = 0;
    for (double U : {sqN / 4, sqN / 2, sqN, 2 * sqN, 4 * sqN}) {
        const double R = partial_sum_L(series, U) + best.eps * partial_sum_L(series, static_cast<double>(best.N) / U);
        spread = std::max(spread, std::abs(R - best.mean));
    }
    res.grid_spread = spread;
    return res;
}

AfeSearchResult afe_consistency_search(CurveParams c, const FactorSieve& sieve, double variance_threshold) {
    return afe_search_impl(c, sieve, default_afe_candidates(c.D()), variance_threshold);
}

AfeSearchResult afe_consistency_search(CurveParams c, const FactorSieve& sieve, std::span<const i64> candidate_N,
                                       double variance_threshold) {
    i64 core = sieve.radical(c.D());
    while (core % 3 == 0) core /= 3;
    while (core % 2 == 0) core /= 2;
    std::vector<i64> cands;
    for (i64 N : candidate_N) {
        if (N < 1 || N % core != 0)
            throw std::invalid_argument("afe_consistency_search: candidate N must be divisible by the odd part of rad(Delta)");
        cands.push_back(N);
    }
    return afe_search_impl(c, sieve, std::move(cands), variance_threshold);
}

}  // namespace eclab::curves

#include <limits>
#include <cmath>

#include "eclab/charsums.hpp"
#include "eclab/curves.hpp"
#include "eclab/prime_tables.hpp"

namespace eclab::charsums {

using arith::gcd;
using arith::unit_e;
using curves::PrimeLambdaTable;

namespace {

i64 mod_norm(i64 x, i64 m) { return ((x % m) + m) % m; }

struct PpeTable {
    i64 p;
    i64 g2p, g3p;        // g^2, g^3 mod p
    std::vector<i64> a;  // a_{alpha,beta}(p^e) over residues mod p
};

i64 a_value_twisted(const std::vector<PpeTable>& tabs, i64 a, i64 b) {
    i64 v = 1;
    for (const auto& tb : tabs) {
        const i64 x = mod_norm(a, tb.p) * tb.g2p % tb.p;
        const i64 y = mod_norm(b, tb.p) * tb.g3p % tb.p;
        v *= tb.a[static_cast<size_t>(x * tb.p + y)];
        if (v == 0) return 0;
    }
    return v;
}

}  // namespace

PoissonCheck poisson_identity_check(i64 r, i64 c, i64 g, double A, double B, const FactorSieve& sieve,
                                    const SmoothWeight& w, int Hmax, int Kmax) {
    if (r < 1 || r % 2 == 0) throw std::invalid_argument("poisson_identity_check: r must be odd and positive");
    if (g < 1 || g % 2 == 0 || gcd(g, r) != 1) throw std::invalid_argument("poisson_identity_check: g must be odd and coprime to r");
    if (c < 1 || c % 2 == 0 || !sieve.factor(c).squarefree())
        throw std::invalid_argument("poisson_identity_check: c must be odd and squarefree");

    const auto fr = sieve.factor(r);
    i64 r1 = 1, r2star = 1;
    for (const auto& [p, e] : fr.factors) {
        if (e == 1)
            r1 *= p;
        else
            r2star *= p;
    }
    const i64 rstar = r1 * r2star;
    const i64 c4 = c / gcd(c, g);
    const i64 c1 = gcd(c4, r1);
    const i64 c2 = gcd(c4 / c1, r2star);
    const i64 c0 = c4 / (c1 * c2);
    const i64 q = r1 * r2star * c0;

    // per-prime-power coefficient tables with the g-twist folded in
    std::vector<PpeTable> tabs;
    for (const auto& [p, e] : fr.factors) {
        PpeTable tb;
        tb.p = p;
        tb.g2p = mod_norm(g, p) * mod_norm(g, p) % p;
        tb.g3p = tb.g2p * mod_norm(g, p) % p;
        tb.a.assign(static_cast<size_t>(p * p), 0);
        PrimeLambdaTable base(p);
        for (i64 alpha = 0; alpha < p; ++alpha) {
            const i64 a3 = alpha * alpha % p * alpha % p;
            for (i64 beta = 0; beta < p; ++beta) {
                const i64 ap = base.a_of(alpha, beta);
                const bool bad = (4 * a3 + 27 * (beta * beta % p)) % p == 0;
                i64 prev2 = 1, prev1 = ap;
                for (int i = 2; i <= e; ++i) {
                    const i64 cur = bad ? ap * prev1 : ap * prev1 - p * prev2;
                    prev2 = prev1;
                    prev1 = cur;
                }
                tb.a[static_cast<size_t>(alpha * p + beta)] = prev1;
            }
        }
        tabs.push_back(std::move(tb));
    }
    const double sqrt_r = std::sqrt(static_cast<double>(r));

    PoissonCheck out;

    // direct side: sum over a, b odd with Delta = 0 mod c4
    {
        const double g2 = static_cast<double>(g) * g, g3 = g2 * g;
        const i64 alo = static_cast<i64>(std::floor(A / g2)), ahi = static_cast<i64>(std::ceil(2.0 * A / g2)) + 1;
        const i64 blo = static_cast<i64>(std::floor(B / g3)), bhi = static_cast<i64>(std::ceil(2.0 * B / g3)) + 1;
        double lhs = 0.0;
        for (i64 a = std::max<i64>(alo, 1); a <= ahi; ++a) {
            const double wa = w.eta(static_cast<double>(a) * g2 / A);
            if (wa == 0.0) continue;
            for (i64 b = std::max<i64>(blo, 1) | 1; b <= bhi; b += 2) {
                const double wb = w.eta(static_cast<double>(b) * g3 / B);
                if (wb == 0.0) continue;
                if (c4 > 1 && mod_norm(4 * mod_norm(a, c4) * mod_norm(a, c4) % c4 * mod_norm(a, c4) +
                                           27 * (mod_norm(b, c4) * mod_norm(b, c4) % c4),
                                       c4) != 0)
                    continue;
                const i64 av = a_value_twisted(tabs, a, b);
                if (av != 0) lhs += wa * wb * static_cast<double>(av) / sqrt_r;
            }
        }
        out.lhs = lhs;
    }

    // dual side: complete sums over (alpha mod q, beta mod 2q), beta odd
    std::vector<cplx> inner(static_cast<size_t>(q * 2 * q), cplx{0.0, 0.0});
    {
        std::vector<cplx> root2q(static_cast<size_t>(2 * q));
        for (i64 j = 0; j < 2 * q; ++j) root2q[static_cast<size_t>(j)] = unit_e(static_cast<double>(j) / (2.0 * q));
        struct Pair {
            i64 alpha, beta;
            double av;
        };
        std::vector<Pair> pairs;
        for (i64 alpha = 0; alpha < q; ++alpha)
            for (i64 beta = 1; beta < 2 * q; beta += 2) {
                if (c4 > 1 && mod_norm(4 * (alpha % c4) * (alpha % c4) % c4 * (alpha % c4) +
                                           27 * ((beta % c4) * (beta % c4) % c4),
                                       c4) != 0)
                    continue;
                const i64 av = a_value_twisted(tabs, alpha, beta);
                if (av != 0) pairs.push_back({alpha, beta, static_cast<double>(av) / sqrt_r});
            }
        for (i64 h = 0; h < q; ++h)
            for (i64 k = 0; k < 2 * q; ++k) {
                cplx s = 0.0;
                for (const auto& pr : pairs) s += pr.av * root2q[static_cast<size_t>((2 * pr.alpha * h + pr.beta * k) % (2 * q))];
                inner[static_cast<size_t>(h * 2 * q + k)] = s;
            }
    }

    const double g5 = std::pow(static_cast<double>(g), 5.0);
    const double factor = A * B / (2.0 * g5 * static_cast<double>(q) * static_cast<double>(q));
    const double w00 = w.w_hat00();
    out.zero_freq = factor * inner[0].real() * w00;

    // eta_hat cache along each axis
    const double xi_step = A / (static_cast<double>(g) * g * q);
    const double zeta_step = B / (2.0 * std::pow(static_cast<double>(g), 3.0) * q);
    auto eta_h = [&](i64 h, std::vector<cplx>& cache, double step) {
        const size_t idx = static_cast<size_t>(std::llabs(h));
        while (cache.size() <= idx) cache.push_back(w.eta_hat(step * static_cast<double>(cache.size())));
        return h >= 0 ? cache[idx] : std::conj(cache[idx]);
    };
    std::vector<cplx> cache_h{w.eta_hat(0.0)}, cache_k{w.eta_hat(0.0)};

    auto term = [&](i64 h, i64 k) {
        const cplx in = inner[static_cast<size_t>(mod_norm(h, q) * 2 * q + mod_norm(k, 2 * q))];
        return in * eta_h(h, cache_h, xi_step) * eta_h(k, cache_k, zeta_step);
    };

    cplx dual = 0.0;
    if (Hmax > 0) {
        const int km = Kmax > 0 ? Kmax : Hmax;
        for (i64 h = -Hmax; h <= Hmax; ++h)
            for (i64 k = -km; k <= km; ++k) dual += term(h, k);
        out.hmax_used = Hmax;
        out.kmax_used = km;
        out.truncation_converged = true;
    } else {
        // square shells, grown until three successive partial sums agree to 1e-7
        dual = term(0, 0);
        const int cap = 240;
        int N = 0;
        double prev1 = factor * dual.real();
        double prev2 = std::numeric_limits<double>::infinity();  // force at least two shells
        bool converged = false;
        while (N < cap && !converged) {
            ++N;
            for (i64 h = -N; h <= N; ++h) dual += term(h, N) + term(h, -N);
            for (i64 k = -N + 1; k <= N - 1; ++k) dual += term(N, k) + term(-N, k);
            const double cur = factor * dual.real();
            converged = std::abs(cur - prev1) <= 1e-7 * (1.0 + std::abs(cur)) &&
                        std::abs(prev1 - prev2) <= 1e-7 * (1.0 + std::abs(cur));
            prev2 = prev1;
            prev1 = cur;
        }
        out.hmax_used = N;
        out.kmax_used = N;
        out.truncation_converged = converged;
    }
    out.rhs = factor * dual.real();
    out.rel_error = std::abs(out.lhs - out.rhs) / (1.0 + std::abs(out.lhs));

    // eq-MT: (1/2) A B w00 delta(r1 = 1) Q_c(r) / (c0 r*^2 g^5)
    const double Qc = Q_t(r, c, sieve).value;
    out.main_term = (r1 == 1) ? 0.5 * A * B * w00 * Qc / (static_cast<double>(c0) * rstar * rstar * g5) : 0.0;
    out.mt_band = w00 * A * B * (1.0 / A + 1.0 / B);
    out.mt_within_band = std::abs(out.lhs - out.main_term) <= out.mt_band;
    return out;
}

}  // namespace eclab::charsums

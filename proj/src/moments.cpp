#include "eclab/moments.hpp"

#include <chrono>
#include <cmath>
#include <numbers>

#include "eclab/charsums.hpp"
#include "eclab/parallel.hpp"
#include "eclab/prime_tables.hpp"

namespace eclab::moments {

using curves::SweepTables;

double family_count_prediction(const FamilyWindow& w) {
    return 0.5 / kZeta5 / (1.0 - std::pow(2.0, -5.0)) * w.A() * w.B() * w.weight.w_hat00();
}

void for_each_curve(const FamilyWindow& w, const FactorSieve& sieve,
                    const std::function<void(i64, i64, double)>& fn) {
    const double A = w.A(), B = w.B();
    const i64 a_lo = std::max<i64>(1, static_cast<i64>(std::floor(A)));
    const i64 a_hi = static_cast<i64>(std::ceil(2.0 * A)) + 1;
    const i64 b_lo = std::max<i64>(1, static_cast<i64>(std::floor(B)));
    const i64 b_hi = static_cast<i64>(std::ceil(2.0 * B)) + 1;
    for (i64 a = a_lo; a <= a_hi; ++a) {
        const double wa = w.weight.eta(static_cast<double>(a) / A);
        if (wa == 0.0) continue;
        // primes whose square divides a; the S condition checks b mod p^3
        std::vector<i64> sq;
        for (const auto& [p, e] : sieve.factor(a).factors)
            if (e >= 2) sq.push_back(p * p * p);
        for (i64 b = b_lo | 1; b <= b_hi; b += 2) {
            const double wb = w.weight.eta(static_cast<double>(b) / B);
            if (wb == 0.0) continue;
            bool in_s = true;
            for (i64 p3 : sq)
                if (b % p3 == 0) {
                    in_s = false;
                    break;
                }
            if (in_s) fn(a, b, wa * wb);
        }
    }
}

std::vector<std::tuple<i64, i64, double>> family_list(const FamilyWindow& w, const FactorSieve& sieve) {
    std::vector<std::tuple<i64, i64, double>> out;
    for_each_curve(w, sieve, [&](i64 a, i64 b, double wt) { out.emplace_back(a, b, wt); });
    return out;
}

namespace {

std::vector<double> make_kernel(double T, i64 bound) {
    std::vector<double> ker(static_cast<size_t>(bound) + 1, 0.0);
    for (i64 n = 1; n <= bound; ++n)
        ker[static_cast<size_t>(n)] =
            std::exp(-2.0 * std::numbers::pi * static_cast<double>(n) / T) / static_cast<double>(n);
    return ker;
}

double dot(std::span<const i64> a, const std::vector<double>& ker) {
    double s = 0.0;
    for (size_t n = 1; n < ker.size(); n += 2)
        if (a[n] != 0) s += static_cast<double>(a[n]) * ker[n];  // even n carry a = 0
    return s;
}

// Mollifier terms (m, l) flattened to coefficient-times-a(m) with an l-prime
// mask: psi_Delta(l) is evaluated per curve from D mod the masked primes.
struct MollifierPlan {
    bool trivial = true;
    double trivial_value = 1.0;
    double M = 1.0;
    std::vector<i64> lprimes;
    struct Term {
        i64 m;
        double coef;
        uint32_t lmask;
    };
    std::vector<Term> terms;

    static MollifierPlan build(double M, const std::vector<double>& P, const FactorSieve& sieve) {
        MollifierPlan plan;
        plan.M = M;
        MollifierSpec spec{M, P};
        spec.validate();
        if (M < 2.0) {
            plan.trivial_value = spec.eval_P(1.0);
            return plan;
        }
        plan.trivial = false;
        const double logM = std::log(M);
        for (i64 m = 1; static_cast<double>(m) <= M; ++m) {
            const auto fm = sieve.factor(m);
            if (!fm.squarefree()) continue;
            const double mu_m = fm.mu();
            for (i64 l = 1; static_cast<double>(m) * l * l <= M; l += 2) {  // even l: psi_Delta = 0
                if (l > 1) {
                    if (arith::gcd(l, m) != 1 || !sieve.factor(l).squarefree()) continue;
                }
                uint32_t mask = 0;
                if (l > 1)
                    for (const auto& [p, e] : sieve.factor(l).factors) {
                        size_t idx = 0;
                        while (idx < plan.lprimes.size() && plan.lprimes[idx] != p) ++idx;
                        if (idx == plan.lprimes.size()) plan.lprimes.push_back(p);
                        mask |= 1u << idx;
                    }
                const double x = std::log(M / (static_cast<double>(m) * l * l)) / logM;
                plan.terms.push_back({m, mu_m / (static_cast<double>(m) * l) * spec.eval_P(x), mask});
            }
        }
        return plan;
    }

    uint32_t bad_mask(i64 D) const {
        uint32_t m = 0;
        for (size_t i = 0; i < lprimes.size(); ++i)
            if (D % lprimes[i] == 0) m |= 1u << i;
        return m;
    }

    double value(std::span<const i64> a, uint32_t badmask) const {
        if (trivial) return trivial_value;
        double s = 0.0;
        for (const auto& t : terms)
            if ((t.lmask & badmask) == 0 && a[static_cast<size_t>(t.m)] != 0)
                s += t.coef * static_cast<double>(a[static_cast<size_t>(t.m)]);
        return s;
    }
};

using PerCurve = std::function<void(i64, i64, double, std::span<const i64>, std::vector<KahanSum>&)>;

// stats[0] is always sum of weights; the caller fills the rest.
std::vector<double> sweep(const FamilyWindow& w, const FactorSieve& sieve, i64 bound, size_t n_stats,
                          int threads, const PerCurve& per_curve, i64* curves_out) {
    const auto fam = family_list(w, sieve);
    if (curves_out) *curves_out = static_cast<i64>(fam.size());
    std::unique_ptr<SweepTables> tables;
    if (bound >= 2) tables = std::make_unique<SweepTables>(bound, threads);
    auto body = [&](std::size_t lo, std::size_t hi, std::vector<KahanSum>& acc) {
        std::vector<i64> buf(bound >= 2 ? static_cast<size_t>(bound) + 1 : 2, 0);
        for (std::size_t i = lo; i < hi; ++i) {
            const auto& [a, b, wt] = fam[i];
            if (tables) tables->fill(a, b, buf);
            acc[0].add(wt);
            per_curve(a, b, wt, buf, acc);
        }
    };
    return block_accumulate(fam.size(), threads, n_stats, body);
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

}  // namespace

MomentReport family_count(const FamilyWindow& w, const FactorSieve& sieve, int threads) {
    Timer timer;
    MomentReport rep;
    rep.experiment = "family-count";
    rep.X = w.X;
    auto stats = sweep(
        w, sieve, 0, 1, threads, [](i64, i64, double, std::span<const i64>, std::vector<KahanSum>&) {}, &rep.curves);
    rep.SX = stats[0];
    rep.values = {stats[0]};
    rep.predicted = family_count_prediction(w);
    rep.ratio = stats[0] / rep.predicted;
    rep.extras["deviation"] = std::abs(rep.ratio - 1.0);
    rep.runtime_sec = timer.seconds();
    return rep;
}

MomentReport first_moment_LU(const FamilyWindow& w, double nu, const FactorSieve& sieve, int threads) {
    Timer timer;
    MomentReport rep;
    rep.experiment = "first-moment";
    rep.X = w.X;
    const double U = std::pow(w.X, nu);
    const i64 bound = curves::afe_nmax(U);
    const auto ker = make_kernel(U, bound);
    auto stats = sweep(
        w, sieve, bound, 2, threads,
        [&](i64, i64, double wt, std::span<const i64> a, std::vector<KahanSum>& acc) {
            acc[1].add(wt * dot(a, ker));
        },
        &rep.curves);
    rep.SX = stats[0];
    rep.values = {stats[1] / stats[0]};
    const auto cs = charsums::c_S(47, 3, sieve);
    rep.predicted = cs.value;
    rep.ratio = rep.values[0] / cs.value;
    rep.extras["U"] = U;
    rep.extras["coeff_bound"] = static_cast<double>(bound);
    rep.extras["c_S_tail"] = cs.tail_estimate;
    rep.runtime_sec = timer.seconds();
    return rep;
}

MomentReport mollified_first_moment(const FamilyWindow& w, double nu, double kappa,
                                    const std::vector<double>& P, const FactorSieve& sieve, int threads) {
    Timer timer;
    MomentReport rep;
    rep.experiment = "mollified-first-moment";
    rep.X = w.X;
    const double U = std::pow(w.X, nu), M = std::pow(w.X, kappa);
    const i64 bound = std::max<i64>(curves::afe_nmax(U), static_cast<i64>(M) + 1);
    const auto ker = make_kernel(U, bound);
    const auto plan = MollifierPlan::build(M, P, sieve);
    auto stats = sweep(
        w, sieve, bound, 2, threads,
        [&](i64 a, i64 b, double wt, std::span<const i64> coef, std::vector<KahanSum>& acc) {
            const i64 D = 4 * a * a * a + 27 * b * b;
            acc[1].add(wt * dot(coef, ker) * plan.value(coef, plan.bad_mask(D)));
        },
        &rep.curves);
    rep.SX = stats[0];
    rep.values = {stats[1] / stats[0]};
    rep.predicted = 0.5;
    rep.ratio = rep.values[0] / 0.5;
    rep.extras["U"] = U;
    rep.extras["M"] = M;
    rep.runtime_sec = timer.seconds();
    return rep;
}

MomentReport second_moment_LV(const FamilyWindow& w, const std::vector<double>& alphas,
                              const FactorSieve& sieve, int threads) {
    Timer timer;
    MomentReport rep;
    rep.experiment = "second-moment";
    rep.X = w.X;
    double maxV = 0;
    std::vector<double> Vs;
    for (double al : alphas) {
        Vs.push_back(std::pow(w.X, al));
        maxV = std::max(maxV, Vs.back());
    }
    const i64 bound = curves::afe_nmax(maxV);
    std::vector<std::vector<double>> kers;
    for (double V : Vs) kers.push_back(make_kernel(V, bound));
    auto stats = sweep(
        w, sieve, bound, 1 + Vs.size(), threads,
        [&](i64, i64, double wt, std::span<const i64> a, std::vector<KahanSum>& acc) {
            for (size_t i = 0; i < kers.size(); ++i) {
                const double L = dot(a, kers[i]);
                acc[1 + i].add(wt * L * L);
            }
        },
        &rep.curves);
    rep.SX = stats[0];
    for (size_t i = 0; i < Vs.size(); ++i) {
        rep.grid.push_back(std::log(Vs[i]));
        rep.values.push_back(stats[1 + i] / stats[0]);
    }
    rep.slope_vs_grid = fit::linear(rep.grid, rep.values).slope;
    rep.growth = fit::growth(rep.grid, rep.values);
    rep.runtime_sec = timer.seconds();
    return rep;
}

MomentReport mollifier_second_moment(const FamilyWindow& w, const std::vector<double>& betas,
                                     const std::vector<double>& P, const FactorSieve& sieve, int threads) {
    Timer timer;
    MomentReport rep;
    rep.experiment = "mollifier-second-moment";
    rep.X = w.X;
    std::vector<MollifierPlan> plans;
    i64 bound = 2;
    for (double be : betas) {
        plans.push_back(MollifierPlan::build(std::pow(w.X, be), P, sieve));
        bound = std::max<i64>(bound, static_cast<i64>(plans.back().M) + 1);
    }
    auto stats = sweep(
        w, sieve, bound, 1 + plans.size(), threads,
        [&](i64 a, i64 b, double wt, std::span<const i64> coef, std::vector<KahanSum>& acc) {
            const i64 D = 4 * a * a * a + 27 * b * b;
            for (size_t i = 0; i < plans.size(); ++i) {
                const double m = plans[i].value(coef, plans[i].bad_mask(D));
                acc[1 + i].add(wt * m * m);
            }
        },
        &rep.curves);
    rep.SX = stats[0];
    for (size_t i = 0; i < plans.size(); ++i) {
        rep.grid.push_back(std::log(plans[i].M));
        rep.values.push_back(stats[1 + i] / stats[0]);
    }
    rep.slope_vs_grid = fit::linear(rep.grid, rep.values).slope;
    rep.growth = fit::growth(rep.grid, rep.values);
    rep.extras["int_F2"] = shape_int_F2(P);
    rep.extras["int_G2"] = shape_int_G2(P);
    rep.runtime_sec = timer.seconds();
    return rep;
}

MomentReport cross_moment(const FamilyWindow& w, double alpha1, double alpha2, double beta1, double beta2,
                          const std::vector<double>& scale_grid, const std::vector<double>& P,
                          const FactorSieve& sieve, int threads) {
    Timer timer;
    MomentReport rep;
    rep.experiment = "cross-moment";
    rep.X = w.X;
    const double logX = std::log(w.X);

    std::vector<MollifierPlan> plans1, plans2;
    i64 bound = 2;
    double maxV = 0;
    for (double t : scale_grid) {
        plans1.push_back(MollifierPlan::build(beta1 > 0 ? std::pow(w.X, beta1 * t) : 1.0, P, sieve));
        plans2.push_back(MollifierPlan::build(beta2 > 0 ? std::pow(w.X, beta2 * t) : 1.0, P, sieve));
        bound = std::max<i64>(bound, static_cast<i64>(std::max(plans1.back().M, plans2.back().M)) + 1);
    }
    const bool useL1 = alpha1 > 0, useL2 = alpha2 > 0;
    if (useL1) maxV = std::max(maxV, std::pow(w.X, alpha1));
    if (useL2) maxV = std::max(maxV, std::pow(w.X, alpha2));
    if (maxV > 0) bound = std::max(bound, curves::afe_nmax(maxV));
    std::vector<double> ker1, ker2;
    if (useL1) ker1 = make_kernel(std::pow(w.X, alpha1), bound);
    if (useL2) ker2 = make_kernel(std::pow(w.X, alpha2), bound);

    auto stats = sweep(
        w, sieve, bound, 1 + scale_grid.size(), threads,
        [&](i64 a, i64 b, double wt, std::span<const i64> coef, std::vector<KahanSum>& acc) {
            const i64 D = 4 * a * a * a + 27 * b * b;
            const double L1 = useL1 ? dot(coef, ker1) : 1.0;
            const double L2 = useL2 ? dot(coef, ker2) : 1.0;
            for (size_t i = 0; i < scale_grid.size(); ++i) {
                const double m1 = plans1[i].value(coef, plans1[i].bad_mask(D));
                const double m2 = plans2[i].value(coef, plans2[i].bad_mask(D));
                acc[1 + i].add(wt * L1 * L2 * m1 * m2);
            }
        },
        &rep.curves);
    rep.SX = stats[0];
    const double base = std::max({beta1, beta2, alpha1, alpha2, 1e-9});
    for (size_t i = 0; i < scale_grid.size(); ++i) {
        rep.grid.push_back(std::max(scale_grid[i] * base * logX, 1e-9));
        rep.values.push_back(stats[1 + i] / stats[0]);
    }
    rep.slope_vs_grid = fit::linear(rep.grid, rep.values).slope;
    rep.growth = fit::growth(rep.grid, rep.values);
    rep.extras["alpha1"] = alpha1;
    rep.extras["alpha2"] = alpha2;
    rep.extras["beta1"] = beta1;
    rep.extras["beta2"] = beta2;
    rep.runtime_sec = timer.seconds();
    return rep;
}

double shape_int_F2(const std::vector<double>& P) {
    double s = 0.0;
    for (size_t j1 = 1; j1 < P.size(); ++j1)
        for (size_t j2 = 1; j2 < P.size(); ++j2)
            s += P[j1] * P[j2] * static_cast<double>((j1 + 1) * (j2 + 1)) / static_cast<double>(j1 + j2 + 3);
    return s;
}

double shape_int_G2(const std::vector<double>& P) {
    double s = 0.0;
    for (size_t j1 = 1; j1 < P.size(); ++j1)
        for (size_t j2 = 1; j2 < P.size(); ++j2)
            s += P[j1] * P[j2] / static_cast<double>((j1 + 1) * (j2 + 1) * (j1 + j2 + 3));
    return s;
}

std::map<int, i64> root_number_signs(const FamilyWindow& w, const FactorSieve& sieve, i64 max_curves) {
    std::map<int, i64> counts;
    i64 seen = 0;
    for (const auto& [a, b, wt] : family_list(w, sieve)) {
        if (seen >= max_curves) break;
        curves::CurveParams c{a, b};
        if (!sieve.factor(c.D()).squarefree()) continue;
        ++seen;
        counts[curves::root_number_identity(c, sieve).lhs] += 1;
    }
    return counts;
}

}  // namespace eclab::moments

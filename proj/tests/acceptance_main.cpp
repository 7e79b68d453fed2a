// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failures. Each tolerance is pinned here. Criteria touching family sweeps
// honor ECLAB_THREADS (default: up to 8 hardware threads).
//
// Usage: acceptance [criterion-number ...]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "eclab/arith.hpp"
#include "eclab/asymptotics.hpp"
#include "eclab/charsums.hpp"
#include "eclab/curves.hpp"
#include "eclab/moments.hpp"
#include "eclab/parallel.hpp"

using namespace eclab;
namespace cs = eclab::charsums;
namespace cv = eclab::curves;
namespace mo = eclab::moments;
namespace as = eclab::asymptotics;

namespace {

int failures = 0;

struct Gate {
    int id;
    const char* name;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;

    Gate(int id_, const char* name_) : id(id_), name(name_) {}

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
    void note(const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
    ~Gate() {
        const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s criterion %d (%s) [%.1fs]%s%s\n", ok ? "PASS" : "FAIL", id, name, sec,
                    detail.empty() ? "" : " -- ", detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
};

const arith::FactorSieve& sieve() {
    static arith::FactorSieve s(2'000'000);
    return s;
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

void criterion1() {
    Gate g{1, "complete-sum lemma suite"};
    double worst_gauss = 0;
    for (i64 r = 1; r <= 99; r += 2) {
        if (!sieve().factor(r).squarefree()) continue;
        for (i64 k = 0; k < r; ++k)
            worst_gauss = std::max(worst_gauss, std::abs(arith::gauss_sum(r, k) - arith::gauss_sum_closed(r, k)));
    }
    g.require(worst_gauss <= 1e-9, "Gauss r<=99 worst " + fmt("%.2e", worst_gauss));

    double worst = 0;
    for (i64 r : {1, 3, 5, 7, 11, 15, 21, 33, 35}) {
        cs::LemmaVerifier v(r, sieve());
        for (i64 h = 0; h < r; ++h)
            for (i64 k = 0; k < r; ++k) {
                worst = std::max(worst, v.maincharsum_error(h, k));
                worst = std::max(worst, v.degenerate_exp_error(h, k));
                worst = std::max(worst, v.degenerate_char_error(h, k));
                for (i64 t = 1; t <= r; ++t)
                    if (r % t == 0) worst = std::max(worst, v.maincompletesum_error(t, h, k));
            }
    }
    g.require(worst <= 1e-6, "charsum lemmas worst " + fmt("%.2e", worst));

    bool param = true;
    for (i64 r = 1; r <= 105; r += 2) {
        if (!sieve().factor(r).squarefree()) continue;
        param = param && cs::verify_parameterization(r, sieve());
    }
    g.require(param, "parameterization failed");
    g.note("gauss " + fmt("%.1e", worst_gauss) + ", lemmas " + fmt("%.1e", worst));
}

void criterion2() {
    Gate g{2, "vanishing lemmas, exact integer zero"};
    i64 worst = 0;
    for (i64 p : sieve().primes()) {
        if (p > 47) break;
        if (p == 2) continue;
        i64 pk = 1;
        for (int k = 1; k <= 5; ++k) {
            pk *= p;
            if (k % 2 == 1 || k == 2) worst = std::max<i64>(worst, std::llabs(cs::Q(pk, sieve()).scaled));
        }
    }
    g.require(worst == 0, "nonzero Q scaled value " + std::to_string(worst));
}

void criterion3() {
    Gate g{3, "root-number identity on the small box"};
    int checked = 0, bad = 0;
    for (i64 a = 1; a <= 20; ++a)
        for (i64 b = 1; b <= 20; ++b) {
            const cv::CurveParams c{a, b};
            if (!cv::in_family_S(c, sieve())) continue;
            if (!sieve().factor(c.D()).squarefree()) continue;
            ++checked;
            const auto rn = cv::root_number_identity(c, sieve());
            if (rn.lhs != rn.rhs) ++bad;
        }
    g.require(checked >= 100, "too few curves: " + std::to_string(checked));
    g.require(bad == 0, std::to_string(bad) + " mismatches");
    g.note(std::to_string(checked) + " curves");
}

void criterion4() {
    Gate g{4, "family count vs closed form"};
    const int threads = default_threads();
    mo::FamilyWindow w4{1e4, SmoothWeight{}}, w6{1e6, SmoothWeight{}};
    const auto r4 = mo::family_count(w4, sieve(), threads);
    const auto r6 = mo::family_count(w6, sieve(), threads);
    g.require(std::abs(r6.ratio - 1.0) < 0.02, "X=1e6 deviation " + fmt("%.4f", std::abs(r6.ratio - 1.0)));
    g.require(std::abs(r6.ratio - 1.0) < std::abs(r4.ratio - 1.0),
              "deviation not decreasing: " + fmt("%.2e", std::abs(r4.ratio - 1.0)) + " -> " + fmt("%.2e", std::abs(r6.ratio - 1.0)));
    g.note("dev(1e4) " + fmt("%.2e", std::abs(r4.ratio - 1.0)) + ", dev(1e6) " + fmt("%.2e", std::abs(r6.ratio - 1.0)));
}

void criterion5() {
    Gate g{5, "first moment vs c_S"};
    const int threads = default_threads();
    mo::FamilyWindow w4{1e4, SmoothWeight{}}, w6{1e6, SmoothWeight{}};
    const auto r4 = mo::first_moment_LU(w4, 0.5, sieve(), threads);
    const auto r6 = mo::first_moment_LU(w6, 0.5, sieve(), threads);
    g.require(std::abs(r6.ratio - 1.0) < 0.25, "X=1e6 |ratio-1| " + fmt("%.4f", std::abs(r6.ratio - 1.0)));
    g.require(std::abs(r6.ratio - 1.0) < std::abs(r4.ratio - 1.0), "no improvement from X=1e4");
    g.note("c_S " + fmt("%.6f", r6.predicted) + " (tail " + fmt("%.1e", r6.extras.at("c_S_tail")) + "), |ratio-1|: " +
           fmt("%.3f", std::abs(r4.ratio - 1.0)) + " -> " + fmt("%.4f", std::abs(r6.ratio - 1.0)));
}

void criterion6() {
    Gate g{6, "mollified first moment vs 1/2"};
    const int threads = default_threads();
    const std::vector<double> P{0.0, 1.0};
    mo::FamilyWindow w4{1e4, SmoothWeight{}}, w6{1e6, SmoothWeight{}};
    const auto r4 = mo::mollified_first_moment(w4, 0.4, 0.1, P, sieve(), threads);
    const auto r6 = mo::mollified_first_moment(w6, 0.4, 0.1, P, sieve(), threads);
    g.require(std::abs(r6.ratio - 1.0) < 0.35, "X=1e6 |ratio-1| " + fmt("%.4f", std::abs(r6.ratio - 1.0)));
    g.require(std::abs(r6.ratio - 1.0) < std::abs(r4.ratio - 1.0), "no improvement from X=1e4");
    // supporting data: the approach to 1/2 is O(1/log M); at kappa = 0.1 the
    // mollifier holds a single nontrivial term (M = X^0.1 < 4)
    const auto deep = mo::mollified_first_moment(w6, 0.4, 0.35, P, sieve(), threads);
    g.note("value(kappa=.1) " + fmt("%.4f", r6.values[0]) + ", value(kappa=.35) " + fmt("%.4f", deep.values[0]) +
           ", target 0.5");
}

void criterion7() {
    Gate g{7, "growth-law discrimination"};
    const int threads = default_threads();
    const std::vector<double> P{0.0, 1.0};
    mo::FamilyWindow w{1e6, SmoothWeight{}};

    // L_V^2 over the kernel-alive V window inside alpha < 5/18
    const auto lv2 = mo::second_moment_LV(w, {0.18, 0.20, 0.22, 0.24, 0.26, 0.277}, sieve(), threads);
    const double e1 = lv2.growth.exponent();
    g.require(std::abs(e1 - 1.0) <= 0.5, "L_V^2 exponent " + fmt("%.3f", e1));

    // M(E)^2 over the beta grid
    const auto m2 = mo::mollifier_second_moment(w, {0.08, 0.12, 0.16, 0.20, 0.24, 0.277}, P, sieve(), threads);
    const double e2 = m2.growth.exponent();
    g.require(std::abs(e2 - 3.0) <= 0.8, "M^2 exponent " + fmt("%.3f", e2));

    // L_V^2 M^2 with alpha1 = alpha2 (alpha + beta < 5/18) on the beta-scale grid
    const std::vector<double> scales{0.5, 0.625, 0.75, 0.875, 1.0};
    const auto eq = mo::cross_moment(w, 0.03, 0.03, 0.24, 0.24, scales, P, sieve(), threads);
    const double e3 = eq.growth.exponent();
    g.require(std::abs(e3 - 3.0) <= 0.8, "L_V^2 M^2 exponent " + fmt("%.3f", e3));

    // alpha1 != alpha2 cross moment (sum of exponents < 5/9)
    const auto ne = mo::cross_moment(w, 0.04, 0.16, 0.15, 0.15, scales, P, sieve(), threads);
    const double e4 = ne.growth.exponent();
    g.require(std::abs(e4) <= 0.5, "cross exponent " + fmt("%.3f", e4));
    g.require(e3 - e4 >= 2.0, "exponent gap " + fmt("%.3f", e3 - e4));
    g.note("exponents: LV2 " + fmt("%.2f", e1) + ", M2 " + fmt("%.2f", e2) + ", LV2M2 " + fmt("%.2f", e3) +
           ", cross " + fmt("%.2f", e4));
}

void criterion8() {
    Gate g{8, "asymptotic oracles"};
    // I1: decade drift below 0.01 past V = 1e3 and the limit constant
    double prev = as::I1_oracle(1e3) - std::log(1e3);
    for (double V : {1e4, 1e5, 1e6}) {
        const double cur = as::I1_oracle(V) - std::log(V);
        g.require(std::abs(cur - prev) < 0.01, "I1 decade drift " + fmt("%.4f", std::abs(cur - prev)));
        prev = cur;
    }
    g.require(std::abs(prev - (-std::log(4.0 * std::numbers::pi))) < 1e-3,
              "I1 constant " + fmt("%.6f", prev) + " vs -log(4pi)");

    // I2: oracle/closed-form ratio monotone toward 1 on the M grid
    double prev_gap = 1e18;
    bool mono = true;
    for (double M : {1e5, 1e6, 1e7}) {
        const double r = as::I2_oracle(M, 1, 1).value / as::I2_closed_residue(M, 1, 1);
        if (std::abs(r - 1.0) >= prev_gap) mono = false;
        prev_gap = std::abs(r - 1.0);
    }
    g.require(mono, "I2 ratio not monotone toward 1");

    // I3: fitted growth exponents separate V1 = V2 from V1 != V2 by >= 2
    std::vector<double> lx, eq, ne;
    for (double X : {1e4, 1e5, 1e6, 1e7}) {
        lx.push_back(std::log(X));
        eq.push_back(as::I3_full_oracle(std::pow(X, 0.5), std::pow(X, 0.5), std::pow(X, 0.5), std::pow(X, 0.5), 1, 1).value);
        ne.push_back(as::I3_full_oracle(std::pow(X, 0.3), std::pow(X, 0.7), std::pow(X, 0.5), std::pow(X, 0.5), 1, 1).value);
    }
    const auto feq = fit::growth(lx, eq);
    const auto fne = fit::growth(lx, ne);
    g.require(feq.exponent() - fne.exponent() >= 2.0,
              "I3 gap " + fmt("%.2f", feq.exponent() - fne.exponent()));
    g.note("I1 const " + fmt("%.5f", prev) + ", I2 ratio gap " + fmt("%.3f", prev_gap) + ", I3 exponents " +
           fmt("%.2f", feq.exponent()) + " vs " + fmt("%.2f", fne.exponent()));
}

void criterion9() {
    Gate g{9, "Poisson identity and the zero-frequency main term"};
    const SmoothWeight w{};
    double worst = 0;
    for (i64 r : {1, 5, 7, 15}) {
        const auto pc = cs::poisson_identity_check(r, 1, 1, 50, 50, sieve(), w);
        worst = std::max(worst, pc.rel_error);
        g.require(pc.truncation_converged, "truncation did not converge at r=" + std::to_string(r));
    }
    g.require(worst < 1e-3, "relative error " + fmt("%.2e", worst));
    for (i64 r : {1, 5, 7, 15}) {
        const auto pc = cs::poisson_identity_check(r, 1, 1, 400, 400, sieve(), w);
        g.require(pc.mt_within_band, "main-term band failed at r=" + std::to_string(r));
    }
    g.note("worst identity error " + fmt("%.1e", worst));
}

void criterion10() {
    Gate g{10, "AFE consistency search"};
    const std::vector<std::pair<i64, i64>> curves{{1, 1}, {2, 1}, {1, 3}, {1, 5}, {4, 1}, {5, 1}, {4, 3}, {2, 5}};
    int passed = 0;
    for (const auto& [a, b] : curves) {
        const auto res = cv::afe_consistency_search({a, b}, sieve());
        const bool unique = res.best_competitor_variance >= 10.0 * res.variance;
        const bool stable = res.grid_spread <= 1e-6;
        if (unique && stable && !res.ambiguous) ++passed;
        else
            g.note("curve (" + std::to_string(a) + "," + std::to_string(b) + ") failed");
    }
    g.require(passed >= 5, "only " + std::to_string(passed) + " conclusive searches");
    g.note(std::to_string(passed) + "/8 curves conclusive");
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
    auto want = [&](int id) { return only.empty() || only.count(id) > 0; };

    if (want(1)) criterion1();
    if (want(2)) criterion2();
    if (want(3)) criterion3();
    if (want(4)) criterion4();
    if (want(5)) criterion5();
    if (want(6)) criterion6();
    if (want(7)) criterion7();
    if (want(8)) criterion8();
    if (want(9)) criterion9();
    if (want(10)) criterion10();

    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures;
}

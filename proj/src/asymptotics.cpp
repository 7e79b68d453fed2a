#include "eclab/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace eclab::asymptotics {

namespace {

double factorial(int n) {
    double f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

double binom(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

// S_j(y) = sum_{k^2 <= y} (1/k) (log(y/k^2))^j / j!
double kernel_sum(double y, int j, i64* terms) {
    if (y < 1.0) return 0.0;
    double s = 0.0;
    const double jf = factorial(j);
    const i64 kmax = static_cast<i64>(std::sqrt(y));
    for (i64 k = 1; k <= kmax; ++k) {
        const double L = std::log(y / (static_cast<double>(k) * k));
        if (L < 0) continue;  // k = floor(sqrt(y)) rounding
        double Lj = 1.0;
        for (int i = 0; i < j; ++i) Lj *= L;
        s += Lj / (jf * static_cast<double>(k));
    }
    if (terms) *terms += kmax;
    return s;
}

// Prefix table of H(n) = sum_{q <= n} 1/q; Euler-Maclaurin past the table
// (error < 1e-16 there).
struct HarmonicTable {
    std::vector<double> h;
    explicit HarmonicTable(i64 bound) {
        h.resize(static_cast<size_t>(std::max<i64>(bound, 1)) + 1, 0.0);
        for (size_t n = 1; n < h.size(); ++n) h[n] = h[n - 1] + 1.0 / static_cast<double>(n);
    }
    double operator()(double x) const {
        if (x < 1.0) return 0.0;
        const i64 n = static_cast<i64>(x);
        if (n < static_cast<i64>(h.size())) return h[static_cast<size_t>(n)];
        const double nd = static_cast<double>(n);
        return std::log(nd) + std::numbers::egamma + 0.5 / nd - 1.0 / (12.0 * nd * nd);
    }
};

std::vector<int8_t> mobius_table(i64 bound) {
    std::vector<int8_t> mu(static_cast<size_t>(bound) + 1, 1);
    std::vector<bool> composite(static_cast<size_t>(bound) + 1, false);
    for (i64 p = 2; p <= bound; ++p) {
        if (composite[static_cast<size_t>(p)]) continue;
        for (i64 j = p; j <= bound; j += p) {
            if (j > p) composite[static_cast<size_t>(j)] = true;
            mu[static_cast<size_t>(j)] = static_cast<int8_t>(-mu[static_cast<size_t>(j)]);
        }
        for (i64 j = p * p; j <= bound; j += p * p) mu[static_cast<size_t>(j)] = 0;
    }
    if (bound >= 0) mu[0] = 0;
    return mu;
}

}  // namespace

double I1_oracle(double V) {
    if (V < 10.0) throw std::invalid_argument("I1_oracle: V must be >= 10");
    return -std::log(-std::expm1(-4.0 * std::numbers::pi / V));
}

I2Oracle I2_oracle(double M, int j1, int j2, i64 max_terms) {
    if (M < 1.0 || j1 < 1 || j2 < 1) throw std::invalid_argument("I2_oracle: require M >= 1 and j1, j2 >= 1");
    const i64 nmax = static_cast<i64>(M);
    // cost ~ sum_n 2 sqrt(M/n) ~ 4M
    if (4 * nmax > max_terms) throw CostGuardError("I2_oracle: enumeration exceeds the term guard");
    I2Oracle out;
    for (i64 n = 1; n <= nmax; ++n) {
        const double y = M / static_cast<double>(n);
        const double s1 = kernel_sum(y, j1, &out.terms);
        const double s2 = j2 == j1 ? s1 : kernel_sum(y, j2, &out.terms);
        out.value += s1 * s2 / static_cast<double>(n);
    }
    return out;
}

double I2_closed_residue(double M, int j1, int j2) {
    const double L = std::log(M);
    return 0.25 * std::pow(L, j1 + j2 + 3) / (factorial(j1 + 1) * factorial(j2 + 1) * (j1 + j2 + 3));
}

double I2_closed_stated(double M, int j1, int j2) {
    const double L = std::log(M);
    return 0.25 * std::pow(L, j1 + j2 + 3) * factorial(j1 + 1) * factorial(j2 + 1) / (j1 + j2 + 3);
}

double I2_closed_binomial(double beta1, double beta2, int j1, int j2, double logX) {
    if (beta1 <= 0 || beta2 < beta1) throw std::invalid_argument("I2_closed_binomial: require 0 < beta1 <= beta2");
    double s = 0.0;
    for (int k = 0; k <= j2 - 1; ++k)
        s += binom(j2 - 1, k) * std::pow(beta2 - beta1, k) * std::pow(beta1, j1 + j2 - k - 1) /
             static_cast<double>(j1 + j2 - k - 1);
    return std::pow(logX, j1 + j2 - 1) / (factorial(j1 - 1) * factorial(j2 - 1)) * s;
}

double I3_closed_binomial(double beta1, double beta2, int j1, int j2, double logX) {
    if (beta1 <= 0 || beta2 < beta1) throw std::invalid_argument("I3_closed_binomial: require 0 < beta1 <= beta2");
    double s = 0.0;
    for (int k = 0; k <= j2 - 1; ++k)
        s += j2 * binom(j2 - 1, k) * std::pow(beta2 - beta1, k) * std::pow(beta1, j1 + j2 - k) /
             static_cast<double>(j1 + j2 - k);
    for (int k = 0; k <= j2; ++k)
        s += j1 * binom(j2, k) * std::pow(beta2 - beta1, k) * std::pow(beta1, j1 + j2 - k) /
             static_cast<double>(j1 + j2 - k);
    return std::pow(logX, j1 + j2) / (factorial(j1) * factorial(j2)) * s;
}

I3Oracle I3_full_oracle(double V1, double V2, double M1, double M2, int j1, int j2, bool mobius, i64 max_terms) {
    if (V1 < 1 || V2 < 1 || M1 < 1 || M2 < 1) throw std::invalid_argument("I3_full_oracle: all parameters must be >= 1");
    if (std::max({V1, V2, M1, M2}) > 1e7) throw CostGuardError("I3_full_oracle: parameters above the 1e7 cost bound");
    I3Oracle out;

    const i64 mu_bound = static_cast<i64>(std::max({mobius ? std::min(V1, M1) : 1.0, mobius ? std::min(V2, M1) : 1.0,
                                                    mobius ? std::min(V1, M2) : 1.0, mobius ? std::min(V2, M2) : 1.0}));
    const auto mu = mobius_table(std::max<i64>(mu_bound, 1));
    auto mu_at = [&](i64 m) -> int { return mobius ? mu[static_cast<size_t>(m)] : (m == 1 ? 1 : 0); };
    const HarmonicTable harmonic(std::min<i64>(static_cast<i64>(std::max(V1, V2)), 3'000'000));

    // inner sum over n (and the k, l kernels) for fixed u1 = m1 m2, u2 = m3 m4
    auto inner = [&](double cap1, double cap2) {
        double s = 0.0;
        const i64 nmax = static_cast<i64>(std::min(cap1, cap2));
        for (i64 n = 1; n <= nmax; ++n) {
            const double s1 = kernel_sum(cap1 / static_cast<double>(n), j1, &out.terms);
            const double s2 = kernel_sum(cap2 / static_cast<double>(n), j2, &out.terms);
            s += s1 * s2 / static_cast<double>(n);
        }
        return s;
    };

    for (i64 m1 = 1; static_cast<double>(m1) <= std::min(V1, M1); ++m1) {
        if (mu_at(m1) == 0) continue;
        for (i64 m2 = 1; static_cast<double>(m1) * m2 <= M1 && static_cast<double>(m2) <= V2; ++m2) {
            if (mu_at(m2) == 0) continue;
            for (i64 m3 = 1; static_cast<double>(m3) <= M2 && static_cast<double>(m1) * m3 <= V1; ++m3) {
                if (mu_at(m3) == 0) continue;
                for (i64 m4 = 1; static_cast<double>(m3) * m4 <= M2 && static_cast<double>(m2) * m4 <= V2; ++m4) {
                    if (mu_at(m4) == 0) continue;
                    const double h = harmonic(std::min(V1 / (static_cast<double>(m1) * m3), V2 / (static_cast<double>(m2) * m4)));
                    if (h == 0.0) continue;
                    const int sign = mu_at(m1) * mu_at(m2) * mu_at(m3) * mu_at(m4);
                    const double in = inner(M1 / (static_cast<double>(m1) * m2), M2 / (static_cast<double>(m3) * m4));
                    out.value += sign * h * in / (static_cast<double>(m1) * m2 * m3 * m4);
                    if (out.terms > max_terms) throw CostGuardError("I3_full_oracle: enumeration exceeds the term guard");
                }
            }
        }
    }
    return out;
}

}  // namespace eclab::asymptotics

#pragma once

// Per-curve data for the family y^2 = x^3 + ax + b: membership in S,
// exact Hecke coefficients a(n) (lambda(n) = a(n)/sqrt(n) in the analytic
// normalization), mollifier values, the root-number identity over the odd
// part, and smoothed partial sums of the approximate functional equation.
//
// Exact integers a(n) are the canonical representation throughout; lambda
// appears only where a kernel is applied.

#include <span>
#include <vector>

#include "eclab/arith.hpp"

namespace eclab::curves {

using arith::FactorSieve;

struct CurveParams {
    i64 a = 1;
    i64 b = 1;
    i64 D() const { return 4 * a * a * a + 27 * b * b; }  // discriminant = -16*D
    void validate() const;                                 // a,b >= 1 (so D > 0)
};

struct CurveInvariants {
    i64 D = 0;
    bool in_S = false;
    bool D_squarefree = false;
    i64 gcd_ab = 1;
};

CurveInvariants invariants(CurveParams c, const FactorSieve& sieve);

// (a, b) in S  <=>  b odd and no prime p has p^2 | a and p^3 | b.
bool in_family_S(CurveParams c, const FactorSieve& sieve);
bool in_family_S(i64 a, i64 b, const FactorSieve& sieve);

// a(p) = -sum_x ((x^3+ax+b)/p) for odd p; a(2) = 0 by convention.
// For p | D the sum collapses to the Jacobi symbol (6b/p).
i64 a_p(CurveParams c, i64 p);

// Prime powers: Euler-factor recurrence a(p^k) = a(p)a(p^{k-1}) - p a(p^{k-2})
// for p not dividing D, and a(p^k) = a(p)^k for p | D. a(p^0) = 1.
i64 a_pk(CurveParams c, i64 p, int k);

// Multiplicative extension over the factorization of n.
i64 a_n(CurveParams c, i64 n, const FactorSieve& sieve);

// Exact integer coefficient table a(1..bound) for one curve.
class CoeffSeries {
  public:
    CoeffSeries(CurveParams c, i64 bound, const FactorSieve& sieve);

    CurveParams curve() const { return curve_; }
    i64 bound() const { return static_cast<i64>(table_.size()) - 1; }
    i64 a(i64 n) const { return table_[static_cast<size_t>(n)]; }
    double lambda(i64 n) const;
    std::span<const i64> table() const { return table_; }

  private:
    CurveParams curve_;
    std::vector<i64> table_;
};

// rho(k) = mu(m) lambda(m) when k = m l^2 with ml squarefree and
// gcd(l, Delta) = 1, else 0. Exact scaled form: value = num / sqrt(radicand).
struct RhoValue {
    i64 num = 0;
    i64 radicand = 1;
    double value() const;
};
RhoValue rho_m(CurveParams c, i64 m, const FactorSieve& sieve);

// Mollifier length M and smoothing polynomial P(x) = sum_j P[j] x^j.
// P(0) = 0 is required; P(1) = 1 is the normalized convention, enforced at
// the CLI boundary but not here (scaling linearity is part of the contract).
struct MollifierSpec {
    double M = 1.0;
    std::vector<double> P{0.0, 1.0};

    double eval_P(double x) const;  // 0 for x < 0
    void validate() const;          // M >= 1, P(0) = 0
    double P_at_one() const;
};

// M(E) = sum_{m l^2 <= M} mu^2(ml) mu(m) a(m) / (m l) psi_Delta(l) P(...),
// assembled from the coefficient table (which must reach floor(M)).
double mollifier_value(const CoeffSeries& series, const MollifierSpec& spec, const FactorSieve& sieve);

// Cutoff Y(u) = e^{-u}, the G(t) = 1 member of the admissible family.
struct CutoffKernel {
    enum class Kind { exponential };
    Kind kind = Kind::exponential;
    double Y(double u) const;
};

// Smallest nmax such that Y(2 pi nmax / T) < 1e-12 and the documented tail
// bound  sum_{n > nmax} |lambda(n)|/sqrt(n) Y(2 pi n / T) <= 2 e^{-u nmax}/(1 - e^{-u})
// (u = 2 pi / T, using |lambda(n)| <= d(n) <= 2 sqrt(n)) is at most 1e-10.
i64 afe_nmax(double T);

// L_T = sum_{n <= nmax} lambda(n)/sqrt(n) Y(2 pi n / T). Throws
// TruncationError if nmax fails the bounds above or exceeds the table.
double partial_sum_L(const CoeffSeries& series, double T, i64 nmax, CutoffKernel kernel = {});
double partial_sum_L(const CoeffSeries& series, double T, CutoffKernel kernel = {});  // nmax = afe_nmax(T)

// Raw-span version (used by tests for linearity checks).
double partial_sum_raw(std::span<const i64> a, double T, i64 nmax, CutoffKernel kernel = {});

// Both sides of the root-number identity over the odd part: for squarefree
// D = 4a^3 + 27b^2,
//   lhs = sqrt(D) lambda(D) = prod_{p | D} a(p)        (exact character sums)
//   rhs = chi4(b) (-1)^a (a / 3b)                       (Jacobi symbol)
// The verified identity is lhs == rhs. Throws std::domain_error when D is
// not squarefree (the identity needs multiplicative reduction throughout).
struct RootNumberIdentity {
    i64 D = 0;
    int lhs = 0;
    int rhs = 0;
};
RootNumberIdentity root_number_identity(CurveParams c, const FactorSieve& sieve);

// Conductor/sign consistency search: over candidates N = 2^alpha 3^beta D'
// (D' the odd prime part of Delta; alpha in [1,8], beta in [0,5] only when
// 3 | Delta) and eps = +-1, evaluates R(U) = L_U + eps L_{N/U} on the grid
// U in {sqrt(N)/4, sqrt(N)/2, sqrt(N), 2 sqrt(N), 4 sqrt(N)} and returns the
// pair minimizing the variance of R. The winner is a consistency heuristic,
// not asserted ground truth.
struct AfeCandidate {
    i64 N = 0;
    int eps = 0;
    double mean = 0;
    double variance = 0;
};
struct AfeSearchResult {
    i64 N = 0;
    int eps = 0;
    double central_value = 0;
    double variance = 0;
    double best_competitor_variance = 0;
    double grid_spread = 0;  // max |R_i - mean| for the winner
    bool ambiguous = false;  // no candidate met the threshold
    std::vector<AfeCandidate> candidates;  // sorted by variance
};
AfeSearchResult afe_consistency_search(CurveParams c, const FactorSieve& sieve,
                                       double variance_threshold = 1e-6);
// Explicit-candidate overload; throws std::invalid_argument for a candidate
// not divisible by the odd part of rad(Delta).
AfeSearchResult afe_consistency_search(CurveParams c, const FactorSieve& sieve,
                                       std::span<const i64> candidate_N,
                                       double variance_threshold = 1e-6);

}  // namespace eclab::curves

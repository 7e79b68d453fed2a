#pragma once

// Family sweeps: enumerate S under a smooth window, assemble exact
// coefficients through the shared per-prime tables, and average first,
// mollified, second, and cross moments of the smoothed partial sums.
//
// Sweeps are data-parallel over a fixed block grid with compensated
// per-block sums merged in a fixed pairwise tree; results are identical for
// every thread count.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "eclab/arith.hpp"
#include "eclab/curves.hpp"
#include "eclab/fit.hpp"
#include "eclab/weight.hpp"

namespace eclab::moments {

using arith::FactorSieve;
using curves::MollifierSpec;

inline constexpr double kZeta5 = 1.0369277551433699263;

struct FamilyWindow {
    double X = 1e4;
    SmoothWeight weight{};
    double A() const { return std::cbrt(X); }
    double B() const { return std::sqrt(X); }
};

// |S_X| closed form (1/2) zeta(5)^-1 (1 - 2^-5)^-1 A B w_hat(0,0).
double family_count_prediction(const FamilyWindow& w);

// Deterministic a-major enumeration of curves with positive weight.
std::vector<std::tuple<i64, i64, double>> family_list(const FamilyWindow& w, const FactorSieve& sieve);
void for_each_curve(const FamilyWindow& w, const FactorSieve& sieve,
                    const std::function<void(i64, i64, double)>& fn);

struct MomentReport {
    std::string experiment;
    double X = 0;
    double SX = 0;                 // weighted family size
    i64 curves = 0;                // pairs with positive weight
    std::vector<double> grid;      // abscissae (log M, log V, ...)
    std::vector<double> values;    // empirical moments
    double predicted = 0;
    double ratio = 0;
    fit::GrowthFit growth;
    double slope_vs_grid = 0;      // linear fit of values against grid
    double runtime_sec = 0;
    std::map<std::string, double> extras;
};

MomentReport family_count(const FamilyWindow& w, const FactorSieve& sieve, int threads);

// (1/|S_X|) sum L_U w_X with U = X^nu; ratio against the c_S Euler product.
MomentReport first_moment_LU(const FamilyWindow& w, double nu, const FactorSieve& sieve, int threads);

// (1/|S_X|) sum L_U M(E) w_X with M = X^kappa; target 1/2.
MomentReport mollified_first_moment(const FamilyWindow& w, double nu, double kappa,
                                    const std::vector<double>& P, const FactorSieve& sieve, int threads);

// (1/|S_X|) sum L_V^2 w_X on the V-grid X^alpha, alpha in `alphas`.
MomentReport second_moment_LV(const FamilyWindow& w, const std::vector<double>& alphas,
                              const FactorSieve& sieve, int threads);

// (1/|S_X|) sum M(E)^2 w_X on the M-grid X^beta; also reports the shape
// constants of F(x) = x (x P(x))' and of int_0^x P.
MomentReport mollifier_second_moment(const FamilyWindow& w, const std::vector<double>& betas,
                                     const std::vector<double>& P, const FactorSieve& sieve, int threads);

// (1/|S_X|) sum L_{V1} L_{V2} M1 M2 w_X; the beta pair is scaled through
// `scale_grid` (alphas fixed), exposing the (log M)^3 law at alpha1 = alpha2
// against the bounded alpha1 != alpha2 behavior. alpha = 0 means L = 1 and
// beta = 0 means M(E) = 1.
MomentReport cross_moment(const FamilyWindow& w, double alpha1, double alpha2, double beta1, double beta2,
                          const std::vector<double>& scale_grid, const std::vector<double>& P,
                          const FactorSieve& sieve, int threads);

// Shape constants for the mollified second moment, exact in the P
// coefficients: int_0^1 F(x)^2 dx with F = x^2 P' + x P, and
// int_0^1 (int_0^x P)^2 dx.
double shape_int_F2(const std::vector<double>& P);
double shape_int_G2(const std::vector<double>& P);

// Diagnostic tabulation of sign(sqrt(D) lambda(D)) over squarefree-D curves;
// exploratory only, never averaged into any moment.
std::map<int, i64> root_number_signs(const FamilyWindow& w, const FactorSieve& sieve, i64 max_curves);

}  // namespace eclab::moments

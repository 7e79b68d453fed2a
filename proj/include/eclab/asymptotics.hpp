#pragma once

// Exact Dirichlet-sum oracles for the contour-integral growth laws of the
// family moments. With g = 1 every kernel is a sharp log-power
// cutoff, so each oracle is a finite sum evaluated exactly: the reported
// truncation bound is zero by construction.
//
// The closed form of the (zeta^3 / power kernels) integral circulates in two
// normalizations, with (j1+1)!(j2+1)! either in the numerator or, per the
// direct residue computation, in the denominator. The oracle arbitrates;
// reports carry both.

#include <cstdint>

#include "eclab/arith.hpp"

namespace eclab::asymptotics {

// Collapses to -log(1 - e^{-4 pi / V}); grows like log V + O(1) with the
// constant -log(4 pi).
double I1_oracle(double V);

struct I2Oracle {
    double value = 0;
    i64 terms = 0;
    double truncation_bound = 0;  // exact finite sum
};
// sum_{n,k,l : k^2 n <= M, l^2 n <= M} 1/(nkl) (log(M/k^2n))^j1/j1! (log(M/l^2n))^j2/j2!
I2Oracle I2_oracle(double M, int j1, int j2, i64 max_terms = 400'000'000);

double I2_closed_residue(double M, int j1, int j2);  // 1/4 (log M)^{j1+j2+3} / ((j1+1)!(j2+1)!(j1+j2+3))
double I2_closed_stated(double M, int j1, int j2);   // factorials in the numerator

// Binomial-sum closed forms of the I2/I3 displays with g(0) = 1 and
// M_i = X^{beta_i} (beta1 <= beta2).
double I2_closed_binomial(double beta1, double beta2, int j1, int j2, double logX);
double I3_closed_binomial(double beta1, double beta2, int j1, int j2, double logX);

struct I3Oracle {
    double value = 0;
    i64 terms = 0;
    double truncation_bound = 0;  // exact finite sum
};
// Full quotient-of-zetas integral as a Moebius-weighted exact multi-sum;
// distinguishes the (log X)^{j1+j2+3} law (V1 = V2) from (log X)^{j1+j2}
// (V1 != V2). mobius = false zeroes the mu weights (numerator-only sum).
I3Oracle I3_full_oracle(double V1, double V2, double M1, double M2, int j1, int j2, bool mobius = true,
                        i64 max_terms = 400'000'000);

}  // namespace eclab::asymptotics

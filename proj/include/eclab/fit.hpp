#pragma once

// Least-squares helpers for the growth-law experiments. Two exponent
// estimators are reported side by side:
//   exponent_loglog — slope of log y against log x (x is already a log scale)
//   exponent_offset — e from fitting y = c x^e + d, which tolerates the
//                     the additive lower-order terms of the growth laws
// A near-constant sequence is flagged flat and gets exponent 0.

#include <span>

namespace eclab::fit {

struct LinearFit {
    double slope = 0;
    double intercept = 0;
};
LinearFit linear(std::span<const double> x, std::span<const double> y);

struct GrowthFit {
    double exponent_loglog = 0;
    double exponent_offset = 0;
    double c = 0;
    double d = 0;
    bool flat = false;  // relative range below 10%: no growth resolved
    double exponent() const { return flat ? 0.0 : exponent_offset; }
};
GrowthFit growth(std::span<const double> x, std::span<const double> y);

}  // namespace eclab::fit

#pragma once

// Smooth family weight w(x, y) = eta(x) eta(y) and its Fourier transform.
// The default profile is the bump eta(x) = exp(1 + 1/((2x-3)^2 - 1)) on
// (1, 2), peak-normalized to 1; a sharp cutoff on [1, 2] is available for
// diagnostics only. Main-term formulas depend on the weight only through
// w_hat(0,0), computed by quadrature.

#include <complex>

namespace eclab {

struct SmoothWeight {
    enum class Mode { bump, sharp };
    Mode mode = Mode::bump;
    double amplitude = 1.0;

    double eta(double x) const;
    double operator()(double x, double y) const { return eta(x) * eta(y); }

    // eta_hat(xi) = int eta(t) e^(-2 pi i xi t) dt, Gauss-Legendre panels
    // scaled with |xi| so the oscillation is resolved.
    std::complex<double> eta_hat(double xi) const;

    double integral_eta() const;           // eta_hat(0), real
    double w_hat00() const;                // integral of w = (int eta)^2
    std::complex<double> w_hat(double xi1, double xi2) const { return eta_hat(xi1) * eta_hat(xi2); }
};

}  // namespace eclab

#include "eclab/weight.hpp"

#include <cmath>
#include <numbers>

namespace eclab {

namespace {

// 32-point Gauss-Legendre nodes/weights on [-1, 1] (positive half; mirrored).
constexpr int kGL = 32;
constexpr double kNodes[kGL / 2] = {
    0.0483076656877383162, 0.1444719615827964934, 0.2392873622521370745, 0.3318686022821276498,
    0.4213512761306353454, 0.5068999089322293900, 0.5877157572407623290, 0.6630442669302152010,
    0.7321821187402896804, 0.7944837959679424070, 0.8493676137325699701, 0.8963211557660521240,
    0.9349060759377396892, 0.9647622555875064308, 0.9856115115452683354, 0.9972638618494815635,
};
constexpr double kWeights[kGL / 2] = {
    0.0965400885147278006, 0.0956387200792748594, 0.0938443990808045654, 0.0911738786957638847,
    0.0876520930044038111, 0.0833119242269467552, 0.0781938957870703065, 0.0723457941088485062,
    0.0658222227763618468, 0.0586840934785355471, 0.0509980592623761762, 0.0428358980222266807,
    0.0342738629130214331, 0.0253920653092620595, 0.0162743947309056706, 0.0070186100094700966,
};

template <class F>
auto gl_panel(F&& f, double a, double b) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    using R = decltype(f(a));
    R s{};
    for (int i = 0; i < kGL / 2; ++i) {
        s += kWeights[i] * (f(mid + half * kNodes[i]) + f(mid - half * kNodes[i]));
    }
    return half * s;
}

}  // namespace

double SmoothWeight::eta(double x) const {
    if (mode == Mode::sharp) return (x >= 1.0 && x <= 2.0) ? amplitude : 0.0;
    const double u = 2.0 * x - 3.0;
    if (u <= -1.0 || u >= 1.0) return 0.0;
    return amplitude * std::exp(1.0 + 1.0 / (u * u - 1.0));
}

std::complex<double> SmoothWeight::eta_hat(double xi) const {
    // panels per unit chosen so each oscillation period gets >= 16 panels'
    // worth of nodes; sharp mode has the elementary closed form
    if (mode == Mode::sharp) {
        if (xi == 0.0) return amplitude;
        const double t = 2.0 * std::numbers::pi * xi;
        // int_1^2 e^{-i t x} dx = (e^{-i t} - e^{-2 i t}) / (i t)
        const std::complex<double> i(0.0, 1.0);
        return amplitude * (std::exp(-i * t) - std::exp(-i * (2.0 * t))) / (i * t);
    }
    const int panels = std::max(8, static_cast<int>(std::ceil(std::abs(xi) / 2.0)) + 4);
    std::complex<double> s{};
    for (int p = 0; p < panels; ++p) {
        const double a = 1.0 + static_cast<double>(p) / panels;
        const double b = 1.0 + static_cast<double>(p + 1) / panels;
        s += gl_panel(
            [&](double t) {
                const double ph = -2.0 * std::numbers::pi * xi * t;
                return eta(t) * std::complex<double>{std::cos(ph), std::sin(ph)};
            },
            a, b);
    }
    return s;
}

double SmoothWeight::integral_eta() const {
    if (mode == Mode::sharp) return amplitude;
    double s = 0.0;
    const int panels = 8;
    for (int p = 0; p < panels; ++p) {
        const double a = 1.0 + static_cast<double>(p) / panels;
        const double b = 1.0 + static_cast<double>(p + 1) / panels;
        s += gl_panel([&](double t) { return eta(t); }, a, b);
    }
    return s;
}

double SmoothWeight::w_hat00() const {
    const double ie = integral_eta();
    return ie * ie;
}

}  // namespace eclab

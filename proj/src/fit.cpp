#include "eclab/fit.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace eclab::fit {

LinearFit linear(std::span<const double> x, std::span<const double> y) {
    const auto n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double det = n * sxx - sx * sx;
    LinearFit f;
    if (det != 0) {
        f.slope = (n * sxy - sx * sy) / det;
        f.intercept = (sy - f.slope * sx) / n;
    }
    return f;
}

namespace {

// Given e, solve min_{c,d} sum (y - c x^e - d)^2 and return the residual.
double offset_rss(std::span<const double> x, std::span<const double> y, double e, double* c_out, double* d_out) {
    const auto n = static_cast<double>(x.size());
    double su = 0, sy = 0, suu = 0, suy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        const double u = std::pow(x[i], e);
        su += u;
        sy += y[i];
        suu += u * u;
        suy += u * y[i];
    }
    const double det = n * suu - su * su;
    double c = 0, d = sy / n;
    if (det > 1e-12 * n * suu) {
        c = (n * suy - su * sy) / det;
        d = (sy - c * su) / n;
    }
    double rss = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - c * std::pow(x[i], e) - d;
        rss += r * r;
    }
    if (c_out) *c_out = c;
    if (d_out) *d_out = d;
    return rss;
}

}  // namespace

GrowthFit growth(std::span<const double> x, std::span<const double> y) {
    GrowthFit g;
    if (x.size() < 2 || x.size() != y.size()) return g;

    double ymin = y[0], ymax = y[0], ymean = 0;
    for (double v : y) {
        ymin = std::min(ymin, v);
        ymax = std::max(ymax, v);
        ymean += v;
    }
    ymean /= static_cast<double>(y.size());
    if (ymax - ymin < 0.10 * std::abs(ymean)) {
        g.flat = true;
        g.c = 0;
        g.d = ymean;
        return g;
    }

    if (ymin > 0) {
        std::vector<double> lx(x.size()), ly(y.size());
        for (size_t i = 0; i < x.size(); ++i) {
            lx[i] = std::log(x[i]);
            ly[i] = std::log(y[i]);
        }
        g.exponent_loglog = linear(lx, ly).slope;
    }

    // coarse grid then golden refinement on e
    double best_e = 0, best_rss = offset_rss(x, y, 0.0, nullptr, nullptr);
    for (double e = 0.1; e <= 8.0; e += 0.1) {
        const double rss = offset_rss(x, y, e, nullptr, nullptr);
        if (rss < best_rss) {
            best_rss = rss;
            best_e = e;
        }
    }
    double lo = std::max(0.0, best_e - 0.1), hi = std::min(8.0, best_e + 0.1);
    for (int it = 0; it < 60; ++it) {
        const double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
        if (offset_rss(x, y, m1, nullptr, nullptr) < offset_rss(x, y, m2, nullptr, nullptr))
            hi = m2;
        else
            lo = m1;
    }
    g.exponent_offset = 0.5 * (lo + hi);
    offset_rss(x, y, g.exponent_offset, &g.c, &g.d);
    return g;
}

}  // namespace eclab::fit

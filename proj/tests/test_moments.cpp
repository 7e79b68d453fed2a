#include "doctest.h"

#include <cmath>
#include <numbers>

#include "eclab/moments.hpp"

using namespace eclab;
using namespace eclab::moments;

namespace {
const arith::FactorSieve& sieve() {
    static arith::FactorSieve s(2000000);
    return s;
}
}  // namespace

TEST_CASE("family enumeration: support box, S filter, determinism") {
    FamilyWindow sharp{720.0, SmoothWeight{SmoothWeight::Mode::sharp}};
    const double A = sharp.A(), B = sharp.B();  // box [8.96, 17.93] x [26.83, 53.67]
    bool saw_9_27 = false, saw_9_29 = false;
    for (const auto& [a, b, wt] : family_list(sharp, sieve())) {
        CHECK(static_cast<double>(a) >= A);
        CHECK(static_cast<double>(a) <= 2 * A);
        CHECK(static_cast<double>(b) >= B);
        CHECK(static_cast<double>(b) <= 2 * B);
        CHECK(b % 2 == 1);
        CHECK(curves::in_family_S(a, b, sieve()));
        if (a == 9 && b == 27) saw_9_27 = true;
        if (a == 9 && b == 29) saw_9_29 = true;
    }
    CHECK_FALSE(saw_9_27);  // 3^2 | 9 and 3^3 | 27
    CHECK(saw_9_29);

    const auto l1 = family_list(sharp, sieve());
    const auto l2 = family_list(sharp, sieve());
    CHECK(l1 == l2);
}

TEST_CASE("family count against the closed form") {
    FamilyWindow win{1e5, SmoothWeight{}};
    const auto rep = family_count(win, sieve(), 4);
    CHECK(std::abs(rep.ratio - 1.0) < 0.02);
    CHECK(rep.SX > 0);
    CHECK(rep.curves > 0);
}

TEST_CASE("sweeps are bitwise deterministic across thread counts") {
    FamilyWindow win{3e4, SmoothWeight{}};
    const auto r1 = first_moment_LU(win, 0.45, sieve(), 1);
    const auto r3 = first_moment_LU(win, 0.45, sieve(), 3);
    const auto r8 = first_moment_LU(win, 0.45, sieve(), 8);
    CHECK(r1.SX == r3.SX);
    CHECK(r1.SX == r8.SX);
    CHECK(r1.values[0] == r3.values[0]);
    CHECK(r1.values[0] == r8.values[0]);
}

TEST_CASE("first moment degenerates to the kernel value as U -> 1") {
    FamilyWindow win{1e4, SmoothWeight{}};
    const auto rep = first_moment_LU(win, 0.05, sieve(), 4);
    const double U = std::pow(1e4, 0.05);
    const double kernel_only = std::exp(-2.0 * std::numbers::pi / U);
    CHECK(std::abs(rep.values[0] - kernel_only) < 1e-4);
}

TEST_CASE("doubling U moves the average by little once U is large") {
    FamilyWindow win{1e5, SmoothWeight{}};
    const auto a = first_moment_LU(win, 0.5, sieve(), 4);
    const auto b = first_moment_LU(win, 0.5 + std::log(2.0) / std::log(1e5), sieve(), 4);
    CHECK(std::abs(b.values[0] - a.values[0]) < 0.05 * std::max(1.0, std::abs(a.values[0])));
}

TEST_CASE("mollified first moment: degenerate M and linearity in P") {
    FamilyWindow win{1e4, SmoothWeight{}};
    // kappa -> 0: M < 2 makes M(E) = 1 and the experiment reduces to L_U
    const auto plain = first_moment_LU(win, 0.4, sieve(), 2);
    const auto triv = mollified_first_moment(win, 0.4, 0.05, {0.0, 1.0}, sieve(), 2);
    CHECK(triv.values[0] == plain.values[0]);

    const auto one = mollified_first_moment(win, 0.4, 0.2, {0.0, 1.0}, sieve(), 2);
    const auto two = mollified_first_moment(win, 0.4, 0.2, {0.0, 2.0}, sieve(), 2);
    CHECK(two.values[0] == doctest::Approx(2.0 * one.values[0]).epsilon(1e-12));
}

TEST_CASE("second moment: V -> 0 degeneracy and positive slope in log V") {
    FamilyWindow win{1e4, SmoothWeight{}};
    const auto deg = second_moment_LV(win, {0.05}, sieve(), 2);
    const double V = std::pow(1e4, 0.05);
    const double y2 = std::exp(-4.0 * std::numbers::pi / V);
    CHECK(std::abs(deg.values[0] - y2) < 5e-5);

    FamilyWindow big{1e5, SmoothWeight{}};
    const auto rep = second_moment_LV(big, {0.18, 0.22, 0.26}, sieve(), 4);
    CHECK(rep.slope_vs_grid > 0);
}

TEST_CASE("second-moment slope is stable across X within 30%") {
    const std::vector<double> grid{0.18, 0.20, 0.22, 0.24, 0.26, 0.277};
    FamilyWindow w5{1e5, SmoothWeight{}}, w6{3e5, SmoothWeight{}};
    const auto r5 = second_moment_LV(w5, grid, sieve(), 8);
    const auto r6 = second_moment_LV(w6, grid, sieve(), 8);
    CHECK(std::abs(r5.slope_vs_grid / r6.slope_vs_grid - 1.0) < 0.3);
}

TEST_CASE("mollifier second moment: shape constants and the beta -> 0 limit") {
    CHECK(shape_int_F2({0.0, 1.0}) == doctest::Approx(0.8));    // F = 2x^2
    CHECK(shape_int_G2({0.0, 1.0}) == doctest::Approx(0.05));   // int (x^2/2)^2
    FamilyWindow win{1e4, SmoothWeight{}};
    const auto rep = mollifier_second_moment(win, {0.05}, {0.0, 1.0}, sieve(), 2);
    CHECK(rep.values[0] == 1.0);  // M(E) = 1 exactly
    const auto grown = mollifier_second_moment(win, {0.05, 0.2, 0.3, 0.4}, {0.0, 1.0}, sieve(), 2);
    CHECK(grown.values.back() > 1.0);
    CHECK(grown.extras.at("int_F2") == doctest::Approx(0.8));
}

TEST_CASE("cross moment: degenerate exponents give the kernel constant") {
    FamilyWindow win{1e4, SmoothWeight{}};
    const auto flat = cross_moment(win, 0.0, 0.0, 0.0, 0.0, {0.5, 0.75, 1.0}, {0.0, 1.0}, sieve(), 2);
    for (double v : flat.values) CHECK(v == 1.0);
    CHECK(flat.growth.flat);
    CHECK(flat.growth.exponent() == 0.0);

    const auto ker = cross_moment(win, 0.05, 0.05, 0.0, 0.0, {1.0}, {0.0, 1.0}, sieve(), 2);
    const double V = std::pow(1e4, 0.05);
    CHECK(std::abs(ker.values[0] - std::exp(-4.0 * std::numbers::pi / V)) < 5e-5);
}

TEST_CASE("sweep engine agrees with the independent per-curve route") {
    // same moment assembled from CoeffSeries + partial_sum_L with a raised
    // coefficient bound; both the sweep tables and the kernel truncation
    // must be invisible at 1e-8
    FamilyWindow win{2e4, SmoothWeight{}};
    const double nu = 0.4, U = std::pow(2e4, nu);
    const auto rep = first_moment_LU(win, nu, sieve(), 3);
    double num = 0, den = 0;
    for (const auto& [a, b, wt] : family_list(win, sieve())) {
        curves::CoeffSeries s({a, b}, curves::afe_nmax(U) + 500, sieve());
        num += wt * curves::partial_sum_L(s, U, curves::afe_nmax(U) + 500);
        den += wt;
    }
    CHECK(std::abs(rep.values[0] - num / den) < 1e-8);
    CHECK(std::abs(rep.SX - den) < 1e-9);

    // same cross-check for the mollified and squared statistics
    const double kappa = 0.18, M = std::pow(2e4, kappa);
    const std::vector<double> P{0.0, 0.5, 0.5};
    const auto mrep = mollified_first_moment(win, nu, kappa, P, sieve(), 3);
    const auto srep = second_moment_LV(win, {nu}, sieve(), 3);
    double mnum = 0, snum = 0;
    for (const auto& [a, b, wt] : family_list(win, sieve())) {
        curves::CoeffSeries s({a, b}, curves::afe_nmax(U) + 500, sieve());
        const double L = curves::partial_sum_L(s, U, curves::afe_nmax(U) + 500);
        mnum += wt * L * curves::mollifier_value(s, {M, P}, sieve());
        snum += wt * L * L;
    }
    CHECK(std::abs(mrep.values[0] - mnum / den) < 1e-8);
    CHECK(std::abs(srep.values[0] - snum / den) < 1e-8);
}

TEST_CASE("weight scaling leaves normalized moments unchanged") {
    SmoothWeight w1{}, w3{};
    w3.amplitude = 3.0;
    FamilyWindow a{1e4, w1}, b{1e4, w3};
    const auto ra = first_moment_LU(a, 0.4, sieve(), 2);
    const auto rb = first_moment_LU(b, 0.4, sieve(), 2);
    CHECK(rb.SX == doctest::Approx(9.0 * ra.SX).epsilon(1e-12));
    CHECK(rb.values[0] == doctest::Approx(ra.values[0]).epsilon(1e-12));
    const auto ca = family_count(a, sieve(), 2);
    const auto cb = family_count(b, sieve(), 2);
    CHECK(ca.ratio == doctest::Approx(cb.ratio).epsilon(1e-12));
}

TEST_CASE("root-number sign diagnostic") {
    FamilyWindow win{2e4, SmoothWeight{}};
    const auto counts = root_number_signs(win, sieve(), 200);
    i64 total = 0;
    for (const auto& [sign, n] : counts) {
        CHECK((sign == 1 || sign == -1));
        total += n;
    }
    CHECK(total == 200);
}

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <random>

#include "doctest.h"
#include "gqd/quadrature.hpp"
#include "oracles.hpp"

using namespace gqd;

TEST_CASE("sqrt_neg branch values") {
    CHECK(sqrt_neg(ComplexEnergy::real_neg(-1.0), 1.0) == cplx{1.0, 0.0});

    // z = E_p + i0+ with p = 2, m = 1 -> -2i exactly.
    const cplx s = sqrt_neg(ComplexEnergy::above(4.0), 1.0);
    CHECK(s.real() == 0.0);
    CHECK(s.imag() == -2.0);

    // Generic complex point against a 50-digit evaluation of sqrt(-z).
    using mpc = boost::multiprecision::cpp_complex_50;
    const mpc z{1.0, 1.0};
    const mpc ref = sqrt(-z);
    const cplx got = sqrt_neg(ComplexEnergy::off_axis({1.0, 1.0}), 1.0);
    CHECK(std::abs(got.real() - ref.real().convert_to<double>()) < 1e-14);
    CHECK(std::abs(got.imag() - ref.imag().convert_to<double>()) < 1e-14);
    // frozen from the oracle above
    CHECK(got.real() == doctest::Approx(0.45508986056222733).epsilon(1e-14));
    CHECK(got.imag() == doctest::Approx(-1.0986841134678098).epsilon(1e-14));
}

TEST_CASE("sqrt_neg properties: square and branch half-plane") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> mag(0.01, 50.0), ang(0.02, 2.0 * M_PI - 0.02);
    for (int i = 0; i < 1000; ++i) {
        const double r = mag(rng), th = ang(rng);
        const cplx z = r * cplx{std::cos(th), std::sin(th)};
        const double m = mag(rng);
        const cplx s = sqrt_neg(ComplexEnergy::off_axis(z), m);
        CHECK(std::abs(s * s - (-z * m)) <= 1e-13 * std::abs(z * m));
        CHECK(s.real() > 0.0);
    }
}

TEST_CASE("radial_integral: Gaussian moment") {
    auto f = [](double k) { return cplx{std::exp(-k * k), 0.0}; };
    const auto r = radial_integral(f, 1e-10);
    const double expected = std::sqrt(M_PI) / 4.0 / (2.0 * M_PI * M_PI);
    CHECK(std::abs(r.value.real() - expected) < 1e-12);
    CHECK(r.abs_error_estimate <= 1e-10 * std::max(1.0, std::abs(r.value)));
    CHECK(r.evaluations >= 1);
}

TEST_CASE("radial_integral: zero integrand and integrable 1/k") {
    auto zero = [](double) { return cplx{0.0, 0.0}; };
    CHECK(radial_integral(zero, 1e-10).value == cplx{0.0, 0.0});

    // f ~ 1/k near the origin, integrable after the k^2 weight.
    auto f = [](double k) { return cplx{std::exp(-k * k) / k, 0.0}; };
    const auto r = radial_integral(f, 1e-10);
    const cplx coarse = oracles::fixed_grid_radial(f, 12.0, 4000);
    const cplx fine = oracles::fixed_grid_radial(f, 12.0, 40000);
    CHECK(std::abs(coarse - fine) < 1e-8);  // the oracle has converged
    CHECK(std::abs(r.value - fine) < 1e-8);
}

TEST_CASE("radial_integral: linearity") {
    auto f = [](double k) { return cplx{std::exp(-k * k), 0.0}; };
    auto g = [](double k) { return cplx{1.0 / (1.0 + k * k * k * k), 0.0}; };
    const double al = 2.5, be = -0.75;
    auto combo = [&](double k) { return al * f(k) + be * g(k); };
    const double tol = 1e-10;
    const cplx lhs = radial_integral(combo, tol).value;
    const cplx rhs = al * radial_integral(f, tol).value + be * radial_integral(g, tol).value;
    CHECK(std::abs(lhs - rhs) <= 2.0 * tol * (1.0 + std::abs(lhs)));
}

TEST_CASE("radial_integral: algebraic tail via the reciprocal map") {
    // int d3k/(2pi)^3 1/(1+k^2)^2 = (1/2pi^2) * pi/4
    auto f = [](double k) { const double u = 1.0 + k * k; return cplx{1.0 / (u * u), 0.0}; };
    const auto r = radial_integral(f, 1e-11);
    CHECK(std::abs(r.value.real() - M_PI / 4.0 / (2.0 * M_PI * M_PI)) < 1e-11);
}

TEST_CASE("pv_pole_integral: unit numerator") {
    // int d3k/(2pi)^3 1/(p^2 - k^2 + i0) with the linear divergence dropped:
    // zero finite part, residue -i p/(4pi).
    PvOptions opt;
    opt.tol = 1e-11;
    opt.f_inf = cplx{1.0, 0.0};
    auto one = [](double) { return cplx{1.0, 0.0}; };
    const cplx v = pv_pole_integral(one, 1.0, CutSide::Above, opt);
    CHECK(std::abs(v.real()) < 1e-11);
    CHECK(v.imag() == doctest::Approx(-1.0 / (4.0 * M_PI)).epsilon(1e-12));
}

TEST_CASE("pv_pole_integral: vanishing residue is purely principal value") {
    const double p = 1.3;
    auto f = [p](double k) { return cplx{(k * k - p * p) * std::exp(-k * k), 0.0}; };
    const cplx v = pv_pole_integral(f, p, CutSide::Above, 1e-12);
    CHECK(std::abs(v.imag()) < 1e-12);
}

TEST_CASE("pv_pole_integral: Gaussian numerator against eta-offset oracle") {
    const double p = 0.9;
    auto f = [](double k) { return cplx{std::exp(-0.7 * k * k), 0.0}; };
    const cplx v = pv_pole_integral(f, p, CutSide::Above, 1e-11);

    auto offset = [&](double eta) {
        auto g = [&](double k) { return f(k) / cplx{p * p - k * k, eta}; };
        return oracles::fixed_grid_radial(g, 10.0, 200000);
    };
    const double eta = 0.008;
    const cplx ref = oracles::eta_extrapolate(offset(eta), offset(eta / 2), offset(eta / 4));
    CHECK(std::abs(v - ref) < 1e-8);
}

TEST_CASE("pv_pole_integral: conjugation across the cut") {
    auto f = [](double k) { return cplx{1.0 / (1.0 + k * k), 0.0}; };
    const cplx above = pv_pole_integral(f, 0.7, CutSide::Above, 1e-12);
    const cplx below = pv_pole_integral(f, 0.7, CutSide::Below, 1e-12);
    CHECK(std::abs(above - std::conj(below)) < 1e-13);
}

TEST_CASE("pv_pole_integral agrees with radial_integral at z + i eta") {
    const double p = 1.1, m = 1.0;
    auto num = [](double k) { return cplx{std::exp(-k * k / 4.0), 0.0}; };
    const cplx v = pv_pole_integral(num, p, CutSide::Above, 1e-11);
    auto at_eta = [&](double eta) {
        const cplx z{p * p / m, eta};
        auto f = [&](double k) { return num(k) / (z * m - k * k); };
        return radial_integral(f, 1e-11).value;
    };
    const double eta = 0.01;
    const cplx ref = oracles::eta_extrapolate(at_eta(eta), at_eta(eta / 2), at_eta(eta / 4));
    CHECK(std::abs(v - ref) < 1e-8);
}

TEST_CASE("find_root and derivative helpers") {
    const double r = find_root([](double x) { return x * x - 2.0; }, 0.0, 2.0);
    CHECK(r == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));

    auto fn = [](cplx z) { return std::exp(z) * std::sin(z); };
    const cplx z0{0.3, 0.2};
    const cplx want = std::exp(z0) * (std::sin(z0) + std::cos(z0));
    CHECK(std::abs(central_derivative(fn, z0, cplx{1e-3, 0.0}) - want) < 2e-12);
}

TEST_CASE("NonConvergence on budget exhaustion") {
    // Highly oscillatory integrand with a tiny budget.
    auto f = [](double k) { return cplx{std::sin(300.0 * k), 0.0}; };
    CHECK_THROWS_AS(integrate_interval(f, 0.0, 50.0, 1e-14, 200), NonConvergence);
}

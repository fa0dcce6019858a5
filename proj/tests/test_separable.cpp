#include <cmath>
#include <random>

#include "doctest.h"
#include "gqd/separable_model.hpp"
#include "gqd/tmatrix.hpp"
#include "oracles.hpp"

using namespace gqd;

namespace {

SeparableModel yamaguchi(double beta, double m, double a, double ga) {
    return SeparableModel(2.0, m, a, ga,
                          [beta](double p) { return 1.0 / (p * p + beta * beta); });
}

std::function<double(double)> powerlaw_phi(double alpha, double beta) {
    // (p^2 + beta^2)^(-alpha/2): unit tail coefficient, finite at the origin.
    return [alpha, beta](double p) {
        return std::pow(p * p + beta * beta, -alpha / 2.0);
    };
}

// Closed form of the Yamaguchi loop: int d3k/(2pi)^3 |phi|^2/(z - E_k)
//   = -m / (8 pi beta (beta + gamma)^2),  gamma = sqrt(-z m).
cplx yamaguchi_loop(double beta, double m, cplx z) {
    const cplx gamma = std::sqrt(-z * m);
    return -m / (8.0 * M_PI * beta * (beta + gamma) * (beta + gamma));
}

}  // namespace

TEST_CASE("classify_dynamics") {
    CHECK(classify_dynamics(0.6) == Dynamics::Hamiltonian);
    CHECK(classify_dynamics(0.25) == Dynamics::NonHamiltonian);
    CHECK_THROWS_AS(classify_dynamics(0.5), MarginalExponent);
}

TEST_CASE("model construction validates the declared exponent") {
    CHECK_THROWS_AS(SeparableModel(1.0, 1.0, -1.0, 0.5,
                                   [](double p) { return 1.0 / (p * p + 1.0); }),
                    std::invalid_argument);
    CHECK_NOTHROW(yamaguchi(1.0, 1.0, -1.0, 0.5));
}

TEST_CASE("general_solution at the reference energy") {
    const auto model = yamaguchi(1.0, 1.0, -1.5, 0.37);
    for (double p2 : {0.0, 0.4, 1.3})
        for (double p1 : {0.2, 0.9}) {
            const cplx t = general_solution(model, ComplexEnergy::real_neg(-1.5), p2, p1);
            const cplx want = model.phi(p2) * model.phi(p1) * model.g_a;
            CHECK(std::abs(t - want) < 1e-10 * std::abs(want));
        }
}

TEST_CASE("general_solution against the Yamaguchi closed form") {
    const double beta = 1.0, m = 1.0, a = -1.0, ga = 0.42;
    const auto model = yamaguchi(beta, m, a, ga);
    const cplx z{-2.0, 0.0};
    const cplx got = general_solution(model, ComplexEnergy::real_neg(-2.0), 0.3, 0.8);
    const cplx den = 1.0 / ga + yamaguchi_loop(beta, m, {a, 0.0}) - yamaguchi_loop(beta, m, z);
    const cplx want = model.phi(0.3) * model.phi(0.8) / den;
    CHECK(std::abs(got - want) < 1e-9 * std::abs(want));
}

TEST_CASE("rank-1 factorization identity") {
    const auto model = yamaguchi(1.2, 1.0, -0.7, 0.8);
    const auto z = ComplexEnergy::off_axis({0.9, 1.4});
    const cplx a = general_solution(model, z, 0.3, 0.5) * general_solution(model, z, 1.1, 0.9);
    const cplx b = general_solution(model, z, 0.3, 0.9) * general_solution(model, z, 1.1, 0.5);
    CHECK(std::abs(a - b) < 1e-12 * std::abs(a));
}

TEST_CASE("below-threshold hermiticity") {
    const auto model = yamaguchi(1.0, 1.0, -1.0, 0.5);
    const auto z = ComplexEnergy::real_neg(-0.8);
    const cplx t12 = general_solution(model, z, 0.4, 1.1);
    const cplx t21 = general_solution(model, z, 1.1, 0.4);
    CHECK(std::abs(t12 - std::conj(t21)) < 1e-12 * std::abs(t12));
}

TEST_CASE("asymptotic coefficients: b1 closed form and flat-tail M~") {
    const auto coeffs = asymptotic_coeffs(SeparableModel(
        0.25, 1.0, -1.0, 0.5, powerlaw_phi(0.25, 1.0)));
    CHECK(coeffs.b1 == doctest::Approx(-4.0 * M_PI * std::cos(M_PI / 4.0)).epsilon(1e-12));

    // phi(k) = k^(-1/4) exactly: the subtracted integrand vanishes identically.
    const SeparableModel bare(0.25, 1.0, -1.0, 0.5,
                              [](double p) { return std::pow(p, -0.25); });
    CHECK(std::abs(asymptotic_coeffs(bare).m_tilde_a) < 1e-12);
}

TEST_CASE("GDE residual of the general solution") {
    const auto model = yamaguchi(1.0, 1.0, -1.0, 0.6);
    OffShellT T = [&](double p2, double p1, const ComplexEnergy& z) {
        return general_solution(model, z, p2, p1);
    };
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> re(-2.0, 2.0), im(0.3, 1.5);
    for (int i = 0; i < 20; ++i) {
        const cplx z{re(rng), (i % 2 ? 1.0 : -1.0) * im(rng)};
        const double r = gde_residual(T, model.m, ComplexEnergy::off_axis(z), 0.5, 0.8);
        CHECK(r < 1e-6);
    }
}

TEST_CASE("non-Hamiltonian closed form agrees with the general solution") {
    const SeparableModel model(0.25, 1.0, -1.0, 0.5, powerlaw_phi(0.25, 1.0));
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> re(-3.0, 3.0), im(0.2, 2.0);
    for (int i = 0; i < 50; ++i) {
        const cplx z{re(rng), (i % 2 ? 1.0 : -1.0) * im(rng)};
        const auto ze = ComplexEnergy::off_axis(z);
        const cplx a = nonhamiltonian_t(model, ze, 0.6, 0.9);
        const cplx b = general_solution(model, ze, 0.6, 0.9);
        CHECK(std::abs(a - b) < 1e-9 * std::abs(b));
    }
}

TEST_CASE("non-Hamiltonian solution is real below threshold") {
    const SeparableModel model(0.25, 1.0, -1.0, 0.5, powerlaw_phi(0.25, 1.0));
    const cplx t = nonhamiltonian_t(model, ComplexEnergy::real_neg(-2.5), 0.4, 0.7);
    CHECK(std::abs(t.imag()) < 1e-12 * std::abs(t));
}

TEST_CASE("regime asymptotics: alpha > 1/2 approaches the fixed coupling") {
    const SeparableModel model(0.75, 1.0, -1.0, 0.5, powerlaw_phi(0.75, 1.0));
    const auto coeffs = asymptotic_coeffs(model);
    const double p2 = 0.5, p1 = 0.8;
    const double target = std::abs(coeffs.lambda_coupling * model.phi(p2) * model.phi(p1));
    double prev_ratio = 0.0;
    for (double zmag : {1e8, 1e9}) {
        const cplx t = general_solution(model, ComplexEnergy::real_neg(-zmag), p2, p1);
        prev_ratio = std::abs(t) / target;
        CHECK(std::abs(prev_ratio - 1.0) < 0.01);
    }
}

TEST_CASE("regime asymptotics: alpha < 1/2 decay exponent and two-term fit") {
    // Model with a controlled subleading-to-leading ratio b2/b1 = 1/2 so the
    // asymptotic window [1e7, 1e10] resolves both coefficients cleanly.
    const double alpha = 0.25, m = 1.0, a = -1.0;
    const auto phi = powerlaw_phi(alpha, 1.0);
    const auto pre = asymptotic_coeffs(SeparableModel(alpha, m, a, 1.0, phi));
    const double ga =
        1.0 / (std::pow(std::abs(a), 0.5 - alpha) / pre.b1 - pre.m_tilde_a - 0.5 / pre.b1);
    const SeparableModel model(alpha, m, a, ga, phi);
    const auto coeffs = asymptotic_coeffs(model);
    CHECK(coeffs.b2 / coeffs.b1 == doctest::Approx(0.5).epsilon(1e-9));

    const double p2 = 0.5, p1 = 0.8;
    const double phiphi = model.phi(p2) * model.phi(p1);

    std::vector<double> lx, ly;
    std::vector<std::vector<double>> design;
    std::vector<double> rhs;
    for (int i = 0; i <= 9; ++i) {
        const double zmag = 1e7 * std::pow(10.0, i / 3.0);
        const cplx t = general_solution(model, ComplexEnergy::real_neg(-zmag), p2, p1);
        if (zmag >= 1e8) {
            lx.push_back(std::log(zmag));
            ly.push_back(std::log(std::abs(t)));
        }
        // basis exponents for T/(phi phi): alpha-1/2, 2alpha-1, 3(alpha-1/2)
        design.push_back({std::pow(zmag, -0.25), std::pow(zmag, -0.5),
                          std::pow(zmag, -0.75)});
        rhs.push_back((t / phiphi).real());
    }
    const double slope = oracles::slope(lx, ly);
    CHECK(std::abs(slope - (model.alpha - 0.5)) < 0.02 * 0.5);

    const auto fitted = oracles::lstsq(design, rhs);
    CHECK(std::abs(fitted[0] - coeffs.b1) < 0.01 * std::abs(coeffs.b1));
    CHECK(std::abs(fitted[1] - coeffs.b2) < 0.01 * std::abs(coeffs.b2));
}

TEST_CASE("large-|z| closed-form leading term") {
    // Tune g_a so the subleading coefficient vanishes; the leading power then
    // dominates to 0.1% at |z| = 1e6.
    const double alpha = 0.25, m = 1.0, a = -1.0;
    const auto phi = powerlaw_phi(alpha, 1.0);
    const SeparableModel probe_model(alpha, m, a, 1.0, phi);
    const auto pre = asymptotic_coeffs(probe_model);
    const double ga = 1.0 / (std::pow(std::abs(a), 0.5 - alpha) / pre.b1 - pre.m_tilde_a);
    const SeparableModel model(alpha, m, a, ga, phi);
    const auto coeffs = asymptotic_coeffs(model);
    CHECK(std::abs(coeffs.b2) < 1e-8 * std::abs(coeffs.b1));

    const double zmag = 1e6;
    const cplx t = nonhamiltonian_t(model, ComplexEnergy::real_neg(-zmag), 0.5, 0.8);
    const double lead = std::abs(coeffs.b1) * std::pow(zmag, model.alpha - 0.5) *
                        model.phi(0.5) * model.phi(0.8);
    CHECK(std::abs(std::abs(t) - lead) < 1e-3 * lead);
}

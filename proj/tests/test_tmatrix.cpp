#include <cmath>
#include <random>

#include "doctest.h"
#include "gqd/effective_order.hpp"
#include "gqd/presets.hpp"
#include "gqd/tmatrix.hpp"
#include "oracles.hpp"

using namespace gqd;

namespace {

EftParams nlo_params() { return presets::nlo_unit().params; }

}  // namespace

TEST_CASE("m0 branch values") {
    CHECK(std::abs(m0(ComplexEnergy::real_neg(-1.0), 1.0) - cplx{1.0 / (4.0 * M_PI), 0.0}) <
          1e-15);
    CHECK(std::abs(m0(ComplexEnergy::above(1.0), 1.0) - cplx{0.0, -1.0 / (4.0 * M_PI)}) <
          1e-15);
    CHECK(std::abs(m0(ComplexEnergy::real_neg(0.0), 1.0)) == 0.0);
}

TEST_CASE("big_m vanishes for the trivial form factor") {
    const EftParams params(1.0, 4.0 * M_PI, FormFactor::unit(4.0), {});
    for (double x : {-2.0, -0.1}) CHECK(std::abs(big_m(params, ComplexEnergy::real_neg(x))) == 0.0);
    CHECK(std::abs(big_m(params, ComplexEnergy::above(1.2))) == 0.0);
}

TEST_CASE("big_m against a refined fixed-grid oracle") {
    const auto params = nlo_params();
    const auto z = ComplexEnergy::real_neg(-0.7);
    const cplx got = big_m(params, z, 1e-12);

    auto f = [&](double k) -> cplx {
        return z.value * params.m * params.m * params.form.f_n(k, 1) /
               ((z.value * params.m - k * k) * k * k);
    };
    const cplx coarse = oracles::fixed_grid_radial(f, 60.0, 6000);
    const cplx fine = oracles::fixed_grid_radial(f, 60.0, 60000);
    CHECK(std::abs(coarse - fine) < 1e-9);
    CHECK(std::abs(got - fine) < 1e-8);
}

TEST_CASE("m_n closed forms") {
    // n = 1, c2 = 0, J1 = 1, z = -1, m = 1 -> +1.
    const EftParams pa(1.0, 4.0 * M_PI, FormFactor({cplx{1.0, 0.0}, cplx{0.0, 0.0}}, 4.0),
                       {1.0});
    CHECK(std::abs(m_n(pa, ComplexEnergy::real_neg(-1.0), 1) - cplx{1.0, 0.0}) < 1e-15);

    // n = 1, real c2, J1 = 0 -> -c2/(2pi) at z = -1, m = 1.
    const double c2 = 0.03;
    const EftParams pb(1.0, 4.0 * M_PI, FormFactor({cplx{1.0, 0.0}, cplx{c2, 0.0}}, 4.0),
                       {0.0});
    CHECK(std::abs(m_n(pb, ComplexEnergy::real_neg(-1.0), 1) -
                   cplx{-c2 / (2.0 * M_PI), 0.0}) < 1e-15);

    CHECK_THROWS_AS(m_n(pb, ComplexEnergy::real_neg(-1.0), 2), IndexOutOfOrder);
}

TEST_CASE("term decomposition: remainder scales as (zm)^(N+1)") {
    const auto params = nlo_params();
    const double L2m = params.form.lambda() * params.form.lambda() / params.m;
    std::vector<double> lx, ly;
    for (int i = 0; i <= 8; ++i) {
        const double zmag = 1e-4 * std::pow(100.0, i / 8.0) * L2m;
        const auto z = ComplexEnergy::real_neg(-zmag);
        const cplx rem = big_m(params, z, 1e-13) - m_n(params, z, 1);
        lx.push_back(std::log(zmag));
        ly.push_back(std::log(std::abs(rem)));
    }
    const double slope = oracles::slope(lx, ly);
    CHECK(slope > 1.8);
    CHECK(slope < 2.6);

    // The dedicated remainder evaluator agrees without cancellation.
    const auto z = ComplexEnergy::real_neg(-0.05 * L2m);
    const cplx a = big_m(params, z, 1e-13) - m_n(params, z, 1);
    const cplx b = big_m_remainder(params, z, 1, 1e-13);
    CHECK(std::abs(a - b) < 1e-10 * std::max(1.0, std::abs(b)));
}

TEST_CASE("lo_t: unitary limit, bound state, threshold amplitude") {
    // C0^{-1} = 0 limit approached with a huge coupling.
    const cplx t = lo_t(ComplexEnergy::real_neg(-1.0), 1.0, 1e14);
    CHECK(std::abs(t - cplx{-4.0 * M_PI, 0.0}) < 1e-10);

    // Bound-state pole by root finding matches -1/(m a^2).
    const double m = 1.0, a = 1.0, C0 = 4.0 * M_PI * a / m;
    auto den = [&](double x) {
        return (1.0 / C0 - m0(ComplexEnergy::real_neg(x), m)).real();
    };
    const double zb = find_root(den, -4.0, -0.1, 1e-14);
    CHECK(std::abs(zb - lo_bound_state(m, C0)) < 1e-12);
    CHECK_THROWS_AS(lo_t(ComplexEnergy::real_neg(lo_bound_state(m, C0)), m, C0), PoleHit);

    // A(p -> 0) = -4pi for a = 1, m = 1.
    const cplx a0 = -lo_t(ComplexEnergy::above(1e-24), m, C0);
    CHECK(std::abs(a0 - cplx{-4.0 * M_PI, 0.0}) < 1e-9);
}

TEST_CASE("t_full reduces to lo_t for the trivial form factor") {
    const EftParams params(1.0, 4.0 * M_PI, FormFactor::unit(4.0), {});
    for (double x : {-3.0, -0.4}) {
        const auto z = ComplexEnergy::real_neg(x);
        CHECK(std::abs(t_full(params, z) - lo_t(z, 1.0, params.C0)) < 1e-14);
    }
    const auto zc = ComplexEnergy::off_axis({0.7, 0.9});
    CHECK(std::abs(t_full(params, zc) - lo_t(zc, 1.0, params.C0)) < 1e-14);
}

TEST_CASE("t_offshell momentum prefactor") {
    const auto params = nlo_params();
    const auto z = ComplexEnergy::real_neg(-1.1);
    CHECK(std::abs(t_offshell(params, z, 0.0, 0.0) - t_full(params, z)) < 1e-14);

    // rank-1 identity
    const auto ze = ComplexEnergy::off_axis({0.4, 0.8});
    const cplx lhs = t_offshell(params, ze, 0.3, 0.5) * t_offshell(params, ze, 1.1, 0.9);
    const cplx rhs = t_offshell(params, ze, 0.3, 0.9) * t_offshell(params, ze, 1.1, 0.5);
    CHECK(std::abs(lhs - rhs) < 1e-12 * std::abs(lhs));
}

TEST_CASE("below-threshold hermiticity of t_offshell") {
    const auto params = nlo_params();
    const auto z = ComplexEnergy::real_neg(-0.9);
    const cplx t12 = t_offshell(params, z, 0.4, 1.2);
    const cplx t21 = t_offshell(params, z, 1.2, 0.4);
    CHECK(std::abs(t12 - std::conj(t21)) < 1e-12 * std::abs(t12));
}

TEST_CASE("optical theorem on shell") {
    const auto params = nlo_params();
    const double m = params.m;
    for (double p : {0.05, 0.3, 0.7, 0.99}) {
        const cplx A = -t_offshell(params, ComplexEnergy::above(p * p / m), p, p);
        const double defect = std::abs(A.imag() - m * p / (4.0 * M_PI) * std::norm(A));
        CHECK(defect < 1e-10 * std::norm(A));
    }
}

TEST_CASE("gde_residual: exact solutions pass, corrupted ones are caught") {
    const auto params = nlo_params();
    const double m = params.m;

    OffShellT lo = [&](double, double, const ComplexEnergy& z) {
        return lo_t(z, m, params.C0);
    };
    CHECK(gde_residual(lo, m, ComplexEnergy::off_axis({-1.0, 1.0}), 0.0, 0.0) < 1e-8);

    const auto full = make_offshell_evaluator(params, 1e-12);
    CHECK(gde_residual(full, m, ComplexEnergy::off_axis({0.5, 1.2}), 0.3, 0.6) < 1e-6);

    OffShellT corrupted = [&](double p2, double p1, const ComplexEnergy& z) {
        return 1.01 * full(p2, p1, z);
    };
    CHECK(gde_residual(corrupted, m, ComplexEnergy::off_axis({0.5, 1.2}), 0.3, 0.6) > 1e-3);
}

TEST_CASE("boundary-condition consistency at the top of the window") {
    const auto params = nlo_params();
    const double window_top = params.form.lambda() * params.form.lambda() / params.m;
    for (double frac : {0.5, 1.0}) {
        const auto z = ComplexEnergy::real_neg(-frac * window_top);
        const cplx t = t_full(params, z, 1e-12);
        const cplx M = m0(z, params.m) + big_m(params, z, 1e-12);
        const cplx lhs = t + 1.0 / M + 1.0 / (params.C0 * M * M);
        const cplx bound = 1.0 / (params.C0 * params.C0 * M * M * M);
        const double ratio = std::abs(lhs) / std::abs(bound);
        CHECK(ratio > 0.5);
        CHECK(ratio < 2.0);
    }
}

#include "gqd/tmatrix.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <tuple>

namespace gqd {

namespace {

double pole_guard(double den_abs, double c0) { return den_abs * std::abs(c0); }

double auto_k_split(const EftParams& params, const ComplexEnergy& z) {
    const double zk = std::sqrt(std::abs(z.value) * params.m);
    return std::max({10.0, 6.0 * params.form.scale_hint(), 4.0 * zk});
}

}  // namespace

cplx m0(const ComplexEnergy& z, double m) { return m / (4.0 * M_PI) * sqrt_neg(z, m); }

cplx big_m(const EftParams& params, const ComplexEnergy& z, double tol) {
    return big_m_remainder(params, z, 0, tol);
}

cplx m_n(const EftParams& params, const ComplexEnergy& z, int n) {
    if (n < 1 || n > params.order())
        throw IndexOutOfOrder("m_n: index beyond the kept order");
    const cplx zm = z.value * params.m;
    const cplx zmn = std::pow(zm, n);
    return -zmn * params.calj(n) +
           params.m / (4.0 * M_PI) * sqrt_neg(z, params.m) * zmn * params.form.sigma(n);
}

cplx big_m_remainder(const EftParams& params, const ComplexEnergy& z, int trunc_order,
                     double tol) {
    const int n1 = trunc_order + 1;
    const double m = params.m;
    const cplx zm = z.value * m;
    const cplx pref = std::pow(zm, n1) * m;
    if (zm == cplx{0.0, 0.0}) return {0.0, 0.0};

    auto num = [&](double k) -> cplx {
        return pref * params.form.f_n(k, n1) / std::pow(k * k, n1);
    };

    if (z.on_cut()) {
        const double p = std::sqrt(z.value.real() * m);
        PvOptions opt;
        opt.tol = tol;
        return pv_pole_integral(num, p, z.side, opt);
    }
    auto f = [&](double k) -> cplx { return num(k) / (zm - k * k); };
    RadialOptions opt;
    opt.tol = tol;
    opt.k_split = auto_k_split(params, z);
    return radial_integral(f, opt).value;
}

cplx lo_t(const ComplexEnergy& z, double m, double C0) {
    const cplx den = 1.0 / C0 - m0(z, m);
    if (pole_guard(std::abs(den), C0) < 1e-12)
        throw PoleHit("lo_t: bound-state pole");
    return 1.0 / den;
}

double lo_bound_state(double m, double C0) {
    if (!(C0 > 0.0)) throw GqdError("lo_bound_state: no bound state for C0 <= 0");
    const double a = m * C0 / (4.0 * M_PI);
    return -1.0 / (m * a * a);
}

cplx t_full(const EftParams& params, const ComplexEnergy& z, double tol) {
    const cplx den = 1.0 / params.C0 - m0(z, params.m) - big_m(params, z, tol);
    if (pole_guard(std::abs(den), params.C0) < 1e-12)
        throw PoleHit("t_full: pole");
    return 1.0 / den;
}

cplx t_offshell(const EftParams& params, const ComplexEnergy& z, double p2, double p1,
                double tol) {
    return params.form.psi_conj(p2) * params.form.psi(p1) * t_full(params, z, tol);
}

OffShellT make_offshell_evaluator(const EftParams& params, double tol) {
    auto cache = std::make_shared<std::map<std::tuple<double, double, int>, cplx>>();
    return [params, tol, cache](double p2, double p1, const ComplexEnergy& z) -> cplx {
        const auto key = std::make_tuple(z.value.real(), z.value.imag(),
                                         static_cast<int>(z.side));
        auto it = cache->find(key);
        if (it == cache->end()) it = cache->emplace(key, t_full(params, z, tol)).first;
        return params.form.psi_conj(p2) * params.form.psi(p1) * it->second;
    };
}

double gde_residual(const OffShellT& T, double m, const ComplexEnergy& z, double p2,
                    double p1, const GdeResidualOptions& opt) {
    if (z.on_cut() || z.side != CutSide::OffAxis)
        throw GqdError("gde_residual: z must lie off the cut");
    const double d = z.dist_to_cut();
    const double h = std::min(opt.h_rel * std::max(1.0, std::abs(z.value)), 0.25 * d);

    auto tz = [&](cplx zz) { return T(p2, p1, ComplexEnergy::off_axis(zz)); };
    const cplx dT = central_derivative(tz, z.value, cplx{h, 0.0});

    auto f = [&](double k) -> cplx {
        const cplx den = z.value - k * k / m;
        return T(p2, k, z) * T(k, p1, z) / (den * den);
    };
    RadialOptions ropt;
    ropt.tol = opt.quad_tol;
    ropt.k_split = opt.k_split > 0.0
                       ? opt.k_split
                       : std::max(10.0, 4.0 * std::sqrt(std::abs(z.value) * m));
    const cplx rhs = radial_integral(f, ropt).value;

    return std::abs(dT + rhs) / std::max(1.0, std::abs(dT));
}

}  // namespace gqd

#include "gqd/separable_model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gqd {

Dynamics classify_dynamics(double alpha) {
    if (alpha == 0.5) throw MarginalExponent("classify_dynamics: alpha = 1/2 is excluded");
    return alpha > 0.5 ? Dynamics::Hamiltonian : Dynamics::NonHamiltonian;
}

SeparableModel::SeparableModel(double alpha_, double m_, double a_ref_, double g_a_,
                               std::function<double(double)> phi_, double k_fit_hi_)
    : alpha(alpha_), m(m_), a_ref(a_ref_), g_a(g_a_), phi(std::move(phi_)),
      k_fit_hi(k_fit_hi_) {
    if (alpha == 0.5) throw MarginalExponent("SeparableModel: alpha = 1/2 is excluded");
    if (!(m > 0.0)) throw std::invalid_argument("SeparableModel: m must be positive");
    if (a_ref > 0.0) throw std::invalid_argument("SeparableModel: a_ref must be <= 0");
    if (g_a == 0.0) throw std::invalid_argument("SeparableModel: g_a must be nonzero");

    // Verify the declared fall-off exponent over the top decade of the grid.
    std::vector<double> lx, ly;
    for (int i = 0; i <= 30; ++i) {
        const double k = k_fit_hi / 10.0 * std::pow(10.0, i / 30.0);
        lx.push_back(std::log(k));
        ly.push_back(std::log(std::abs(phi(k))));
    }
    const double slope = linear_fit(lx, ly).second;
    if (std::abs(-slope - alpha) > 0.02 * std::max(std::abs(alpha), 1.0))
        throw std::invalid_argument("SeparableModel: tail exponent does not match alpha");
}

namespace {

double den_scale(const SeparableModel& model) {
    return std::max(1.0, std::abs(1.0 / model.g_a));
}

double k_split_for(const SeparableModel& model, const ComplexEnergy& z) {
    return std::max({10.0, 4.0 * std::sqrt(std::abs(z.value) * model.m),
                     4.0 * std::sqrt(std::abs(model.a_ref) * model.m)});
}

}  // namespace

cplx general_solution(const SeparableModel& model, const ComplexEnergy& z, double p2,
                      double p1, double tol) {
    const double m = model.m, a = model.a_ref;
    cplx integral;
    if (z.on_cut()) {
        const double x = z.value.real();
        const double p = std::sqrt(x * m);
        // (z-a)/((z-E)(a-E)) = m (z-a) / ((zm-k^2)(a-E)); pole in the first factor.
        auto num = [&](double k) -> cplx {
            const double phik = model.phi(k);
            return m * (x - a) * phik * phik / (a - k * k / m);
        };
        PvOptions opt;
        opt.tol = tol;
        integral = pv_pole_integral(num, p, z.side, opt);
    } else {
        auto f = [&](double k) -> cplx {
            const double phik = model.phi(k);
            const double ek = k * k / m;
            return (z.value - a) * phik * phik / ((z.value - ek) * (a - ek));
        };
        RadialOptions opt;
        opt.tol = tol;
        opt.k_split = k_split_for(model, z);
        integral = radial_integral(f, opt).value;
    }
    const cplx den = 1.0 / model.g_a + integral;
    if (std::abs(den) < 1e-12 * den_scale(model))
        throw PoleHit("general_solution: denominator vanishes");
    return model.phi(p2) * model.phi(p1) / den;
}

cplx m_tilde(const SeparableModel& model, const ComplexEnergy& z, double tol) {
    const double m = model.m, alpha = model.alpha;
    auto delta = [&](double k) {
        const double phik = model.phi(k);
        return phik * phik - std::pow(k, -2.0 * alpha);
    };
    if (z.on_cut()) {
        const double p = std::sqrt(z.value.real() * m);
        auto num = [&](double k) -> cplx { return m * delta(k); };
        PvOptions opt;
        opt.tol = tol;
        return pv_pole_integral(num, p, z.side, opt);
    }
    auto f = [&](double k) -> cplx { return delta(k) / (z.value - k * k / m); };
    RadialOptions opt;
    opt.tol = tol;
    opt.k_split = k_split_for(model, z);
    return radial_integral(f, opt).value;
}

AsymptoticCoeffs asymptotic_coeffs(const SeparableModel& model, double tol) {
    AsymptoticCoeffs out;
    const double m = model.m, alpha = model.alpha, a = model.a_ref;
    out.b1 = -4.0 * M_PI * std::cos(alpha * M_PI) * std::pow(m, alpha - 1.5);

    if (alpha < 1.5) {
        out.m_tilde_a = m_tilde(model, ComplexEnergy::real_neg(a), tol).real();
    } else {
        out.m_tilde_a = std::numeric_limits<double>::quiet_NaN();
    }

    if (alpha > 0.5) {
        auto f = [&](double k) -> cplx {
            const double phik = model.phi(k);
            return phik * phik / (a - k * k / m);
        };
        RadialOptions opt;
        opt.tol = tol;
        opt.k_split = k_split_for(model, ComplexEnergy::real_neg(a));
        const double ia = radial_integral(f, opt).value.real();
        out.lambda_coupling = 1.0 / (1.0 / model.g_a + ia);
        out.b2 = std::numeric_limits<double>::quiet_NaN();
    } else {
        out.lambda_coupling = 0.0;
        out.b2 = out.b1 * std::pow(std::abs(a), 0.5 - alpha) -
                 out.b1 * out.b1 * (out.m_tilde_a + 1.0 / model.g_a);
    }
    return out;
}

cplx nonhamiltonian_t(const SeparableModel& model, const ComplexEnergy& z, double p2,
                      double p1, double tol) {
    if (!(model.alpha < 0.5))
        throw GqdError("nonhamiltonian_t: requires alpha < 1/2");
    const auto coeffs = asymptotic_coeffs(model, tol);
    const double b1 = coeffs.b1, b2 = coeffs.b2;
    const cplx den = -b2 + b1 * pow_minus_z(z, 0.5 - model.alpha) -
                     m_tilde(model, z, tol) * b1 * b1;
    if (std::abs(den) < 1e-12 * std::max(1.0, std::abs(b2)))
        throw PoleHit("nonhamiltonian_t: denominator vanishes");
    return b1 * b1 * model.phi(p2) * model.phi(p1) / den;
}

}  // namespace gqd

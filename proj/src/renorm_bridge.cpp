#include "gqd/renorm_bridge.hpp"

#include <cmath>
#include <stdexcept>

namespace gqd {

CutoffScheme::CutoffScheme(Regulator r, double lambda, double cr)
    : regulator(r), lambda_cut(lambda), c_r(cr) {
    if (!(lambda_cut > 0.0))
        throw std::invalid_argument("CutoffScheme: lambda_cut must be positive");
    if (c_r == 0.0) throw std::invalid_argument("CutoffScheme: c_r must be nonzero");
}

double CutoffScheme::weight(double k) const {
    if (regulator == Regulator::Sharp) return k <= lambda_cut ? 1.0 : 0.0;
    const double x = k / lambda_cut;
    return std::exp(-2.0 * x * x);
}

double c0_of_lambda(const CutoffScheme& s, double m) {
    double integral;  // int d3k/(2pi)^3 |f|^2 m/k^2
    if (s.regulator == Regulator::Sharp) {
        integral = m * s.lambda_cut / (2.0 * M_PI * M_PI);
    } else {
        // int_0^inf exp(-2k^2/L^2) dk = L sqrt(pi/2)/2
        integral = m / (2.0 * M_PI * M_PI) * s.lambda_cut * std::sqrt(M_PI / 2.0) / 2.0;
    }
    const double inv = 1.0 / s.c_r - integral;
    if (inv == 0.0) throw PoleHit("c0_of_lambda: running coupling diverges");
    return 1.0 / inv;
}

cplx t_cutoff(const CutoffScheme& s, double m, const ComplexEnergy& z, double p2,
              double p1, double tol) {
    // Denominator rewritten through C_R: C_R^{-1} - z int |f|^2/((z-E_k) E_k),
    // which removes the large linear pieces analytically.
    cplx integral;
    const cplx zm = z.value * m;
    const double upper = (s.regulator == Regulator::Sharp) ? s.lambda_cut : -1.0;
    if (z.on_cut()) {
        const double p = std::sqrt(z.value.real() * m);
        auto num = [&](double k) -> cplx {
            return zm * m * s.weight(k) / (k * k);
        };
        PvOptions opt;
        opt.tol = tol;
        opt.upper_limit = upper;
        if (s.regulator == Regulator::Gaussian) opt.breakpoints = {s.lambda_cut};
        integral = pv_pole_integral(num, p, z.side, opt);
    } else {
        auto f = [&](double k) -> cplx {
            const double ek = k * k / m;
            return z.value * s.weight(k) / ((z.value - ek) * ek);
        };
        RadialOptions opt;
        opt.tol = tol;
        opt.k_split = std::max({10.0, 2.0 * s.lambda_cut,
                                4.0 * std::sqrt(std::abs(z.value) * m)});
        opt.upper_limit = upper;
        integral = radial_integral(f, opt).value;
    }
    const cplx den = 1.0 / s.c_r - integral;
    if (std::abs(den) * std::abs(s.c_r) < 1e-12) throw PoleHit("t_cutoff: pole");
    const auto fw = [&](double p) { return std::sqrt(s.weight(p)); };
    return fw(p2) * fw(p1) / den;
}

cplx renormalized_lo(double m, double c_r, const ComplexEnergy& z) {
    const cplx den = 1.0 / c_r - std::pow(m, 1.5) / (4.0 * M_PI) * pow_minus_z(z, 0.5);
    if (std::abs(den) * std::abs(c_r) < 1e-12) throw PoleHit("renormalized_lo: pole");
    return 1.0 / den;
}

cplx ls_residual(const OffShellT& T, const std::function<cplx(double, double)>& V,
                 const ComplexEnergy& z, double m, double p2, double p1, double k_max,
                 double tol) {
    cplx loop;
    auto f = [&](double k) -> cplx {
        return V(p2, k) * T(k, p1, z) / (z.value - k * k / m);
    };
    if (z.on_cut()) {
        const double p = std::sqrt(z.value.real() * m);
        auto num = [&](double k) -> cplx { return m * V(p2, k) * T(k, p1, z); };
        PvOptions opt;
        opt.tol = tol;
        opt.upper_limit = k_max;
        loop = pv_pole_integral(num, p, z.side, opt);
    } else {
        RadialOptions opt;
        opt.tol = tol;
        opt.k_split = std::min(10.0, k_max);
        opt.upper_limit = k_max;
        loop = radial_integral(f, opt).value;
    }
    return T(p2, p1, z) - V(p2, p1) - loop;
}

}  // namespace gqd

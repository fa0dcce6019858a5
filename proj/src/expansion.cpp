#include "gqd/expansion.hpp"

#include <cmath>

namespace gqd {

double pcotdelta(const EreParams& ere, double p) {
    double acc = -1.0 / ere.a;
    const double p2 = p * p;
    double pw = p2;
    for (double r : ere.shapes) {
        acc += 0.5 * r * pw;
        pw *= p2;
    }
    return acc;
}

cplx amplitude_from_ere(const EreParams& ere, double p, double m) {
    return (4.0 * M_PI / m) / cplx{pcotdelta(ere, p), -p};
}

CouplingSet couplings_from_ere(const EreParams& ere, double m, int n_orders) {
    const int avail = 1 + std::min<int>(2, static_cast<int>(ere.shapes.size()));
    if (n_orders < 0) n_orders = avail;
    if (n_orders > 3)
        throw InsufficientOrder("couplings_from_ere: closed forms known through C_4");
    if (n_orders > avail)
        throw InsufficientOrder("couplings_from_ere: not enough shape parameters");
    const double a = ere.a;
    CouplingSet out;
    out.m = m;
    out.mu = 0.0;
    out.C.push_back(4.0 * M_PI * a / m);
    if (n_orders > 1) out.C.push_back(2.0 * M_PI / m * a * a * ere.shape(0));
    if (n_orders > 2)
        out.C.push_back(4.0 * M_PI * a * a * a / m *
                        (0.25 * ere.shape(0) * ere.shape(0) + ere.shape(1) / (2.0 * a)));
    return out;
}

CouplingSet c2n_from_formfactor(const EftParams& params, int n_max) {
    if (n_max < 0) n_max = params.order();
    std::vector<double> sigma;
    for (int n = 0; n <= 2 * params.order(); ++n) sigma.push_back(params.form.sigma(n));
    CouplingSet out;
    out.m = params.m;
    out.mu = 0.0;
    out.C = c2n_recurrence_core(params.C0, sigma, params.calJ,
                                static_cast<std::size_t>(n_max));
    return out;
}

cplx ksw_amplitude(const CouplingSet& c, double p) {
    const double p2 = p * p;
    double s = 0.0;
    for (std::size_t n = c.C.size(); n-- > 0;) s = s * p2 + c.C[n];
    const cplx den = 1.0 + c.m / (4.0 * M_PI) * cplx{c.mu, p} * s;
    if (std::abs(den) < 1e-12) throw PoleHit("ksw_amplitude: denominator vanishes");
    return -s / den;
}

CouplingSet shift_couplings(const CouplingSet& c, double mu_new) {
    const double kappa_dmu = c.m / (4.0 * M_PI) * (mu_new - c.mu);
    CouplingSet out;
    out.m = c.m;
    out.mu = mu_new;
    out.C = shift_couplings_core(c.C, kappa_dmu);
    return out;
}

double rg_residual(const CouplingSet& c, int n, double mu) {
    if (!(mu > 0.0)) throw GqdError("rg_residual: mu must be positive");
    if (n < 0 || n >= static_cast<int>(c.C.size()))
        throw IndexOutOfOrder("rg_residual: index beyond the stored couplings");

    auto c_at = [&](double m) { return shift_couplings(c, m).C[static_cast<std::size_t>(n)]; };
    const double h = 1e-5 * mu;
    const double d1 = (c_at(mu + h) - c_at(mu - h)) / (2.0 * h);
    const double d2 = (c_at(mu + 0.5 * h) - c_at(mu - 0.5 * h)) / h;
    const double deriv = (4.0 * d2 - d1) / 3.0;

    const auto cm = shift_couplings(c, mu).C;
    double rhs = 0.0;
    for (int i = 0; i <= n; ++i) rhs += cm[static_cast<std::size_t>(i)] *
                                        cm[static_cast<std::size_t>(n - i)];
    rhs *= c.m * mu / (4.0 * M_PI);
    return std::abs(mu * deriv - rhs) / std::max(std::abs(rhs), 1e-300);
}

double extract_pcotdelta(cplx amplitude, double p, double m) {
    if (!(p > 0.0)) throw GqdError("extract_pcotdelta: p must be positive");
    if (amplitude == cplx{0.0, 0.0}) throw ZeroAmplitude("extract_pcotdelta: A = 0");
    return 4.0 * M_PI / m * (1.0 / amplitude).real();
}

double onshell_unitarity_defect(cplx amplitude, double p, double m) {
    if (amplitude == cplx{0.0, 0.0}) throw ZeroAmplitude("onshell_unitarity_defect: A = 0");
    return std::abs((1.0 / amplitude).imag() + m / (4.0 * M_PI) * p) /
           (m / (4.0 * M_PI) * p);
}

}  // namespace gqd

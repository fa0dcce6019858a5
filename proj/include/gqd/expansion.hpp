#pragma once

#include <vector>

#include "gqd/eft_params.hpp"
#include "gqd/errors.hpp"
#include "gqd/quadrature.hpp"

namespace gqd {

/// Effective range expansion parameters: p cot(delta) = -1/a + (1/2) sum r_n p^{2(n+1)}.
struct EreParams {
    double a;
    std::vector<double> shapes;  // r_0, r_1, ...

    EreParams(double a_, std::vector<double> shapes_ = {}) : a(a_), shapes(std::move(shapes_)) {
        if (a == 0.0) throw std::invalid_argument("EreParams: a must be nonzero");
    }
    double shape(int n) const {
        return (n >= 0 && n < static_cast<int>(shapes.size())) ? shapes[n] : 0.0;
    }
};

/// Momentum-expansion couplings C_0, C_2, ... at subtraction point mu.
struct CouplingSet {
    std::vector<double> C;
    double mu = 0.0;
    double m = 1.0;
};

double pcotdelta(const EreParams& ere, double p);

/// A(p) = (4pi/m) / (p cot delta - i p).
cplx amplitude_from_ere(const EreParams& ere, double p, double m);

/// C_0 = 4pi a/m, C_2 = (2pi/m) a^2 r_0, C_4 = (4pi a^3/m)(r_0^2/4 + r_1/(2a)).
CouplingSet couplings_from_ere(const EreParams& ere, double m, int n_orders = -1);

/// Recurrence C_{2n} = C_0 (sigma_n - sum_{j=1}^{n} C_{2(n-j)} J_j), evaluated
/// through order n_max (default: the form-factor order).
CouplingSet c2n_from_formfactor(const EftParams& params, int n_max = -1);

/// Resummed amplitude -S / (1 + (m/4pi)(ip + mu) S), S = sum C_{2n}(mu) p^{2n}.
cplx ksw_amplitude(const CouplingSet& c, double p);

/// Coupling map to a new subtraction point (exact rational map, exact inverse).
CouplingSet shift_couplings(const CouplingSet& c, double mu_new);

/// Defect of mu dC_{2n}/dmu = (m mu/4pi) sum_m C_{2m}(mu) C_{2(n-m)}(mu),
/// relative to the right-hand side; derivative by Richardson central difference.
double rg_residual(const CouplingSet& c, int n, double mu);

/// p cot delta = (4pi/m) Re(1/A).  The unitarity part Im(1/A) = -(m/4pi) p is
/// available as a cross-check via onshell_unitarity_defect.
double extract_pcotdelta(cplx amplitude, double p, double m);
double onshell_unitarity_defect(cplx amplitude, double p, double m);

// Field-generic cores, usable with exact rational scalars in tests.

/// kappa_dmu = (m/4pi) (mu_new - mu_old).
template <class F>
std::vector<F> shift_couplings_core(const std::vector<F>& C, const F& kappa_dmu) {
    const F one = F(1);
    const F den = one - kappa_dmu * C.at(0);
    if (den == F(0)) throw PoleHit("shift_couplings: 1 - (m/4pi) dmu C0 vanishes");
    std::vector<F> out(C.size());
    out[0] = C[0] / den;
    for (std::size_t n = 1; n < C.size(); ++n) {
        F acc = C[n];
        for (std::size_t i = 0; i < n; ++i) acc += kappa_dmu * out[i] * C[n - i];
        out[n] = acc / den;
    }
    return out;
}

/// C_{2n} = C0 (sigma_n - sum_j C_{2(n-j)} J_j); sigma and J indexed from 0 and 1.
template <class F>
std::vector<F> c2n_recurrence_core(const F& C0, const std::vector<F>& sigma,
                                   const std::vector<F>& J, std::size_t n_max) {
    std::vector<F> C(n_max + 1, F(0));
    C[0] = C0;
    for (std::size_t n = 1; n <= n_max; ++n) {
        F acc = n < sigma.size() ? sigma[n] : F(0);
        for (std::size_t j = 1; j <= n && j <= J.size(); ++j) acc -= C[n - j] * J[j - 1];
        C[n] = C0 * acc;
    }
    return C;
}

/// Truncated product of power series.
template <class F>
std::vector<F> series_mul(const std::vector<F>& a, const std::vector<F>& b,
                          std::size_t n_max) {
    std::vector<F> out(n_max + 1, F(0));
    for (std::size_t i = 0; i <= n_max && i < a.size(); ++i)
        for (std::size_t j = 0; i + j <= n_max && j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

/// Truncated reciprocal of a power series with invertible constant term.
template <class F>
std::vector<F> series_inv(const std::vector<F>& a, std::size_t n_max) {
    if (a.empty() || a[0] == F(0)) throw GqdError("series_inv: zero constant term");
    std::vector<F> out(n_max + 1, F(0));
    out[0] = F(1) / a[0];
    for (std::size_t n = 1; n <= n_max; ++n) {
        F acc = F(0);
        for (std::size_t i = 1; i <= n && i < a.size(); ++i) acc += a[i] * out[n - i];
        out[n] = -acc / a[0];
    }
    return out;
}

}  // namespace gqd

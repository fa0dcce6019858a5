#pragma once

#include <functional>

#include "gqd/eft_params.hpp"
#include "gqd/quadrature.hpp"

namespace gqd {

/// Off-shell T-matrix evaluator: (p2, p1, z) -> complex.
using OffShellT = std::function<cplx(double, double, const ComplexEnergy&)>;

/// M_0(z) = (m/4pi) sqrt(-z m).
cplx m0(const ComplexEnergy& z, double m);

/// M(z) = z m^2 int d3k/(2pi)^3 F_1(k)/((zm - k^2) k^2) by quadrature.
cplx big_m(const EftParams& params, const ComplexEnergy& z, double tol = 1e-11);

/// Term n of the expansion of M(z):
///   M_n(z) = -(zm)^n J_n + (m/4pi) sqrt(-zm) (zm)^n sigma_n.
cplx m_n(const EftParams& params, const ComplexEnergy& z, int n);

/// M(z) - sum_{n<=N} M_n(z), computed from a single subtracted integrand
/// (no cancellation between quadrature and closed-form pieces).
cplx big_m_remainder(const EftParams& params, const ComplexEnergy& z, int trunc_order,
                     double tol = 1e-11);

/// Leading-order T-matrix, 1/(C0^{-1} - (m/4pi) sqrt(-zm)).
cplx lo_t(const ComplexEnergy& z, double m, double C0);

/// Bound-state pole of lo_t for C0 > 0: z_B = -1/(m a^2), a = m C0/(4pi).
double lo_bound_state(double m, double C0);

/// Full closed form, 1/(C0^{-1} - M_0(z) - M(z)).
cplx t_full(const EftParams& params, const ComplexEnergy& z, double tol = 1e-11);

/// psi*(p2) psi(p1) t_full(z).
cplx t_offshell(const EftParams& params, const ComplexEnergy& z, double p2, double p1,
                double tol = 1e-11);

/// Off-shell evaluator for t_offshell with a per-z cache of t_full.
OffShellT make_offshell_evaluator(const EftParams& params, double tol = 1e-11);

struct GdeResidualOptions {
    double h_rel = 1e-3;
    double quad_tol = 1e-9;
    double k_split = 0.0;  // auto when <= 0
};

/// Relative defect of the equation of motion
///   dT/dz = - int d3k/(2pi)^3 T(p2,k;z) T(k,p1;z) / (z - E_k)^2
/// at a point z off the cut, with a Richardson-extrapolated derivative.
double gde_residual(const OffShellT& T, double m, const ComplexEnergy& z, double p2,
                    double p1, const GdeResidualOptions& opt = {});

}  // namespace gqd

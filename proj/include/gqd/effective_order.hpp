#pragma once

#include "gqd/tmatrix.hpp"

namespace gqd {

/// Order-N effective interaction.  The tail is either concrete (stored in the
/// form factor) or left unspecified within the class fixed by the J_n.
struct EffectiveOperator {
    EftParams params;

    /// validate: when a concrete tail is present, require
    /// phi_constraint_residual(n) < 1e-6 for all 1 <= n <= N.
    explicit EffectiveOperator(EftParams params_, bool validate = true);

    int order() const { return params.order(); }
    bool tail_concrete() const { return params.form.has_tail(); }
};

/// Truncated kernel: calM_N(z) = M_0(z) + sum_{n=1}^{N} M_n(z) (quadrature-free).
cplx calM_n(const EffectiveOperator& op, const ComplexEnergy& z);

/// Effective interaction matrix element
///   -psi~*(p2) psi~(p1) (calM_N^{-1}(z) + C0^{-1} calM_N^{-2}(z)).
cplx beff(const EffectiveOperator& op, const ComplexEnergy& z, double p2, double p1);

/// Relative defect of the tail constraint
///   m int d3k/(2pi)^3 F_n(k) / k^{2(n+1)} = J_n,  1 <= n <= N.
double phi_constraint_residual(const EffectiveOperator& op, int n, double tol = 1e-11);

/// Gaussian-damped default tail phi_1(p) = c2 p^2 (exp(-p^2/L1^2) - 1).
struct DefaultTail {
    double lambda1;        // calibrated so the n = 1 constraint holds exactly
    double lambda1_first;  // first-order closed form 2 pi sqrt(pi) J1 / (m Re c2)
    FormFactor::Tail fn;
};

DefaultTail default_phi1(cplx c2, double calJ1, double m);

/// Alternate valid tail of the same class, phi(p) = c2 p^2 ((1+p^2/Lb^2)^{-2} - 1).
DefaultTail bounded_rational_tail(cplx c2, double calJ1, double m);

/// First-order closed form for the Gaussian tail scale.
double default_phi1_lambda1_first(cplx c2, double calJ1, double m);

enum class EffVariant { Full, Truncated };

/// Order-N T-matrix
///   psi~*(p2) psi~(p1) / (C0^{-1} - calM_N(z) - calMrem_N(z)),
/// where calMrem_N = (M_0 + M) - calM_N is the tail-dependent remainder.
/// The truncated variant divides by C0^{-1} - calM_N(z) only.
cplx t_effective(const EffectiveOperator& op, const ComplexEnergy& z, double p2, double p1,
                 EffVariant variant = EffVariant::Full, double tol = 1e-11);

OffShellT make_effective_evaluator(const EffectiveOperator& op,
                                   EffVariant variant = EffVariant::Full,
                                   double tol = 1e-11);

/// Order-consistent on-shell amplitude of the order-N theory,
///   A(p) = - sum_{n<=N} sigma_n p^{2n} / (C0^{-1} - calM_N(E_p + i0)).
/// Algebraically identical to the resummed momentum expansion built from the
/// coupling recurrence; exactly unitary.
cplx effective_onshell(const EffectiveOperator& op, double p);

/// Convenience builder: order-1 operator with the calibrated Gaussian tail.
EffectiveOperator make_nlo_operator(double m, double C0, cplx c2, double calJ1,
                                    double lambda, bool concrete_tail = true);

}  // namespace gqd

#pragma once

#include <functional>

#include "gqd/quadrature.hpp"

namespace gqd {

enum class Dynamics { Hamiltonian, NonHamiltonian };

/// Hamiltonian iff alpha > 1/2; the marginal exponent is rejected.
Dynamics classify_dynamics(double alpha);

/// Two-particle system with a rank-1 separable interaction.  The radial form
/// factor falls off as p^{-alpha} with unit tail coefficient; the declared
/// exponent is verified against the callable by a log-log fit.
struct SeparableModel {
    double alpha;
    double m;
    double a_ref;  // reference energy, <= 0
    double g_a;    // t(a_ref)
    std::function<double(double)> phi;
    double k_fit_hi = 1e4;

    SeparableModel(double alpha, double m, double a_ref, double g_a,
                   std::function<double(double)> phi, double k_fit_hi = 1e4);
};

struct AsymptoticCoeffs {
    double b1 = 0.0;
    double b2 = 0.0;
    double lambda_coupling = 0.0;
    double m_tilde_a = 0.0;
};

/// T(p2, p1; z) = phi(p2) phi(p1) /
///   [g_a^{-1} + (z - a) int d3k/(2pi)^3 |phi(k)|^2 / ((z - E_k)(a - E_k))].
cplx general_solution(const SeparableModel& model, const ComplexEnergy& z, double p2,
                      double p1, double tol = 1e-11);

/// Subtracted integral M~(z) = int d3k/(2pi)^3 (|phi(k)|^2 - k^{-2 alpha}) / (z - E_k).
cplx m_tilde(const SeparableModel& model, const ComplexEnergy& z, double tol = 1e-11);

/// b1 = -4pi cos(alpha pi) m^(alpha - 3/2); b2, lambda and M~(a) by quadrature.
AsymptoticCoeffs asymptotic_coeffs(const SeparableModel& model, double tol = 1e-11);

/// Closed form of the non-Hamiltonian solution (alpha < 1/2):
///   b1^2 phi(p2) phi(p1) / (-b2 + b1 (-z)^{1/2-alpha} - M~(z) b1^2).
cplx nonhamiltonian_t(const SeparableModel& model, const ComplexEnergy& z, double p2,
                      double p1, double tol = 1e-11);

}  // namespace gqd

#pragma once

#include "gqd/tmatrix.hpp"

namespace gqd {

enum class Regulator { Sharp, Gaussian };

/// Momentum-cutoff scheme for the contact potential: regulator f(p/L) with
/// f(0) = 1, cutoff scale and renormalized coupling C_R (fixed by the value of
/// the cutoff T-matrix at zero energy and momenta).
struct CutoffScheme {
    Regulator regulator = Regulator::Sharp;
    double lambda_cut;
    double c_r;

    CutoffScheme(Regulator r, double lambda, double cr);

    /// |f(k/Lambda)|^2.
    double weight(double k) const;
};

/// Running bare coupling: C0^{-1}(Lambda) = C_R^{-1} - int d3k/(2pi)^3 |f|^2 m/k^2
/// (closed form for both regulators).
double c0_of_lambda(const CutoffScheme& s, double m);

/// Cutoff-regularized solution
///   f*(p2/L) f(p1/L) / (C0^{-1}(L) - int d3k/(2pi)^3 |f|^2/(z - E_k)).
cplx t_cutoff(const CutoffScheme& s, double m, const ComplexEnergy& z, double p2,
              double p1, double tol = 1e-11);

/// Limit of t_cutoff as Lambda -> inf: (C_R^{-1} - (m^{3/2}/4pi) sqrt(-z))^{-1}.
cplx renormalized_lo(double m, double c_r, const ComplexEnergy& z);

/// Defect of T = V + V G0 T with the quadrature truncated at k_max:
///   T(p2,p1;z) - V(p2,p1) - int_{k<k_max} d3k/(2pi)^3 V(p2,k) T(k,p1;z)/(z - E_k).
cplx ls_residual(const OffShellT& T, const std::function<cplx(double, double)>& V,
                 const ComplexEnergy& z, double m, double p2, double p1, double k_max,
                 double tol = 1e-10);

}  // namespace gqd

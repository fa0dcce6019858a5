#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <vector>

#include "gqd/complex_energy.hpp"
#include "gqd/errors.hpp"

namespace gqd {

struct QuadratureResult {
    cplx value{0.0, 0.0};
    double abs_error_estimate = 0.0;
    std::size_t evaluations = 0;
};

using Integrand = std::function<cplx(double)>;
using RealFn = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (G7/K15) on a finite interval.
QuadratureResult integrate_interval(const Integrand& f, double a, double b, double tol,
                                    std::size_t budget = 1'000'000,
                                    const std::vector<double>& breakpoints = {});

struct RadialOptions {
    double tol = 1e-10;
    /// Split between the adaptive finite part [0, k_split] and the mapped tail.
    double k_split = 10.0;
    /// Finite upper limit; infinity when <= 0.
    double upper_limit = -1.0;
    std::size_t budget = 1'000'000;
    std::vector<double> breakpoints{};
};

/// Integral over three-dimensional momentum space of a radial function:
///   result = int d3k/(2pi)^3 f(k) = (1/2pi^2) int_0^inf k^2 f(k) dk.
/// The tail [k_split, inf) is mapped by k = k_split/t, which handles both
/// exponentially and algebraically decaying integrands.
QuadratureResult radial_integral(const Integrand& f, double tol);
QuadratureResult radial_integral(const Integrand& f, const RadialOptions& opt);

struct PvOptions {
    double tol = 1e-10;
    /// Limit of k^2 f(k) as k -> inf; nonzero values select the subtraction
    /// convention in which the scaleless linear divergence is dropped, i.e.
    /// the value computed is (1/2pi^2) int [k^2 f/(p^2-k^2) + f_inf] dk.
    cplx f_inf{0.0, 0.0};
    double upper_limit = -1.0;
    std::size_t budget = 1'000'000;
    std::vector<double> breakpoints{};
    /// Fixed panel decomposition evaluated in parallel when > 1; the result is
    /// bitwise reproducible for a fixed panel count regardless of threads.
    int panels = 1;
    bool parallel = false;
};

/// Principal-value momentum integral with a simple on-shell pole,
///   int d3k/(2pi)^3 f(k) / (p^2 - k^2 +- i0),
/// (+i0 above the cut, -i0 below).  The pole is removed by analytic
/// subtraction f(k) -> f(k) - f(p); the i*pi residue term is added exactly:
/// -+ i p f(p) / (4 pi).
cplx pv_pole_integral(const Integrand& f, double p, CutSide side, double tol);
cplx pv_pole_integral(const Integrand& f, double p, CutSide side, const PvOptions& opt);

/// Brent root finding on [a, b]; requires a sign change.
double find_root(const RealFn& f, double a, double b, double tol = 1e-14,
                 int max_iter = 200);

/// Richardson-extrapolated central difference along direction h.
template <class F>
cplx central_derivative(F&& fn, cplx z, cplx h) {
    const cplx d1 = (fn(z + h) - fn(z - h)) / (2.0 * h);
    const cplx h2 = 0.5 * h;
    const cplx d2 = (fn(z + h2) - fn(z - h2)) / (2.0 * h2);
    return (4.0 * d2 - d1) / 3.0;
}

/// Least-squares straight line y = a + b x; returns {a, b}.
std::pair<double, double> linear_fit(const std::vector<double>& x,
                                     const std::vector<double>& y);

}  // namespace gqd

#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "gqd/complex_energy.hpp"

namespace gqd {

/// High-momentum tail attached to a truncated form factor.  `whole`, when
/// present, evaluates poly + fn in a numerically stable combined form (the
/// two parts cancel at large momentum).
struct TailSpec {
    std::function<cplx(double)> fn;
    double scale = 0.0;
    std::function<cplx(double)> whole;

    explicit operator bool() const { return static_cast<bool>(fn); }
};

/// Momentum dependence of the separable contact interaction:
///   psi(p) = sum_{n=0}^{N} c_{2n} p^{2n} + tail(p),
/// with c_0 = 1 and an optional tail that is O(p^{2(N+1)}) near the origin.
class FormFactor {
public:
    /// coeffs = {c_0, c_2, ..., c_{2N}} with c_0 == 1.
    FormFactor(std::vector<cplx> coeffs, double lambda, TailSpec tail = {},
               double naturalness_bound = 10.0);

    static FormFactor unit(double lambda = 1.0) { return FormFactor({cplx{1.0, 0.0}}, lambda); }

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    double lambda() const { return lambda_; }
    bool has_tail() const { return static_cast<bool>(tail_); }
    /// Largest momentum scale present; used to size quadrature windows.
    double scale_hint() const { return scale_hint_; }
    cplx coeff(int n) const;  // c_{2n}, zero beyond the stored order

    cplx psi(double p) const;
    cplx psi_conj(double p) const { return std::conj(psi(p)); }
    double abs2_psi(double p) const { return std::norm(psi(p)); }
    cplx poly(double p) const;
    cplx tail(double p) const { return tail_ ? tail_.fn(p) : cplx{0.0, 0.0}; }

    /// sigma_n = sum_i c*_{2i} c_{2(n-i)} for 0 <= n <= 2N (real).
    double sigma(int n) const;

    /// F_n(k) = |psi(k)|^2 - sum_{i<n} sigma_i k^{2i}, evaluated without
    /// cancellation on either side of the tail scale.
    double f_n(double k, int n) const;

private:
    std::vector<cplx> coeffs_;
    double lambda_;
    TailSpec tail_;
    double scale_hint_;
};

}  // namespace gqd

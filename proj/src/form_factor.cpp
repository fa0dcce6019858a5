#include "gqd/form_factor.hpp"

#include <cmath>
#include <stdexcept>

namespace gqd {

FormFactor::FormFactor(std::vector<cplx> coeffs, double lambda, TailSpec tail,
                       double naturalness_bound)
    : coeffs_(std::move(coeffs)),
      lambda_(lambda),
      tail_(std::move(tail)),
      scale_hint_(std::max(lambda, tail_.scale)) {
    if (coeffs_.empty() || coeffs_.front() != cplx{1.0, 0.0})
        throw std::invalid_argument("FormFactor: c_0 must be exactly 1");
    if (!(lambda_ > 0.0)) throw std::invalid_argument("FormFactor: lambda must be positive");
    for (std::size_t n = 1; n < coeffs_.size(); ++n) {
        const double bound = naturalness_bound * std::pow(lambda_, -2.0 * static_cast<double>(n));
        if (std::abs(coeffs_[n]) > bound)
            throw std::invalid_argument("FormFactor: coefficient violates the naturalness bound");
    }
    if (tail_) {
        // tail(p) = O(p^{2(N+1)}) near the origin: the ratio must stay bounded
        // as p decreases.
        const int N = order();
        const double pw = 2.0 * (N + 1);
        const double p_hi = 0.1 * lambda_;
        const double r_hi = std::abs(tail_.fn(p_hi)) / std::pow(p_hi, pw);
        for (double p = p_hi / 4.0; p > 1e-4 * lambda_; p /= 4.0) {
            const double r = std::abs(tail_.fn(p)) / std::pow(p, pw);
            if (r > 4.0 * r_hi + 1e-12)
                throw std::invalid_argument("FormFactor: tail is not O(p^(2(N+1))) at small p");
        }
        if (tail_.whole) {
            for (double p : {0.05 * lambda_, 0.3 * lambda_, lambda_}) {
                const cplx direct = poly(p) + tail_.fn(p);
                if (std::abs(tail_.whole(p) - direct) > 1e-10 * (1.0 + std::abs(direct)))
                    throw std::invalid_argument(
                        "FormFactor: combined tail form disagrees with poly + tail");
            }
        }
    }
}

cplx FormFactor::coeff(int n) const {
    if (n < 0 || n >= static_cast<int>(coeffs_.size())) return {0.0, 0.0};
    return coeffs_[static_cast<std::size_t>(n)];
}

cplx FormFactor::poly(double p) const {
    const double p2 = p * p;
    cplx acc{0.0, 0.0};
    for (std::size_t n = coeffs_.size(); n-- > 0;) acc = acc * p2 + coeffs_[n];
    return acc;
}

cplx FormFactor::psi(double p) const {
    if (tail_) return tail_.whole ? tail_.whole(p) : poly(p) + tail_.fn(p);
    return poly(p);
}

double FormFactor::sigma(int n) const {
    cplx acc{0.0, 0.0};
    for (int i = 0; i <= n; ++i) acc += std::conj(coeff(i)) * coeff(n - i);
    return acc.real();
}

double FormFactor::f_n(double k, int n) const {
    const double k2 = k * k;
    // Past the tail scale, poly and tail cancel to O(1) values; the direct
    // form is stable there, while near the origin the cancellation sits in
    // |psi|^2 - sum and the analytic regrouping is the stable one.
    if (tail_ && k > 2.0 * scale_hint_) {
        double sub = 0.0;
        for (int i = n - 1; i >= 0; --i) sub = sub * k2 + sigma(i);
        return abs2_psi(k) - sub;
    }
    // |poly|^2 - sum_{i<n} sigma_i k^{2i} = sum_{i>=n} sigma_i k^{2i} exactly.
    double acc = 0.0;
    for (int i = 2 * order(); i >= n; --i) acc = acc * k2 + sigma(i);
    acc *= std::pow(k2, n);
    if (tail_) {
        const cplx t = tail_.fn(k);
        acc += 2.0 * (std::conj(poly(k)) * t).real() + std::norm(t);
    }
    return acc;
}

}  // namespace gqd

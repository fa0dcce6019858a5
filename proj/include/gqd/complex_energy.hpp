#pragma once

#include <cmath>
#include <complex>

#include "gqd/errors.hpp"

namespace gqd {

using cplx = std::complex<double>;

/// Side of the unitarity cut along the positive real energy axis.
enum class CutSide { Above, Below, OffAxis };

/// A point z in the cut complex energy plane.  For cut-tagged points the
/// stored value is exactly real and the tag supplies the i*eps prescription.
struct ComplexEnergy {
    cplx value{0.0, 0.0};
    CutSide side = CutSide::OffAxis;

    static ComplexEnergy off_axis(cplx z) { return {z, CutSide::OffAxis}; }
    static ComplexEnergy above(double x) { return {{x, 0.0}, CutSide::Above}; }
    static ComplexEnergy below(double x) { return {{x, 0.0}, CutSide::Below}; }
    /// Real energy below threshold; no prescription needed.
    static ComplexEnergy real_neg(double x) { return {{x, 0.0}, CutSide::OffAxis}; }

    bool on_cut() const { return side != CutSide::OffAxis && value.real() > 0.0; }

    /// Distance from the cut [0, inf) on the real axis.
    double dist_to_cut() const {
        const double x = value.real(), y = value.imag();
        if (x >= 0.0) return std::abs(y);
        return std::hypot(x, y);
    }
};

/// sqrt(-z*m) on the principal branch, cut along the positive real z axis.
/// For z = E_p + i0+ (p^2 = z*m > 0) the result is exactly -i*p.
inline cplx sqrt_neg(const ComplexEnergy& z, double m) {
    if (z.side == CutSide::OffAxis) return std::sqrt(-z.value * m);
    const double x = z.value.real();
    if (x <= 0.0) return {std::sqrt(-x * m), 0.0};
    const double p = std::sqrt(x * m);
    return z.side == CutSide::Above ? cplx{0.0, -p} : cplx{0.0, p};
}

/// (-z)^s on the same branch as sqrt_neg (s = 1/2, m = 1 reduces to it).
inline cplx pow_minus_z(const ComplexEnergy& z, double s) {
    if (z.side == CutSide::OffAxis) return std::pow(-z.value, s);
    const double x = z.value.real();
    if (x <= 0.0) return {std::pow(-x, s), 0.0};
    // ln(-x -+ i0) = ln x -+ i*pi for x > 0
    const double lnx = std::log(x);
    const double ph = (z.side == CutSide::Above) ? -M_PI : M_PI;
    return std::exp(cplx{s * lnx, s * ph});
}

}  // namespace gqd

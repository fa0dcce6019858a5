#pragma once

#include "gqd/effective_order.hpp"
#include "gqd/units.hpp"

namespace gqd::presets {

/// m = 1, a = 1 (C0 = 4pi), trivial form factor.
inline EftParams lo_unit() {
    return EftParams(1.0, 4.0 * M_PI, FormFactor::unit(4.0), {});
}

/// m = 1, a = 2, Lambda = 4, c2 = 0.03, J1 = 0.02, calibrated Gaussian tail.
inline EffectiveOperator nlo_unit(bool concrete_tail = true) {
    return make_nlo_operator(1.0, 8.0 * M_PI, cplx{0.03, 0.0}, 0.02, 4.0, concrete_tail);
}

/// Spin-singlet neutron-proton convenience preset in MeV working units
/// (reduced two-body mass scale m = 938.918, a = -23.714 fm, r0 = 2.73 fm).
struct Np1S0 {
    double m = 938.918;
    double a = units::fm_to_inv_mev(-23.714);
    double r0 = units::fm_to_inv_mev(2.73);
};

}  // namespace gqd::presets

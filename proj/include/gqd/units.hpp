#pragma once

namespace gqd::units {

/// hbar*c in MeV*fm; the only conversion constant crossing the CLI boundary.
inline constexpr double hbar_c_mev_fm = 197.3269804;

/// Lengths in fm <-> inverse MeV.
inline double fm_to_inv_mev(double fm) { return fm / hbar_c_mev_fm; }
inline double inv_mev_to_fm(double inv_mev) { return inv_mev * hbar_c_mev_fm; }

}  // namespace gqd::units

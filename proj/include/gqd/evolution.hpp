#pragma once

#include <optional>
#include <vector>

#include "gqd/parallel.hpp"
#include "gqd/tmatrix.hpp"

namespace gqd {

/// Radial (s-wave) wave packet sampled on a fixed quadrature grid; normalized
/// so that int d3k/(2pi)^3 |psi(k)|^2 = 1 on the stored grid.
struct WavePacket {
    std::vector<double> nodes;
    std::vector<double> weights;
    std::vector<cplx> amp;

    static WavePacket gaussian(double k0, double sigma, int panels = 8,
                               int points_per_panel = 12, double k_max = 0.0);

    double norm() const;          // int d3k/(2pi)^3 |psi|^2 on the grid
    double energy_width(double m) const;
    /// Probability carried by nodes with k > k_cut.
    double probability_above(double k_cut) const;
};

/// Straight-line contour Im z = y0 over [-x_window, x_window].
struct ContourSpec {
    double y0;
    double x_window;
    int nodes;

    ContourSpec(double y0_, double x_window_, int nodes_);
};

/// Separable T-matrix view used by the contour evolution:
/// T(p2, p1; z) = chi_left(p2) chi_right(p1) tau(z).
struct SeparableTMatrix {
    std::function<cplx(double)> chi_left;
    std::function<cplx(double)> chi_right;
    std::function<cplx(const ComplexEnergy&)> tau;
    std::optional<double> bound_state_z{};

    static SeparableTMatrix from_lo(double m, double C0);
    static SeparableTMatrix from_params(const EftParams& params, double tol = 1e-11);
    static SeparableTMatrix zero();
};

struct GreenElement {
    cplx free_part_coeff;  // coefficient of the forward delta, 1/(z - E_p)
    cplx interacting_part;
};

/// G(z) = G0 + G0 T G0 matrix element; z must lie off the real axis.
GreenElement green_element(const OffShellT& T, double m, const ComplexEnergy& z,
                           double p2, double p1);

struct EvolveResult {
    std::vector<cplx> amp;       // evolved amplitude on the packet grid
    double truncation_estimate;  // relative spectral-truncation estimate
};

/// <k|U(t,0)|psi> by trapezoidal quadrature along the contour; the free part
/// is carried analytically and the bound-state pole (when present inside the
/// window) is subtracted from the integrand and added back in closed form.
/// Contour nodes are evaluated independently and combined by a pairwise tree
/// sum, so serial and parallel execution agree bitwise.
EvolveResult evolve(const SeparableTMatrix& T, const WavePacket& psi, double m, double t,
                    const ContourSpec& contour, ExecPolicy policy = ExecPolicy::Serial);

double unitarity_defect(const SeparableTMatrix& T, const WavePacket& psi, double m,
                        double t, const ContourSpec& contour,
                        ExecPolicy policy = ExecPolicy::Serial);

/// Survival amplitude <psi|U(t,0)|psi> on a grid of times (one contour pass).
std::vector<cplx> survival_series(const SeparableTMatrix& T, const WavePacket& psi,
                                  double m, const std::vector<double>& ts,
                                  const ContourSpec& contour,
                                  ExecPolicy policy = ExecPolicy::Serial);

}  // namespace gqd

#pragma once

#include <cstdint>
#include <vector>

#include "gqd/expansion.hpp"
#include "gqd/external_probe.hpp"

namespace gqd {

struct PhasePoint {
    double p;
    double delta;
    double sigma;  // relative noise level used to generate/weight the point
};

using PhaseShiftData = std::vector<PhasePoint>;

/// Deterministic normal deviates (Box-Muller on a seeded 64-bit generator).
class GaussianRng {
public:
    explicit GaussianRng(std::uint64_t seed);
    double next();

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
    double uniform();
};

/// Reproducible noisy samples of delta(p) with multiplicative Gaussian noise.
PhaseShiftData synth_phase_shifts(const std::function<double(double)>& pcotdelta_of_p,
                                  const std::vector<double>& p_grid, double noise,
                                  std::uint64_t seed);

struct EreFit {
    EreParams params;
    std::vector<double> covariance;  // row-major (n_par x n_par), order (a, r0, r1, ...)
    double chi2 = 0.0;
};

/// Weighted least squares of p cot delta against a polynomial in p^2.
EreFit fit_ere(const PhaseShiftData& data, int n_shapes);

/// One probe observable: a11 at the stated center-of-mass kinematics.
struct ProbePoint {
    double p1_mag;
    double q_mag;
    double cos_theta2;  // final relative direction against q
    cplx a11;
    double sigma;
};

using ProbeData = std::vector<ProbePoint>;

struct EftFitModel {
    double m = 1.0;
    double lambda = 1.0;
    PotentialSpec potential = PotentialSpec::gaussian(1.0, 1.0);
};

/// Forward model for the probe rows (contact form, parameters (C0, c2, J1)).
cplx probe_a11_model(const EftFitModel& model, double C0, double c2, double calJ1,
                     const ProbePoint& kin);

ProbeData synth_probe_data(const EftFitModel& model, double C0, double c2, double calJ1,
                           const std::vector<ProbePoint>& kinematics, double noise,
                           std::uint64_t seed);

struct EftFit {
    double C0 = 0.0;
    double c2 = 0.0;
    double calJ1 = 0.0;
    std::vector<double> covariance;       // 3x3 row-major, order (C0, c2, J1)
    std::vector<double> singular_values;  // of the final scaled Jacobian
    bool separated = false;               // c2 and J1 individually determined
    int iterations = 0;
};

/// Damped Gauss-Newton fit of (C0, c2, J1).  Without probe data only the
/// combination C2 = C0 (2 c2 - C0 J1) is identifiable and the Jacobian has an
/// exactly flat direction; requesting separated couplings then fails.
EftFit fit_eft(const EftFitModel& model, const PhaseShiftData& on_shell,
               const ProbeData& probe, bool require_separation,
               double C0_init, double c2_init, double calJ1_init);

}  // namespace gqd

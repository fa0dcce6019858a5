#pragma once

#include <array>

#include "gqd/effective_order.hpp"

namespace gqd {

using vec3 = std::array<double, 3>;

double v3_norm(const vec3& v);
double v3_dot(const vec3& a, const vec3& b);
vec3 v3_add(const vec3& a, const vec3& b);
vec3 v3_sub(const vec3& a, const vec3& b);

/// Momentum-space external potential V(q), real and decaying.
struct PotentialSpec {
    std::function<double(double)> v_of_q;
    double strength_scale = 1.0;

    PotentialSpec(std::function<double(double)> v, double strength = 1.0,
                  double q_scale = 1.0);

    static PotentialSpec gaussian(double amplitude, double width);

    double operator()(double q) const { return strength_scale * v_of_q(q); }
};

/// On-shell kinematics of the pair + probe: z = P^2/4m + p^2/m on both sides.
struct ProbeKinematics {
    vec3 P1, P2, p1, p2;
    double m;
    double z;

    ProbeKinematics(vec3 P1, vec3 P2, vec3 p1, vec3 p2, double m);

    /// Initial pair at rest: P1 = 0, P2 = q; |p2| fixed by energy balance,
    /// pointing along p2_dir.
    static ProbeKinematics cm(double m, const vec3& p1, const vec3& q,
                              const vec3& p2_dir);

    vec3 q() const { return v3_sub(P2, P1); }
};

struct AmplitudeParts {
    double a00_coeff = 0.0;  // coefficient of the forward delta structure
    cplx a01{0.0, 0.0};
    cplx a10{0.0, 0.0};
    cplx a11{0.0, 0.0};

    cplx connected_sum() const { return a01 + a10 + a11; }
};

enum class ProbeMode {
    /// Concrete-tail kernels everywhere; exact at the operator's order.
    Direct,
    /// Tail-independent form: polynomial numerators with the m J_1 contact
    /// term absorbing the tail integrals (valid for the whole class).
    Contact,
    /// Direct when the operator carries a concrete tail, Contact otherwise.
    Auto
};

struct ProbeOptions {
    ProbeMode mode = ProbeMode::Auto;
    double tol = 1e-9;
    int panels = 1;
    bool parallel = false;
};

/// Born amplitude decomposition for the pair in the external potential.
AmplitudeParts amplitude_external(const ProbeKinematics& kin, const PotentialSpec& pot,
                                  const EffectiveOperator& op,
                                  const ProbeOptions& opt = {});

struct TPotResult {
    /// Coefficient of the forward delta (2pi)^3 delta3(P2-P1): the pair
    /// T-matrix at the shifted energy; populated only when P2 == P1.
    cplx t1_coeff{0.0, 0.0};
    /// Connected Born part, linear in the potential.
    cplx v_part{0.0, 0.0};
};

/// T^(1) + (1 + T^(1) G0) V (1 + G0 T^(1)) evaluated between plane-wave
/// states with the pair T-matrix treated as a black-box evaluator.
TPotResult t_pot(const EffectiveOperator& op, const PotentialSpec& pot,
                 const ComplexEnergy& z, const vec3& P2, const vec3& p2, const vec3& P1,
                 const vec3& p1, const ProbeOptions& opt = {});

}  // namespace gqd

#include "gqd/external_probe.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gqd {

double v3_norm(const vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }
double v3_dot(const vec3& a, const vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
vec3 v3_add(const vec3& a, const vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
vec3 v3_sub(const vec3& a, const vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

PotentialSpec::PotentialSpec(std::function<double(double)> v, double strength,
                             double q_scale)
    : v_of_q(std::move(v)), strength_scale(strength) {
    double vmax = 0.0;
    for (int i = 0; i <= 40; ++i) {
        const double q = q_scale * 0.5 * i;
        const double val = std::abs(v_of_q(q));
        if (!std::isfinite(val)) throw std::invalid_argument("PotentialSpec: V unbounded");
        vmax = std::max(vmax, val);
    }
    const double far = std::abs(v_of_q(40.0 * q_scale));
    if (vmax > 0.0 && far > 0.05 * vmax)
        throw std::invalid_argument("PotentialSpec: V(q) must fall off at large q");
}

PotentialSpec PotentialSpec::gaussian(double amplitude, double width) {
    return PotentialSpec(
        [amplitude, width](double q) { return amplitude * std::exp(-q * q / (width * width)); },
        1.0, width);
}

ProbeKinematics::ProbeKinematics(vec3 P1_, vec3 P2_, vec3 p1_, vec3 p2_, double m_)
    : P1(P1_), P2(P2_), p1(p1_), p2(p2_), m(m_) {
    if (!(m > 0.0)) throw std::invalid_argument("ProbeKinematics: m must be positive");
    const double z1 = v3_dot(P1, P1) / (4.0 * m) + v3_dot(p1, p1) / m;
    const double z2 = v3_dot(P2, P2) / (4.0 * m) + v3_dot(p2, p2) / m;
    if (std::abs(z1 - z2) > 1e-10 * std::max(1.0, std::abs(z1)))
        throw OffShellKinematics("ProbeKinematics: energy balance violated");
    z = z1;
}

ProbeKinematics ProbeKinematics::cm(double m, const vec3& p1, const vec3& q,
                                    const vec3& p2_dir) {
    const double p2sq = v3_dot(p1, p1) - 0.25 * v3_dot(q, q);
    if (!(p2sq > 0.0))
        throw OffShellKinematics("ProbeKinematics::cm: no open final state");
    const double nd = v3_norm(p2_dir);
    if (!(nd > 0.0)) throw std::invalid_argument("ProbeKinematics::cm: zero direction");
    const double s = std::sqrt(p2sq) / nd;
    return ProbeKinematics({0.0, 0.0, 0.0}, q, p1,
                           {s * p2_dir[0], s * p2_dir[1], s * p2_dir[2]}, m);
}

namespace {

// ln(x +- i0) for real x.
cplx log_i0(double x, CutSide side) {
    const double ph = (side == CutSide::Below) ? -M_PI : M_PI;
    return x >= 0.0 ? cplx{std::log(x), 0.0} : cplx{std::log(-x), ph};
}

// int_{-1}^{1} dc / (a - b c +- i0), b > 0.
cplx ell_log(double a, double b, CutSide side) {
    return (log_i0(a + b, side) - log_i0(a - b, side)) / b;
}

// int_{-1}^{1} g(p'(c)) dc / (a - b c +- i0) with p'(c) = sqrt(k^2+q^2+2kqc),
// a = pb^2 - k^2 - q^2, b = 2kq.  The angular pole at c* = a/b is removed by
// subtracting g at the clamped pole; the log factor is integrated exactly.
cplx angular_weighted(double k, double q, double pb2, const std::function<cplx(double)>& g,
                      CutSide side, double tol) {
    const double a = pb2 - k * k - q * q;
    const double b = 2.0 * k * q;
    auto pprime = [&](double c) {
        return std::sqrt(std::max(0.0, k * k + q * q + 2.0 * k * q * c));
    };

    if (b < 1e-12 * std::max(1.0, std::abs(a))) {
        if (std::abs(a) < 1e-12)
            throw OffShellKinematics("angular_weighted: degenerate denominator");
        auto f = [&](double c) -> cplx { return g(pprime(c)) / (a - b * c); };
        return integrate_interval(f, -1.0, 1.0, tol).value;
    }

    const double cstar = a / b;
    if (std::abs(cstar) <= 2.0) {
        const double ctil = std::clamp(cstar, -1.0, 1.0);
        const cplx gtil = g(pprime(ctil));
        const double h = 1e-5;
        const double cl = std::max(-1.0, ctil - h), ch = std::min(1.0, ctil + h);
        const cplx dg = (g(pprime(ch)) - g(pprime(cl))) / (ch - cl);
        auto f = [&](double c) -> cplx {
            if (std::abs(c - cstar) < 1e-9) return dg / (-b);
            return (g(pprime(c)) - gtil) / (a - b * c);
        };
        const cplx rest = integrate_interval(f, -1.0, 1.0, tol, 1'000'000, {ctil}).value;
        return gtil * ell_log(a, b, side) + rest;
    }
    auto f = [&](double c) -> cplx { return g(pprime(c)) / (a - b * c); };
    return integrate_interval(f, -1.0, 1.0, tol).value;
}

std::vector<double> branch_points(double pb, double q) {
    return {std::abs(pb - q), pb + q};
}

void check_pole_separation(double pa, double pb, double q) {
    for (double b : branch_points(pb, q))
        if (std::abs(pa - b) < 1e-6 * std::max(1.0, pa))
            throw OffShellKinematics(
                "reduced_loop: radial pole collides with an angular branch point");
}

/// 2D-reduced two-pole loop:
///   (m^2/2) * (1/2pi^2) int dk [k^2 rad(k) angw(k) / (pa^2 - k^2 +- i0) + f_inf],
/// where angw(k) = int dc ang(p'(c)) / (pb^2 - p'^2(c) +- i0).
cplx reduced_loop(double m, double pa, double pb, double q, CutSide side,
                  const std::function<cplx(double)>& radial_num,
                  const std::function<cplx(double)>& angular_num, cplx f_inf,
                  const ProbeOptions& opt) {
    check_pole_separation(pa, pb, q);
    const double pb2 = pb * pb;
    auto f = [&](double k) -> cplx {
        return radial_num(k) *
               angular_weighted(k, q, pb2, angular_num, side, 0.1 * opt.tol);
    };
    PvOptions popt;
    popt.tol = opt.tol;
    popt.f_inf = f_inf;
    popt.breakpoints = branch_points(pb, q);
    popt.panels = opt.panels;
    popt.parallel = opt.parallel;
    return 0.5 * m * m * pv_pole_integral(f, pa, side, popt);
}

struct HalfShell {
    double p1m, p2m, qm;
    cplx t1;  // 1/(C0^{-1} - calM_N(E_1 + i0))
    cplx t2;
};

double guard_denominator(double x, double scale, const char* what) {
    if (std::abs(x) < 1e-9 * std::max(1.0, scale)) throw OffShellKinematics(what);
    return x;
}

HalfShell half_shell(const ProbeKinematics& kin, const EffectiveOperator& op) {
    HalfShell hs;
    hs.p1m = v3_norm(kin.p1);
    hs.p2m = v3_norm(kin.p2);
    hs.qm = v3_norm(kin.q());
    if (hs.qm < 1e-10 || hs.p1m < 1e-10 || hs.p2m < 1e-10)
        throw OffShellKinematics("amplitude_external: degenerate kinematics");
    const double m = kin.m;
    const auto e1 = ComplexEnergy::above(hs.p1m * hs.p1m / m);
    const auto e2 = ComplexEnergy::above(hs.p2m * hs.p2m / m);
    hs.t1 = 1.0 / (1.0 / op.params.C0 - calM_n(op, e1));
    hs.t2 = 1.0 / (1.0 / op.params.C0 - calM_n(op, e2));
    return hs;
}

}  // namespace

AmplitudeParts amplitude_external(const ProbeKinematics& kin, const PotentialSpec& pot,
                                  const EffectiveOperator& op, const ProbeOptions& opt) {
    if (op.order() != 1)
        throw InsufficientOrder("amplitude_external: implemented at order N = 1");
    ProbeMode mode = opt.mode;
    if (mode == ProbeMode::Auto)
        mode = op.tail_concrete() ? ProbeMode::Direct : ProbeMode::Contact;
    if (mode == ProbeMode::Direct && !op.tail_concrete())
        throw GqdError("amplitude_external: Direct mode needs a concrete tail");

    const HalfShell hs = half_shell(kin, op);
    const double m = kin.m;
    const double vq = pot(hs.qm);
    const auto& form = op.params.form;
    const cplx c2 = form.coeff(1);

    AmplitudeParts parts;
    parts.a00_coeff = -vq;
    if (vq == 0.0) return parts;

    // Initial-state interaction: p = p2 - q, energy denominator E_1 - E_p.
    const vec3 pin = v3_sub(kin.p2, kin.q());
    const double pinm = v3_norm(pin);
    const double den01 =
        guard_denominator((hs.p1m * hs.p1m - pinm * pinm) / m, std::abs(kin.z),
                          "amplitude_external: a01 energy denominator vanishes");
    // Final-state interaction: p' = p1 + q, energy denominator E_2 - E_p'.
    const vec3 pout = v3_add(kin.p1, kin.q());
    const double poutm = v3_norm(pout);
    const double den10 =
        guard_denominator((hs.p2m * hs.p2m - poutm * poutm) / m, std::abs(kin.z),
                          "amplitude_external: a10 energy denominator vanishes");

    if (mode == ProbeMode::Direct) {
        parts.a01 = -vq * form.psi_conj(pinm) * form.psi(hs.p1m) * hs.t1 / den01;
        parts.a10 = -vq * form.psi_conj(hs.p2m) * form.psi(poutm) * hs.t2 / den10;

        auto rad = [&](double k) { return form.psi_conj(k); };
        auto ang = [&](double pp) { return form.psi(pp); };
        const cplx loop = reduced_loop(m, hs.p1m, hs.p2m, hs.qm, CutSide::Above, rad, ang,
                                       {0.0, 0.0}, opt);
        parts.a11 = -vq * form.psi_conj(hs.p2m) * form.psi(hs.p1m) * hs.t2 * hs.t1 * loop;
        return parts;
    }

    // Contact form: polynomial numerators; the tail integrals enter only
    // through the m J_1 term.
    const cplx num01 = 1.0 + std::conj(c2) * pinm * pinm + c2 * hs.p1m * hs.p1m;
    const cplx num10 = 1.0 + std::conj(c2) * hs.p2m * hs.p2m + c2 * poutm * poutm;
    parts.a01 = -vq * num01 * hs.t1 / den01;
    parts.a10 = -vq * num10 * hs.t2 / den10;

    auto unit = [](double) { return cplx{1.0, 0.0}; };
    auto ksq = [](double k) { return cplx{k * k, 0.0}; };
    const cplx loop0 =
        reduced_loop(m, hs.p1m, hs.p2m, hs.qm, CutSide::Above, unit, unit, {0.0, 0.0}, opt);
    // Quadratic terms, each subtracted at its own loop momentum; the roles of
    // (E1, E2) swap for the momentum-shifted term.
    const cplx s12 =
        reduced_loop(m, hs.p1m, hs.p2m, hs.qm, CutSide::Above, ksq, unit, {-2.0, 0.0}, opt);
    const cplx s21 =
        reduced_loop(m, hs.p2m, hs.p1m, hs.qm, CutSide::Above, ksq, unit, {-2.0, 0.0}, opt);

    const cplx bracket = loop0 + std::conj(c2) * s12 + c2 * s21 + m * op.params.calj(1);
    const cplx pref = 1.0 + std::conj(c2) * hs.p2m * hs.p2m + c2 * hs.p1m * hs.p1m;
    parts.a11 = -vq * pref * hs.t2 * hs.t1 * bracket;
    return parts;
}

TPotResult t_pot(const EffectiveOperator& op, const PotentialSpec& pot,
                 const ComplexEnergy& z, const vec3& P2, const vec3& p2, const vec3& P1,
                 const vec3& p1, const ProbeOptions& opt) {
    TPotResult out;
    const double m = op.params.m;
    const auto T = make_effective_evaluator(op, EffVariant::Truncated);

    const vec3 qv = v3_sub(P2, P1);
    const double qm = v3_norm(qv);
    const double p1m = v3_norm(p1), p2m = v3_norm(p2);

    const cplx w1c = z.value - v3_dot(P1, P1) / (4.0 * m);
    const cplx w2c = z.value - v3_dot(P2, P2) / (4.0 * m);
    auto sector_energy = [&](cplx w) -> ComplexEnergy {
        if (z.side != CutSide::OffAxis && w.imag() == 0.0) return {w, z.side};
        return ComplexEnergy::off_axis(w);
    };
    const ComplexEnergy w1 = sector_energy(w1c);
    const ComplexEnergy w2 = sector_energy(w2c);

    if (qm < 1e-12) out.t1_coeff = T(p2m, p1m, w2);

    const double vq = pot(qm);
    if (vq == 0.0) return out;

    const vec3 pin = v3_sub(p2, qv);
    const double pinm = v3_norm(pin);
    const vec3 pout = v3_add(p1, qv);
    const double poutm = v3_norm(pout);

    cplx acc = 1.0;                                               // plain V
    acc += T(p2m, poutm, w2) / (w2.value - poutm * poutm / m);    // T G0 V
    acc += T(pinm, p1m, w1) / (w1.value - pinm * pinm / m);       // V G0 T

    const bool on_cut = w1.on_cut();
    if (on_cut) {
        if (!w2.on_cut())
            throw OffShellKinematics("t_pot: mixed-sector cut placement unsupported");
        const double pa = std::sqrt(w1.value.real() * m);
        const double pb = std::sqrt(w2.value.real() * m);
        auto rad = [&](double k) { return T(k, p1m, w1); };
        auto ang = [&](double pp) { return T(p2m, pp, w2); };
        acc += reduced_loop(m, pa, pb, qm, w1.side, rad, ang, {0.0, 0.0}, opt);
    } else {
        auto f = [&](double k) -> cplx {
            auto g = [&](double c) -> cplx {
                const double pp = std::sqrt(k * k + qm * qm + 2.0 * k * qm * c);
                return T(p2m, pp, w2) / (w2.value - pp * pp / m);
            };
            const cplx angv = integrate_interval(g, -1.0, 1.0, 0.1 * opt.tol).value;
            return 0.5 * angv * T(k, p1m, w1) / (w1.value - k * k / m);
        };
        RadialOptions ropt;
        ropt.tol = opt.tol;
        ropt.k_split = std::max(10.0, 4.0 * op.params.form.scale_hint());
        acc += radial_integral(f, ropt).value;
    }
    out.v_part = vq * acc;
    return out;
}

}  // namespace gqd

#include "gqd/evolution.hpp"

#include <cmath>
#include <stdexcept>

namespace gqd {

namespace {

// Legendre nodes/weights on [-1, 1] by Newton iteration.
void legendre_rule(int n, std::vector<double>& x, std::vector<double>& w) {
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * t * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (t * p1 - p0) / (t * t - 1.0);
            const double dt = p1 / pp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        x[i] = -t;
        x[n - 1 - i] = t;
        w[i] = w[n - 1 - i] = 2.0 / ((1.0 - t * t) * pp * pp);
    }
}

}  // namespace

WavePacket WavePacket::gaussian(double k0, double sigma, int panels, int points_per_panel,
                                double k_max) {
    if (k_max <= 0.0) k_max = k0 + 8.0 * sigma;
    std::vector<double> gx, gw;
    legendre_rule(points_per_panel, gx, gw);
    WavePacket p;
    const double h = k_max / panels;
    for (int s = 0; s < panels; ++s) {
        const double a = s * h;
        for (int i = 0; i < points_per_panel; ++i) {
            const double k = a + 0.5 * h * (gx[i] + 1.0);
            p.nodes.push_back(k);
            p.weights.push_back(0.5 * h * gw[i]);
            const double u = (k - k0) / sigma;
            p.amp.push_back(cplx{std::exp(-0.5 * u * u), 0.0});
        }
    }
    const double n0 = p.norm();
    for (auto& a : p.amp) a /= std::sqrt(n0);
    return p;
}

double WavePacket::norm() const {
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        acc += weights[i] * nodes[i] * nodes[i] * std::norm(amp[i]);
    return acc / (2.0 * M_PI * M_PI);
}

double WavePacket::energy_width(double m) const {
    double e1 = 0.0, e2 = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double w = weights[i] * nodes[i] * nodes[i] * std::norm(amp[i]) /
                         (2.0 * M_PI * M_PI);
        const double e = nodes[i] * nodes[i] / m;
        e1 += w * e;
        e2 += w * e * e;
    }
    return std::sqrt(std::max(0.0, e2 - e1 * e1));
}

double WavePacket::probability_above(double k_cut) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i] > k_cut)
            acc += weights[i] * nodes[i] * nodes[i] * std::norm(amp[i]);
    return acc / (2.0 * M_PI * M_PI);
}

ContourSpec::ContourSpec(double y0_, double x_window_, int nodes_)
    : y0(y0_), x_window(x_window_), nodes(nodes_) {
    if (!(y0 > 0.0)) throw std::invalid_argument("ContourSpec: y0 must be positive");
    if (!(x_window > 0.0)) throw std::invalid_argument("ContourSpec: window must be positive");
    if (nodes < 16) throw std::invalid_argument("ContourSpec: too few nodes");
}

SeparableTMatrix SeparableTMatrix::from_lo(double m, double C0) {
    SeparableTMatrix t;
    t.chi_left = [](double) { return cplx{1.0, 0.0}; };
    t.chi_right = [](double) { return cplx{1.0, 0.0}; };
    t.tau = [m, C0](const ComplexEnergy& z) { return lo_t(z, m, C0); };
    if (C0 > 0.0) t.bound_state_z = lo_bound_state(m, C0);
    return t;
}

SeparableTMatrix SeparableTMatrix::from_params(const EftParams& params, double tol) {
    SeparableTMatrix t;
    const auto form = params.form;
    t.chi_left = [form](double p) { return form.psi_conj(p); };
    t.chi_right = [form](double p) { return form.psi(p); };
    t.tau = [params, tol](const ComplexEnergy& z) { return t_full(params, z, tol); };
    if (params.C0 > 0.0) {
        // Search near the leading-order pole for the dressed one.
        auto den = [&](double x) {
            const auto z = ComplexEnergy::real_neg(x);
            return (1.0 / params.C0 - m0(z, params.m) - big_m(params, z, tol)).real();
        };
        const double z0 = lo_bound_state(params.m, params.C0);
        double lo = 8.0 * z0, hi = z0 / 8.0;
        if (den(lo) * den(hi) < 0.0) t.bound_state_z = find_root(den, lo, hi, 1e-14);
    }
    return t;
}

SeparableTMatrix SeparableTMatrix::zero() {
    SeparableTMatrix t;
    t.chi_left = [](double) { return cplx{0.0, 0.0}; };
    t.chi_right = [](double) { return cplx{0.0, 0.0}; };
    t.tau = [](const ComplexEnergy&) { return cplx{0.0, 0.0}; };
    return t;
}

GreenElement green_element(const OffShellT& T, double m, const ComplexEnergy& z,
                           double p2, double p1) {
    if (z.value.imag() == 0.0)
        throw OnAxis("green_element: z must lie off the real axis");
    GreenElement g;
    g.free_part_coeff = 1.0 / (z.value - p1 * p1 / m);
    g.interacting_part = T(p2, p1, z) /
                         ((z.value - p2 * p2 / m) * (z.value - p1 * p1 / m));
    return g;
}

namespace {

struct ContourWork {
    std::vector<cplx> zs;        // contour points
    std::vector<double> wt;      // trapezoid weights
    std::vector<cplx> tau;       // tau(z_j)
    std::vector<cplx> W;         // packet integral at z_j
    bool has_pole = false;
    double zB = 0.0;
    cplx res_tau{0.0, 0.0};      // residue of tau at zB
    cplx WB{0.0, 0.0};
};

cplx packet_integral(const WavePacket& psi, double m,
                     const std::function<cplx(double)>& chi, cplx z) {
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < psi.nodes.size(); ++i) {
        const double k = psi.nodes[i];
        acc += psi.weights[i] * k * k * chi(k) * psi.amp[i] / (z - k * k / m);
    }
    return acc / (2.0 * M_PI * M_PI);
}

ContourWork prepare_contour(const SeparableTMatrix& T, const WavePacket& psi, double m,
                            const ContourSpec& contour, ExecPolicy policy) {
    // The window must cover the packet's spectral support.
    double e_support = 0.0, amax = 0.0;
    for (const auto& a : psi.amp) amax = std::max(amax, std::abs(a));
    for (std::size_t i = 0; i < psi.nodes.size(); ++i)
        if (std::abs(psi.amp[i]) > 1e-8 * amax)
            e_support = std::max(e_support, psi.nodes[i] * psi.nodes[i] / m);
    if (contour.x_window < e_support + 10.0 * contour.y0)
        throw ContourTooNarrow("evolve: window below spectral support + 10 y0");

    ContourWork w;
    const int n = contour.nodes;
    const double h = 2.0 * contour.x_window / (n - 1);
    w.zs.resize(n);
    w.wt.resize(n);
    w.tau.resize(n);
    w.W.resize(n);
    for (int j = 0; j < n; ++j) {
        w.zs[j] = cplx{-contour.x_window + j * h, contour.y0};
        w.wt[j] = (j == 0 || j == n - 1) ? 0.5 * h : h;
    }
    parallel_for_index(static_cast<std::size_t>(n), policy == ExecPolicy::Parallel,
                       [&](std::size_t j) {
                           const auto z = ComplexEnergy::off_axis(w.zs[j]);
                           w.tau[j] = T.tau(z);
                           w.W[j] = packet_integral(psi, m, T.chi_right, w.zs[j]);
                       });

    if (T.bound_state_z && std::abs(*T.bound_state_z) < contour.x_window) {
        w.has_pole = true;
        w.zB = *T.bound_state_z;
        auto inv_tau = [&](cplx z) { return 1.0 / T.tau(ComplexEnergy::off_axis(z)); };
        const double hs = 1e-6 * std::max(1.0, std::abs(w.zB));
        const cplx dinv = central_derivative(inv_tau, cplx{w.zB, 0.0}, cplx{0.0, hs});
        w.res_tau = 1.0 / dinv;
        w.WB = packet_integral(psi, m, T.chi_right, cplx{w.zB, 0.0});
    }
    return w;
}

}  // namespace

EvolveResult evolve(const SeparableTMatrix& T, const WavePacket& psi, double m, double t,
                    const ContourSpec& contour, ExecPolicy policy) {
    const ContourWork w = prepare_contour(T, psi, m, contour, policy);
    const std::size_t n = w.zs.size();
    const std::size_t ng = psi.nodes.size();
    const cplx i2pi = cplx{0.0, 1.0} / (2.0 * M_PI);

    EvolveResult out;
    out.amp.resize(ng);
    double tail_norm = 0.0;

    std::vector<std::vector<cplx>> contrib(ng, std::vector<cplx>(n));
    parallel_for_index(n, policy == ExecPolicy::Parallel, [&](std::size_t j) {
        const cplx z = w.zs[j];
        const cplx phase = std::exp(cplx{0.0, -1.0} * z * t) * w.wt[j];
        for (std::size_t i = 0; i < ng; ++i) {
            const double k = psi.nodes[i];
            cplx F = T.chi_left(k) * w.tau[j] * w.W[j] / (z - k * k / m);
            if (w.has_pole) {
                const cplx R = T.chi_left(k) * w.res_tau * w.WB / (w.zB - k * k / m);
                F -= R / (z - w.zB);
            }
            contrib[i][j] = phase * F;
        }
    });

    for (std::size_t i = 0; i < ng; ++i) {
        const double k = psi.nodes[i];
        cplx amp = std::exp(cplx{0.0, -1.0} * (k * k / m) * t) * psi.amp[i];
        amp += i2pi * pairwise_sum(contrib[i]);
        if (w.has_pole) {
            const cplx R = T.chi_left(k) * w.res_tau * w.WB / (w.zB - k * k / m);
            amp += R * std::exp(cplx{0.0, -1.0} * w.zB * t);
        }
        out.amp[i] = amp;
        const double edge = (std::abs(contrib[i].front()) + std::abs(contrib[i].back())) /
                            w.wt[0];
        const double tail_i = edge * contour.x_window / (2.0 * M_PI);
        tail_norm += psi.weights[i] * k * k * tail_i * tail_i;
    }
    out.truncation_estimate = std::sqrt(tail_norm / (2.0 * M_PI * M_PI));
    if (out.truncation_estimate > 1e-4)
        throw ContourTooNarrow("evolve: spectral-truncation estimate exceeds 1e-4");
    return out;
}

double unitarity_defect(const SeparableTMatrix& T, const WavePacket& psi, double m,
                        double t, const ContourSpec& contour, ExecPolicy policy) {
    const EvolveResult r = evolve(T, psi, m, t, contour, policy);
    double acc = 0.0;
    for (std::size_t i = 0; i < psi.nodes.size(); ++i)
        acc += psi.weights[i] * psi.nodes[i] * psi.nodes[i] * std::norm(r.amp[i]);
    acc /= 2.0 * M_PI * M_PI;
    return std::abs(acc - 1.0);
}

std::vector<cplx> survival_series(const SeparableTMatrix& T, const WavePacket& psi,
                                  double m, const std::vector<double>& ts,
                                  const ContourSpec& contour, ExecPolicy policy) {
    const ContourWork w = prepare_contour(T, psi, m, contour, policy);
    const std::size_t n = w.zs.size();

    // <psi| G0 chi_left at each node (conjugate-weighted packet integral).
    std::vector<cplx> proj(n);
    parallel_for_index(n, policy == ExecPolicy::Parallel, [&](std::size_t j) {
        cplx acc{0.0, 0.0};
        for (std::size_t i = 0; i < psi.nodes.size(); ++i) {
            const double k = psi.nodes[i];
            acc += psi.weights[i] * k * k * std::conj(psi.amp[i]) * T.chi_left(k) /
                   (w.zs[j] - k * k / m);
        }
        proj[j] = acc / (2.0 * M_PI * M_PI);
    });

    cplx res_s{0.0, 0.0};
    if (w.has_pole) {
        cplx VB{0.0, 0.0};
        for (std::size_t i = 0; i < psi.nodes.size(); ++i) {
            const double k = psi.nodes[i];
            VB += psi.weights[i] * k * k * std::conj(psi.amp[i]) * T.chi_left(k) /
                  (w.zB - k * k / m);
        }
        VB /= 2.0 * M_PI * M_PI;
        res_s = w.res_tau * VB * w.WB;
    }

    const cplx i2pi = cplx{0.0, 1.0} / (2.0 * M_PI);
    std::vector<cplx> out(ts.size());
    parallel_for_index(ts.size(), policy == ExecPolicy::Parallel, [&](std::size_t it) {
        const double t = ts[it];
        cplx free{0.0, 0.0};
        for (std::size_t i = 0; i < psi.nodes.size(); ++i) {
            const double k = psi.nodes[i];
            free += psi.weights[i] * k * k * std::norm(psi.amp[i]) *
                    std::exp(cplx{0.0, -1.0} * (k * k / m) * t);
        }
        free /= 2.0 * M_PI * M_PI;

        std::vector<cplx> terms(n);
        for (std::size_t j = 0; j < n; ++j) {
            cplx G = w.tau[j] * proj[j] * w.W[j];
            if (w.has_pole) G -= res_s / (w.zs[j] - w.zB);
            terms[j] = w.wt[j] * std::exp(cplx{0.0, -1.0} * w.zs[j] * t) * G;
        }
        cplx s = free + i2pi * pairwise_sum(terms);
        if (w.has_pole) s += res_s * std::exp(cplx{0.0, -1.0} * w.zB * t);
        out[it] = s;
    });
    return out;
}

}  // namespace gqd

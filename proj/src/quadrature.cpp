#include "gqd/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "gqd/parallel.hpp"

namespace gqd {

namespace {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Segment {
    double a, b;
    cplx value;
    double err;
};

cplx gk15(const Integrand& f, double a, double b, double& err, std::size_t& evals) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const cplx fc = f(mid);
    cplx k15 = kWgk[7] * fc;
    cplx g7 = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kXgk[i];
        const cplx fsum = f(mid + dx) + f(mid - dx);
        k15 += kWgk[i] * fsum;
        if (i % 2 == 1) g7 += kWg[i / 2] * fsum;
    }
    evals += 15;
    k15 *= half;
    g7 *= half;
    err = std::abs(k15 - g7);
    return k15;
}

}  // namespace

QuadratureResult integrate_interval(const Integrand& f, double a, double b, double tol,
                                    std::size_t budget,
                                    const std::vector<double>& breakpoints) {
    QuadratureResult res;
    if (a == b) {
        res.evaluations = 1;
        return res;
    }
    std::vector<double> edges{a};
    for (double x : breakpoints)
        if (x > a && x < b) edges.push_back(x);
    std::sort(edges.begin(), edges.end());
    edges.push_back(b);

    std::vector<Segment> segs;
    std::size_t evals = 0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        Segment s{edges[i], edges[i + 1], {}, 0.0};
        s.value = gk15(f, s.a, s.b, s.err, evals);
        segs.push_back(s);
    }

    auto totals = [&segs]() {
        cplx v{0.0, 0.0};
        double e = 0.0;
        for (const auto& s : segs) {
            v += s.value;
            e += s.err;
        }
        return std::pair<cplx, double>(v, e);
    };

    for (;;) {
        auto [v, e] = totals();
        if (e <= tol * std::max(1.0, std::abs(v)) || e == 0.0) {
            res.value = v;
            res.abs_error_estimate = e;
            res.evaluations = evals;
            return res;
        }
        if (evals > budget) throw NonConvergence("integrate_interval: evaluation budget exhausted");
        std::size_t worst = 0;
        for (std::size_t i = 1; i < segs.size(); ++i)
            if (segs[i].err > segs[worst].err) worst = i;
        Segment s = segs[worst];
        const double mid = 0.5 * (s.a + s.b);
        if (mid <= s.a || mid >= s.b)
            throw NonConvergence("integrate_interval: interval too small to refine");
        Segment left{s.a, mid, {}, 0.0}, right{mid, s.b, {}, 0.0};
        left.value = gk15(f, left.a, left.b, left.err, evals);
        right.value = gk15(f, right.a, right.b, right.err, evals);
        segs[worst] = left;
        segs.push_back(right);
    }
}

QuadratureResult radial_integral(const Integrand& f, double tol) {
    RadialOptions opt;
    opt.tol = tol;
    return radial_integral(f, opt);
}

QuadratureResult radial_integral(const Integrand& f, const RadialOptions& opt) {
    const double inv2pi2 = 1.0 / (2.0 * M_PI * M_PI);
    auto g = [&f](double k) { return k * k * f(k); };

    const bool finite = opt.upper_limit > 0.0;
    const double K = finite ? std::min(opt.k_split, opt.upper_limit) : opt.k_split;

    QuadratureResult core = integrate_interval(g, 0.0, K, opt.tol, opt.budget, opt.breakpoints);
    QuadratureResult tail;
    if (finite) {
        if (opt.upper_limit > K)
            tail = integrate_interval(g, K, opt.upper_limit, opt.tol, opt.budget, opt.breakpoints);
    } else {
        // k = K/t maps [K, inf) to (0, 1]; dk = -K/t^2 dt.
        auto gt = [&g, K](double t) { return g(K / t) * K / (t * t); };
        std::vector<double> tb;
        for (double x : opt.breakpoints)
            if (x > K) tb.push_back(K / x);
        tail = integrate_interval(gt, 0.0, 1.0, opt.tol, opt.budget, tb);
    }

    QuadratureResult res;
    res.value = inv2pi2 * (core.value + tail.value);
    res.abs_error_estimate = inv2pi2 * (core.abs_error_estimate + tail.abs_error_estimate);
    res.evaluations = core.evaluations + tail.evaluations;
    if (res.evaluations > opt.budget)
        throw NonConvergence("radial_integral: evaluation budget exhausted");
    return res;
}

cplx pv_pole_integral(const Integrand& f, double p, CutSide side, double tol) {
    PvOptions opt;
    opt.tol = tol;
    return pv_pole_integral(f, p, side, opt);
}

cplx pv_pole_integral(const Integrand& f, double p, CutSide side, const PvOptions& opt) {
    if (side == CutSide::OffAxis)
        throw GqdError("pv_pole_integral: a cut side must be specified");
    if (!(p > 0.0)) throw GqdError("pv_pole_integral: pole momentum must be positive");

    const double inv2pi2 = 1.0 / (2.0 * M_PI * M_PI);
    const cplx fp = f(p);
    const double scale = std::max(p, 1.0);

    // f'(p) by Richardson central difference, for the removable point k = p.
    const double hd = 1e-5 * scale;
    const cplx d1 = (f(p + hd) - f(p - hd)) / (2.0 * hd);
    const cplx d2 = (f(p + 0.5 * hd) - f(p - 0.5 * hd)) / hd;
    const cplx fprime = (4.0 * d2 - d1) / 3.0;

    // (k^2 f(k) - p^2 f(p)) / (p^2 - k^2), smooth across k = p.
    auto sub = [&](double k) -> cplx {
        if (std::abs(k - p) < 1e-8 * scale) return -fp - 0.5 * p * fprime;
        return (k * k * f(k) - p * p * fp) / ((p - k) * (p + k));
    };

    const double two_p = 2.0 * p;
    const bool finite = opt.upper_limit > 0.0;
    if (finite && opt.upper_limit <= two_p)
        throw GqdError("pv_pole_integral: upper limit must exceed 2p");
    if (finite && opt.f_inf != cplx{0.0, 0.0})
        throw GqdError("pv_pole_integral: f_inf requires an infinite range");

    auto run_core = [&](double lo, double hi) {
        std::vector<double> bs = opt.breakpoints;
        bs.push_back(p);
        return integrate_interval(sub, lo, hi, opt.tol, opt.budget, bs);
    };

    cplx core;
    if (opt.panels > 1) {
        // Fixed decomposition, panel results combined by a pairwise tree sum.
        std::vector<cplx> vals(static_cast<std::size_t>(opt.panels));
        const double h = two_p / opt.panels;
        parallel_for_index(static_cast<std::size_t>(opt.panels), opt.parallel,
                           [&](std::size_t i) {
                               vals[i] = run_core(i * h, (i + 1) * h).value;
                           });
        core = pairwise_sum(vals);
    } else {
        core = run_core(0.0, two_p).value;
    }
    // Exact PV of the subtracted constant over [0, 2p].
    core += p * fp * (0.5 * std::log(3.0));
    // f_inf convention contribution on [0, 2p].
    core += opt.f_inf * two_p;

    // Tail region.  With an infinite range, k^2 (f - f_inf)/(p^2 - k^2) decays
    // and the f_inf part contributes -f_inf (p/2) ln 3 exactly once the
    // scaleless linear divergence is dropped.  A finite upper limit needs no
    // convention: integrate plainly (f_inf must be zero there).
    cplx tail;
    if (finite) {
        auto plain = [&](double k) -> cplx {
            return (k * k * f(k)) / ((p - k) * (p + k));
        };
        tail = integrate_interval(plain, two_p, opt.upper_limit, opt.tol, opt.budget,
                                  opt.breakpoints).value;
    } else {
        auto tail_fn = [&](double k) -> cplx {
            return (k * k * (f(k) - opt.f_inf)) / ((p - k) * (p + k));
        };
        auto tail_mapped = [&](double t) { return tail_fn(two_p / t) * two_p / (t * t); };
        std::vector<double> tb;
        for (double x : opt.breakpoints)
            if (x > two_p) tb.push_back(two_p / x);
        tail = integrate_interval(tail_mapped, 0.0, 1.0, opt.tol, opt.budget, tb).value;
        tail += -opt.f_inf * p * (0.5 * std::log(3.0));
    }

    cplx value = inv2pi2 * (core + tail);
    const double sgn = (side == CutSide::Above) ? -1.0 : 1.0;
    value += cplx{0.0, sgn * p} * fp / (4.0 * M_PI);
    return value;
}

double find_root(const RealFn& f, double a, double b, double tol, int max_iter) {
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0.0) throw GqdError("find_root: no sign change on bracket");
    double c = a, fc = fa, d = b - a, e = d;
    for (int it = 0; it < max_iter; ++it) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * tol;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) return b;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double s = fb / fa, pq, qq, rq;
            if (a == c) {
                pq = 2.0 * xm * s;
                qq = 1.0 - s;
            } else {
                qq = fa / fc;
                rq = fb / fc;
                pq = s * (2.0 * xm * qq * (qq - rq) - (b - a) * (rq - 1.0));
                qq = (qq - 1.0) * (rq - 1.0) * (s - 1.0);
            }
            if (pq > 0.0) qq = -qq;
            pq = std::abs(pq);
            if (2.0 * pq < std::min(3.0 * xm * qq - std::abs(tol1 * qq), std::abs(e * qq))) {
                e = d;
                d = pq / qq;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
        fb = f(b);
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a; fc = fa;
            d = b - a; e = d;
        }
    }
    return b;
}

std::pair<double, double> linear_fit(const std::vector<double>& x,
                                     const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double den = n * sxx - sx * sx;
    const double b = (n * sxy - sx * sy) / den;
    const double a = (sy - b * sx) / n;
    return {a, b};
}

}  // namespace gqd

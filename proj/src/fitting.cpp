#include "gqd/fitting.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <set>

namespace gqd {

namespace {

// splitmix64
std::uint64_t next_u64(std::uint64_t& s) {
    s += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace

GaussianRng::GaussianRng(std::uint64_t seed) : state_(seed) {}

double GaussianRng::uniform() {
    return (next_u64(state_) >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

double GaussianRng::next() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double u1 = uniform(), u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    have_spare_ = true;
    spare_ = r * std::sin(2.0 * M_PI * u2);
    return r * std::cos(2.0 * M_PI * u2);
}

PhaseShiftData synth_phase_shifts(const std::function<double(double)>& pcotdelta_of_p,
                                  const std::vector<double>& p_grid, double noise,
                                  std::uint64_t seed) {
    GaussianRng rng(seed);
    PhaseShiftData out;
    for (double p : p_grid) {
        const double delta = std::atan2(p, pcotdelta_of_p(p));
        const double factor = noise > 0.0 ? 1.0 + noise * rng.next() : 1.0;
        out.push_back({p, delta * factor, noise});
    }
    return out;
}

namespace {

double pcot_of_point(const PhasePoint& pt) { return pt.p / std::tan(pt.delta); }

double pcot_sigma(const PhasePoint& pt) {
    if (pt.sigma <= 0.0) return 1.0;
    const double s = std::sin(pt.delta);
    return std::abs(pt.p / (s * s)) * std::abs(pt.delta) * pt.sigma;
}

}  // namespace

EreFit fit_ere(const PhaseShiftData& data, int n_shapes) {
    const int npar = 1 + n_shapes;
    std::set<double> distinct;
    for (const auto& pt : data) distinct.insert(pt.p);
    if (static_cast<int>(distinct.size()) < npar || static_cast<int>(data.size()) < npar + 1)
        throw RankDeficient("fit_ere: not enough distinct points");

    const int n = static_cast<int>(data.size());
    Eigen::MatrixXd X(n, npar);
    Eigen::VectorXd y(n), w(n);
    for (int i = 0; i < n; ++i) {
        const double p2 = data[i].p * data[i].p;
        double b = 1.0;
        for (int j = 0; j < npar; ++j) {
            X(i, j) = b;
            b *= p2;
        }
        y(i) = pcot_of_point(data[i]);
        const double s = pcot_sigma(data[i]);
        w(i) = 1.0 / (s * s);
    }
    const Eigen::MatrixXd Xw = w.cwiseSqrt().asDiagonal() * X;
    const Eigen::VectorXd yw = w.cwiseSqrt().asDiagonal() * y;
    const Eigen::MatrixXd AtA = Xw.transpose() * Xw;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(AtA);
    if (svd.singularValues()(npar - 1) < 1e-13 * svd.singularValues()(0))
        throw RankDeficient("fit_ere: singular design matrix");

    const Eigen::VectorXd theta = AtA.ldlt().solve(Xw.transpose() * yw);
    const Eigen::MatrixXd cov_a = AtA.inverse();
    const Eigen::VectorXd res = Xw * theta - yw;

    const double A0 = theta(0);
    if (A0 == 0.0) throw RankDeficient("fit_ere: vanishing leading coefficient");
    EreFit fit{EreParams(-1.0 / A0), {}, res.squaredNorm()};
    std::vector<double> jac(npar, 0.0);  // d(param)/d(A)
    jac[0] = 1.0 / (A0 * A0);            // a = -1/A0
    for (int j = 1; j < npar; ++j) {
        fit.params.shapes.push_back(2.0 * theta(j));
        jac[j] = 2.0;
    }
    fit.covariance.assign(static_cast<std::size_t>(npar) * npar, 0.0);
    for (int i = 0; i < npar; ++i)
        for (int j = 0; j < npar; ++j)
            fit.covariance[static_cast<std::size_t>(i) * npar + j] =
                jac[i] * cov_a(i, j) * jac[j];
    return fit;
}

cplx probe_a11_model(const EftFitModel& model, double C0, double c2, double calJ1,
                     const ProbePoint& kin) {
    const EffectiveOperator op =
        make_nlo_operator(model.m, C0, cplx{c2, 0.0}, calJ1, model.lambda, false);
    const double st = std::sqrt(std::max(0.0, 1.0 - kin.cos_theta2 * kin.cos_theta2));
    const auto k = ProbeKinematics::cm(model.m, {kin.p1_mag, 0.0, 0.0},
                                       {0.0, 0.0, kin.q_mag}, {st, 0.0, kin.cos_theta2});
    ProbeOptions opt;
    opt.mode = ProbeMode::Contact;
    opt.tol = 1e-8;
    return amplitude_external(k, model.potential, op, opt).a11;
}

ProbeData synth_probe_data(const EftFitModel& model, double C0, double c2, double calJ1,
                           const std::vector<ProbePoint>& kinematics, double noise,
                           std::uint64_t seed) {
    GaussianRng rng(seed);
    ProbeData out;
    for (const auto& kin : kinematics) {
        ProbePoint pt = kin;
        const cplx a = probe_a11_model(model, C0, c2, calJ1, pt);
        const double fr = noise > 0.0 ? 1.0 + noise * rng.next() : 1.0;
        const double fi = noise > 0.0 ? 1.0 + noise * rng.next() : 1.0;
        pt.a11 = cplx{a.real() * fr, a.imag() * fi};
        pt.sigma = noise;
        out.push_back(pt);
    }
    return out;
}

namespace {

Eigen::VectorXd eft_residuals(const EftFitModel& model, const PhaseShiftData& on_shell,
                              const ProbeData& probe, const Eigen::Vector3d& th) {
    const double C0 = th(0), c2 = th(1), J1 = th(2);
    const int n = static_cast<int>(on_shell.size()) + 2 * static_cast<int>(probe.size());
    Eigen::VectorXd r(n);
    int idx = 0;
    for (const auto& pt : on_shell) {
        // Order-consistent model: p cot d = -(4pi/m)(1/C0 + (J1 - 2 c2/C0) p^2).
        const double p2 = pt.p * pt.p;
        const double modelv =
            -(4.0 * M_PI / model.m) * (1.0 / C0 + (J1 - 2.0 * c2 / C0) * p2);
        r(idx++) = (modelv - pcot_of_point(pt)) / pcot_sigma(pt);
    }
    for (const auto& pt : probe) {
        const cplx a = probe_a11_model(model, C0, c2, J1, pt);
        const double s = pt.sigma > 0.0 ? pt.sigma * std::abs(pt.a11) : 1.0;
        r(idx++) = (a.real() - pt.a11.real()) / s;
        r(idx++) = (a.imag() - pt.a11.imag()) / s;
    }
    return r;
}

}  // namespace

EftFit fit_eft(const EftFitModel& model, const PhaseShiftData& on_shell,
               const ProbeData& probe, bool require_separation,
               double C0_init, double c2_init, double calJ1_init) {
    if (require_separation && probe.empty())
        throw Unidentifiable(
            "fit_eft: separated c2 and J1 require probe observables");
    if (static_cast<int>(on_shell.size()) + 2 * static_cast<int>(probe.size()) < 4)
        throw RankDeficient("fit_eft: not enough data rows");
    {
        std::set<double> distinct;
        for (const auto& pt : on_shell) distinct.insert(pt.p);
        if (probe.empty() && static_cast<int>(distinct.size()) < 2)
            throw RankDeficient("fit_eft: degenerate on-shell data");
    }

    Eigen::Vector3d th(C0_init, c2_init, calJ1_init);
    auto resid = [&](const Eigen::Vector3d& t) {
        return eft_residuals(model, on_shell, probe, t);
    };

    double lm = 1e-3;
    Eigen::VectorXd r = resid(th);
    EftFit fit;
    Eigen::Matrix3d JtJ;
    for (int it = 0; it < 200; ++it) {
        fit.iterations = it + 1;
        Eigen::MatrixXd J(r.size(), 3);
        for (int j = 0; j < 3; ++j) {
            const double h = 1e-6 * std::max(std::abs(th(j)), 1e-3);
            Eigen::Vector3d tp = th, tm = th;
            tp(j) += h;
            tm(j) -= h;
            J.col(j) = (resid(tp) - resid(tm)) / (2.0 * h);
        }
        JtJ = J.transpose() * J;
        const Eigen::Vector3d g = J.transpose() * r;

        Eigen::JacobiSVD<Eigen::MatrixXd> svd(J);
        fit.singular_values.assign(svd.singularValues().data(),
                                   svd.singularValues().data() + 3);

        // Damped step; regularize exactly flat directions.
        Eigen::Matrix3d A = JtJ;
        const double ridge = lm * std::max(JtJ.trace() / 3.0, 1e-30);
        for (int d = 0; d < 3; ++d) A(d, d) += ridge;
        const Eigen::Vector3d step = A.ldlt().solve(-g);
        const Eigen::Vector3d cand = th + step;
        const Eigen::VectorXd rc = resid(cand);
        if (rc.squaredNorm() <= r.squaredNorm()) {
            const double rel = step.norm() / std::max(th.norm(), 1e-12);
            th = cand;
            r = rc;
            lm = std::max(lm * 0.3, 1e-12);
            if (rel < 1e-10) break;
        } else {
            lm *= 10.0;
            if (lm > 1e12) break;
        }
    }

    fit.C0 = th(0);
    fit.c2 = th(1);
    fit.calJ1 = th(2);
    const double s_max = fit.singular_values.front();
    const double s_min = fit.singular_values.back();
    fit.separated = !probe.empty() && s_min > 1e-6 * s_max;
    if (require_separation && !fit.separated)
        throw Unidentifiable("fit_eft: flat direction along (c2, J1)");

    // Pseudo-inverse covariance; flat directions get a huge variance.
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(JtJ, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::Vector3d inv;
    for (int i = 0; i < 3; ++i) {
        const double s = svd.singularValues()(i);
        inv(i) = (s > 1e-14 * svd.singularValues()(0)) ? 1.0 / s : 1e30;
    }
    const Eigen::Matrix3d cov =
        svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
    fit.covariance.assign(cov.data(), cov.data() + 9);
    return fit;
}

}  // namespace gqd

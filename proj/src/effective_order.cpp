#include "gqd/effective_order.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <stdexcept>
#include <tuple>

namespace gqd {

EffectiveOperator::EffectiveOperator(EftParams params_, bool validate)
    : params(std::move(params_)) {
    if (validate && tail_concrete()) {
        for (int n = 1; n <= order(); ++n) {
            const double r = phi_constraint_residual(*this, n);
            if (!(r < 1e-6))
                throw std::invalid_argument(
                    "EffectiveOperator: tail violates the J_n constraint");
        }
    }
}

cplx calM_n(const EffectiveOperator& op, const ComplexEnergy& z) {
    cplx acc = m0(z, op.params.m);
    for (int n = 1; n <= op.order(); ++n) acc += m_n(op.params, z, n);
    return acc;
}

cplx beff(const EffectiveOperator& op, const ComplexEnergy& z, double p2, double p1) {
    const cplx M = calM_n(op, z);
    if (std::abs(M) < 1e-300) throw PoleHit("beff: calM_N vanishes (z = 0?)");
    const cplx inv = 1.0 / M;
    return -op.params.form.psi_conj(p2) * op.params.form.psi(p1) *
           (inv + inv * inv / op.params.C0);
}

double phi_constraint_residual(const EffectiveOperator& op, int n, double tol) {
    if (n < 1 || n > op.order())
        throw IndexOutOfOrder("phi_constraint_residual: 1 <= n <= N required");
    if (!op.tail_concrete())
        throw GqdError("phi_constraint_residual: needs a concrete tail");
    const double q = calj_from_form(op.params.form, op.params.m, n, tol);
    const double j = op.params.calj(n);
    return std::abs(q - j) / std::max(1.0, std::abs(j));
}

double default_phi1_lambda1_first(cplx c2, double calJ1, double m) {
    return 2.0 * M_PI * std::sqrt(M_PI) * calJ1 / (m * c2.real());
}

namespace {

// Solves A*(re_c2 * L + |c2|^2 L^3 / (8 sqrt 2)) = J1, A = m sqrt(pi)/(2 pi^2),
// which is the n = 1 constraint for the Gaussian-damped tail in closed form.
double calibrate_gaussian_scale(cplx c2, double calJ1, double m) {
    const double re = c2.real();
    if (re == 0.0) throw SignMismatch("default_phi1: Re c2 must be nonzero");
    if (!(calJ1 / re > 0.0))
        throw SignMismatch("default_phi1: J1 / Re c2 must be positive");
    const double A = m * std::sqrt(M_PI) / (2.0 * M_PI * M_PI);
    const double cc = std::norm(c2) / (8.0 * std::sqrt(2.0));
    auto g = [&](double L) { return A * (re * L + cc * L * L * L) - calJ1; };
    const double guess = std::abs(default_phi1_lambda1_first(c2, calJ1, m));
    double lo = 1e-8 * guess, hi = lo;
    for (int i = 0; i < 200 && g(hi) < 0.0; ++i) hi *= 1.6;
    if (g(hi) < 0.0 || g(lo) > 0.0)
        throw SignMismatch("default_phi1: no positive tail scale satisfies the constraint");
    return find_root(g, lo, hi, 1e-14 * guess);
}

double calibrate_rational_scale(cplx c2, double calJ1, double m) {
    const double re = c2.real();
    if (re == 0.0 || !(calJ1 / re > 0.0))
        throw SignMismatch("bounded_rational_tail: J1 / Re c2 must be positive");
    // m/(2pi) * (re*L/2 + |c2|^2 L^3/32) = J1
    const double A = m / (2.0 * M_PI);
    const double cc = std::norm(c2) / 32.0;
    auto g = [&](double L) { return A * (0.5 * re * L + cc * L * L * L) - calJ1; };
    double lo = 1e-10, hi = 1.0;
    for (int i = 0; i < 300 && g(hi) < 0.0; ++i) hi *= 1.6;
    if (g(hi) < 0.0 || g(lo) > 0.0)
        throw SignMismatch("bounded_rational_tail: no positive tail scale");
    return find_root(g, lo, hi, 1e-12);
}

}  // namespace

DefaultTail default_phi1(cplx c2, double calJ1, double m) {
    DefaultTail out;
    out.lambda1_first = default_phi1_lambda1_first(c2, calJ1, m);
    out.lambda1 = calibrate_gaussian_scale(c2, calJ1, m);
    const double L2 = out.lambda1 * out.lambda1;
    out.fn = [c2, L2](double p) -> cplx {
        return c2 * p * p * std::expm1(-p * p / L2);
    };
    return out;
}

DefaultTail bounded_rational_tail(cplx c2, double calJ1, double m) {
    DefaultTail out;
    out.lambda1_first = default_phi1_lambda1_first(c2, calJ1, m);
    out.lambda1 = calibrate_rational_scale(c2, calJ1, m);
    const double L2 = out.lambda1 * out.lambda1;
    out.fn = [c2, L2](double p) -> cplx {
        const double u = 1.0 + p * p / L2;
        return c2 * p * p * (1.0 / (u * u) - 1.0);
    };
    return out;
}

cplx t_effective(const EffectiveOperator& op, const ComplexEnergy& z, double p2, double p1,
                 EffVariant variant, double tol) {
    cplx den = 1.0 / op.params.C0 - calM_n(op, z);
    if (variant == EffVariant::Full) {
        if (!op.tail_concrete())
            throw GqdError("t_effective: the full variant needs a concrete tail");
        den -= big_m_remainder(op.params, z, op.order(), tol);
    }
    if (std::abs(den) * std::abs(op.params.C0) < 1e-12)
        throw PoleHit("t_effective: pole");
    return op.params.form.psi_conj(p2) * op.params.form.psi(p1) / den;
}

OffShellT make_effective_evaluator(const EffectiveOperator& op, EffVariant variant,
                                   double tol) {
    auto opc = std::make_shared<EffectiveOperator>(op);
    auto cache = std::make_shared<std::map<std::tuple<double, double, int>, cplx>>();
    return [opc, variant, tol, cache](double p2, double p1, const ComplexEnergy& z) {
        const auto key = std::make_tuple(z.value.real(), z.value.imag(),
                                         static_cast<int>(z.side));
        auto it = cache->find(key);
        if (it == cache->end()) {
            cplx den = 1.0 / opc->params.C0 - calM_n(*opc, z);
            if (variant == EffVariant::Full)
                den -= big_m_remainder(opc->params, z, opc->order(), tol);
            it = cache->emplace(key, 1.0 / den).first;
        }
        return opc->params.form.psi_conj(p2) * opc->params.form.psi(p1) * it->second;
    };
}

cplx effective_onshell(const EffectiveOperator& op, double p) {
    const double p2 = p * p;
    double num = 0.0;
    for (int n = op.order(); n >= 0; --n) num = num * p2 + op.params.form.sigma(n);
    const cplx den = 1.0 / op.params.C0 -
                     calM_n(op, ComplexEnergy::above(p2 / op.params.m));
    if (std::abs(den) * std::abs(op.params.C0) < 1e-12)
        throw PoleHit("effective_onshell: pole");
    return -num / den;
}

EffectiveOperator make_nlo_operator(double m, double C0, cplx c2, double calJ1,
                                    double lambda, bool concrete_tail) {
    if (concrete_tail) {
        DefaultTail tail = default_phi1(c2, calJ1, m);
        FormFactor form({cplx{1.0, 0.0}, c2}, lambda, tail.fn, tail.lambda1);
        return EffectiveOperator(EftParams(m, C0, std::move(form), {calJ1}));
    }
    FormFactor form({cplx{1.0, 0.0}, c2}, lambda);
    return EffectiveOperator(EftParams(m, C0, std::move(form), {calJ1}));
}

}  // namespace gqd

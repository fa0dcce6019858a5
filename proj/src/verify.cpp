#include "gqd/verify.hpp"

#include <cmath>

#include "gqd/evolution.hpp"
#include "gqd/expansion.hpp"
#include "gqd/presets.hpp"
#include "gqd/renorm_bridge.hpp"
#include "gqd/separable_model.hpp"

namespace gqd {

namespace {

EffectiveOperator op_for(const std::string& preset) {
    if (preset == "lo-unit") {
        // Order-0 wrapper around the leading-order theory.
        return EffectiveOperator(presets::lo_unit());
    }
    if (preset == "nlo-unit" || preset.empty()) return presets::nlo_unit();
    throw ConfigError("unknown preset: " + preset);
}

void push(std::vector<CheckResult>& out, std::string name, double value, double thr) {
    out.push_back({std::move(name), value < thr, value, thr});
}

std::vector<CheckResult> suite_gde(const std::string& preset) {
    std::vector<CheckResult> out;
    const auto op = op_for(preset);
    const auto eval = make_effective_evaluator(op, op.tail_concrete()
                                                       ? EffVariant::Full
                                                       : EffVariant::Truncated);
    const double m = op.params.m;
    const cplx zs[] = {{-1.0, 0.4}, {0.8, 1.1}, {-0.3, -0.9}, {2.5, 0.7}, {-2.0, 0.0}};
    int i = 0;
    for (cplx z : zs) {
        const double r = gde_residual(eval, m, ComplexEnergy::off_axis(z), 0.3, 0.2);
        push(out, "gde-residual/z" + std::to_string(i++), r, 1e-6);
    }
    return out;
}

std::vector<CheckResult> suite_optical(const std::string& preset) {
    std::vector<CheckResult> out;
    const auto op = op_for(preset);
    const double m = op.params.m;
    for (double p : {0.05, 0.2, 0.5, 0.9}) {
        const cplx a_lo = -lo_t(ComplexEnergy::above(p * p / m), m, op.params.C0);
        push(out, "optical/lo/p=" + std::to_string(p),
             onshell_unitarity_defect(a_lo, p, m), 1e-10);
        const cplx a_eff = effective_onshell(op, p);
        push(out, "optical/effective/p=" + std::to_string(p),
             onshell_unitarity_defect(a_eff, p, m), 1e-10);
        if (op.tail_concrete()) {
            const cplx a_full =
                -t_offshell(op.params, ComplexEnergy::above(p * p / m), p, p);
            push(out, "optical/full/p=" + std::to_string(p),
                 onshell_unitarity_defect(a_full, p, m), 1e-10);
        }
    }
    return out;
}

std::vector<CheckResult> suite_mu(const std::string& preset) {
    std::vector<CheckResult> out;
    const auto op = op_for(preset);
    const auto base = c2n_from_formfactor(op.params, 24);
    const double a = op.params.m * op.params.C0 / (4.0 * M_PI);
    for (double mu : {0.5 / a, 2.0 / a}) {
        const auto shifted = shift_couplings(base, mu);
        double worst = 0.0;
        for (int i = 1; i <= 20; ++i) {
            const double p = 0.5 * i / 20.0;
            worst = std::max(worst, std::abs(ksw_amplitude(base, p) -
                                             ksw_amplitude(shifted, p)));
        }
        push(out, "mu-invariance/mu=" + std::to_string(mu), worst, 1e-12);
    }
    return out;
}

std::vector<CheckResult> suite_rg(const std::string& preset) {
    std::vector<CheckResult> out;
    const auto op = op_for(preset);
    const auto base = c2n_from_formfactor(op.params, 8);
    const double a = op.params.m * op.params.C0 / (4.0 * M_PI);
    for (int n : {0, 1}) {
        double worst = 0.0;
        for (double mu : {0.1 / a, 0.5 / a, 2.0 / a, 10.0 / a})
            worst = std::max(worst, rg_residual(base, n, mu));
        push(out, "rg/n=" + std::to_string(n), worst, 1e-9);
    }
    return out;
}

std::vector<CheckResult> suite_unitarity(const std::string&) {
    std::vector<CheckResult> out;
    const double m = 1.0, C0 = 4.0 * M_PI;
    const auto T = SeparableTMatrix::from_lo(m, C0);
    const auto psi = WavePacket::gaussian(1.0, 0.5);
    const ContourSpec contour(0.05, 40.0, 1600);
    for (double t : {0.0, 1.0, 2.0})
        push(out, "unitarity-evolution/t=" + std::to_string(t),
             unitarity_defect(T, psi, m, t, contour), 1e-4);
    return out;
}

std::vector<CheckResult> suite_renorm(const std::string&) {
    std::vector<CheckResult> out;
    const double m = 1.0, cr = 4.0 * M_PI;
    const auto z = ComplexEnergy::real_neg(-1.0);
    const cplx ref = renormalized_lo(m, cr, z);
    double prev = 1e300;
    bool monotone = true;
    std::vector<cplx> vals;
    for (double lam : {50.0, 100.0, 200.0, 400.0}) {
        const CutoffScheme s(Regulator::Sharp, lam, cr);
        const cplx v = t_cutoff(s, m, z, 0.0, 0.0);
        vals.push_back(v);
        const double err = std::abs(v - ref);
        if (err >= prev) monotone = false;
        prev = err;
    }
    out.push_back({"renorm-limit/monotone", monotone, monotone ? 0.0 : 1.0, 1.0});
    // One Richardson level (error ~ 1/Lambda).
    const cplx extrap = 2.0 * vals[3] - vals[2];
    push(out, "renorm-limit/extrapolated", std::abs(extrap - ref) / std::abs(ref), 1e-6);
    return out;
}

}  // namespace

std::vector<std::string> verify_suite_names() {
    return {"gde-residual", "optical", "mu-invariance", "rg", "unitarity-evolution",
            "renorm-limit"};
}

std::vector<CheckResult> run_verify_suite(const std::string& suite,
                                          const std::string& preset) {
    if (suite == "gde-residual") return suite_gde(preset);
    if (suite == "optical") return suite_optical(preset);
    if (suite == "mu-invariance") return suite_mu(preset);
    if (suite == "rg") return suite_rg(preset);
    if (suite == "unitarity-evolution") return suite_unitarity(preset);
    if (suite == "renorm-limit") return suite_renorm(preset);
    if (suite == "all" || suite.empty()) {
        std::vector<CheckResult> out;
        for (const auto& s : verify_suite_names()) {
            auto r = run_verify_suite(s, preset);
            out.insert(out.end(), r.begin(), r.end());
        }
        return out;
    }
    throw ConfigError("unknown verify suite: " + suite);
}

}  // namespace gqd

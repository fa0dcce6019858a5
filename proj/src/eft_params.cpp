#include "gqd/eft_params.hpp"

#include <cmath>
#include <stdexcept>

#include "gqd/quadrature.hpp"

namespace gqd {

EftParams::EftParams(double m_, double C0_, FormFactor form_, std::vector<double> calJ_)
    : m(m_), C0(C0_), form(std::move(form_)), calJ(std::move(calJ_)) {
    if (!(m > 0.0)) throw std::invalid_argument("EftParams: m must be positive");
    if (C0 == 0.0) throw std::invalid_argument("EftParams: C0 must be nonzero");
    if (static_cast<int>(calJ.size()) != form.order())
        throw std::invalid_argument("EftParams: need one J_n per kept order");
}

double EftParams::calj(int n) const {
    if (n < 1 || n > static_cast<int>(calJ.size())) return 0.0;
    return calJ[static_cast<std::size_t>(n - 1)];
}

double calj_from_form(const FormFactor& form, double m, int n, double tol) {
    auto f = [&form, n](double k) -> cplx {
        return form.f_n(k, n) / std::pow(k * k, n + 1);
    };
    RadialOptions opt;
    opt.tol = tol;
    opt.k_split = 8.0 * form.scale_hint();
    return m * radial_integral(f, opt).value.real();
}

EftParams EftParams::from_form_factor(double m, double C0, FormFactor form, double tol) {
    std::vector<double> js;
    for (int n = 1; n <= form.order(); ++n) js.push_back(calj_from_form(form, m, n, tol));
    return EftParams(m, C0, std::move(form), std::move(js));
}

}  // namespace gqd

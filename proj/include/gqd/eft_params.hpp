#pragma once

#include <vector>

#include "gqd/form_factor.hpp"

namespace gqd {

/// Contact-theory parameter set: mass, leading coupling, form factor and the
/// tail integrals J_n = m int d3k/(2pi)^3 F_n(k)/k^{2(n+1)}, n = 1..N.
struct EftParams {
    double m;
    double C0;
    FormFactor form;
    std::vector<double> calJ;

    EftParams(double m_, double C0_, FormFactor form_, std::vector<double> calJ_);

    int order() const { return form.order(); }
    double calj(int n) const;  // J_n, zero beyond the stored order

    /// Derives the J_n from the concrete form factor (tail included) by
    /// quadrature.
    static EftParams from_form_factor(double m, double C0, FormFactor form,
                                      double tol = 1e-11);
};

/// J_n of a concrete form factor by quadrature.
double calj_from_form(const FormFactor& form, double m, int n, double tol = 1e-11);

}  // namespace gqd

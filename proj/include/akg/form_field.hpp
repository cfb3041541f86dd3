// Differential forms on the torus: one scalar field per increasing
// multi-index, wedge products with dealiasing, spectral exterior derivative,
// and the constant-coefficient symplectic operators L and Lambda.
#pragma once

#include <vector>

#include "akg/matrix_field.hpp"
#include "akg/multi_index.hpp"
#include "akg/scalar_field.hpp"

namespace akg {

class FormField {
  public:
    FormField() = default;
    // zero form field of the given degree
    FormField(GridSpec grid, int degree, bool is_real = true);
    FormField(GridSpec grid, int degree, std::vector<ScalarField> comps);

    const GridSpec& grid() const { return grid_; }
    int degree() const { return degree_; }
    int ncomps() const { return int(comps_.size()); }
    bool is_real() const;

    const ScalarField& comp(int i) const { return comps_[i]; }
    ScalarField& comp(int i) { return comps_[i]; }
    const std::vector<ScalarField>& comps() const { return comps_; }

    // Component of the increasing multi-index with the given mask.
    const ScalarField& comp_mask(Mask m) const;

    FormField& operator+=(const FormField& o);
    FormField& operator-=(const FormField& o);
    FormField& operator*=(double s);
    FormField& operator*=(cplx s);
    friend FormField operator+(FormField a, const FormField& b) { return a += b; }
    friend FormField operator-(FormField a, const FormField& b) { return a -= b; }
    friend FormField operator*(double s, FormField a) { return a *= s; }
    friend FormField operator*(cplx s, FormField a) { return a *= s; }

    FormField real_part() const;
    FormField conjugate() const;

    // max over components of max-abs grid value
    double max_abs() const;
    // flat (component-wise) L2 norm; metric-free scale measure
    double norm_flat() const;

    static FormField from_scalar(const ScalarField& f);
    const ScalarField& as_scalar() const;

  private:
    GridSpec grid_;
    int degree_ = 0;
    std::vector<ScalarField> comps_;
};

// Basis covector dx^axis as a constant 1-form.
FormField basis_one_form(const GridSpec& grid, int axis);

// Wedge product with per-component dealiased multiplication (padding done
// once per component, not once per product pair).
FormField wedge(const FormField& a, const FormField& b);

// Multiply every component by a scalar field (dealiased).
FormField multiply(const ScalarField& f, const FormField& a, bool dealias = true);

// Spectral exterior derivative. d(d(a)) vanishes identically.
FormField exterior_derivative(const FormField& a);

// Adjoint of exterior_derivative in the flat component-wise L2 inner
// product; building block for the metric codifferential.
FormField exterior_derivative_flat_adjoint(const FormField& a);

// r-fold wedge with the standard symplectic form (constant coefficients).
FormField lefschetz(const FormField& a, int r = 1);

// Contraction with the Poisson bivector of the standard symplectic form.
FormField dual_lefschetz(const FormField& a);

// Functorial extension of a pointwise covector map to k-forms: applies the
// k-th compound matrix of T at every grid point. If T_inv/det_t are given
// and k > dim/2, minors are evaluated through the complementary-minor
// identity, which is much cheaper for high degrees.
FormField pointwise_apply(const FormField& a, const MatrixField& T);
FormField pointwise_apply(const FormField& a, const MatrixField& T, const MatrixField& T_inv,
                          const ScalarField& det_t);

// Integral over the torus of the wedge of two forms with complementary
// degrees (p + q = 2m), evaluated alias-free on the padded grid.
double integrate_wedge(const FormField& a, const FormField& b);

// Top-degree form as a scalar coefficient field: a = c(x) dx^0...dx^{2m-1}.
ScalarField top_coefficient(const FormField& a);

// Random band-limited real k-form (each component an independent field).
FormField random_form(const GridSpec& grid, int degree, int band, RngStream& rng);

}  // namespace akg

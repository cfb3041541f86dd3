// Scalar fields on the periodic grid with dual collocation/spectral views,
// spectral differentiation, dealiased products and exact integration.
#pragma once

#include <functional>
#include <optional>

#include "akg/fft.hpp"
#include "akg/grid.hpp"
#include "akg/util.hpp"

namespace akg {

// A field is identified with the trigonometric interpolant of its grid
// values. Fields produced by this library keep the Nyquist plane empty, so
// the interpolant is unambiguous and products routed through the 3/2 padded
// grid are exact for band-limited data.
class ScalarField {
  public:
    ScalarField() = default;
    ScalarField(GridSpec grid, bool is_real = true)
        : grid_(grid), real_(is_real), vals_(grid.npoints(), cplx(0.0, 0.0)) {}
    ScalarField(GridSpec grid, CVec values, bool is_real = true)
        : grid_(grid), real_(is_real), vals_(std::move(values)) {}

    static ScalarField constant(const GridSpec& grid, double c) {
        ScalarField f(grid);
        for (auto& v : f.vals_) v = c;
        return f;
    }
    // Sample a function of the grid coordinates.
    static ScalarField sample(const GridSpec& grid, const std::function<double(const std::vector<double>&)>& fn);

    const GridSpec& grid() const { return grid_; }
    bool is_real() const { return real_; }
    std::size_t size() const { return vals_.size(); }

    const CVec& values() const { return vals_; }
    CVec& mutable_values() {
        spec_.reset();
        return vals_;
    }
    // Spectral coefficients, computed on demand and cached.
    const CVec& spectrum() const;
    void set_spectrum(CVec spec);

    cplx mean() const { return spectrum()[0]; }

    ScalarField& operator+=(const ScalarField& o);
    ScalarField& operator-=(const ScalarField& o);
    ScalarField& operator*=(double s);
    ScalarField& operator*=(cplx s);

    friend ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
    friend ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
    friend ScalarField operator*(double s, ScalarField a) { return a *= s; }
    friend ScalarField operator*(cplx s, ScalarField a) { return a *= s; }

    ScalarField conjugate() const;
    ScalarField real_part() const;
    ScalarField imag_part() const;

    double max_abs() const;
    // Largest |imag| over the grid; sanity measure for nominally real fields.
    double max_imag() const;

  private:
    GridSpec grid_;
    bool real_ = true;
    CVec vals_;
    mutable std::optional<CVec> spec_;
};

// d/dx_axis, axis in [0, 2m). Exact on band-limited data; the (empty)
// Nyquist plane stays empty.
ScalarField derivative(const ScalarField& f, int axis);

// Pointwise product. With dealias (default) the product is formed on the
// 3/2 padded grid and truncated back below Nyquist, which is exact for
// band-limited factors.
ScalarField multiply(const ScalarField& f, const ScalarField& g, bool dealias = true);

// Integral over the torus: (2pi)^{2m} times the mean value. Exact for
// trigonometric polynomials below Nyquist.
cplx integrate_c(const ScalarField& f);
double integrate(const ScalarField& f);

// Flat L2 norm sqrt(integral |f|^2) with a dealiased square.
double l2_norm_flat(const ScalarField& f);

// Solve the flat (constant-coefficient) Poisson problem
//   sum_a d^2 u / dx_a^2 = rhs,  mean(u) = 0,
// mode by mode. Rejects right-hand sides whose mean exceeds 1e-10 of the
// field norm.
ScalarField poisson_solve_flat(const ScalarField& rhs);

// Spectral resampling onto a grid with n_new points per axis (frequencies
// preserved; new modes zero). Exact in both directions while the data stays
// band-limited.
ScalarField resample(const ScalarField& f, int n_new);

// Zero all modes with any |frequency| > band.
ScalarField band_limit(const ScalarField& f, int band);

// Random real field with iid normal coefficients on modes 0 < |k|_inf <= band,
// normalized to unit flat L2 norm. Deterministic in the stream.
ScalarField random_band_limited(const GridSpec& grid, int band, RngStream& rng, bool zero_mean = true);

}  // namespace akg

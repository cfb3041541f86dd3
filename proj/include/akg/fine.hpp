// 3/2-padded ("fine") grid machinery. Products of band-limited fields are
// alias-free on this grid, so integrals of up to three variable factors are
// exact when the final reduction is a plain mean over fine points.
#pragma once

#include "akg/scalar_field.hpp"

namespace akg {
namespace fine {

// Points per axis of the padded companion grid.
int padded_n(const GridSpec& g);
std::size_t padded_npoints(const GridSpec& g);
std::vector<int> padded_shape(const GridSpec& g);

// Values of the interpolant on the fine grid.
CVec values(const ScalarField& f);
// Real-part values; valid for fields flagged real.
RVec values_real(const ScalarField& f);

// Truncate fine-grid values back to a base-grid field (modes below Nyquist).
ScalarField to_field(const GridSpec& base, const CVec& fine_vals);
ScalarField to_field_real(const GridSpec& base, const RVec& fine_vals);

// (2pi)^{2m} times the mean over fine points.
double integral_of(const GridSpec& base, const RVec& fine_vals);

}  // namespace fine
}  // namespace akg

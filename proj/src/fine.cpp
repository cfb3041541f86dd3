#include "akg/fine.hpp"

#include "akg/fft.hpp"

namespace akg {
namespace fine {

int padded_n(const GridSpec& g) { return (3 * g.n()) / 2; }

std::size_t padded_npoints(const GridSpec& g) {
    std::size_t t = 1;
    for (int a = 0; a < g.dim(); ++a) t *= std::size_t(padded_n(g));
    return t;
}

std::vector<int> padded_shape(const GridSpec& g) { return std::vector<int>(g.dim(), padded_n(g)); }

CVec values(const ScalarField& f) {
    const GridSpec& g = f.grid();
    CVec buf(padded_npoints(g));
    fft::embed_spectrum(g.dim(), g.n(), f.spectrum().data(), padded_n(g), buf.data());
    fft::backward(padded_shape(g), buf.data(), buf.data());
    return buf;
}

RVec values_real(const ScalarField& f) {
    CVec c = values(f);
    RVec r(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) r[i] = c[i].real();
    return r;
}

ScalarField to_field(const GridSpec& base, const CVec& fine_vals) {
    CVec spec(fine_vals.size());
    fft::forward(padded_shape(base), fine_vals.data(), spec.data());
    CVec bspec(base.npoints());
    fft::embed_spectrum(base.dim(), padded_n(base), spec.data(), base.n(), bspec.data());
    ScalarField out(base, false);
    out.set_spectrum(std::move(bspec));
    return out;
}

ScalarField to_field_real(const GridSpec& base, const RVec& fine_vals) {
    CVec c(fine_vals.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = fine_vals[i];
    CVec spec(c.size());
    fft::forward(padded_shape(base), c.data(), spec.data());
    CVec bspec(base.npoints());
    fft::embed_spectrum(base.dim(), padded_n(base), spec.data(), base.n(), bspec.data());
    ScalarField out(base, true);
    out.set_spectrum(std::move(bspec));
    return out;
}

double integral_of(const GridSpec& base, const RVec& fine_vals) {
    double acc = 0.0;
    for (double v : fine_vals) acc += v;
    double vol = 1.0;
    for (int a = 0; a < base.dim(); ++a) vol *= kTwoPi;
    return vol * acc / double(fine_vals.size());
}

}  // namespace fine
}  // namespace akg

#include "akg/scalar_field.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace akg {

ScalarField ScalarField::sample(const GridSpec& grid,
                                const std::function<double(const std::vector<double>&)>& fn) {
    ScalarField f(grid);
    const int d = grid.dim();
    const int n = grid.n();
    std::vector<double> x(d, 0.0);
    std::vector<int> idx(d, 0);
    for (std::size_t p = 0; p < grid.npoints(); ++p) {
        f.vals_[p] = fn(x);
        for (int a = d - 1; a >= 0; --a) {
            if (++idx[a] < n) {
                x[a] = idx[a] * grid.spacing();
                break;
            }
            idx[a] = 0;
            x[a] = 0.0;
        }
    }
    return f;
}

const CVec& ScalarField::spectrum() const {
    if (!spec_) {
        CVec s(vals_.size());
        fft::forward(grid_.shape(), vals_.data(), s.data());
        spec_ = std::move(s);
    }
    return *spec_;
}

void ScalarField::set_spectrum(CVec spec) {
    assert(spec.size() == grid_.npoints());
    vals_.resize(spec.size());
    fft::backward(grid_.shape(), spec.data(), vals_.data());
    spec_ = std::move(spec);
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
    if (grid_ != o.grid_) throw std::invalid_argument("ScalarField: grid mismatch");
    for (std::size_t i = 0; i < vals_.size(); ++i) vals_[i] += o.vals_[i];
    real_ = real_ && o.real_;
    spec_.reset();
    return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
    if (grid_ != o.grid_) throw std::invalid_argument("ScalarField: grid mismatch");
    for (std::size_t i = 0; i < vals_.size(); ++i) vals_[i] -= o.vals_[i];
    real_ = real_ && o.real_;
    spec_.reset();
    return *this;
}

ScalarField& ScalarField::operator*=(double s) {
    for (auto& v : vals_) v *= s;
    if (spec_)
        for (auto& v : *spec_) v *= s;
    return *this;
}

ScalarField& ScalarField::operator*=(cplx s) {
    for (auto& v : vals_) v *= s;
    if (s.imag() != 0.0) real_ = false;
    spec_.reset();
    return *this;
}

ScalarField ScalarField::conjugate() const {
    ScalarField g(grid_, real_);
    for (std::size_t i = 0; i < vals_.size(); ++i) g.vals_[i] = std::conj(vals_[i]);
    return g;
}

ScalarField ScalarField::real_part() const {
    ScalarField g(grid_, true);
    for (std::size_t i = 0; i < vals_.size(); ++i) g.vals_[i] = vals_[i].real();
    return g;
}

ScalarField ScalarField::imag_part() const {
    ScalarField g(grid_, true);
    for (std::size_t i = 0; i < vals_.size(); ++i) g.vals_[i] = vals_[i].imag();
    return g;
}

double ScalarField::max_abs() const {
    double m = 0.0;
    for (const auto& v : vals_) m = std::max(m, std::abs(v));
    return m;
}

double ScalarField::max_imag() const {
    double m = 0.0;
    for (const auto& v : vals_) m = std::max(m, std::abs(v.imag()));
    return m;
}

ScalarField derivative(const ScalarField& f, int axis) {
    const GridSpec& g = f.grid();
    if (axis < 0 || axis >= g.dim()) throw std::invalid_argument("derivative: axis out of range");
    const CVec& s = f.spectrum();
    CVec ds(s.size());
    const int n = g.n();
    const int d = g.dim();
    // stride of `axis` in the row-major layout
    std::size_t stride = 1;
    for (int a = d - 1; a > axis; --a) stride *= std::size_t(n);
    for (std::size_t i = 0; i < s.size(); ++i) {
        int j = int((i / stride) % std::size_t(n));
        int k = g.freq(j);
        if (k == -n / 2) k = 0;  // Nyquist derivative has no consistent sign
        ds[i] = cplx(0.0, double(k)) * s[i];
    }
    ScalarField out(g, f.is_real());
    out.set_spectrum(std::move(ds));
    return out;
}

namespace {

// Zero every mode with any axis frequency at or beyond band+1 (in
// particular the Nyquist plane).
void truncate_spectrum_inplace(const GridSpec& g, CVec& s, int band) {
    const int n = g.n();
    const int d = g.dim();
    std::vector<std::size_t> strides(d);
    std::size_t acc = 1;
    for (int a = d - 1; a >= 0; --a) {
        strides[a] = acc;
        acc *= std::size_t(n);
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (int a = 0; a < d; ++a) {
            int j = int((i / strides[a]) % std::size_t(n));
            int k = g.freq(j);
            if (k > band || k < -band) {
                s[i] = 0.0;
                break;
            }
        }
    }
}

}  // namespace

ScalarField multiply(const ScalarField& f, const ScalarField& g, bool dealias) {
    if (f.grid() != g.grid()) throw std::invalid_argument("multiply: grid mismatch");
    const GridSpec& gr = f.grid();
    if (!dealias) {
        CVec out(gr.npoints());
        const CVec& a = f.values();
        const CVec& b = g.values();
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] * b[i];
        return ScalarField(gr, std::move(out), f.is_real() && g.is_real());
    }

    const int n = gr.n();
    const int np = (3 * n) / 2;
    const int d = gr.dim();
    std::vector<int> pshape(d, np);
    std::size_t ptotal = 1;
    for (int a = 0; a < d; ++a) ptotal *= std::size_t(np);

    CVec fa(ptotal), fb(ptotal);
    fft::embed_spectrum(d, n, f.spectrum().data(), np, fa.data());
    fft::backward(pshape, fa.data(), fa.data());
    fft::embed_spectrum(d, n, g.spectrum().data(), np, fb.data());
    fft::backward(pshape, fb.data(), fb.data());
    for (std::size_t i = 0; i < ptotal; ++i) fa[i] *= fb[i];
    fft::forward(pshape, fa.data(), fa.data());

    CVec spec(gr.npoints());
    fft::embed_spectrum(d, np, fa.data(), n, spec.data());
    truncate_spectrum_inplace(gr, spec, gr.max_band());
    ScalarField out(gr, f.is_real() && g.is_real());
    out.set_spectrum(std::move(spec));
    return out;
}

cplx integrate_c(const ScalarField& f) {
    double vol = 1.0;
    for (int a = 0; a < f.grid().dim(); ++a) vol *= kTwoPi;
    return vol * f.mean();
}

double integrate(const ScalarField& f) { return integrate_c(f).real(); }

double l2_norm_flat(const ScalarField& f) {
    // |f|^2 integrates exactly from the spectrum (Parseval), no padding needed.
    const CVec& s = f.spectrum();
    double acc = 0.0;
    for (const auto& v : s) acc += std::norm(v);
    double vol = 1.0;
    for (int a = 0; a < f.grid().dim(); ++a) vol *= kTwoPi;
    return std::sqrt(acc * vol);
}

ScalarField poisson_solve_flat(const ScalarField& rhs) {
    const GridSpec& g = rhs.grid();
    const CVec& s = rhs.spectrum();
    const double scale = l2_norm_flat(rhs);
    if (std::abs(s[0]) > 1e-10 * std::max(scale, 1e-300))
        throw std::invalid_argument("poisson_solve_flat: right-hand side must have zero mean");

    const int n = g.n();
    const int d = g.dim();
    std::vector<std::size_t> strides(d);
    std::size_t acc = 1;
    for (int a = d - 1; a >= 0; --a) {
        strides[a] = acc;
        acc *= std::size_t(n);
    }
    CVec u(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        double k2 = 0.0;
        for (int a = 0; a < d; ++a) {
            int j = int((i / strides[a]) % std::size_t(n));
            double k = double(g.freq(j));
            k2 += k * k;
        }
        u[i] = (k2 > 0.0) ? -s[i] / k2 : cplx(0.0, 0.0);
    }
    ScalarField out(g, rhs.is_real());
    out.set_spectrum(std::move(u));
    return out;
}

ScalarField resample(const ScalarField& f, int n_new) {
    GridSpec g2(f.grid().m(), n_new);
    CVec spec(g2.npoints());
    fft::embed_spectrum(f.grid().dim(), f.grid().n(), f.spectrum().data(), n_new, spec.data());
    ScalarField out(g2, f.is_real());
    out.set_spectrum(std::move(spec));
    return out;
}

ScalarField band_limit(const ScalarField& f, int band) {
    CVec spec = f.spectrum();
    truncate_spectrum_inplace(f.grid(), spec, band);
    ScalarField out(f.grid(), f.is_real());
    out.set_spectrum(std::move(spec));
    return out;
}

ScalarField random_band_limited(const GridSpec& grid, int band, RngStream& rng, bool zero_mean) {
    if (band < 1 || band > grid.max_band())
        throw std::invalid_argument("random_band_limited: band out of range");
    const int d = grid.dim();
    // Walk modes with |k|_inf <= band in a fixed order; assign a complex
    // normal coefficient to one of each conjugate pair.
    std::vector<int> k(d, -band);
    CVec spec(grid.npoints(), cplx(0.0, 0.0));
    auto flat_index = [&](const std::vector<int>& kk) {
        std::size_t idx = 0;
        for (int a = 0; a < d; ++a) {
            int j = kk[a] >= 0 ? kk[a] : kk[a] + grid.n();
            idx = idx * std::size_t(grid.n()) + std::size_t(j);
        }
        return idx;
    };
    bool done = false;
    while (!done) {
        // Use each conjugate pair once: take the lexicographically positive one.
        int lead = 0;
        for (int a = 0; a < d; ++a) {
            if (k[a] != 0) {
                lead = k[a];
                break;
            }
        }
        if (lead > 0) {
            cplx c(rng.normal(), rng.normal());
            std::vector<int> kneg(d);
            for (int a = 0; a < d; ++a) kneg[a] = -k[a];
            spec[flat_index(k)] += c;
            spec[flat_index(kneg)] += std::conj(c);
        }
        for (int a = d - 1;; --a) {
            if (a < 0) {
                done = true;
                break;
            }
            if (++k[a] <= band) break;
            k[a] = -band;
        }
    }
    if (!zero_mean) spec[0] = rng.normal();
    ScalarField out(grid, true);
    out.set_spectrum(std::move(spec));
    double nrm = l2_norm_flat(out);
    if (nrm > 0) out *= 1.0 / nrm;
    return out;
}

}  // namespace akg

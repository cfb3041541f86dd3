#include "akg/form_field.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "akg/fine.hpp"

namespace akg {

FormField::FormField(GridSpec grid, int degree, bool is_real) : grid_(grid), degree_(degree) {
    if (degree < 0 || degree > grid.dim()) throw std::invalid_argument("FormField: degree out of range");
    const SubsetTable& t = SubsetTable::get(grid.dim(), degree);
    comps_.reserve(t.count());
    for (int i = 0; i < t.count(); ++i) comps_.emplace_back(grid, is_real);
}

FormField::FormField(GridSpec grid, int degree, std::vector<ScalarField> comps)
    : grid_(grid), degree_(degree), comps_(std::move(comps)) {
    const SubsetTable& t = SubsetTable::get(grid.dim(), degree);
    if (int(comps_.size()) != t.count()) throw std::invalid_argument("FormField: wrong component count");
}

bool FormField::is_real() const {
    for (const auto& c : comps_)
        if (!c.is_real()) return false;
    return true;
}

const ScalarField& FormField::comp_mask(Mask m) const {
    const SubsetTable& t = SubsetTable::get(grid_.dim(), degree_);
    return comps_[t.rank(m)];
}

FormField& FormField::operator+=(const FormField& o) {
    if (degree_ != o.degree_ || grid_ != o.grid_) throw std::invalid_argument("FormField: shape mismatch");
    for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] += o.comps_[i];
    return *this;
}

FormField& FormField::operator-=(const FormField& o) {
    if (degree_ != o.degree_ || grid_ != o.grid_) throw std::invalid_argument("FormField: shape mismatch");
    for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] -= o.comps_[i];
    return *this;
}

FormField& FormField::operator*=(double s) {
    for (auto& c : comps_) c *= s;
    return *this;
}

FormField& FormField::operator*=(cplx s) {
    for (auto& c : comps_) c *= s;
    return *this;
}

FormField FormField::real_part() const {
    std::vector<ScalarField> c;
    c.reserve(comps_.size());
    for (const auto& f : comps_) c.push_back(f.real_part());
    return FormField(grid_, degree_, std::move(c));
}

FormField FormField::conjugate() const {
    std::vector<ScalarField> c;
    c.reserve(comps_.size());
    for (const auto& f : comps_) c.push_back(f.conjugate());
    return FormField(grid_, degree_, std::move(c));
}

double FormField::max_abs() const {
    double m = 0.0;
    for (const auto& c : comps_) m = std::max(m, c.max_abs());
    return m;
}

double FormField::norm_flat() const {
    double acc = 0.0;
    for (const auto& c : comps_) {
        double n = l2_norm_flat(c);
        acc += n * n;
    }
    return std::sqrt(acc);
}

FormField FormField::from_scalar(const ScalarField& f) {
    return FormField(f.grid(), 0, std::vector<ScalarField>{f});
}

const ScalarField& FormField::as_scalar() const {
    if (degree_ != 0) throw std::invalid_argument("FormField: not a 0-form");
    return comps_[0];
}

FormField basis_one_form(const GridSpec& grid, int axis) {
    if (axis < 0 || axis >= grid.dim()) throw std::invalid_argument("basis_one_form: axis out of range");
    FormField f(grid, 1);
    f.comp(axis) = ScalarField::constant(grid, 1.0);
    return f;
}

namespace {

// Accumulate sign * a * b over a wedge table on the fine grid, streaming the
// b components. Real and complex paths share this template.
template <class T>
std::vector<std::vector<T>> wedge_fine(const FormField& a, const FormField& b,
                                       const std::vector<WedgeEntry>& table, int nout,
                                       std::vector<T> (*pad)(const ScalarField&)) {
    const GridSpec& g = a.grid();
    const std::size_t np = fine::padded_npoints(g);
    std::vector<std::vector<T>> apad(a.ncomps());
    for (int i = 0; i < a.ncomps(); ++i) apad[i] = pad(a.comp(i));
    std::vector<std::vector<T>> out(nout);
    for (auto& o : out) o.assign(np, T(0.0));

    for (int bi = 0; bi < b.ncomps(); ++bi) {
        std::vector<T> bpad = pad(b.comp(bi));
        for (const auto& e : table) {
            if (e.b != bi) continue;
            const T* pa = apad[e.a].data();
            const T* pb = bpad.data();
            T* po = out[e.out].data();
            const double s = e.sign;
#pragma omp parallel for schedule(static)
            for (std::ptrdiff_t p = 0; p < std::ptrdiff_t(np); ++p) po[p] += s * pa[p] * pb[p];
        }
    }
    return out;
}

std::vector<double> pad_real(const ScalarField& f) {
    RVec r = fine::values_real(f);
    return std::vector<double>(r.begin(), r.end());
}

std::vector<cplx> pad_cplx(const ScalarField& f) {
    CVec c = fine::values(f);
    return std::vector<cplx>(c.begin(), c.end());
}

}  // namespace

FormField wedge(const FormField& a, const FormField& b) {
    if (a.grid() != b.grid()) throw std::invalid_argument("wedge: grid mismatch");
    const GridSpec& g = a.grid();
    const int p = a.degree(), q = b.degree();
    if (p + q > g.dim()) throw std::invalid_argument("wedge: degree overflow");
    const auto& table = wedge_table(g.dim(), p, q);
    const int nout = SubsetTable::get(g.dim(), p + q).count();

    std::vector<ScalarField> comps;
    comps.reserve(nout);
    if (a.is_real() && b.is_real()) {
        auto out = wedge_fine<double>(a, b, table, nout, &pad_real);
        for (int i = 0; i < nout; ++i) {
            RVec r(out[i].begin(), out[i].end());
            comps.push_back(fine::to_field_real(g, r));
        }
    } else {
        auto out = wedge_fine<cplx>(a, b, table, nout, &pad_cplx);
        for (int i = 0; i < nout; ++i) {
            CVec c(out[i].begin(), out[i].end());
            comps.push_back(fine::to_field(g, c));
        }
    }
    return FormField(g, p + q, std::move(comps));
}

FormField multiply(const ScalarField& f, const FormField& a, bool dealias) {
    std::vector<ScalarField> comps;
    comps.reserve(a.ncomps());
    for (int i = 0; i < a.ncomps(); ++i) comps.push_back(multiply(f, a.comp(i), dealias));
    return FormField(a.grid(), a.degree(), std::move(comps));
}

namespace {

// Per-axis frequency of every flat grid index, cached per grid.
const std::vector<std::vector<double>>& freq_fields(const GridSpec& g) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::vector<std::vector<double>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(g.m(), g.n());
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    const int d = g.dim();
    const int n = g.n();
    std::vector<std::vector<double>> f(d, std::vector<double>(g.npoints()));
    std::vector<std::size_t> strides(d);
    std::size_t acc = 1;
    for (int a = d - 1; a >= 0; --a) {
        strides[a] = acc;
        acc *= std::size_t(n);
    }
    for (int a = 0; a < d; ++a)
        for (std::size_t i = 0; i < g.npoints(); ++i) {
            int j = int((i / strides[a]) % std::size_t(n));
            int k = g.freq(j);
            if (k == -n / 2) k = 0;
            f[a][i] = double(k);
        }
    return cache.emplace(key, std::move(f)).first->second;
}

}  // namespace

FormField exterior_derivative(const FormField& a) {
    const GridSpec& g = a.grid();
    const int k = a.degree();
    if (k >= g.dim()) throw std::invalid_argument("exterior_derivative: top-degree input");
    const auto& table = deriv_table(g.dim(), k);
    const int nout = SubsetTable::get(g.dim(), k + 1).count();
    const auto& freqs = freq_fields(g);

    std::vector<CVec> ospec(nout);
    for (auto& s : ospec) s.assign(g.npoints(), cplx(0.0, 0.0));
    for (const auto& e : table) {
        const CVec& in = a.comp(e.in).spectrum();
        const std::vector<double>& kv = freqs[e.axis];
        CVec& out = ospec[e.out];
        const double s = e.sign;
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(in.size()); ++i)
            out[i] += s * cplx(0.0, kv[i]) * in[i];
    }
    std::vector<ScalarField> comps;
    comps.reserve(nout);
    const bool re = a.is_real();
    for (int i = 0; i < nout; ++i) {
        ScalarField c(g, re);
        c.set_spectrum(std::move(ospec[i]));
        comps.push_back(std::move(c));
    }
    return FormField(g, k + 1, std::move(comps));
}

FormField exterior_derivative_flat_adjoint(const FormField& a) {
    const GridSpec& g = a.grid();
    const int k = a.degree();
    if (k < 1) throw std::invalid_argument("flat adjoint derivative: degree must be >= 1");
    const auto& table = deriv_table(g.dim(), k - 1);
    const int nout = SubsetTable::get(g.dim(), k - 1).count();
    const auto& freqs = freq_fields(g);

    std::vector<CVec> ospec(nout);
    for (auto& s : ospec) s.assign(g.npoints(), cplx(0.0, 0.0));
    // Transpose of the derivative table with the adjoint of i*k (= -i*k).
    for (const auto& e : table) {
        const CVec& in = a.comp(e.out).spectrum();
        const std::vector<double>& kv = freqs[e.axis];
        CVec& out = ospec[e.in];
        const double s = e.sign;
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(in.size()); ++i)
            out[i] += s * cplx(0.0, -kv[i]) * in[i];
    }
    std::vector<ScalarField> comps;
    comps.reserve(nout);
    const bool re = a.is_real();
    for (int i = 0; i < nout; ++i) {
        ScalarField c(g, re);
        c.set_spectrum(std::move(ospec[i]));
        comps.push_back(std::move(c));
    }
    return FormField(g, k - 1, std::move(comps));
}

namespace {

// Wedge-with-omega entries, cached per (dim, k): out_K += sign * in_I with
// K = I + one symplectic pair.
const std::vector<ContractEntry>& lefschetz_table(int dim, int k) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::vector<ContractEntry>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(dim, k);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    const SubsetTable& ti = SubsetTable::get(dim, k);
    const SubsetTable& to = SubsetTable::get(dim, k + 2);
    std::vector<ContractEntry> tab;
    for (int i = 0; i < ti.count(); ++i) {
        Mask m = ti.mask(i);
        for (int j = 0; 2 * j + 1 < dim; ++j) {
            Mask pair = (Mask(1) << (2 * j)) | (Mask(1) << (2 * j + 1));
            int s = merge_sign(pair, m);
            if (s == 0) continue;
            tab.push_back({to.rank(m | pair), i, double(s)});
        }
    }
    return cache.emplace(key, std::move(tab)).first->second;
}

// Constant-coefficient pointwise accumulation over a contraction-type table.
FormField apply_constant_table(const FormField& a, const std::vector<ContractEntry>& table, int out_degree) {
    const GridSpec& g = a.grid();
    const int nout = SubsetTable::get(g.dim(), out_degree).count();
    std::vector<CVec> ov(nout);
    for (auto& v : ov) v.assign(g.npoints(), cplx(0.0, 0.0));
    for (const auto& e : table) {
        const CVec& in = a.comp(e.in).values();
        CVec& out = ov[e.out];
        const double s = e.sign;
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(in.size()); ++i) out[i] += s * in[i];
    }
    std::vector<ScalarField> comps;
    comps.reserve(nout);
    const bool re = a.is_real();
    for (int i = 0; i < nout; ++i) comps.emplace_back(g, std::move(ov[i]), re);
    return FormField(g, out_degree, std::move(comps));
}

}  // namespace

FormField lefschetz(const FormField& a, int r) {
    if (r < 0) throw std::invalid_argument("lefschetz: negative power");
    const GridSpec& g = a.grid();
    if (a.degree() + 2 * r > g.dim()) throw std::invalid_argument("lefschetz: degree overflow");
    FormField out = a;
    for (int i = 0; i < r; ++i)
        out = apply_constant_table(out, lefschetz_table(g.dim(), out.degree()), out.degree() + 2);
    return out;
}

FormField dual_lefschetz(const FormField& a) {
    if (a.degree() < 2) throw std::invalid_argument("dual_lefschetz: degree must be >= 2");
    return apply_constant_table(a, dual_lefschetz_table(a.grid().dim(), a.degree()),
                                a.degree() - 2);
}

namespace {

inline double det1(const double* v) { return v[0]; }
inline double det2(const double* v) { return v[0] * v[3] - v[1] * v[2]; }
inline double det3(const double* v) {
    return v[0] * (v[4] * v[8] - v[5] * v[7]) - v[1] * (v[3] * v[8] - v[5] * v[6]) +
           v[2] * (v[3] * v[7] - v[4] * v[6]);
}

// Laplace expansion along the first row; used only on small test paths.
double det_laplace(const double* v, int k) {
    if (k == 1) return det1(v);
    if (k == 2) return det2(v);
    if (k == 3) return det3(v);
    std::vector<double> sub((k - 1) * (k - 1));
    double acc = 0.0;
    double sgn = 1.0;
    for (int c = 0; c < k; ++c) {
        int t = 0;
        for (int i = 1; i < k; ++i)
            for (int j = 0; j < k; ++j)
                if (j != c) sub[t++] = v[i * k + j];
        acc += sgn * v[c] * det_laplace(sub.data(), k - 1);
        sgn = -sgn;
    }
    return acc;
}

double minor_of(const double* mat, const std::vector<int>& pos, int k) {
    assert(k <= 8);
    double buf[64];
    for (int i = 0; i < k * k; ++i) buf[i] = mat[pos[i]];
    switch (k) {
        case 1:
            return det1(buf);
        case 2:
            return det2(buf);
        case 3:
            return det3(buf);
        default:
            return det_laplace(buf, k);
    }
}

// Tables for the complementary-minor route: minors of T of size k are
// det(T) times signed minors of T^{-1} of complementary size.
struct ComplementEntry {
    int out;
    int in;
    double sign;
    std::vector<int> pos;  // positions into T^{-1}, (dim-k)^2 of them
};

const std::vector<ComplementEntry>& complement_compound_table(int dim, int k) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::vector<ComplementEntry>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(dim, k);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    const SubsetTable& t = SubsetTable::get(dim, k);
    Mask full = (Mask(1) << dim) - 1;
    std::vector<ComplementEntry> tab;
    for (int out = 0; out < t.count(); ++out) {
        Mask rm = t.mask(out);
        auto rc = mask_elements(full & ~rm);
        for (int in = 0; in < t.count(); ++in) {
            Mask im = t.mask(in);
            auto ic = mask_elements(full & ~im);
            // det(T[R,I]) = sgn * det(T) * det(T^{-1}[I^c, R^c]),
            // sgn = merge_sign(R, R^c) * merge_sign(I, I^c).
            double sgn = complement_sign(dim, rm) * complement_sign(dim, im);
            ComplementEntry e;
            e.out = out;
            e.in = in;
            e.sign = sgn;
            const int kc = dim - k;
            e.pos.reserve(std::size_t(kc) * kc);
            for (int a = 0; a < kc; ++a)
                for (int b = 0; b < kc; ++b) e.pos.push_back(ic[a] * dim + rc[b]);
            tab.push_back(std::move(e));
        }
    }
    return cache.emplace(key, std::move(tab)).first->second;
}

void compound_apply_direct(const FormField& a, const MatrixField& M, FormField& out) {
    const GridSpec& g = a.grid();
    const int k = a.degree();
    const auto& table = compound_table(g.dim(), k);
    const int nc = a.ncomps();
    std::vector<const cplx*> in(nc);
    std::vector<cplx*> ov(nc);
    for (int i = 0; i < nc; ++i) in[i] = a.comp(i).values().data();
    for (int i = 0; i < nc; ++i) ov[i] = out.comp(i).mutable_values().data();
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t p = 0; p < std::ptrdiff_t(g.npoints()); ++p) {
        const double* mat = M.at(p);
        for (const auto& e : table) {
            double d = minor_of(mat, e.pos, k);
            ov[e.out][p] += d * in[e.in][p];
        }
    }
}

}  // namespace

FormField pointwise_apply(const FormField& a, const MatrixField& T) {
    const GridSpec& g = a.grid();
    const int k = a.degree();
    if (k == 0) return a;
    FormField out(g, k, a.is_real());
    compound_apply_direct(a, T, out);
    return out;
}

FormField pointwise_apply(const FormField& a, const MatrixField& T, const MatrixField& T_inv,
                          const ScalarField& det_t) {
    const GridSpec& g = a.grid();
    const int k = a.degree();
    if (k == 0) return a;
    if (k <= g.dim() / 2) return pointwise_apply(a, T);

    // High degrees: route minors of T through small minors of T^{-1}.
    const auto& table = complement_compound_table(g.dim(), k);
    const int kc = g.dim() - k;
    FormField out(g, k, a.is_real());
    const int nc = a.ncomps();
    std::vector<const cplx*> in(nc);
    std::vector<cplx*> ov(nc);
    for (int i = 0; i < nc; ++i) in[i] = a.comp(i).values().data();
    for (int i = 0; i < nc; ++i) ov[i] = out.comp(i).mutable_values().data();
    const cplx* det = det_t.values().data();
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t p = 0; p < std::ptrdiff_t(g.npoints()); ++p) {
        const double* mi = T_inv.at(p);
        const double dt = det[p].real();
        for (const auto& e : table) {
            double d = (kc == 0) ? 1.0 : minor_of(mi, e.pos, kc);
            ov[e.out][p] += e.sign * dt * d * in[e.in][p];
        }
    }
    return out;
}

double integrate_wedge(const FormField& a, const FormField& b) {
    const GridSpec& g = a.grid();
    if (a.degree() + b.degree() != g.dim())
        throw std::invalid_argument("integrate_wedge: degrees must sum to 2m");
    const auto& table = wedge_table(g.dim(), a.degree(), b.degree());
    const std::size_t np = fine::padded_npoints(g);

    RVec acc(np, 0.0);
    std::vector<RVec> apad(a.ncomps());
    for (int i = 0; i < a.ncomps(); ++i) apad[i] = fine::values_real(a.comp(i));
    for (int bi = 0; bi < b.ncomps(); ++bi) {
        RVec bpad = fine::values_real(b.comp(bi));
        for (const auto& e : table) {
            if (e.b != bi) continue;
            const double* pa = apad[e.a].data();
            const double* pb = bpad.data();
            const double s = e.sign;
#pragma omp parallel for schedule(static)
            for (std::ptrdiff_t p = 0; p < std::ptrdiff_t(np); ++p) acc[p] += s * pa[p] * pb[p];
        }
    }
    return fine::integral_of(g, acc);
}

ScalarField top_coefficient(const FormField& a) {
    if (a.degree() != a.grid().dim()) throw std::invalid_argument("top_coefficient: not a top form");
    return a.comp(0);
}

FormField random_form(const GridSpec& grid, int degree, int band, RngStream& rng) {
    FormField f(grid, degree);
    for (int i = 0; i < f.ncomps(); ++i) f.comp(i) = random_band_limited(grid, band, rng);
    return f;
}

}  // namespace akg

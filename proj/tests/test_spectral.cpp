// Spectral layer: grids, transforms, differentiation, dealiased products,
// integration and the constant-coefficient Poisson inverse.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "akg/fine.hpp"
#include "akg/scalar_field.hpp"

using namespace akg;

namespace {

// 8th-order centered finite differences on the same grid; independent check
// for the spectral derivative on band-limited data.
ScalarField fd8_derivative(const ScalarField& f, int axis) {
    const GridSpec& g = f.grid();
    const int n = g.n();
    const int d = g.dim();
    std::size_t stride = 1;
    for (int a = d - 1; a > axis; --a) stride *= std::size_t(n);
    const double h = g.spacing();
    static const double w[4] = {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};

    const CVec& v = f.values();
    CVec out(v.size());
    const std::size_t block = stride * std::size_t(n);
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::size_t base = (i / block) * block + (i % stride);
        int j = int((i / stride) % std::size_t(n));
        cplx acc = 0.0;
        for (int s = 1; s <= 4; ++s) {
            int jp = (j + s) % n;
            int jm = (j - s + 8 * n) % n;
            acc += w[s - 1] * (v[base + std::size_t(jp) * stride] - v[base + std::size_t(jm) * stride]);
        }
        out[i] = acc / h;
    }
    return ScalarField(g, std::move(out), f.is_real());
}

double rel_err(const ScalarField& a, const ScalarField& b) {
    ScalarField d = a - b;
    double nb = l2_norm_flat(b);
    return l2_norm_flat(d) / (nb > 0 ? nb : 1.0);
}

}  // namespace

TEST_CASE("grid invariants and validation") {
    GridSpec g(2, 16);
    CHECK(g.dim() == 4);
    CHECK(g.npoints() == 65536);
    CHECK_THROWS_AS(GridSpec(1, 16), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec(2, 6), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec(2, 15), std::invalid_argument);
}

TEST_CASE("transform round trip is identity") {
    GridSpec g(2, 16);
    RngStream rng(12345);
    ScalarField f = random_band_limited(g, g.max_band(), rng);
    ScalarField h(g, CVec(f.values()), true);
    (void)h.spectrum();
    CVec spec = h.spectrum();
    ScalarField back(g, true);
    back.set_spectrum(std::move(spec));
    CHECK(rel_err(back, f) < 1e-12);
}

TEST_CASE("real field has conjugate-symmetric spectrum") {
    GridSpec g(2, 8);
    RngStream rng(7);
    ScalarField f = random_band_limited(g, 3, rng);
    const CVec& s = f.spectrum();
    const int n = g.n();
    // check a sample of mode pairs (k, -k)
    for (int k0 = -3; k0 <= 3; ++k0)
        for (int k1 = -3; k1 <= 3; ++k1) {
            auto flat = [&](int a, int b) {
                int ja = a >= 0 ? a : a + n;
                int jb = b >= 0 ? b : b + n;
                return (std::size_t(ja) * n + jb) * n * n;  // modes (a,b,0,0)
            };
            cplx lhs = s[flat(k0, k1)];
            cplx rhs = std::conj(s[flat(-k0, -k1)]);
            CHECK(std::abs(lhs - rhs) < 1e-13);
        }
}

TEST_CASE("derivative of a constant vanishes") {
    GridSpec g(2, 8);
    ScalarField one = ScalarField::constant(g, 1.0);
    CHECK(derivative(one, 0).max_abs() < 1e-14);
}

TEST_CASE("derivative of sin(x0) is cos(x0)") {
    GridSpec g(2, 8);
    ScalarField f = ScalarField::sample(g, [](const std::vector<double>& x) { return std::sin(x[0]); });
    ScalarField expect = ScalarField::sample(g, [](const std::vector<double>& x) { return std::cos(x[0]); });
    CHECK(rel_err(derivative(f, 0), expect) < 1e-13);
    CHECK_THROWS_AS(derivative(f, 4), std::invalid_argument);
}

TEST_CASE("spectral derivative matches 8th-order finite differences") {
    GridSpec g(2, 16);
    RngStream rng(99);
    ScalarField f = random_band_limited(g, 3, rng);
    ScalarField ds = derivative(f, 1);
    ScalarField dfd = fd8_derivative(f, 1);
    // h = 2pi/16, error O(h^8) ~ 3e-4 per unit 9th derivative; band 3 data
    double err = rel_err(dfd, ds);
    CHECK(err < 5e-2);
    // and the two agree far better on band-1 data
    ScalarField f1 = random_band_limited(g, 1, rng);
    CHECK(rel_err(fd8_derivative(f1, 1), derivative(f1, 1)) < 2e-6);
}

TEST_CASE("mixed partials commute") {
    GridSpec g(2, 8);
    RngStream rng(3);
    ScalarField f = random_band_limited(g, 3, rng);
    ScalarField ab = derivative(derivative(f, 0), 2);
    ScalarField ba = derivative(derivative(f, 2), 0);
    CHECK(rel_err(ab, ba) < 1e-12);
}

TEST_CASE("integral of any derivative vanishes") {
    GridSpec g(2, 8);
    RngStream rng(4);
    ScalarField f = random_band_limited(g, 3, rng, false);
    for (int a = 0; a < 4; ++a) CHECK(std::abs(integrate(derivative(f, a))) < 1e-13);
}

TEST_CASE("product with one is identity") {
    GridSpec g(2, 8);
    RngStream rng(5);
    ScalarField f = random_band_limited(g, 3, rng);
    ScalarField one = ScalarField::constant(g, 1.0);
    CHECK(rel_err(multiply(f, one), f) < 1e-13);
}

TEST_CASE("sin times cos is half sin of double angle") {
    GridSpec g(2, 8);
    ScalarField s = ScalarField::sample(g, [](const std::vector<double>& x) { return std::sin(x[0]); });
    ScalarField c = ScalarField::sample(g, [](const std::vector<double>& x) { return std::cos(x[0]); });
    ScalarField expect =
        ScalarField::sample(g, [](const std::vector<double>& x) { return 0.5 * std::sin(2.0 * x[0]); });
    CHECK(rel_err(multiply(s, c), expect) < 1e-13);
}

TEST_CASE("grid mismatch is rejected") {
    GridSpec a(2, 8), b(2, 16);
    ScalarField fa = ScalarField::constant(a, 1.0);
    ScalarField fb = ScalarField::constant(b, 1.0);
    CHECK_THROWS_AS(multiply(fa, fb), std::invalid_argument);
}

TEST_CASE("dealiased product matches product on a 2x finer grid") {
    GridSpec g(2, 8);
    RngStream rng(6);
    ScalarField f = random_band_limited(g, 3, rng);
    ScalarField h = random_band_limited(g, 3, rng);
    ScalarField prod = multiply(f, h);

    // oracle: resample both factors to 2n, multiply pointwise there, restrict
    ScalarField f2 = resample(f, 16);
    ScalarField h2 = resample(h, 16);
    ScalarField p2 = multiply(f2, h2, false);
    ScalarField back = resample(p2, 8);
    CHECK(rel_err(prod, back) < 1e-12);
}

TEST_CASE("dealiased product of n/3-band fields is exact") {
    GridSpec g(2, 16);
    RngStream rng(8);
    ScalarField f = random_band_limited(g, 2, rng);
    ScalarField h = random_band_limited(g, 2, rng);
    // band 2+2=4 < 7 stays below Nyquist: plain pointwise product has no
    // aliasing at all, so dealiased and plain products agree to roundoff.
    CHECK(rel_err(multiply(f, h, true), multiply(f, h, false)) < 1e-13);
}

TEST_CASE("integration basics") {
    GridSpec g(2, 8);
    double vol = std::pow(kTwoPi, 4);
    CHECK(integrate(ScalarField::constant(g, 1.0)) == doctest::Approx(vol).epsilon(1e-14));
    ScalarField s = ScalarField::sample(g, [](const std::vector<double>& x) { return std::sin(x[2]); });
    CHECK(std::abs(integrate(s)) < 1e-13);
}

TEST_CASE("integral matches quadrature on a 2x finer grid") {
    GridSpec g(2, 8);
    RngStream rng(9);
    ScalarField f = random_band_limited(g, 3, rng, false);
    double i1 = integrate(f);
    double i2 = integrate(resample(f, 16));
    CHECK(std::abs(i1 - i2) < 1e-12 * std::max(1.0, std::abs(i1)));
}

TEST_CASE("poisson solve: zero and single mode") {
    GridSpec g(2, 8);
    ScalarField zero(g);
    CHECK(poisson_solve_flat(zero).max_abs() < 1e-14);

    ScalarField rhs =
        ScalarField::sample(g, [](const std::vector<double>& x) { return -std::sin(x[0]); });
    ScalarField u = poisson_solve_flat(rhs);
    ScalarField expect = ScalarField::sample(g, [](const std::vector<double>& x) { return std::sin(x[0]); });
    CHECK(rel_err(u, expect) < 1e-13);
}

TEST_CASE("poisson solve: random rhs residual") {
    GridSpec g(3, 8);
    RngStream rng(11);
    ScalarField rhs = random_band_limited(g, 3, rng);
    ScalarField u = poisson_solve_flat(rhs);
    ScalarField lap(g);
    for (int a = 0; a < g.dim(); ++a) lap += derivative(derivative(u, a), a);
    CHECK(rel_err(lap, rhs) < 1e-12);
    CHECK(std::abs(u.mean()) < 1e-14);
}

TEST_CASE("poisson solve rejects nonzero mean") {
    GridSpec g(2, 8);
    ScalarField rhs = ScalarField::constant(g, 0.5);
    CHECK_THROWS_AS(poisson_solve_flat(rhs), std::invalid_argument);
}

TEST_CASE("fine grid padding round trip") {
    GridSpec g(2, 8);
    RngStream rng(13);
    ScalarField f = random_band_limited(g, 3, rng);
    RVec fv = fine::values_real(f);
    CHECK(fv.size() == fine::padded_npoints(g));
    ScalarField back = fine::to_field_real(g, fv);
    CHECK(rel_err(back, f) < 1e-13);
    CHECK(std::abs(fine::integral_of(g, fv) - integrate(f)) < 1e-12);
}

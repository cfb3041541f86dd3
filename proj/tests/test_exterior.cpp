// Exterior algebra layer: wedge, exterior derivative, pointwise covector
// maps and the constant symplectic operators.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "akg/form_field.hpp"

using namespace akg;

namespace {

double rel(double num, double den) { return num / (den > 0 ? den : 1.0); }

double form_rel_err(const FormField& a, const FormField& b) {
    FormField d = a;
    d -= b;
    return rel(d.norm_flat(), b.norm_flat());
}

// Dense evaluation of Lambda^k(T) on a k-tuple basis at one point, by
// expanding T dx^{i} in the covector basis and wedging explicitly. Oracle
// for pointwise_apply.
cplx apply_compound_at_point(const FormField& a, const MatrixField& T, std::size_t p, Mask out_mask) {
    const int dim = a.grid().dim();
    const int k = a.degree();
    const SubsetTable& t = SubsetTable::get(dim, k);
    cplx acc = 0.0;
    for (int in = 0; in < t.count(); ++in) {
        auto cols = mask_elements(t.mask(in));
        // coefficient of dx^{out_mask} in (T dx^{c1}) ^ ... ^ (T dx^{ck})
        // via summation over all assignments of rows
        std::vector<int> rows = mask_elements(out_mask);
        // permanent-style sum over permutations with sign
        std::vector<int> perm(k);
        for (int i = 0; i < k; ++i) perm[i] = i;
        double coeff = 0.0;
        // iterate over all permutations of rows
        std::sort(perm.begin(), perm.end());
        do {
            // sign of permutation
            int inv = 0;
            for (int i = 0; i < k; ++i)
                for (int j = i + 1; j < k; ++j)
                    if (perm[i] > perm[j]) ++inv;
            double term = (inv % 2 == 0) ? 1.0 : -1.0;
            for (int i = 0; i < k; ++i) term *= T.entry(p, rows[perm[i]], cols[i]);
            coeff += term;
        } while (std::next_permutation(perm.begin(), perm.end()));
        acc += coeff * a.comp(in).values()[p];
    }
    return acc;
}

}  // namespace

TEST_CASE("wedge antisymmetry and volume component") {
    GridSpec g(2, 8);
    FormField dx0 = basis_one_form(g, 0);
    FormField dx1 = basis_one_form(g, 1);
    FormField dx2 = basis_one_form(g, 2);
    FormField dx3 = basis_one_form(g, 3);

    CHECK(wedge(dx0, dx0).max_abs() < 1e-13);

    FormField vol = wedge(wedge(dx0, dx1), wedge(dx2, dx3));
    CHECK(vol.degree() == 4);
    CHECK(vol.ncomps() == 1);
    CHECK(std::abs(vol.comp(0).values()[0] - 1.0) < 1e-12);

    CHECK_THROWS_AS(wedge(vol, dx0), std::invalid_argument);
}

TEST_CASE("wedge graded commutativity on random one-forms") {
    GridSpec g(2, 8);
    RngStream rng(21);
    FormField a = random_form(g, 1, 2, rng);
    FormField b = random_form(g, 1, 2, rng);
    FormField ab = wedge(a, b);
    FormField ba = wedge(b, a);
    ba *= -1.0;
    CHECK(form_rel_err(ab, ba) < 1e-12);
}

TEST_CASE("wedge bilinearity and associativity") {
    // bands must satisfy 2+2+2 <= n/2-1 so no association order truncates
    GridSpec g(2, 16);
    RngStream rng(22);
    FormField a = random_form(g, 1, 2, rng);
    FormField b = random_form(g, 1, 2, rng);
    FormField c = random_form(g, 2, 2, rng);
    FormField left = wedge(wedge(a, b), c);
    FormField right = wedge(a, wedge(b, c));
    CHECK(form_rel_err(left, right) < 1e-10);
}

TEST_CASE("exterior derivative basics") {
    GridSpec g(2, 8);
    FormField constant = FormField::from_scalar(ScalarField::constant(g, 2.5));
    CHECK(exterior_derivative(constant).max_abs() < 1e-14);

    // d(sin(x0) dx1) = cos(x0) dx0^dx1
    FormField a(g, 1);
    a.comp(1) = ScalarField::sample(g, [](const std::vector<double>& x) { return std::sin(x[0]); });
    FormField da = exterior_derivative(a);
    const SubsetTable& t2 = SubsetTable::get(4, 2);
    ScalarField expect = ScalarField::sample(g, [](const std::vector<double>& x) { return std::cos(x[0]); });
    CHECK(l2_norm_flat(da.comp(t2.rank(0b0011)) - expect) < 1e-12);

    FormField top(g, 4);
    CHECK_THROWS_AS(exterior_derivative(top), std::invalid_argument);
}

TEST_CASE("d squared vanishes") {
    GridSpec g(2, 8);
    RngStream rng(23);
    FormField a = random_form(g, 1, 3, rng);
    FormField dda = exterior_derivative(exterior_derivative(a));
    CHECK(rel(dda.norm_flat(), a.norm_flat()) < 1e-12);
}

TEST_CASE("Leibniz rule for wedge products") {
    GridSpec g(2, 8);
    RngStream rng(24);
    FormField a = random_form(g, 1, 2, rng);
    FormField b = random_form(g, 2, 2, rng);
    FormField lhs = exterior_derivative(wedge(a, b));
    FormField rhs = wedge(exterior_derivative(a), b);
    FormField ab = wedge(a, exterior_derivative(b));
    ab *= -1.0;  // (-1)^p with p = 1
    rhs += ab;
    CHECK(form_rel_err(lhs, rhs) < 1e-10);
}

TEST_CASE("flat adjoint of d is the true transpose") {
    GridSpec g(2, 8);
    RngStream rng(25);
    FormField a = random_form(g, 1, 3, rng);
    FormField b = random_form(g, 2, 3, rng);
    // flat inner products: sum over components of integral of products
    FormField da = exterior_derivative(a);
    FormField dtb = exterior_derivative_flat_adjoint(b);
    double lhs = 0.0, rhs = 0.0;
    for (int i = 0; i < da.ncomps(); ++i) lhs += integrate(multiply(da.comp(i), b.comp(i)));
    for (int i = 0; i < a.ncomps(); ++i) rhs += integrate(multiply(a.comp(i), dtb.comp(i)));
    CHECK(std::abs(lhs - rhs) < 1e-11 * std::max(1.0, std::abs(lhs)));
}

TEST_CASE("pointwise apply: identity and scaling") {
    GridSpec g(2, 8);
    RngStream rng(26);
    FormField a = random_form(g, 2, 2, rng);
    MatrixField id(g, 4), two(g, 4);
    for (std::size_t p = 0; p < g.npoints(); ++p)
        for (int i = 0; i < 4; ++i) {
            id.entry(p, i, i) = 1.0;
            two.entry(p, i, i) = 2.0;
        }
    CHECK(form_rel_err(pointwise_apply(a, id), a) < 1e-13);
    FormField four = a;
    four *= 4.0;  // 2^k with k = 2
    CHECK(form_rel_err(pointwise_apply(a, two), four) < 1e-13);
}

TEST_CASE("pointwise apply matches dense oracle at random points") {
    GridSpec g(2, 8);
    RngStream rng(27);
    FormField a = random_form(g, 2, 2, rng);
    MatrixField T(g, 4);
    for (std::size_t p = 0; p < g.npoints(); ++p)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) T.entry(p, i, j) = rng.normal();
    FormField out = pointwise_apply(a, T);
    const SubsetTable& t2 = SubsetTable::get(4, 2);
    for (int trial = 0; trial < 10; ++trial) {
        std::size_t p = rng.next_u64() % g.npoints();
        int c = int(rng.next_u64() % std::uint64_t(t2.count()));
        cplx expect = apply_compound_at_point(a, T, p, t2.mask(c));
        cplx got = out.comp(c).values()[p];
        CHECK(std::abs(expect - got) < 1e-10);
    }
}

TEST_CASE("pointwise apply high-degree route agrees with direct route") {
    GridSpec g(2, 8);
    RngStream rng(28);
    FormField a = random_form(g, 3, 2, rng);
    // random well-conditioned matrix field: T = I + 0.3 R
    MatrixField T(g, 4), Tinv(g, 4);
    ScalarField det(g);
    CVec& detv = det.mutable_values();
    for (std::size_t p = 0; p < g.npoints(); ++p) {
        double M[16], Mi[16];
        for (int i = 0; i < 16; ++i) M[i] = (i % 5 == 0 ? 1.0 : 0.0) + 0.3 * rng.normal();
        // invert via Gauss-Jordan
        double aug[32];
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                aug[i * 8 + j] = M[i * 4 + j];
                aug[i * 8 + 4 + j] = (i == j) ? 1.0 : 0.0;
            }
        double dd = 1.0;
        for (int col = 0; col < 4; ++col) {
            int piv = col;
            for (int r = col + 1; r < 4; ++r)
                if (std::abs(aug[r * 8 + col]) > std::abs(aug[piv * 8 + col])) piv = r;
            if (piv != col) {
                for (int j = 0; j < 8; ++j) std::swap(aug[col * 8 + j], aug[piv * 8 + j]);
                dd = -dd;
            }
            dd *= aug[col * 8 + col];
            double inv = 1.0 / aug[col * 8 + col];
            for (int j = 0; j < 8; ++j) aug[col * 8 + j] *= inv;
            for (int r = 0; r < 4; ++r) {
                if (r == col) continue;
                double f = aug[r * 8 + col];
                for (int j = 0; j < 8; ++j) aug[r * 8 + j] -= f * aug[col * 8 + j];
            }
        }
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) Mi[i * 4 + j] = aug[i * 8 + 4 + j];
        for (int i = 0; i < 16; ++i) {
            T.at(p)[i] = M[i];
            Tinv.at(p)[i] = Mi[i];
        }
        detv[p] = dd;
    }
    FormField direct = pointwise_apply(a, T);
    FormField routed = pointwise_apply(a, T, Tinv, det);
    CHECK(form_rel_err(routed, direct) < 1e-11);
}

TEST_CASE("lefschetz and dual lefschetz basics") {
    GridSpec g(2, 8);
    RngStream rng(29);

    FormField one = FormField::from_scalar(ScalarField::constant(g, 1.0));
    FormField om2 = lefschetz(one, 2);  // omega^2 = 2 vol on T^4
    CHECK(om2.degree() == 4);
    CHECK(std::abs(om2.comp(0).values()[17] - 2.0) < 1e-12);

    // d commutes with L
    FormField a = random_form(g, 1, 2, rng);
    FormField dla = exterior_derivative(lefschetz(a, 1));
    FormField lda = lefschetz(exterior_derivative(a), 1);
    CHECK(form_rel_err(dla, lda) < 1e-11);

    // Lambda omega = m
    FormField om = lefschetz(one, 1);
    FormField lam = dual_lefschetz(om);
    CHECK(std::abs(lam.as_scalar().values()[3] - 2.0) < 1e-12);

    // commutator [Lambda, L] = (m - k) id on k-forms
    for (int k = 0; k <= 2; ++k) {
        FormField b = random_form(g, k, 2, rng);
        FormField lb = lefschetz(b, 1);
        FormField c1 = dual_lefschetz(lb);
        FormField c2 = (k >= 2) ? lefschetz(dual_lefschetz(b), 1) : FormField(g, k);
        FormField comm = c1;
        comm -= c2;
        FormField expect = b;
        expect *= double(2 - k);
        FormField diff = comm;
        diff -= expect;
        CHECK(rel(diff.norm_flat(), b.norm_flat()) < 1e-11);
    }
}

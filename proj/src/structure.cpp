#include "akg/structure.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cassert>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace akg {

namespace {

// Standard symplectic matrix: Omega_{2j,2j+1} = 1, Omega_{2j+1,2j} = -1,
// and the standard complex structure J0 = -Omega (so that
// omega(X,Y) = g0(J0 X, Y) with the identity metric).
void standard_omega_matrix(int dim, double* out) {
    for (int i = 0; i < dim * dim; ++i) out[i] = 0.0;
    for (int j = 0; 2 * j + 1 < dim; ++j) {
        out[(2 * j) * dim + (2 * j + 1)] = 1.0;
        out[(2 * j + 1) * dim + (2 * j)] = -1.0;
    }
}

FormField standard_omega_form(const GridSpec& g) {
    FormField om(g, 2);
    const SubsetTable& t = SubsetTable::get(g.dim(), 2);
    for (int j = 0; 2 * j + 1 < g.dim(); ++j) {
        Mask pair = (Mask(1) << (2 * j)) | (Mask(1) << (2 * j + 1));
        om.comp(t.rank(pair)) = ScalarField::constant(g, 1.0);
    }
    return om;
}

template <int D>
void exponentiate_generators(const std::vector<ScalarField>& qfields, double scale,
                             MatrixField& J_out, MatrixField& Jt_out) {
    using Mat = Eigen::Matrix<double, D, D>;
    Mat omega = Mat::Zero();
    for (int j = 0; 2 * j + 1 < D; ++j) {
        omega(2 * j, 2 * j + 1) = 1.0;
        omega(2 * j + 1, 2 * j) = -1.0;
    }
    const Mat j0 = -omega;

    const std::size_t npts = J_out.grid().npoints();
    std::vector<const cplx*> q;
    for (const auto& f : qfields) q.push_back(f.values().data());

#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t p = 0; p < std::ptrdiff_t(npts); ++p) {
        Mat Q;
        int idx = 0;
        for (int i = 0; i < D; ++i)
            for (int j = i; j < D; ++j) {
                double v = q[idx++][p].real();
                Q(i, j) = v;
                Q(j, i) = v;
            }
        Mat A = scale * (omega * Q);
        Mat S = A.exp();
        Mat Sinv = S.inverse();
        Mat Jp = S * j0 * Sinv;
        for (int i = 0; i < D; ++i)
            for (int j = 0; j < D; ++j) {
                J_out.entry(p, i, j) = Jp(i, j);
                Jt_out.entry(p, i, j) = Jp(j, i);
            }
    }
}

template <int D>
double min_metric_eigenvalue(const MatrixField& J) {
    using Mat = Eigen::Matrix<double, D, D>;
    Mat omega = Mat::Zero();
    for (int j = 0; 2 * j + 1 < D; ++j) {
        omega(2 * j, 2 * j + 1) = 1.0;
        omega(2 * j + 1, 2 * j) = -1.0;
    }
    const std::size_t npts = J.grid().npoints();
    double global_min = 1e300;
#pragma omp parallel
    {
        double local_min = 1e300;
        Eigen::SelfAdjointEigenSolver<Mat> es;
#pragma omp for schedule(static)
        for (std::ptrdiff_t p = 0; p < std::ptrdiff_t(npts); ++p) {
            Mat Jp;
            for (int i = 0; i < D; ++i)
                for (int j = 0; j < D; ++j) Jp(i, j) = J.entry(p, i, j);
            Mat G = omega * Jp;
            Mat Gs = 0.5 * (G + G.transpose());
            es.compute(Gs, Eigen::EigenvaluesOnly);
            local_min = std::min(local_min, es.eigenvalues()(0));
        }
#pragma omp critical
        global_min = std::min(global_min, local_min);
    }
    return global_min;
}

}  // namespace

void AlmostHermitianStructure::g_at(std::size_t p, double* out) const {
    // G = Omega * J: row 2j of G is row 2j+1 of J, row 2j+1 is -row 2j.
    const int d = grid.dim();
    const double* Jp = J.at(p);
    for (int j = 0; 2 * j + 1 < d; ++j) {
        for (int c = 0; c < d; ++c) {
            out[(2 * j) * d + c] = Jp[(2 * j + 1) * d + c];
            out[(2 * j + 1) * d + c] = -Jp[(2 * j) * d + c];
        }
    }
}

void AlmostHermitianStructure::ginv_at(std::size_t p, double* out) const {
    // Ginv = J * Omega: column 2j+1 of Ginv is column 2j of J, column 2j is
    // minus column 2j+1 of J.
    const int d = grid.dim();
    const double* Jp = J.at(p);
    for (int r = 0; r < d; ++r) {
        for (int j = 0; 2 * j + 1 < d; ++j) {
            out[r * d + (2 * j + 1)] = Jp[r * d + (2 * j)];
            out[r * d + (2 * j)] = -Jp[r * d + (2 * j + 1)];
        }
    }
}

AlmostHermitianStructure build_structure(const GridSpec& grid, const StructureRecipe& recipe) {
    const int d = grid.dim();
    AlmostHermitianStructure S;
    S.grid = grid;
    S.m = grid.m();
    S.recipe = recipe;
    S.omega = standard_omega_form(grid);
    S.J = MatrixField(grid, d);
    S.Jt = MatrixField(grid, d);
    S.det_one = ScalarField::constant(grid, 1.0);

    // Symmetric generator entries, band-limited, normalized so the pointwise
    // sup of the Frobenius norm of A = Omega Q is 1 before scaling.
    RngStream rng = RngStream::derive(recipe.seed, "structure-generator");
    std::vector<ScalarField> q;
    for (int i = 0; i < d * (d + 1) / 2; ++i) q.push_back(random_band_limited(grid, recipe.band, rng, false));

    double sup = 0.0;
    {
        // |A|_F = |Omega Q|_F = |Q|_F pointwise (Omega is orthogonal)
        std::vector<const cplx*> qv;
        for (auto& f : q) qv.push_back(f.values().data());
        for (std::size_t p = 0; p < grid.npoints(); ++p) {
            double acc = 0.0;
            int idx = 0;
            for (int i = 0; i < d; ++i)
                for (int j = i; j < d; ++j) {
                    double v = qv[idx++][p].real();
                    acc += (i == j) ? v * v : 2.0 * v * v;
                }
            sup = std::max(sup, acc);
        }
        sup = std::sqrt(sup);
    }
    const double scale = (sup > 0 ? recipe.effective_amplitude(grid.m()) / sup : 0.0);

    if (d == 4)
        exponentiate_generators<4>(q, scale, S.J, S.Jt);
    else if (d == 6)
        exponentiate_generators<6>(q, scale, S.J, S.Jt);
    else
        throw std::invalid_argument("build_structure: only m = 2 and m = 3 grids are supported");

    S.JtInv = S.Jt;
    for (std::size_t p = 0; p < grid.npoints(); ++p) {
        double* v = S.JtInv.at(p);
        for (int i = 0; i < d * d; ++i) v[i] = -v[i];
    }

    // Volume density sqrt(det g); analytically 1 for symplectic conjugation.
    S.sqrt_det_g.assign(grid.npoints(), 0.0);
    {
        Eigen::MatrixXd G(d, d);
        std::vector<double> buf(d * d);
        for (std::size_t p = 0; p < grid.npoints(); ++p) {
            S.g_at(p, buf.data());
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) G(i, j) = buf[i * d + j];
            S.sqrt_det_g[p] = std::sqrt(G.determinant());
        }
    }

    S.tame_margin = (d == 4) ? min_metric_eigenvalue<4>(S.J) : min_metric_eigenvalue<6>(S.J);
    if (S.tame_margin < 1e-6) {
        std::ostringstream msg;
        msg << "build_structure: deformation too large, tamedness margin " << S.tame_margin
            << " below 1e-6 (epsilon = " << recipe.epsilon << ")";
        throw std::runtime_error(msg.str());
    }
    return S;
}

StructureResiduals structure_invariants(const AlmostHermitianStructure& S) {
    const int d = S.grid.dim();
    StructureResiduals r;
    r.g_min_eigenvalue = S.tame_margin;
    std::vector<double> om(d * d), G(d * d);
    standard_omega_matrix(d, om.data());
    for (std::size_t p = 0; p < S.grid.npoints(); ++p) {
        const double* J = S.J.at(p);
        // J^2 + I
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                double acc = (i == j) ? 1.0 : 0.0;
                for (int l = 0; l < d; ++l) acc += J[i * d + l] * J[l * d + j];
                r.j_squared = std::max(r.j_squared, std::abs(acc));
            }
        // omega(J., J.) = J^T Omega J - Omega
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                double acc = -om[i * d + j];
                for (int a = 0; a < d; ++a)
                    for (int b = 0; b < d; ++b) acc += J[a * d + i] * om[a * d + b] * J[b * d + j];
                r.omega_invariance = std::max(r.omega_invariance, std::abs(acc));
            }
        // symmetry of g
        S.g_at(p, G.data());
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j)
                r.g_symmetry = std::max(r.g_symmetry, std::abs(G[i * d + j] - G[j * d + i]));
    }
    return r;
}

FormField act_j(const FormField& a, const AlmostHermitianStructure& S) {
    const int k = a.degree();
    if (k == 0) return a;
    FormField out = pointwise_apply(a, S.Jt, S.JtInv, S.det_one);
    if (k % 2 == 1) out *= -1.0;
    return out;
}

FormField project_invariant(const FormField& a, const AlmostHermitianStructure& S) {
    if (a.degree() != 2) throw std::invalid_argument("project_invariant: degree must be 2");
    FormField out = act_j(a, S);
    out += a;
    out *= 0.5;
    return out;
}

FormField project_anti(const FormField& a, const AlmostHermitianStructure& S) {
    if (a.degree() != 2) throw std::invalid_argument("project_anti: degree must be 2");
    FormField ja = act_j(a, S);
    FormField out = a;
    out -= ja;
    out *= 0.5;
    return out;
}

namespace {

// Derivation extension of J to k-forms (complex-linear). The type (p,q) part
// is the eigenspace of i * D with eigenvalue p - q.
FormField apply_i_derivation(const FormField& a, const AlmostHermitianStructure& S) {
    const GridSpec& g = a.grid();
    const int k = a.degree();
    const auto& table = derivation_table(g.dim(), k);
    FormField out(g, k, false);
    const int nc = a.ncomps();
    std::vector<const cplx*> in(nc);
    std::vector<cplx*> ov(nc);
    for (int i = 0; i < nc; ++i) in[i] = a.comp(i).values().data();
    for (int i = 0; i < nc; ++i) ov[i] = out.comp(i).mutable_values().data();
    const int d = g.dim();
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t p = 0; p < std::ptrdiff_t(g.npoints()); ++p) {
        const double* J = S.J.at(p);
        for (const auto& e : table) {
            // slot covector e^{row} is replaced by sum_col J(row, col) e^{col}
            ov[e.out][p] += e.sign * J[e.row * d + e.col] * cplx(0.0, 1.0) * in[e.in][p];
        }
    }
    return out;
}

}  // namespace

FormField project_type(const FormField& a, int p, int q, const AlmostHermitianStructure& S) {
    const int k = a.degree();
    if (p < 0 || q < 0 || p + q != k) throw std::invalid_argument("project_type: need p + q = degree");
    // Lagrange polynomial in iD over the spectrum {k, k-2, ..., -k}.
    FormField cur = a;
    if (a.is_real()) {
        // promote to complex storage
        cur *= cplx(1.0, 0.0);
    }
    const int target = p - q;
    for (int mu = -k; mu <= k; mu += 2) {
        if (mu == target) continue;
        FormField id = apply_i_derivation(cur, S);
        FormField shifted = id;
        FormField muc = cur;
        muc *= double(mu);
        shifted -= muc;
        shifted *= 1.0 / double(target - mu);
        cur = std::move(shifted);
    }
    return cur;
}

FormField weil_operator(const FormField& a, const AlmostHermitianStructure& S) {
    const int k = a.degree();
    FormField acc(a.grid(), k, false);
    for (int p = 0; p <= k; ++p) {
        int q = k - p;
        FormField part = project_type(a, p, q, S);
        // weight (sqrt(-1))^{p-q}
        int e = ((p - q) % 4 + 4) % 4;
        static const cplx w[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
        part *= w[e];
        acc += part;
    }
    if (a.is_real()) return acc.real_part();
    return acc;
}

double nijenhuis_max_norm(const AlmostHermitianStructure& S) {
    const GridSpec& g = S.grid;
    const int d = g.dim();
    // entry fields of J and their spectral derivatives
    std::vector<ScalarField> Jf(d * d, ScalarField(g));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            CVec v(g.npoints());
            for (std::size_t p = 0; p < g.npoints(); ++p) v[p] = S.J.entry(p, i, j);
            Jf[i * d + j] = ScalarField(g, std::move(v), true);
        }
    std::vector<std::vector<ScalarField>> dJ(d);  // dJ[a][i*d+j] = d_a J^i_j
    for (int a = 0; a < d; ++a) {
        dJ[a].reserve(d * d);
        for (int i = 0; i < d * d; ++i) dJ[a].push_back(derivative(Jf[i], a));
    }

    double mx = 0.0;
    for (std::size_t p = 0; p < g.npoints(); ++p) {
        double acc = 0.0;
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j)
                for (int k = 0; k < d; ++k) {
                    double n = 0.0;
                    for (int l = 0; l < d; ++l) {
                        double Jli = S.J.entry(p, l, i), Jlj = S.J.entry(p, l, j);
                        double Jkl = S.J.entry(p, k, l);
                        n += Jli * dJ[l][k * d + j].values()[p].real();
                        n -= Jlj * dJ[l][k * d + i].values()[p].real();
                        n += Jkl * dJ[j][l * d + i].values()[p].real();
                        n -= Jkl * dJ[i][l * d + j].values()[p].real();
                    }
                    acc += n * n;
                }
        mx = std::max(mx, acc);
    }
    return std::sqrt(mx);
}

}  // namespace akg

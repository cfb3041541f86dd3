// The compatible triple (omega, J, g) on the torus: pointwise almost complex
// structures built by symplectic conjugation of the standard one, the induced
// metric, the J-action on forms, invariant/anti-invariant projections, type
// projections and the type-weighting operator.
#pragma once

#include <cstdint>
#include <optional>

#include "akg/form_field.hpp"
#include "akg/matrix_field.hpp"

namespace akg {

// Scenario generator knobs. epsilon = 0 reproduces the standard integrable
// structure exactly. The generator field is normalized to unit pointwise sup
// norm and scaled by epsilon * amplitude; amplitude defaults are per
// dimension, chosen so the structure's spectral tail beyond the default grid
// band stays below the verification tolerances.
struct StructureRecipe {
    double epsilon = 0.0;
    int band = 1;
    std::uint64_t seed = 1;
    std::optional<double> amplitude;  // default: 0.5 for m=2, 0.1 for m>=3

    double effective_amplitude(int m) const {
        double a = amplitude ? *amplitude : (m == 2 ? 0.5 : 0.1);
        return epsilon * a;
    }
};

class AlmostHermitianStructure {
  public:
    GridSpec grid;
    int m = 0;
    FormField omega;        // constant standard symplectic form
    MatrixField J;          // pointwise J on tangent vectors
    MatrixField Jt;         // transpose, the action on covectors is -Jt
    MatrixField JtInv;      // inverse of Jt (= -Jt)
    ScalarField det_one;    // constant 1 field (det of J and of Jt)
    RVec sqrt_det_g;        // pointwise volume density (analytically 1)
    double tame_margin = 0.0;
    StructureRecipe recipe;

    // Metric matrices derived from J at one point: g = Omega J, ginv = J Omega.
    void g_at(std::size_t p, double* out) const;
    void ginv_at(std::size_t p, double* out) const;

    bool integrable_base() const { return recipe.epsilon == 0.0; }
};

// Builds S(x) = exp(t A(x)) with A a band-limited random field in the Lie
// algebra of the linear symplectic group, J = S J0 S^{-1} and g from
// compatibility. Throws if the tamedness margin drops below 1e-6.
AlmostHermitianStructure build_structure(const GridSpec& grid, const StructureRecipe& recipe);

// Largest residuals of the structure invariants over the grid, for the
// verification suites: {J^2 + I, omega(J.,J.) - omega, asymmetry of g}.
struct StructureResiduals {
    double j_squared;
    double omega_invariance;
    double g_symmetry;
    double g_min_eigenvalue;
};
StructureResiduals structure_invariants(const AlmostHermitianStructure& S);

// J acting on k-forms: alpha -> (-1)^k alpha(J., ..., J.).
FormField act_j(const FormField& a, const AlmostHermitianStructure& S);

// Projections (1 +- J)/2 on 2-forms.
FormField project_invariant(const FormField& a, const AlmostHermitianStructure& S);
FormField project_anti(const FormField& a, const AlmostHermitianStructure& S);

// Pointwise projection onto the (p,q) type component (complex output).
FormField project_type(const FormField& a, int p, int q, const AlmostHermitianStructure& S);

// Type-weighting operator: multiplies the (p,q) part by (sqrt(-1))^{p-q}.
// Real output for real input.
FormField weil_operator(const FormField& a, const AlmostHermitianStructure& S);

// Max pointwise Frobenius norm of the Nijenhuis tensor of J, computed from
// its coordinate formula with spectral derivatives.
double nijenhuis_max_norm(const AlmostHermitianStructure& S);

}  // namespace akg

// Increasing multi-index bookkeeping for exterior algebra on R^{2m}. All sign
// conventions are derived from merge_sign below; every table in the library
// is built from it so there is a single audited source of signs.
#pragma once

#include <cstdint>
#include <vector>

namespace akg {

using Mask = std::uint32_t;

int popcount(Mask m);

// Elements of the mask in increasing order.
std::vector<int> mask_elements(Mask m);
Mask mask_from(const std::vector<int>& elems);

// Sign of the shuffle sorting the concatenation (A ascending, B ascending)
// into ascending order; 0 if the masks intersect.
int merge_sign(Mask a, Mask b);

// Increasing k-subsets of {0..dim-1} in lexicographic order, and the inverse
// rank lookup. Cached per (dim, k).
class SubsetTable {
  public:
    static const SubsetTable& get(int dim, int k);

    int count() const { return int(masks_.size()); }
    Mask mask(int idx) const { return masks_[idx]; }
    int rank(Mask m) const { return rank_[m]; }
    const std::vector<Mask>& masks() const { return masks_; }

  private:
    SubsetTable(int dim, int k);
    std::vector<Mask> masks_;
    std::vector<int> rank_;
};

// Component-level expansion of the wedge product of a p-form and a q-form.
struct WedgeEntry {
    int out;
    int a;
    int b;
    double sign;
};
const std::vector<WedgeEntry>& wedge_table(int dim, int p, int q);

// Component-level expansion of the exterior derivative of a k-form:
// (d a)_out += sign * d(a_in)/dx_axis.
struct DerivEntry {
    int out;
    int in;
    int axis;
    double sign;
};
const std::vector<DerivEntry>& deriv_table(int dim, int k);

// Contraction with the Poisson bivector of the standard symplectic form:
// (dual lefschetz) out_{I \ {2j-1,2j}} += sign * in_I.
struct ContractEntry {
    int out;
    int in;
    double sign;
};
const std::vector<ContractEntry>& dual_lefschetz_table(int dim, int k);

// Derivation extension of a matrix T acting on covectors: for a k-form,
// out += sign * T(row, col) * in. Used by the type projectors.
struct DerivationEntry {
    int out;
    int in;
    int row;
    int col;
    double sign;
};
const std::vector<DerivationEntry>& derivation_table(int dim, int k);

// Functorial (compound) extension of a matrix to k-forms: for each output and
// input component, the k x k minor with rows rows(out) and columns cols(in).
// Entries list the flat (row*dim+col) positions of that submatrix, row-major.
struct CompoundEntry {
    int out;
    int in;
    std::vector<int> pos;
};
const std::vector<CompoundEntry>& compound_table(int dim, int k);

// Sign s(I) with dx^I ^ dx^{I^c} = s(I) dx^{0...dim-1}; used by the Hodge
// star.
double complement_sign(int dim, Mask m);

}  // namespace akg

// Uniform periodic grids on the torus T^{2m} = R^{2m} / (2 pi Z)^{2m}.
#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "akg/util.hpp"

namespace akg {

// All axes share the same point count n and period 2*pi. Points per axis must
// be even so Nyquist handling is unambiguous; fields keep the Nyquist plane
// empty so dealiased products are exact (see ScalarField).
class GridSpec {
  public:
    GridSpec() = default;
    GridSpec(int m, int n) : m_(m), n_(n) {
        if (m < 2) throw std::invalid_argument("GridSpec: complex dimension m must be >= 2");
        if (n < 8 || n % 2 != 0) throw std::invalid_argument("GridSpec: points per axis must be even and >= 8");
        npts_ = 1;
        for (int a = 0; a < dim(); ++a) npts_ *= std::size_t(n);
    }

    int m() const { return m_; }
    int n() const { return n_; }
    int dim() const { return 2 * m_; }
    std::size_t npoints() const { return npts_; }
    double spacing() const { return kTwoPi / n_; }

    bool operator==(const GridSpec& o) const { return m_ == o.m_ && n_ == o.n_; }
    bool operator!=(const GridSpec& o) const { return !(*this == o); }

    // Coordinates of grid point with flat index p (row-major, axis 0 slowest).
    std::vector<double> point(std::size_t p) const {
        std::vector<double> x(dim());
        for (int a = dim() - 1; a >= 0; --a) {
            x[a] = double(p % n_) * spacing();
            p /= n_;
        }
        return x;
    }

    // Signed integer frequency of spectral index j on one axis, in
    // [-n/2, n/2). Index 0 is the mean mode.
    int freq(int j) const { return j < n_ / 2 ? j : j - n_; }

    // Largest representable non-Nyquist frequency magnitude.
    int max_band() const { return n_ / 2 - 1; }

    std::vector<int> shape() const { return std::vector<int>(dim(), n_); }

  private:
    int m_ = 0;
    int n_ = 0;
    std::size_t npts_ = 0;
};

}  // namespace akg

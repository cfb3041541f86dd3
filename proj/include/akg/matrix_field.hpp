// Pointwise (2m x 2m) real matrix fields, stored point-major so per-point
// kernels touch contiguous memory.
#pragma once

#include <cstddef>
#include <vector>

#include "akg/grid.hpp"

namespace akg {

class MatrixField {
  public:
    MatrixField() = default;
    MatrixField(GridSpec grid, int dim)
        : grid_(grid), dim_(dim), data_(grid.npoints() * std::size_t(dim) * dim, 0.0) {}

    const GridSpec& grid() const { return grid_; }
    int dim() const { return dim_; }

    double* at(std::size_t p) { return data_.data() + p * std::size_t(dim_) * dim_; }
    const double* at(std::size_t p) const { return data_.data() + p * std::size_t(dim_) * dim_; }

    double& entry(std::size_t p, int i, int j) { return at(p)[i * dim_ + j]; }
    double entry(std::size_t p, int i, int j) const { return at(p)[i * dim_ + j]; }

    // max over points of max-abs entry of (this - other)
    double max_abs_diff(const MatrixField& o) const {
        double m = 0.0;
        for (std::size_t i = 0; i < data_.size(); ++i) {
            double d = std::abs(data_[i] - o.data_[i]);
            if (d > m) m = d;
        }
        return m;
    }

  private:
    GridSpec grid_;
    int dim_ = 0;
    std::vector<double> data_;
};

}  // namespace akg

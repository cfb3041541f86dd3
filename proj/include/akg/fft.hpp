// Cached FFTW plans for multi-dimensional complex transforms, plus spectral
// embedding between grids of different resolution (zero padding / truncation).
#pragma once

#include <vector>

#include "akg/grid.hpp"
#include "akg/util.hpp"

namespace akg {

// Forward transform produces coefficients normalized so that
//   f(x) = sum_k fhat(k) exp(i k.x),
// i.e. forward divides by the point count and backward does not scale.
// Plans use FFTW_ESTIMATE only: planning is then deterministic, which keeps
// reports byte-identical across runs for a fixed seed.
namespace fft {

// in and out may alias. shape is the per-axis length list.
void forward(const std::vector<int>& shape, const cplx* in, cplx* out);
void backward(const std::vector<int>& shape, const cplx* in, cplx* out);

// Copy spectral coefficients between an n_src and an n_dst grid of the same
// rank, matching integer frequencies and zero-filling the rest. Frequencies
// at or beyond min(n_src, n_dst)/2 are dropped (Nyquist stays empty).
void embed_spectrum(int rank, int n_src, const cplx* src, int n_dst, cplx* dst);

}  // namespace fft

}  // namespace akg

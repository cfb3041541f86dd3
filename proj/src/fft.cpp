#include "akg/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <array>
#include <cstring>
#include <map>
#include <mutex>

namespace akg {
namespace fft {

namespace {

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

// Plan creation is not thread-safe in FFTW; executions via the new-array
// interface are. Buffers used with these plans are 64-byte aligned
// (AlignedAlloc), matching the alignment of the planning scratch.
class PlanCache {
  public:
    static PlanCache& instance() {
        static PlanCache c;
        return c;
    }

    PlanPair& get(const std::vector<int>& shape) {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = plans_.find(shape);
        if (it != plans_.end()) return it->second;

        std::size_t n = 1;
        for (int s : shape) n *= std::size_t(s);
        CVec scratch_in(n), scratch_out(n);
        auto* in = reinterpret_cast<fftw_complex*>(scratch_in.data());
        auto* out = reinterpret_cast<fftw_complex*>(scratch_out.data());
        PlanPair p;
        p.fwd = fftw_plan_dft(int(shape.size()), shape.data(), in, out, FFTW_FORWARD, FFTW_ESTIMATE);
        p.bwd = fftw_plan_dft(int(shape.size()), shape.data(), in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
        return plans_.emplace(shape, p).first->second;
    }

  private:
    PlanCache() = default;
    std::mutex mu_;
    std::map<std::vector<int>, PlanPair> plans_;
};

std::size_t total(const std::vector<int>& shape) {
    std::size_t n = 1;
    for (int s : shape) n *= std::size_t(s);
    return n;
}

}  // namespace

void forward(const std::vector<int>& shape, const cplx* in, cplx* out) {
    PlanPair& p = PlanCache::instance().get(shape);
    const std::size_t n = total(shape);
    CVec tmp;
    const cplx* src = in;
    if (in == out) {
        tmp.assign(in, in + n);
        src = tmp.data();
    }
    fftw_execute_dft(p.fwd, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(src)),
                     reinterpret_cast<fftw_complex*>(out));
    const double scale = 1.0 / double(n);
    for (std::size_t i = 0; i < n; ++i) out[i] *= scale;
}

void backward(const std::vector<int>& shape, const cplx* in, cplx* out) {
    PlanPair& p = PlanCache::instance().get(shape);
    const std::size_t n = total(shape);
    CVec tmp;
    const cplx* src = in;
    if (in == out) {
        tmp.assign(in, in + n);
        src = tmp.data();
    }
    fftw_execute_dft(p.bwd, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(src)),
                     reinterpret_cast<fftw_complex*>(out));
}

namespace {

// Index maps for embed_spectrum, cached per (rank, n_src, n_dst): for each
// retained mode, the flat source and destination indices.
struct EmbedMap {
    std::vector<std::size_t> src;
    std::vector<std::size_t> dst;
};

const EmbedMap& embed_map(int rank, int n_src, int n_dst) {
    static std::mutex mu;
    static std::map<std::array<int, 3>, EmbedMap> cache;
    std::lock_guard<std::mutex> lock(mu);
    std::array<int, 3> key = {rank, n_src, n_dst};
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    const int band = std::min(n_src, n_dst) / 2 - 1;  // largest kept |frequency|
    std::vector<int> freqs;
    for (int f = -band; f <= band; ++f) freqs.push_back(f);

    EmbedMap m;
    const std::size_t count = [&] {
        std::size_t c = 1;
        for (int a = 0; a < rank; ++a) c *= freqs.size();
        return c;
    }();
    m.src.resize(count);
    m.dst.resize(count);

    std::vector<int> digit(rank, 0);
    for (std::size_t idx = 0; idx < count; ++idx) {
        std::size_t s = 0, d = 0;
        for (int a = 0; a < rank; ++a) {
            int f = freqs[digit[a]];
            int js = f >= 0 ? f : f + n_src;
            int jd = f >= 0 ? f : f + n_dst;
            s = s * std::size_t(n_src) + std::size_t(js);
            d = d * std::size_t(n_dst) + std::size_t(jd);
        }
        m.src[idx] = s;
        m.dst[idx] = d;
        for (int a = rank - 1; a >= 0; --a) {
            if (++digit[a] < int(freqs.size())) break;
            digit[a] = 0;
        }
    }
    return cache.emplace(key, std::move(m)).first->second;
}

}  // namespace

void embed_spectrum(int rank, int n_src, const cplx* src, int n_dst, cplx* dst) {
    const EmbedMap& m = embed_map(rank, n_src, n_dst);
    std::size_t total_dst = 1;
    for (int a = 0; a < rank; ++a) total_dst *= std::size_t(n_dst);
    std::fill(dst, dst + total_dst, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < m.src.size(); ++i) dst[m.dst[i]] = src[m.src[i]];
}

}  // namespace fft
}  // namespace akg

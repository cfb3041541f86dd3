// Small shared utilities: aligned storage for FFT buffers, deterministic RNG
// streams, and a few numeric helpers.
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <new>
#include <stdexcept>
#include <string>
#include <vector>

namespace akg {

using cplx = std::complex<double>;

constexpr double kTwoPi = 6.283185307179586476925286766559;

// 64-byte aligned allocator so std::vector buffers are valid for FFTW SIMD
// kernels regardless of which array a plan is executed on.
template <class T>
struct AlignedAlloc {
    using value_type = T;
    static constexpr std::size_t alignment = 64;

    AlignedAlloc() = default;
    template <class U>
    AlignedAlloc(const AlignedAlloc<U>&) {}

    T* allocate(std::size_t n) {
        void* p = std::aligned_alloc(alignment, ((n * sizeof(T) + alignment - 1) / alignment) * alignment);
        if (!p) throw std::bad_alloc();
        return static_cast<T*>(p);
    }
    void deallocate(T* p, std::size_t) noexcept { std::free(p); }

    template <class U>
    bool operator==(const AlignedAlloc<U>&) const {
        return true;
    }
};

using CVec = std::vector<cplx, AlignedAlloc<cplx>>;
using RVec = std::vector<double, AlignedAlloc<double>>;

// Deterministic random stream. Uses xoshiro256** seeded by splitmix64 and a
// hand-rolled Box-Muller so results do not depend on the standard library's
// distribution implementations.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) {
        std::uint64_t x = seed + 0x9e3779b97f4a7c15ull;
        for (int i = 0; i < 4; ++i) {
            std::uint64_t z = (x += 0x9e3779b97f4a7c15ull);
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
            s_[i] = z ^ (z >> 31);
        }
    }

    // Stream derived from a parent seed and a purpose tag, so independent
    // samplers never share state.
    static RngStream derive(std::uint64_t seed, const std::string& tag) {
        std::uint64_t h = 1469598103934665603ull;
        for (unsigned char c : tag) {
            h ^= c;
            h *= 1099511628211ull;
        }
        return RngStream(seed ^ h);
    }

    std::uint64_t next_u64() {
        auto rotl = [](std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); };
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in [0,1).
    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        while (u1 <= 1e-300) u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(kTwoPi * u2);
        have_spare_ = true;
        return r * std::cos(kTwoPi * u2);
    }

  private:
    std::uint64_t s_[4];
    bool have_spare_ = false;
    double spare_ = 0.0;
};

inline double relative_to(double value, double scale) { return value / (scale > 0 ? scale : 1.0); }

}  // namespace akg

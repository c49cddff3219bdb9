#pragma once

#include <array>
#include <cstdint>
#include <cmath>

namespace levyem::noise {

// Counter-based Philox 4x32-10 generator (Salmon et al., SC 2011).
//
// A stream is identified by (master_seed, stream_id). Draws within a stream
// walk a 64-bit block counter, so any stream can be opened at any time on any
// thread and always yields the same sequence. Monte Carlo paths use
// stream_id = path_index; auxiliary consumers use the reserved tags below so
// they can never collide with a path stream.
class PhiloxRng {
public:
    using result_type = std::uint64_t;

    PhiloxRng(std::uint64_t master_seed, std::uint64_t stream_id) noexcept
        : key0_(static_cast<std::uint32_t>(master_seed)),
          key1_(static_cast<std::uint32_t>(master_seed >> 32)),
          stream0_(static_cast<std::uint32_t>(stream_id)),
          stream1_(static_cast<std::uint32_t>(stream_id >> 32)) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~static_cast<result_type>(0); }

    std::uint32_t next_u32() noexcept {
        if (pos_ == 4) refill();
        return buf_[pos_++];
    }

    // Low word first, then high word.
    std::uint64_t next_u64() noexcept {
        const std::uint64_t lo = next_u32();
        const std::uint64_t hi = next_u32();
        return lo | (hi << 32);
    }

    result_type operator()() noexcept { return next_u64(); }

    // Uniform on the open interval (0,1); never returns an endpoint, so
    // log/tan transforms downstream are safe.
    double uniform01() noexcept {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Exp(1) via inversion.
    double exponential() noexcept { return -std::log(uniform01()); }

    // N(0,1), Box-Muller cosine branch. Uses two uniforms per draw; the sine
    // twin is discarded to keep the stream layout simple and deterministic.
    double gaussian() noexcept {
        const double u1 = uniform01();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    // Uniform integer in [0, n), Lemire multiply-shift (no rejection, bias
    // below 2^-64 * n which is irrelevant at our sample sizes).
    std::uint64_t uniform_below(std::uint64_t n) noexcept {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

private:
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;  // golden ratio
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;  // sqrt(3) - 1
    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;

    void refill() noexcept {
        std::uint32_t c0 = static_cast<std::uint32_t>(block_);
        std::uint32_t c1 = static_cast<std::uint32_t>(block_ >> 32);
        std::uint32_t c2 = stream0_;
        std::uint32_t c3 = stream1_;
        std::uint32_t k0 = key0_;
        std::uint32_t k1 = key1_;
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c0;
            const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c2;
            const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
            const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
            c0 = hi1 ^ c1 ^ k0;
            c1 = lo1;
            c2 = hi0 ^ c3 ^ k1;
            c3 = lo0;
            if (round < 9) {
                k0 += kWeyl0;
                k1 += kWeyl1;
            }
        }
        buf_ = {c0, c1, c2, c3};
        ++block_;
        pos_ = 0;
    }

    std::uint32_t key0_, key1_;
    std::uint32_t stream0_, stream1_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    int pos_ = 4;
};

// Reserved stream tags. Path streams use the raw path index, which stays far
// below 2^56 in practice.
inline constexpr std::uint64_t kStreamBootstrap = (1ull << 56) + 1;
inline constexpr std::uint64_t kStreamMoments = (1ull << 56) + 2;
inline constexpr std::uint64_t kStreamFitRate = (1ull << 56) + 3;
inline constexpr std::uint64_t kStreamTestFunctions = (1ull << 56) + 4;

}  // namespace levyem::noise

#pragma once

#include <array>
#include <cstdint>

namespace sscp {

// Philox4x32-10 counter-based generator. A (seed, stream) pair plus a block
// counter fully determines every output, so independent substreams can be
// handed to workers without coordination and results never depend on the
// worker count.
struct Philox4x32 {
    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                              std::array<std::uint32_t, 2> key) {
        constexpr std::uint32_t mul0 = 0xD2511F53u, mul1 = 0xCD9E8D57u;
        constexpr std::uint32_t weyl0 = 0x9E3779B9u, weyl1 = 0xBB67AE85u;
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = static_cast<std::uint64_t>(mul0) * ctr[0];
            const std::uint64_t p1 = static_cast<std::uint64_t>(mul1) * ctr[2];
            ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
                   static_cast<std::uint32_t>(p1),
                   static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
                   static_cast<std::uint32_t>(p0)};
            key[0] += weyl0;
            key[1] += weyl1;
        }
        return ctr;
    }
};

// Buffered double stream over one (seed, stream) substream. Each block yields
// two uniforms; draws map 53 random bits into the open interval (0,1).
class PhiloxStream {
public:
    explicit PhiloxStream(std::uint64_t seed, std::uint64_t stream = 0)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          stream_(stream) {}

    double next_u01() {
        if (have_ == 0) refill();
        return take_[--have_];
    }

private:
    void refill() {
        const std::array<std::uint32_t, 4> ctr{
            static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
            static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
        const auto out = Philox4x32::block(ctr, key_);
        ++block_;
        const auto to_u01 = [](std::uint32_t hi, std::uint32_t lo) {
            const std::uint64_t v = (static_cast<std::uint64_t>(hi) << 32) | lo;
            return (static_cast<double>(v >> 11) + 0.5) * 0x1.0p-53;
        };
        take_[1] = to_u01(out[0], out[1]);
        take_[0] = to_u01(out[2], out[3]);
        have_ = 2;
    }

    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_ = 0;
    std::uint64_t block_ = 0;
    double take_[2] = {0, 0};
    int have_ = 0;
};

// splitmix64, used to derive per-grid-point seeds from (seed, index).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace sscp

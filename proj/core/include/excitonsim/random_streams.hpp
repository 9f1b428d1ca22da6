// Counter-based Philox4x32-10 generator and keyed normal streams
//
// A stream is identified by (seed, stream index). Draw j of a stream depends only
// on (seed, index, j), so realizations can be generated in any order or on any
// thread and still reproduce bit for bit.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace excitonsim::rng {

using Counter = std::array<std::uint32_t, 4>;
using Key = std::array<std::uint32_t, 2>;

// Philox4x32 with 10 rounds (Salmon et al., SC'11 parameters).
inline Counter philox4x32_10(Counter ctr, Key key) noexcept {
    constexpr std::uint32_t kMul0 = 0xD2511F53u;
    constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
        const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const auto lo0 = static_cast<std::uint32_t>(p0);
        const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const auto lo1 = static_cast<std::uint32_t>(p1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    return ctr;
}

// Uniform double in the open interval (0, 1) from 52 random bits.
inline double to_open_unit(std::uint32_t hi, std::uint32_t lo) noexcept {
    const std::uint64_t bits = ((static_cast<std::uint64_t>(hi) << 32) | lo) >> 12;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-52;
}

// Standard normal draws for one keyed stream. Each Philox block yields two
// uniforms and, through Box-Muller, two normals.
class NormalStream {
public:
    NormalStream(std::uint64_t seed, std::uint64_t stream) noexcept
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          stream_lo_(static_cast<std::uint32_t>(stream)),
          stream_hi_(static_cast<std::uint32_t>(stream >> 32)) {}

    // j-th standard normal of the stream.
    double operator()(std::uint64_t j) const noexcept {
        const std::uint64_t block = j / 2;
        const Counter out = philox4x32_10(
            {static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32),
             stream_lo_, stream_hi_},
            key_);
        const double u1 = to_open_unit(out[0], out[1]);
        const double u2 = to_open_unit(out[2], out[3]);
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        return (j % 2 == 0) ? radius * std::cos(angle) : radius * std::sin(angle);
    }

private:
    Key key_;
    std::uint32_t stream_lo_;
    std::uint32_t stream_hi_;
};

} // namespace excitonsim::rng

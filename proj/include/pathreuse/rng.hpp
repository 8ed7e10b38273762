#pragma once

#include <cstdint>

namespace pathreuse {

/// Stream purposes keep keys disjoint across pipeline stages.
enum class RngPurpose : uint32_t {
    DmTargetInit = 1,
    Emission = 2,
    BounceDir = 3,
    PruneMark = 4,
};

/// Counter-based random stream: every draw is a pure function of
/// (seed, key). Identical keys produce identical values on any worker
/// count, which is what the bitwise-reproducibility contract needs.
struct RngKey {
    uint32_t a = 0;  // path id / sample id
    uint32_t b = 0;  // epoch or frame
    uint32_t c = 0;  // bounce index or spare
    RngPurpose purpose = RngPurpose::Emission;
    uint32_t lane = 0;
};

namespace detail {
inline uint64_t mix64(uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}
}  // namespace detail

inline uint64_t rng_bits(uint64_t seed, const RngKey& key) {
    uint64_t h = detail::mix64(seed);
    h = detail::mix64(h ^ (static_cast<uint64_t>(key.a) | (static_cast<uint64_t>(key.b) << 32)));
    h = detail::mix64(h ^ (static_cast<uint64_t>(key.c) |
                           (static_cast<uint64_t>(static_cast<uint32_t>(key.purpose)) << 32)));
    h = detail::mix64(h ^ key.lane);
    return h;
}

/// Uniform float in [0, 1), 24-bit mantissa.
inline float rng_uniform(uint64_t seed, const RngKey& key) {
    return static_cast<float>(rng_bits(seed, key) >> 40) * 0x1.0p-24f;
}

/// Uniform double in [0, 1), 53-bit mantissa; used where the warp math runs
/// in double precision.
inline double rng_uniform_d(uint64_t seed, const RngKey& key) {
    return static_cast<double>(rng_bits(seed, key) >> 11) * 0x1.0p-53;
}

}  // namespace pathreuse

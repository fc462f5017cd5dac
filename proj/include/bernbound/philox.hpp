#pragma once

// Philox4x32-10 counter-based generator (Salmon et al., SC 2011).
// Every output is a pure function of (key, counter), so replicate streams are
// identical under any parallel partitioning of the replicate index range.

#include <array>
#include <cstdint>

namespace bernbound {

namespace detail {

inline constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
inline constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
inline constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void philox_round(std::array<std::uint32_t, 4>& ctr, const std::array<std::uint32_t, 2>& key) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * ctr[2];
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

}  // namespace detail

/// One 128-bit Philox block keyed by seed at counter (ctr_hi, ctr_lo).
inline std::array<std::uint32_t, 4> philox4x32(std::uint64_t seed, std::uint64_t ctr_hi, std::uint64_t ctr_lo) {
    std::array<std::uint32_t, 4> ctr = {
        static_cast<std::uint32_t>(ctr_lo), static_cast<std::uint32_t>(ctr_lo >> 32),
        static_cast<std::uint32_t>(ctr_hi), static_cast<std::uint32_t>(ctr_hi >> 32)};
    std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    for (int round = 0; round < 10; ++round) {
        if (round != 0) {
            key[0] += detail::kPhiloxW0;
            key[1] += detail::kPhiloxW1;
        }
        detail::philox_round(ctr, key);
    }
    return ctr;
}

/// Uniform double in [0, 1) from the top 53 bits of a Philox block.
/// value = f(seed, replicate, variable); no sequential state anywhere.
inline double uniform01(std::uint64_t seed, std::uint64_t replicate, std::uint64_t variable) {
    const auto w = philox4x32(seed, replicate, variable);
    const std::uint64_t bits = (static_cast<std::uint64_t>(w[0]) << 32) | w[1];
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace bernbound

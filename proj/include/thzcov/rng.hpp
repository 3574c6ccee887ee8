// SPDX-License-Identifier: Apache-2.0
//
// Philox4x32-10 counter-based generator (Salmon et al., "Parallel random
// numbers: as easy as 1, 2, 3", SC 2011). Each Monte-Carlo realization gets
// its own stream keyed by (seed, realization index), so serial and parallel
// runs consume identical randomness regardless of the worker count.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

namespace thzcov {

namespace detail {

inline constexpr std::uint32_t philox_m0 = 0xD2511F53u;
inline constexpr std::uint32_t philox_m1 = 0xCD9E8D57u;
inline constexpr std::uint32_t philox_w0 = 0x9E3779B9u;
inline constexpr std::uint32_t philox_w1 = 0xBB67AE85u;

inline void philox_round(std::array<std::uint32_t, 4>& ctr, const std::array<std::uint32_t, 2>& key) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(philox_m0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(philox_m1) * ctr[2];
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

}  // namespace detail

/// One keyed block of Philox4x32 with 10 rounds.
inline std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                                  std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += detail::philox_w0;
            key[1] += detail::philox_w1;
        }
        detail::philox_round(counter, key);
    }
    return counter;
}

/// A single Philox stream exposing the UniformRandomBitGenerator interface,
/// so the standard <random> distributions can run on top of it. The 128-bit
/// counter is laid out as (block index, stream id); the block index advances
/// as words are consumed.
class PhiloxStream {
  public:
    using result_type = std::uint32_t;

    PhiloxStream() : PhiloxStream(0, 0, 0) {}

    /// Stream identified by (seed, stream id, domain tag). Streams with
    /// distinct ids or tags are statistically independent.
    PhiloxStream(std::uint64_t seed, std::uint64_t stream_id, std::uint32_t domain = 0) {
        key_ = {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
        base_ = {0, domain, static_cast<std::uint32_t>(stream_id),
                 static_cast<std::uint32_t>(stream_id >> 32)};
        block_ = 0;
        pos_ = 4;
        have_spare_normal_ = false;
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        if (pos_ == 4) {
            auto ctr = base_;
            ctr[0] = block_++;
            buffer_ = philox4x32_10(ctr, key_);
            pos_ = 0;
        }
        return buffer_[pos_++];
    }

    /// Uniform double in the open interval (0, 1), 53 random bits.
    double u01() {
        const std::uint64_t hi = (*this)();
        const std::uint64_t lo = (*this)();
        const std::uint64_t bits = (hi << 32) | lo;
        return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller; the second variate of each pair is
    /// cached within the stream.
    double normal() {
        if (have_spare_normal_) {
            have_spare_normal_ = false;
            return spare_normal_;
        }
        const double u1 = u01();
        const double u2 = u01();
        const double mag = std::sqrt(-2.0 * std::log(u1));
        const double ang = 2.0 * M_PI * u2;
        spare_normal_ = mag * std::sin(ang);
        have_spare_normal_ = true;
        return mag * std::cos(ang);
    }

    /// Exponential with the given rate.
    double exponential(double rate) { return -std::log(u01()) / rate; }

  private:
    std::array<std::uint32_t, 2> key_{};
    std::array<std::uint32_t, 4> base_{};
    std::array<std::uint32_t, 4> buffer_{};
    std::uint32_t block_ = 0;
    int pos_ = 4;
    double spare_normal_ = 0.0;
    bool have_spare_normal_ = false;
};

}  // namespace thzcov

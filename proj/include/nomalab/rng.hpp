// SPDX-License-Identifier: Apache-2.0
#pragma once

// Counter-based random numbers for reproducible, order-independent Monte Carlo.
// Philox4x32-10 (Salmon et al., "Parallel random numbers: as easy as 1, 2, 3").
// Every (seed, stream, lane) triple owns an independent substream, so trials can
// be farmed out to any number of workers and still produce identical results.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace nomalab {

inline constexpr const char* kRngName = "philox4x32-10";

namespace detail {

inline constexpr uint32_t kPhiloxM0 = 0xD2511F53u;
inline constexpr uint32_t kPhiloxM1 = 0xCD9E8D57u;
inline constexpr uint32_t kPhiloxW0 = 0x9E3779B9u;
inline constexpr uint32_t kPhiloxW1 = 0xBB67AE85u;

inline std::array<uint32_t, 4> philox4x32(std::array<uint32_t, 4> ctr,
                                          std::array<uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        const uint64_t p0 = uint64_t(kPhiloxM0) * ctr[0];
        const uint64_t p1 = uint64_t(kPhiloxM1) * ctr[2];
        const uint32_t hi0 = uint32_t(p0 >> 32), lo0 = uint32_t(p0);
        const uint32_t hi1 = uint32_t(p1 >> 32), lo1 = uint32_t(p1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kPhiloxW0;
        key[1] += kPhiloxW1;
    }
    return ctr;
}

}  // namespace detail

class StreamRng {
  public:
    // seed: user-chosen run seed; stream: trial index; lane: per-point context id
    StreamRng(uint64_t seed, uint64_t stream, uint32_t lane)
        : key_{uint32_t(seed), uint32_t(seed >> 32)},
          base_{0, uint32_t(stream), uint32_t(stream >> 32), lane} {}

    uint64_t next_u64() {
        if (have_half_) {
            have_half_ = false;
            return half_;
        }
        auto ctr = base_;
        ctr[0] = draw_++;
        const auto r = detail::philox4x32(ctr, key_);
        half_ = (uint64_t(r[2]) << 32) | r[3];
        have_half_ = true;
        return (uint64_t(r[0]) << 32) | r[1];
    }

    // uniform on (0, 1], safe as a log() argument
    double uniform01() { return double((next_u64() >> 11) + 1) * 0x1p-53; }

    double gaussian() {
        if (have_gauss_) {
            have_gauss_ = false;
            return gauss_;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * std::numbers::pi * u2;
        gauss_ = r * std::sin(t);
        have_gauss_ = true;
        return r * std::cos(t);
    }

    // circularly-symmetric complex gaussian, unit variance per complex sample
    std::complex<double> cgaussian() {
        const double re = gaussian();
        const double im = gaussian();
        return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
    }

    // Rayleigh amplitude with E[h^2] = 1
    double rayleigh_unit() { return std::sqrt(-std::log(uniform01())); }

    // uniform integer in [0, n), n >= 1 (Lemire reduction, no rejection loop)
    uint64_t below(uint64_t n) {
        return uint64_t((static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

  private:
    std::array<uint32_t, 2> key_;
    std::array<uint32_t, 4> base_;
    uint32_t draw_ = 0;
    uint64_t half_ = 0;
    bool have_half_ = false;
    double gauss_ = 0.0;
    bool have_gauss_ = false;
};

}  // namespace nomalab

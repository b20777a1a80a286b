// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "nomalab/constellation.hpp"

namespace nomalab {

enum class ChannelKind { siso_rayleigh, mimo_rayleigh };
enum class Decoder { single_user, sic, sic_genie };

std::string to_string(ChannelKind kind);
std::string to_string(Decoder dec);

struct ChannelConfig {
    ChannelKind kind = ChannelKind::siso_rayleigh;
    std::vector<double> snr_db;  // user-1 average SNR axis, strictly increasing
    double snr_gap_db = 0.0;     // user-2 average SNR is snr_db - gap (mimo)
    int mt = 2, mr = 2;
    void validate() const;  // throws ConfigError
};

struct SimOptions {
    uint64_t trials = 100000;  // per SNR point: symbols (siso) or blocks (mimo)
    uint64_t seed = 1;
    Decoder decoder = Decoder::single_user;
    int threads = 0;                 // 0: hardware concurrency
    uint64_t early_stop_errors = 0;  // 0: run all trials
    double tau = 1.0;
    bool unit_complex_power = true;
    // per-point trial override; when set, must match snr_db in length
    std::vector<uint64_t> trials_per_point;
};

struct SerPoint {
    double snr_db = 0.0;
    uint64_t trials = 0;  // symbol decisions counted at this point
    uint64_t errors = 0;
    double ser = 0.0;
};

struct SerCurve {
    std::array<std::vector<SerPoint>, 2> user;  // [0]: user 1, [1]: user 2
    Decoder decoder = Decoder::single_user;
    ChannelKind channel = ChannelKind::siso_rayleigh;
    uint64_t seed = 0;
    std::string scheme;
    std::string rng_name;
};

SerCurve simulate_ser(const CompositeScheme& scheme, const ChannelConfig& chan,
                      const SimOptions& opts);

// least-squares slope of log10(SER) against -snr_db/10 over [lo_db, hi_db];
// throws InsufficientDataError with fewer than 3 points or any SER == 0
double estimate_diversity(const std::vector<SerPoint>& points, double lo_db,
                          double hi_db);

// --- detection primitives (exposed for tests) ---

// joint nearest-composite-point index for y = sqrt_p * (h o x) + z;
// ties go to the lower composite index
long detect_composite(const CompositeScheme& scheme, const double* y,
                      const double* h, double sqrt_p);

// user-k label of the joint argmin (no interference cancellation)
long detect_single_user(const CompositeScheme& scheme, const double* y,
                        const double* h, double sqrt_p, int user);

// detect user 2, subtract its contribution, then detect user 1 over its own
// alphabet; genie replaces the detected user-2 label with the true one
std::pair<long, long> detect_sic(const CompositeScheme& scheme, const double* y,
                                 const double* h, double sqrt_p, bool genie,
                                 long true_label2);

// --- orthogonal space-time block code primitives (n == 2 schemes) ---

// complex symbols of a 2-D scheme: point (c0, c1) -> scale * (c0 + i c1)
std::vector<std::complex<double>> complex_points(const CompositeScheme& scheme,
                                                 double tau,
                                                 bool unit_complex_power);

Eigen::Matrix2cd alamouti_encode(std::complex<double> s1,
                                 std::complex<double> s2);

struct AlamoutiCombined {
    std::complex<double> s_hat[2];
    double channel_gain = 0.0;  // ||H||_F^2
};

// matched-filter combining of Y = c H X + Z for the code above
AlamoutiCombined alamouti_combine(const Eigen::Matrix2cd& y,
                                  const Eigen::Matrix2cd& h);

}  // namespace nomalab

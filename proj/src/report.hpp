// SPDX-License-Identifier: Apache-2.0
#pragma once

// CSV / metadata emission shared by the CLI and the canned experiments.
// All formatting is locale-independent and deterministic so reruns with the
// same config are byte-identical.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "nomalab/sim.hpp"

namespace nomalab {

inline std::string fnv1a64_hex(std::string_view s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
    return buf;
}

inline std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file " + path);
    return out;
}

inline void write_ser_csv(const std::string& path, const SerCurve& curve) {
    auto out = open_out(path);
    out << "user,snr_db,trials,errors,ser\n";
    for (int u = 0; u < 2; ++u)
        for (const auto& pt : curve.user[u])
            out << (u + 1) << ',' << num(pt.snr_db) << ',' << pt.trials << ','
                << pt.errors << ',' << num(pt.ser) << '\n';
}

// sidecar with everything needed to rerun the curve
inline void write_ser_sidecar(const std::string& path, const SerCurve& curve,
                              const std::string& config_text) {
    nlohmann::json j;
    j["seed"] = curve.seed;
    j["scheme"] = curve.scheme;
    j["decoder"] = to_string(curve.decoder);
    j["channel"] = to_string(curve.channel);
    j["rng"] = curve.rng_name;
    j["config_digest"] = "fnv1a64:" + fnv1a64_hex(config_text);
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& pt : curve.user[0]) {
        pts.push_back({{"snr_db", pt.snr_db}, {"trials", pt.trials}});
    }
    j["points"] = pts;
    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

}  // namespace nomalab

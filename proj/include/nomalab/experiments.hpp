// SPDX-License-Identifier: Apache-2.0
#pragma once

// Canned experiments shared by `nomalab reproduce` and the acceptance suite.
// Each returns a list of named checks; a run passes when all checks pass.

#include <cstdint>
#include <string>
#include <vector>

namespace nomalab {

struct CheckLine {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ExperimentOutput {
    std::vector<CheckLine> checks;
    std::vector<std::string> artifacts;  // files written, if any
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

// product-distance sweep of the (3,3) scheme on p=5: closed-form bound
// dominates the exhaustive value on a uniform alpha grid and is tight at the
// partition point; reports where the two band-2 variants disagree
ExperimentOutput run_dpmin_sweep_experiment(int grid, int threads,
                                            const std::string& out_dir);

// SISO diversity: slopes of the rotated n=2 / n=3 partition schemes and the
// unrotated baseline over 25..40 dB
ExperimentOutput run_diversity_experiment(double trial_scale, uint64_t seed,
                                          int threads,
                                          const std::string& out_dir);

// 2x2 Alamouti comparison at one operating point: SER ordering follows the
// minimum-determinant ordering, and genie SIC stays close to plain SIC
ExperimentOutput run_alamouti_experiment(uint64_t blocks, uint64_t seed,
                                         int threads,
                                         const std::string& out_dir);

// the four reference minimum determinants
ExperimentOutput run_mindet_table_experiment();

}  // namespace nomalab

// SPDX-License-Identifier: Apache-2.0
#pragma once

// alpha-grid distance sweep shared by the CLI and the canned experiments

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

#include "nomalab/analysis.hpp"
#include "nomalab/constellation.hpp"
#include "nomalab/lattice.hpp"
#include "report.hpp"

namespace nomalab {

struct SweepRow {
    double alpha = 0.0;
    double exact = 0.0;
    double bound_printed = 0.0;
    double bound_squared = 0.0;
    double demin = 0.0;
    bool lp_alpha = false;
};

// uniform grid on [0,1] plus the two lattice-partition alphas
inline std::vector<SweepRow> sweep_rows(int p, int m1, int m2, int grid,
                                        int threads) {
    const RotatedLattice lat = build_rotation(p);
    const UserConstellation c1 = coset_leaders(lat, m1);
    const UserConstellation c2 = coset_leaders(lat, m2);
    const int n = lat.dim();
    const double lp1 = lattice_partition_alpha(m1);
    const double lp2_mirror = 1.0 - lattice_partition_alpha(m2);

    std::vector<double> alphas;
    for (int i = 0; i < grid; ++i)
        alphas.push_back(double(i) / double(grid - 1));
    alphas.push_back(lp1);
    alphas.push_back(lp2_mirror);
    std::sort(alphas.begin(), alphas.end());
    alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());

    std::vector<SweepRow> rows(alphas.size());
    std::atomic<size_t> next{0};
    auto work = [&] {
        for (size_t i = next.fetch_add(1); i < alphas.size();
             i = next.fetch_add(1)) {
            const double a = alphas[i];
            SweepRow& r = rows[i];
            r.alpha = a;
            r.lp_alpha = a == lp1 || a == lp2_mirror;
            const CompositeScheme s = superimpose(c1, c2, a);
            r.exact = dpmin_bruteforce(s).value;
            r.demin = demin_one_dim(s);
            r.bound_printed =
                dpmin_upper_bound(m1, m2, n, p, a, Band2Variant::printed);
            r.bound_squared =
                dpmin_upper_bound(m1, m2, n, p, a, Band2Variant::squared);
        }
    };
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    return rows;
}

inline void write_sweep_csv(const std::string& path,
                            const std::vector<SweepRow>& rows,
                            bool squared_variant) {
    auto out = open_out(path);
    out << "alpha,dpmin_exact,dpmin_bound,demin_exact,"
           "is_lattice_partition_alpha\n";
    for (const auto& r : rows)
        out << num(r.alpha) << ',' << num(r.exact) << ','
            << num(squared_variant ? r.bound_squared : r.bound_printed) << ','
            << num(r.demin) << ',' << (r.lp_alpha ? 1 : 0) << '\n';
}

}  // namespace nomalab

// SPDX-License-Identifier: Apache-2.0
//
// Release gate: one [PASS]/[FAIL] line per criterion, nonzero exit if any
// fail. Monte-Carlo criteria print their seeds and trial counts; everything
// else is deterministic.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "nomalab/analysis.hpp"
#include "nomalab/constellation.hpp"
#include "nomalab/experiments.hpp"
#include "nomalab/lattice.hpp"
#include "nomalab/rng.hpp"

using namespace nomalab;

namespace {

int g_failures = 0;

void verdict(int criterion, const std::string& name, bool pass,
             const std::string& detail) {
    if (!pass) ++g_failures;
    std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL",
                criterion, name.c_str(), detail.c_str());
    std::fflush(stdout);
}

void experiment_verdict(int criterion, const std::string& name,
                        const ExperimentOutput& exp) {
    std::string detail;
    for (const auto& c : exp.checks) {
        if (!detail.empty()) detail += "; ";
        detail += (c.pass ? "" : "FAILED ") + c.name + ": " + c.detail;
    }
    verdict(criterion, name, exp.all_pass(), detail);
}

std::string eng(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

}  // namespace

int main() {
    const int threads = std::max(1u, std::thread::hardware_concurrency());
    const std::string out_dir = "acceptance_artifacts";
    std::filesystem::create_directories(out_dir);

    // 1. the rotation matrices are orthonormal with |det| = 1
    {
        double worst_resid = 0.0, worst_det = 0.0;
        for (int p : {5, 7, 11, 13, 17, 19, 23, 29}) {
            const RotatedLattice lat = build_rotation(p);
            worst_resid =
                std::max(worst_resid, orthogonality_residual(lat.generator));
            worst_det = std::max(
                worst_det,
                std::abs(std::abs(lat.generator.determinant()) - 1.0));
        }
        verdict(1, "rotation orthonormality and unit determinant",
                worst_resid < 1e-10 && worst_det < 1e-10,
                "worst residual " + eng(worst_resid) + ", worst |det|-1 " +
                    eng(worst_det) + " over p in {5..29}");
    }

    // 2. exhaustive integer search hits the closed-form product distance
    {
        double worst = 0.0;
        for (int p : {5, 7, 11}) {
            const RotatedLattice lat = build_rotation(p);
            worst = std::max(
                worst, std::abs(min_product_over_shell(lat, 3) - lat.dpmin));
        }
        verdict(2, "shell search equals p^{-(n-1)/2}", worst < 1e-9,
                "worst deviation " + eng(worst) +
                    " over p in {5,7,11}, radius 3");
    }

    // 3. exhaustive dpmin is tight at the partition alpha
    {
        double worst = 0.0;
        int combos = 0;
        for (auto [m1, m2] : {std::pair{1, 1}, std::pair{2, 1},
                              std::pair{2, 2}, std::pair{3, 3}}) {
            for (int p : {5, 7}) {
                const int n = (p - 1) / 2;
                if (long(n) * (m1 + m2) > 16) continue;  // size cap
                const RotatedLattice lat = build_rotation(p);
                const CompositeScheme s =
                    superimpose(coset_leaders(lat, m1), coset_leaders(lat, m2),
                                lattice_partition_alpha(m1));
                const double exact = dpmin_bruteforce(s).value;
                const double want = dpmin_lattice_partition(m1, m2, n, p);
                worst = std::max(worst, std::abs(exact - want));
                ++combos;
            }
        }
        verdict(3, "partition-point product distance matches the closed form",
                worst < 1e-9 && combos == 7,
                "worst deviation " + eng(worst) + " over " +
                    std::to_string(combos) +
                    " (m1,m2,p) combos; (3,3) with p=7 exceeds the "
                    "point cap and is excluded");
    }

    // 4. closed-form bound dominates the exhaustive sweep, tight at alpha_LP
    experiment_verdict(
        4, "bound dominance and tightness on the 512-point alpha grid",
        run_dpmin_sweep_experiment(512, threads, out_dir));

    // 5. the four reference minimum determinants, within 1%
    experiment_verdict(5, "minimum-determinant reference table",
                       run_mindet_table_experiment());

    // 6. Monte-Carlo diversity slopes
    experiment_verdict(6, "simulated diversity slopes",
                       run_diversity_experiment(1.0, 7, threads, out_dir));

    // 7. dithered constellation power identity
    {
        double worst = 0.0;
        int combos = 0;
        auto check_power = [&](const RotatedLattice& lat) {
            const int n = lat.dim();
            for (int m = 1; n * m <= 12; ++m) {
                const UserConstellation c = coset_leaders(lat, m);
                const double emp = c.points.rowwise().squaredNorm().mean();
                const double want =
                    (double(n) / 12.0) * (std::pow(4.0, m) - 1.0);
                worst = std::max(worst, std::abs(emp - want));
                ++combos;
            }
        };
        for (int p : {5, 7, 11, 13}) check_power(build_rotation(p));
        for (int n = 2; n <= 12; ++n)
            check_power(RotatedLattice::unrotated(n));
        verdict(7, "coset-leader power identity (n/12)(2^{2m}-1)",
                worst < 1e-9,
                "worst deviation " + eng(worst) + " over " +
                    std::to_string(combos) + " (n,m) combos, nm <= 12");
    }

    // 8. the unrotated composite is the Cartesian power of its 1-D composite
    {
        double worst = 0.0;
        int cases = 0;
        StreamRng rng(2718, 0, 0);
        for (auto [m1, m2] :
             {std::pair{1, 1}, std::pair{2, 1}, std::pair{2, 2}}) {
            for (int n : {2, 3}) {
                const RotatedLattice base = RotatedLattice::unrotated(n);
                const UserConstellation c1 = coset_leaders(base, m1);
                const UserConstellation c2 = coset_leaders(base, m2);
                for (int rep = 0; rep < 20; ++rep) {
                    const double alpha = 0.02 + 0.96 * rng.uniform01();
                    const CompositeScheme s = superimpose(c1, c2, alpha);
                    const std::vector<double> line = s.one_dim_composite();
                    std::vector<std::vector<double>> want, got;
                    std::vector<int> idx(n, 0);
                    const long k = long(line.size());
                    for (long flat = 0; flat < s.size(); ++flat) {
                        std::vector<double> row(n);
                        long rem = flat;
                        for (int d = 0; d < n; ++d) {
                            row[d] = line[rem % k];
                            rem /= k;
                        }
                        want.push_back(std::move(row));
                        got.emplace_back(s.points.row(flat).begin(),
                                         s.points.row(flat).end());
                    }
                    std::sort(want.begin(), want.end());
                    std::sort(got.begin(), got.end());
                    for (size_t r = 0; r < want.size(); ++r)
                        for (int d = 0; d < n; ++d)
                            worst = std::max(
                                worst, std::abs(want[r][d] - got[r][d]));
                    ++cases;
                }
            }
        }
        verdict(8, "unrotated composite equals the 1-D Cartesian power",
                worst < 1e-10,
                "worst coordinate deviation " + eng(worst) + " over " +
                    std::to_string(cases) + " random-alpha cases, seed 2718");
    }

    // 9. n-th-root additivity along collinear triples, and the Euclidean
    // 1-D reduction, on randomized instances
    {
        double worst_add = 0.0;
        StreamRng rng(3141, 0, 0);
        for (int rep = 0; rep < 1000; ++rep) {
            const int n = 2 + int(rng.below(3));
            std::vector<double> a(n), u(n);
            for (int i = 0; i < n; ++i) {
                a[i] = 4.0 * rng.uniform01() - 2.0;
                const double mag = 0.1 + 1.9 * rng.uniform01();
                u[i] = rng.uniform01() < 0.5 ? -mag : mag;
            }
            const double t = 0.1 + 1.9 * rng.uniform01();
            const double s = 0.1 + 1.9 * rng.uniform01();
            double pab = 1.0, pbc = 1.0, pac = 1.0;
            for (int i = 0; i < n; ++i) {
                pab *= std::abs(t * u[i]);
                pbc *= std::abs(s * u[i]);
                pac *= std::abs((t + s) * u[i]);
            }
            const double root = 1.0 / double(n);
            worst_add = std::max(
                worst_add, std::abs(std::pow(pac, root) - std::pow(pab, root) -
                                    std::pow(pbc, root)));
        }

        double worst_red = 0.0;
        StreamRng rng2(1618, 0, 0);
        const RotatedLattice lat5 = build_rotation(5);
        const RotatedLattice lat7 = build_rotation(7);
        for (int rep = 0; rep < 1000; ++rep) {
            const RotatedLattice& lat = rep % 4 == 3 ? lat7 : lat5;
            const int m1 = 1 + int(rng2.below(2));
            const double alpha = 0.02 + 0.96 * rng2.uniform01();
            const CompositeScheme s = superimpose(
                coset_leaders(lat, m1), coset_leaders(lat, 1), alpha);
            worst_red = std::max(
                worst_red,
                std::abs(demin_bruteforce(s).value - demin_one_dim(s)));
        }
        verdict(9, "root additivity and Euclidean reduction",
                worst_add < 1e-10 && worst_red < 1e-12,
                "additivity worst " + eng(worst_add) +
                    " (1000 instances, seed 3141), reduction worst " +
                    eng(worst_red) + " (1000 instances, seed 1618)");
    }

    // 10. space-time ordering by minimum determinant, genie-SIC gain < 2x
    experiment_verdict(
        10, "space-time SER ordering at 30 dB",
        run_alamouti_experiment(1000000, 7, threads, out_dir));

    if (g_failures == 0) {
        std::printf("all criteria passed\n");
        return 0;
    }
    std::printf("%d criteria FAILED\n", g_failures);
    return 1;
}

// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <vector>

#include "nomalab/analysis.hpp"
#include "nomalab/constellation.hpp"
#include "nomalab/errors.hpp"
#include "nomalab/rng.hpp"

using namespace nomalab;

namespace {

CompositeScheme make_scheme(int p, int m1, int m2, double alpha) {
    const RotatedLattice lat = build_rotation(p);
    return superimpose(coset_leaders(lat, m1), coset_leaders(lat, m2), alpha);
}

double product_distance(const std::vector<double>& a,
                        const std::vector<double>& b) {
    double prod = 1.0;
    for (size_t i = 0; i < a.size(); ++i) prod *= std::abs(a[i] - b[i]);
    return prod;
}

}  // namespace

TEST_SUITE("analysis") {

// frozen values computed with an independent implementation
TEST_CASE("exhaustive dpmin at the partition alpha") {
    struct Case {
        int p, m1, m2;
        double want;
    };
    const std::vector<Case> cases = {
        {5, 1, 1, 0.3577708764},
        {7, 2, 1, 0.0118758035503},
        {5, 3, 3, 0.00131051603077},
    };
    for (const auto& c : cases) {
        const CompositeScheme s =
            make_scheme(c.p, c.m1, c.m2, lattice_partition_alpha(c.m1));
        const ProductDistance pd = dpmin_bruteforce(s);
        CHECK(pd.value == doctest::Approx(c.want).epsilon(1e-8));
        CHECK(pd.reduced_diversity_pairs == 0);
        CHECK(pd.min_differing_coords == s.dim());
        CHECK(pd.value ==
              doctest::Approx(dpmin_lattice_partition(c.m1, c.m2, s.dim(), c.p))
                  .epsilon(1e-8));
        CHECK(pd.argmin_a >= 0);
        CHECK(pd.argmin_b > pd.argmin_a);
    }
}

TEST_CASE("closed-form partition product distance") {
    CHECK(dpmin_lattice_partition(1, 1, 2, 5) ==
          doctest::Approx(0.3577708764).epsilon(1e-9));
    CHECK(dpmin_lattice_partition(1, 1, 3, 7) ==
          doctest::Approx(0.1022202504).epsilon(1e-9));
    CHECK(dpmin_lattice_partition(3, 3, 2, 5) ==
          doctest::Approx(0.00131051603077).epsilon(1e-9));
}

// alpha = 0 leaves user 1 with zero power: distinct labels can share a point,
// which zeroes the reported minimum but not the full-diversity minimum
TEST_CASE("coincident points zero the product distance") {
    const CompositeScheme s = make_scheme(5, 1, 1, 0.0);
    const ProductDistance pd = dpmin_bruteforce(s);
    CHECK(pd.value == 0.0);
    CHECK(pd.min_differing_coords == 0);
    CHECK(pd.reduced_diversity_pairs > 0);
    CHECK(pd.full_diversity_min ==
          doctest::Approx(1.788854382).epsilon(1e-8));
}

TEST_CASE("equal-power mirror scheme collapses") {
    const CompositeScheme s = make_scheme(5, 1, 1, 0.5);
    CHECK(dpmin_bruteforce(s).value == 0.0);
    CHECK(dpmin_upper_bound(1, 1, 2, 5, 0.5) == doctest::Approx(0.0));
}

TEST_CASE("exhaustive demin and the 1-D reduction") {
    const CompositeScheme s = make_scheme(5, 2, 1, 0.31);
    const EuclideanDistance de = demin_bruteforce(s);
    CHECK(de.value == doctest::Approx(0.365995495709).epsilon(1e-9));
    CHECK(demin_one_dim(s) == doctest::Approx(de.value).epsilon(1e-12));
    CHECK(de.argmin_a >= 0);
}

TEST_CASE("bound dominates the exhaustive value on a grid") {
    for (auto [m1, m2] : {std::pair{1, 1}, std::pair{2, 1}, std::pair{2, 2}}) {
        const RotatedLattice lat = build_rotation(5);
        const UserConstellation c1 = coset_leaders(lat, m1);
        const UserConstellation c2 = coset_leaders(lat, m2);
        for (int i = 0; i <= 32; ++i) {
            const double a = double(i) / 32.0;
            const double exact =
                dpmin_bruteforce(superimpose(c1, c2, a)).value;
            for (auto v : {Band2Variant::printed, Band2Variant::squared}) {
                const double bound = dpmin_upper_bound(m1, m2, 2, 5, a, v);
                CHECK(bound >= exact - 1e-12);
            }
        }
    }
}

TEST_CASE("bound is tight at the partition alpha") {
    for (auto [m1, m2] : {std::pair{1, 1}, std::pair{2, 1}, std::pair{2, 2},
                          std::pair{3, 3}}) {
        for (int p : {5, 7}) {
            const int n = (p - 1) / 2;
            const double alpha_lp = lattice_partition_alpha(m1);
            const double bound = dpmin_upper_bound(m1, m2, n, p, alpha_lp);
            const double want = dpmin_lattice_partition(m1, m2, n, p);
            CHECK(bound == doctest::Approx(want).epsilon(1e-9));
        }
    }
}

TEST_CASE("bound mirror symmetry") {
    for (auto [m1, m2] : {std::pair{1, 1}, std::pair{2, 1}, std::pair{2, 2},
                          std::pair{3, 2}}) {
        for (int i = 0; i <= 20; ++i) {
            const double a = double(i) / 20.0;
            for (auto v : {Band2Variant::printed, Band2Variant::squared}) {
                const double fwd = dpmin_upper_bound(m1, m2, 2, 5, a, v);
                const double rev =
                    dpmin_upper_bound(m2, m1, 2, 5, 1.0 - a, v);
                CHECK(fwd == doctest::Approx(rev).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("band-2 edge variants differ only inside the disputed band") {
    // (2,2): printed edge 4/(c+4) = 0.533, squared edge 4/(c^2+4) = 0.246
    const double at_030_printed =
        dpmin_upper_bound(2, 2, 2, 5, 0.30, Band2Variant::printed);
    const double at_030_squared =
        dpmin_upper_bound(2, 2, 2, 5, 0.30, Band2Variant::squared);
    CHECK(at_030_printed != at_030_squared);
    const double exact = dpmin_bruteforce(make_scheme(5, 2, 2, 0.30)).value;
    CHECK(at_030_printed >= exact - 1e-12);
    CHECK(at_030_squared >= exact - 1e-12);
    // far below both edges the variants agree
    CHECK(dpmin_upper_bound(2, 2, 2, 5, 0.10, Band2Variant::printed) ==
          doctest::Approx(dpmin_upper_bound(2, 2, 2, 5, 0.10,
                                            Band2Variant::squared))
              .epsilon(1e-14));
}

TEST_CASE("bound argument checking") {
    CHECK_THROWS_AS(dpmin_upper_bound(1, 1, 2, 5, -0.1), AlphaOutOfRangeError);
    CHECK_THROWS_AS(dpmin_upper_bound(1, 1, 2, 5, 1.1), AlphaOutOfRangeError);
    CHECK_THROWS_AS(dpmin_upper_bound(0, 1, 2, 5, 0.3), ConfigError);
}

// n-th-root additivity of the product distance along a common direction
TEST_CASE("product distance adds along collinear triples") {
    StreamRng rng(99, 0, 0);
    for (int rep = 0; rep < 1000; ++rep) {
        const int n = 2 + int(rng.below(3));  // 2..4
        std::vector<double> a(n), u(n);
        for (int i = 0; i < n; ++i) {
            a[i] = 4.0 * rng.uniform01() - 2.0;
            const double mag = 0.1 + 1.9 * rng.uniform01();
            u[i] = rng.uniform01() < 0.5 ? -mag : mag;
        }
        const double t = 0.1 + 1.9 * rng.uniform01();
        const double s = 0.1 + 1.9 * rng.uniform01();
        std::vector<double> b(n), c(n);
        for (int i = 0; i < n; ++i) {
            b[i] = a[i] + t * u[i];
            c[i] = a[i] + (t + s) * u[i];
        }
        const double root = 1.0 / double(n);
        const double lhs = std::pow(product_distance(a, c), root);
        const double rhs = std::pow(product_distance(a, b), root) +
                           std::pow(product_distance(b, c), root);
        CHECK(std::abs(lhs - rhs) < 1e-10);
    }
}

// product distance at fixed direction is monotone in the Euclidean gap,
// regardless of where the pair sits
TEST_CASE("matched-gap ordering transfers between layers") {
    StreamRng rng(123, 0, 0);
    for (int rep = 0; rep < 1000; ++rep) {
        const int n = 2 + int(rng.below(2));
        std::vector<double> u(n), x(n), y(n);
        for (int i = 0; i < n; ++i) {
            const double mag = 0.1 + 1.9 * rng.uniform01();
            u[i] = rng.uniform01() < 0.5 ? -mag : mag;
            x[i] = 3.0 * rng.uniform01();
            y[i] = -3.0 * rng.uniform01();
        }
        const double g1 = 0.1 + rng.uniform01();
        const double g2 = g1 + 0.01 + rng.uniform01();
        std::vector<double> x2(n), y2(n);
        for (int i = 0; i < n; ++i) {
            x2[i] = x[i] + g1 * u[i];
            y2[i] = y[i] + g2 * u[i];
        }
        CHECK(product_distance(x, x2) < product_distance(y, y2));
    }
}

// the 1-D reduction holds for every scheme because the composite is a
// rotated Cartesian power
TEST_CASE("randomized Euclidean reduction") {
    StreamRng rng(7, 0, 0);
    const RotatedLattice lat5 = build_rotation(5);
    const RotatedLattice lat7 = build_rotation(7);
    for (int rep = 0; rep < 200; ++rep) {
        const bool use7 = rep % 4 == 3;
        const RotatedLattice& lat = use7 ? lat7 : lat5;
        const int m1 = 1 + int(rng.below(2));
        const int m2 = 1;
        const double alpha = 0.05 + 0.9 * rng.uniform01();
        const CompositeScheme s = superimpose(coset_leaders(lat, m1),
                                              coset_leaders(lat, m2), alpha);
        CHECK(std::abs(demin_bruteforce(s).value - demin_one_dim(s)) < 1e-12);
    }
}

TEST_CASE("minimum determinant reference table") {
    const RotatedLattice lat = build_rotation(5);
    const UserConstellation c1 = coset_leaders(lat, 2);
    const UserConstellation c2 = coset_leaders(lat, 1);
    CHECK(min_determinant(superimpose(c1, c2, 0.11)) ==
          doctest::Approx(1.366389e-05).epsilon(1e-5));
    CHECK(min_determinant(superimpose(c1, c2, 0.14)) ==
          doctest::Approx(1.688564e-03).epsilon(1e-5));
    CHECK(min_determinant(superimpose(c1, c2, 0.31)) ==
          doctest::Approx(4.485832e-03).epsilon(1e-5));
    CHECK(min_determinant(lattice_partition_scheme(lat, 2, 1)) ==
          doctest::Approx(9.070295e-03).epsilon(1e-5));
    // per-real-dimension scale instead of unit complex power: 4x larger
    CHECK(min_determinant(superimpose(c1, c2, 0.31), 2, 1.0, false) ==
          doctest::Approx(4.0 * 4.485832e-03).epsilon(1e-5));
}

TEST_CASE("minimum determinant needs a 2-D scheme") {
    const RotatedLattice lat7 = build_rotation(7);
    const CompositeScheme s = lattice_partition_scheme(lat7, 1, 1);
    CHECK_THROWS_AS(min_determinant(s), UnsupportedDimensionError);
    const CompositeScheme s2 = make_scheme(5, 1, 1, 0.3);
    CHECK_THROWS_AS(min_determinant(s2, 4), UnsupportedDimensionError);
}

TEST_CASE("scheme report") {
    const RotatedLattice lat = build_rotation(5);
    const CompositeScheme lp = lattice_partition_scheme(lat, 2, 1);
    const DistanceReport rep = analyze_scheme(lp);
    CHECK(rep.is_lattice_partition_alpha);
    CHECK(rep.dpmin_exact ==
          doctest::Approx(dpmin_lattice_partition(2, 1, 2, 5)).epsilon(1e-9));
    CHECK(rep.dpmin_bound == doctest::Approx(rep.dpmin_exact).epsilon(1e-9));
    CHECK(rep.demin_exact == doctest::Approx(demin_one_dim(lp)).epsilon(1e-12));
    CHECK(rep.reduced_diversity_pairs == 0);

    const CompositeScheme gen = make_scheme(5, 1, 1, 0.4);
    const DistanceReport rep2 = analyze_scheme(gen);
    CHECK_FALSE(rep2.is_lattice_partition_alpha);
    CHECK(rep2.dpmin_bound >= rep2.dpmin_exact - 1e-12);
}

}  // TEST_SUITE

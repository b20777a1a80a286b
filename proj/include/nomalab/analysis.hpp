// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <limits>
#include <string>

#include "nomalab/constellation.hpp"

namespace nomalab {

// coordinates closer than this count as equal when deciding whether a pair
// of points differs in a coordinate
inline constexpr double kCoordTol = 1e-9;

struct ProductDistance {
    double value = 0.0;  // 0 when some pair differs in fewer than n coordinates
    long argmin_a = -1, argmin_b = -1;
    long reduced_diversity_pairs = 0;  // pairs with fewer than n differing coords
    int min_differing_coords = 0;      // smallest L over all distinct pairs
    // min over full-diversity pairs, reported even when value == 0
    double full_diversity_min = std::numeric_limits<double>::infinity();
};

// exhaustive scan over all unordered pairs of distinct labels
ProductDistance dpmin_bruteforce(const CompositeScheme& scheme);

struct EuclideanDistance {
    double value = std::numeric_limits<double>::infinity();
    long argmin_a = -1, argmin_b = -1;
};

EuclideanDistance demin_bruteforce(const CompositeScheme& scheme);

// minimum adjacent gap of the sorted 1-D composite; equals the n-D minimum
// Euclidean distance because the composite is a rotated Cartesian power
double demin_one_dim(const CompositeScheme& scheme);

// closed-form minimum product distance of the partition-based scheme
double dpmin_lattice_partition(int m1, int m2, int n, int p);

// The piecewise upper bound's second crossing band has two defensible upper
// edges: 4/(c+4), linear in the cluster half-width c, or 4/(c^2+4) matching
// the squared form every later band uses. Both dominate the exhaustive
// minimum everywhere we test; the sweep reports where they disagree.
enum class Band2Variant { printed, squared };

double dpmin_upper_bound(int m1, int m2, int n, int p, double alpha,
                         Band2Variant variant = Band2Variant::printed);

// minimum codeword determinant of the orthogonal space-time code built on
// the complex pairing of a 2-D scheme; requires n == 2 and mt == 2
double min_determinant(const CompositeScheme& scheme, int mt = 2,
                       double tau = 1.0, bool unit_complex_power = true);

struct DistanceReport {
    std::string scheme;
    double alpha = 0.0;
    double dpmin_exact = 0.0;
    double dpmin_bound = 0.0;
    double dpmin_bound_alt = 0.0;  // the other band-2 variant
    double demin_exact = 0.0;
    long dpmin_argmin_a = -1, dpmin_argmin_b = -1;
    long reduced_diversity_pairs = 0;
    bool is_lattice_partition_alpha = false;
};

DistanceReport analyze_scheme(const CompositeScheme& scheme,
                              Band2Variant variant = Band2Variant::printed);

}  // namespace nomalab

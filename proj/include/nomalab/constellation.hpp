// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nomalab/lattice.hpp"

namespace nomalab {

inline constexpr long kPointCap = 1L << 16;

// Coset-leader constellation of L / 2^m L: the 2^{nm} points b*G with digits
// b in {0..2^m-1}^n, shifted to zero mean. m = 0 gives the degenerate
// single-point constellation (used by the single-user reductions).
struct UserConstellation {
    RotatedLattice lattice;
    int m = 0;
    PointMatrix points;          // 2^{nm} x n, zero mean
    Eigen::RowVectorXd dither;   // mean of the unshifted points
    long size() const { return points.rows(); }
    // digit vector of a label, little-endian base 2^m
    std::vector<int> digits(long label) const;
};

UserConstellation coset_leaders(const RotatedLattice& lat, int m,
                                long max_points = kPointCap);

enum class SchemeMode { general, lattice_partition };

// Two-user downlink superposition over a common rotation. Composite points
// are indexed by label1 * |C2| + label2.
struct CompositeScheme {
    UserConstellation user1, user2;
    double alpha = 0.0;
    double eta = 0.0;
    double user1_scale = 0.0;  // eta sqrt(alpha);     eta' in partition mode
    double user2_scale = 0.0;  // eta sqrt(1 - alpha); eta' 2^{m1} in partition mode
    SchemeMode mode = SchemeMode::general;
    PointMatrix points;  // |C1| |C2| x n

    long size() const { return points.rows(); }
    int dim() const { return int(points.cols()); }
    long index_of(long label1, long label2) const {
        return label1 * user2.size() + label2;
    }
    std::pair<long, long> labels(long index) const {
        return {index / user2.size(), index % user2.size()};
    }
    // the same superposition applied to the 1-D digit sets {0..2^m-1},
    // indexed i * 2^{m2} + j. For the unrotated baseline these are exactly
    // the point coordinates; in general the minimum adjacent gap of this
    // multiset equals the scheme's minimum Euclidean distance, because the
    // composite is a rotation of the Cartesian power of this set.
    std::vector<double> one_dim_composite() const;
    std::string descriptor() const;
};

double superposition_eta(int m1, int m2, double alpha);
double lattice_partition_alpha(int m1);  // 1 / (1 + 2^{2 m1})

CompositeScheme superimpose(const UserConstellation& c1,
                            const UserConstellation& c2, double alpha,
                            long max_points = kPointCap);

CompositeScheme lattice_partition_scheme(const RotatedLattice& lat, int m1,
                                         int m2, long max_points = kPointCap);

}  // namespace nomalab

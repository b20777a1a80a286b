// SPDX-License-Identifier: Apache-2.0
#include "nomalab/constellation.hpp"

#include <cmath>
#include <cstdio>

#include "nomalab/errors.hpp"

namespace nomalab {

std::vector<int> UserConstellation::digits(long label) const {
    const int n = lattice.dim();
    std::vector<int> b(n);
    const long mask = (1L << m) - 1;
    for (int l = 0; l < n; ++l) b[l] = int((label >> (m * l)) & mask);
    return b;
}

UserConstellation coset_leaders(const RotatedLattice& lat, int m,
                                long max_points) {
    const int n = lat.dim();
    if (m < 0) throw SizeCapError("m must be nonnegative");
    if (n * m > 60 || (1L << (n * m)) > max_points)
        throw SizeCapError("coset-leader count 2^" + std::to_string(n * m) +
                           " exceeds the configured cap");
    UserConstellation c;
    c.lattice = lat;
    c.m = m;
    const long count = 1L << (n * m);
    c.points.resize(count, n);
    Eigen::RowVectorXd bd(n);
    for (long label = 0; label < count; ++label) {
        const auto b = c.digits(label);
        for (int l = 0; l < n; ++l) bd(l) = b[l];
        c.points.row(label) = bd * lat.generator;
    }
    c.dither = c.points.colwise().mean();
    c.points.rowwise() -= c.dither;
    return c;
}

double superposition_eta(int m1, int m2, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw AlphaOutOfRangeError("alpha must lie in [0,1]");
    const double p1 = std::pow(2.0, 2 * m1), p2 = std::pow(2.0, 2 * m2);
    const double den = (p1 - p2) * alpha + p2 - 1.0;
    if (den <= 0.0)
        throw AlphaOutOfRangeError(
            "degenerate superposition: no transmit power at this alpha");
    return std::sqrt(12.0 / den);
}

double lattice_partition_alpha(int m1) {
    return 1.0 / (1.0 + std::pow(2.0, 2 * m1));
}

namespace {

CompositeScheme combine(const UserConstellation& c1,
                        const UserConstellation& c2, double alpha, double eta,
                        double w1, double w2, SchemeMode mode,
                        long max_points) {
    if (c1.lattice.dim() != c2.lattice.dim())
        throw ConfigError("user constellations have different dimensions");
    const long k1 = c1.size(), k2 = c2.size();
    if (k1 > max_points / k2)
        throw SizeCapError("composite size " + std::to_string(k1) + "*" +
                           std::to_string(k2) + " exceeds the configured cap");
    CompositeScheme s;
    s.user1 = c1;
    s.user2 = c2;
    s.alpha = alpha;
    s.eta = eta;
    s.user1_scale = w1;
    s.user2_scale = w2;
    s.mode = mode;
    const int n = c1.lattice.dim();
    s.points.resize(k1 * k2, n);
    for (long l1 = 0; l1 < k1; ++l1)
        for (long l2 = 0; l2 < k2; ++l2)
            s.points.row(l1 * k2 + l2) =
                w1 * c1.points.row(l1) + w2 * c2.points.row(l2);
    return s;
}

}  // namespace

CompositeScheme superimpose(const UserConstellation& c1,
                            const UserConstellation& c2, double alpha,
                            long max_points) {
    const double eta = superposition_eta(c1.m, c2.m, alpha);
    return combine(c1, c2, alpha, eta, eta * std::sqrt(alpha),
                   eta * std::sqrt(1.0 - alpha), SchemeMode::general,
                   max_points);
}

CompositeScheme lattice_partition_scheme(const RotatedLattice& lat, int m1,
                                         int m2, long max_points) {
    const int n = lat.dim();
    if (n * (m1 + m2) > 60 || (1L << (n * (m1 + m2))) > max_points)
        throw SizeCapError("composite size 2^" + std::to_string(n * (m1 + m2)) +
                           " exceeds the configured cap");
    const UserConstellation c1 = coset_leaders(lat, m1, max_points);
    const UserConstellation c2 = coset_leaders(lat, m2, max_points);
    const double eta = std::sqrt(12.0 / (std::pow(2.0, 2 * (m1 + m2)) - 1.0));
    return combine(c1, c2, lattice_partition_alpha(m1), eta, eta,
                   eta * std::pow(2.0, m1), SchemeMode::lattice_partition,
                   max_points);
}

std::vector<double> CompositeScheme::one_dim_composite() const {
    const long k1 = 1L << user1.m, k2 = 1L << user2.m;
    const double d1 = 0.5 * double(k1 - 1), d2 = 0.5 * double(k2 - 1);
    std::vector<double> v;
    v.reserve(k1 * k2);
    for (long i = 0; i < k1; ++i)
        for (long j = 0; j < k2; ++j)
            v.push_back(user1_scale * (double(i) - d1) +
                        user2_scale * (double(j) - d2));
    return v;
}

std::string CompositeScheme::descriptor() const {
    char buf[160];
    const int p = user1.lattice.field.p;
    std::snprintf(buf, sizeof buf, "%s n=%d m1=%d m2=%d alpha=%.9g mode=%s",
                  p > 0 ? ("p=" + std::to_string(p)).c_str() : "unrotated",
                  dim(), user1.m, user2.m, alpha,
                  mode == SchemeMode::lattice_partition ? "partition"
                                                        : "general");
    return buf;
}

}  // namespace nomalab

// SPDX-License-Identifier: Apache-2.0
#include "nomalab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nomalab/errors.hpp"
#include "nomalab/lattice.hpp"

namespace nomalab {

ProductDistance dpmin_bruteforce(const CompositeScheme& scheme) {
    const long k = scheme.size();
    const int n = scheme.dim();
    if (k > kPointCap) throw SizeCapError("composite too large for pair scan");
    ProductDistance r;
    r.min_differing_coords = n;
    const double* data = scheme.points.data();
    long lost_a = -1, lost_b = -1;
    for (long a = 0; a < k; ++a) {
        const double* xa = data + a * n;
        for (long b = a + 1; b < k; ++b) {
            const double* xb = data + b * n;
            double prod = 1.0;
            int differing = n;
            for (int l = 0; l < n; ++l) {
                const double d = std::abs(xa[l] - xb[l]);
                if (d > kCoordTol)
                    prod *= d;
                else
                    --differing;
            }
            if (differing < n) {
                ++r.reduced_diversity_pairs;
                if (differing < r.min_differing_coords) {
                    r.min_differing_coords = differing;
                    lost_a = a;
                    lost_b = b;
                }
            } else if (prod < r.full_diversity_min) {
                r.full_diversity_min = prod;
                r.argmin_a = a;
                r.argmin_b = b;
            }
        }
    }
    if (r.reduced_diversity_pairs > 0) {
        r.value = 0.0;
        r.argmin_a = lost_a;
        r.argmin_b = lost_b;
    } else {
        r.value = r.full_diversity_min;
    }
    return r;
}

EuclideanDistance demin_bruteforce(const CompositeScheme& scheme) {
    const long k = scheme.size();
    const int n = scheme.dim();
    if (k > kPointCap) throw SizeCapError("composite too large for pair scan");
    EuclideanDistance r;
    const double* data = scheme.points.data();
    for (long a = 0; a < k; ++a) {
        const double* xa = data + a * n;
        for (long b = a + 1; b < k; ++b) {
            const double* xb = data + b * n;
            double s = 0.0;
            for (int l = 0; l < n; ++l) {
                const double d = xa[l] - xb[l];
                s += d * d;
            }
            if (s < r.value) {
                r.value = s;
                r.argmin_a = a;
                r.argmin_b = b;
            }
        }
    }
    r.value = std::sqrt(r.value);
    return r;
}

double demin_one_dim(const CompositeScheme& scheme) {
    std::vector<double> v = scheme.one_dim_composite();
    std::sort(v.begin(), v.end());
    double gap = std::numeric_limits<double>::infinity();
    for (size_t i = 1; i < v.size(); ++i) gap = std::min(gap, v[i] - v[i - 1]);
    return gap;
}

double dpmin_lattice_partition(int m1, int m2, int n, int p) {
    const double eta2 = 12.0 / (std::pow(2.0, 2 * (m1 + m2)) - 1.0);
    return std::pow(eta2, 0.5 * n) * std::pow(double(p), -0.5 * (n - 1));
}

namespace {

// minimum product distance inside one cluster layer, the m2 = 1 piecewise
// form: the l-th piece covers alpha in (1/((c+1-l)^2+1), 1/((c-l)^2+1)]
// with c = 2^{m1} - 1/2, extended to alpha_LP on the left and 1/2 on the
// right, and is worth |d2^{1/n} - (2^{m1} - l) d1^{1/n}|^n
double cluster_dpmin(int m1, int n, double alpha, double d1, double d2) {
    const double c = std::pow(2.0, m1) - 0.5;
    const long lmax = (1L << m1) - 1;
    long l = lmax;
    for (long i = 1; i <= lmax; ++i) {
        if (alpha <= 1.0 / ((c - double(i)) * (c - double(i)) + 1.0)) {
            l = i;
            break;
        }
    }
    const double step = std::pow(d2, 1.0 / n) -
                        (std::pow(2.0, m1) - double(l)) * std::pow(d1, 1.0 / n);
    return std::pow(std::abs(step), double(n));
}

}  // namespace

double dpmin_upper_bound(int m1, int m2, int n, int p, double alpha,
                         Band2Variant variant) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw AlphaOutOfRangeError("alpha must lie in [0,1]");
    if (m1 < 1 || m2 < 1)
        throw ConfigError("the piecewise bound requires m1, m2 >= 1");
    if (alpha > 0.5) {
        std::swap(m1, m2);
        alpha = 1.0 - alpha;
    }
    const double dp_lat = std::pow(double(p), -0.5 * (n - 1));
    const double p1 = std::pow(2.0, 2 * m1), p2 = std::pow(2.0, 2 * m2);
    const double den = (p1 - p2) * alpha + p2 - 1.0;
    const double d1 = std::pow(12.0 * alpha / den, 0.5 * n) * dp_lat;
    const double d2 = std::pow(12.0 * (1.0 - alpha) / den, 0.5 * n) * dp_lat;
    const double alpha_lp = 1.0 / (1.0 + p1);
    if (alpha <= alpha_lp) return d1;

    const double dp_cl = cluster_dpmin(m1, n, alpha, d1, d2);
    if (m2 == 1) return dp_cl;

    // crossing bands xi = 2..2^{m2}; the xi-th upper edge is
    // xi^2/(c^2+xi^2), except the printed second-band edge 4/(c+4)
    const double c = std::pow(2.0, m1) - 0.5;
    const long xi_max = 1L << m2;
    long xi = xi_max;
    for (long i = 2; i <= xi_max; ++i) {
        double upper;
        if (i == 2)
            upper = variant == Band2Variant::printed ? 4.0 / (c + 4.0)
                                                     : 4.0 / (c * c + 4.0);
        else
            upper = double(i) * double(i) / (c * c + double(i) * double(i));
        if (i == xi_max) upper = std::max(upper, 0.5);
        if (alpha <= upper) {
            xi = i;
            break;
        }
    }
    const double root1 = std::pow(d1, 1.0 / n);
    const double root_cl = std::pow(dp_cl, 1.0 / n);
    double best = std::numeric_limits<double>::infinity();
    for (long gamma = 0; gamma <= (xi - 1) / 2; ++gamma)
        for (long beta = 1; beta <= xi - 1; ++beta)
            best = std::min(best,
                            std::abs(double(gamma) * root1 -
                                     double(beta) * root_cl));
    return std::pow(best, double(n));
}

double min_determinant(const CompositeScheme& scheme, int mt, double tau,
                       bool unit_complex_power) {
    if (scheme.dim() != 2 || mt != 2)
        throw UnsupportedDimensionError(
            "minimum determinant requires a 2-D scheme and mt = 2");
    const double de = tau * demin_one_dim(scheme) *
                      (unit_complex_power ? 1.0 / std::numbers::sqrt2 : 1.0);
    return std::pow(de, 2.0 * mt);
}

DistanceReport analyze_scheme(const CompositeScheme& scheme,
                              Band2Variant variant) {
    DistanceReport rep;
    rep.scheme = scheme.descriptor();
    rep.alpha = scheme.alpha;
    const ProductDistance pd = dpmin_bruteforce(scheme);
    rep.dpmin_exact = pd.value;
    rep.dpmin_argmin_a = pd.argmin_a;
    rep.dpmin_argmin_b = pd.argmin_b;
    rep.reduced_diversity_pairs = pd.reduced_diversity_pairs;
    rep.demin_exact = demin_bruteforce(scheme).value;
    const int p = scheme.user1.lattice.field.p;
    if (p > 0 && scheme.user1.m >= 1 && scheme.user2.m >= 1) {
        rep.dpmin_bound =
            dpmin_upper_bound(scheme.user1.m, scheme.user2.m, scheme.dim(), p,
                              scheme.alpha, variant);
        rep.dpmin_bound_alt = dpmin_upper_bound(
            scheme.user1.m, scheme.user2.m, scheme.dim(), p, scheme.alpha,
            variant == Band2Variant::printed ? Band2Variant::squared
                                             : Band2Variant::printed);
    }
    rep.is_lattice_partition_alpha =
        std::abs(scheme.alpha - lattice_partition_alpha(scheme.user1.m)) <
        1e-12;
    return rep;
}

}  // namespace nomalab

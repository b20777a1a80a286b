// SPDX-License-Identifier: Apache-2.0
#include "nomalab/lattice.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "nomalab/errors.hpp"

namespace nomalab {

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

NumberField build_field(int p) {
    if (!is_prime(p))
        throw NonPrimeError("p = " + std::to_string(p) + " is not prime");
    if (p < 5)
        throw TooSmallError("p = " + std::to_string(p) + " is below 5");
    if (p > 61)
        throw TooLargeError("p = " + std::to_string(p) +
                            " exceeds the supported maximum 61");
    NumberField f;
    f.p = p;
    f.n = (p - 1) / 2;
    f.embeddings.resize(f.n, f.n);
    for (int i = 0; i < f.n; ++i)
        for (int j = 0; j < f.n; ++j)
            f.embeddings(i, j) = 2.0 * std::cos(2.0 * std::numbers::pi *
                                                double(i + 1) * double(j + 1) /
                                                double(p));
    return f;
}

double lattice_dpmin(const NumberField& field) {
    return std::pow(double(field.p), -0.5 * (field.n - 1));
}

RotatedLattice build_rotation(const NumberField& field) {
    const int n = field.n;
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) t(i, j) = 1.0;
    Eigen::VectorXd d(n);
    for (int j = 0; j < n; ++j)
        d(j) = std::sqrt(2.0 - 2.0 * std::cos(2.0 * std::numbers::pi *
                                              double(j + 1) / double(field.p)));
    RotatedLattice lat;
    lat.field = field;
    lat.generator =
        (t * field.embeddings * d.asDiagonal()) / std::sqrt(double(field.p));
    lat.dpmin = lattice_dpmin(field);
    return lat;
}

RotatedLattice build_rotation(int p) { return build_rotation(build_field(p)); }

RotatedLattice RotatedLattice::unrotated(int n) {
    RotatedLattice lat;
    lat.field.p = 0;
    lat.field.n = n;
    lat.generator = Eigen::MatrixXd::Identity(n, n);
    lat.dpmin = 0.0;
    return lat;
}

double orthogonality_residual(const Eigen::MatrixXd& g) {
    const Eigen::MatrixXd r =
        g * g.transpose() - Eigen::MatrixXd::Identity(g.rows(), g.cols());
    return r.cwiseAbs().maxCoeff();
}

double min_product_over_shell(const RotatedLattice& lat, int radius) {
    const int n = lat.dim();
    std::vector<int> b(n, -radius);
    Eigen::RowVectorXd bd(n);
    double best = std::numeric_limits<double>::infinity();
    while (true) {
        bool zero = true;
        for (int l = 0; l < n; ++l) {
            bd(l) = b[l];
            zero = zero && b[l] == 0;
        }
        if (!zero) {
            const Eigen::RowVectorXd x = bd * lat.generator;
            double prod = 1.0;
            for (int l = 0; l < n; ++l) prod *= std::abs(x(l));
            best = std::min(best, prod);
        }
        int l = 0;
        while (l < n && ++b[l] > radius) b[l++] = -radius;
        if (l == n) break;
    }
    return best;
}

}  // namespace nomalab

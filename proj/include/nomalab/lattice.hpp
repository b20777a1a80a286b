// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

namespace nomalab {

// Points are row vectors; a lattice point is b * G with integer row b.
using PointMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Maximal real subfield of the p-th cyclotomic field, degree n = (p-1)/2.
struct NumberField {
    int p = 0;
    int n = 0;
    // embeddings(i, j) = sigma_{j+1}(e_{i+1}) = 2 cos(2 pi (i+1)(j+1) / p)
    Eigen::MatrixXd embeddings;
};

struct RotatedLattice {
    NumberField field;  // field.p == 0 marks the unrotated baseline
    Eigen::MatrixXd generator;  // n x n orthonormal rows
    double dpmin = 0.0;         // p^{-(n-1)/2}; 0 for the baseline
    int dim() const { return int(generator.rows()); }

    // identity-generator baseline of the same dimension, zero product distance
    static RotatedLattice unrotated(int n);
};

bool is_prime(int p);

// throws NonPrimeError / TooSmallError / TooLargeError; supported 5 <= p <= 61
NumberField build_field(int p);

RotatedLattice build_rotation(const NumberField& field);
RotatedLattice build_rotation(int p);

double lattice_dpmin(const NumberField& field);

// brute-force oracles
double orthogonality_residual(const Eigen::MatrixXd& g);  // ||G G^T - I||_inf
// min over b in {-radius..radius}^n \ {0} of |prod_l (b G)_l|
double min_product_over_shell(const RotatedLattice& lat, int radius);

}  // namespace nomalab

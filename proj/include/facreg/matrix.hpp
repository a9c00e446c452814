#pragma once

#include <Eigen/Dense>

#include "facreg/error.hpp"

namespace facreg {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Eigendecomposition of a symmetric matrix with a fixed ordering and sign
// convention so downstream outputs are bit-reproducible.
struct SymEigen {
  Vector values;   // sorted descending
  Matrix vectors;  // column j pairs with values[j]
};

// Full symmetric eigendecomposition. The input is symmetrized as
// (S + S^T)/2 before factorization. Each eigenvector is oriented so that
// its entry of largest absolute value is nonnegative (ties broken by the
// lowest index).
SymEigen sym_eig(const Matrix& s);

// Solves (G + ridge*I) X = B for a symmetric positive-definite G.
// Throws SingularGram when the smallest LDLT pivot falls below
// 1e-12 * (trace(G)/m + ridge).
Matrix solve_gram(const Matrix& g, const Matrix& b, double ridge = 0.0);

// Orthonormal basis of the column space of `a` (thin SVD), with the same
// orientation convention as sym_eig. Rank-deficient inputs return fewer
// columns than `a`.
Matrix orthonormal_basis(const Matrix& a);

// True when ||h^T h - I||_max <= tol.
bool is_half_orthogonal(const Matrix& h, double tol = 1e-6);

}  // namespace facreg

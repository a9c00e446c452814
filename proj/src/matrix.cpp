#include "facreg/matrix.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace facreg {

namespace {

// Flips each column so its largest-magnitude entry is nonnegative; ties go
// to the lowest index.
void orient_columns(Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    Eigen::Index pivot = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const double a = std::abs(m(i, j));
      if (a > best) {
        best = a;
        pivot = i;
      }
    }
    if (m(pivot, j) < 0.0) m.col(j) = -m.col(j);
  }
}

}  // namespace

SymEigen sym_eig(const Matrix& s) {
  if (s.rows() != s.cols())
    throw ShapeMismatch("sym_eig: matrix is not square");
  if (!s.allFinite()) throw NonFinite("sym_eig: non-finite entries");

  const Matrix sym = 0.5 * (s + s.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success)
    throw NumericError("sym_eig: eigendecomposition failed to converge");

  const Eigen::Index n = s.rows();
  SymEigen out;
  out.values = Vector(n);
  out.vectors = Matrix(n, n);
  // Eigen returns ascending order; reverse into descending.
  for (Eigen::Index j = 0; j < n; ++j) {
    out.values[j] = solver.eigenvalues()[n - 1 - j];
    out.vectors.col(j) = solver.eigenvectors().col(n - 1 - j);
  }
  orient_columns(out.vectors);
  return out;
}

Matrix solve_gram(const Matrix& g, const Matrix& b, double ridge) {
  if (g.rows() != g.cols())
    throw ShapeMismatch("solve_gram: Gram matrix is not square");
  if (g.rows() != b.rows())
    throw ShapeMismatch("solve_gram: right-hand side row count mismatch");
  if (ridge < 0.0) throw BadValue("solve_gram: negative ridge");

  const Eigen::Index m = g.rows();
  Matrix lhs = 0.5 * (g + g.transpose());
  lhs.diagonal().array() += ridge;

  Eigen::LDLT<Matrix> ldlt(lhs);
  const double scale = lhs.trace() / static_cast<double>(m);
  const double threshold = 1e-12 * scale;
  if (ldlt.info() != Eigen::Success ||
      ldlt.vectorD().minCoeff() <= threshold)
    throw SingularGram("solve_gram: Gram matrix is numerically singular");
  return ldlt.solve(b);
}

Matrix orthonormal_basis(const Matrix& a) {
  if (a.size() == 0) throw ShapeMismatch("orthonormal_basis: empty matrix");
  if (!a.allFinite())
    throw NonFinite("orthonormal_basis: non-finite entries");

  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU);
  const Vector& sv = svd.singularValues();
  const double cutoff = 1e-12 * sv[0];
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv[rank] > cutoff) ++rank;
  if (rank == 0)
    throw NumericError("orthonormal_basis: zero matrix has no column space");

  Matrix basis = svd.matrixU().leftCols(rank);
  orient_columns(basis);
  return basis;
}

bool is_half_orthogonal(const Matrix& h, double tol) {
  if (h.cols() == 0) return true;
  if (h.rows() < h.cols()) return false;
  const Matrix gram = h.transpose() * h;
  const Matrix dev =
      gram - Matrix::Identity(h.cols(), h.cols());
  return dev.cwiseAbs().maxCoeff() <= tol;
}

}  // namespace facreg

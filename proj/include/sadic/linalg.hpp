#pragma once

// Exact linear algebra over Eigen dense types. Everything here is generic in the scalar
// so the same elimination serves Q, Q(sqrt D) and (fraction-free) Z.

#include "sadic/numeric.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace sadic {

/// True iff every coefficient is strictly positive.
template <class Derived>
bool is_positive(const Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!(m(i, j) > 0)) return false;
  return true;
}

/// Fraction-free (Bareiss) determinant. Exact for any integral domain with exact division.
template <class Derived>
typename Derived::Scalar bareiss_determinant(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  eigen_assert(input.rows() == input.cols());
  Matrix<Scalar> m = input;
  const Eigen::Index n = m.rows();
  if (n == 0) return Scalar(1);
  Scalar previous(1);
  int sign = 1;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      Eigen::Index swap = k + 1;
      while (swap < n && m(swap, k) == 0) ++swap;
      if (swap == n) return Scalar(0);
      m.row(k).swap(m.row(swap));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j) {
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / previous;
      }
    }
    previous = m(k, k);
  }
  return sign > 0 ? Scalar(m(n - 1, n - 1)) : Scalar(-m(n - 1, n - 1));
}

template <class Scalar>
struct RowEchelon {
  Matrix<Scalar> reduced;
  std::vector<Eigen::Index> pivots;  // pivot column of each non-zero row
};

/// Reduced row echelon form over a field.
template <class Scalar>
RowEchelon<Scalar> reduced_row_echelon(Matrix<Scalar> m) {
  RowEchelon<Scalar> out;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index pivot = row;
    while (pivot < m.rows() && m(pivot, col) == Scalar(0)) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row) m.row(pivot).swap(m.row(row));
    const Scalar lead = m(row, col);
    for (Eigen::Index j = col; j < m.cols(); ++j) m(row, j) /= lead;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == Scalar(0)) continue;
      const Scalar factor = m(i, col);
      for (Eigen::Index j = col; j < m.cols(); ++j) m(i, j) -= factor * m(row, j);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

template <class Scalar>
Eigen::Index rank(const Matrix<Scalar>& m) {
  return static_cast<Eigen::Index>(reduced_row_echelon(m).pivots.size());
}

/// Basis of the right kernel over the field, one vector per column.
template <class Scalar>
Matrix<Scalar> kernel_basis(const Matrix<Scalar>& m) {
  const auto echelon = reduced_row_echelon(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (auto p : echelon.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  const Eigen::Index nullity = m.cols() - static_cast<Eigen::Index>(echelon.pivots.size());
  Matrix<Scalar> basis = Matrix<Scalar>::Constant(m.cols(), nullity, Scalar(0));
  Eigen::Index k = 0;
  for (Eigen::Index free = 0; free < m.cols(); ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    basis(free, k) = Scalar(1);
    for (std::size_t r = 0; r < echelon.pivots.size(); ++r) {
      basis(echelon.pivots[r], k) = -echelon.reduced(static_cast<Eigen::Index>(r), free);
    }
    ++k;
  }
  return basis;
}

/// Solves m x = rhs over the field; empty when inconsistent. Picks free variables = 0.
template <class Scalar>
std::optional<Vector<Scalar>> solve_exact(const Matrix<Scalar>& m, const Vector<Scalar>& rhs) {
  Matrix<Scalar> augmented(m.rows(), m.cols() + 1);
  augmented.leftCols(m.cols()) = m;
  augmented.col(m.cols()) = rhs;
  const auto echelon = reduced_row_echelon(augmented);
  if (!echelon.pivots.empty() && echelon.pivots.back() == m.cols()) return std::nullopt;
  Vector<Scalar> x = Vector<Scalar>::Constant(m.cols(), Scalar(0));
  for (std::size_t r = 0; r < echelon.pivots.size(); ++r)
    x(echelon.pivots[r]) = echelon.reduced(static_cast<Eigen::Index>(r), m.cols());
  return x;
}

/// Exact inverse over the field; empty when singular.
template <class Scalar>
std::optional<Matrix<Scalar>> inverse_exact(const Matrix<Scalar>& m) {
  const Eigen::Index n = m.rows();
  Matrix<Scalar> augmented(n, 2 * n);
  augmented.leftCols(n) = m;
  augmented.rightCols(n) = Matrix<Scalar>::Identity(n, n);
  const auto echelon = reduced_row_echelon(augmented);
  if (static_cast<Eigen::Index>(echelon.pivots.size()) < n || echelon.pivots[n - 1] >= n) return std::nullopt;
  return Matrix<Scalar>(echelon.reduced.rightCols(n));
}

/// Inverse of a unimodular integer matrix, or empty when |det| != 1.
std::optional<IntegerMatrix> unimodular_inverse(const IntegerMatrix& m);

/// Saturated basis (columns) of {x in Z^n : m x = 0}, LLL-reduced and sign-normalized
/// so that the first non-zero coordinate of each vector is positive.
IntegerMatrix integer_kernel(const IntegerMatrix& m);

/// In-place LLL reduction of the lattice spanned by the rows of `basis` (delta = 3/4).
/// Rows must be linearly independent.
void lll_reduce(IntegerMatrix& basis);

/// Squared Gram-Schmidt norms of the rows, in order.
std::vector<Rational> gram_schmidt_norms2(const IntegerMatrix& basis);

/// Characteristic polynomial det(tI - m), coefficients from degree 0 upward (monic).
std::vector<Integer> characteristic_polynomial(const IntegerMatrix& m);

}  // namespace sadic

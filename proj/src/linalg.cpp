#include "sadic/linalg.hpp"

#include <algorithm>

namespace sadic {

std::optional<IntegerMatrix> unimodular_inverse(const IntegerMatrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const Integer det = bareiss_determinant(m);
  if (det != 1 && det != -1) return std::nullopt;
  const auto inverse = inverse_exact<Rational>(m.cast<Rational>());
  if (!inverse) return std::nullopt;
  IntegerMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = numerator((*inverse)(i, j));
  return out;
}

namespace {

Integer round_nearest(const Rational& q) { return floor(q + Rational(1, 2)); }

struct GramSchmidt {
  std::vector<std::vector<Rational>> mu;
  std::vector<Rational> norms2;
};

GramSchmidt gram_schmidt(const IntegerMatrix& basis) {
  const Eigen::Index n = basis.rows();
  const RationalMatrix b = basis.cast<Rational>();
  RationalMatrix star = b;
  GramSchmidt gs;
  gs.mu.assign(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n)));
  gs.norms2.resize(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < i; ++j) {
      const Rational mu = b.row(i).dot(star.row(j)) / gs.norms2[static_cast<std::size_t>(j)];
      gs.mu[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = mu;
      star.row(i) -= mu * star.row(j);
    }
    gs.norms2[static_cast<std::size_t>(i)] = star.row(i).squaredNorm();
  }
  return gs;
}

}  // namespace

std::vector<Rational> gram_schmidt_norms2(const IntegerMatrix& basis) { return gram_schmidt(basis).norms2; }

void lll_reduce(IntegerMatrix& basis) {
  const Eigen::Index n = basis.rows();
  if (n < 2) return;
  const Rational delta(3, 4);
  GramSchmidt gs = gram_schmidt(basis);
  Eigen::Index k = 1;
  while (k < n) {
    auto& mu_k = gs.mu[static_cast<std::size_t>(k)];
    for (Eigen::Index j = k - 1; j >= 0; --j) {
      const Integer q = round_nearest(mu_k[static_cast<std::size_t>(j)]);
      if (q == 0) continue;
      basis.row(k) -= q * basis.row(j);
      const auto& mu_j = gs.mu[static_cast<std::size_t>(j)];
      for (Eigen::Index i = 0; i < j; ++i)
        mu_k[static_cast<std::size_t>(i)] -= Rational(q) * mu_j[static_cast<std::size_t>(i)];
      mu_k[static_cast<std::size_t>(j)] -= Rational(q);
    }
    const Rational& m = mu_k[static_cast<std::size_t>(k - 1)];
    if (gs.norms2[static_cast<std::size_t>(k)] >= (delta - m * m) * gs.norms2[static_cast<std::size_t>(k - 1)]) {
      ++k;
    } else {
      basis.row(k).swap(basis.row(k - 1));
      gs = gram_schmidt(basis);
      k = std::max<Eigen::Index>(k - 1, 1);
    }
  }
}

IntegerMatrix integer_kernel(const IntegerMatrix& m) {
  const Eigen::Index n = m.cols();
  IntegerMatrix a = m;
  IntegerMatrix u = IntegerMatrix::Identity(n, n);
  Eigen::Index pivot = 0;
  for (Eigen::Index row = 0; row < a.rows() && pivot < n; ++row) {
    for (Eigen::Index j = pivot + 1; j < n; ++j) {
      while (a(row, j) != 0) {
        const Integer q = a(row, pivot) / a(row, j);
        a.col(pivot) -= q * a.col(j);
        u.col(pivot) -= q * u.col(j);
        a.col(pivot).swap(a.col(j));
        u.col(pivot).swap(u.col(j));
      }
    }
    if (a(row, pivot) != 0) ++pivot;
  }
  if (pivot == n) return IntegerMatrix(n, 0);
  IntegerMatrix rows = u.rightCols(n - pivot).transpose();
  lll_reduce(rows);
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (rows(i, j) == 0) continue;
      if (rows(i, j) < 0) rows.row(i) *= Integer(-1);
      break;
    }
  }
  return rows.transpose();
}

std::vector<Integer> characteristic_polynomial(const IntegerMatrix& a) {
  // Faddeev-LeVerrier; every division below is exact over Z.
  const Eigen::Index n = a.rows();
  std::vector<Integer> coeff(static_cast<std::size_t>(n) + 1);
  coeff[static_cast<std::size_t>(n)] = 1;
  IntegerMatrix m = IntegerMatrix::Zero(n, n);
  const IntegerMatrix identity = IntegerMatrix::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    m = (a * m + coeff[static_cast<std::size_t>(n - k + 1)] * identity).eval();
    const Integer trace = (a * m).trace();
    coeff[static_cast<std::size_t>(n - k)] = -trace / Integer(k);
  }
  return coeff;
}

}  // namespace sadic

#pragma once

#include "equitrans/errors.hpp"
#include "equitrans/scalar.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <vector>

namespace equitrans::linalg {

template <class S>
struct Echelon {
  Mat<S> reduced;           ///< reduced row echelon form
  std::vector<int> pivots;  ///< pivot column per nonzero row
};

/// Gauss-Jordan elimination. Exact for rationals; partial pivoting with an
/// absolute threshold `tol * max(1, max|a_ij|)` for doubles.
template <class S>
Echelon<S> rref(Mat<S> a, double tol = kTolerance) {
  using T = ScalarTraits<S>;
  const double scale = std::max(1.0, max_abs(a));
  const double thresh = tol * scale;
  Echelon<S> out;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < a.cols() && row < a.rows(); ++col) {
    Eigen::Index best = -1;
    if constexpr (T::exact) {
      for (Eigen::Index r = row; r < a.rows(); ++r)
        if (a(r, col) != 0) {
          best = r;
          break;
        }
    } else {
      double best_abs = thresh;
      for (Eigen::Index r = row; r < a.rows(); ++r)
        if (std::abs(a(r, col)) > best_abs) {
          best_abs = std::abs(a(r, col));
          best = r;
        }
    }
    if (best < 0) {
      if constexpr (!T::exact)
        for (Eigen::Index r = row; r < a.rows(); ++r) a(r, col) = 0.0;
      continue;
    }
    if (best != row) a.row(best).swap(a.row(row));
    const S inv_pivot = S(1) / a(row, col);
    for (Eigen::Index c = col; c < a.cols(); ++c) a(row, c) *= inv_pivot;
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
      if (r == row) continue;
      const S f = a(r, col);
      if (T::is_zero(f, 0.0)) continue;
      for (Eigen::Index c = col; c < a.cols(); ++c) a(r, c) -= f * a(row, c);
    }
    out.pivots.push_back(static_cast<int>(col));
    ++row;
  }
  out.reduced = std::move(a);
  return out;
}

inline Eigen::VectorXd singular_values(const MatD& a) {
  if (a.size() == 0) return Eigen::VectorXd();
  return Eigen::JacobiSVD<MatD>(a).singularValues();
}

/// Smallest singular value over min(rows, cols); 0 for empty matrices.
inline double min_singular_value(const MatD& a) {
  const auto sv = singular_values(a);
  return sv.size() == 0 ? 0.0 : sv.minCoeff();
}

inline int numeric_rank(const MatD& a, double tol = kTolerance) {
  const auto sv = singular_values(a);
  if (sv.size() == 0) return 0;
  const double thresh = tol * std::max(1.0, sv.maxCoeff());
  return static_cast<int>((sv.array() > thresh).count());
}

template <class S>
int rank(const Mat<S>& a, double tol = kTolerance) {
  if constexpr (is_exact_v<S>)
    return static_cast<int>(rref<S>(a, tol).pivots.size());
  else
    return numeric_rank(a, tol);
}

/// Columns form a basis of ker(a).
template <class S>
Mat<S> nullspace(const Mat<S>& a, double tol = kTolerance) {
  const auto n = a.cols();
  if constexpr (is_exact_v<S>) {
    const auto e = rref<S>(a, tol);
    std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
    for (int p : e.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
    Mat<S> basis = Mat<S>::Zero(n, n - static_cast<Eigen::Index>(e.pivots.size()));
    Eigen::Index k = 0;
    for (Eigen::Index free = 0; free < n; ++free) {
      if (is_pivot[static_cast<std::size_t>(free)]) continue;
      basis(free, k) = 1;
      for (std::size_t r = 0; r < e.pivots.size(); ++r) basis(e.pivots[r], k) = -e.reduced(static_cast<Eigen::Index>(r), free);
      ++k;
    }
    return basis;
  } else {
    if (a.rows() == 0) return MatD::Identity(n, n);
    Eigen::JacobiSVD<MatD> svd(a, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double thresh = tol * std::max(1.0, sv.size() ? sv.maxCoeff() : 0.0);
    const int r = static_cast<int>((sv.array() > thresh).count());
    return svd.matrixV().rightCols(n - r);
  }
}

/// Indices of a maximal linearly independent subset of columns, chosen greedily left to right.
template <class S>
std::vector<int> independent_columns(const Mat<S>& a, double tol = kTolerance) {
  if constexpr (is_exact_v<S>) {
    return rref<S>(a, tol).pivots;
  } else {
    std::vector<int> keep;
    MatD q(a.rows(), 0);
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      VecD v = a.col(j);
      const double norm0 = v.norm();
      if (norm0 <= tol) continue;
      for (int pass = 0; pass < 2; ++pass)
        if (q.cols() > 0) v -= q * (q.transpose() * v);
      if (v.norm() > tol * std::max(1.0, norm0) * 10.0) {
        q.conservativeResize(Eigen::NoChange, q.cols() + 1);
        q.col(q.cols() - 1) = v / v.norm();
        keep.push_back(static_cast<int>(j));
      }
    }
    return keep;
  }
}

template <class S>
Mat<S> select_columns(const Mat<S>& a, const std::vector<int>& idx) {
  Mat<S> out(a.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = a.col(idx[k]);
  return out;
}

/// Orthonormal basis of the column span (doubles only).
inline MatD orthonormal_basis(const MatD& a, double tol = kTolerance) {
  if (a.cols() == 0 || a.rows() == 0) return MatD(a.rows(), 0);
  Eigen::JacobiSVD<MatD> svd(a, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double thresh = tol * std::max(1.0, sv.maxCoeff());
  const int r = static_cast<int>((sv.array() > thresh).count());
  return svd.matrixU().leftCols(r);
}

/// Inverse of a square matrix; throws MathFailure when singular.
template <class S>
Mat<S> inverse(const Mat<S>& a, double tol = kTolerance) {
  if (a.rows() != a.cols()) throw InvalidInput("inverse of a non-square matrix");
  const auto n = a.rows();
  Mat<S> aug(n, 2 * n);
  aug.leftCols(n) = a;
  aug.rightCols(n) = Mat<S>::Identity(n, n);
  auto e = rref<S>(std::move(aug), tol);
  if (static_cast<Eigen::Index>(e.pivots.size()) < n || (n > 0 && e.pivots.back() >= n))
    throw MathFailure("matrix is singular");
  return e.reduced.rightCols(n);
}

/// Some solution X of A X = B; throws MathFailure when inconsistent.
template <class S>
Mat<S> solve(const Mat<S>& a, const Mat<S>& b, double tol = kTolerance) {
  if constexpr (is_exact_v<S>) {
    Mat<S> aug(a.rows(), a.cols() + b.cols());
    aug.leftCols(a.cols()) = a;
    aug.rightCols(b.cols()) = b;
    const auto e = rref<S>(std::move(aug), tol);
    Mat<S> x = Mat<S>::Zero(a.cols(), b.cols());
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
      if (e.pivots[r] >= a.cols()) throw MathFailure("linear system is inconsistent");
      x.row(e.pivots[r]) = e.reduced.row(static_cast<Eigen::Index>(r)).rightCols(b.cols());
    }
    return x;
  } else {
    MatD x = a.completeOrthogonalDecomposition().solve(b);
    if (!approx_equal<double>(a * x, b, 1e-8 * std::max(1.0, max_abs(b)))) throw MathFailure("linear system is inconsistent");
    return x;
  }
}

}  // namespace equitrans::linalg

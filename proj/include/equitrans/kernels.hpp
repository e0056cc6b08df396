#pragma once

// Dense kernels behind every group average in the library. Each kernel has a
// serial reference and an OpenMP version; both evaluate every output entry
// with the same operation order, so results agree bit for bit.

#include "equitrans/errors.hpp"
#include "equitrans/scalar.hpp"

#include <cstddef>
#include <vector>

namespace equitrans::kernels {

enum class Backend { serial, parallel };

/// Work (in multiply-adds) below which the parallel backend stays serial.
inline constexpr long long kParallelThreshold = 4096;

namespace detail {

template <class S>
void product_row(const Mat<S>& a, const Mat<S>& b, Mat<S>& c, Eigen::Index i) {
  for (Eigen::Index k = 0; k < a.cols(); ++k) {
    const S& aik = a(i, k);
    if (ScalarTraits<S>::is_zero(aik, 0.0)) continue;
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      const S& bkj = b(k, j);
      if (ScalarTraits<S>::is_zero(bkj, 0.0)) continue;
      c(i, j) += aik * bkj;
    }
  }
}

}  // namespace detail

/// C = A B, skipping structural zeros (cheap for the sparse integer matrices of
/// preset representations).
template <class S>
Mat<S> product(const Mat<S>& a, const Mat<S>& b, Backend backend = Backend::parallel) {
  if (a.cols() != b.rows()) throw InvalidInput("product: inner dimensions differ");
  Mat<S> c = Mat<S>::Zero(a.rows(), b.cols());
  const long long work = static_cast<long long>(a.rows()) * a.cols() * b.cols();
  const Eigen::Index rows = a.rows();
  if (backend == Backend::serial) {
    for (Eigen::Index i = 0; i < rows; ++i) detail::product_row(a, b, c, i);
  } else {
#pragma omp parallel for schedule(static) if (work > kParallelThreshold)
    for (Eigen::Index i = 0; i < rows; ++i) detail::product_row(a, b, c, i);
  }
  return c;
}

/// Σ_k w_k M_k. All matrices must share a shape.
template <class S>
Mat<S> weighted_sum(const std::vector<Mat<S>>& mats, const std::vector<S>& weights,
                    Backend backend = Backend::parallel) {
  if (mats.empty()) throw InvalidInput("weighted_sum: no matrices");
  if (mats.size() != weights.size()) throw InvalidInput("weighted_sum: weight count mismatch");
  const Eigen::Index rows = mats.front().rows();
  const Eigen::Index cols = mats.front().cols();
  for (const auto& m : mats)
    if (m.rows() != rows || m.cols() != cols) throw InvalidInput("weighted_sum: shape mismatch");
  Mat<S> out = Mat<S>::Zero(rows, cols);
  const auto body = [&](Eigen::Index idx) {
    const Eigen::Index i = idx / cols;
    const Eigen::Index j = idx % cols;
    S acc = S(0);
    for (std::size_t k = 0; k < mats.size(); ++k) {
      if (ScalarTraits<S>::is_zero(weights[k], 0.0)) continue;
      const S& m = mats[k](i, j);
      if (ScalarTraits<S>::is_zero(m, 0.0)) continue;
      acc += weights[k] * m;
    }
    out(i, j) = acc;
  };
  const Eigen::Index total = rows * cols;
  const long long work = static_cast<long long>(total) * static_cast<long long>(mats.size());
  if (backend == Backend::serial) {
    for (Eigen::Index idx = 0; idx < total; ++idx) body(idx);
  } else {
#pragma omp parallel for schedule(static) if (work > kParallelThreshold)
    for (Eigen::Index idx = 0; idx < total; ++idx) body(idx);
  }
  return out;
}

/// (1/N) Σ_k L_k X R_k. The per-term products are formed independently and
/// summed in index order.
template <class S>
Mat<S> twisted_average(const std::vector<Mat<S>>& left, const Mat<S>& x, const std::vector<Mat<S>>& right,
                       Backend backend = Backend::parallel) {
  if (left.empty() || left.size() != right.size()) throw InvalidInput("twisted_average: sample count mismatch");
  const std::size_t n = left.size();
  std::vector<Mat<S>> terms(n);
  const auto body = [&](std::size_t k) { terms[k] = product<S>(product<S>(left[k], x, Backend::serial), right[k], Backend::serial); };
  const long long work = static_cast<long long>(n) * x.rows() * x.cols() * (left.front().rows() + right.front().cols());
  const auto count = static_cast<long long>(n);
  if (backend == Backend::serial) {
    for (long long k = 0; k < count; ++k) body(static_cast<std::size_t>(k));
  } else {
#pragma omp parallel for schedule(static) if (work > kParallelThreshold)
    for (long long k = 0; k < count; ++k) body(static_cast<std::size_t>(k));
  }
  Mat<S> out = Mat<S>::Zero(left.front().rows(), right.front().cols());
  for (const auto& t : terms) out += t;
  return out / S(static_cast<long long>(n));
}

/// Matrix of the averaging operator T ↦ (1/N) Σ_k L_k T R_k on row-major
/// vectorized T (T is p×q with p = rows(L_k), q = cols(R_k)). Column
/// (i*q + j) is the average applied to the elementary matrix E_ij.
template <class S>
Mat<S> averaging_operator(const std::vector<Mat<S>>& left, const std::vector<Mat<S>>& right,
                          Backend backend = Backend::parallel) {
  if (left.empty() || left.size() != right.size()) throw InvalidInput("averaging_operator: sample count mismatch");
  const Eigen::Index p = left.front().rows();
  const Eigen::Index q = right.front().cols();
  const Eigen::Index r = left.front().cols();
  const Eigen::Index c = right.front().rows();
  if (r != p || c != q) throw InvalidInput("averaging_operator: expected square actions");
  const Eigen::Index dim = p * q;
  Mat<S> out = Mat<S>::Zero(dim, dim);
  const S inv_n = S(1) / S(static_cast<long long>(left.size()));
  // Entry ((a,b),(i,j)) = avg_k L_k(a,i) R_k(j,b).
  const auto body = [&](Eigen::Index col) {
    const Eigen::Index i = col / q;
    const Eigen::Index j = col % q;
    for (std::size_t k = 0; k < left.size(); ++k) {
      for (Eigen::Index a = 0; a < p; ++a) {
        const S& lai = left[k](a, i);
        if (ScalarTraits<S>::is_zero(lai, 0.0)) continue;
        for (Eigen::Index b = 0; b < q; ++b) {
          const S& rjb = right[k](j, b);
          if (ScalarTraits<S>::is_zero(rjb, 0.0)) continue;
          out(a * q + b, col) += lai * rjb;
        }
      }
    }
    for (Eigen::Index row = 0; row < dim; ++row) out(row, col) *= inv_n;
  };
  const long long work = static_cast<long long>(dim) * dim * static_cast<long long>(left.size());
  if (backend == Backend::serial) {
    for (Eigen::Index col = 0; col < dim; ++col) body(col);
  } else {
#pragma omp parallel for schedule(static) if (work > kParallelThreshold)
    for (Eigen::Index col = 0; col < dim; ++col) body(col);
  }
  return out;
}

}  // namespace equitrans::kernels

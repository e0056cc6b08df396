#include "equitrans/sampling.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <numeric>

namespace equitrans::sampling {

MatQ random_rational_orthogonal(int dim, Rng& rng, int rotations) {
  std::vector<int> perm(static_cast<std::size_t>(dim));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::uniform_int_distribution<int> coin(0, 1);
  MatQ q = MatQ::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) q(perm[static_cast<std::size_t>(i)], i) = coin(rng) ? 1 : -1;
  if (dim < 2) return q;
  std::uniform_int_distribution<int> pick(0, dim - 1);
  std::uniform_int_distribution<int> num(1, 3);
  for (int r = 0; r < rotations; ++r) {
    const int a = pick(rng);
    int b = pick(rng);
    while (b == a) b = pick(rng);
    const int p = num(rng);
    const Rational t(p, p + 1 + num(rng));
    const Rational c = (1 - t * t) / (1 + t * t);
    const Rational s = 2 * t / (1 + t * t);
    // Rotate rows a and b of q.
    for (int j = 0; j < dim; ++j) {
      const Rational qa = q(a, j), qb = q(b, j);
      q(a, j) = c * qa - s * qb;
      q(b, j) = s * qa + c * qb;
    }
  }
  return q;
}

MatD random_orthogonal(int dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  MatD g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = normal(rng);
  const Eigen::HouseholderQR<MatD> qr(g);
  MatD q = qr.householderQ();
  const MatD r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  return q;
}

template <class S>
reps::Representation<S> random_representation(const reps::GroupPtr& group, int max_dim, Rng& rng) {
  std::vector<reps::Representation<S>> pool;
  pool.push_back(reps::trivial_representation<S>(group, 1));
  if (group->is_circle()) {
    if constexpr (is_exact_v<S>) {
      throw InvalidInput("the circle group is only available in float mode");
    } else {
      const int top = std::max(1, std::min(group->circle().max_weight(), max_dim));
      for (int w = 1; w <= top; ++w) pool.push_back(reps::weight_representation(group, {w}));
    }
  } else {
    for (auto& ir : reps::nontrivial_irreps<S>(group)) pool.push_back(ir.realization);
  }
  std::uniform_int_distribution<int> target_dist(1, max_dim);
  const int target = target_dist(rng);
  std::uniform_int_distribution<std::size_t> which(0, pool.size() - 1);
  std::optional<reps::Representation<S>> acc;
  int dim = 0;
  for (int attempts = 0; dim < target && attempts < 64; ++attempts) {
    const auto& piece = pool[which(rng)];
    if (dim + piece.dim() > max_dim) continue;
    acc = acc ? reps::direct_sum(*acc, piece) : piece;
    dim += piece.dim();
  }
  if (!acc) acc = pool.front();
  if constexpr (is_exact_v<S>) {
    const MatQ q = random_rational_orthogonal(acc->dim(), rng);
    return reps::conjugate<S>(*acc, q, q.transpose());
  } else {
    const MatD q = random_orthogonal(acc->dim(), rng);
    return reps::conjugate<S>(*acc, q, q.transpose());
  }
}

template <class S>
Mat<S> random_combination(const std::vector<Mat<S>>& basis, Rng& rng, int range) {
  if (basis.empty()) throw InvalidInput("random_combination: empty basis");
  std::uniform_int_distribution<int> coef(-range, range);
  Mat<S> out = Mat<S>::Zero(basis.front().rows(), basis.front().cols());
  for (const auto& b : basis) out += b * S(static_cast<long long>(coef(rng)));
  return out;
}

template reps::Representation<Rational> random_representation<Rational>(const reps::GroupPtr&, int, Rng&);
template reps::Representation<double> random_representation<double>(const reps::GroupPtr&, int, Rng&);
template MatQ random_combination<Rational>(const std::vector<MatQ>&, Rng&, int);
template MatD random_combination<double>(const std::vector<MatD>&, Rng&, int);

}  // namespace equitrans::sampling

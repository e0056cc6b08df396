#include "equitrans/representation.hpp"

#include "equitrans/kernels.hpp"

#include <cmath>

namespace equitrans::reps {

namespace {

template <class S>
void check_square(const std::vector<Mat<S>>& action, int dim) {
  for (std::size_t g = 0; g < action.size(); ++g)
    if (action[g].rows() != dim || action[g].cols() != dim)
      throw InvalidInput("representation matrix for element " + std::to_string(g) + " has the wrong shape");
}

}  // namespace

bool same_group(const GroupPtr& a, const GroupPtr& b) {
  if (!a || !b) return false;
  if (a == b) return true;
  if (a->is_circle() != b->is_circle()) return false;
  if (a->is_circle()) return a->circle().quadrature_order() == b->circle().quadrature_order();
  return a->finite().table() == b->finite().table();
}

template <class S>
Representation<S>::Representation(GroupPtr group, std::vector<Mat<S>> action)
    : group_(std::move(group)), action_(std::move(action)) {
  if (!group_) throw InvalidInput("representation without a group");
  if (static_cast<int>(action_.size()) != group_->count())
    throw InvalidInput("representation needs " + std::to_string(group_->count()) + " matrices, got " +
                       std::to_string(action_.size()));
  dim_ = static_cast<int>(action_.front().rows());
  if (dim_ <= 0) throw InvalidInput("representation dimension must be positive");
  check_square(action_, dim_);

  const Mat<S> id = Mat<S>::Identity(dim_, dim_);
  if (!approx_equal<S>(action_[static_cast<std::size_t>(group_->identity())], id))
    throw InvalidInput("representation does not send the identity to I");
  // ρ(g s) = ρ(g) ρ(s) for every g and every generator s implies the full
  // homomorphism property by induction on word length.
  for (int s : group_->generators())
    for (int g = 0; g < group_->count(); ++g) {
      const Mat<S> prod = kernels::product<S>((*this)(g), (*this)(s), kernels::Backend::serial);
      if (!approx_equal<S>(prod, (*this)(group_->multiply(g, s))))
        throw InvalidInput("representation is not multiplicative at (" + std::to_string(g) + ", " + std::to_string(s) + ")");
    }
  if constexpr (!is_exact_v<S>) {
    for (int g = 0; g < group_->count(); ++g)
      if (!approx_equal<S>((*this)(g).transpose() * (*this)(g), id))
        throw InvalidInput("representation matrix for element " + std::to_string(g) + " is not orthogonal");
  }
}

template <class S>
Representation<S> Representation<S>::from_generators(GroupPtr group, const std::map<int, Mat<S>>& generator_images) {
  if (!group) throw InvalidInput("representation without a group");
  if (generator_images.empty()) throw InvalidInput("no generator images given");
  const auto dim = generator_images.begin()->second.rows();
  std::vector<Mat<S>> action(static_cast<std::size_t>(group->count()));
  std::vector<bool> seen(action.size(), false);
  const int e = group->identity();
  action[static_cast<std::size_t>(e)] = Mat<S>::Identity(dim, dim);
  seen[static_cast<std::size_t>(e)] = true;
  std::vector<int> queue{e};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (const auto& [s, m] : generator_images) {
      if (s < 0 || s >= group->count()) throw InvalidInput("generator index out of range");
      if (m.rows() != dim || m.cols() != dim) throw InvalidInput("generator matrices differ in shape");
      const int h = group->multiply(queue[i], s);
      if (seen[static_cast<std::size_t>(h)]) continue;
      seen[static_cast<std::size_t>(h)] = true;
      action[static_cast<std::size_t>(h)] = action[static_cast<std::size_t>(queue[i])] * m;
      queue.push_back(h);
    }
  if (static_cast<int>(queue.size()) != group->count()) throw InvalidInput("generator images do not generate the group");
  return Representation<S>(std::move(group), std::move(action));
}

template <class S>
std::vector<Mat<S>> Representation<S>::inverse_matrices() const {
  std::vector<Mat<S>> out;
  out.reserve(action_.size());
  for (int g = 0; g < group_->count(); ++g) out.push_back(action_[static_cast<std::size_t>(group_->inverse(g))]);
  return out;
}

Representation<double> weight_representation(const GroupPtr& circle, const std::vector<int>& weights) {
  const auto& c = circle->circle();
  if (weights.empty()) throw InvalidInput("weight list is empty");
  int dim = 0;
  for (int w : weights) {
    if (w < 0) throw InvalidInput("weights must be nonnegative");
    if (w > c.max_weight())
      throw InvalidInput("weight " + std::to_string(w) + " needs quadrature_order >= " + std::to_string(4 * w + 1));
    dim += w == 0 ? 1 : 2;
  }
  std::vector<MatD> action;
  for (int k = 0; k < c.quadrature_order(); ++k) {
    MatD m = MatD::Zero(dim, dim);
    int at = 0;
    for (int w : weights) {
      if (w == 0) {
        m(at, at) = 1.0;
        ++at;
        continue;
      }
      const double t = w * c.angle(k);
      m(at, at) = std::cos(t);
      m(at, at + 1) = -std::sin(t);
      m(at + 1, at) = std::sin(t);
      m(at + 1, at + 1) = std::cos(t);
      at += 2;
    }
    action.push_back(std::move(m));
  }
  return Representation<double>(circle, std::move(action));
}

template <class S>
Representation<S> trivial_representation(const GroupPtr& group, int dim) {
  return Representation<S>(group, std::vector<Mat<S>>(static_cast<std::size_t>(group->count()), Mat<S>::Identity(dim, dim)));
}

template <class S>
Representation<S> direct_sum(const Representation<S>& a, const Representation<S>& b) {
  if (!same_group(a.group(), b.group())) throw InvalidInput("direct sum of representations of different groups");
  std::vector<Mat<S>> out;
  for (int g = 0; g < a.group()->count(); ++g) {
    Mat<S> m = Mat<S>::Zero(a.dim() + b.dim(), a.dim() + b.dim());
    m.topLeftCorner(a.dim(), a.dim()) = a(g);
    m.bottomRightCorner(b.dim(), b.dim()) = b(g);
    out.push_back(std::move(m));
  }
  return Representation<S>(a.group(), std::move(out));
}

template <class S>
Representation<S> conjugate(const Representation<S>& rep, const Mat<S>& q, const Mat<S>& q_inverse) {
  std::vector<Mat<S>> out;
  for (const auto& m : rep.matrices()) out.push_back(kernels::product<S>(kernels::product<S>(q, m), q_inverse));
  return Representation<S>(rep.group(), std::move(out));
}

Representation<Rational> permutation_representation(const GroupPtr& group, const std::vector<std::vector<int>>& action) {
  const auto& g = group->finite();
  if (static_cast<int>(action.size()) != g.order()) throw InvalidInput("permutation action needs one row per element");
  const auto n = static_cast<Eigen::Index>(action.front().size());
  std::vector<MatQ> mats;
  for (const auto& perm : action) {
    if (static_cast<Eigen::Index>(perm.size()) != n) throw InvalidInput("permutation rows differ in length");
    MatQ m = MatQ::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const int img = perm[static_cast<std::size_t>(i)];
      if (img < 0 || img >= n) throw InvalidInput("permutation entry out of range");
      m(img, i) = 1;
    }
    mats.push_back(std::move(m));
  }
  return Representation<Rational>(group, std::move(mats));
}

Representation<double> to_float(const Representation<Rational>& rep) {
  std::vector<MatD> out;
  for (const auto& m : rep.matrices()) out.push_back(to_double(m));
  return Representation<double>(rep.group(), std::move(out));
}

Representation<double> orthonormalized(const Representation<Rational>& rep) {
  return Representation<double>(rep.group(), orthonormalize_action(rep.matrices()));
}

template class Representation<Rational>;
template class Representation<double>;
template Representation<Rational> trivial_representation<Rational>(const GroupPtr&, int);
template Representation<double> trivial_representation<double>(const GroupPtr&, int);
template Representation<Rational> direct_sum<Rational>(const Representation<Rational>&, const Representation<Rational>&);
template Representation<double> direct_sum<double>(const Representation<double>&, const Representation<double>&);
template Representation<Rational> conjugate<Rational>(const Representation<Rational>&, const MatQ&, const MatQ&);
template Representation<double> conjugate<double>(const Representation<double>&, const MatD&, const MatD&);

}  // namespace equitrans::reps

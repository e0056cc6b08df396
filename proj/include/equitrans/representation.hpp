#pragma once

#include "equitrans/errors.hpp"
#include "equitrans/group.hpp"
#include "equitrans/scalar.hpp"

#include <map>
#include <vector>

namespace equitrans::reps {

/// Real representation: one matrix per group element (or quadrature sample).
///
/// Construction validates ρ(e) = I and ρ(gh) = ρ(g)ρ(h), exactly for
/// rationals and to 1e-10 for doubles. Float representations must be
/// orthogonal; rational ones only need to preserve some invariant inner
/// product, which always holds for a finite group.
template <class S>
class Representation {
 public:
  Representation(GroupPtr group, std::vector<Mat<S>> action);

  /// Extends generator images multiplicatively; every element must be reached.
  static Representation from_generators(GroupPtr group, const std::map<int, Mat<S>>& generator_images);

  [[nodiscard]] const GroupPtr& group() const { return group_; }
  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] const Mat<S>& operator()(int g) const { return action_[static_cast<std::size_t>(g)]; }
  [[nodiscard]] const std::vector<Mat<S>>& matrices() const { return action_; }
  /// ρ(g⁻¹) indexed by g.
  [[nodiscard]] std::vector<Mat<S>> inverse_matrices() const;

 private:
  GroupPtr group_;
  int dim_ = 0;
  std::vector<Mat<S>> action_;
};

template <class S>
using Rep = Representation<S>;

/// Circle representation with rotation planes of the given weights
/// (weight 0 is a trivial line).
Representation<double> weight_representation(const GroupPtr& circle, const std::vector<int>& weights);

template <class S>
Representation<S> trivial_representation(const GroupPtr& group, int dim = 1);

template <class S>
Representation<S> direct_sum(const Representation<S>& a, const Representation<S>& b);

/// Q ρ(g) Q⁻¹.
template <class S>
Representation<S> conjugate(const Representation<S>& rep, const Mat<S>& q, const Mat<S>& q_inverse);

/// Permutation representation of a finite group acting on {0..n-1}.
Representation<Rational> permutation_representation(const GroupPtr& group, const std::vector<std::vector<int>>& action);

/// Entrywise conversion; the rational representation must already be orthogonal.
Representation<double> to_float(const Representation<Rational>& rep);
/// Float version in an orthonormal basis for the averaged inner product.
Representation<double> orthonormalized(const Representation<Rational>& rep);

/// Same group model (shared pointer or identical description).
bool same_group(const GroupPtr& a, const GroupPtr& b);

}  // namespace equitrans::reps

#pragma once

#include "equitrans/group_reps.hpp"
#include "equitrans/simplicial.hpp"

#include <map>
#include <utility>
#include <vector>

namespace equitrans::bundles {

using Edge = std::pair<int, int>;

/// Equivariant vector bundle over a simplicial base with uniform fiber
/// representation. τ(a, b) maps chart coordinates at a to chart coordinates at b.
template <class S>
class GBundle {
 public:
  /// Transitions keyed by (a, b) with a < b; missing edges default to I.
  /// Validates shape, invertibility (orthogonality for doubles),
  /// equivariance, and the cocycle condition on every 2-simplex.
  GBundle(SimplicialBase base, reps::Representation<S> fiber, const std::map<Edge, Mat<S>>& transitions = {});

  [[nodiscard]] const SimplicialBase& base() const { return base_; }
  [[nodiscard]] const reps::Representation<S>& fiber() const { return fiber_; }
  [[nodiscard]] const reps::GroupPtr& group() const { return fiber_.group(); }
  [[nodiscard]] int rank() const { return fiber_.dim(); }

  /// τ(from → to); identity when from == to. Requires an edge.
  [[nodiscard]] const Mat<S>& transition(int from, int to) const;

 private:
  SimplicialBase base_;
  reps::Representation<S> fiber_;
  std::map<Edge, Mat<S>> tau_;  // both orientations
  Mat<S> identity_;
};

template <class S>
struct ComponentRanks {
  int component = 0;
  int fixed_rank = 0;
  std::map<std::string, int> ranks;  ///< per irrep label, nonzero only
};

template <class S>
struct IsotypicSplitting {
  /// Projectors are the same matrices in every vertex chart, since the fiber
  /// representation is uniform.
  reps::IsotypicDecomposition<S> fiberwise;
  std::vector<ComponentRanks<S>> components;
};

/// Character-projector splitting E = E^G ⊕ ⊕_λ E^λ. Throws InvalidInput
/// naming the edge if a transition fails to commute with a projector.
template <class S>
IsotypicSplitting<S> decompose_bundle(const GBundle<S>& bundle, kernels::Backend backend = kernels::Backend::parallel);

/// Φ(v) = avg ρ_W(g) raw(v) ρ_V(g)⁻¹ per vertex.
template <class S>
std::vector<Mat<S>> equivariant_average_bundle_map(const reps::Representation<S>& source, const reps::Representation<S>& target,
                                                   const std::vector<Mat<S>>& raw,
                                                   kernels::Backend backend = kernels::Backend::parallel);

template <class S>
std::vector<Mat<S>> equivariant_average_bundle_map(const GBundle<S>& bundle, const std::vector<Mat<S>>& raw,
                                                   kernels::Backend backend = kernels::Backend::parallel);

/// Per-vertex subspaces (as column bases in vertex charts).
template <class S>
struct Subbundle {
  std::vector<Mat<S>> basis;
};

template <class S>
struct Complement {
  Subbundle<S> complement;
  std::vector<Mat<S>> projector_f;       ///< onto F along F^⊥
  std::vector<Mat<S>> projector_perp;    ///< onto F^⊥ along F
};

/// Invariant inner product avg ρ(g)ᵀρ(g); the identity for orthogonal fibers.
template <class S>
Mat<S> invariant_metric(const reps::Representation<S>& rep);

/// Complement of an invariant constant-rank subbundle, orthogonal for the
/// group-averaged metric. Throws InvalidInput naming vertices on a rank jump,
/// a non-invariant fiber, or a fiber not carried to its neighbour by τ.
template <class S>
Complement<S> invariant_complement(const GBundle<S>& bundle, const Subbundle<S>& f);

}  // namespace equitrans::bundles

#pragma once

#include "equitrans/errors.hpp"
#include "equitrans/group.hpp"

#include <functional>
#include <map>
#include <vector>

namespace equitrans::groupoid {

struct Morphism {
  int source = 0;
  int target = 0;
};

/// Finite groupoid with explicit structure maps. compose(ψ, φ) = ψ∘φ is
/// defined when t(φ) = s(ψ).
class FiniteGroupoid {
 public:
  FiniteGroupoid() = default;
  /// `composition` is row-major m × m with entry (ψ, φ) = ψ∘φ, or −1 when not composable.
  FiniteGroupoid(int objects, std::vector<Morphism> morphisms, std::vector<int> units, std::vector<int> inverses,
                 std::vector<int> composition);

  [[nodiscard]] int object_count() const { return objects_; }
  [[nodiscard]] int morphism_count() const { return static_cast<int>(morphisms_.size()); }
  [[nodiscard]] const Morphism& morphism(int phi) const { return morphisms_[static_cast<std::size_t>(phi)]; }
  [[nodiscard]] int unit(int x) const { return units_[static_cast<std::size_t>(x)]; }
  [[nodiscard]] int inverse(int phi) const { return inverses_[static_cast<std::size_t>(phi)]; }
  [[nodiscard]] int compose(int psi, int phi) const;

  [[nodiscard]] std::vector<int> between(int x, int y) const;
  /// stab_x = {φ : s(φ) = t(φ) = x}.
  [[nodiscard]] std::vector<int> stab(int x) const { return between(x, x); }
  /// Component label per object (objects joined by a morphism share a label).
  [[nodiscard]] std::vector<int> components() const;

  /// Exhaustive check of the category axioms and inverses; throws InvalidInput.
  void validate() const;

 private:
  int objects_ = 0;
  std::vector<Morphism> morphisms_;
  std::vector<int> units_;
  std::vector<int> inverses_;
  std::vector<int> composition_;
};

/// Ω ⋉ O: morphism (g, x) has index g·|O| + x, source x and target g·x.
struct ActionGroupoid {
  reps::FiniteGroup group;
  std::vector<std::vector<int>> perm;  ///< perm[g][x] = g·x
  FiniteGroupoid groupoid;

  [[nodiscard]] int object_count() const { return static_cast<int>(perm.front().size()); }
  [[nodiscard]] int morphism(int g, int x) const { return g * object_count() + x; }
  [[nodiscard]] int element(int phi) const { return phi / object_count(); }
};

/// Throws InvalidInput unless `perm` is an action of `group` by permutations.
ActionGroupoid make_translation_groupoid(const reps::FiniteGroup& group, std::vector<std::vector<int>> perm);

/// S_{x,U} = {φ : s(φ) = x, t(φ) ∈ U}.
std::vector<int> orbit_set(const FiniteGroupoid& g, int x, const std::vector<int>& u);

struct ProperFailure {
  int x = 0;
  int y = 0;
  int orbit_set_size = 0;
  int stab_size = 0;
};

struct PropernessReport {
  bool pass = true;
  int checked = 0;
  std::vector<ProperFailure> failures;
};

/// |S_{y,U_x}| = |stab_x| for every y ∈ U_x. Throws InvalidInput when x ∉ U_x.
PropernessReport properness_check(const FiniteGroupoid& g, const std::map<int, std::vector<int>>& uniformizers);

/// How stab_x moves a finite neighborhood: image[φ][i] is where φ sends neighborhood[i].
struct LocalAction {
  int object = 0;
  std::vector<int> neighborhood;
  std::map<int, std::vector<int>> image;
};

/// Local action induced by the group on an action groupoid. Throws
/// InvalidInput when the neighborhood is not stab_x-invariant.
LocalAction translation_local_action(const ActionGroupoid& g, int x, std::vector<int> neighborhood);

struct EffectivePart {
  int object = 0;
  std::vector<int> stab;
  std::vector<int> kernel;  ///< elements acting as the identity on the neighborhood
  [[nodiscard]] int order() const { return static_cast<int>(stab.size() / kernel.size()); }
};

EffectivePart effective_part(const FiniteGroupoid& g, const LocalAction& action);

/// Action of a finite group on a groupoid by strict functors.
struct GlobalAction {
  reps::FiniteGroup group;
  std::vector<std::vector<int>> objects;    ///< objects[g][x]
  std::vector<std::vector<int>> morphisms;  ///< morphisms[g][φ]

  /// Functoriality and the action law; throws InvalidInput.
  void validate(const FiniteGroupoid& g) const;
  /// G acting on Ω ⋉ O through σ_g on O and automorphisms α_g of Ω, with
  /// σ_g(h·x) = α_g(h)·σ_g(x).
  static GlobalAction on_translation(const ActionGroupoid& x, const reps::FiniteGroup& group,
                                     std::vector<std::vector<int>> sigma, std::vector<std::vector<int>> alpha);
  static GlobalAction trivial(const FiniteGroupoid& g);
};

struct QuotientMorphism {
  int source = 0;  ///< slice positions
  int target = 0;
  int g = 0;
  int lift = 0;  ///< φ: g·x → y, canonical modulo the ineffective kernel at y
};

struct QuotientGroupoidModel {
  FiniteGroupoid groupoid;
  std::vector<int> slices;
  std::vector<QuotientMorphism> morphisms;
  std::vector<int> stab_q;    ///< per slice
  std::vector<int> stab_eff;  ///< per slice
  std::vector<int> g_x;       ///< |G_x|, G_x = {g : g·x ≅ x}

  [[nodiscard]] bool cardinality_law() const;
};

/// Smallest object of every class of x ~ y, where some g·x is isomorphic to y.
std::vector<int> default_slices(const FiniteGroupoid& x, const GlobalAction& action);

/// Objects are the slices; a morphism x → y is (g, [φ]) with φ: g·x → y taken
/// modulo the ineffective kernels (empty list: effective). Throws InvalidInput
/// when the slices miss an orbit or the kernels are not preserved by
/// morphisms and the action.
QuotientGroupoidModel quotient_groupoid(const FiniteGroupoid& x, const GlobalAction& action, const std::vector<int>& slices,
                                        const std::vector<std::vector<int>>& kernels = {});

struct RegularityRecord {
  int object = 0;
  int morphism = 0;
  bool pass = true;
};

struct RegularityReport {
  bool pass = true;
  std::vector<RegularityRecord> records;
};

/// Condition 1: an element fixing any declared sub-neighborhood pointwise
/// fixes the whole neighborhood.
struct RegularityData {
  LocalAction action;
  std::vector<std::vector<int>> subneighborhoods;
};
RegularityReport regularity_check(const FiniteGroupoid& g, const std::vector<RegularityData>& data);

/// Linear action on sample points: finite (one matrix per element) or the
/// circle rotating coordinate planes with integer weights.
class PointAction {
 public:
  static PointAction finite(std::vector<MatD> matrices);
  static PointAction circle(std::vector<int> weights, int quadrature_order);

  [[nodiscard]] bool is_circle() const { return !weights_.empty(); }
  [[nodiscard]] int count() const;
  [[nodiscard]] MatD element(int k) const;
  [[nodiscard]] MatD rotation(double theta) const;
  [[nodiscard]] int dim() const;

 private:
  std::vector<MatD> matrices_;
  std::vector<int> weights_;
  int order_ = 0;
};

using Metric = std::function<double(const VecD&, const VecD&)>;
double euclidean(const VecD& x, const VecD& y);

struct QuotientMetric {
  MatD d_g;         ///< averaged metric on the samples
  MatD d_quotient;  ///< min over the group of d_G(x, g·y)
};

/// Throws InvalidInput when d violates the metric axioms on the samples.
QuotientMetric quotient_metric(const std::vector<VecD>& points, const PointAction& action, const Metric& d = euclidean);
/// d_G(x, y) with sorted summation, so permuted terms give identical sums.
double averaged_distance(const VecD& x, const VecD& y, const PointAction& action, const Metric& d = euclidean);
/// min_g d_G(x, g·y); on the circle a sampled minimum refined by golden section to 1e-10 in angle.
double quotient_distance(const VecD& x, const VecD& y, const PointAction& action, const Metric& d = euclidean);
void check_metric_axioms(const std::vector<VecD>& points, const Metric& d, double tol = 1e-12);

}  // namespace equitrans::groupoid

#pragma once

#include "equitrans/group.hpp"
#include "equitrans/kernels.hpp"
#include "equitrans/representation.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace equitrans::reps {

/// Real division algebra End_G(V) of an irreducible.
enum class EndoType { R, C, H };

int endo_dimension(EndoType t);
std::string_view to_string(EndoType t);
EndoType endo_type_from_dim(int dim);

/// Real irreducible representation with its character and endomorphism type.
template <class S>
struct Irrep {
  std::string label;
  int dim_v = 0;
  EndoType endo_type = EndoType::R;
  int endo_dim = 1;
  std::vector<S> character;
  Representation<S> realization;
};

/// Thrown by endo_type on reducible input. `subspace` spans a proper
/// nonzero invariant subspace (columns, original coordinates).
class ReducibleRepresentation : public InvalidInput {
 public:
  ReducibleRepresentation(const std::string& what, MatD subspace) : InvalidInput(what), subspace_(std::move(subspace)) {}
  [[nodiscard]] const MatD& subspace() const { return subspace_; }

 private:
  MatD subspace_;
};

template <class S>
std::vector<S> character(const Representation<S>& rep);

/// Average of a(g) b(g) over the group.
template <class S>
S character_inner(const std::vector<S>& a, const std::vector<S>& b);

template <class S>
Irrep<S> trivial_irrep(const GroupPtr& group);

/// All nontrivial real irreducibles known for the group. For the circle these
/// are the weight planes 1..max_weight(). Exact mode requires rational
/// realizations and throws InvalidInput otherwise.
template <class S>
std::vector<Irrep<S>> nontrivial_irreps(const GroupPtr& group);

template <class S>
Irrep<S> irrep_by_label(const GroupPtr& group, const std::string& label);

/// (dim V / dim End) · avg χ(g) ρ(g).
template <class S>
Mat<S> isotypic_projector(const Representation<S>& rep, const Irrep<S>& irrep,
                          kernels::Backend backend = kernels::Backend::parallel);

/// avg ρ(g).
template <class S>
Mat<S> fixed_projector(const Representation<S>& rep, kernels::Backend backend = kernels::Backend::parallel);

/// Basis of Hom_G(V, W) as dim W × dim V matrices, taken from the image of the
/// averaging operator T ↦ avg ρ_W(g) T ρ_V(g)⁻¹ applied to all elementary maps.
template <class S>
std::vector<Mat<S>> hom_G_basis(const Representation<S>& v, const Representation<S>& w,
                                kernels::Backend backend = kernels::Backend::parallel);

struct EndoInfo {
  EndoType type = EndoType::R;
  int dim = 1;
};

/// Classifies End_G(V) by its real dimension. Throws ReducibleRepresentation
/// when V is not irreducible.
template <class S>
EndoInfo endo_type(const Representation<S>& rep);

template <class S>
struct IsotypicPiece {
  Irrep<S> irrep;
  Mat<S> projector;
  int rank = 0;
};

template <class S>
struct IsotypicDecomposition {
  Mat<S> fixed;
  int fixed_rank = 0;
  std::vector<IsotypicPiece<S>> pieces;  ///< nonzero components only
  bool complete = false;                 ///< fixed + Σ pieces = I
};

template <class S>
IsotypicDecomposition<S> decompose(const Representation<S>& rep, kernels::Backend backend = kernels::Backend::parallel);

}  // namespace equitrans::reps

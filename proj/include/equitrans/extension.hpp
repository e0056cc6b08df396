#pragma once

#include "equitrans/bundles.hpp"
#include "equitrans/sampling.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace equitrans::bundles {

/// Piecewise section of a float bundle.
///
/// Vertex values live in vertex charts. A simplex without patches on itself or
/// any face is interpolated affinely in the chart of its first vertex. A
/// patched simplex carries a center (same chart) and is evaluated as a cone:
/// the point is pushed radially from the barycenter onto the boundary, the
/// face is evaluated there, and inside the half-size collar the value is
/// blended linearly towards the center. Unpatched simplices with patched faces
/// use the vertex average as center.
struct Section {
  std::vector<std::optional<VecD>> vertex;
  std::map<Simplex, VecD> centers;

  static Section undefined(int vertex_count);
  [[nodiscard]] bool defined_at(int v) const { return vertex[static_cast<std::size_t>(v)].has_value(); }
  [[nodiscard]] bool defined_on(const Simplex& s) const;
  [[nodiscard]] bool global() const;
};

/// Value at barycentric coordinates `bary` of `simplex`, in the chart of simplex[0].
VecD evaluate(const GBundle<double>& bundle, const Section& section, const Simplex& simplex, const std::vector<double>& bary);

/// The λ-isotypic part of a bundle fiber seen through the pure subspace
/// K = {T e₁ : T ∈ Hom_G(V^λ, E)}. Every nonzero s ∈ K has a unique
/// equivariant T_s with T_s e₁ = s, and the G-span of s is the copy T_s(V^λ).
/// K is preserved by transitions and by affine interpolation.
class PureSpace {
 public:
  PureSpace(const GBundle<double>& bundle, const std::string& label);

  [[nodiscard]] const reps::Irrep<double>& irrep() const { return irrep_; }
  [[nodiscard]] int dim_v() const { return irrep_.dim_v; }
  /// Multiplicity of V^λ in the fiber.
  [[nodiscard]] int copies() const { return copies_; }
  [[nodiscard]] const MatD& projector() const { return projector_; }
  [[nodiscard]] const MatD& basis() const { return basis_; }
  [[nodiscard]] bool in_component(const VecD& s) const;
  [[nodiscard]] bool is_pure(const VecD& s) const;
  [[nodiscard]] MatD equivariant_map(const VecD& s) const;
  /// Columns T_s(V^λ) for every s, each block scaled to an isometry.
  [[nodiscard]] MatD span(const std::vector<VecD>& values) const;
  /// Smallest singular value of span(values); 1 for a single nonzero vector.
  [[nodiscard]] double independence(const std::vector<VecD>& values) const;
  [[nodiscard]] VecD random_pure(sampling::Rng& rng) const;

 private:
  reps::Irrep<double> irrep_;
  int copies_ = 0;
  MatD projector_;
  std::vector<MatD> maps_;  // Hom_G(V^λ, E) basis
  MatD basis_;              // columns maps_[j] e₁
  Eigen::ColPivHouseholderQR<MatD> coords_;
};

/// Extends a nowhere-vanishing section from the boundary of `simplex` over
/// the simplex. The λ-component must contain at least dim(simplex) + 1 copies
/// of V^λ. The result keeps the boundary data and adds at most a center on
/// `simplex`, chosen so the sampled minimum norm is at least half the
/// boundary minimum.
Section extend_nonvanishing_section(const GBundle<double>& bundle, const Simplex& simplex, const Section& boundary,
                                    const std::string& label, std::uint64_t seed);

/// Pure sections whose G-spans form a trivial invariant subbundle.
struct Frame {
  std::string label;
  std::vector<Section> sections;
};

/// Extends a frame given on `simplex` (vertex values, optional patches on its
/// faces) to the whole base, keeping the G-spans independent at every sampled
/// point. Needs copies ≥ rank + dim(base) + 1 whenever some vertex is
/// undefined; a frame that is already global is returned unchanged.
Frame extend_trivial_subbundle(const GBundle<double>& bundle, const Simplex& simplex, const Frame& frame, std::uint64_t seed);

/// Independence of a frame at barycentric `bary` of `simplex`.
double frame_quality(const GBundle<double>& bundle, const PureSpace& pure, const Frame& frame, const Simplex& simplex,
                     const std::vector<double>& bary);

/// Columns spanning the frame's subbundle at vertex v (vertex chart).
MatD frame_span_at(const PureSpace& pure, const Frame& frame, int v);

/// Builds a trivial invariant subbundle W̄ ⊆ E^λ with im D_v + W̄_v = E^λ at
/// every vertex. `images[v]` holds columns spanning im D^λ at v (vertex chart).
Frame stabilize_cokernel(const GBundle<double>& bundle, const std::string& label, const std::vector<MatD>& images,
                         std::uint64_t seed);

}  // namespace equitrans::bundles

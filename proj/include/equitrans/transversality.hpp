#pragma once

#include "equitrans/extension.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace equitrans::transversality {

/// One isotypic block D^λ: N^λ → E^λ in the column bases of the projectors.
template <class S>
struct LambdaBlock {
  std::string label;
  int dim_v = 1;
  int endo_dim = 1;
  int n = 0;  ///< copies of V^λ in the domain
  int m = 0;  ///< copies of V^λ in the codomain
  Mat<S> block;
  Mat<S> domain_basis;
  Mat<S> codomain_basis;
};

template <class S>
struct LinearizationSplit {
  Mat<S> fixed_block;  ///< D^G: T M^G → E^G
  Mat<S> fixed_domain_basis;
  Mat<S> fixed_codomain_basis;
  std::vector<LambdaBlock<S>> blocks;
  double cross_norm = 0.0;  ///< largest entry of any off-isotypic part

  /// dim M^G − rank E^G.
  [[nodiscard]] int fixed_index() const { return static_cast<int>(fixed_block.cols() - fixed_block.rows()); }
};

/// Splits an equivariant map D: N → E into its fixed and isotypic blocks.
/// Throws InvalidInput naming the worst commutator ‖Dρ_N(g) − ρ_E(g)D‖ and g
/// when D is not equivariant.
template <class S>
LinearizationSplit<S> split_linearization(const reps::Representation<S>& domain, const reps::Representation<S>& codomain,
                                          const Mat<S>& d);

struct IndexPair {
  int real = 0;
  int units = 0;
};

/// Index of D^λ from its shape: ((n − m)·dim V, n − m).
template <class S>
IndexPair lambda_index(const Mat<S>& block, int dim_v);

struct Codimension {
  int codim = 0;
  int singular_codim = 0;
};

/// Real codimension of the non-surjective maps (End-unit sizes n → m) and of
/// their singular locus; 0 when n < m.
Codimension singular_codim(int n, int m, int endo_dim);

/// Dimension of the m × n matrices over a d-dimensional division ring with
/// rank exactly r, counted by fibering over the Grassmannian of row spaces.
long long rank_stratum_dimension(int n, int m, int r, int endo_dim);

/// Same dimension measured as the rank of the Jacobian of (A, B) ↦ A·B at a
/// random point (A: m × r, B: r × n over the division ring).
int rank_stratum_dimension_numeric(int n, int m, int r, int endo_dim, sampling::Rng& rng);

/// Index data needed by the pointwise condition at one vertex.
struct LambdaIndex {
  std::string label;
  int dim_v = 1;
  int endo_dim = 1;
  int real_index = 0;
  int codomain_rank = 0;  ///< real rank of E^λ
};

struct PointIndices {
  int ind_sG = 0;
  std::vector<LambdaIndex> lambdas;
};

template <class S>
PointIndices indices_of(const LinearizationSplit<S>& split);

/// ind s^G < (ind D^λ / dim V^λ + 1)·d, evaluated in integers.
bool condition_holds(int ind_sG, const LambdaIndex& lambda);

/// One boolean per λ; components with rank E^λ = 0 pass vacuously.
std::vector<bool> check_pointwise_condition(const PointIndices& indices);

/// ind D^λ + 2 > ind s^G for every weight. Throws InvalidInput off the circle.
bool s1_condition(const reps::GroupPtr& group, const PointIndices& indices);

/// Rank over ℝ, ℂ or ℍ of a matrix whose entries are stored as consecutive
/// real columns (1, 2 or 4 per entry). ℍ uses the complex 2×2 embedding.
int division_ring_rank(const MatD& packed, reps::EndoType type, double tol = 1e-9);

struct ObstructionCertificate {
  int vertex = 0;
  std::string lambda;
  int n = 0;
  int m = 0;
  int d = 0;
  int ind_sG = 0;
  int rhs = 0;  ///< (n − m + 1)·d; the condition needs ind_sG·dim V < rhs·dim V
};

/// Obstruction carrying the failing stratum data.
class ConditionViolated : public Obstruction {
 public:
  explicit ConditionViolated(std::vector<ObstructionCertificate> certs);
  [[nodiscard]] const std::vector<ObstructionCertificate>& certificates() const { return certs_; }

 private:
  std::vector<ObstructionCertificate> certs_;
};

/// Local model near the fixed locus: equivariant bundles N (the tangent space
/// along M^G) and E over a triangulated fixed locus, with the linearization of
/// s at every vertex. Zero-set vertices are where s vanishes.
struct FixedLocusModel {
  bundles::GBundle<double> tangent;
  bundles::GBundle<double> obstruction;
  std::vector<MatD> linearization;  ///< per vertex, rank E × rank N, vertex charts
  std::vector<int> zeros;
  std::optional<std::vector<int>> support;  ///< defaults to the zero set
};

struct VertexReport {
  int vertex = 0;
  bool fixed_surjective_before = false;
  double fixed_min_sv = 0.0;  ///< after perturbation
  std::vector<std::string> labels;
  std::vector<bool> surjective_before;
  std::vector<double> min_sv;  ///< after perturbation, per label
  std::vector<bool> condition;
};

struct TransversalityReport {
  std::vector<VertexReport> vertices;
  std::vector<ObstructionCertificate> certificates;
  double equivariance_residual = 0.0;
  bool transverse = false;
};

/// γ as its derivative along the zero set; γ itself vanishes at every vertex.
struct Perturbation {
  std::vector<MatD> theta;  ///< per vertex, zero outside the support
  [[nodiscard]] bool zero() const;
};

struct PerturbationResult {
  Perturbation gamma;
  TransversalityReport report;
};

/// Surjectivity and condition report without perturbing.
TransversalityReport check_transversality(const FixedLocusModel& model);

/// Makes every block of D(s + γ) surjective at the zero-set vertices:
/// D^G by a least-norm sampled perturbation, each D^λ through a stabilizing
/// frame W̄ and a map τ ∈ Hom_G(D⁻¹W̄, W̄). Throws ConditionViolated when the
/// pointwise condition fails at a zero.
PerturbationResult construct_equivariant_perturbation(const FixedLocusModel& model, std::uint64_t seed);

/// max_g ‖θ ρ_N(g) − ρ_E(g) θ‖ over all vertices.
double equivariance_residual(const FixedLocusModel& model, const Perturbation& gamma);

}  // namespace equitrans::transversality

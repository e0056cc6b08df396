#pragma once

#include "equitrans/errors.hpp"
#include "equitrans/scalar.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace equitrans::floer {

using LatticePoint = std::vector<int>;

/// Free abelian group ℤ^k with linear ω (rational) and c₁ (integer), given on the basis.
struct HomologyLattice {
  std::vector<Rational> omega;
  std::vector<int> c1;

  [[nodiscard]] int rank() const { return static_cast<int>(omega.size()); }
  [[nodiscard]] LatticePoint zero() const { return LatticePoint(omega.size(), 0); }
  [[nodiscard]] Rational omega_of(const LatticePoint& a) const;
  [[nodiscard]] int c1_of(const LatticePoint& a) const;
  /// Grading of q^A, 2c₁(A).
  [[nodiscard]] int degree(const LatticePoint& a) const { return 2 * c1_of(a); }
  /// Throws InvalidInput on mismatched sizes or a point of the wrong rank.
  void validate() const;
  void check_point(const LatticePoint& a) const;
};

/// Finite Novikov sum Σ f_A q^A; zero coefficients are never stored.
class Novikov {
 public:
  Novikov() = default;
  static Novikov monomial(LatticePoint a, const Rational& coeff = 1);

  [[nodiscard]] const std::map<LatticePoint, Rational>& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  void add_term(const LatticePoint& a, const Rational& coeff);

  Novikov& operator+=(const Novikov& other);
  Novikov& operator-=(const Novikov& other);
  friend Novikov operator+(Novikov a, const Novikov& b) { return a += b; }
  friend Novikov operator-(Novikov a, const Novikov& b) { return a -= b; }
  friend Novikov operator-(const Novikov& a);
  friend Novikov operator*(const Rational& c, const Novikov& a);
  friend bool operator==(const Novikov&, const Novikov&) = default;

 private:
  std::map<LatticePoint, Rational> terms_;
};

/// Drops every term with ω(A) > cutoff.
Novikov truncate(const Novikov& a, const HomologyLattice& lattice, const Rational& cutoff);
/// Product; truncated when a cutoff is given.
Novikov multiply(const Novikov& a, const Novikov& b, const HomologyLattice& lattice,
                 const std::optional<Rational>& cutoff = std::nullopt);
/// Smallest ω among the terms; nullopt for 0.
std::optional<Rational> valuation(const Novikov& a, const HomologyLattice& lattice);
/// b with a·b ≡ 1 modulo terms of ω > cutoff. Throws InvalidInput for 0 and
/// Indeterminate when the lowest-ω part of a is not a single monomial or lies above the cutoff.
Novikov invert_truncated(const Novikov& a, const HomologyLattice& lattice, const Rational& cutoff);
/// "3 q^[1] - 1/2" style; "0" for zero.
std::string to_string(const Novikov& a);

struct Generator {
  std::string name;
  int index = 0;  ///< Morse index
  Rational value;  ///< critical value H(x)
};

struct GeneratorSet {
  int half_dim = 1;
  std::vector<Generator> gens;

  [[nodiscard]] int size() const { return static_cast<int>(gens.size()); }
  /// |x| = 2n − ind x.
  [[nodiscard]] int morse_grading(int i) const { return 2 * half_dim - gens[i].index; }
  /// μ_CZ(x, 0) = n − ind x.
  [[nodiscard]] int conley_zehnder(int i) const { return half_dim - gens[i].index; }
  /// Throws InvalidInput unless ind ∈ [0, 2n] and the values are self-indexing.
  void validate() const;
  [[nodiscard]] int find(const std::string& name) const;
};

/// Key (x, y, A) of a moduli space of trajectories from y to x in class A.
struct CountKey {
  int x = 0;
  int y = 0;
  LatticePoint a;
  friend auto operator<=>(const CountKey&, const CountKey&) = default;
};

using ModuliCountTable = std::map<CountKey, long long>;
using MorseCounts = std::map<std::pair<int, int>, long long>;

struct FloerComplex {
  HomologyLattice lattice;
  GeneratorSet generators;
  ModuliCountTable counts;

  /// ind y − ind x + 2c₁(A) − 1.
  [[nodiscard]] int moduli_index(const CountKey& key) const;
  /// Shapes, generator references and the energy condition H(y) − H(x) + ω(A) > 0.
  void validate() const;
};

/// Dense matrix of Novikov entries; δ(x, y) is the coefficient of x in δy.
struct NovikovMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Novikov> data;

  NovikovMatrix() = default;
  NovikovMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c) {}
  Novikov& operator()(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
  const Novikov& operator()(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }
};

/// δy = Σ count(x, y, A)·q^A·x. Throws InvalidInput on a nonzero count whose
/// moduli index is not 0.
NovikovMatrix build_differential(const FloerComplex& complex);

NovikovMatrix multiply(const NovikovMatrix& a, const NovikovMatrix& b, const HomologyLattice& lattice,
                       const std::optional<Rational>& cutoff = std::nullopt);

struct SquareCheck {
  bool pass = true;
  int x = -1;  ///< first failing pair (row-major), −1 when passing
  int z = -1;
  Novikov coefficient;
};

/// δ∘δ = 0 exactly (or below the cutoff when one is given).
SquareCheck check_d_squared(const NovikovMatrix& delta, const HomologyLattice& lattice,
                            const std::optional<Rational>& cutoff = std::nullopt);

/// One boundary point type of a one-dimensional moduli space (x, z, A): the
/// breaking into (x, y, A₁) then (y, z, A₂), with its declared signed count.
struct BrokenStratum {
  CountKey target;
  CountKey outer;  ///< (x, y, A₁)
  CountKey inner;  ///< (y, z, A₂)
  long long declared = 0;
};

struct CoherenceReport {
  bool pass = true;
  int strata_checked = 0;
  std::vector<std::string> failures;
};

/// Checks every labeled stratum (class bookkeeping, the product rule, index 1
/// targets) and that the labels of each target add up to its δ² coefficient.
/// Throws InvalidInput when a labeled target misses one of its breakings.
CoherenceReport coherence_validate(const FloerComplex& complex, const std::vector<BrokenStratum>& strata);

/// S¹-autonomous reduction: index-0 entries with A ≠ 0 are dropped and the
/// A = 0 entries replaced by the Morse counts.
ModuliCountTable autonomous_reduce(const FloerComplex& complex, const MorseCounts& morse);

/// Entry-by-entry δ = δ_M ⊗ Λ.
bool equals_morse_tensor(const NovikovMatrix& delta, const MorseCounts& morse, const HomologyLattice& lattice);

struct CohomologyRanks {
  int modulus = 0;  ///< gradings are taken mod this (2·gcd c₁; 0 for ℤ)
  std::map<int, int> ranks;  ///< Morse grading class → dim_Λ H
  int differential_rank = 0;

  [[nodiscard]] int total() const;
};

/// Λ-ranks of H(C, δ) by elimination that always pivots on an entry of least
/// ω-valuation; inverses are truncated at the cutoff. Throws Indeterminate
/// naming the entry when a pivot cannot be certified as a unit.
CohomologyRanks cohomology_rank(const FloerComplex& complex, const Rational& cutoff);

/// Rank over ℚ of δ after specializing q^A ↦ Π t_i^{A_i}. An oracle for tests.
int specialized_rank(const NovikovMatrix& delta, const std::vector<Rational>& t);

struct SyntheticComplex {
  FloerComplex complex;
  std::vector<BrokenStratum> strata;
};

/// Coherent table: cancelling pairs (some carrying q^A) plus one square whose
/// two breakings cancel, conjugated by a random unipotent integer change of
/// basis within each Morse index, with every breaking labeled.
SyntheticComplex make_coherent_complex(std::uint64_t seed, int half_dim = 2, int pairs = 3, int extra = 2);

/// Self-indexing Morse models: the perfect "S2", "T2", "CP2", "S2xS2" and
/// "S2-pair" (two minima, one saddle, one maximum). Each count table carries
/// the Morse counts plus, where the grading allows, spurious q^A entries.
struct ToyModel {
  std::string name;
  bool perfect = true;
  FloerComplex complex;
  MorseCounts morse;
  std::map<int, int> betti;  ///< by Morse grading 2n − ind
};
ToyModel toy_model(const std::string& name);
std::vector<std::string> toy_model_names();

}  // namespace equitrans::floer

#pragma once

#include "equitrans/scalar.hpp"

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace equitrans::reps {

/// Realization of one nontrivial real irreducible of a preset group, one
/// matrix per group element. `exact` is empty when the character is irrational.
struct IrrepData {
  std::string label;
  int dim = 0;
  std::vector<MatQ> exact;
  std::vector<MatD> floating;
};

/// Finite group given by its multiplication table.
class FiniteGroup {
 public:
  /// Validates closure, associativity, identity and inverses.
  static FiniteGroup from_table(std::vector<std::vector<int>> table, std::string name = "custom");

  static FiniteGroup cyclic(int n);
  /// Symmetry group of the regular n-gon, order 2n.
  static FiniteGroup dihedral(int n);
  /// S_n for n ≤ 4 (irrep library is complete for these).
  static FiniteGroup symmetric(int n);
  static FiniteGroup quaternion();

  [[nodiscard]] int order() const { return static_cast<int>(table_.size()); }
  [[nodiscard]] int multiply(int a, int b) const { return table_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
  [[nodiscard]] int identity() const { return identity_; }
  [[nodiscard]] int inverse(int g) const { return inverses_[static_cast<std::size_t>(g)]; }
  [[nodiscard]] const std::vector<int>& generators() const { return generators_; }
  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] const std::vector<std::vector<int>>& table() const { return table_; }

  /// Nontrivial real irreducibles; empty for custom groups unless supplied.
  [[nodiscard]] const std::vector<IrrepData>& irreps() const { return irreps_; }
  [[nodiscard]] bool has_irrep_library() const { return has_library_; }
  /// True when every library irrep has a rational realization.
  [[nodiscard]] bool supports_exact() const;

  /// Copy with a user-supplied irrep library (custom groups).
  [[nodiscard]] FiniteGroup with_irreps(std::vector<IrrepData> irreps) const;

  /// Elements generated by `gens` (closure under multiplication).
  [[nodiscard]] std::vector<int> closure(const std::vector<int>& gens) const;

 private:
  FiniteGroup() = default;
  void finish();

  std::string name_;
  std::vector<std::vector<int>> table_;
  std::vector<int> inverses_;
  std::vector<int> generators_;
  int identity_ = 0;
  std::vector<IrrepData> irreps_;
  bool has_library_ = false;
};

/// The circle, sampled at angles 2πk/N. The samples form the cyclic group Z_N,
/// so the group law is exact on the sample set.
class CircleGroup {
 public:
  explicit CircleGroup(int quadrature_order);
  [[nodiscard]] int quadrature_order() const { return n_; }
  [[nodiscard]] double angle(int k) const;
  /// Largest weight for which every averaging used by the library is exact.
  [[nodiscard]] int max_weight() const { return (n_ - 1) / 4; }

 private:
  int n_;
};

/// Either model, behind one sampling interface: element k has weight 1/count().
class Group {
 public:
  explicit Group(FiniteGroup g) : model_(std::move(g)) {}
  explicit Group(CircleGroup c) : model_(c) {}

  [[nodiscard]] bool is_circle() const { return std::holds_alternative<CircleGroup>(model_); }
  [[nodiscard]] const FiniteGroup& finite() const;
  [[nodiscard]] const CircleGroup& circle() const;

  [[nodiscard]] int count() const;
  [[nodiscard]] int multiply(int a, int b) const;
  [[nodiscard]] int inverse(int g) const;
  [[nodiscard]] int identity() const;
  [[nodiscard]] std::string name() const;
  /// Elements whose images determine a representation.
  [[nodiscard]] std::vector<int> generators() const;

 private:
  std::variant<FiniteGroup, CircleGroup> model_;
};

using GroupPtr = std::shared_ptr<const Group>;

/// Orthonormal float realization of a rational representation, obtained by
/// conjugating with the Cholesky factor of the averaged Gram matrix.
std::vector<MatD> orthonormalize_action(const std::vector<MatQ>& action);

GroupPtr make_group(FiniteGroup g);
GroupPtr make_group(CircleGroup c);

/// Named presets: "Z_n", "D_n", "S_3", "S_4", "Q_8", "trivial".
GroupPtr preset_group(const std::string& name);

}  // namespace equitrans::reps

#pragma once

#include <set>
#include <vector>

namespace equitrans::bundles {

/// Sorted list of distinct vertex indices.
using Simplex = std::vector<int>;

/// Finite simplicial complex, closed under faces.
class SimplicialBase {
 public:
  /// `simplices` may list only maximal simplices; faces are added.
  SimplicialBase(int vertex_count, const std::vector<Simplex>& simplices);

  /// Path 0 - 1 - ... - edges.
  static SimplicialBase interval(int edges);
  /// Cycle on `vertices` ≥ 3 vertices.
  static SimplicialBase circle(int vertices);
  /// The standard n-simplex with its faces.
  static SimplicialBase standard_simplex(int n);
  /// Disjoint points.
  static SimplicialBase points(int count);

  [[nodiscard]] int vertex_count() const { return vertex_count_; }
  [[nodiscard]] int dimension() const { return dimension_; }
  /// All simplices ordered by dimension, then lexicographically.
  [[nodiscard]] const std::vector<Simplex>& simplices() const { return simplices_; }
  [[nodiscard]] std::vector<Simplex> of_dimension(int d) const;
  /// Simplices that are not a proper face of another simplex.
  [[nodiscard]] std::vector<Simplex> maximal_simplices() const;
  [[nodiscard]] bool contains(const Simplex& s) const { return lookup_.count(s) > 0; }
  [[nodiscard]] int component(int v) const { return component_[static_cast<std::size_t>(v)]; }
  [[nodiscard]] int component_count() const { return component_count_; }

 private:
  int vertex_count_ = 0;
  int dimension_ = 0;
  std::vector<Simplex> simplices_;
  std::set<Simplex> lookup_;
  std::vector<int> component_;
  int component_count_ = 0;
};

/// Proper faces of dimension ≥ 0.
std::vector<Simplex> proper_faces(const Simplex& s);

/// Barycentric sample points of an n-simplex: the lattice with denominator k
/// for the smallest k giving at least max(10^n, 100) points (one point for n = 0).
std::vector<std::vector<double>> sample_grid(int n);

}  // namespace equitrans::bundles

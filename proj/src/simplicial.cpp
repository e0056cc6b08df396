#include "equitrans/simplicial.hpp"

#include "equitrans/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace equitrans::bundles {

namespace {

void add_with_faces(const Simplex& s, std::set<Simplex>& out) {
  if (s.empty() || !out.insert(s).second) return;
  if (s.size() == 1) return;
  for (std::size_t drop = 0; drop < s.size(); ++drop) {
    Simplex f;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (i != drop) f.push_back(s[i]);
    add_with_faces(f, out);
  }
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void compositions(int parts, int total, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (parts == 1) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int first = total; first >= 0; --first) {
    cur.push_back(first);
    compositions(parts - 1, total - first, cur, out);
    cur.pop_back();
  }
}

}  // namespace

SimplicialBase::SimplicialBase(int vertex_count, const std::vector<Simplex>& simplices) : vertex_count_(vertex_count) {
  if (vertex_count < 1) throw InvalidInput("simplicial base needs at least one vertex");
  std::set<Simplex> all;
  for (int v = 0; v < vertex_count; ++v) all.insert(Simplex{v});
  for (Simplex s : simplices) {
    if (s.empty()) throw InvalidInput("empty simplex");
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw InvalidInput("simplex with repeated vertices");
    if (s.front() < 0 || s.back() >= vertex_count) throw InvalidInput("simplex vertex out of range");
    add_with_faces(s, all);
  }
  simplices_.assign(all.begin(), all.end());
  std::stable_sort(simplices_.begin(), simplices_.end(), [](const Simplex& a, const Simplex& b) { return a.size() < b.size(); });
  lookup_ = std::move(all);
  dimension_ = static_cast<int>(simplices_.back().size()) - 1;

  // Union-find over edges.
  std::vector<int> parent(static_cast<std::size_t>(vertex_count));
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) v = parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
    return v;
  };
  for (const auto& s : simplices_)
    if (s.size() == 2) parent[static_cast<std::size_t>(find(s[0]))] = find(s[1]);
  component_.assign(static_cast<std::size_t>(vertex_count), -1);
  std::vector<int> label(static_cast<std::size_t>(vertex_count), -1);
  for (int v = 0; v < vertex_count; ++v) {
    const int r = find(v);
    if (label[static_cast<std::size_t>(r)] < 0) label[static_cast<std::size_t>(r)] = component_count_++;
    component_[static_cast<std::size_t>(v)] = label[static_cast<std::size_t>(r)];
  }
}

SimplicialBase SimplicialBase::interval(int edges) {
  if (edges < 1) throw InvalidInput("interval needs at least one edge");
  std::vector<Simplex> s;
  for (int i = 0; i < edges; ++i) s.push_back({i, i + 1});
  return SimplicialBase(edges + 1, s);
}

SimplicialBase SimplicialBase::circle(int vertices) {
  if (vertices < 3) throw InvalidInput("triangulated circle needs at least three vertices");
  std::vector<Simplex> s;
  for (int i = 0; i < vertices; ++i) s.push_back({i, (i + 1) % vertices});
  return SimplicialBase(vertices, s);
}

SimplicialBase SimplicialBase::standard_simplex(int n) {
  Simplex s(static_cast<std::size_t>(n + 1));
  std::iota(s.begin(), s.end(), 0);
  return SimplicialBase(n + 1, {s});
}

SimplicialBase SimplicialBase::points(int count) { return SimplicialBase(count, {}); }

std::vector<Simplex> SimplicialBase::of_dimension(int d) const {
  std::vector<Simplex> out;
  for (const auto& s : simplices_)
    if (static_cast<int>(s.size()) == d + 1) out.push_back(s);
  return out;
}

std::vector<Simplex> SimplicialBase::maximal_simplices() const {
  std::vector<Simplex> out;
  for (const auto& s : simplices_) {
    bool maximal = true;
    for (const auto& t : simplices_) {
      if (t.size() != s.size() + 1) continue;
      if (std::includes(t.begin(), t.end(), s.begin(), s.end())) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.push_back(s);
  }
  return out;
}

std::vector<Simplex> proper_faces(const Simplex& s) {
  std::set<Simplex> all;
  add_with_faces(s, all);
  all.erase(s);
  std::vector<Simplex> out(all.begin(), all.end());
  std::stable_sort(out.begin(), out.end(), [](const Simplex& a, const Simplex& b) { return a.size() < b.size(); });
  return out;
}

std::vector<std::vector<double>> sample_grid(int n) {
  if (n == 0) return {{1.0}};
  const double wanted = std::max(std::pow(10.0, n), 100.0);
  int k = 1;
  while (binomial(k + n, n) < wanted) ++k;
  std::vector<std::vector<int>> lattice;
  std::vector<int> cur;
  compositions(n + 1, k, cur, lattice);
  std::vector<std::vector<double>> out;
  out.reserve(lattice.size());
  for (const auto& c : lattice) {
    std::vector<double> b;
    for (int x : c) b.push_back(static_cast<double>(x) / k);
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace equitrans::bundles

#include "equitrans/groupoid.hpp"

#include <functional>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <tuple>

namespace equitrans::groupoid {

namespace {

bool is_permutation_of(std::vector<int> v, int n) {
  if (static_cast<int>(v.size()) != n) return false;
  std::ranges::sort(v);
  for (int i = 0; i < n; ++i)
    if (v[i] != i) return false;
  return true;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); }
  void join(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

FiniteGroupoid::FiniteGroupoid(int objects, std::vector<Morphism> morphisms, std::vector<int> units, std::vector<int> inverses,
                               std::vector<int> composition)
    : objects_(objects),
      morphisms_(std::move(morphisms)),
      units_(std::move(units)),
      inverses_(std::move(inverses)),
      composition_(std::move(composition)) {
  const auto m = morphisms_.size();
  if (objects_ < 0 || units_.size() != static_cast<std::size_t>(objects_) || inverses_.size() != m ||
      composition_.size() != m * m)
    throw InvalidInput("groupoid structure maps have inconsistent sizes");
  for (const auto& f : morphisms_)
    if (f.source < 0 || f.target < 0 || f.source >= objects_ || f.target >= objects_)
      throw InvalidInput("morphism endpoint out of range");
}

int FiniteGroupoid::compose(int psi, int phi) const {
  return composition_[static_cast<std::size_t>(psi) * morphisms_.size() + static_cast<std::size_t>(phi)];
}

std::vector<int> FiniteGroupoid::between(int x, int y) const {
  std::vector<int> out;
  for (int f = 0; f < morphism_count(); ++f)
    if (morphisms_[f].source == x && morphisms_[f].target == y) out.push_back(f);
  return out;
}

std::vector<int> FiniteGroupoid::components() const {
  UnionFind uf(objects_);
  for (const auto& f : morphisms_) uf.join(f.source, f.target);
  std::vector<int> out(objects_);
  for (int x = 0; x < objects_; ++x) out[x] = uf.find(x);
  return out;
}

void FiniteGroupoid::validate() const {
  const int m = morphism_count();
  auto in_range = [m](int f) { return f >= 0 && f < m; };
  for (int x = 0; x < objects_; ++x) {
    const int u = units_[x];
    if (!in_range(u) || morphisms_[u].source != x || morphisms_[u].target != x)
      throw InvalidInput("unit of object " + std::to_string(x) + " is not an endomorphism of it");
  }
  for (int psi = 0; psi < m; ++psi)
    for (int phi = 0; phi < m; ++phi) {
      const int c = compose(psi, phi);
      const bool composable = morphisms_[phi].target == morphisms_[psi].source;
      if (composable != (c >= 0))
        throw InvalidInput("composition of " + std::to_string(psi) + " after " + std::to_string(phi) +
                           (composable ? " is missing" : " is defined for non-composable morphisms"));
      if (!composable) continue;
      if (!in_range(c) || morphisms_[c].source != morphisms_[phi].source || morphisms_[c].target != morphisms_[psi].target)
        throw InvalidInput("composite of " + std::to_string(psi) + " after " + std::to_string(phi) + " has wrong endpoints");
    }
  for (int f = 0; f < m; ++f) {
    const auto& mf = morphisms_[f];
    if (compose(f, units_[mf.source]) != f || compose(units_[mf.target], f) != f)
      throw InvalidInput("unit law fails at morphism " + std::to_string(f));
    const int inv = inverses_[f];
    if (!in_range(inv) || compose(inv, f) != units_[mf.source] || compose(f, inv) != units_[mf.target])
      throw InvalidInput("morphism " + std::to_string(f) + " has no valid inverse");
  }
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      const int ab = compose(a, b);
      if (ab < 0) continue;
      for (int c = 0; c < m; ++c) {
        const int bc = compose(b, c);
        if (bc < 0) continue;
        if (compose(ab, c) != compose(a, bc))
          throw InvalidInput("composition is not associative at (" + std::to_string(a) + ", " + std::to_string(b) + ", " +
                             std::to_string(c) + ")");
      }
    }
}

ActionGroupoid make_translation_groupoid(const reps::FiniteGroup& group, std::vector<std::vector<int>> perm) {
  const int order = group.order();
  if (static_cast<int>(perm.size()) != order || perm.empty()) throw InvalidInput("need one permutation per group element");
  const int n = static_cast<int>(perm.front().size());
  for (const auto& p : perm)
    if (!is_permutation_of(p, n)) throw InvalidInput("action images must be permutations of the object set");
  for (int x = 0; x < n; ++x)
    if (perm[group.identity()][x] != x) throw InvalidInput("the identity does not act trivially");
  for (int g = 0; g < order; ++g)
    for (int h = 0; h < order; ++h)
      for (int x = 0; x < n; ++x)
        if (perm[group.multiply(g, h)][x] != perm[g][perm[h][x]])
          throw InvalidInput("action law (gh)·x = g·(h·x) fails for g = " + std::to_string(g) + ", h = " + std::to_string(h));

  const int m = order * n;
  std::vector<Morphism> mor(m);
  std::vector<int> units(n), inverses(m), comp(static_cast<std::size_t>(m) * m, -1);
  for (int g = 0; g < order; ++g)
    for (int x = 0; x < n; ++x) {
      const int f = g * n + x;
      mor[f] = {x, perm[g][x]};
      inverses[f] = group.inverse(g) * n + perm[g][x];
    }
  for (int x = 0; x < n; ++x) units[x] = group.identity() * n + x;
  for (int h = 0; h < order; ++h)
    for (int g = 0; g < order; ++g)
      for (int x = 0; x < n; ++x) {
        // (h, g·x) ∘ (g, x) = (hg, x)
        const int phi = g * n + x, psi = h * n + perm[g][x];
        comp[static_cast<std::size_t>(psi) * m + phi] = group.multiply(h, g) * n + x;
      }
  ActionGroupoid out{group, std::move(perm), FiniteGroupoid(n, std::move(mor), std::move(units), std::move(inverses), std::move(comp))};
  return out;
}

std::vector<int> orbit_set(const FiniteGroupoid& g, int x, const std::vector<int>& u) {
  const std::set<int> targets(u.begin(), u.end());
  std::vector<int> out;
  for (int f = 0; f < g.morphism_count(); ++f)
    if (g.morphism(f).source == x && targets.contains(g.morphism(f).target)) out.push_back(f);
  return out;
}

PropernessReport properness_check(const FiniteGroupoid& g, const std::map<int, std::vector<int>>& uniformizers) {
  PropernessReport report;
  for (const auto& [x, u] : uniformizers) {
    if (std::ranges::find(u, x) == u.end())
      throw InvalidInput("uniformizer of object " + std::to_string(x) + " does not contain it");
    const int stab = static_cast<int>(g.stab(x).size());
    for (int y : u) {
      ++report.checked;
      const int size = static_cast<int>(orbit_set(g, y, u).size());
      if (size != stab) {
        report.pass = false;
        report.failures.push_back({x, y, size, stab});
      }
    }
  }
  return report;
}

LocalAction translation_local_action(const ActionGroupoid& g, int x, std::vector<int> neighborhood) {
  LocalAction out{x, std::move(neighborhood), {}};
  const std::set<int> nb(out.neighborhood.begin(), out.neighborhood.end());
  for (int phi : g.groupoid.stab(x)) {
    std::vector<int> img;
    for (int y : out.neighborhood) {
      const int z = g.perm[g.element(phi)][y];
      if (!nb.contains(z))
        throw InvalidInput("neighborhood of object " + std::to_string(x) + " is not invariant under its isotropy");
      img.push_back(z);
    }
    out.image.emplace(phi, std::move(img));
  }
  return out;
}

namespace {

void validate_local_action(const FiniteGroupoid& g, const LocalAction& a) {
  const auto stab = g.stab(a.object);
  if (a.image.size() != stab.size()) throw InvalidInput("local action must list every isotropy element exactly once");
  const std::set<int> nb(a.neighborhood.begin(), a.neighborhood.end());
  for (int phi : stab) {
    const auto it = a.image.find(phi);
    if (it == a.image.end()) throw InvalidInput("local action misses isotropy element " + std::to_string(phi));
    const std::set<int> img(it->second.begin(), it->second.end());
    if (it->second.size() != a.neighborhood.size() || img != nb)
      throw InvalidInput("probe set of object " + std::to_string(a.object) + " is not invariant under element " +
                         std::to_string(phi));
  }
}

}  // namespace

EffectivePart effective_part(const FiniteGroupoid& g, const LocalAction& action) {
  validate_local_action(g, action);
  EffectivePart out{action.object, g.stab(action.object), {}};
  for (const auto& [phi, img] : action.image)
    if (img == action.neighborhood) out.kernel.push_back(phi);
  return out;
}

void GlobalAction::validate(const FiniteGroupoid& x) const {
  const int order = group.order();
  const int n = x.object_count(), m = x.morphism_count();
  if (static_cast<int>(objects.size()) != order || static_cast<int>(morphisms.size()) != order)
    throw InvalidInput("global action needs object and morphism maps for every group element");
  for (int g = 0; g < order; ++g) {
    if (!is_permutation_of(objects[g], n) || !is_permutation_of(morphisms[g], m))
      throw InvalidInput("global action of element " + std::to_string(g) + " is not bijective");
    for (int f = 0; f < m; ++f) {
      const auto& mf = x.morphism(f);
      const auto& gf = x.morphism(morphisms[g][f]);
      if (gf.source != objects[g][mf.source] || gf.target != objects[g][mf.target])
        throw InvalidInput("element " + std::to_string(g) + " does not commute with source and target");
    }
    for (int o = 0; o < n; ++o)
      if (morphisms[g][x.unit(o)] != x.unit(objects[g][o])) throw InvalidInput("element " + std::to_string(g) + " moves units");
    for (int psi = 0; psi < m; ++psi)
      for (int phi = 0; phi < m; ++phi) {
        const int c = x.compose(psi, phi);
        if (c >= 0 && morphisms[g][c] != x.compose(morphisms[g][psi], morphisms[g][phi]))
          throw InvalidInput("element " + std::to_string(g) + " does not preserve composition");
      }
  }
  for (int o = 0; o < n; ++o)
    if (objects[group.identity()][o] != o) throw InvalidInput("identity acts nontrivially");
  for (int f = 0; f < m; ++f)
    if (morphisms[group.identity()][f] != f) throw InvalidInput("identity acts nontrivially");
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) {
      const int ab = group.multiply(a, b);
      for (int o = 0; o < n; ++o)
        if (objects[ab][o] != objects[a][objects[b][o]]) throw InvalidInput("global action law fails on objects");
      for (int f = 0; f < m; ++f)
        if (morphisms[ab][f] != morphisms[a][morphisms[b][f]]) throw InvalidInput("global action law fails on morphisms");
    }
}

GlobalAction GlobalAction::on_translation(const ActionGroupoid& x, const reps::FiniteGroup& group,
                                          std::vector<std::vector<int>> sigma, std::vector<std::vector<int>> alpha) {
  const int n = x.object_count();
  if (static_cast<int>(sigma.size()) != group.order() || static_cast<int>(alpha.size()) != group.order())
    throw InvalidInput("need σ and α for every element of the acting group");
  GlobalAction out{group, std::move(sigma), {}};
  for (int g = 0; g < group.order(); ++g) {
    if (!is_permutation_of(alpha[g], x.group.order())) throw InvalidInput("α must permute the groupoid's group");
    std::vector<int> img(static_cast<std::size_t>(x.groupoid.morphism_count()));
    for (int h = 0; h < x.group.order(); ++h)
      for (int o = 0; o < n; ++o) {
        if (out.objects[g].size() != static_cast<std::size_t>(n)) throw InvalidInput("σ must permute the objects");
        img[x.morphism(h, o)] = x.morphism(alpha[g][h], out.objects[g][o]);
      }
    out.morphisms.push_back(std::move(img));
  }
  out.validate(x.groupoid);
  return out;
}

GlobalAction GlobalAction::trivial(const FiniteGroupoid& g) {
  std::vector<int> objs(g.object_count()), mors(g.morphism_count());
  std::iota(objs.begin(), objs.end(), 0);
  std::iota(mors.begin(), mors.end(), 0);
  return {reps::FiniteGroup::cyclic(1), {objs}, {mors}};
}

bool QuotientGroupoidModel::cardinality_law() const {
  for (std::size_t i = 0; i < slices.size(); ++i)
    if (stab_q[i] != stab_eff[i] * g_x[i]) return false;
  return true;
}

std::vector<int> default_slices(const FiniteGroupoid& x, const GlobalAction& action) {
  const int n = x.object_count();
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  const std::function<int(int)> find = [&](int a) {
    return parent[static_cast<std::size_t>(a)] == a ? a : parent[static_cast<std::size_t>(a)] = find(parent[static_cast<std::size_t>(a)]);
  };
  const auto unite = [&](int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); };
  for (int phi = 0; phi < x.morphism_count(); ++phi) unite(x.morphism(phi).source, x.morphism(phi).target);
  for (const auto& row : action.objects)
    for (int o = 0; o < n; ++o) unite(o, row[static_cast<std::size_t>(o)]);
  std::vector<int> reps;
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int o = 0; o < n; ++o)
    if (!seen[static_cast<std::size_t>(find(o))]) {
      seen[static_cast<std::size_t>(find(o))] = true;
      reps.push_back(o);
    }
  return reps;
}

QuotientGroupoidModel quotient_groupoid(const FiniteGroupoid& x, const GlobalAction& action, const std::vector<int>& slices,
                                        const std::vector<std::vector<int>>& kernels_in) {
  x.validate();
  action.validate(x);
  const int n = x.object_count();
  const auto& group = action.group;

  std::vector<std::vector<int>> kernels = kernels_in;
  if (kernels.empty())
    for (int o = 0; o < n; ++o) kernels.push_back({x.unit(o)});
  if (static_cast<int>(kernels.size()) != n) throw InvalidInput("need one ineffective kernel per object");
  std::vector<std::set<int>> kset(n);
  for (int o = 0; o < n; ++o) {
    kset[o] = std::set<int>(kernels[o].begin(), kernels[o].end());
    for (int k : kset[o])
      if (k < 0 || k >= x.morphism_count() || x.morphism(k).source != o || x.morphism(k).target != o)
        throw InvalidInput("kernel of object " + std::to_string(o) + " is not inside its isotropy");
    if (!kset[o].contains(x.unit(o))) throw InvalidInput("kernel of object " + std::to_string(o) + " lacks the unit");
    for (int a : kset[o])
      for (int b : kset[o])
        if (!kset[o].contains(x.compose(a, b))) throw InvalidInput("kernel of object " + std::to_string(o) + " is not a subgroup");
  }
  for (int f = 0; f < x.morphism_count(); ++f) {
    const auto [s, t] = x.morphism(f);
    std::set<int> conj;
    for (int k : kset[s]) conj.insert(x.compose(f, x.compose(k, x.inverse(f))));
    if (conj != kset[t]) throw InvalidInput("kernels are not carried to each other by morphism " + std::to_string(f));
  }
  for (int g = 0; g < group.order(); ++g)
    for (int o = 0; o < n; ++o) {
      std::set<int> moved;
      for (int k : kset[o]) moved.insert(action.morphisms[g][k]);
      if (moved != kset[action.objects[g][o]]) throw InvalidInput("kernels are not preserved by the global action");
    }

  UnionFind uf(n);
  for (int f = 0; f < x.morphism_count(); ++f) uf.join(x.morphism(f).source, x.morphism(f).target);
  for (int g = 0; g < group.order(); ++g)
    for (int o = 0; o < n; ++o) uf.join(o, action.objects[g][o]);
  std::set<int> covered;
  for (int s : slices) {
    if (s < 0 || s >= n) throw InvalidInput("slice object out of range");
    covered.insert(uf.find(s));
  }
  if (std::set<int>(slices.begin(), slices.end()).size() != slices.size()) throw InvalidInput("slices repeat an object");
  for (int o = 0; o < n; ++o)
    if (!covered.contains(uf.find(o))) throw InvalidInput("slices miss the orbit of object " + std::to_string(o));

  auto canon = [&](int phi) {
    int best = phi;
    for (int k : kset[x.morphism(phi).target]) best = std::min(best, x.compose(k, phi));
    return best;
  };

  QuotientGroupoidModel out;
  out.slices = slices;
  const int q = static_cast<int>(slices.size());
  std::map<std::tuple<int, int, int, int>, int> index;
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j)
      for (int g = 0; g < group.order(); ++g)
        for (int phi : x.between(action.objects[g][slices[i]], slices[j])) {
          const auto key = std::make_tuple(i, j, g, canon(phi));
          if (index.contains(key)) continue;
          index.emplace(key, static_cast<int>(out.morphisms.size()));
          out.morphisms.push_back({i, j, g, std::get<3>(key)});
        }

  const int m = static_cast<int>(out.morphisms.size());
  std::vector<Morphism> mor(m);
  std::vector<int> units(q), inverses(m), comp(static_cast<std::size_t>(m) * m, -1);
  for (int a = 0; a < m; ++a) mor[a] = {out.morphisms[a].source, out.morphisms[a].target};
  for (int i = 0; i < q; ++i) units[i] = index.at({i, i, group.identity(), canon(x.unit(slices[i]))});
  for (int a = 0; a < m; ++a) {
    const auto& qa = out.morphisms[a];
    const int gi = group.inverse(qa.g);
    const int lift = canon(action.morphisms[gi][x.inverse(qa.lift)]);
    inverses[a] = index.at({qa.target, qa.source, gi, lift});
  }
  for (int b = 0; b < m; ++b)
    for (int a = 0; a < m; ++a) {
      const auto& qa = out.morphisms[a];  // x → y, φ: g·x → y
      const auto& qb = out.morphisms[b];  // y → z, ψ: h·y → z
      if (qa.target != qb.source) continue;
      const int moved = action.morphisms[qb.g][qa.lift];  // h·φ: hg·x → h·y
      const int lift = canon(x.compose(qb.lift, moved));
      comp[static_cast<std::size_t>(b) * m + a] = index.at({qa.source, qb.target, group.multiply(qb.g, qa.g), lift});
    }
  out.groupoid = FiniteGroupoid(q, std::move(mor), std::move(units), std::move(inverses), std::move(comp));
  out.groupoid.validate();

  for (int i = 0; i < q; ++i) {
    const int s = slices[i];
    out.stab_q.push_back(static_cast<int>(out.groupoid.stab(i).size()));
    out.stab_eff.push_back(static_cast<int>(x.stab(s).size() / kset[s].size()));
    int gx = 0;
    for (int g = 0; g < group.order(); ++g)
      if (!x.between(action.objects[g][s], s).empty()) ++gx;
    out.g_x.push_back(gx);
  }
  return out;
}

RegularityReport regularity_check(const FiniteGroupoid& g, const std::vector<RegularityData>& data) {
  RegularityReport report;
  for (const auto& d : data) {
    validate_local_action(g, d.action);
    const auto& nb = d.action.neighborhood;
    for (const auto& sub : d.subneighborhoods)
      for (int y : sub)
        if (std::ranges::find(nb, y) == nb.end()) throw InvalidInput("sub-neighborhood leaves the uniformizer");
    for (const auto& [phi, img] : d.action.image) {
      const bool fixes_all = img == nb;
      bool pass = true;
      for (const auto& sub : d.subneighborhoods) {
        bool fixes_sub = true;
        for (int y : sub) {
          const auto pos = std::ranges::find(nb, y) - nb.begin();
          fixes_sub = fixes_sub && img[static_cast<std::size_t>(pos)] == y;
        }
        if (fixes_sub && !fixes_all) pass = false;
      }
      report.records.push_back({d.action.object, phi, pass});
      report.pass = report.pass && pass;
    }
  }
  return report;
}

PointAction PointAction::finite(std::vector<MatD> matrices) {
  if (matrices.empty()) throw InvalidInput("finite action needs at least the identity");
  const auto dim = matrices.front().rows();
  for (const auto& m : matrices)
    if (m.rows() != dim || m.cols() != dim) throw InvalidInput("action matrices must be square of one size");
  PointAction out;
  out.matrices_ = std::move(matrices);
  return out;
}

PointAction PointAction::circle(std::vector<int> weights, int quadrature_order) {
  if (weights.empty()) throw InvalidInput("circle action needs at least one coordinate plane");
  if (quadrature_order < 1) throw InvalidInput("quadrature order must be positive");
  PointAction out;
  out.weights_ = std::move(weights);
  out.order_ = quadrature_order;
  return out;
}

int PointAction::count() const { return is_circle() ? order_ : static_cast<int>(matrices_.size()); }

int PointAction::dim() const { return is_circle() ? 2 * static_cast<int>(weights_.size()) : static_cast<int>(matrices_.front().rows()); }

MatD PointAction::rotation(double theta) const {
  if (!is_circle()) throw InvalidInput("rotation angles apply only to the circle");
  MatD r = MatD::Zero(dim(), dim());
  for (std::size_t p = 0; p < weights_.size(); ++p) {
    const double a = weights_[p] * theta;
    const auto i = static_cast<Eigen::Index>(2 * p);
    r(i, i) = std::cos(a);
    r(i, i + 1) = -std::sin(a);
    r(i + 1, i) = std::sin(a);
    r(i + 1, i + 1) = std::cos(a);
  }
  return r;
}

MatD PointAction::element(int k) const {
  if (is_circle()) return rotation(2.0 * std::numbers::pi * k / order_);
  return matrices_[static_cast<std::size_t>(k)];
}

double euclidean(const VecD& x, const VecD& y) { return (x - y).norm(); }

double averaged_distance(const VecD& x, const VecD& y, const PointAction& action, const Metric& d) {
  std::vector<double> vals;
  vals.reserve(static_cast<std::size_t>(action.count()));
  for (int k = 0; k < action.count(); ++k) {
    const MatD g = action.element(k);
    vals.push_back(d(g * x, g * y));
  }
  std::ranges::sort(vals);
  double sum = 0.0;
  for (double v : vals) sum += v;
  return sum / action.count();
}

double quotient_distance(const VecD& x, const VecD& y, const PointAction& action, const Metric& d) {
  if (!action.is_circle()) {
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k < action.count(); ++k) best = std::min(best, averaged_distance(x, action.element(k) * y, action, d));
    return best;
  }
  const int n = action.count();
  const double step = 2.0 * std::numbers::pi / n;
  auto f = [&](double theta) { return averaged_distance(x, action.rotation(theta) * y, action, d); };
  int best_k = 0;
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < n; ++k)
    if (const double v = f(k * step); v < best) {
      best = v;
      best_k = k;
    }
  // Golden-section search on the bracket around the best sample.
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = (best_k - 1) * step, hi = (best_k + 1) * step;
  double c = hi - ratio * (hi - lo), e = lo + ratio * (hi - lo);
  double fc = f(c), fe = f(e);
  while (hi - lo > 1e-10) {
    if (fc < fe) {
      hi = e;
      e = c;
      fe = fc;
      c = hi - ratio * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = e;
      fc = fe;
      e = lo + ratio * (hi - lo);
      fe = f(e);
    }
  }
  return std::min({best, fc, fe});
}

void check_metric_axioms(const std::vector<VecD>& points, const Metric& d, double tol) {
  const auto n = points.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(d(points[i], points[i])) > tol) throw InvalidInput("d(x, x) ≠ 0 at sample " + std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) {
      const double dij = d(points[i], points[j]);
      if (dij < -tol) throw InvalidInput("negative distance between samples");
      if (std::abs(dij - d(points[j], points[i])) > tol) throw InvalidInput("distance is not symmetric");
      for (std::size_t k = 0; k < n; ++k)
        if (d(points[i], points[k]) > dij + d(points[j], points[k]) + tol)
          throw InvalidInput("triangle inequality fails on samples " + std::to_string(i) + ", " + std::to_string(j) + ", " +
                             std::to_string(k));
    }
  }
}

QuotientMetric quotient_metric(const std::vector<VecD>& points, const PointAction& action, const Metric& d) {
  for (const auto& p : points)
    if (p.size() != action.dim()) throw InvalidInput("sample point dimension does not match the action");
  check_metric_axioms(points, d);
  const auto n = static_cast<Eigen::Index>(points.size());
  QuotientMetric out{MatD::Zero(n, n), MatD::Zero(n, n)};
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) {
      out.d_g(i, j) = out.d_g(j, i) = averaged_distance(points[i], points[j], action, d);
      out.d_quotient(i, j) = out.d_quotient(j, i) = quotient_distance(points[i], points[j], action, d);
    }
  return out;
}

}  // namespace equitrans::groupoid

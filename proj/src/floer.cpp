#include "equitrans/floer.hpp"

#include "equitrans/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace equitrans::floer {

namespace {

std::string point_string(const LatticePoint& a) {
  std::string out = "[";
  for (std::size_t i = 0; i < a.size(); ++i) out += (i ? "," : "") + std::to_string(a[i]);
  return out + "]";
}

bool is_origin(const LatticePoint& a) {
  return std::ranges::all_of(a, [](int v) { return v == 0; });
}

LatticePoint add_points(const LatticePoint& a, const LatticePoint& b) {
  LatticePoint out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

LatticePoint negate(const LatticePoint& a) {
  LatticePoint out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
  return out;
}

std::string key_string(const FloerComplex& c, const CountKey& k) {
  return "(" + c.generators.gens[k.x].name + ", " + c.generators.gens[k.y].name + ", " + point_string(k.a) + ")";
}

}  // namespace

Rational HomologyLattice::omega_of(const LatticePoint& a) const {
  check_point(a);
  Rational out = 0;
  for (std::size_t i = 0; i < a.size(); ++i) out += omega[i] * a[i];
  return out;
}

int HomologyLattice::c1_of(const LatticePoint& a) const {
  check_point(a);
  int out = 0;
  for (std::size_t i = 0; i < a.size(); ++i) out += c1[i] * a[i];
  return out;
}

void HomologyLattice::validate() const {
  if (omega.size() != c1.size()) throw InvalidInput("lattice omega and c1 have different lengths");
}

void HomologyLattice::check_point(const LatticePoint& a) const {
  if (a.size() != omega.size())
    throw InvalidInput("lattice point " + point_string(a) + " does not have rank " + std::to_string(omega.size()));
}

Novikov Novikov::monomial(LatticePoint a, const Rational& coeff) {
  Novikov out;
  out.add_term(a, coeff);
  return out;
}

void Novikov::add_term(const LatticePoint& a, const Rational& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(a, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

Novikov& Novikov::operator+=(const Novikov& other) {
  for (const auto& [a, f] : other.terms_) add_term(a, f);
  return *this;
}

Novikov& Novikov::operator-=(const Novikov& other) {
  for (const auto& [a, f] : other.terms_) add_term(a, -f);
  return *this;
}

Novikov operator-(const Novikov& a) { return Rational(-1) * a; }

Novikov operator*(const Rational& c, const Novikov& a) {
  Novikov out;
  if (c == 0) return out;
  for (const auto& [p, f] : a.terms_) out.terms_.emplace(p, c * f);
  return out;
}

Novikov truncate(const Novikov& a, const HomologyLattice& lattice, const Rational& cutoff) {
  Novikov out;
  for (const auto& [p, f] : a.terms())
    if (lattice.omega_of(p) <= cutoff) out.add_term(p, f);
  return out;
}

Novikov multiply(const Novikov& a, const Novikov& b, const HomologyLattice& lattice, const std::optional<Rational>& cutoff) {
  Novikov out;
  for (const auto& [p, f] : a.terms())
    for (const auto& [q, g] : b.terms()) {
      const LatticePoint r = add_points(p, q);
      if (cutoff && lattice.omega_of(r) > *cutoff) continue;
      out.add_term(r, f * g);
    }
  return out;
}

std::optional<Rational> valuation(const Novikov& a, const HomologyLattice& lattice) {
  std::optional<Rational> best;
  for (const auto& [p, f] : a.terms()) {
    const Rational w = lattice.omega_of(p);
    if (!best || w < *best) best = w;
  }
  return best;
}

Novikov invert_truncated(const Novikov& a, const HomologyLattice& lattice, const Rational& cutoff) {
  const auto v = valuation(a, lattice);
  if (!v) throw InvalidInput("cannot invert 0 in the Novikov field");
  std::vector<std::pair<LatticePoint, Rational>> leading;
  for (const auto& [p, f] : a.terms())
    if (lattice.omega_of(p) == *v) leading.emplace_back(p, f);
  if (leading.size() != 1)
    throw Indeterminate("lowest-energy part of " + to_string(a) + " is not a monomial; unit status undecided");
  if (*v > cutoff) throw Indeterminate("lowest energy of " + to_string(a) + " lies above the cutoff " + equitrans::to_string(cutoff));

  // a = f q^{A0} (1 + r) with every term of r of positive energy, so
  // a⁻¹ = f⁻¹ q^{−A0} Σ (−r)^k, and only finitely many powers survive the cutoff.
  const auto& [a0, f0] = leading.front();
  const Novikov lead_inv = Novikov::monomial(negate(a0), Rational(1) / f0);
  Novikov minus_r;
  for (const auto& [p, f] : a.terms())
    if (p != a0) minus_r.add_term(add_points(p, negate(a0)), -f / f0);

  // Terms of a⁻¹ above cutoff − v only feed terms above the cutoff in a·a⁻¹;
  // before the shift by q^{−A0} that bound reads ω ≤ cutoff.
  Novikov series = Novikov::monomial(lattice.zero());
  Novikov power = series;
  while (true) {
    power = multiply(power, minus_r, lattice, cutoff);
    if (power.is_zero()) break;
    series += power;
  }
  return truncate(multiply(series, lead_inv, lattice), lattice, cutoff - *v);
}

std::string to_string(const Novikov& a) {
  if (a.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [p, f] : a.terms()) {
    Rational c = f;
    if (!first) {
      out += c < 0 ? " - " : " + ";
      if (c < 0) c = -c;
    }
    first = false;
    const bool unit = is_origin(p);
    if (unit) {
      out += equitrans::to_string(c);
    } else {
      if (c == -1) out += "-";
      else if (c != 1) out += equitrans::to_string(c) + " ";
      out += "q^" + point_string(p);
    }
  }
  return out;
}

void GeneratorSet::validate() const {
  if (half_dim < 0) throw InvalidInput("half dimension must be nonnegative");
  std::set<std::string> names;
  for (const auto& g : gens) {
    if (g.index < 0 || g.index > 2 * half_dim)
      throw InvalidInput("generator " + g.name + " has Morse index " + std::to_string(g.index) + " outside [0, 2n]");
    if (!names.insert(g.name).second) throw InvalidInput("duplicate generator name " + g.name);
  }
  for (const auto& g : gens)
    for (const auto& h : gens)
      if ((g.value > h.value) != (g.index > h.index))
        throw InvalidInput("critical values are not self-indexing at " + g.name + ", " + h.name);
}

int GeneratorSet::find(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (gens[i].name == name) return i;
  throw InvalidInput("unknown generator " + name);
}

int FloerComplex::moduli_index(const CountKey& key) const {
  return generators.gens[key.y].index - generators.gens[key.x].index + 2 * lattice.c1_of(key.a) - 1;
}

void FloerComplex::validate() const {
  lattice.validate();
  generators.validate();
  for (const auto& [key, count] : counts) {
    if (key.x < 0 || key.y < 0 || key.x >= generators.size() || key.y >= generators.size())
      throw InvalidInput("count refers to a missing generator");
    lattice.check_point(key.a);
    if (count == 0) continue;
    const Rational energy = generators.gens[key.y].value - generators.gens[key.x].value + lattice.omega_of(key.a);
    if (energy <= 0)
      throw InvalidInput("count " + key_string(*this, key) + " has nonpositive energy " + equitrans::to_string(energy));
  }
}

NovikovMatrix build_differential(const FloerComplex& complex) {
  complex.validate();
  const int n = complex.generators.size();
  NovikovMatrix delta(n, n);
  for (const auto& [key, count] : complex.counts) {
    if (count == 0) continue;
    if (const int ind = complex.moduli_index(key); ind != 0)
      throw InvalidInput("nonzero count " + std::to_string(count) + " at " + key_string(complex, key) + " has index " +
                         std::to_string(ind) + ", not 0");
    delta(key.x, key.y).add_term(key.a, Rational(count));
  }
  return delta;
}

NovikovMatrix multiply(const NovikovMatrix& a, const NovikovMatrix& b, const HomologyLattice& lattice,
                       const std::optional<Rational>& cutoff) {
  if (a.cols != b.rows) throw InvalidInput("Novikov matrix shapes do not match");
  NovikovMatrix out(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      if (a(i, k).is_zero()) continue;
      for (int j = 0; j < b.cols; ++j)
        if (!b(k, j).is_zero()) out(i, j) += multiply(a(i, k), b(k, j), lattice, cutoff);
    }
  return out;
}

SquareCheck check_d_squared(const NovikovMatrix& delta, const HomologyLattice& lattice, const std::optional<Rational>& cutoff) {
  const NovikovMatrix sq = multiply(delta, delta, lattice, cutoff);
  for (int i = 0; i < sq.rows; ++i)
    for (int j = 0; j < sq.cols; ++j)
      if (!sq(i, j).is_zero()) return {false, i, j, sq(i, j)};
  return {};
}

CoherenceReport coherence_validate(const FloerComplex& complex, const std::vector<BrokenStratum>& strata) {
  complex.validate();
  const int n = complex.generators.size();
  const auto count_of = [&](const CountKey& k) -> long long {
    const auto it = complex.counts.find(k);
    return it == complex.counts.end() ? 0 : it->second;
  };
  const auto check_key = [&](const CountKey& k) {
    if (k.x < 0 || k.y < 0 || k.x >= n || k.y >= n) throw InvalidInput("stratum refers to a missing generator");
    complex.lattice.check_point(k.a);
  };

  CoherenceReport report;
  std::map<CountKey, std::vector<const BrokenStratum*>> by_target;
  for (std::size_t s = 0; s < strata.size(); ++s) {
    const auto& st = strata[s];
    check_key(st.target);
    check_key(st.outer);
    check_key(st.inner);
    ++report.strata_checked;
    const std::string where = "stratum " + std::to_string(s) + " of " + key_string(complex, st.target) + ": ";
    auto fail = [&](const std::string& why) {
      report.pass = false;
      report.failures.push_back(where + why);
    };
    if (complex.moduli_index(st.target) != 1)
      fail("target has index " + std::to_string(complex.moduli_index(st.target)) + ", not 1");
    if (st.outer.x != st.target.x || st.inner.y != st.target.y || st.outer.y != st.inner.x)
      fail("breaking does not connect the target's ends");
    if (add_points(st.outer.a, st.inner.a) != st.target.a)
      fail("class " + point_string(st.target.a) + " is not " + point_string(st.outer.a) + " + " + point_string(st.inner.a));
    if (complex.moduli_index(st.outer) != 0 || complex.moduli_index(st.inner) != 0) fail("factors are not of index 0");
    const long long product = count_of(st.outer) * count_of(st.inner);
    if (product != st.declared)
      fail("declared " + std::to_string(st.declared) + " but the factors give " + std::to_string(product));
    by_target[st.target].push_back(&st);
  }

  for (const auto& [target, labels] : by_target) {
    long long declared = 0;
    for (const auto* st : labels) declared += st->declared;
    // δ² coefficient of q^A at (x, z), walking every breaking the table allows.
    long long coefficient = 0;
    for (const auto& [outer, c1] : complex.counts) {
      if (outer.x != target.x || c1 == 0) continue;
      for (const auto& [inner, c2] : complex.counts) {
        if (inner.x != outer.y || inner.y != target.y || c2 == 0) continue;
        if (add_points(outer.a, inner.a) != target.a) continue;
        coefficient += c1 * c2;
        const bool labeled = std::ranges::any_of(labels, [&](const BrokenStratum* st) {
          return st->outer == outer && st->inner == inner;
        });
        if (!labeled)
          throw InvalidInput("missing stratum label for the breaking " + key_string(complex, outer) + " then " +
                             key_string(complex, inner));
      }
    }
    if (coefficient != declared) {
      report.pass = false;
      report.failures.push_back("strata of " + key_string(complex, target) + " add up to " + std::to_string(declared) +
                                " but the δ² coefficient is " + std::to_string(coefficient));
    }
  }
  return report;
}

ModuliCountTable autonomous_reduce(const FloerComplex& complex, const MorseCounts& morse) {
  complex.validate();
  ModuliCountTable out;
  for (const auto& [key, count] : complex.counts)
    if (complex.moduli_index(key) != 0) out.emplace(key, count);
  const int n = complex.generators.size();
  for (const auto& [pair, count] : morse) {
    const auto [x, y] = pair;
    if (x < 0 || y < 0 || x >= n || y >= n) throw InvalidInput("Morse count refers to a missing generator");
    if (complex.generators.gens[x].index != complex.generators.gens[y].index - 1)
      throw InvalidInput("Morse count (" + complex.generators.gens[x].name + ", " + complex.generators.gens[y].name +
                         ") does not lower the index by one");
    if (count != 0) out[CountKey{x, y, complex.lattice.zero()}] = count;
  }
  return out;
}

bool equals_morse_tensor(const NovikovMatrix& delta, const MorseCounts& morse, const HomologyLattice& lattice) {
  for (int i = 0; i < delta.rows; ++i)
    for (int j = 0; j < delta.cols; ++j) {
      const auto it = morse.find({i, j});
      const long long c = it == morse.end() ? 0 : it->second;
      if (delta(i, j) != Novikov::monomial(lattice.zero(), Rational(c))) return false;
    }
  return true;
}

int CohomologyRanks::total() const {
  int sum = 0;
  for (const auto& [deg, r] : ranks) sum += r;
  return sum;
}

namespace {

/// Λ-rank of a block by least-valuation pivoting with truncated inverses.
int novikov_rank(NovikovMatrix m, const HomologyLattice& lattice, const Rational& cutoff, const std::vector<std::string>& row_names,
                 const std::vector<std::string>& col_names) {
  for (auto& e : m.data) e = truncate(e, lattice, cutoff);
  std::vector<bool> row_used(m.rows), col_used(m.cols);
  int rank = 0;
  while (true) {
    int pi = -1, pj = -1;
    Rational best;
    for (int i = 0; i < m.rows; ++i) {
      if (row_used[i]) continue;
      for (int j = 0; j < m.cols; ++j) {
        if (col_used[j]) continue;
        const auto v = valuation(m(i, j), lattice);
        if (v && (pi < 0 || *v < best)) {
          best = *v;
          pi = i;
          pj = j;
        }
      }
    }
    if (pi < 0) break;
    Novikov inv;
    try {
      inv = invert_truncated(m(pi, pj), lattice, cutoff);
    } catch (const Indeterminate& e) {
      throw Indeterminate("pivot at (" + row_names[pi] + ", " + col_names[pj] + "): " + e.what());
    }
    for (int r = 0; r < m.rows; ++r) {
      if (r == pi || row_used[r] || m(r, pj).is_zero()) continue;
      const Novikov factor = multiply(m(r, pj), inv, lattice, cutoff);
      for (int c = 0; c < m.cols; ++c) {
        if (col_used[c] || m(pi, c).is_zero()) continue;
        m(r, c) = truncate(m(r, c) - multiply(factor, m(pi, c), lattice, cutoff), lattice, cutoff);
      }
      m(r, pj) = Novikov();
    }
    row_used[pi] = true;
    col_used[pj] = true;
    ++rank;
  }
  return rank;
}

}  // namespace

CohomologyRanks cohomology_rank(const FloerComplex& complex, const Rational& cutoff) {
  const NovikovMatrix delta = build_differential(complex);
  const auto& gens = complex.generators;
  const int top = 2 * gens.half_dim;

  int g = 0;
  for (int c : complex.lattice.c1) g = std::gcd(g, std::abs(c));
  CohomologyRanks out;
  // Gradings 0..2n stay distinct unless 2·gcd c₁ is at most 2n.
  out.modulus = (g == 0 || 2 * g > top) ? 0 : 2 * g;
  const int classes = out.modulus == 0 ? top + 1 : out.modulus;
  auto cls = [&](int deg) { return out.modulus == 0 ? deg : ((deg % out.modulus) + out.modulus) % out.modulus; };

  std::vector<std::vector<int>> members(classes);
  for (int i = 0; i < gens.size(); ++i) members[cls(gens.morse_grading(i))].push_back(i);

  std::vector<int> block_rank(classes, 0);
  for (int k = 0; k < classes; ++k) {
    const int next = out.modulus == 0 ? k + 1 : (k + 1) % out.modulus;
    if (next >= classes || members[k].empty() || members[next].empty()) continue;
    const auto& cols = members[k];
    const auto& rows = members[next];
    NovikovMatrix block(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    std::vector<std::string> rn, cn;
    for (int r : rows) rn.push_back(gens.gens[r].name);
    for (int c : cols) cn.push_back(gens.gens[c].name);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < cols.size(); ++c) block(static_cast<int>(r), static_cast<int>(c)) = delta(rows[r], cols[c]);
    block_rank[k] = novikov_rank(block, complex.lattice, cutoff, rn, cn);
  }
  for (int k = 0; k < classes; ++k) {
    const int prev = out.modulus == 0 ? k - 1 : (k - 1 + out.modulus) % out.modulus;
    const int incoming = prev >= 0 ? block_rank[prev] : 0;
    out.ranks[k] = static_cast<int>(members[k].size()) - block_rank[k] - incoming;
    out.differential_rank += block_rank[k];
  }
  return out;
}

int specialized_rank(const NovikovMatrix& delta, const std::vector<Rational>& t) {
  MatQ m = MatQ::Zero(delta.rows, delta.cols);
  for (int i = 0; i < delta.rows; ++i)
    for (int j = 0; j < delta.cols; ++j)
      for (const auto& [p, f] : delta(i, j).terms()) {
        Rational v = f;
        for (std::size_t k = 0; k < p.size(); ++k) {
          const Rational base = p[k] >= 0 ? t[k] : Rational(1) / t[k];
          for (int e = 0; e < std::abs(p[k]); ++e) v *= base;
        }
        m(i, j) += v;
      }
  return linalg::rank<Rational>(m);
}

SyntheticComplex make_coherent_complex(std::uint64_t seed, int half_dim, int pairs, int extra) {
  std::mt19937_64 rng(seed);
  const auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  SyntheticComplex out;
  FloerComplex& c = out.complex;
  // e₁ has c₁ = 1 and enough energy to overcome any drop in H; e₂ has c₁ = 0.
  c.lattice.omega = {Rational(2 * half_dim + 1), Rational(1)};
  c.lattice.c1 = {1, 0};
  c.generators.half_dim = half_dim;
  const int top = 2 * half_dim;

  struct Pair {
    int target, source;
    LatticePoint a;
    long long count;
  };
  std::vector<Pair> blocks;
  auto add_gen = [&](int ind) {
    c.generators.gens.push_back({"g" + std::to_string(c.generators.gens.size()), ind, Rational(ind)});
    return c.generators.size() - 1;
  };
  const std::vector<LatticePoint> classes = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  for (int p = 0; p < pairs; ++p) {
    const LatticePoint a = classes[pick(0, 3)];
    const int shift = 2 * c.lattice.c1_of(a) - 1;  // ind target − ind source
    const int lo = std::max(0, -shift), hi = std::min(top, top - shift);
    const int src_ind = pick(lo, hi);
    const int src = add_gen(src_ind);
    const int tgt = add_gen(src_ind + shift);
    blocks.push_back({tgt, src, a, (pick(0, 1) ? 1 : -1) * pick(1, 2)});
  }
  for (int e = 0; e < extra; ++e) add_gen(pick(0, top));
  // One square x ← y₁, y₂ ← z whose two breakings cancel: ab + cd = 0.
  struct Square {
    int x, y1, y2, z;
    LatticePoint a;
    long long n1, n2, n3, n4;
  };
  std::optional<Square> square;
  if (top >= 2) {
    const int k = pick(0, top - 2);
    Square sq{add_gen(k), add_gen(k + 1), add_gen(k + 1), add_gen(k + 2), pick(0, 1) ? LatticePoint{0, 1} : LatticePoint{0, 0},
              0, 0, 0, 0};
    sq.n1 = (pick(0, 1) ? 1 : -1) * pick(1, 2);
    sq.n2 = (pick(0, 1) ? 1 : -1) * pick(1, 2);
    sq.n3 = pick(0, 1) ? 1 : -1;
    sq.n4 = -sq.n1 * sq.n2 * sq.n3;
    square = sq;
  }

  const int n = c.generators.size();
  NovikovMatrix d(n, n);
  for (const auto& b : blocks) d(b.target, b.source) = Novikov::monomial(b.a, Rational(b.count));
  if (square) {
    // Path through y₁ carries the class on its first step, the path through y₂ on its second.
    d(square->x, square->y1) = Novikov::monomial(square->a, Rational(square->n1));
    d(square->y1, square->z) = Novikov::monomial(c.lattice.zero(), Rational(square->n2));
    d(square->x, square->y2) = Novikov::monomial(c.lattice.zero(), Rational(square->n3));
    d(square->y2, square->z) = Novikov::monomial(square->a, Rational(square->n4));
  }

  // Unipotent U = I + N, N strictly upper triangular within each Morse index.
  MatQ u = MatQ::Identity(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (c.generators.gens[i].index == c.generators.gens[j].index) u(i, j) = pick(-1, 1);
  const MatQ u_inv = linalg::inverse<Rational>(u);
  NovikovMatrix um(n, n), uim(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      um(i, j) = Novikov::monomial(c.lattice.zero(), u(i, j));
      uim(i, j) = Novikov::monomial(c.lattice.zero(), u_inv(i, j));
    }
  const NovikovMatrix conj = multiply(multiply(um, d, c.lattice), uim, c.lattice);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (const auto& [a, f] : conj(i, j).terms()) c.counts[CountKey{i, j, a}] = f.convert_to<long long>();

  std::map<CountKey, std::vector<BrokenStratum>> strata;
  for (const auto& [outer, c1] : c.counts)
    for (const auto& [inner, c2] : c.counts) {
      if (inner.x != outer.y) continue;
      const CountKey target{outer.x, inner.y, add_points(outer.a, inner.a)};
      out.strata.push_back({target, outer, inner, c1 * c2});
    }
  return out;
}

std::vector<std::string> toy_model_names() { return {"S2", "T2", "CP2", "S2xS2", "S2-pair"}; }

ToyModel toy_model(const std::string& name) {
  ToyModel m;
  m.name = name;
  auto& c = m.complex;
  auto gen = [&](const std::string& g, int ind) { c.generators.gens.push_back({g, ind, Rational(ind)}); };
  if (name == "S2" || name == "S2-pair") {
    c.lattice = {{Rational(1)}, {2}};
    c.generators.half_dim = 1;
    gen("min", 0);
    if (name == "S2-pair") {
      m.perfect = false;
      gen("min2", 0);
      gen("saddle", 1);
      m.morse = {{{0, 2}, 1}, {{1, 2}, -1}};
    }
    gen("max", 2);
    m.betti = {{0, 1}, {1, 0}, {2, 1}};
  } else if (name == "T2") {
    c.lattice = {{Rational(1)}, {0}};
    c.generators.half_dim = 1;
    gen("min", 0);
    gen("a", 1);
    gen("b", 1);
    gen("max", 2);
    m.betti = {{0, 1}, {1, 2}, {2, 1}};
    // Index-0 slots with A ≠ 0 exist since c₁ vanishes; the S¹ reduction must remove them.
    c.counts[CountKey{1, 3, {1}}] = 1;
    c.counts[CountKey{0, 2, {1}}] = -1;
  } else if (name == "CP2") {
    c.lattice = {{Rational(1)}, {3}};
    c.generators.half_dim = 2;
    gen("x0", 0);
    gen("x2", 2);
    gen("x4", 4);
    m.betti = {{0, 1}, {1, 0}, {2, 1}, {3, 0}, {4, 1}};
  } else if (name == "S2xS2") {
    c.lattice = {{Rational(1), Rational(1)}, {2, 2}};
    c.generators.half_dim = 2;
    gen("min", 0);
    gen("a", 2);
    gen("b", 2);
    gen("max", 4);
    m.betti = {{0, 1}, {1, 0}, {2, 2}, {3, 0}, {4, 1}};
  } else {
    throw InvalidInput("unknown toy model " + name);
  }
  for (const auto& [pair, count] : m.morse) c.counts[CountKey{pair.first, pair.second, c.lattice.zero()}] = count;
  return m;
}

}  // namespace equitrans::floer

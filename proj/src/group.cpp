#include "equitrans/group.hpp"

#include "equitrans/errors.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <regex>

namespace equitrans::reps {

namespace {

IrrepData exact_irrep(std::string label, std::vector<MatQ> mats) {
  IrrepData d;
  d.label = std::move(label);
  d.dim = static_cast<int>(mats.front().rows());
  d.floating = orthonormalize_action(mats);
  d.exact = std::move(mats);
  return d;
}

IrrepData float_irrep(std::string label, std::vector<MatD> mats) {
  IrrepData d;
  d.label = std::move(label);
  d.dim = static_cast<int>(mats.front().rows());
  d.floating = std::move(mats);
  return d;
}

MatQ scalar_q(long long v) {
  MatQ m(1, 1);
  m(0, 0) = Rational(v);
  return m;
}

MatQ power(const MatQ& m, int k) {
  MatQ out = MatQ::Identity(m.rows(), m.cols());
  for (int i = 0; i < k; ++i) out = out * m;
  return out;
}

MatD rotation(double theta) {
  MatD r(2, 2);
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return r;
}

/// 2cos(2πw/n) when it is an integer (element order 1, 2, 3, 4 or 6).
std::optional<int> integral_trace(int w, int n) {
  const int order = n / std::gcd(w, n);
  switch (order) {
    case 1: return 2;
    case 2: return -2;
    case 3: return -1;
    case 4: return 0;
    case 6: return 1;
    default: return std::nullopt;
  }
}

/// Rational matrix of a rotation by 2πw/n in a non-orthonormal basis.
MatQ companion(int trace) {
  MatQ m(2, 2);
  m << Rational(0), Rational(-1), Rational(1), Rational(trace);
  return m;
}

/// Standard (n-1)-dimensional representation in the basis e_i - e_{n-1}.
MatQ standard_matrix(const std::vector<int>& sigma) {
  const int n = static_cast<int>(sigma.size());
  MatQ m = MatQ::Zero(n - 1, n - 1);
  const int last = sigma[static_cast<std::size_t>(n - 1)];
  for (int i = 0; i < n - 1; ++i) {
    const int img = sigma[static_cast<std::size_t>(i)];
    if (img != n - 1) m(img, i) += 1;
    if (last != n - 1) m(last, i) -= 1;
  }
  return m;
}

int permutation_sign(const std::vector<int>& p) {
  int inversions = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace

/// Orthonormal float realization of a rational representation: conjugate by
/// the Cholesky factor of the averaged Gram matrix.
std::vector<MatD> orthonormalize_action(const std::vector<MatQ>& action) {
  const auto d = action.front().rows();
  MatD h = MatD::Zero(d, d);
  std::vector<MatD> fl;
  fl.reserve(action.size());
  for (const auto& m : action) {
    fl.push_back(to_double(m));
    h += fl.back().transpose() * fl.back();
  }
  h /= static_cast<double>(action.size());
  const Eigen::LLT<MatD> llt(h);
  const MatD l = llt.matrixL();
  const MatD lt_inv = l.transpose().inverse();
  for (auto& m : fl) m = l.transpose() * m * lt_inv;
  return fl;
}

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<int>> table, std::string name) {
  const auto n = table.size();
  if (n == 0) throw InvalidInput("group table is empty");
  for (const auto& row : table) {
    if (row.size() != n) throw InvalidInput("group table is not square");
    for (int v : row)
      if (v < 0 || static_cast<std::size_t>(v) >= n) throw InvalidInput("group table entry out of range");
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (table[static_cast<std::size_t>(table[a][b])][c] != table[a][static_cast<std::size_t>(table[b][c])])
          throw InvalidInput("group table is not associative at (" + std::to_string(a) + "," + std::to_string(b) + "," +
                             std::to_string(c) + ")");
  FiniteGroup g;
  g.name_ = std::move(name);
  g.table_ = std::move(table);
  g.finish();
  return g;
}

void FiniteGroup::finish() {
  const int n = order();
  identity_ = -1;
  for (int e = 0; e < n && identity_ < 0; ++e) {
    bool ok = true;
    for (int g = 0; g < n && ok; ++g) ok = multiply(e, g) == g && multiply(g, e) == g;
    if (ok) identity_ = e;
  }
  if (identity_ < 0) throw InvalidInput("group table has no identity");
  inverses_.assign(static_cast<std::size_t>(n), -1);
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      if (multiply(g, h) == identity_ && multiply(h, g) == identity_) {
        inverses_[static_cast<std::size_t>(g)] = h;
        break;
      }
  for (int g = 0; g < n; ++g)
    if (inverses_[static_cast<std::size_t>(g)] < 0) throw InvalidInput("element " + std::to_string(g) + " has no inverse");
  // Greedy generating set in element order.
  generators_.clear();
  std::vector<int> span = closure({});
  for (int g = 0; g < n && static_cast<int>(span.size()) < n; ++g) {
    if (std::find(span.begin(), span.end(), g) != span.end()) continue;
    generators_.push_back(g);
    span = closure(generators_);
  }
}

std::vector<int> FiniteGroup::closure(const std::vector<int>& gens) const {
  std::vector<bool> seen(static_cast<std::size_t>(order()), false);
  std::vector<int> out{identity_};
  seen[static_cast<std::size_t>(identity_)] = true;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (int s : gens) {
      const int h = multiply(out[i], s);
      if (!seen[static_cast<std::size_t>(h)]) {
        seen[static_cast<std::size_t>(h)] = true;
        out.push_back(h);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

bool FiniteGroup::supports_exact() const {
  return std::all_of(irreps_.begin(), irreps_.end(), [](const IrrepData& d) { return !d.exact.empty(); });
}

FiniteGroup FiniteGroup::with_irreps(std::vector<IrrepData> irreps) const {
  FiniteGroup g = *this;
  for (const auto& d : irreps) {
    if (static_cast<int>(d.floating.size()) != order() || (!d.exact.empty() && static_cast<int>(d.exact.size()) != order()))
      throw InvalidInput("irrep '" + d.label + "' needs one matrix per group element");
  }
  g.irreps_ = std::move(irreps);
  g.has_library_ = true;
  return g;
}

FiniteGroup FiniteGroup::cyclic(int n) {
  if (n < 1) throw InvalidInput("Z_n needs n >= 1");
  std::vector<std::vector<int>> t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % n;
  FiniteGroup g;
  g.name_ = "Z_" + std::to_string(n);
  g.table_ = std::move(t);
  g.finish();

  std::vector<IrrepData> irreps;
  if (n % 2 == 0) {
    std::vector<MatQ> m;
    for (int k = 0; k < n; ++k) m.push_back(scalar_q(k % 2 == 0 ? 1 : -1));
    irreps.push_back(exact_irrep("sign", std::move(m)));
  }
  for (int w = 1; 2 * w < n; ++w) {
    const std::string label = "w" + std::to_string(w);
    if (const auto t = integral_trace(w, n)) {
      const MatQ gen = companion(*t);
      std::vector<MatQ> m;
      for (int k = 0; k < n; ++k) m.push_back(power(gen, k));
      irreps.push_back(exact_irrep(label, std::move(m)));
    } else {
      std::vector<MatD> m;
      for (int k = 0; k < n; ++k) m.push_back(rotation(2.0 * std::numbers::pi * w * k / n));
      irreps.push_back(float_irrep(label, std::move(m)));
    }
  }
  g.irreps_ = std::move(irreps);
  g.has_library_ = true;
  return g;
}

FiniteGroup FiniteGroup::dihedral(int n) {
  if (n < 2) throw InvalidInput("D_n needs n >= 2");
  // Element r^k s^f has index f*n + k.
  const int order = 2 * n;
  std::vector<std::vector<int>> t(static_cast<std::size_t>(order), std::vector<int>(static_cast<std::size_t>(order)));
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) {
      const int k1 = a % n, f1 = a / n, k2 = b % n, f2 = b / n;
      const int k = ((k1 + (f1 ? -k2 : k2)) % n + n) % n;
      t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (f1 ^ f2) * n + k;
    }
  FiniteGroup g;
  g.name_ = "D_" + std::to_string(n);
  g.table_ = std::move(t);
  g.finish();

  const auto one_dim = [&](std::string label, int r_val, int s_val) {
    std::vector<MatQ> m;
    for (int e = 0; e < order; ++e) {
      const int k = e % n, f = e / n;
      const int v = ((k % 2 == 1 && r_val < 0) ? -1 : 1) * ((f == 1 && s_val < 0) ? -1 : 1);
      m.push_back(scalar_q(v));
    }
    return exact_irrep(std::move(label), std::move(m));
  };
  std::vector<IrrepData> irreps;
  irreps.push_back(one_dim("det", 1, -1));
  if (n % 2 == 0) {
    irreps.push_back(one_dim("r-sign", -1, 1));
    irreps.push_back(one_dim("r-sign-det", -1, -1));
  }
  for (int w = 1; 2 * w < n; ++w) {
    const std::string label = "w" + std::to_string(w);
    if (const auto tr = integral_trace(w, n)) {
      const MatQ r = companion(*tr);
      MatQ s(2, 2);
      s << Rational(0), Rational(1), Rational(1), Rational(0);
      std::vector<MatQ> m;
      for (int e = 0; e < order; ++e) m.push_back(e / n ? MatQ(power(r, e % n) * s) : power(r, e % n));
      irreps.push_back(exact_irrep(label, std::move(m)));
    } else {
      MatD s(2, 2);
      s << 1, 0, 0, -1;
      std::vector<MatD> m;
      for (int e = 0; e < order; ++e) {
        const MatD r = rotation(2.0 * std::numbers::pi * w * (e % n) / n);
        m.push_back(e / n ? MatD(r * s) : r);
      }
      irreps.push_back(float_irrep(label, std::move(m)));
    }
  }
  g.irreps_ = std::move(irreps);
  g.has_library_ = true;
  return g;
}

FiniteGroup FiniteGroup::symmetric(int n) {
  if (n < 1 || n > 4) throw InvalidInput("S_n preset supports 1 <= n <= 4");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  const auto order = perms.size();
  const auto index_of = [&](const std::vector<int>& q) {
    return static_cast<int>(std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
  };
  std::vector<std::vector<int>> t(order, std::vector<int>(order));
  for (std::size_t a = 0; a < order; ++a)
    for (std::size_t b = 0; b < order; ++b) {
      std::vector<int> c(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] = perms[a][static_cast<std::size_t>(perms[b][static_cast<std::size_t>(i)])];
      t[a][b] = index_of(c);
    }
  FiniteGroup g;
  g.name_ = "S_" + std::to_string(n);
  g.table_ = std::move(t);
  g.finish();

  std::vector<IrrepData> irreps;
  if (n >= 2) {
    std::vector<MatQ> m;
    for (const auto& q : perms) m.push_back(scalar_q(permutation_sign(q)));
    irreps.push_back(exact_irrep("sign", std::move(m)));
  }
  if (n >= 3) {
    std::vector<MatQ> m;
    for (const auto& q : perms) m.push_back(standard_matrix(q));
    irreps.push_back(exact_irrep("standard", m));
    if (n == 4) {
      std::vector<MatQ> ms;
      for (std::size_t e = 0; e < order; ++e) ms.push_back(m[e] * Rational(permutation_sign(perms[e])));
      irreps.push_back(exact_irrep("standard-sign", std::move(ms)));
      // Action on the three pairings {01|23}, {02|13}, {03|12}.
      const std::array<std::array<int, 4>, 3> pairing{{{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}}};
      const auto pairing_index = [&](int a, int b) {
        for (int k = 0; k < 3; ++k) {
          const auto& pk = pairing[static_cast<std::size_t>(k)];
          if ((pk[0] == a && pk[1] == b) || (pk[0] == b && pk[1] == a) || (pk[2] == a && pk[3] == b) ||
              (pk[2] == b && pk[3] == a))
            return k;
        }
        return -1;
      };
      std::vector<MatQ> mp;
      for (const auto& q : perms) {
        std::vector<int> induced(3);
        for (int k = 0; k < 3; ++k) {
          const auto& pk = pairing[static_cast<std::size_t>(k)];
          induced[static_cast<std::size_t>(k)] = pairing_index(q[static_cast<std::size_t>(pk[0])], q[static_cast<std::size_t>(pk[1])]);
        }
        mp.push_back(standard_matrix(induced));
      }
      irreps.push_back(exact_irrep("pairs", std::move(mp)));
    }
  }
  g.irreps_ = std::move(irreps);
  g.has_library_ = true;
  return g;
}

FiniteGroup FiniteGroup::quaternion() {
  // Index 2*axis + negative, axis 0..3 standing for 1, i, j, k.
  // unit_product[a][b] = (sign, axis) of e_a e_b.
  const std::array<std::array<std::pair<int, int>, 4>, 4> unit_product{{
      {{{1, 0}, {1, 1}, {1, 2}, {1, 3}}},
      {{{1, 1}, {-1, 0}, {1, 3}, {-1, 2}}},
      {{{1, 2}, {-1, 3}, {-1, 0}, {1, 1}}},
      {{{1, 3}, {1, 2}, {-1, 1}, {-1, 0}}},
  }};
  const auto decode = [](int e) { return std::pair<int, int>{e % 2 ? -1 : 1, e / 2}; };
  const auto encode = [](int sign, int axis) { return 2 * axis + (sign < 0 ? 1 : 0); };
  std::vector<std::vector<int>> t(8, std::vector<int>(8));
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      const auto [sa, xa] = decode(a);
      const auto [sb, xb] = decode(b);
      const auto [s, x] = unit_product[static_cast<std::size_t>(xa)][static_cast<std::size_t>(xb)];
      t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = encode(sa * sb * s, x);
    }
  FiniteGroup g;
  g.name_ = "Q_8";
  g.table_ = std::move(t);
  g.finish();

  std::vector<IrrepData> irreps;
  const std::array<std::string, 3> names{"chi-i", "chi-j", "chi-k"};
  for (int axis = 1; axis <= 3; ++axis) {
    std::vector<MatQ> m;
    for (int e = 0; e < 8; ++e) {
      const int x = e / 2;
      m.push_back(scalar_q(x == 0 || x == axis ? 1 : -1));
    }
    irreps.push_back(exact_irrep(names[static_cast<std::size_t>(axis - 1)], std::move(m)));
  }
  std::vector<MatQ> left;
  for (int e = 0; e < 8; ++e) {
    const auto [s, x] = decode(e);
    MatQ m = MatQ::Zero(4, 4);
    for (int b = 0; b < 4; ++b) {
      const auto [sp, xp] = unit_product[static_cast<std::size_t>(x)][static_cast<std::size_t>(b)];
      m(xp, b) = Rational(s * sp);
    }
    left.push_back(std::move(m));
  }
  irreps.push_back(exact_irrep("quaternion", std::move(left)));
  g.irreps_ = std::move(irreps);
  g.has_library_ = true;
  return g;
}

CircleGroup::CircleGroup(int quadrature_order) : n_(quadrature_order) {
  if (n_ < 1) throw InvalidInput("quadrature_order must be positive");
}

double CircleGroup::angle(int k) const { return 2.0 * std::numbers::pi * k / n_; }

const FiniteGroup& Group::finite() const {
  if (const auto* g = std::get_if<FiniteGroup>(&model_)) return *g;
  throw InvalidInput("operation needs a finite group");
}

const CircleGroup& Group::circle() const {
  if (const auto* c = std::get_if<CircleGroup>(&model_)) return *c;
  throw InvalidInput("operation needs the circle group");
}

int Group::count() const { return is_circle() ? circle().quadrature_order() : finite().order(); }

int Group::multiply(int a, int b) const {
  if (is_circle()) return (a + b) % circle().quadrature_order();
  return finite().multiply(a, b);
}

int Group::inverse(int g) const {
  if (is_circle()) {
    const int n = circle().quadrature_order();
    return (n - g) % n;
  }
  return finite().inverse(g);
}

int Group::identity() const { return is_circle() ? 0 : finite().identity(); }

std::string Group::name() const {
  return is_circle() ? "S1(N=" + std::to_string(circle().quadrature_order()) + ")" : finite().name();
}

std::vector<int> Group::generators() const {
  if (is_circle()) return circle().quadrature_order() > 1 ? std::vector<int>{1} : std::vector<int>{};
  return finite().generators();
}

GroupPtr make_group(FiniteGroup g) { return std::make_shared<const Group>(std::move(g)); }
GroupPtr make_group(CircleGroup c) { return std::make_shared<const Group>(c); }

GroupPtr preset_group(const std::string& name) {
  static const std::regex pattern(R"(^([ZDS])_?(\d+)$)");
  if (name == "trivial") return make_group(FiniteGroup::cyclic(1));
  if (name == "Q_8" || name == "Q8") return make_group(FiniteGroup::quaternion());
  std::smatch m;
  if (std::regex_match(name, m, pattern)) {
    const int n = std::stoi(m[2].str());
    switch (m[1].str()[0]) {
      case 'Z': return make_group(FiniteGroup::cyclic(n));
      case 'D': return make_group(FiniteGroup::dihedral(n));
      case 'S': return make_group(FiniteGroup::symmetric(n));
      default: break;
    }
  }
  throw InvalidInput("unknown group preset '" + name + "'");
}

}  // namespace equitrans::reps

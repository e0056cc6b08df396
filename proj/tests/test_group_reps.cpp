#include "doctest.h"

#include "equitrans/group_reps.hpp"
#include "equitrans/linalg.hpp"
#include "equitrans/sampling.hpp"

#include <algorithm>
#include <numeric>

using namespace equitrans;
using namespace equitrans::reps;

namespace {

/// Independent oracle: enumerate S_3 as explicit permutations, matching the
/// lexicographic element order of the preset.
std::vector<std::vector<int>> s3_permutations() {
  std::vector<std::vector<int>> out;
  std::vector<int> p{0, 1, 2};
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

MatQ all_ones(int n) { return MatQ::Constant(n, n, Rational(1)); }

MatQ diag2(int a, int b) {
  MatQ m = MatQ::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

bool invariant_subspace(const Representation<double>& rep, const MatD& u) {
  for (const auto& m : rep.matrices()) {
    MatD joined(u.rows(), 2 * u.cols());
    joined << u, m * u;
    if (linalg::rank<double>(joined, 1e-8) != u.cols()) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("group tables are validated") {
  CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1}, {0, 1}}), InvalidInput);
  CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1}, {1, 2}}), InvalidInput);
  const auto z2 = FiniteGroup::from_table({{0, 1}, {1, 0}});
  CHECK(z2.order() == 2);
  CHECK(z2.inverse(1) == 1);
  for (const auto& name : {"Z_5", "D_4", "S_3", "S_4", "Q_8", "D_6"}) {
    const auto g = preset_group(name);
    const auto& fg = g->finite();
    CHECK(fg.closure(fg.generators()).size() == static_cast<std::size_t>(fg.order()));
    for (int a = 0; a < fg.order(); ++a) CHECK(fg.multiply(a, fg.inverse(a)) == fg.identity());
  }
}

TEST_CASE("preset irrep libraries are complete") {
  // Σ dim²/dim End over all real irreducibles equals |G|.
  for (const auto& name : {"Z_2", "Z_3", "Z_4", "Z_5", "Z_6", "D_3", "D_4", "D_5", "S_3", "S_4", "Q_8"}) {
    const auto g = preset_group(name);
    int total = 1;
    for (const auto& ir : nontrivial_irreps<double>(g)) total += ir.dim_v * ir.dim_v / ir.endo_dim;
    CHECK_MESSAGE(total == g->count(), name);
  }
}

TEST_CASE("character examples") {
  const auto z2 = preset_group("Z_2");
  const auto chi_triv = character(trivial_representation<Rational>(z2));
  CHECK(chi_triv == std::vector<Rational>{1, 1});
  const auto sign = irrep_by_label<Rational>(z2, "sign");
  CHECK(character(sign.realization) == std::vector<Rational>{1, -1});

  const auto s3 = preset_group("S_3");
  const auto perms = s3_permutations();
  const auto perm = permutation_representation(s3, perms);
  const auto chi = character(perm);
  for (std::size_t g = 0; g < perms.size(); ++g) {
    int fixed = 0;
    for (int i = 0; i < 3; ++i) fixed += perms[g][static_cast<std::size_t>(i)] == i ? 1 : 0;
    CHECK(chi[g] == Rational(fixed));
  }
}

TEST_CASE("isotypic projector examples") {
  const auto z2 = preset_group("Z_2");
  const Representation<Rational> rep(z2, {MatQ::Identity(2, 2), diag2(1, -1)});
  const auto sign = irrep_by_label<Rational>(z2, "sign");
  CHECK(isotypic_projector(rep, sign) == diag2(0, 1));

  const auto circle = make_group(CircleGroup(64));
  const auto w1 = weight_representation(circle, {1});
  const auto w2 = irrep_by_label<double>(circle, "w2");
  CHECK(is_zero_matrix<double>(isotypic_projector(w1, w2)));

  const auto s3 = preset_group("S_3");
  const auto perm = permutation_representation(s3, s3_permutations());
  const auto standard = irrep_by_label<Rational>(s3, "standard");
  const MatQ p = isotypic_projector(perm, standard);
  const MatQ oracle = MatQ::Identity(3, 3) - all_ones(3) / Rational(3);
  CHECK(p == oracle);
  CHECK(linalg::rank<Rational>(p) == 2);
  CHECK(is_zero_matrix<Rational>(isotypic_projector(perm, irrep_by_label<Rational>(s3, "sign"))));
}

TEST_CASE("isotypic projector rejects foreign irreps") {
  const auto rep = trivial_representation<Rational>(preset_group("Z_2"), 2);
  const auto other = irrep_by_label<Rational>(preset_group("Z_4"), "sign");
  CHECK_THROWS_AS(isotypic_projector(rep, other), InvalidInput);
}

TEST_CASE("fixed projector examples") {
  const auto z2 = preset_group("Z_2");
  CHECK(fixed_projector(trivial_representation<Rational>(z2, 3)) == MatQ::Identity(3, 3));
  CHECK(is_zero_matrix<Rational>(fixed_projector(irrep_by_label<Rational>(z2, "sign").realization)));
  const auto s3 = preset_group("S_3");
  const MatQ p = fixed_projector(permutation_representation(s3, s3_permutations()));
  CHECK(p == all_ones(3) / Rational(3));
  CHECK(linalg::rank<Rational>(p) == 1);
}

TEST_CASE("endomorphism types") {
  CHECK(endo_type(trivial_representation<Rational>(preset_group("S_4"))).type == EndoType::R);
  const auto circle = make_group(CircleGroup(64));
  for (int w = 1; w <= circle->circle().max_weight(); ++w) {
    const auto info = endo_type(weight_representation(circle, {w}));
    CHECK(info.type == EndoType::C);
    CHECK(info.dim == 2);
  }
  const auto q8 = preset_group("Q_8");
  const auto quat = irrep_by_label<Rational>(q8, "quaternion");
  const auto info = endo_type(quat.realization);
  CHECK(info.type == EndoType::H);
  CHECK(info.dim == 4);

  // The commutant is a copy of ℍ: its traceless part consists of pure
  // imaginary quaternions, and orthogonal ones anticommute.
  const auto basis = hom_G_basis(quat.realization, quat.realization);
  REQUIRE(basis.size() == 4);
  std::vector<MatQ> imaginary;
  for (const auto& b : basis) {
    MatQ t = b - MatQ::Identity(4, 4) * (b.trace() / Rational(4));
    if (!is_zero_matrix<Rational>(t)) imaginary.push_back(t);
  }
  REQUIRE(imaginary.size() >= 2);
  const auto inner = [](const MatQ& x, const MatQ& y) { return Rational(-(x * y).trace() / 4); };
  const MatQ& i = imaginary[0];
  MatQ j = imaginary[1] - i * (inner(i, imaginary[1]) / inner(i, i));
  REQUIRE(!is_zero_matrix<Rational>(j));
  CHECK(MatQ(i * j) == MatQ(-(j * i)));
  CHECK(MatQ(i * j - j * i) != MatQ::Zero(4, 4));
}

TEST_CASE("endo type is stable under orthogonal change of basis") {
  sampling::Rng rng(42);
  for (const auto& name : {"S_3", "S_4", "Q_8", "D_4", "Z_4"}) {
    const auto g = preset_group(name);
    for (const auto& ir : nontrivial_irreps<Rational>(g)) {
      const MatQ q = sampling::random_rational_orthogonal(ir.dim_v, rng);
      const auto moved = conjugate<Rational>(ir.realization, q, q.transpose());
      CHECK(endo_type(moved).type == ir.endo_type);
      CHECK(endo_type(orthonormalized(moved)).type == ir.endo_type);
    }
  }
}

TEST_CASE("reducible input is rejected with an invariant subspace") {
  const auto s3 = preset_group("S_3");
  const auto perm = permutation_representation(s3, s3_permutations());
  try {
    (void)endo_type(perm);
    FAIL("expected ReducibleRepresentation");
  } catch (const ReducibleRepresentation& e) {
    const MatD u = e.subspace();
    CHECK(u.cols() >= 1);
    CHECK(u.cols() < 3);
    CHECK(invariant_subspace(to_float(perm), u));
  }
  // Two copies of the same irreducible.
  const auto std2 = irrep_by_label<Rational>(s3, "standard").realization;
  CHECK_THROWS_AS(endo_type(direct_sum(std2, std2)), ReducibleRepresentation);

  // Custom group without an irrep library: symmetric-part certificate.
  const auto custom = make_group(FiniteGroup::from_table({{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}));
  std::vector<MatD> cyc;
  for (int k = 0; k < 3; ++k) {
    MatD m = MatD::Zero(3, 3);
    for (int i = 0; i < 3; ++i) m((i + k) % 3, i) = 1;
    cyc.push_back(m);
  }
  const Representation<double> cyc_rep(custom, cyc);
  try {
    (void)endo_type(cyc_rep);
    FAIL("expected ReducibleRepresentation");
  } catch (const ReducibleRepresentation& e) {
    CHECK(invariant_subspace(cyc_rep, e.subspace()));
  }
}

TEST_CASE("hom_G_basis examples") {
  const auto z2 = preset_group("Z_2");
  const auto sign = irrep_by_label<Rational>(z2, "sign").realization;
  CHECK(hom_G_basis(sign, trivial_representation<Rational>(z2)).empty());

  const auto circle = make_group(CircleGroup(64));
  for (int w = 1; w <= 5; ++w) {
    const auto plane = weight_representation(circle, {w});
    CHECK(hom_G_basis(plane, plane).size() == 2);
  }
  const auto s3 = preset_group("S_3");
  const auto standard = irrep_by_label<Rational>(s3, "standard").realization;
  CHECK(hom_G_basis(standard, standard).size() == 1);
}

TEST_CASE("hom_G_basis maps are equivariant and independent") {
  sampling::Rng rng(9);
  for (const auto& name : {"S_3", "D_4", "Q_8"}) {
    const auto g = preset_group(name);
    for (int trial = 0; trial < 3; ++trial) {
      const auto v = sampling::random_representation<Rational>(g, 6, rng);
      const auto w = sampling::random_representation<Rational>(g, 6, rng);
      const auto basis = hom_G_basis(v, w);
      for (const auto& t : basis)
        for (int e = 0; e < g->count(); ++e) CHECK(MatQ(w(e) * t) == MatQ(t * v(e)));
      MatQ stacked(v.dim() * w.dim(), static_cast<Eigen::Index>(basis.size()));
      for (std::size_t k = 0; k < basis.size(); ++k)
        stacked.col(static_cast<Eigen::Index>(k)) = Eigen::Map<const VecQ>(basis[k].data(), basis[k].size());
      CHECK(linalg::rank<Rational>(stacked) == static_cast<int>(basis.size()));
      // Dimension agrees with the character count Σ mult_V mult_W dim End.
      const auto chi_v = character(v), chi_w = character(w);
      CHECK(character_inner(chi_v, chi_w) == Rational(static_cast<long long>(basis.size())));
    }
  }
}

TEST_CASE("character orthogonality relations") {
  for (const auto& name : {"Z_2", "Z_3", "Z_4", "Z_6", "S_3", "S_4", "Q_8", "D_4"}) {
    const auto g = preset_group(name);
    std::vector<Irrep<Rational>> all{trivial_irrep<Rational>(g)};
    for (auto& ir : nontrivial_irreps<Rational>(g)) all.push_back(ir);
    for (std::size_t a = 0; a < all.size(); ++a)
      for (std::size_t b = 0; b < all.size(); ++b) {
        const Rational expected = a == b ? Rational(all[a].endo_dim) : Rational(0);
        CHECK(character_inner(all[a].character, all[b].character) == expected);
      }
  }
  const auto circle = make_group(CircleGroup(64));
  const auto irreps = nontrivial_irreps<double>(circle);
  for (std::size_t a = 0; a < irreps.size(); ++a)
    for (std::size_t b = 0; b < irreps.size(); ++b)
      CHECK(std::abs(character_inner(irreps[a].character, irreps[b].character) - (a == b ? 2.0 : 0.0)) < 1e-10);
}

TEST_CASE("exact mode refuses irrational characters") {
  CHECK_THROWS_AS(nontrivial_irreps<Rational>(preset_group("Z_5")), InvalidInput);
  CHECK_NOTHROW(nontrivial_irreps<double>(preset_group("Z_5")));
  CHECK_THROWS_AS(weight_representation(make_group(CircleGroup(8)), {2}), InvalidInput);
}

TEST_CASE("projector identities on random representations") {
  sampling::Rng rng(2024);
  for (const auto& name : {"Z_3", "S_3", "Q_8", "D_4"}) {
    const auto g = preset_group(name);
    for (int trial = 0; trial < 4; ++trial) {
      const auto rep = sampling::random_representation<Rational>(g, 8, rng);
      const auto dec = decompose(rep);
      CHECK(dec.complete);
      int rank_sum = dec.fixed_rank;
      for (const auto& piece : dec.pieces) {
        CHECK(MatQ(piece.projector * piece.projector) == piece.projector);
        rank_sum += piece.rank;
        CHECK(piece.rank % piece.irrep.dim_v == 0);
      }
      CHECK(rank_sum == rep.dim());
      // Serial and parallel projectors agree.
      const auto fl = orthonormalized(rep);
      for (auto& ir : nontrivial_irreps<double>(g))
        CHECK(isotypic_projector(fl, ir, kernels::Backend::serial) == isotypic_projector(fl, ir, kernels::Backend::parallel));
    }
  }
}

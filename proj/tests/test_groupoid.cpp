#include "doctest.h"

#include "equitrans/groupoid.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace equitrans;
using namespace equitrans::groupoid;
using reps::FiniteGroup;

namespace {

/// Z_n acting on n points by rotation.
std::vector<std::vector<int>> rotations(int n) {
  std::vector<std::vector<int>> perm(n, std::vector<int>(n));
  for (int g = 0; g < n; ++g)
    for (int x = 0; x < n; ++x) perm[g][x] = (g + x) % n;
  return perm;
}

std::vector<std::vector<int>> trivial_perm(int order, int n) {
  std::vector<int> id(n);
  for (int x = 0; x < n; ++x) id[x] = x;
  return std::vector<std::vector<int>>(order, id);
}

/// Automorphism table of Z_n given by multiplication with a unit.
std::vector<int> scale(int n, int u) {
  std::vector<int> out(n);
  for (int h = 0; h < n; ++h) out[h] = (u * h) % n;
  return out;
}

}  // namespace

TEST_CASE("translation groupoids") {
  const auto discrete = make_translation_groupoid(FiniteGroup::cyclic(1), trivial_perm(1, 4));
  discrete.groupoid.validate();
  CHECK(discrete.groupoid.morphism_count() == 4);
  for (int x = 0; x < 4; ++x) CHECK(discrete.groupoid.stab(x) == std::vector<int>{x});

  const auto free = make_translation_groupoid(FiniteGroup::cyclic(2), rotations(2));
  free.groupoid.validate();
  CHECK(free.groupoid.morphism_count() == 4);
  CHECK(free.groupoid.stab(0).size() == 1);
  const auto comp = free.groupoid.components();
  CHECK(comp[0] == comp[1]);

  const auto point = make_translation_groupoid(FiniteGroup::cyclic(2), trivial_perm(2, 1));
  CHECK(point.groupoid.stab(0).size() == 2);

  std::vector<std::vector<int>> broken = rotations(3);
  broken[1] = {0, 2, 1};
  CHECK_THROWS_AS(make_translation_groupoid(FiniteGroup::cyclic(3), broken), InvalidInput);
}

TEST_CASE("orbit sets and properness") {
  const auto discrete = make_translation_groupoid(FiniteGroup::cyclic(1), trivial_perm(1, 3));
  CHECK(orbit_set(discrete.groupoid, 1, {1}) == std::vector<int>{1});
  CHECK(properness_check(discrete.groupoid, {{0, {0}}, {2, {2}}}).pass);

  const auto point = make_translation_groupoid(FiniteGroup::cyclic(2), trivial_perm(2, 1));
  CHECK(orbit_set(point.groupoid, 0, {0}).size() == 2);

  const auto z3 = make_translation_groupoid(FiniteGroup::cyclic(3), rotations(3));
  CHECK(orbit_set(z3.groupoid, 0, {0, 1, 2}).size() == 3);
  CHECK(properness_check(z3.groupoid, {{0, {0}}, {1, {1}}}).pass);
  // The whole orbit as a uniformizer of a point with trivial isotropy.
  const auto whole = properness_check(z3.groupoid, {{0, {0, 1, 2}}});
  CHECK_FALSE(whole.pass);

  // Z_2 flipping {a, b} and fixing c: isotropy 2 at c, 1 at a, b.
  std::vector<std::vector<int>> flip{{0, 1, 2}, {1, 0, 2}};
  const auto mixed = make_translation_groupoid(FiniteGroup::cyclic(2), flip);
  CHECK(properness_check(mixed.groupoid, {{2, {2}}}).pass);
  const auto rep = properness_check(mixed.groupoid, {{2, {2, 0}}});
  CHECK_FALSE(rep.pass);
  REQUIRE(rep.failures.size() == 1);
  CHECK(rep.failures[0].y == 0);
  CHECK(rep.failures[0].orbit_set_size == 1);
  CHECK(rep.failures[0].stab_size == 2);
  CHECK_THROWS_AS(properness_check(mixed.groupoid, {{2, {0}}}), InvalidInput);
}

TEST_CASE("effective part") {
  // Z_4 on {pt, a, b, c, d}: generator fixes pt, cycles (a b c d).
  std::vector<std::vector<int>> perm(4, std::vector<int>(5));
  for (int g = 0; g < 4; ++g) {
    perm[g][0] = 0;
    for (int i = 0; i < 4; ++i) perm[g][1 + i] = 1 + (i + g) % 4;
  }
  const auto faithful = make_translation_groupoid(FiniteGroup::cyclic(4), perm);
  const auto eff = effective_part(faithful.groupoid, translation_local_action(faithful, 0, {1, 2, 3, 4}));
  CHECK(eff.order() == 4);
  CHECK(eff.kernel.size() == 1);

  // Z_4 acting through Z_2: generator swaps a and b.
  std::vector<std::vector<int>> through(4, std::vector<int>(3));
  for (int g = 0; g < 4; ++g) through[g] = g % 2 ? std::vector<int>{0, 2, 1} : std::vector<int>{0, 1, 2};
  const auto z4 = make_translation_groupoid(FiniteGroup::cyclic(4), through);
  const auto half = effective_part(z4.groupoid, translation_local_action(z4, 0, {1, 2}));
  CHECK(half.order() == 2);
  CHECK(half.kernel.size() == 2);

  const auto silent = make_translation_groupoid(FiniteGroup::cyclic(2), trivial_perm(2, 3));
  CHECK(effective_part(silent.groupoid, translation_local_action(silent, 0, {1, 2})).order() == 1);

  CHECK_THROWS_AS(translation_local_action(faithful, 0, {1, 2}), InvalidInput);
  LocalAction bogus = translation_local_action(z4, 0, {1, 2});
  bogus.image.begin()->second = {1, 1};
  CHECK_THROWS_AS(effective_part(z4.groupoid, bogus), InvalidInput);
}

TEST_CASE("quotient groupoids") {
  SUBCASE("free action on two points") {
    const auto x = make_translation_groupoid(FiniteGroup::cyclic(1), trivial_perm(1, 2));
    const auto g = FiniteGroup::cyclic(2);
    const auto act = GlobalAction::on_translation(x, g, {{0, 1}, {1, 0}}, {{0}, {0}});
    const auto q = quotient_groupoid(x.groupoid, act, {0});
    CHECK(q.groupoid.object_count() == 1);
    CHECK(q.stab_q[0] == 1);
    CHECK(q.cardinality_law());
    CHECK_THROWS_AS(quotient_groupoid(x.groupoid, GlobalAction::trivial(x.groupoid), {0}), InvalidInput);
  }
  SUBCASE("fixed object, stab^eff = Z_3 and G_x = Z_2") {
    const auto x = make_translation_groupoid(FiniteGroup::cyclic(3), trivial_perm(3, 1));
    const auto g = FiniteGroup::cyclic(2);
    const auto act = GlobalAction::on_translation(x, g, {{0}, {0}}, {scale(3, 1), scale(3, 2)});
    const auto q = quotient_groupoid(x.groupoid, act, {0});
    CHECK(q.stab_eff[0] == 3);
    CHECK(q.g_x[0] == 2);
    CHECK(q.stab_q[0] == 6);
    CHECK(q.cardinality_law());
  }
  SUBCASE("trivial G effectivizes") {
    std::vector<std::vector<int>> through(4, std::vector<int>(3));
    for (int h = 0; h < 4; ++h) through[h] = h % 2 ? std::vector<int>{0, 2, 1} : std::vector<int>{0, 1, 2};
    const auto x = make_translation_groupoid(FiniteGroup::cyclic(4), through);
    std::vector<std::vector<int>> kernels;
    for (int o = 0; o < 3; ++o) kernels.push_back(effective_part(x.groupoid, translation_local_action(x, o, {1, 2})).kernel);
    const auto q = quotient_groupoid(x.groupoid, GlobalAction::trivial(x.groupoid), {0, 1}, kernels);
    CHECK(q.stab_q[0] == 2);
    CHECK(q.stab_q[1] == 1);
    CHECK(q.stab_eff == q.stab_q);
    CHECK(q.cardinality_law());
  }
  SUBCASE("incompatible kernels") {
    const auto x = make_translation_groupoid(FiniteGroup::cyclic(2), rotations(2));
    // Kernels are units here, but declare a non-subgroup set.
    CHECK_THROWS_AS(quotient_groupoid(x.groupoid, GlobalAction::trivial(x.groupoid), {0}, {{0, 1}, {1}}), InvalidInput);
  }
  SUBCASE("functoriality is enforced") {
    const auto x = make_translation_groupoid(FiniteGroup::cyclic(3), rotations(3));
    // σ = identity with α = inversion does not commute with targets.
    CHECK_THROWS_AS(GlobalAction::on_translation(x, FiniteGroup::cyclic(2), {{0, 1, 2}, {0, 1, 2}}, {scale(3, 1), scale(3, 2)}),
                    InvalidInput);
    // σ = negation with α = inversion does.
    const auto act = GlobalAction::on_translation(x, FiniteGroup::cyclic(2), {{0, 1, 2}, {0, 2, 1}}, {scale(3, 1), scale(3, 2)});
    const auto q = quotient_groupoid(x.groupoid, act, {0});
    CHECK(q.cardinality_law());
    CHECK(q.stab_q[0] == 2);
  }
}

TEST_CASE("regularity condition") {
  // Z_2 swapping a ↔ b and fixing c, seen from the fixed point pt.
  std::vector<std::vector<int>> perm{{0, 1, 2, 3}, {0, 2, 1, 3}};
  const auto x = make_translation_groupoid(FiniteGroup::cyclic(2), perm);
  const auto act = translation_local_action(x, 0, {0, 1, 2, 3});
  // The flip fixes {pt, c} but not the whole uniformizer.
  const auto bad = regularity_check(x.groupoid, {{act, {{0, 3}}}});
  CHECK_FALSE(bad.pass);
  const auto good = regularity_check(x.groupoid, {{act, {{0, 1}}}});
  CHECK(good.pass);

  const auto silent = make_translation_groupoid(FiniteGroup::cyclic(1), trivial_perm(1, 2));
  CHECK(regularity_check(silent.groupoid, {{translation_local_action(silent, 0, {0, 1}), {{0}}}}).pass);
}

TEST_CASE("quotient metric") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-3.0, 3.0);

  SUBCASE("trivial group") {
    std::vector<VecD> pts;
    for (int i = 0; i < 6; ++i) pts.push_back(VecD::Constant(1, u(rng)));
    const auto qm = quotient_metric(pts, PointAction::finite({MatD::Identity(1, 1)}));
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) CHECK(qm.d_quotient(i, j) == euclidean(pts[i], pts[j]));
  }
  SUBCASE("Z_2 negation") {
    const auto neg = PointAction::finite({MatD::Identity(1, 1), -MatD::Identity(1, 1)});
    for (int t = 0; t < 100; ++t) {
      const double a = u(rng), b = u(rng);
      const VecD x = VecD::Constant(1, a), y = VecD::Constant(1, b);
      CHECK(quotient_distance(x, y, neg) == std::min(std::abs(a - b), std::abs(a + b)));
      CHECK(averaged_distance(-x, -y, neg) == averaged_distance(x, y, neg));
    }
  }
  SUBCASE("circle rotations") {
    const auto rot = PointAction::circle({1}, 64);
    std::vector<VecD> pts;
    for (int i = 0; i < 8; ++i) pts.push_back(VecD(Eigen::Vector2d(u(rng), u(rng))));
    const auto qm = quotient_metric(pts, rot);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) {
        CHECK(qm.d_g(i, j) == doctest::Approx(euclidean(pts[i], pts[j])).epsilon(1e-12));
        CHECK(std::abs(qm.d_quotient(i, j) - std::abs(pts[i].norm() - pts[j].norm())) < 1e-8);
        for (int k = 0; k < 8; ++k) CHECK(qm.d_quotient(i, k) <= qm.d_quotient(i, j) + qm.d_quotient(j, k) + 1e-8);
      }
    const MatD g = rot.rotation(0.37);
    CHECK(std::abs(averaged_distance(g * pts[0], g * pts[1], rot) - averaged_distance(pts[0], pts[1], rot)) < 1e-8);
  }
  SUBCASE("bad metric") {
    const Metric squared = [](const VecD& a, const VecD& b) { return (a - b).squaredNorm(); };
    std::vector<VecD> pts{VecD::Constant(1, 0.0), VecD::Constant(1, 1.0), VecD::Constant(1, 2.0)};
    CHECK_THROWS_AS(quotient_metric(pts, PointAction::finite({MatD::Identity(1, 1)}), squared), InvalidInput);
  }
}

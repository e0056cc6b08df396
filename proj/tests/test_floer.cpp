#include "doctest.h"

#include "equitrans/floer.hpp"

using namespace equitrans;
using namespace equitrans::floer;

namespace {

HomologyLattice rank_one(int omega, int c1) { return {{Rational(omega)}, {c1}}; }

Novikov q(int k, const Rational& c = 1) { return Novikov::monomial({k}, c); }

FloerComplex two_generators(long long count) {
  FloerComplex c;
  c.lattice = rank_one(1, 2);
  c.generators.half_dim = 1;
  c.generators.gens = {{"x", 0, Rational(0)}, {"y", 1, Rational(1)}};
  if (count != 0) c.counts[CountKey{0, 1, {0}}] = count;
  return c;
}

}  // namespace

TEST_CASE("Novikov arithmetic") {
  const auto lat = rank_one(2, 3);
  const Novikov one = q(0);
  const Novikov a = q(1, 3) + q(2, Rational(-1, 2));
  CHECK(multiply(one, a, lat) == a);
  CHECK(multiply(a, one, lat) == a);
  CHECK(lat.degree({1}) == 6);
  CHECK(multiply(q(1), q(2), lat) == q(3));
  CHECK(lat.degree({3}) == lat.degree({1}) + lat.degree({2}));
  CHECK((a - a).is_zero());
  CHECK(to_string(Novikov()) == "0");
  CHECK(to_string(q(0) - q(1)) == "1 - q^[1]");

  SUBCASE("geometric series") {
    const Novikov x = q(0) - q(1);
    const Novikov inv = invert_truncated(x, lat, Rational(10));  // 5ω(A)
    Novikov expected;
    for (int k = 0; k <= 5; ++k) expected += q(k);
    CHECK(inv == expected);
    CHECK(truncate(multiply(x, inv, lat), lat, Rational(10)) == one);
    CHECK(multiply(x, inv, lat) == one - q(6));
  }
  SUBCASE("leading term off the origin") {
    const Novikov x = q(-1, 2) + q(1, 5);
    const Rational cutoff(9);
    const Novikov inv = invert_truncated(x, lat, cutoff);
    CHECK(truncate(multiply(x, inv, lat), lat, cutoff) == one);
  }
  SUBCASE("failures") {
    CHECK_THROWS_AS(invert_truncated(Novikov(), lat, Rational(1)), InvalidInput);
    CHECK_THROWS_AS(invert_truncated(q(3), lat, Rational(1)), Indeterminate);
    const HomologyLattice flat{{Rational(1), Rational(1)}, {0, 0}};
    const Novikov tie = Novikov::monomial({1, 0}) + Novikov::monomial({0, 1});
    CHECK_THROWS_AS(invert_truncated(tie, flat, Rational(5)), Indeterminate);
  }
}

TEST_CASE("differential from counts") {
  CHECK(build_differential(two_generators(0)).data == NovikovMatrix(2, 2).data);
  const auto delta = build_differential(two_generators(1));
  CHECK(delta(0, 1) == q(0));
  CHECK(check_d_squared(delta, rank_one(1, 2)).pass);

  auto bad = two_generators(0);
  bad.counts[CountKey{0, 1, {1}}] = 1;  // index 4
  CHECK_THROWS_AS(build_differential(bad), InvalidInput);
  auto uphill = two_generators(0);
  uphill.counts[CountKey{1, 0, {0}}] = 1;  // energy −1
  CHECK_THROWS_AS(build_differential(uphill), InvalidInput);

  // Circle with two minima and two maxima: each maximum flows to both
  // neighbouring minima with opposite signs.
  FloerComplex circle;
  circle.lattice = rank_one(1, 0);
  circle.generators.half_dim = 1;
  circle.generators.gens = {{"m1", 0, Rational(0)}, {"m2", 0, Rational(0)}, {"M1", 1, Rational(1)}, {"M2", 1, Rational(1)}};
  circle.counts = {{CountKey{0, 2, {0}}, 1}, {CountKey{1, 2, {0}}, -1}, {CountKey{1, 3, {0}}, 1}, {CountKey{0, 3, {0}}, -1}};
  const auto d = build_differential(circle);
  CHECK(d(0, 2) == q(0));
  CHECK(d(1, 2) == q(0, -1));
  const auto ranks = cohomology_rank(circle, Rational(10));
  CHECK(ranks.ranks.at(1) == 1);
  CHECK(ranks.ranks.at(2) == 1);
  CHECK(ranks.differential_rank == 1);

  FloerComplex messy = circle;
  messy.generators.gens[0].value = Rational(5);
  CHECK_THROWS_AS(messy.validate(), InvalidInput);
}

TEST_CASE("synthetic coherent tables") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto syn = make_coherent_complex(seed);
    const auto delta = build_differential(syn.complex);
    CHECK(check_d_squared(delta, syn.complex.lattice).pass);
    const auto coh = coherence_validate(syn.complex, syn.strata);
    CHECK(coh.pass);
    // Rank–nullity over Λ.
    const auto ranks = cohomology_rank(syn.complex, Rational(100));
    CHECK(ranks.total() + 2 * ranks.differential_rank == syn.complex.generators.size());
    CHECK(ranks.differential_rank == specialized_rank(delta, {Rational(1, 2), Rational(1, 3)}));
  }

  SUBCASE("injected defect") {
    auto syn = make_coherent_complex(3, 2, 4, 0);
    const auto delta = build_differential(syn.complex);
    REQUIRE(check_d_squared(delta, syn.complex.lattice).pass);
    // Bump a count that feeds a nonzero breaking.
    REQUIRE(!syn.strata.empty());
    const CountKey victim = syn.strata.front().outer;
    syn.complex.counts[victim] += 1;
    const auto res = check_d_squared(build_differential(syn.complex), syn.complex.lattice);
    CHECK_FALSE(res.pass);
    CHECK((res.x == victim.x || res.z == victim.y));
    CHECK_FALSE(coherence_validate(syn.complex, syn.strata).pass);
  }
}

TEST_CASE("coherence validation") {
  FloerComplex c;
  c.lattice = rank_one(5, 1);
  c.generators.half_dim = 1;
  c.generators.gens = {{"x", 0, Rational(0)}, {"y", 1, Rational(1)}, {"z", 2, Rational(2)}};
  c.counts = {{CountKey{0, 1, {0}}, 2}, {CountKey{1, 2, {0}}, -3}};
  CHECK(coherence_validate(c, {}).pass);

  const BrokenStratum good{CountKey{0, 2, {0}}, CountKey{0, 1, {0}}, CountKey{1, 2, {0}}, -6};
  const auto ok = coherence_validate(c, {good});
  CHECK(ok.pass);
  CHECK(ok.strata_checked == 1);

  BrokenStratum wrong_product = good;
  wrong_product.declared = 6;
  CHECK_FALSE(coherence_validate(c, {wrong_product}).pass);

  // A₁ + A₂ = 0 but the stratum claims class [1].
  BrokenStratum wrong_class = good;
  wrong_class.target.a = {1};
  const auto bad = coherence_validate(c, {wrong_class});
  CHECK_FALSE(bad.pass);
  bool mentions = false;
  for (const auto& f : bad.failures) mentions = mentions || f.find("is not [0] + [0]") != std::string::npos;
  CHECK(mentions);

  // The target has a breaking with no label.
  FloerComplex extra = c;
  extra.generators.gens.push_back({"y2", 1, Rational(1)});
  extra.counts[CountKey{0, 3, {0}}] = 1;
  extra.counts[CountKey{3, 2, {0}}] = 6;
  CHECK_THROWS_AS(coherence_validate(extra, {good}), InvalidInput);
}

TEST_CASE("autonomous reduction") {
  for (const auto& name : toy_model_names()) {
    CAPTURE(name);
    const auto model = toy_model(name);
    auto reduced = model.complex;
    reduced.counts = autonomous_reduce(model.complex, model.morse);
    const auto delta = build_differential(reduced);
    CHECK(equals_morse_tensor(delta, model.morse, reduced.lattice));
    // Idempotent.
    auto twice = reduced;
    twice.counts = autonomous_reduce(reduced, model.morse);
    CHECK(twice.counts == reduced.counts);

    const auto ranks = cohomology_rank(reduced, Rational(20));
    std::map<int, int> expected;
    for (const auto& [deg, b] : model.betti) expected[ranks.modulus ? deg % ranks.modulus : deg] += b;
    CHECK(ranks.ranks == expected);
    CHECK(reduced.generators.size() >= ranks.total());
    if (model.perfect) CHECK(reduced.generators.size() == ranks.total());
  }

  // Spurious q^A entries on T² change the answer until they are removed.
  const auto t2 = toy_model("T2");
  CHECK(cohomology_rank(t2.complex, Rational(20)).total() == 0);
  CHECK_FALSE(equals_morse_tensor(build_differential(t2.complex), t2.morse, t2.complex.lattice));
}

TEST_CASE("cohomology over Λ") {
  FloerComplex free4;
  free4.lattice = rank_one(1, 0);
  free4.generators.half_dim = 1;
  free4.generators.gens = {{"a", 2, Rational(2)}, {"b", 1, Rational(1)}, {"c", 1, Rational(1)}, {"d", 0, Rational(0)}};
  const auto r = cohomology_rank(free4, Rational(5));
  CHECK(r.ranks == std::map<int, int>{{0, 1}, {1, 2}, {2, 1}});

  // δx = (1 − q^A) y is a unit multiple: nothing survives.
  FloerComplex unit;
  unit.lattice = rank_one(1, 0);
  unit.generators.half_dim = 1;
  unit.generators.gens = {{"y", 0, Rational(0)}, {"x", 1, Rational(1)}};
  unit.counts = {{CountKey{0, 1, {0}}, 1}, {CountKey{0, 1, {1}}, -1}};
  const auto ur = cohomology_rank(unit, Rational(5));
  CHECK(ur.ranks.at(1) == 0);
  CHECK(ur.ranks.at(2) == 0);
  CHECK(specialized_rank(build_differential(unit), {Rational(1, 2)}) == 1);

  // Two pivots of equal energy in different classes cannot be certified.
  FloerComplex tie;
  tie.lattice = {{Rational(1), Rational(1)}, {0, 0}};
  tie.generators.half_dim = 1;
  tie.generators.gens = {{"y", 0, Rational(0)}, {"x", 1, Rational(1)}};
  tie.counts = {{CountKey{0, 1, {1, 0}}, 1}, {CountKey{0, 1, {0, 1}}, 1}};
  CHECK_THROWS_WITH_AS(cohomology_rank(tie, Rational(5)), doctest::Contains("(y, x)"), Indeterminate);
}

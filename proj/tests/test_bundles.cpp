#include "doctest.h"

#include "equitrans/extension.hpp"
#include "equitrans/linalg.hpp"

using namespace equitrans;
using namespace equitrans::bundles;
using reps::Representation;

namespace {

reps::GroupPtr circle() { return reps::make_group(reps::CircleGroup(64)); }
reps::GroupPtr z2() { return reps::preset_group("Z_2"); }

/// Z_2 acting by +1 on the first `plus` coordinates and -1 on the next `minus`.
template <class S>
Representation<S> z2_signs(int plus, int minus) {
  Mat<S> flip = Mat<S>::Identity(plus + minus, plus + minus);
  for (int i = plus; i < plus + minus; ++i) flip(i, i) = S(-1);
  return Representation<S>(z2(), {Mat<S>::Identity(plus + minus, plus + minus), flip});
}

Representation<double> trivial_fiber(int rank) {
  return reps::trivial_representation<double>(reps::preset_group("trivial"), rank);
}

Section constant_section(int vertices, const VecD& value) {
  Section s = Section::undefined(vertices);
  for (auto& v : s.vertex) v = value;
  return s;
}

double min_norm_over(const GBundle<double>& b, const Section& s, const Simplex& simplex) {
  double m = 1e300;
  for (const auto& p : sample_grid(static_cast<int>(simplex.size()) - 1)) m = std::min(m, evaluate(b, s, simplex, p).norm());
  return m;
}

double worst_quality(const GBundle<double>& b, const PureSpace& pure, const Frame& f) {
  double q = 1e300;
  for (const auto& sigma : b.base().simplices())
    for (const auto& p : sample_grid(static_cast<int>(sigma.size()) - 1)) q = std::min(q, frame_quality(b, pure, f, sigma, p));
  return q;
}

MatD unit(int n, int i) { return MatD::Identity(n, n).col(i); }

}  // namespace

TEST_CASE("simplicial bases close under faces and count components") {
  const auto tri = SimplicialBase::standard_simplex(2);
  CHECK(tri.simplices().size() == 7);
  CHECK(tri.dimension() == 2);
  CHECK(tri.component_count() == 1);
  const auto pts = SimplicialBase::points(3);
  CHECK(pts.component_count() == 3);
  const auto ring = SimplicialBase::circle(5);
  CHECK(ring.of_dimension(1).size() == 5);
  CHECK(ring.maximal_simplices().size() == 5);
  CHECK_THROWS_AS(SimplicialBase(2, {{0, 0}}), InvalidInput);
  CHECK(sample_grid(1).size() >= 100);
  CHECK(sample_grid(2).size() >= 100);
  CHECK(sample_grid(3).size() >= 1000);
}

TEST_CASE("bundle validation rejects bad transitions") {
  const auto base = SimplicialBase::interval(1);
  MatQ swap = MatQ::Zero(2, 2);
  swap(0, 1) = 1;
  swap(1, 0) = 1;
  // Swapping the trivial and sign lines is not equivariant.
  CHECK_THROWS_WITH_AS(GBundle<Rational>(base, z2_signs<Rational>(1, 1), {{{0, 1}, swap}}), doctest::Contains("(0,1)"),
                       InvalidInput);
  // Cocycle failure on a triangle.
  MatD minus = -MatD::Identity(1, 1);
  CHECK_THROWS_AS(GBundle<double>(SimplicialBase::standard_simplex(2), trivial_fiber(1), {{{0, 1}, minus}}), InvalidInput);
  GBundle<double> twisted(SimplicialBase::standard_simplex(2), trivial_fiber(1), {{{0, 1}, minus}, {{0, 2}, minus}});
  CHECK(twisted.transition(1, 0)(0, 0) == -1.0);
  CHECK_THROWS_AS((void)GBundle<double>(SimplicialBase::points(2), trivial_fiber(1)).transition(0, 1), InvalidInput);
}

TEST_CASE("decompose_bundle examples") {
  SUBCASE("trivial group") {
    GBundle<double> b(SimplicialBase::interval(2), trivial_fiber(3));
    const auto split = decompose_bundle(b);
    REQUIRE(split.components.size() == 1);
    CHECK(split.components[0].fixed_rank == 3);
    CHECK(split.components[0].ranks.empty());
  }
  SUBCASE("Z_2 trivial plus sign, exact") {
    MatQ minus = -MatQ::Identity(2, 2);
    GBundle<Rational> b(SimplicialBase::interval(1), z2_signs<Rational>(1, 1), {{{0, 1}, minus}});
    const auto split = decompose_bundle(b);
    CHECK(split.components[0].fixed_rank == 1);
    CHECK(split.components[0].ranks.at("sign") == 1);
    MatQ sum = split.fiberwise.fixed;
    for (const auto& piece : split.fiberwise.pieces) sum += piece.projector;
    CHECK(sum == MatQ::Identity(2, 2));
  }
  SUBCASE("circle weights 1 and 2") {
    GBundle<double> b(SimplicialBase::interval(1), reps::weight_representation(circle(), {1, 2}));
    const auto split = decompose_bundle(b);
    CHECK(split.components[0].fixed_rank == 0);
    CHECK(split.components[0].ranks.at("w1") == 2);
    CHECK(split.components[0].ranks.at("w2") == 2);
    CHECK(split.components[0].ranks.size() == 2);
  }
  SUBCASE("ranks reported per component") {
    GBundle<double> b(SimplicialBase::points(3), reps::weight_representation(circle(), {0, 3}));
    CHECK(decompose_bundle(b).components.size() == 3);
  }
}

TEST_CASE("equivariant averaging of bundle maps") {
  GBundle<Rational> b(SimplicialBase::interval(1), z2_signs<Rational>(1, 1));
  MatQ raw(2, 2);
  raw << Rational(2), Rational(5), Rational(-3), Rational(7);
  const auto avg = equivariant_average_bundle_map(b, {raw, raw});
  CHECK(avg[0](0, 1) == 0);
  CHECK(avg[0](1, 0) == 0);
  CHECK(avg[0](0, 0) == 2);
  CHECK(avg[0](1, 1) == 7);
  // Idempotent and fixes equivariant input.
  CHECK(equivariant_average_bundle_map(b, avg) == avg);
  const MatQ rho = b.fiber()(1);
  CHECK(equivariant_average_bundle_map(b, {rho, rho})[1] == rho);

  GBundle<double> c(SimplicialBase::interval(1), reps::weight_representation(circle(), {1}));
  const MatD h = c.fiber()(5);
  CHECK(approx_equal<double>(equivariant_average_bundle_map(c, {h, h})[0], h));
  CHECK_THROWS_AS(equivariant_average_bundle_map(c, {h}), InvalidInput);
}

TEST_CASE("invariant complements") {
  SUBCASE("whole bundle") {
    GBundle<Rational> b(SimplicialBase::interval(1), z2_signs<Rational>(1, 1));
    const auto c = invariant_complement(b, Subbundle<Rational>{{MatQ::Identity(2, 2), MatQ::Identity(2, 2)}});
    CHECK(c.complement.basis[0].cols() == 0);
    CHECK(c.projector_perp[1] == MatQ::Zero(2, 2));
  }
  SUBCASE("fixed part of trivial plus sign") {
    GBundle<Rational> b(SimplicialBase::interval(1), z2_signs<Rational>(1, 1));
    const MatQ e0 = MatQ::Identity(2, 2).col(0);
    const auto c = invariant_complement(b, Subbundle<Rational>{{e0, e0}});
    REQUIRE(c.complement.basis[0].cols() == 1);
    CHECK(c.complement.basis[0](0, 0) == 0);
    CHECK(c.complement.basis[0](1, 0) != 0);
  }
  SUBCASE("random invariant plane in two weight-1 copies") {
    GBundle<double> b(SimplicialBase::interval(2), reps::weight_representation(circle(), {1, 1, 2}));
    const PureSpace pure(b, "w1");
    sampling::Rng rng(7);
    const MatD f = pure.equivariant_map(pure.random_pure(rng));
    const auto c = invariant_complement(b, Subbundle<double>{{f, f, f}});
    for (int v = 0; v < 3; ++v) {
      CHECK(approx_equal<double>(MatD(c.projector_f[v] + c.projector_perp[v]), MatD::Identity(6, 6)));
      CHECK(approx_equal<double>(MatD(c.projector_f[v] * c.projector_f[v]), c.projector_f[v]));
      for (const auto& g : b.fiber().matrices())
        CHECK(approx_equal<double>(MatD(g * c.projector_perp[v]), MatD(c.projector_perp[v] * g)));
      CHECK(c.complement.basis[v].cols() == 4);
    }
  }
  SUBCASE("rank jump and non-invariant fibers") {
    GBundle<Rational> b(SimplicialBase::interval(1), z2_signs<Rational>(1, 1));
    const MatQ e0 = MatQ::Identity(2, 2).col(0);
    CHECK_THROWS_WITH_AS(invariant_complement(b, Subbundle<Rational>{{e0, MatQ::Identity(2, 2)}}),
                         doctest::Contains("vertices 0 and 1"), InvalidInput);
    MatQ diag(2, 1);
    diag << Rational(1), Rational(1);
    CHECK_THROWS_AS(invariant_complement(b, Subbundle<Rational>{{diag, diag}}), InvalidInput);
  }
}

TEST_CASE("pure subspace reproduces one copy per vector") {
  GBundle<double> b(SimplicialBase::points(1), reps::weight_representation(circle(), {1, 1, 1, 2}));
  const PureSpace pure(b, "w1");
  CHECK(pure.copies() == 3);
  CHECK(pure.basis().cols() == 6);  // copies times dim End = 3 * 2
  sampling::Rng rng(3);
  for (int t = 0; t < 5; ++t) {
    const VecD s = pure.random_pure(rng);
    const MatD map = pure.equivariant_map(s);
    CHECK((map.col(0) - s).norm() < 1e-10);
    CHECK(approx_equal<double>(MatD(map.transpose() * map), MatD::Identity(2, 2)));
    for (int g = 0; g < 64; g += 7)
      CHECK(approx_equal<double>(MatD(b.fiber()(g) * map), MatD(map * pure.irrep().realization(g))));
  }
}

TEST_CASE("extend_nonvanishing_section") {
  SUBCASE("constant boundary gives a constant extension") {
    GBundle<double> b(SimplicialBase::standard_simplex(2), trivial_fiber(3));
    const VecD c = VecD::Ones(3);
    const auto s = extend_nonvanishing_section(b, {0, 1, 2}, constant_section(3, c), "trivial", 1);
    CHECK(s.centers.empty());
    for (const auto& p : sample_grid(2)) CHECK((evaluate(b, s, {0, 1, 2}, p) - c).norm() < 1e-12);
  }
  SUBCASE("interval from e1 to -e1") {
    GBundle<double> b(SimplicialBase::interval(1), trivial_fiber(2));
    Section boundary = Section::undefined(2);
    boundary.vertex[0] = unit(2, 0);
    boundary.vertex[1] = VecD(-unit(2, 0));
    const auto s = extend_nonvanishing_section(b, {0, 1}, boundary, "trivial", 11);
    CHECK(min_norm_over(b, s, {0, 1}) >= 0.5);
    CHECK((evaluate(b, s, {0, 1}, {1.0, 0.0}) - unit(2, 0)).norm() < 1e-14);
    CHECK((evaluate(b, s, {0, 1}, {0.0, 1.0}) + unit(2, 0)).norm() < 1e-14);
    // The collar keeps the boundary value on the first ring.
    CHECK((evaluate(b, s, {0, 1}, {0.9, 0.1}) - unit(2, 0)).norm() < 1e-14);
    // Midpoint leaves the e1 axis.
    CHECK(std::abs(evaluate(b, s, {0, 1}, {0.5, 0.5})(1)) > 0.1);
  }
  SUBCASE("weight-1 circle bundle with four copies over a triangle") {
    GBundle<double> b(SimplicialBase::standard_simplex(2), reps::weight_representation(circle(), {1, 1, 1, 1}));
    const PureSpace pure(b, "w1");
    sampling::Rng rng(5);
    Section boundary = Section::undefined(3);
    for (auto& v : boundary.vertex) v = pure.random_pure(rng);
    const auto s = extend_nonvanishing_section(b, {0, 1, 2}, boundary, "w1", 2);
    CHECK(min_norm_over(b, s, {0, 1, 2}) > 0.0);
    for (int v = 0; v < 3; ++v) CHECK(evaluate(b, s, {v}, {1.0}) == *boundary.vertex[v]);
  }
  SUBCASE("too few copies is an obstruction") {
    GBundle<double> b(SimplicialBase::interval(1), trivial_fiber(1));
    CHECK_THROWS_AS(extend_nonvanishing_section(b, {0, 1}, constant_section(2, VecD::Ones(1)), "trivial", 1), Obstruction);
  }
  SUBCASE("vanishing boundary is invalid") {
    GBundle<double> b(SimplicialBase::interval(1), trivial_fiber(2));
    Section boundary = constant_section(2, unit(2, 0));
    boundary.vertex[1] = VecD::Zero(2);
    CHECK_THROWS_AS(extend_nonvanishing_section(b, {0, 1}, boundary, "trivial", 1), InvalidInput);
  }
  SUBCASE("deterministic given the seed") {
    GBundle<double> b(SimplicialBase::interval(1), trivial_fiber(2));
    Section boundary = constant_section(2, unit(2, 0));
    boundary.vertex[1] = VecD(-unit(2, 0));
    const auto a = extend_nonvanishing_section(b, {0, 1}, boundary, "trivial", 99);
    const auto c = extend_nonvanishing_section(b, {0, 1}, boundary, "trivial", 99);
    CHECK(a.centers.at({0, 1}) == c.centers.at({0, 1}));
  }
}

TEST_CASE("extend_trivial_subbundle") {
  SUBCASE("global frame returned unchanged") {
    GBundle<double> b(SimplicialBase::interval(2), trivial_fiber(3));
    Frame f{"trivial", {constant_section(3, unit(3, 1))}};
    const auto out = extend_trivial_subbundle(b, {0, 1}, f, 4);
    CHECK(out.sections[0].vertex == f.sections[0].vertex);
    CHECK(out.sections[0].centers.empty());
  }
  SUBCASE("rank-1 frame on one edge of a triangulated circle") {
    const auto base = SimplicialBase::circle(6);
    // A twist on one edge keeps the bundle nontrivial in its charts.
    MatD twist = MatD::Identity(3, 3);
    twist(0, 0) = -1;
    twist(1, 1) = -1;
    GBundle<double> b(base, trivial_fiber(3), {{{0, 5}, twist}});
    Frame f{"trivial", {Section::undefined(6)}};
    f.sections[0].vertex[0] = unit(3, 0);
    f.sections[0].vertex[1] = unit(3, 1);
    const auto out = extend_trivial_subbundle(b, {0, 1}, f, 8);
    CHECK(out.sections[0].global());
    CHECK(*out.sections[0].vertex[0] == unit(3, 0));
    CHECK(worst_quality(b, PureSpace(b, "trivial"), out) > 1e-3);
  }
  SUBCASE("Z_2 frame of rank (1,1) over an interval") {
    const auto base = SimplicialBase::interval(3);
    GBundle<double> b(base, z2_signs<double>(3, 3));
    Frame fixed{"trivial", {Section::undefined(4)}};
    Frame sign{"sign", {Section::undefined(4)}};
    fixed.sections[0].vertex[1] = unit(6, 0);
    fixed.sections[0].vertex[2] = unit(6, 1);
    sign.sections[0].vertex[1] = unit(6, 3);
    sign.sections[0].vertex[2] = unit(6, 5);
    const auto a = extend_trivial_subbundle(b, {1, 2}, fixed, 1);
    const auto c = extend_trivial_subbundle(b, {1, 2}, sign, 2);
    for (int v = 0; v < 4; ++v) {
      const VecD x = *a.sections[0].vertex[v];
      const VecD y = *c.sections[0].vertex[v];
      CHECK((b.fiber()(1) * x - x).norm() < 1e-12);
      CHECK((b.fiber()(1) * y + y).norm() < 1e-12);
    }
    CHECK(worst_quality(b, PureSpace(b, "trivial"), a) > 1e-3);
    CHECK(worst_quality(b, PureSpace(b, "sign"), c) > 1e-3);
  }
  SUBCASE("rank deficit is an obstruction") {
    GBundle<double> b(SimplicialBase::interval(2), trivial_fiber(2));
    Frame f{"trivial", {Section::undefined(3)}};
    f.sections[0].vertex[0] = unit(2, 0);
    CHECK_THROWS_AS(extend_trivial_subbundle(b, {0}, f, 1), Obstruction);
  }
}

TEST_CASE("stabilize_cokernel") {
  const auto covers = [](const GBundle<double>& b, const PureSpace& pure, const Frame& f, const std::vector<MatD>& images) {
    for (int v = 0; v < b.base().vertex_count(); ++v) {
      const MatD span = frame_span_at(pure, f, v);
      MatD all(b.rank(), images[v].cols() + span.cols());
      all << images[v], span;
      if (linalg::numeric_rank(MatD(pure.projector() * all), 1e-8) != static_cast<int>(std::lround(pure.projector().trace())))
        return false;
    }
    return true;
  };
  SUBCASE("surjective linearization needs nothing") {
    GBundle<double> b(SimplicialBase::interval(1), reps::weight_representation(circle(), {1, 1}));
    const std::vector<MatD> images(2, MatD::Identity(4, 4));
    CHECK(stabilize_cokernel(b, "w1", images, 1).sections.empty());
  }
  SUBCASE("single vertex with zero linearization") {
    GBundle<double> b(SimplicialBase::points(1), reps::weight_representation(circle(), {1}));
    const std::vector<MatD> images{MatD::Zero(2, 2)};
    const auto f = stabilize_cokernel(b, "w1", images, 1);
    REQUIRE(f.sections.size() == 1);
    CHECK(frame_span_at(PureSpace(b, "w1"), f, 0).cols() == 2);
    CHECK(covers(b, PureSpace(b, "w1"), f, images));
  }
  SUBCASE("different cokernel copies at two vertices") {
    const auto fiber = reps::weight_representation(circle(), {1, 1, 1, 1, 1, 1});
    for (const auto& base : {SimplicialBase::points(2), SimplicialBase::interval(1)}) {
      GBundle<double> b(base, fiber);
      // im D misses copy 0 at vertex 0 and copy 3 at vertex 1.
      std::vector<MatD> images(2, MatD::Zero(12, 10));
      for (int v = 0; v < 2; ++v) {
        const int skip = v == 0 ? 0 : 3;
        int k = 0;
        for (int copy = 0; copy < 6; ++copy) {
          if (copy == skip) continue;
          images[v](2 * copy, k++) = 1;
          images[v](2 * copy + 1, k++) = 1;
        }
      }
      const PureSpace pure(b, "w1");
      const auto f = stabilize_cokernel(b, "w1", images, 17);
      CHECK(f.sections.size() == 2);
      CHECK(covers(b, pure, f, images));
      CHECK(worst_quality(b, pure, f) > 1e-6);
    }
  }
  SUBCASE("ambient rank too small") {
    GBundle<double> b(SimplicialBase::points(1), reps::weight_representation(circle(), {1, 1}));
    const std::vector<MatD> images{MatD::Zero(4, 1)};
    CHECK(stabilize_cokernel(b, "w1", images, 1).sections.size() == 2);
    GBundle<double> c(SimplicialBase::points(2), reps::weight_representation(circle(), {1, 1}));
    CHECK_THROWS_AS(stabilize_cokernel(c, "w1", std::vector<MatD>(2, MatD::Zero(4, 1)), 1), Obstruction);
  }
}

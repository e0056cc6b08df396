#include "doctest.h"

#include "equitrans/linalg.hpp"
#include "equitrans/transversality.hpp"

#include <array>

using namespace equitrans;
using namespace equitrans::transversality;
using bundles::GBundle;
using bundles::SimplicialBase;
using reps::Representation;

namespace {

reps::GroupPtr circle() { return reps::make_group(reps::CircleGroup(64)); }

Representation<Rational> z2_signs(int plus, int minus) {
  const auto g = reps::preset_group("Z_2");
  MatQ flip = MatQ::Identity(plus + minus, plus + minus);
  for (int i = plus; i < plus + minus; ++i) flip(i, i) = -1;
  return Representation<Rational>(g, {MatQ::Identity(plus + minus, plus + minus), flip});
}

/// Minimal quaternion arithmetic for an independent rank oracle.
struct Quat {
  double a = 0, b = 0, c = 0, d = 0;
  Quat operator*(const Quat& q) const {
    return {a * q.a - b * q.b - c * q.c - d * q.d, a * q.b + b * q.a + c * q.d - d * q.c, a * q.c - b * q.d + c * q.a + d * q.b,
            a * q.d + b * q.c - c * q.b + d * q.a};
  }
  Quat operator-(const Quat& q) const { return {a - q.a, b - q.b, c - q.c, d - q.d}; }
  Quat operator+(const Quat& q) const { return {a + q.a, b + q.b, c + q.c, d + q.d}; }
  [[nodiscard]] double norm2() const { return a * a + b * b + c * c + d * d; }
  [[nodiscard]] Quat inverse() const {
    const double n = norm2();
    return {a / n, -b / n, -c / n, -d / n};
  }
};

using QMat = std::vector<std::vector<Quat>>;

/// Row reduction over ℍ with left multiplication by pivot inverses.
int quaternion_rank(QMat m) {
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    for (std::size_t r = rank; r < rows; ++r)
      if (m[r][c].norm2() > m[piv][c].norm2()) piv = r;
    if (m[piv][c].norm2() < 1e-18) continue;
    std::swap(m[piv], m[rank]);
    const Quat inv = m[rank][c].inverse();
    for (auto& x : m[rank]) x = inv * x;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank) continue;
      const Quat f = m[r][c];
      for (std::size_t k = 0; k < cols; ++k) m[r][k] = m[r][k] - f * m[rank][k];
    }
    ++rank;
  }
  return static_cast<int>(rank);
}

MatD pack(const QMat& m) {
  MatD out(m.size(), 4 * m[0].size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[0].size(); ++j) {
      out(i, 4 * j) = m[i][j].a;
      out(i, 4 * j + 1) = m[i][j].b;
      out(i, 4 * j + 2) = m[i][j].c;
      out(i, 4 * j + 3) = m[i][j].d;
    }
  return out;
}

QMat random_low_rank(int rows, int cols, int r, sampling::Rng& rng) {
  std::normal_distribution<double> normal;
  const auto rq = [&] { return Quat{normal(rng), normal(rng), normal(rng), normal(rng)}; };
  QMat a(rows, std::vector<Quat>(r)), b(r, std::vector<Quat>(cols)), out(rows, std::vector<Quat>(cols));
  for (auto& row : a)
    for (auto& x : row) x = rq();
  for (auto& row : b)
    for (auto& x : row) x = rq();
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      for (int k = 0; k < r; ++k) out[i][j] = out[i][j] + a[i][k] * b[k][j];
  return out;
}

FixedLocusModel single_plane_model(const MatD& d) {
  const auto fiber = reps::weight_representation(circle(), {1});
  return {GBundle<double>(SimplicialBase::points(1), fiber), GBundle<double>(SimplicialBase::points(1), fiber), {d}, {0}, {}};
}

}  // namespace

TEST_CASE("split_linearization returns block-diagonal input verbatim") {
  const auto rep = z2_signs(2, 1);
  MatQ d = MatQ::Zero(3, 3);
  d(0, 0) = 3;
  d(0, 1) = Rational(1, 2);
  d(1, 1) = -2;
  d(2, 2) = 5;
  const auto split = split_linearization(rep, rep, d);
  CHECK(split.fixed_block == d.topLeftCorner(2, 2));
  REQUIRE(split.blocks.size() == 1);
  CHECK(split.blocks[0].label == "sign");
  CHECK(split.blocks[0].block == d.bottomRightCorner(1, 1));
  CHECK(split.cross_norm == 0.0);
  CHECK(split.fixed_index() == 0);
}

TEST_CASE("split of a random equivariant map has exactly zero cross blocks") {
  const auto s3 = reps::preset_group("S_3");
  sampling::Rng rng(12);
  for (int trial = 0; trial < 5; ++trial) {
    const auto v = sampling::random_representation<Rational>(s3, 7, rng);
    const auto w = sampling::random_representation<Rational>(s3, 7, rng);
    const auto basis = reps::hom_G_basis(v, w);
    if (basis.empty()) continue;
    const MatQ d = sampling::random_combination(basis, rng);
    const auto split = split_linearization(v, w, d);
    CHECK(split.cross_norm == 0.0);
    CHECK(MatQ(d * split.fixed_domain_basis) == MatQ(split.fixed_codomain_basis * split.fixed_block));
    for (const auto& b : split.blocks) CHECK(MatQ(d * b.domain_basis) == MatQ(b.codomain_basis * b.block));
  }
}

TEST_CASE("split_linearization rejects non-equivariant input") {
  const auto rep = z2_signs(1, 1);
  MatQ d = MatQ::Identity(2, 2);
  d(0, 1) = 1;  // trivial ← sign entry
  CHECK_THROWS_WITH_AS(split_linearization(rep, rep, d), doctest::Contains("max commutator norm 2 at g = 1"), InvalidInput);
}

TEST_CASE("lambda_index and singular_codim examples") {
  CHECK(lambda_index(MatD(MatD::Zero(4, 4)), 2).real == 0);
  const auto s1 = lambda_index(MatD(MatD::Zero(4, 6)), 2);
  CHECK(s1.real == 2);
  CHECK(s1.units == 1);
  const auto h = lambda_index(MatD(MatD::Zero(8, 4)), 4);
  CHECK(h.real == -4);
  CHECK(h.units == -1);
  CHECK_THROWS_AS(lambda_index(MatD(MatD::Zero(3, 4)), 2), InvalidInput);

  CHECK(singular_codim(1, 1, 1).codim == 1);
  CHECK(singular_codim(3, 2, 2).codim == 4);
  CHECK(singular_codim(2, 2, 4).singular_codim == 12);
  CHECK(singular_codim(1, 3, 2).codim == 0);
  for (int d : {1, 2, 4})
    for (int m = 1; m <= 4; ++m)
      for (int n = m; n <= 4; ++n) CHECK(singular_codim(n, m, d).singular_codim == singular_codim(n, m, d).codim + 2 * d);
}

TEST_CASE("determinantal strata dimensions") {
  sampling::Rng rng(4);
  for (int d : {1, 2, 4})
    for (int m = 1; m <= 4; ++m)
      for (int n = m; n <= 4; ++n) {
        const long long total = static_cast<long long>(d) * n * m;
        const long long s = rank_stratum_dimension(n, m, m - 1, d);
        CHECK(s == total - singular_codim(n, m, d).codim);
        if (m >= 2) CHECK(s - rank_stratum_dimension(n, m, m - 2, d) == singular_codim(n, m, d).singular_codim);
        CHECK(rank_stratum_dimension(n, m, m, d) == total);
      }
  for (int d : {1, 2, 4})
    for (int m = 1; m <= 3; ++m)
      for (int n = m; n <= 3; ++n)
        for (int r = 0; r <= m; ++r) CHECK(rank_stratum_dimension_numeric(n, m, r, d, rng) == rank_stratum_dimension(n, m, r, d));
}

TEST_CASE("pointwise and circle conditions") {
  const auto idx = [](int ind_sG, int ind, int dim_v, int d) { return PointIndices{ind_sG, {{"x", dim_v, d, ind, 2 * dim_v}}}; };
  CHECK(check_pointwise_condition(idx(0, 0, 2, 2))[0]);
  CHECK_FALSE(check_pointwise_condition(idx(2, 0, 2, 2))[0]);
  CHECK(check_pointwise_condition(idx(0, 0, 1, 1))[0]);
  const auto c = circle();
  CHECK(s1_condition(c, idx(1, 0, 2, 2)));
  CHECK_FALSE(s1_condition(c, idx(2, 0, 2, 2)));
  CHECK_THROWS_AS(s1_condition(reps::preset_group("Z_3"), idx(0, 0, 2, 2)), InvalidInput);
  // Zero-rank components pass vacuously.
  CHECK(check_pointwise_condition(PointIndices{5, {{"x", 2, 2, -4, 0}}})[0]);

  sampling::Rng rng(100);
  std::uniform_int_distribution<int> pick(-6, 6);
  for (int t = 0; t < 100; ++t) {
    const int s = pick(rng), ind = 2 * pick(rng);
    CHECK(s1_condition(c, idx(s, ind, 2, 2)) == check_pointwise_condition(idx(s, ind, 2, 2))[0]);
    // Monotone in ind D^λ, antitone in ind s^G.
    if (check_pointwise_condition(idx(s, ind, 2, 2))[0]) {
      CHECK(check_pointwise_condition(idx(s, ind + 2, 2, 2))[0]);
      CHECK(check_pointwise_condition(idx(s - 1, ind, 2, 2))[0]);
    }
  }
}

TEST_CASE("division_ring_rank") {
  for (auto t : {reps::EndoType::R, reps::EndoType::C, reps::EndoType::H}) {
    const int d = reps::endo_dimension(t);
    MatD id = MatD::Zero(3, 3 * d);
    for (int i = 0; i < 3; ++i) id(i, i * d) = 1;
    CHECK(division_ring_rank(id, t) == 3);
    CHECK(division_ring_rank(MatD::Zero(2, 2 * d), t) == 0);
  }
  MatD one_j(1, 8);
  one_j << 1, 0, 0, 0, 0, 0, 1, 0;
  CHECK(division_ring_rank(one_j, reps::EndoType::H) == 1);
  CHECK_THROWS_AS(division_ring_rank(MatD::Zero(2, 3), reps::EndoType::H), InvalidInput);

  sampling::Rng rng(9);
  for (int t = 0; t < 20; ++t) {
    const int rows = 1 + static_cast<int>(rng() % 4), cols = 1 + static_cast<int>(rng() % 4);
    const int r = static_cast<int>(rng() % (std::min(rows, cols) + 1));
    const QMat m = random_low_rank(rows, cols, r, rng);
    CHECK(quaternion_rank(m) == r);
    CHECK(division_ring_rank(pack(m), reps::EndoType::H) == r);
  }
}

TEST_CASE("real rank of equivariant maps is a multiple of dim V") {
  const auto q8 = reps::preset_group("Q_8");
  const auto h = reps::irrep_by_label<double>(q8, "quaternion").realization;
  auto v = h;
  for (int k = 0; k < 2; ++k) v = reps::direct_sum(v, h);
  sampling::Rng rng(2);
  const auto basis = reps::hom_G_basis(v, v);
  CHECK(basis.size() == 36);  // 3 × 3 matrices over ℍ
  for (int t = 0; t < 10; ++t) {
    MatD m = MatD::Zero(12, 12);
    std::normal_distribution<double> normal;
    for (const auto& b : basis) m += normal(rng) * b;
    // Dropping the third copy of the domain keeps m equivariant.
    m.rightCols(4).setZero();
    CHECK(linalg::numeric_rank(m, 1e-9) % 4 == 0);
    CHECK(linalg::numeric_rank(m, 1e-9) == 8);
  }
}

TEST_CASE("construct_equivariant_perturbation") {
  SUBCASE("already transverse input is left alone") {
    const auto res = construct_equivariant_perturbation(single_plane_model(MatD::Identity(2, 2)), 1);
    CHECK(res.gamma.zero());
    CHECK(res.report.transverse);
  }
  SUBCASE("zero map on a single weight-1 plane") {
    const auto model = single_plane_model(MatD::Zero(2, 2));
    const auto before = check_transversality(model);
    CHECK_FALSE(before.transverse);
    const auto res = construct_equivariant_perturbation(model, 3);
    CHECK(res.report.transverse);
    CHECK(res.report.vertices[0].min_sv[0] > 1e-8);
    CHECK(res.report.equivariance_residual <= 1e-10);
    // The perturbation is a nonzero multiple of a rotation.
    const MatD t = res.gamma.theta[0];
    CHECK(std::abs(t(0, 0) - t(1, 1)) < 1e-10);
    CHECK(std::abs(t(0, 1) + t(1, 0)) < 1e-10);
  }
  SUBCASE("reproducible for a fixed seed") {
    const auto model = single_plane_model(MatD::Zero(2, 2));
    CHECK(construct_equivariant_perturbation(model, 5).gamma.theta[0] == construct_equivariant_perturbation(model, 5).gamma.theta[0]);
  }
  SUBCASE("condition violation yields certificates") {
    // N^λ one weight-1 plane, E^λ two planes: ind D^λ = -2.
    const auto c = circle();
    FixedLocusModel model{GBundle<double>(SimplicialBase::points(1), reps::weight_representation(c, {1})),
                          GBundle<double>(SimplicialBase::points(1), reps::weight_representation(c, {1, 1})),
                          {MatD::Zero(4, 2)},
                          {0},
                          {}};
    try {
      (void)construct_equivariant_perturbation(model, 1);
      FAIL("expected an obstruction");
    } catch (const ConditionViolated& e) {
      REQUIRE(e.certificates().size() == 1);
      const auto& cert = e.certificates()[0];
      CHECK(cert.lambda == "w1");
      CHECK(cert.n == 1);
      CHECK(cert.m == 2);
      CHECK(cert.d == 2);
      CHECK(cert.rhs == 0);
    }
  }
  SUBCASE("fixed block made surjective over an interval") {
    const auto c = circle();
    const auto n = reps::weight_representation(c, {0, 0, 1, 1, 1, 1});
    const auto e = reps::weight_representation(c, {0, 1, 1, 1, 1});
    const auto base = SimplicialBase::interval(2);
    std::vector<MatD> lin(3, MatD::Zero(9, 10));
    for (auto& d : lin) d.bottomRightCorner(8, 8) = MatD::Identity(8, 8);
    lin[1](7, 8) = 0;  // breaks one weight plane at the middle vertex
    lin[1](8, 9) = 0;
    FixedLocusModel model{GBundle<double>(base, n), GBundle<double>(base, e), lin, {0, 1, 2}, {}};
    const auto res = construct_equivariant_perturbation(model, 8);
    CHECK(res.report.transverse);
    for (const auto& v : res.report.vertices) CHECK(v.fixed_min_sv > 1e-8);
    CHECK_FALSE(res.report.vertices[1].surjective_before[0]);
    // Support excluding the middle vertex cannot work.
    model.support = std::vector<int>{0, 2};
    CHECK_THROWS_AS(construct_equivariant_perturbation(model, 8), MathFailure);
  }
  SUBCASE("rank drops at two separated vertices") {
    // The cokernel directions at vertices 1 and 3 meet at vertex 2, where a
    // new frame vector can land on the old frame.
    const auto c = circle();
    constexpr int copies = 6;
    std::vector<int> nw{0, 0}, ew{0};
    nw.insert(nw.end(), copies, 1);
    ew.insert(ew.end(), copies, 1);
    const auto base = SimplicialBase::interval(3);
    std::vector<MatD> lin(4, MatD::Zero(1 + 2 * copies, 2 + 2 * copies));
    for (int v = 0; v < 4; ++v) {
      lin[v](0, 0) = 1;
      lin[v].bottomRightCorner(2 * copies, 2 * copies).setIdentity();
      if (v % 2 == 1) lin[v].bottomRightCorner(2, 2).setZero();
    }
    const FixedLocusModel model{GBundle<double>(base, reps::weight_representation(c, nw)),
                                GBundle<double>(base, reps::weight_representation(c, ew)), lin, {0, 1, 2, 3}, {}};
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto res = construct_equivariant_perturbation(model, seed);
      CHECK(res.report.transverse);
      CHECK(res.report.equivariance_residual <= 1e-10);
    }
  }
}

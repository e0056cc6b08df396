#include "doctest.h"

#include "equitrans/kernels.hpp"
#include "equitrans/linalg.hpp"
#include "equitrans/sampling.hpp"

using namespace equitrans;

TEST_CASE("rational literals round-trip") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK(parse_rational("-0.25") == Rational(-1, 4));
  CHECK(parse_rational("1.5") == Rational(3, 2));
  CHECK(to_string(Rational(-4, 6)) == "-2/3");
  CHECK(to_string(Rational(5)) == "5");
  CHECK_THROWS_AS(parse_rational("1/0"), InvalidInput);
  CHECK_THROWS_AS(parse_rational("abc"), InvalidInput);
}

TEST_CASE("exact rank, nullspace and inverse") {
  MatQ a(3, 3);
  a << Rational(1), Rational(2), Rational(3), Rational(2), Rational(4), Rational(6), Rational(1), Rational(0), Rational(1);
  CHECK(linalg::rank<Rational>(a) == 2);
  const MatQ k = linalg::nullspace<Rational>(a);
  REQUIRE(k.cols() == 1);
  CHECK(is_zero_matrix<Rational>(MatQ(a * k)));
  MatQ b(2, 2);
  b << Rational(2), Rational(1), Rational(1), Rational(1);
  CHECK(approx_equal<Rational>(MatQ(b * linalg::inverse<Rational>(b)), MatQ::Identity(2, 2)));
  CHECK_THROWS_AS(linalg::inverse<Rational>(a), MathFailure);
}

TEST_CASE("float rank agrees with exact rank on integer matrices") {
  sampling::Rng rng(7);
  std::uniform_int_distribution<int> entry(-2, 2);
  for (int trial = 0; trial < 30; ++trial) {
    MatQ a(4, 5);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 5; ++j) a(i, j) = entry(rng);
    a.row(3) = a.row(0) + a.row(1);
    CHECK(linalg::rank<Rational>(a) == linalg::rank<double>(to_double<Rational>(a)));
  }
}

TEST_CASE("serial and OpenMP kernels agree bit for bit") {
  sampling::Rng rng(11);
  std::normal_distribution<double> n01;
  std::vector<MatD> mats;
  std::vector<double> w;
  for (int k = 0; k < 40; ++k) {
    MatD m(20, 20);
    for (int i = 0; i < 20; ++i)
      for (int j = 0; j < 20; ++j) m(i, j) = n01(rng);
    mats.push_back(m);
    w.push_back(n01(rng));
  }
  using kernels::Backend;
  CHECK(kernels::weighted_sum<double>(mats, w, Backend::serial) == kernels::weighted_sum<double>(mats, w, Backend::parallel));
  CHECK(kernels::product<double>(mats[0], mats[1], Backend::serial) == kernels::product<double>(mats[0], mats[1], Backend::parallel));
  std::vector<MatD> left(mats.begin(), mats.begin() + 10), right(mats.begin() + 10, mats.begin() + 20);
  CHECK(kernels::twisted_average<double>(left, mats[30], right, Backend::serial) ==
        kernels::twisted_average<double>(left, mats[30], right, Backend::parallel));
  std::vector<MatD> small_l, small_r;
  for (int k = 0; k < 6; ++k) {
    small_l.push_back(mats[static_cast<std::size_t>(k)].topLeftCorner(4, 4));
    small_r.push_back(mats[static_cast<std::size_t>(k + 6)].topLeftCorner(5, 5));
  }
  CHECK(kernels::averaging_operator<double>(small_l, small_r, Backend::serial) ==
        kernels::averaging_operator<double>(small_l, small_r, Backend::parallel));
}

TEST_CASE("averaging operator matches the explicit twisted average") {
  sampling::Rng rng(3);
  std::uniform_int_distribution<int> entry(-3, 3);
  std::vector<MatQ> left, right;
  for (int k = 0; k < 3; ++k) {
    MatQ l(2, 2), r(3, 3);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) l(i, j) = entry(rng);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r(i, j) = entry(rng);
    left.push_back(l);
    right.push_back(r);
  }
  const MatQ op = kernels::averaging_operator<Rational>(left, right);
  MatQ x(2, 3);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) x(i, j) = entry(rng);
  const MatQ direct = kernels::twisted_average<Rational>(left, x, right);
  MatQ vec(6, 1);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) vec(i * 3 + j, 0) = x(i, j);
  const MatQ via_op = op * vec;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) CHECK(via_op(i * 3 + j, 0) == direct(i, j));
}

TEST_CASE("random rational orthogonal matrices are orthogonal") {
  sampling::Rng rng(5);
  for (int d = 1; d <= 8; ++d) {
    const MatQ q = sampling::random_rational_orthogonal(d, rng);
    CHECK(approx_equal<Rational>(MatQ(q.transpose() * q), MatQ::Identity(d, d)));
  }
}

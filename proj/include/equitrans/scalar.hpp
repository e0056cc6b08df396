#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <string_view>

namespace equitrans {

/// Exact field used for finite-group computations.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

using MatQ = Mat<Rational>;
using MatD = Mat<double>;
using VecQ = Vec<Rational>;
using VecD = Vec<double>;

/// Default tolerance for floating-point identity checks.
inline constexpr double kTolerance = 1e-10;

enum class Arithmetic { exact, floating };

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static bool is_zero(const Rational& x, double /*tol*/) { return x == 0; }
  static double to_double(const Rational& x) { return x.convert_to<double>(); }
  static Rational from_double(double x) { return Rational(x); }
  static Rational from_int(long long x) { return Rational(x); }
  static Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static bool is_zero(double x, double tol) { return std::abs(x) <= tol; }
  static double to_double(double x) { return x; }
  static double from_double(double x) { return x; }
  static double from_int(long long x) { return static_cast<double>(x); }
  static double abs(double x) { return std::abs(x); }
};

template <class S>
inline constexpr bool is_exact_v = ScalarTraits<S>::exact;

/// "p/q" (or "p" for integers).
std::string to_string(const Rational& x);
/// Accepts "p", "p/q", or a decimal literal such as "-0.25" (converted exactly).
Rational parse_rational(std::string_view text);

template <class S>
double to_double(const S& x) {
  return ScalarTraits<S>::to_double(x);
}

template <class S>
MatD to_double(const Mat<S>& m) {
  MatD out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = ScalarTraits<S>::to_double(m(i, j));
  return out;
}

/// Largest absolute entry, as a double (0 for empty matrices).
template <class S>
double max_abs(const Mat<S>& m) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      best = std::max(best, std::abs(ScalarTraits<S>::to_double(m(i, j))));
  return best;
}

/// Exact equality for rationals; max-entry tolerance for doubles.
template <class S>
bool is_zero_matrix(const Mat<S>& m, double tol = kTolerance) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!ScalarTraits<S>::is_zero(m(i, j), tol)) return false;
  return true;
}

template <class S>
bool approx_equal(const Mat<S>& a, const Mat<S>& b, double tol = kTolerance) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return is_zero_matrix<S>(a - b, tol);
}

}  // namespace equitrans

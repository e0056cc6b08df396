#pragma once

#include "equitrans/errors.hpp"
#include "equitrans/scalar.hpp"

#include <functional>
#include <vector>

namespace equitrans::flow {

constexpr double kHyperbolicMargin = 1e-6;

/// Path s ↦ B(s) of real square matrices with hyperbolic limits B^±, reached
/// (to 1e-6) at ±horizon.
class MatrixPath {
 public:
  MatrixPath(std::function<MatD(double)> eval, double horizon, MatD minus, MatD plus);

  /// B(s) ≡ b.
  static MatrixPath constant(const MatD& b, double horizon = 10.0);
  /// B(s) = (1 − σ)B⁻ + σB⁺ with σ(s) = (1 + tanh s)/2.
  static MatrixPath tanh_ramp(const MatD& minus, const MatD& plus, double horizon = 10.0);
  /// Piecewise-linear through (s_k, B_k), constant outside the samples.
  static MatrixPath sampled(std::vector<double> s, std::vector<MatD> b);

  [[nodiscard]] MatD operator()(double s) const { return eval_(s); }
  [[nodiscard]] double horizon() const { return horizon_; }
  [[nodiscard]] const MatD& minus() const { return minus_; }
  [[nodiscard]] const MatD& plus() const { return plus_; }
  [[nodiscard]] int dim() const { return static_cast<int>(minus_.rows()); }

  /// s ↦ −B(s)ᵀ, the path of the formal adjoint.
  [[nodiscard]] MatrixPath adjoint() const;
  /// s ↦ B(s) + δ(s).
  [[nodiscard]] MatrixPath perturbed(std::function<MatD(double)> delta) const;

 private:
  std::function<MatD(double)> eval_;
  double horizon_;
  MatD minus_, plus_;
};

/// Path one after the other; the first path's B⁺ must match the second's B⁻.
MatrixPath concatenate(const MatrixPath& first, const MatrixPath& second);

/// Number of eigenvalues with negative real part, with multiplicity. Throws
/// NonHyperbolic if some eigenvalue has |Re| ≤ 1e-6.
int unstable_dim(const MatD& b);

/// dim E^u(B⁻) − dim E^u(B⁺).
int fredholm_index(const MatrixPath& path);

/// Real-linear path A(s) on ℂⁿ, stored as 2n × 2n matrices in the
/// interleaved (Re z₁, Im z₁, …) coordinates.
struct LambdaOperatorSpec {
  int n = 1;
  int lambda = 1;
  std::function<MatD(double)> a;
  MatD a_minus, a_plus;
  double horizon = 10.0;

  /// A ≡ 0.
  static LambdaOperatorSpec zero(int n, int lambda);
  /// A(s) = (1 − σ)A⁻ + σA⁺ with σ(s) = (1 + tanh s)/2.
  static LambdaOperatorSpec ramp(int lambda, const MatD& a_minus, const MatD& a_plus);
};

/// B(a, b) = (i2λπ b − A a, −i2λπ a − A b) on ℝ^{4n}, coordinates
/// (a₁, …, aₙ, b₁, …, bₙ) with each complex entry as (Re, Im). Throws
/// NonHyperbolic when ‖A(±∞)‖ ≥ 2λπ.
MatrixPath build_lambda_path(const LambdaOperatorSpec& spec);

/// Dimension of the bounded solutions of u' = B(s)u, found by shooting the
/// decaying-at-−∞ frame forward and the decaying-at-+∞ frame backward to
/// s = 0 (RK4, QR re-orthonormalization) and counting principal angles with
/// sine below `threshold`.
int kernel_dim_oracle(const MatrixPath& path, double threshold = 1e-6);

/// kernel_dim(adjoint) − kernel_dim(path); equals fredholm_index.
int oracle_index(const MatrixPath& path, double threshold = 1e-6);

}  // namespace equitrans::flow

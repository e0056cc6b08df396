#include "equitrans/spectral_flow.hpp"

#include "equitrans/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace equitrans::flow {

namespace {

constexpr double kTail = 1e-6;

double sigma(double s) { return 0.5 * (1.0 + std::tanh(s)); }

/// sign(B) by the Newton iteration X ← (X + X⁻¹)/2; B must be hyperbolic.
MatD matrix_sign(const MatD& b) {
  MatD x = b;
  for (int it = 0; it < 100; ++it) {
    const MatD next = 0.5 * (x + x.inverse());
    const double change = (next - x).norm();
    x = next;
    if (change <= 1e-14 * std::max(1.0, x.norm())) break;
  }
  return x;
}

/// Orthonormal basis of the spectral subspace with Re λ > 0 (positive) or < 0.
MatD spectral_subspace(const MatD& b, bool positive) {
  const MatD s = matrix_sign(b);
  const MatD id = MatD::Identity(b.rows(), b.cols());
  const MatD proj = positive ? MatD(0.5 * (id + s)) : MatD(0.5 * (id - s));
  return linalg::orthonormal_basis(proj, 1e-8);
}

MatD orthonormalize(const MatD& q) {
  Eigen::HouseholderQR<MatD> qr(q);
  return qr.householderQ() * MatD::Identity(q.rows(), q.cols());
}

/// Carries span(q) along u' = B(s)u from s0 to s1 with fixed RK4 steps.
MatD transport(const MatrixPath& path, MatD q, double s0, double s1, double step) {
  if (q.cols() == 0) return q;
  const int steps = static_cast<int>(std::ceil(std::abs(s1 - s0) / step));
  const double h = (s1 - s0) / steps;
  double s = s0;
  for (int k = 0; k < steps; ++k) {
    const MatD k1 = path(s) * q;
    const MatD mid = path(s + 0.5 * h);
    const MatD k2 = mid * (q + 0.5 * h * k1);
    const MatD k3 = mid * (q + 0.5 * h * k2);
    const MatD k4 = path(s + h) * (q + h * k3);
    q += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!q.allFinite()) throw MathFailure("integration overflow");
    q = orthonormalize(q);
    s += h;
  }
  return q;
}

}  // namespace

MatrixPath::MatrixPath(std::function<MatD(double)> eval, double horizon, MatD minus, MatD plus)
    : eval_(std::move(eval)), horizon_(horizon), minus_(std::move(minus)), plus_(std::move(plus)) {
  if (!(horizon_ > 0.0)) throw InvalidInput("path horizon must be positive");
  if (minus_.rows() != minus_.cols() || plus_.rows() != plus_.cols() || minus_.rows() != plus_.rows() || minus_.rows() == 0)
    throw InvalidInput("path limits must be square matrices of the same size");
  (void)unstable_dim(minus_);
  (void)unstable_dim(plus_);
  const MatD at_minus = eval_(-horizon_), at_plus = eval_(horizon_);
  if (at_minus.rows() != minus_.rows() || at_minus.cols() != minus_.cols()) throw InvalidInput("path values have the wrong size");
  if (max_abs(MatD(at_minus - minus_)) > kTail || max_abs(MatD(at_plus - plus_)) > kTail)
    throw InvalidInput("path is not stationary to 1e-6 at the horizon");
}

MatrixPath MatrixPath::constant(const MatD& b, double horizon) {
  return MatrixPath([b](double) { return b; }, horizon, b, b);
}

MatrixPath MatrixPath::tanh_ramp(const MatD& minus, const MatD& plus, double horizon) {
  if (minus.rows() != plus.rows() || minus.cols() != plus.cols()) throw InvalidInput("ramp limits differ in size");
  return MatrixPath([minus, plus](double s) { return MatD((1.0 - sigma(s)) * minus + sigma(s) * plus); }, horizon, minus,
                    plus);
}

MatrixPath MatrixPath::sampled(std::vector<double> s, std::vector<MatD> b) {
  if (s.size() != b.size() || s.size() < 2) throw InvalidInput("a sampled path needs at least two (s, B) pairs");
  if (!std::is_sorted(s.begin(), s.end()) || std::adjacent_find(s.begin(), s.end()) != s.end())
    throw InvalidInput("sample positions must be strictly increasing");
  const double horizon = std::max({std::abs(s.front()), std::abs(s.back()), 1.0});
  const MatD minus = b.front(), plus = b.back();
  auto eval = [s = std::move(s), b = std::move(b)](double x) -> MatD {
    if (x <= s.front()) return b.front();
    if (x >= s.back()) return b.back();
    const auto it = std::upper_bound(s.begin(), s.end(), x);
    const auto k = static_cast<std::size_t>(it - s.begin());
    const double t = (x - s[k - 1]) / (s[k] - s[k - 1]);
    return (1.0 - t) * b[k - 1] + t * b[k];
  };
  return MatrixPath(std::move(eval), horizon, minus, plus);
}

MatrixPath MatrixPath::adjoint() const {
  auto f = eval_;
  return MatrixPath([f](double s) { return MatD(-f(s).transpose()); }, horizon_, -minus_.transpose(), -plus_.transpose());
}

MatrixPath MatrixPath::perturbed(std::function<MatD(double)> delta) const {
  auto f = eval_;
  const MatD minus = minus_ + delta(-horizon_), plus = plus_ + delta(horizon_);
  return MatrixPath([f, delta](double s) { return MatD(f(s) + delta(s)); }, horizon_, minus, plus);
}

MatrixPath concatenate(const MatrixPath& first, const MatrixPath& second) {
  if (first.dim() != second.dim()) throw InvalidInput("concatenated paths differ in size");
  if (max_abs(MatD(first.plus() - second.minus())) > 1e-9) throw InvalidInput("concatenated paths have mismatched limits");
  const double c = std::max(first.horizon(), second.horizon());
  return MatrixPath([first, second, c](double s) { return s <= 0.0 ? first(s + c) : second(s - c); }, 2.0 * c, first.minus(),
                    second.plus());
}

int unstable_dim(const MatD& b) {
  if (b.rows() != b.cols()) throw InvalidInput("unstable_dim needs a square matrix");
  if (!b.allFinite()) throw InvalidInput("matrix has non-finite entries");
  Eigen::VectorXcd eig;
  // The real QR iteration occasionally stalls on tight clusters; the complex one does not.
  if (const Eigen::EigenSolver<MatD> es(b, false); es.info() == Eigen::Success) {
    eig = es.eigenvalues();
  } else {
    const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ces(b.cast<std::complex<double>>(), false);
    if (ces.info() != Eigen::Success) throw MathFailure("eigenvalue iteration did not converge");
    eig = ces.eigenvalues();
  }
  int count = 0;
  for (const auto& z : eig) {
    if (std::abs(z.real()) <= kHyperbolicMargin)
      throw NonHyperbolic("eigenvalue " + std::to_string(z.real()) + (z.imag() >= 0 ? "+" : "") + std::to_string(z.imag()) +
                          "i lies within 1e-6 of the imaginary axis");
    if (z.real() < 0.0) ++count;
  }
  return count;
}

int fredholm_index(const MatrixPath& path) { return unstable_dim(path.minus()) - unstable_dim(path.plus()); }

LambdaOperatorSpec LambdaOperatorSpec::zero(int n, int lambda) {
  LambdaOperatorSpec spec;
  spec.n = n;
  spec.lambda = lambda;
  spec.a_minus = spec.a_plus = MatD::Zero(2 * n, 2 * n);
  spec.a = [n](double) { return MatD(MatD::Zero(2 * n, 2 * n)); };
  return spec;
}

LambdaOperatorSpec LambdaOperatorSpec::ramp(int lambda, const MatD& a_minus, const MatD& a_plus) {
  if (a_minus.rows() != a_minus.cols() || a_minus.rows() % 2 != 0 || a_plus.rows() != a_minus.rows() ||
      a_plus.cols() != a_minus.cols())
    throw InvalidInput("A must be 2n × 2n on both ends");
  LambdaOperatorSpec spec;
  spec.n = static_cast<int>(a_minus.rows()) / 2;
  spec.lambda = lambda;
  spec.a_minus = a_minus;
  spec.a_plus = a_plus;
  spec.a = [a_minus, a_plus](double s) { return MatD((1.0 - sigma(s)) * a_minus + sigma(s) * a_plus); };
  return spec;
}

MatrixPath build_lambda_path(const LambdaOperatorSpec& spec) {
  if (spec.lambda < 1) throw InvalidInput("weight must be at least 1");
  if (spec.n < 1) throw InvalidInput("complex dimension must be at least 1");
  const int n2 = 2 * spec.n;
  const double c = 2.0 * spec.lambda * std::numbers::pi;
  for (const MatD* a : {&spec.a_minus, &spec.a_plus}) {
    if (a->rows() != n2 || a->cols() != n2) throw InvalidInput("A must be 2n × 2n");
    const double norm = linalg::singular_values(*a).size() ? linalg::singular_values(*a).maxCoeff() : 0.0;
    if (norm >= c) throw NonHyperbolic("‖A(±∞)‖ = " + std::to_string(norm) + " is not below 2λπ = " + std::to_string(c));
  }
  MatD j = MatD::Zero(n2, n2);
  for (int k = 0; k < spec.n; ++k) {
    j(2 * k + 1, 2 * k) = 1.0;
    j(2 * k, 2 * k + 1) = -1.0;
  }
  const auto assemble = [j, c, n2](const MatD& a) {
    MatD b(2 * n2, 2 * n2);
    b << -a, c * j, -c * j, -a;
    return b;
  };
  auto a = spec.a;
  return MatrixPath([a, assemble](double s) { return assemble(a(s)); }, spec.horizon, assemble(spec.a_minus),
                    assemble(spec.a_plus));
}

int kernel_dim_oracle(const MatrixPath& path, double threshold) {
  const double t = path.horizon();
  // Solutions bounded as s → −∞ start in the Re > 0 subspace of B⁻, those bounded
  // as s → +∞ in the Re < 0 subspace of B⁺.
  const MatD from_left = spectral_subspace(path.minus(), true);
  const MatD from_right = spectral_subspace(path.plus(), false);
  if (from_left.cols() == 0 || from_right.cols() == 0) return 0;

  double bnorm = 0.0;
  for (int k = -10; k <= 10; ++k) bnorm = std::max(bnorm, path(t * k / 10.0).norm());
  double step = std::min(1e-3 * t, 0.05 / std::max(bnorm, 1e-12));
  MatD left, right;
  for (int attempt = 0;; ++attempt) {
    try {
      left = transport(path, from_left, -t, 0.0, step);
      right = transport(path, from_right, t, 0.0, step);
      break;
    } catch (const MathFailure&) {
      if (attempt == 2) throw;
      step *= 0.25;
    }
  }
  const MatD residual = right - left * (left.transpose() * right);
  const Eigen::VectorXd sines = linalg::singular_values(residual);
  int count = static_cast<int>(right.cols() - sines.size());
  for (Eigen::Index i = 0; i < sines.size(); ++i)
    if (sines(i) < threshold) ++count;
  return count;
}

int oracle_index(const MatrixPath& path, double threshold) {
  return kernel_dim_oracle(path.adjoint(), threshold) - kernel_dim_oracle(path, threshold);
}

}  // namespace equitrans::flow

#include "equitrans/transversality.hpp"

#include "equitrans/linalg.hpp"

#include <algorithm>
#include <complex>
#include <limits>
#include <set>
#include <sstream>

namespace equitrans::transversality {

namespace {

constexpr double kSurjective = 1e-8;
constexpr double kEquivariance = 1e-10;
constexpr int kSamples = 64;

template <class S>
Mat<S> column_basis(const Mat<S>& p) {
  return linalg::select_columns<S>(p, linalg::independent_columns<S>(p, 1e-9));
}

template <class S>
Mat<S> block_coordinates(const Mat<S>& codomain_basis, const Mat<S>& image) {
  if (codomain_basis.cols() == 0 || image.cols() == 0) return Mat<S>::Zero(codomain_basis.cols(), image.cols());
  return linalg::solve<S>(codomain_basis, image, 1e-9);
}

std::string format_double(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

/// Smallest singular value as a surjectivity margin: +inf for an empty
/// codomain, 0 when the codomain is larger than the domain.
double surjectivity(const MatD& m) {
  if (m.rows() == 0) return std::numeric_limits<double>::infinity();
  if (m.rows() > m.cols()) return 0.0;
  return linalg::min_singular_value(m);
}

VecD gaussian(Eigen::Index n, sampling::Rng& rng) {
  std::normal_distribution<double> normal;
  VecD v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = normal(rng);
  return v;
}

MatD gaussian(Eigen::Index r, Eigen::Index c, sampling::Rng& rng) {
  std::normal_distribution<double> normal;
  MatD m(r, c);
  for (Eigen::Index j = 0; j < c; ++j)
    for (Eigen::Index i = 0; i < r; ++i) m(i, j) = normal(rng);
  return m;
}

sampling::Rng vertex_rng(std::uint64_t seed, int vertex, int slot) {
  return sampling::Rng(seed + 1000003ULL * static_cast<std::uint64_t>(vertex + 1) + 7919ULL * static_cast<std::uint64_t>(slot + 1));
}

/// Left multiplication by a real, complex or quaternion number as a d × d real matrix.
MatD left_mult(const double* q, int d) {
  MatD l(d, d);
  if (d == 1) {
    l << q[0];
  } else if (d == 2) {
    l << q[0], -q[1], q[1], q[0];
  } else {
    l << q[0], -q[1], -q[2], -q[3],  //
        q[1], q[0], -q[3], q[2],     //
        q[2], q[3], q[0], -q[1],     //
        q[3], -q[2], q[1], q[0];
  }
  return l;
}

/// Realification of a matrix whose entries are packed as d consecutive reals.
MatD realify(const MatD& packed, int d) {
  const auto rows = packed.rows(), cols = packed.cols() / d;
  MatD out(rows * d, cols * d);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) {
      double q[4];
      for (int k = 0; k < d; ++k) q[k] = packed(i, j * d + k);
      out.block(i * d, j * d, d, d) = left_mult(q, d);
    }
  return out;
}

/// Orthonormal bases of every isotypic part of a representation, keyed by label.
struct IsotypicBases {
  std::map<std::string, MatD> basis;
  std::map<std::string, reps::Irrep<double>> irreps;
};

IsotypicBases isotypic_bases(const reps::Representation<double>& rep) {
  const auto dec = reps::decompose(rep);
  IsotypicBases out;
  out.basis["trivial"] = linalg::orthonormal_basis(dec.fixed, 1e-9);
  out.irreps.emplace("trivial", reps::trivial_irrep<double>(rep.group()));
  for (const auto& piece : dec.pieces) {
    out.basis[piece.irrep.label] = linalg::orthonormal_basis(piece.projector, 1e-9);
    out.irreps.emplace(piece.irrep.label, piece.irrep);
  }
  return out;
}

MatD basis_or_empty(const IsotypicBases& b, const std::string& label, Eigen::Index rows) {
  const auto it = b.basis.find(label);
  return it == b.basis.end() ? MatD(rows, 0) : it->second;
}

void validate(const FixedLocusModel& model) {
  const int nv = model.tangent.base().vertex_count();
  if (model.obstruction.base().vertex_count() != nv || model.obstruction.base().simplices() != model.tangent.base().simplices())
    throw InvalidInput("tangent and obstruction bundles must share the base");
  if (!reps::same_group(model.tangent.group(), model.obstruction.group()))
    throw InvalidInput("tangent and obstruction bundles use different groups");
  if (static_cast<int>(model.linearization.size()) != nv) throw InvalidInput("linearization must be given at every vertex");
  for (int v = 0; v < nv; ++v) {
    const auto& d = model.linearization[static_cast<std::size_t>(v)];
    if (d.rows() != model.obstruction.rank() || d.cols() != model.tangent.rank())
      throw InvalidInput("linearization at vertex " + std::to_string(v) + " has the wrong shape");
  }
  const auto check_vertices = [&](const std::vector<int>& vs, const char* what) {
    for (int v : vs)
      if (v < 0 || v >= nv) throw InvalidInput(std::string(what) + " vertex " + std::to_string(v) + " is not in the base");
  };
  check_vertices(model.zeros, "zero-set");
  if (model.support) check_vertices(*model.support, "support");
}

/// Surjectivity margins of every block of D + θ at a vertex.
VertexReport measure(const FixedLocusModel& model, const IsotypicBases& nb, const IsotypicBases& eb, int v, const MatD& theta) {
  const MatD d = model.linearization[static_cast<std::size_t>(v)] + theta;
  VertexReport r;
  r.vertex = v;
  const auto margin = [&](const std::string& label) {
    const MatD qe = basis_or_empty(eb, label, d.rows());
    const MatD qn = basis_or_empty(nb, label, d.cols());
    return surjectivity(MatD(qe.transpose() * d * qn));
  };
  r.fixed_min_sv = margin("trivial");
  for (const auto& [label, qe] : eb.basis) {
    if (label == "trivial" || qe.cols() == 0) continue;
    r.labels.push_back(label);
    r.min_sv.push_back(margin(label));
  }
  return r;
}

}  // namespace

template <class S>
LinearizationSplit<S> split_linearization(const reps::Representation<S>& domain, const reps::Representation<S>& codomain,
                                          const Mat<S>& d) {
  if (!reps::same_group(domain.group(), codomain.group())) throw InvalidInput("linearization between different group models");
  if (d.rows() != codomain.dim() || d.cols() != domain.dim()) throw InvalidInput("linearization has the wrong shape");

  double worst = 0.0;
  int worst_g = -1;
  for (int g = 0; g < domain.group()->count(); ++g) {
    const double c = max_abs(Mat<S>(d * domain(g) - codomain(g) * d));
    if (c > worst) {
      worst = c;
      worst_g = g;
    }
  }
  const double allowed = is_exact_v<S> ? 0.0 : kEquivariance;
  if (worst > allowed)
    throw InvalidInput("linearization is not equivariant: max commutator norm " + format_double(worst) + " at g = " +
                       std::to_string(worst_g));

  const auto dn = reps::decompose(domain);
  const auto de = reps::decompose(codomain);
  LinearizationSplit<S> out;
  const auto cross = [&](const Mat<S>& p_codomain, const Mat<S>& image) {
    if (image.cols() == 0) return;
    const Mat<S> outside = image - p_codomain * image;
    out.cross_norm = std::max(out.cross_norm, max_abs(outside));
  };

  out.fixed_domain_basis = column_basis<S>(dn.fixed);
  out.fixed_codomain_basis = column_basis<S>(de.fixed);
  const Mat<S> fixed_image = d * out.fixed_domain_basis;
  cross(de.fixed, fixed_image);
  out.fixed_block = block_coordinates<S>(out.fixed_codomain_basis, Mat<S>(de.fixed * fixed_image));

  std::map<std::string, std::pair<const reps::IsotypicPiece<S>*, const reps::IsotypicPiece<S>*>> labels;
  for (const auto& p : dn.pieces) labels[p.irrep.label].first = &p;
  for (const auto& p : de.pieces) labels[p.irrep.label].second = &p;
  for (const auto& [label, pair] : labels) {
    const auto* np = pair.first;
    const auto* ep = pair.second;
    const auto& irrep = np ? np->irrep : ep->irrep;
    LambdaBlock<S> b;
    b.label = label;
    b.dim_v = irrep.dim_v;
    b.endo_dim = irrep.endo_dim;
    b.domain_basis = np ? column_basis<S>(np->projector) : Mat<S>(domain.dim(), 0);
    b.codomain_basis = ep ? column_basis<S>(ep->projector) : Mat<S>(codomain.dim(), 0);
    const Mat<S> pe = ep ? ep->projector : Mat<S>::Zero(codomain.dim(), codomain.dim());
    const Mat<S> image = d * b.domain_basis;
    cross(pe, image);
    b.block = block_coordinates<S>(b.codomain_basis, Mat<S>(pe * image));
    b.n = static_cast<int>(b.domain_basis.cols()) / b.dim_v;
    b.m = static_cast<int>(b.codomain_basis.cols()) / b.dim_v;
    out.blocks.push_back(std::move(b));
  }
  if (out.cross_norm > allowed)
    throw InvalidInput("linearization mixes isotypic components (cross block norm " + format_double(out.cross_norm) + ")");
  return out;
}

template <class S>
IndexPair lambda_index(const Mat<S>& block, int dim_v) {
  if (dim_v <= 0 || block.rows() % dim_v != 0 || block.cols() % dim_v != 0)
    throw InvalidInput("block dimensions are not multiples of dim V = " + std::to_string(dim_v));
  const int real = static_cast<int>(block.cols() - block.rows());
  return {real, real / dim_v};
}

Codimension singular_codim(int n, int m, int endo_dim) {
  if (n < m) return {0, 0};
  return {(n - m + 1) * endo_dim, (n - m + 3) * endo_dim};
}

long long rank_stratum_dimension(int n, int m, int r, int endo_dim) {
  if (r < 0 || r > std::min(n, m)) return -1;  // empty stratum
  // Row space: Grassmannian of r-planes in D^n; then an m × r matrix of rank r.
  const long long grassmannian = static_cast<long long>(endo_dim) * r * (n - r);
  const long long coefficients = static_cast<long long>(endo_dim) * m * r;
  return grassmannian + coefficients;
}

int rank_stratum_dimension_numeric(int n, int m, int r, int endo_dim, sampling::Rng& rng) {
  const int d = endo_dim;
  if (r == 0) return 0;
  const MatD a = gaussian(m, r * d, rng);
  const MatD b = gaussian(r, n * d, rng);
  const MatD ra = realify(a, d), rb = realify(b, d);
  const int params = d * (m * r + r * n);
  MatD jac(d * m * n, params);
  int col = 0;
  const auto record = [&](const MatD& product) {
    // Entry (i, j) of a realified product is determined by the first column of its block.
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) jac.block(d * (i * n + j), col, d, 1) = product.block(i * d, j * d, d, 1);
    ++col;
  };
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < r * d; ++j) {
      MatD da = MatD::Zero(m, r * d);
      da(i, j) = 1.0;
      record(realify(da, d) * rb);
    }
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < n * d; ++j) {
      MatD db = MatD::Zero(r, n * d);
      db(i, j) = 1.0;
      record(ra * realify(db, d));
    }
  return linalg::numeric_rank(jac, 1e-9);
}

template <class S>
PointIndices indices_of(const LinearizationSplit<S>& split) {
  PointIndices out;
  out.ind_sG = split.fixed_index();
  for (const auto& b : split.blocks)
    out.lambdas.push_back({b.label, b.dim_v, b.endo_dim, lambda_index(b.block, b.dim_v).real, static_cast<int>(b.block.rows())});
  return out;
}

bool condition_holds(int ind_sG, const LambdaIndex& lambda) {
  if (lambda.codomain_rank == 0) return true;
  return ind_sG * lambda.dim_v < (lambda.real_index + lambda.dim_v) * lambda.endo_dim;
}

std::vector<bool> check_pointwise_condition(const PointIndices& indices) {
  std::vector<bool> out;
  for (const auto& l : indices.lambdas) out.push_back(condition_holds(indices.ind_sG, l));
  return out;
}

bool s1_condition(const reps::GroupPtr& group, const PointIndices& indices) {
  if (!group->is_circle()) throw InvalidInput("the circle condition needs the circle group, got " + group->name());
  return std::all_of(indices.lambdas.begin(), indices.lambdas.end(),
                     [&](const LambdaIndex& l) { return l.codomain_rank == 0 || l.real_index + 2 > indices.ind_sG; });
}

int division_ring_rank(const MatD& packed, reps::EndoType type, double tol) {
  const int d = reps::endo_dimension(type);
  if (packed.cols() % d != 0)
    throw InvalidInput("entries over " + std::string(reps::to_string(type)) + " need " + std::to_string(d) + " reals each");
  if (!packed.allFinite()) throw InvalidInput("matrix has non-finite entries");
  if (type == reps::EndoType::R) return linalg::numeric_rank(packed, tol);
  const auto rows = packed.rows(), cols = packed.cols() / d;
  const auto complex_rank = [&](const Eigen::MatrixXcd& z) {
    if (z.size() == 0) return 0;
    const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(z).singularValues();
    const double thresh = tol * std::max(1.0, sv.maxCoeff());
    return static_cast<int>((sv.array() > thresh).count());
  };
  using C = std::complex<double>;
  if (type == reps::EndoType::C) {
    Eigen::MatrixXcd z(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j) z(i, j) = C(packed(i, 2 * j), packed(i, 2 * j + 1));
    return complex_rank(z);
  }
  // q = z1 + z2 j  ↦  [[z1, z2], [−conj z2, conj z1]].
  Eigen::MatrixXcd z(2 * rows, 2 * cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) {
      const C z1(packed(i, 4 * j), packed(i, 4 * j + 1));
      const C z2(packed(i, 4 * j + 2), packed(i, 4 * j + 3));
      z(2 * i, 2 * j) = z1;
      z(2 * i, 2 * j + 1) = z2;
      z(2 * i + 1, 2 * j) = -std::conj(z2);
      z(2 * i + 1, 2 * j + 1) = std::conj(z1);
    }
  return complex_rank(z) / 2;
}

ConditionViolated::ConditionViolated(std::vector<ObstructionCertificate> certs)
    : Obstruction([&] {
        std::string msg = "equivariant transversality condition fails";
        if (!certs.empty())
          msg += " at vertex " + std::to_string(certs.front().vertex) + " for " + certs.front().lambda + " (ind s^G = " +
                 std::to_string(certs.front().ind_sG) + ", n = " + std::to_string(certs.front().n) +
                 ", m = " + std::to_string(certs.front().m) + ", d = " + std::to_string(certs.front().d) + ")";
        return msg;
      }()),
      certs_(std::move(certs)) {}

bool Perturbation::zero() const {
  return std::all_of(theta.begin(), theta.end(), [](const MatD& t) { return t.isZero(0.0); });
}

double equivariance_residual(const FixedLocusModel& model, const Perturbation& gamma) {
  double worst = 0.0;
  const auto& n = model.tangent.fiber();
  const auto& e = model.obstruction.fiber();
  for (const auto& t : gamma.theta) {
    if (t.isZero(0.0)) continue;
    for (int g = 0; g < n.group()->count(); ++g) worst = std::max(worst, (t * n(g) - e(g) * t).norm());
  }
  return worst;
}

TransversalityReport check_transversality(const FixedLocusModel& model) {
  validate(model);
  const auto nb = isotypic_bases(model.tangent.fiber());
  const auto eb = isotypic_bases(model.obstruction.fiber());
  TransversalityReport report;
  report.transverse = true;
  for (int v : model.zeros) {
    const auto split = split_linearization(model.tangent.fiber(), model.obstruction.fiber(), model.linearization[static_cast<std::size_t>(v)]);
    const auto idx = indices_of(split);
    VertexReport r = measure(model, nb, eb, v, MatD::Zero(model.obstruction.rank(), model.tangent.rank()));
    r.fixed_surjective_before = r.fixed_min_sv > kSurjective;
    for (std::size_t k = 0; k < r.labels.size(); ++k) r.surjective_before.push_back(r.min_sv[k] > kSurjective);

    if (idx.ind_sG < 0) {
      // More fixed equations than fixed directions: D^G can never be onto.
      report.certificates.push_back(
          {v, "trivial", static_cast<int>(split.fixed_block.cols()), static_cast<int>(split.fixed_block.rows()), 1, idx.ind_sG, 0});
    }
    for (const auto& label : r.labels) {
      const auto it = std::find_if(split.blocks.begin(), split.blocks.end(), [&](const auto& b) { return b.label == label; });
      const auto li = std::find_if(idx.lambdas.begin(), idx.lambdas.end(), [&](const auto& l) { return l.label == label; });
      const bool ok = condition_holds(idx.ind_sG, *li);
      r.condition.push_back(ok);
      if (!ok) report.certificates.push_back({v, label, it->n, it->m, it->endo_dim, idx.ind_sG, (it->n - it->m + 1) * it->endo_dim});
    }
    report.transverse = report.transverse && r.fixed_surjective_before &&
                        std::all_of(r.surjective_before.begin(), r.surjective_before.end(), [](bool b) { return b; });
    report.vertices.push_back(std::move(r));
  }
  report.transverse = report.transverse && report.certificates.empty();
  return report;
}

PerturbationResult construct_equivariant_perturbation(const FixedLocusModel& model, std::uint64_t seed) {
  TransversalityReport before = check_transversality(model);
  if (!before.certificates.empty()) throw ConditionViolated(before.certificates);

  const auto& nrep = model.tangent.fiber();
  const auto& erep = model.obstruction.fiber();
  const int nv = model.tangent.base().vertex_count();
  const auto nb = isotypic_bases(nrep);
  const auto eb = isotypic_bases(erep);
  const std::vector<int> support_list = model.support ? *model.support : model.zeros;
  const std::set<int> support(support_list.begin(), support_list.end());

  PerturbationResult result;
  result.gamma.theta.assign(static_cast<std::size_t>(nv), MatD::Zero(erep.dim(), nrep.dim()));
  const auto require_support = [&](int v, const std::string& what) {
    if (!support.count(v))
      throw MathFailure("vertex " + std::to_string(v) + " needs a perturbation of " + what + " outside the allowed support");
  };

  // Fixed part: least-norm cokernel-directed sample among the seeded draws.
  const MatD qn_g = basis_or_empty(nb, "trivial", nrep.dim());
  const MatD qe_g = basis_or_empty(eb, "trivial", erep.dim());
  for (int v : model.zeros) {
    const MatD dg = qe_g.transpose() * model.linearization[static_cast<std::size_t>(v)] * qn_g;
    if (surjectivity(dg) > kSurjective) continue;
    require_support(v, "the fixed block");
    const MatD u = linalg::orthonormal_basis(dg, 1e-9);
    const MatD coker = MatD::Identity(dg.rows(), dg.rows()) - u * u.transpose();
    auto rng = vertex_rng(seed, v, 0);
    double best_norm = std::numeric_limits<double>::infinity();
    MatD best;
    for (int k = 0; k < kSamples; ++k) {
      const MatD theta = coker * gaussian(dg.rows(), dg.cols(), rng);
      if (surjectivity(MatD(dg + theta)) <= 1e-3) continue;
      if (theta.norm() < best_norm) {
        best_norm = theta.norm();
        best = theta;
      }
    }
    if (best.size() == 0)
      throw ResampleFailure("no surjective fixed block at vertex " + std::to_string(v) + " after " + std::to_string(kSamples) +
                            " samples (dim M^G = " + std::to_string(dg.cols()) + ", rank E^G = " + std::to_string(dg.rows()) + ")");
    result.gamma.theta[static_cast<std::size_t>(v)] += qe_g * best * qn_g.transpose();
  }

  // Isotypic parts: stabilize, then pick τ ∈ Hom_G(N̄, W̄) keeping D + τ surjective.
  int slot = 0;
  for (const auto& [label, qe] : eb.basis) {
    ++slot;
    if (label == "trivial" || qe.cols() == 0) continue;
    const MatD qn = basis_or_empty(nb, label, nrep.dim());
    std::vector<int> failing;
    for (int v : model.zeros)
      if (surjectivity(MatD(qe.transpose() * model.linearization[static_cast<std::size_t>(v)] * qn)) <= kSurjective)
        failing.push_back(v);
    if (failing.empty()) continue;
    for (int v : failing) require_support(v, "the " + label + " block");

    std::vector<MatD> images(static_cast<std::size_t>(nv), MatD::Identity(erep.dim(), erep.dim()));
    for (int v : model.zeros) images[static_cast<std::size_t>(v)] = model.linearization[static_cast<std::size_t>(v)];
    const auto frame = bundles::stabilize_cokernel(model.obstruction, label, images, seed + 31ULL * static_cast<std::uint64_t>(slot));
    const bundles::PureSpace pure(model.obstruction, label);

    for (int v : failing) {
      const MatD& d = model.linearization[static_cast<std::size_t>(v)];
      const MatD qw = linalg::orthonormal_basis(bundles::frame_span_at(pure, frame, v), 1e-9);
      const MatD outside = (MatD::Identity(erep.dim(), erep.dim()) - qw * qw.transpose()) * d * qn;
      const MatD nbar = linalg::orthonormal_basis(MatD(qn * linalg::nullspace<double>(outside, 1e-9)), 1e-9);
      const int expected = static_cast<int>(qn.cols() - qe.cols());
      if (nbar.cols() - qw.cols() != expected)
        throw MathFailure("preimage of the stabilizing frame at vertex " + std::to_string(v) + " has the wrong rank for " + label);

      std::vector<MatD> rho_n, rho_w;
      for (int g = 0; g < nrep.group()->count(); ++g) {
        rho_n.push_back(nbar.transpose() * nrep(g) * nbar);
        rho_w.push_back(qw.transpose() * erep(g) * qw);
      }
      const reps::Representation<double> rn(nrep.group(), rho_n), rw(nrep.group(), rho_w);
      const auto hom = reps::hom_G_basis(rn, rw);
      const MatD dbar = qw.transpose() * d * nbar;
      const double scale = std::max(1.0, dbar.norm());

      auto rng = vertex_rng(seed, v, slot);
      double best_sv = 0.0;
      MatD best;
      for (int k = 0; k < kSamples && best_sv < 1e-3 * scale; ++k) {
        MatD tau = MatD::Zero(qw.cols(), nbar.cols());
        const VecD c = gaussian(static_cast<Eigen::Index>(hom.size()), rng);
        for (std::size_t j = 0; j < hom.size(); ++j) tau += c(static_cast<Eigen::Index>(j)) * hom[j];
        if (tau.norm() > 0.0) tau *= scale / tau.norm();
        const double sv = surjectivity(MatD(dbar + tau));
        if (sv > best_sv) {
          best_sv = sv;
          best = tau;
        }
      }
      if (best_sv <= kSurjective)
        throw ResampleFailure("no surjective " + label + " block at vertex " + std::to_string(v) + " after " +
                              std::to_string(kSamples) + " samples (n = " + std::to_string(qn.cols() / pure.dim_v()) +
                              ", m = " + std::to_string(qe.cols() / pure.dim_v()) + ")");
      result.gamma.theta[static_cast<std::size_t>(v)] += qw * best * nbar.transpose();
    }
  }

  // Certification.
  TransversalityReport& report = result.report;
  report.transverse = true;
  for (std::size_t k = 0; k < model.zeros.size(); ++k) {
    const int v = model.zeros[k];
    VertexReport r = measure(model, nb, eb, v, result.gamma.theta[static_cast<std::size_t>(v)]);
    r.fixed_surjective_before = before.vertices[k].fixed_surjective_before;
    r.surjective_before = before.vertices[k].surjective_before;
    r.condition = before.vertices[k].condition;
    report.transverse = report.transverse && r.fixed_min_sv > kSurjective &&
                        std::all_of(r.min_sv.begin(), r.min_sv.end(), [](double s) { return s > kSurjective; });
    report.vertices.push_back(std::move(r));
  }
  report.equivariance_residual = equivariance_residual(model, result.gamma);
  if (report.equivariance_residual > kEquivariance)
    throw MathFailure("perturbation is not equivariant (residual " + format_double(report.equivariance_residual) + ")");
  if (!report.transverse) throw MathFailure("perturbed linearization is still not surjective");
  return result;
}

#define EQUITRANS_INSTANTIATE(S)                                                                                      \
  template LinearizationSplit<S> split_linearization<S>(const reps::Representation<S>&, const reps::Representation<S>&, \
                                                        const Mat<S>&);                                               \
  template IndexPair lambda_index<S>(const Mat<S>&, int);                                                             \
  template PointIndices indices_of<S>(const LinearizationSplit<S>&);

EQUITRANS_INSTANTIATE(Rational)
EQUITRANS_INSTANTIATE(double)

}  // namespace equitrans::transversality

#include "equitrans/suites.hpp"

#include "equitrans/floer.hpp"
#include "equitrans/groupoid.hpp"
#include "equitrans/linalg.hpp"
#include "equitrans/sampling.hpp"
#include "equitrans/spectral_flow.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <random>

namespace equitrans::suites {

namespace {

using reps::GroupPtr;
using reps::Representation;
using sampling::Rng;

Record make_record(std::string id, std::string anchor, bool pass, Json certificate) {
  return {std::move(id), std::move(anchor), pass, std::move(certificate)};
}

/// Distinct, reproducible stream per suite and purpose.
Rng stream(const Options& o, std::uint64_t salt) {
  std::seed_seq seq{static_cast<std::uint32_t>(o.seed), static_cast<std::uint32_t>(o.seed >> 32),
                    static_cast<std::uint32_t>(salt)};
  return Rng(seq);
}

template <class S>
bool all_zero(const Mat<S>& m) {
  if constexpr (is_exact_v<S>) {
    return (m.array() == S(0)).all();
  } else {
    return m.size() == 0 || m.cwiseAbs().maxCoeff() == 0.0;
  }
}

// ---------------------------------------------------------------- projectors

struct ProjectorResidual {
  double idempotent = 0, orthogonal = 0, completeness = 0, commutation = 0;
  bool exact_zero = true;
  [[nodiscard]] double worst() const { return std::max({idempotent, orthogonal, completeness, commutation}); }
};

/// Exact mode checks commutation on the generators, which is equivalent to
/// checking every element; float mode checks every element.
template <class S>
ProjectorResidual projector_residual(const Representation<S>& rep, const std::vector<reps::Irrep<S>>& irreps) {
  std::vector<int> elements;
  if constexpr (is_exact_v<S>) {
    elements = rep.group()->generators();
  } else {
    elements.resize(static_cast<std::size_t>(rep.group()->count()));
    std::iota(elements.begin(), elements.end(), 0);
  }
  std::vector<Mat<S>> ps{reps::fixed_projector(rep)};
  for (const auto& ir : irreps) ps.push_back(reps::isotypic_projector(rep, ir));
  ProjectorResidual r;
  const auto note = [&](double& slot, const Mat<S>& diff) {
    slot = std::max(slot, max_abs(diff));
    if (!all_zero(diff)) r.exact_zero = false;
  };
  Mat<S> sum = Mat<S>::Zero(rep.dim(), rep.dim());
  for (std::size_t i = 0; i < ps.size(); ++i) {
    sum += ps[i];
    note(r.idempotent, Mat<S>(ps[i] * ps[i] - ps[i]));
    for (std::size_t j = i + 1; j < ps.size(); ++j) {
      note(r.orthogonal, Mat<S>(ps[i] * ps[j]));
      note(r.orthogonal, Mat<S>(ps[j] * ps[i]));
    }
    for (int g : elements) note(r.commutation, Mat<S>(rep(g) * ps[i] - ps[i] * rep(g)));
  }
  note(r.completeness, Mat<S>(sum - Mat<S>::Identity(rep.dim(), rep.dim())));
  return r;
}

Json residual_json(const ProjectorResidual& r) {
  return Json{{"idempotent", r.idempotent}, {"orthogonal", r.orthogonal}, {"completeness", r.completeness},
              {"commutation", r.commutation}};
}

}  // namespace

SuiteReport projectors(const Options& o) {
  SuiteReport out{"projectors", {}, 0};
  const std::vector<std::string> finite{"Z_2", "Z_3", "Z_4", "S_3", "S_4", "Q_8", "D_4"};
  constexpr int kReps = 20;
  constexpr int kMaxDim = 12;
  const std::string anchor = "isotypic projectors: idempotent, mutually orthogonal, complete, commuting with the action";

  for (std::size_t gi = 0; gi < finite.size(); ++gi) {
    const auto group = reps::preset_group(finite[gi]);
    const auto exact_irreps = reps::nontrivial_irreps<Rational>(group);
    const auto float_irreps = reps::nontrivial_irreps<double>(group);
    Rng rng = stream(o, 100 + gi);
    bool exact_ok = true;
    double float_worst = 0;
    int max_dim = 0;
    for (int t = 0; t < kReps; ++t) {
      const auto rep = sampling::random_representation<Rational>(group, kMaxDim, rng);
      max_dim = std::max(max_dim, rep.dim());
      exact_ok = exact_ok && projector_residual(rep, exact_irreps).exact_zero;
      float_worst = std::max(float_worst, projector_residual(reps::orthonormalized(rep), float_irreps).worst());
    }
    out.records.push_back(make_record("projectors/" + finite[gi], anchor, exact_ok && float_worst <= o.tolerance,
                                      Json{{"group", finite[gi]},
                                           {"representations", kReps},
                                           {"max_dim", max_dim},
                                           {"exact_identities_hold", exact_ok},
                                           {"exact_commutation_checked_on", "generators"},
                                           {"float_residual", float_worst},
                                           {"tolerance", o.tolerance}}));
  }

  const auto circle = reps::make_group(reps::CircleGroup(o.quadrature_order));
  const auto irreps = reps::nontrivial_irreps<double>(circle);
  Rng rng = stream(o, 199);
  ProjectorResidual worst;
  int max_dim = 0;
  for (int t = 0; t < kReps; ++t) {
    const auto rep = sampling::random_representation<double>(circle, kMaxDim, rng);
    max_dim = std::max(max_dim, rep.dim());
    const auto r = projector_residual(rep, irreps);
    worst.idempotent = std::max(worst.idempotent, r.idempotent);
    worst.orthogonal = std::max(worst.orthogonal, r.orthogonal);
    worst.completeness = std::max(worst.completeness, r.completeness);
    worst.commutation = std::max(worst.commutation, r.commutation);
  }
  Json cert{{"group", circle->name()}, {"representations", kReps}, {"max_dim", max_dim}};
  cert["float_residual"] = residual_json(worst);
  cert["tolerance"] = o.tolerance;
  out.records.push_back(make_record("projectors/circle", anchor, worst.worst() <= o.tolerance, std::move(cert)));
  return out;
}

// ---------------------------------------------------------------- endotypes

SuiteReport endotypes(const Options& o) {
  SuiteReport out{"endotypes", {}, 0};
  const auto entry = [](const std::string& label, reps::EndoInfo got, reps::EndoType want) {
    return Json{{"irrep", label},
                {"type", std::string(reps::to_string(got.type))},
                {"dim", got.dim},
                {"expected", std::string(reps::to_string(want))},
                {"expected_dim", reps::endo_dimension(want)}};
  };
  const auto matches = [](reps::EndoInfo got, reps::EndoType want) {
    return got.type == want && got.dim == reps::endo_dimension(want);
  };

  {
    Json rows = Json::array();
    bool ok = true;
    for (const std::string name : {"trivial", "Z_2", "Z_3", "S_3", "S_4", "Q_8", "D_4"}) {
      const auto info = reps::endo_type(reps::trivial_representation<Rational>(reps::preset_group(name)));
      ok = ok && matches(info, reps::EndoType::R);
      rows.push_back(entry(name + "/trivial", info, reps::EndoType::R));
    }
    const auto circle = reps::make_group(reps::CircleGroup(o.quadrature_order));
    const auto info = reps::endo_type(reps::trivial_representation<double>(circle));
    ok = ok && matches(info, reps::EndoType::R);
    rows.push_back(entry("circle/trivial", info, reps::EndoType::R));
    out.records.push_back(make_record("endotypes/trivial", "the trivial line has endomorphisms R", ok, Json{{"cases", rows}}));
  }
  {
    const auto circle = reps::make_group(reps::CircleGroup(o.quadrature_order));
    Json rows = Json::array();
    bool ok = true;
    for (int w = 1; w <= circle->circle().max_weight(); ++w) {
      const auto info = reps::endo_type(reps::weight_representation(circle, {w}));
      ok = ok && matches(info, reps::EndoType::C);
      rows.push_back(entry("w" + std::to_string(w), info, reps::EndoType::C));
    }
    out.records.push_back(make_record("endotypes/circle-weights", "every circle weight plane has endomorphisms C", ok,
                                      Json{{"cases", rows}}));
  }
  {
    const auto q8 = reps::preset_group("Q_8");
    const auto h = reps::irrep_by_label<Rational>(q8, "quaternion");
    const auto info = reps::endo_type(h.realization);
    out.records.push_back(make_record("endotypes/quaternion",
                                      "the four-dimensional real irreducible of Q_8 has endomorphisms H",
                                      matches(info, reps::EndoType::H) && h.dim_v == 4,
                                      Json{{"cases", Json::array({entry("Q_8/quaternion", info, reps::EndoType::H)})}}));
  }
  {
    // The computed type agrees with the library label of every preset irreducible.
    Json rows = Json::array();
    bool ok = true;
    for (const std::string name : {"Z_2", "Z_3", "Z_4", "S_3", "S_4", "Q_8", "D_4"})
      for (const auto& ir : reps::nontrivial_irreps<Rational>(reps::preset_group(name))) {
        const auto info = reps::endo_type(ir.realization);
        ok = ok && matches(info, ir.endo_type);
        rows.push_back(entry(name + "/" + ir.label, info, ir.endo_type));
      }
    out.records.push_back(
        make_record("endotypes/library", "computed endomorphism algebra matches the irrep library", ok, Json{{"cases", rows}}));
  }
  return out;
}

// ---------------------------------------------------------------- codimension

SuiteReport codimension(const Options& o) {
  SuiteReport out{"codimension", {}, 0};
  Rng rng = stream(o, 300);
  for (int d : {1, 2, 4})
    for (int m = 1; m <= 4; ++m)
      for (int n = m; n <= 4; ++n) {
        const long long total = static_cast<long long>(d) * n * m;
        const long long stratum = transversality::rank_stratum_dimension(n, m, m - 1, d);
        const long long stratum_formula = total - static_cast<long long>(n - m + 1) * d;
        const int numeric = transversality::rank_stratum_dimension_numeric(n, m, m - 1, d, rng);
        const auto formula = transversality::singular_codim(n, m, d);
        bool pass = stratum == stratum_formula && numeric == stratum && formula.codim == total - stratum;
        Json cert{{"n", n},          {"m", m}, {"d", d}, {"stratum_dim", stratum}, {"stratum_formula", stratum_formula},
                  {"numeric", numeric}};
        if (m >= 2) {
          const long long singular = transversality::rank_stratum_dimension(n, m, m - 2, d);
          const int singular_numeric = transversality::rank_stratum_dimension_numeric(n, m, m - 2, d, rng);
          const long long codim_in_stratum = stratum - singular;
          const long long expected = static_cast<long long>(n - m + 3) * d;
          pass = pass && codim_in_stratum == expected && singular_numeric == singular &&
                 formula.singular_codim == codim_in_stratum;
          cert["singular_dim"] = singular;
          cert["singular_codim_in_stratum"] = codim_in_stratum;
          cert["singular_codim_formula"] = expected;
          cert["singular_dim_if_codim_in_ambient"] = total - expected;
        } else {
          cert["singular_dim"] = nullptr;  // rank ≤ m − 2 is empty
        }
        out.records.push_back(make_record("codimension/n" + std::to_string(n) + "m" + std::to_string(m) + "d" + std::to_string(d),
                                          "non-surjective maps have codimension (n-m+1)d; their singular locus has "
                                          "codimension (n-m+3)d inside them",
                                          pass, std::move(cert)));
      }
  return out;
}

// ---------------------------------------------------------------- conditions

SuiteReport conditions(const Options& o) {
  SuiteReport out{"conditions", {}, 0};
  const auto circle = reps::make_group(reps::CircleGroup(o.quadrature_order));
  Rng rng = stream(o, 400);
  std::uniform_int_distribution<int> ind(-8, 8), copies(1, 4);
  int agree = 0, satisfied = 0;
  Json first_disagreement = nullptr;
  constexpr int kPairs = 500;
  for (int t = 0; t < kPairs; ++t) {
    const int ind_sG = ind(rng);
    const int ind_lambda = 2 * ind(rng);  // multiple of dim V = 2
    const transversality::PointIndices p{ind_sG, {{"w1", 2, 2, ind_lambda, 2 * copies(rng)}}};
    const bool s1 = transversality::s1_condition(circle, p);
    const bool pointwise = transversality::check_pointwise_condition(p)[0];
    if (s1 == pointwise) {
      ++agree;
    } else if (first_disagreement.is_null()) {
      first_disagreement = Json{{"ind_sG", ind_sG}, {"ind_lambda", ind_lambda}, {"s1", s1}, {"pointwise", pointwise}};
    }
    satisfied += pointwise ? 1 : 0;
  }
  out.records.push_back(make_record("conditions/s1-vs-pointwise",
                                    "the circle criterion ind D + 2 > ind s^G is the pointwise condition with dim V = d = 2",
                                    agree == kPairs,
                                    Json{{"pairs", kPairs},
                                         {"agree", agree},
                                         {"satisfied", satisfied},
                                         {"first_disagreement", first_disagreement}}));
  return out;
}

// ---------------------------------------------------------------- spectral flow

namespace {

MatD gaussian(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal;
  MatD m(rows, cols);
  for (auto& x : m.reshaped()) x = normal(rng);
  return m;
}

/// Operator norm uniform in [0, bound].
MatD bounded(int dim, double bound, Rng& rng) {
  const MatD m = gaussian(dim, dim, rng);
  return m * (std::uniform_real_distribution<double>(0.0, bound)(rng) / linalg::singular_values(m).maxCoeff());
}

/// Symmetric hyperbolic matrix with eigenvalues ±[0.5, 1.5).
MatD hyperbolic_limit(int dim, Rng& rng) {
  MatD d = MatD::Zero(dim, dim);
  std::uniform_real_distribution<double> mag(0.5, 1.5);
  for (int i = 0; i < dim; ++i) d(i, i) = (rng() % 2 ? 1.0 : -1.0) * mag(rng);
  const MatD q = sampling::random_orthogonal(dim, rng);
  return q * d * q.transpose();
}

MatD scalar(double x) { return MatD::Constant(1, 1, x); }

}  // namespace

SuiteReport spectral_flow(const Options& o) {
  SuiteReport out{"spectral-flow", {}, 0};
  using namespace flow;
  {
    const int idx = fredholm_index(MatrixPath::tanh_ramp(scalar(-1), scalar(1)));
    out.records.push_back(make_record("spectral-flow/tanh", "the scalar path tanh s has index 1", idx == 1, Json{{"index", idx}}));
  }
  {
    Rng rng = stream(o, 500);
    Json indices = Json::array();
    bool ok = true;
    for (int t = 0; t < 10; ++t) {
      const int idx = fredholm_index(MatrixPath::constant(hyperbolic_limit(1 + t % 4, rng)));
      ok = ok && idx == 0;
      indices.push_back(idx);
    }
    out.records.push_back(make_record("spectral-flow/constant", "constant hyperbolic paths have index 0", ok, Json{{"indices", indices}}));
  }
  {
    Json rows = Json::array();
    bool ok = true;
    for (int lambda = 1; lambda <= 5; ++lambda)
      for (int n = 1; n <= 3; ++n) {
        const auto path = build_lambda_path(LambdaOperatorSpec::zero(n, lambda));
        const int um = unstable_dim(path.minus()), up = unstable_dim(path.plus()), idx = fredholm_index(path);
        ok = ok && um == 2 * n && up == 2 * n && idx == 0;
        rows.push_back(Json{{"lambda", lambda}, {"n", n}, {"unstable_minus", um}, {"unstable_plus", up}, {"index", idx}});
      }
    out.records.push_back(make_record("spectral-flow/lambda-zero",
                                      "with A = 0 both limits have unstable dimension 2n and the index vanishes", ok,
                                      Json{{"cases", rows}}));
  }
  {
    Rng rng = stream(o, 501);
    int runs = 0, zero = 0, hyperbolic = 0;
    Json first_failure = nullptr;
    for (int lambda = 1; lambda <= 5; ++lambda)
      for (int n = 1; n <= 3; ++n)
        for (int trial = 0; trial < 50; ++trial) {
          const MatD am = bounded(2 * n, std::numbers::pi / 2, rng);
          const MatD ap = bounded(2 * n, std::numbers::pi / 2, rng);
          const auto path = build_lambda_path(LambdaOperatorSpec::ramp(lambda, am, ap));
          const int um = unstable_dim(path.minus()), up = unstable_dim(path.plus()), idx = fredholm_index(path);
          ++runs;
          hyperbolic += (um == 2 * n && up == 2 * n) ? 1 : 0;
          zero += idx == 0 ? 1 : 0;
          if (idx != 0 && first_failure.is_null()) first_failure = Json{{"lambda", lambda}, {"n", n}, {"trial", trial}, {"index", idx}};
        }
    out.records.push_back(make_record("spectral-flow/battery",
                                      "a weight-lambda operator with |A(+-inf)| <= pi/2 has index 0", zero == runs && hyperbolic == runs,
                                      Json{{"runs", runs},
                                           {"index_zero", zero},
                                           {"unstable_dim_2n", hyperbolic},
                                           {"norm_bound", "pi/2"},
                                           {"first_failure", first_failure}}));
  }
  return out;
}

SuiteReport oracle(const Options& o) {
  SuiteReport out{"oracle", {}, 0};
  using namespace flow;
  constexpr double kThreshold = 1e-6;
  Rng rng = stream(o, 600);
  for (int dim : {1, 2}) {
    Json rows = Json::array();
    bool ok = true;
    for (int t = 0; t < 10; ++t) {
      const auto path = MatrixPath::tanh_ramp(hyperbolic_limit(dim, rng), hyperbolic_limit(dim, rng));
      const int eig = fredholm_index(path);
      const int shot = oracle_index(path, kThreshold);
      ok = ok && eig == shot;
      rows.push_back(Json{{"eigencount", eig}, {"shooting", shot}});
    }
    out.records.push_back(make_record("oracle/dim" + std::to_string(dim),
                                      "eigenvalue count and bounded-solution count give the same index", ok,
                                      Json{{"threshold", kThreshold}, {"paths", rows}}));
  }
  return out;
}

// ---------------------------------------------------------------- perturbation

namespace {

/// Equivariant m × n block between weight planes: complex entries a + bi
/// become 2 × 2 blocks [[a, −b], [b, a]].
MatD complex_block(const Eigen::MatrixXcd& c) {
  MatD out(2 * c.rows(), 2 * c.cols());
  for (Eigen::Index i = 0; i < c.rows(); ++i)
    for (Eigen::Index j = 0; j < c.cols(); ++j) {
      const auto z = c(i, j);
      out.block<2, 2>(2 * i, 2 * j) << z.real(), -z.imag(), z.imag(), z.real();
    }
  return out;
}

}  // namespace

transversality::FixedLocusModel synthetic_fixed_locus_model(std::uint64_t seed, bool satisfying, int quadrature_order) {
  Rng rng(seed);
  const int size = 2 + static_cast<int>(rng() % 3);
  auto base = seed % 2 ? bundles::SimplicialBase::circle(size + 1) : bundles::SimplicialBase::interval(size);
  const int vertices = base.vertex_count();

  const int e_fixed = 1 + static_cast<int>(rng() % 2);
  int ind_sG = static_cast<int>(rng() % 2);
  struct Weight {
    int lambda, n, m;
  };
  std::vector<Weight> weights;
  for (int lambda = 1; lambda <= 3; ++lambda)
    if (rng() % 3 != 0 || (lambda == 3 && weights.empty())) {
      // A rank drop at a vertex shared by two edges needs a rank-2 frame,
      // which extends over a 1-dimensional base once there are 4 copies.
      const int m = 4;
      weights.push_back({lambda, m + static_cast<int>(rng() % 2), m});
    }
  if (!satisfying) {
    auto& w = weights[rng() % weights.size()];
    if (rng() % 2) {
      w.n = w.m - 1;  // ind D^λ < 0: the right-hand side drops to 0
    } else {
      w.n = w.m;
      ind_sG = 2;
    }
  }

  std::vector<int> n_weights(static_cast<std::size_t>(e_fixed + ind_sG), 0), e_weights(static_cast<std::size_t>(e_fixed), 0);
  for (const auto& w : weights) {
    n_weights.insert(n_weights.end(), static_cast<std::size_t>(w.n), w.lambda);
    e_weights.insert(e_weights.end(), static_cast<std::size_t>(w.m), w.lambda);
  }
  const auto circle = reps::make_group(reps::CircleGroup(quadrature_order));
  const auto n_rep = reps::weight_representation(circle, n_weights);
  const auto e_rep = reps::weight_representation(circle, e_weights);

  std::normal_distribution<double> normal;
  std::vector<MatD> lin;
  const int bad_vertex = static_cast<int>(rng() % static_cast<std::uint64_t>(vertices));
  for (int v = 0; v < vertices; ++v) {
    MatD d = MatD::Zero(e_rep.dim(), n_rep.dim());
    const bool degenerate = v == bad_vertex;
    d.topLeftCorner(e_fixed, e_fixed + ind_sG) = gaussian(e_fixed, e_fixed + ind_sG, rng);
    if (degenerate) d.row(0).head(e_fixed + ind_sG).setZero();
    Eigen::Index row = e_fixed, col = e_fixed + ind_sG;
    for (const auto& w : weights) {
      Eigen::MatrixXcd c(w.m, w.n);
      for (auto& z : c.reshaped()) z = {normal(rng), normal(rng)};
      if (degenerate && w.m > 0) c.row(w.m - 1).setZero();
      if (w.n > 0) d.block(row, col, 2 * w.m, 2 * w.n) = complex_block(c);
      row += 2 * w.m;
      col += 2 * w.n;
    }
    lin.push_back(std::move(d));
  }
  std::vector<int> zeros(static_cast<std::size_t>(vertices));
  std::iota(zeros.begin(), zeros.end(), 0);
  return {bundles::GBundle<double>(base, n_rep), bundles::GBundle<double>(std::move(base), e_rep), std::move(lin), std::move(zeros), {}};
}

SuiteReport perturbation(const Options& o) {
  SuiteReport out{"perturbation", {}, 0};
  using namespace transversality;
  constexpr double kMinSv = 1e-8;
  for (int k = 0; k < 10; ++k) {
    const std::uint64_t seed = o.seed * 1000 + static_cast<std::uint64_t>(k);
    const auto model = synthetic_fixed_locus_model(seed, true, o.quadrature_order);
    Json cert{{"model_seed", seed}, {"vertices", model.tangent.base().vertex_count()}};
    bool pass = false;
    try {
      const auto before = check_transversality(model);
      const auto res = construct_equivariant_perturbation(model, seed);
      double worst = std::numeric_limits<double>::infinity();
      for (const auto& v : res.report.vertices) {
        worst = std::min(worst, v.fixed_min_sv);
        for (double s : v.min_sv) worst = std::min(worst, s);
      }
      cert["transverse_before"] = before.transverse;
      cert["min_singular_value"] = worst;
      cert["equivariance_residual"] = res.report.equivariance_residual;
      pass = res.report.transverse && worst > kMinSv && res.report.equivariance_residual <= o.tolerance;
    } catch (const Error& e) {
      cert["error"] = e.what();
    }
    out.records.push_back(make_record("perturbation/satisfying-" + std::to_string(k),
                                      "under the pointwise condition an equivariant perturbation makes every block surjective",
                                      pass, std::move(cert)));
  }
  for (int k = 0; k < 5; ++k) {
    const std::uint64_t seed = o.seed * 1000 + 500 + static_cast<std::uint64_t>(k);
    const auto model = synthetic_fixed_locus_model(seed, false, o.quadrature_order);
    Json cert{{"model_seed", seed}};
    bool pass = false;
    try {
      (void)construct_equivariant_perturbation(model, seed);
      cert["error"] = "no obstruction reported";
    } catch (const ConditionViolated& e) {
      Json certs = Json::array();
      pass = !e.certificates().empty();
      for (const auto& c : e.certificates()) {
        pass = pass && c.ind_sG >= c.rhs;
        certs.push_back(Json{{"vertex", c.vertex}, {"lambda", c.lambda}, {"n", c.n}, {"m", c.m}, {"d", c.d},
                             {"ind_sG", c.ind_sG}, {"rhs", c.rhs}});
      }
      cert["certificates"] = certs;
    } catch (const Error& e) {
      cert["error"] = e.what();
    }
    out.records.push_back(make_record("perturbation/violating-" + std::to_string(k),
                                      "a zero where the pointwise condition fails yields an obstruction certificate", pass,
                                      std::move(cert)));
  }
  return out;
}

// ---------------------------------------------------------------- floer

namespace {

int rank_at(const floer::CohomologyRanks& r, int degree) {
  const auto it = r.ranks.find(degree);
  return it == r.ranks.end() ? 0 : it->second;
}

}  // namespace

SuiteReport floer(const Options& o) {
  SuiteReport out{"floer", {}, 0};
  using namespace equitrans::floer;
  {
    int d2 = 0, coherent = 0;
    Json first_failure = nullptr;
    for (std::uint64_t k = 0; k < 20; ++k) {
      const auto syn = make_coherent_complex(o.seed * 100 + k);
      const auto sq = check_d_squared(build_differential(syn.complex), syn.complex.lattice);
      const auto coh = coherence_validate(syn.complex, syn.strata);
      d2 += sq.pass ? 1 : 0;
      coherent += coh.pass ? 1 : 0;
      if (!sq.pass && first_failure.is_null())
        first_failure = Json{{"seed", o.seed * 100 + k}, {"x", sq.x}, {"z", sq.z}, {"coefficient", to_string(sq.coefficient)}};
    }
    out.records.push_back(make_record("floer/d-squared", "coherent count tables give a differential with square zero",
                                      d2 == 20 && coherent == 20,
                                      Json{{"tables", 20}, {"d_squared_zero", d2}, {"coherent", coherent}, {"first_failure", first_failure}}));
  }
  for (const auto& name : toy_model_names()) {
    const auto model = toy_model(name);
    auto reduced = model.complex;
    reduced.counts = autonomous_reduce(model.complex, model.morse);
    const bool morse = equals_morse_tensor(build_differential(reduced), model.morse, reduced.lattice);
    const auto ranks = cohomology_rank(reduced, o.cutoff);
    const int generators = static_cast<int>(reduced.generators.size());
    Json r = Json::object();
    for (const auto& [deg, b] : ranks.ranks) r[std::to_string(deg)] = b;
    const bool bound = generators >= ranks.total() && (!model.perfect || generators == ranks.total());
    out.records.push_back(make_record("floer/reduce-" + name,
                                      "for an autonomous Hamiltonian the Floer differential is the Morse differential tensored "
                                      "with the Novikov ring; generators bound the Betti sum",
                                      morse && bound,
                                      Json{{"model", name},
                                           {"morse_tensor", morse},
                                           {"generators", generators},
                                           {"betti_sum", ranks.total()},
                                           {"modulus", ranks.modulus},
                                           {"ranks", r}}));
  }
  for (const auto& [name, want] : std::vector<std::pair<std::string, std::vector<int>>>{{"S2", {1, 0, 1}}, {"T2", {1, 2, 1}}}) {
    const auto model = toy_model(name);
    auto reduced = model.complex;
    reduced.counts = autonomous_reduce(model.complex, model.morse);
    const auto ranks = cohomology_rank(reduced, o.cutoff);
    const std::vector<int> got{rank_at(ranks, 0), rank_at(ranks, 1), rank_at(ranks, 2)};
    out.records.push_back(make_record("floer/ranks-" + name, "toy model cohomology ranks", got == want,
                                      Json{{"model", name}, {"ranks", got}, {"expected", want}, {"cutoff", to_string(o.cutoff)}}));
  }
  return out;
}

// ---------------------------------------------------------------- groupoid

namespace {

using Perm = std::vector<int>;
using groupoid::ActionGroupoid;
using groupoid::GlobalAction;
using reps::FiniteGroup;

Perm compose(const Perm& a, const Perm& b) {
  Perm out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = a[static_cast<std::size_t>(b[i])];
  return out;
}

Perm identity_perm(int n) {
  Perm p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

/// Closure of the generators as a permutation group; element 0 is the identity.
std::vector<Perm> generate(const std::vector<Perm>& gens) {
  std::vector<Perm> elems{identity_perm(static_cast<int>(gens.front().size()))};
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const auto& g : gens) {
      auto p = compose(g, elems[i]);
      if (std::ranges::find(elems, p) == elems.end()) elems.push_back(std::move(p));
    }
  return elems;
}

int index_of(const std::vector<Perm>& elems, const Perm& p) {
  return static_cast<int>(std::ranges::find(elems, p) - elems.begin());
}

FiniteGroup group_of(const std::vector<Perm>& elems, const std::string& name) {
  std::vector<std::vector<int>> table(elems.size(), std::vector<int>(elems.size()));
  for (std::size_t a = 0; a < elems.size(); ++a)
    for (std::size_t b = 0; b < elems.size(); ++b) table[a][b] = index_of(elems, compose(elems[a], elems[b]));
  return FiniteGroup::from_table(std::move(table), name);
}

/// Permutation images of a cyclic group acting through `gen`.
std::vector<Perm> cyclic_action(int order, const Perm& gen) {
  std::vector<Perm> out{identity_perm(static_cast<int>(gen.size()))};
  for (int k = 1; k < order; ++k) out.push_back(compose(gen, out.back()));
  return out;
}

std::vector<int> scale(int n, int u) {
  std::vector<int> out(static_cast<std::size_t>(n));
  for (int h = 0; h < n; ++h) out[static_cast<std::size_t>(h)] = (u * h) % n;
  return out;
}

struct ActionCase {
  std::string name;
  ActionGroupoid x;
  GlobalAction action;
  bool effectivize = false;
};

/// Ω ⋉ O for a permutation group Ω, with G = ⟨τ⟩ acting by τ on O and by
/// conjugation on Ω.
ActionCase conjugation_case(const std::string& name, const std::vector<Perm>& omega, const Perm& tau, int order) {
  auto x = groupoid::make_translation_groupoid(group_of(omega, name), omega);
  const auto sigma = cyclic_action(order, tau);
  std::vector<std::vector<int>> alpha;
  for (const auto& s : sigma) {
    Perm s_inv(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) s_inv[static_cast<std::size_t>(s[i])] = static_cast<int>(i);
    std::vector<int> a;
    for (const auto& h : omega) a.push_back(index_of(omega, compose(compose(s, h), s_inv)));
    alpha.push_back(std::move(a));
  }
  auto act = GlobalAction::on_translation(x, FiniteGroup::cyclic(order), sigma, alpha);
  return {name, std::move(x), std::move(act)};
}

ActionCase cyclic_case(const std::string& name, int omega_order, const std::vector<Perm>& omega_perm, int g_order,
                       const std::vector<Perm>& sigma, const std::vector<std::vector<int>>& alpha, bool effectivize = false) {
  auto x = groupoid::make_translation_groupoid(FiniteGroup::cyclic(omega_order), omega_perm);
  auto act = GlobalAction::on_translation(x, FiniteGroup::cyclic(g_order), sigma, alpha);
  return {name, std::move(x), std::move(act), effectivize};
}

std::vector<std::vector<int>> trivial_alpha(int g_order, int omega_order) {
  return std::vector<std::vector<int>>(static_cast<std::size_t>(g_order), scale(omega_order, 1));
}

std::vector<ActionCase> action_library() {
  std::vector<ActionCase> lib;
  lib.push_back(cyclic_case("free-swap", 1, {{0, 1}}, 2, {{0, 1}, {1, 0}}, trivial_alpha(2, 1)));
  lib.push_back(cyclic_case("Z3-point-inversion", 3, cyclic_action(3, {0}), 2, {{0}, {0}}, {scale(3, 1), scale(3, 2)}));
  lib.push_back(cyclic_case("Z3-rotation-negation", 3, cyclic_action(3, {1, 2, 0}), 2, {{0, 1, 2}, {0, 2, 1}},
                            {scale(3, 1), scale(3, 2)}));
  lib.push_back(cyclic_case("Z4-through-Z2", 4, cyclic_action(4, {0, 2, 1}), 1, {{0, 1, 2}}, trivial_alpha(1, 4), true));
  lib.push_back(cyclic_case("Z4-free-on-4", 1, {{0, 1, 2, 3}}, 4, cyclic_action(4, {1, 2, 3, 0}), trivial_alpha(4, 1)));
  lib.push_back(cyclic_case("Z2-mixed-isotropy", 1, {{0, 1, 2}}, 2, {{0, 1, 2}, {1, 0, 2}}, trivial_alpha(2, 1)));
  lib.push_back(cyclic_case("Z2-fixed-pair", 2, cyclic_action(2, {0, 1}), 2, {{0, 1}, {1, 0}}, trivial_alpha(2, 2)));
  lib.push_back(cyclic_case("Z2-free-silent-G", 2, cyclic_action(2, {1, 0}), 2, {{0, 1}, {0, 1}}, trivial_alpha(2, 2)));
  lib.push_back(cyclic_case("Z6-through-Z2", 6, cyclic_action(6, {1, 0, 2}), 3, cyclic_action(3, {0, 1, 2}), trivial_alpha(3, 6),
                            true));
  lib.push_back(conjugation_case("S3-outer", generate({{1, 0, 2}, {1, 2, 0}}), {1, 0, 2}, 2));
  lib.push_back(conjugation_case("Klein-swap", generate({{1, 0, 3, 2}, {2, 3, 0, 1}}), {0, 2, 1, 3}, 2));
  lib.push_back(conjugation_case("D4-square", generate({{1, 2, 3, 0}, {0, 3, 2, 1}}), {0, 3, 2, 1}, 2));
  return lib;
}

/// U_x = {x} plus one point from every other Ω-orbit with isotropy of the same order.
std::map<int, std::vector<int>> uniformizers(const groupoid::FiniteGroupoid& g) {
  const auto comp = g.components();
  std::map<int, std::vector<int>> out;
  for (int x = 0; x < g.object_count(); ++x) {
    std::vector<int> u{x};
    std::vector<int> used{comp[static_cast<std::size_t>(x)]};
    for (int y = 0; y < g.object_count(); ++y) {
      const int c = comp[static_cast<std::size_t>(y)];
      if (std::ranges::find(used, c) != used.end() || g.stab(y).size() != g.stab(x).size()) continue;
      used.push_back(c);
      u.push_back(y);
    }
    out[x] = std::move(u);
  }
  return out;
}

/// Metric axioms on a distance matrix with tolerance `tol`.
Json matrix_axioms(const MatD& d, double tol, bool& ok) {
  double diag = 0, asym = 0, triangle = 0, negative = 0;
  const auto n = d.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    diag = std::max(diag, std::abs(d(i, i)));
    for (Eigen::Index j = 0; j < n; ++j) {
      asym = std::max(asym, std::abs(d(i, j) - d(j, i)));
      negative = std::max(negative, -d(i, j));
      for (Eigen::Index k = 0; k < n; ++k) triangle = std::max(triangle, d(i, k) - d(i, j) - d(j, k));
    }
  }
  ok = ok && diag <= tol && asym <= tol && triangle <= tol && negative <= tol;
  return Json{{"diagonal", diag}, {"asymmetry", asym}, {"triangle_excess", std::max(0.0, triangle)}};
}

double l1(const VecD& a, const VecD& b) { return (a - b).cwiseAbs().sum(); }

MatD signed_perm(std::initializer_list<double> entries) {
  MatD m(2, 2);
  auto it = entries.begin();
  m << it[0], it[1], it[2], it[3];
  return m;
}

}  // namespace

SuiteReport groupoid(const Options& o) {
  SuiteReport out{"groupoid", {}, 0};
  using namespace equitrans::groupoid;
  for (const auto& c : action_library()) {
    Json cert{{"action", c.name}, {"objects", c.x.object_count()}};
    bool pass = false;
    try {
      std::vector<std::vector<int>> kernels;
      if (c.effectivize) {
        std::vector<int> everything(static_cast<std::size_t>(c.x.object_count()));
        std::iota(everything.begin(), everything.end(), 0);
        for (int ob = 0; ob < c.x.object_count(); ++ob)
          kernels.push_back(effective_part(c.x.groupoid, translation_local_action(c.x, ob, everything)).kernel);
      }
      const auto slices = default_slices(c.x.groupoid, c.action);
      const auto q = quotient_groupoid(c.x.groupoid, c.action, slices, kernels);
      q.groupoid.validate();
      Json rows = Json::array();
      for (std::size_t s = 0; s < slices.size(); ++s)
        rows.push_back(Json{{"object", slices[s]}, {"stab_q", q.stab_q[s]}, {"stab_eff", q.stab_eff[s]}, {"g_x", q.g_x[s]}});
      const auto proper = properness_check(c.x.groupoid, uniformizers(c.x.groupoid));
      cert["slices"] = rows;
      cert["cardinality_law"] = q.cardinality_law();
      cert["uniformizers_checked"] = proper.checked;
      cert["proper"] = proper.pass;
      pass = q.cardinality_law() && proper.pass;
    } catch (const Error& e) {
      cert["error"] = e.what();
    }
    out.records.push_back(make_record("groupoid/" + c.name,
                                      "|stab^Q_x| = |stab^eff_x| |G_x| and |S_{y,U_x}| = |stab_x| on uniformizers", pass,
                                      std::move(cert)));
  }

  // Finite actions by signed permutations on dyadic points: every distance
  // is computed without rounding, so the axioms are checked with tolerance 0.
  Rng rng = stream(o, 900);
  std::uniform_int_distribution<int> grid(-24, 24);
  struct MetricCase {
    std::string name;
    PointAction action;
    Metric metric;
    int dim;
  };
  const MatD id2 = MatD::Identity(2, 2);
  const MatD swap = signed_perm({0, 1, 1, 0}), rot = signed_perm({0, -1, 1, 0}), flip_x = signed_perm({-1, 0, 0, 1});
  const std::vector<MetricCase> metric_cases{
      {"trivial", PointAction::finite({id2}), l1, 2},
      {"Z2-negation-line", PointAction::finite({MatD::Identity(1, 1), -MatD::Identity(1, 1)}), euclidean, 1},
      {"Z2-swap", PointAction::finite({id2, swap}), l1, 2},
      {"Z2xZ2-signs", PointAction::finite({id2, flip_x, MatD(-flip_x), MatD(-id2)}), l1, 2},
      {"Z4-quarter-turn", PointAction::finite({id2, rot, MatD(rot * rot), MatD(rot * rot * rot)}), l1, 2},
      {"D4-square", PointAction::finite({id2, rot, MatD(rot * rot), MatD(rot * rot * rot), flip_x, MatD(rot * flip_x),
                                         MatD(rot * rot * flip_x), MatD(rot * rot * rot * flip_x)}),
       l1, 2},
  };
  for (const auto& mc : metric_cases) {
    std::vector<VecD> pts;
    for (int i = 0; i < 10; ++i) {
      VecD p(mc.dim);
      for (auto& x : p) x = grid(rng) / 8.0;
      pts.push_back(std::move(p));
    }
    bool ok = true;
    Json cert{{"action", mc.name}, {"points", pts.size()}};
    try {
      const auto qm = quotient_metric(pts, mc.action, mc.metric);
      MatD both_ways = qm.d_quotient;
      double invariance = 0;
      for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = 0; j < pts.size(); ++j) {
          both_ways(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = quotient_distance(pts[i], pts[j], mc.action, mc.metric);
          for (int g = 0; g < mc.action.count(); ++g) {
            const MatD m = mc.action.element(g);
            invariance = std::max(invariance, std::abs(averaged_distance(m * pts[i], m * pts[j], mc.action, mc.metric) -
                                                       qm.d_g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))));
          }
        }
      cert["d_G"] = matrix_axioms(qm.d_g, 0.0, ok);
      cert["d_quotient"] = matrix_axioms(both_ways, 0.0, ok);
      cert["invariance"] = invariance;
      ok = ok && invariance == 0.0;
    } catch (const Error& e) {
      ok = false;
      cert["error"] = e.what();
    }
    out.records.push_back(make_record("metric/" + mc.name, "the averaged and quotient distances are metrics, exactly", ok,
                                      std::move(cert)));
  }
  {
    const auto neg = PointAction::finite({MatD::Identity(1, 1), -MatD::Identity(1, 1)});
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    int exact = 0;
    double worst = 0;
    for (int t = 0; t < 100; ++t) {
      const double a = u(rng), b = u(rng);
      const double got = quotient_distance(VecD::Constant(1, a), VecD::Constant(1, b), neg);
      const double want = std::min(std::abs(a - b), std::abs(a + b));
      exact += got == want ? 1 : 0;
      worst = std::max(worst, std::abs(got - want));
    }
    out.records.push_back(make_record("metric/Z2-formula", "d_{X/Z_2}(|x|, |y|) = min(|x - y|, |x + y|)", exact == 100,
                                      Json{{"pairs", 100}, {"exact", exact}, {"max_error", worst}}));
  }
  for (const auto& weights : std::vector<std::vector<int>>{{1}, {1, 2}}) {
    const auto rot_action = PointAction::circle(weights, o.quadrature_order);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    std::vector<VecD> pts;
    for (int i = 0; i < 8; ++i) {
      VecD p(rot_action.dim());
      for (auto& x : p) x = u(rng);
      pts.push_back(std::move(p));
    }
    constexpr double kTol = 1e-8;
    bool ok = true;
    std::string name = "circle-w";
    for (int w : weights) name += std::to_string(w);
    Json cert{{"action", name}, {"quadrature_order", o.quadrature_order}, {"tolerance", kTol}};
    const auto qm = quotient_metric(pts, rot_action);
    double isometry = 0, radial = 0;
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = 0; j < pts.size(); ++j) {
        const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
        isometry = std::max(isometry, std::abs(qm.d_g(ii, jj) - euclidean(pts[i], pts[j])));
        if (weights.size() == 1) radial = std::max(radial, std::abs(qm.d_quotient(ii, jj) - std::abs(pts[i].norm() - pts[j].norm())));
      }
    cert["d_G"] = matrix_axioms(qm.d_g, kTol, ok);
    cert["d_quotient"] = matrix_axioms(qm.d_quotient, kTol, ok);
    cert["isometry_error"] = isometry;
    if (weights.size() == 1) cert["radial_formula_error"] = radial;
    ok = ok && isometry <= kTol && radial <= kTol;
    out.records.push_back(make_record("metric/" + name, "rotations are isometries; the quotient distance is a metric to 1e-8", ok,
                                      std::move(cert)));
  }
  return out;
}

// ---------------------------------------------------------------- registry

bool SuiteReport::pass() const {
  return std::ranges::all_of(records, [](const Record& r) { return r.pass; });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"projectors", "endotypes",    "codimension", "conditions", "spectral-flow",
                                              "oracle",     "perturbation", "floer",       "groupoid"};
  return names;
}

SuiteReport run_suite(const std::string& name, const Options& options) {
  using Fn = SuiteReport (*)(const Options&);
  static const std::map<std::string, Fn> table{
      {"projectors", projectors}, {"endotypes", endotypes},       {"codimension", codimension},
      {"conditions", conditions}, {"spectral-flow", spectral_flow}, {"oracle", oracle},
      {"perturbation", perturbation}, {"floer", floer},           {"groupoid", groupoid}};
  const auto it = table.find(name);
  if (it == table.end()) throw InvalidInput("unknown suite '" + name + "'");
  const auto start = std::chrono::steady_clock::now();
  SuiteReport report = it->second(options);
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

Json to_json(const Record& record) {
  return Json{{"id", record.id}, {"anchor", record.anchor}, {"pass", record.pass}, {"certificate", record.certificate}};
}

Json to_json(const SuiteReport& report) {
  Json records = Json::array();
  for (const auto& r : report.records) records.push_back(to_json(r));
  return Json{{"suite", report.name}, {"pass", report.pass()}, {"records", records}};
}

}  // namespace equitrans::suites

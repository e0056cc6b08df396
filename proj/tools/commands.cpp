#include "commands.hpp"

#include "equitrans/extension.hpp"
#include "equitrans/group_reps.hpp"
#include "equitrans/simplicial.hpp"

#include <algorithm>
#include <functional>
#include <iomanip>
#include <sstream>

namespace equitrans::cli {

namespace {

Record record(std::string id, std::string anchor, bool pass, OrderedJson certificate) {
  return {std::move(id), std::move(anchor), pass, std::move(certificate)};
}

Record failure_record(const std::string& id, const MathFailure& e) {
  OrderedJson cert{{"error", e.what()}};
  if (const auto* cv = dynamic_cast<const transversality::ConditionViolated*>(&e)) {
    OrderedJson certs = OrderedJson::array();
    for (const auto& c : cv->certificates())
      certs.push_back({{"vertex", c.vertex}, {"lambda", c.lambda}, {"n", c.n}, {"m", c.m}, {"d", c.d},
                       {"ind_sG", c.ind_sG}, {"rhs", c.rhs}});
    cert["obstructions"] = certs;
  }
  return record(id, "the construction's hypotheses hold", false, cert);
}

bool use_exact(const reps::GroupPtr& group, const Settings& s) {
  if (group->is_circle()) {
    if (s.mode_explicit && s.mode == Arithmetic::exact) throw InvalidInput("the circle group needs --mode float");
    return false;
  }
  if (s.mode == Arithmetic::floating) return false;
  if (!group->finite().supports_exact()) {
    if (s.mode_explicit) throw InvalidInput("group " + group->name() + " has irreps without rational realizations");
    return false;
  }
  return true;
}

// ---------------------------------------------------------------- reps

template <class S>
std::vector<Record> reps_decompose(const reps::Representation<S>& rep, double tol) {
  const auto dec = reps::decompose(rep);
  struct Named {
    std::string label;
    const Mat<S>* p;
    int rank;
  };
  std::vector<Named> parts;
  if (dec.fixed_rank > 0) parts.push_back({"trivial", &dec.fixed, dec.fixed_rank});
  for (const auto& piece : dec.pieces) parts.push_back({piece.irrep.label, &piece.projector, piece.rank});

  std::vector<Record> out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const Mat<S>& p = *parts[i].p;
    const Mat<S> square = p * p - p;
    double commutation = 0.0;
    for (const auto& g : rep.matrices()) commutation = std::max(commutation, max_abs<S>(g * p - p * g));
    double cross = 0.0;
    for (std::size_t j = 0; j < parts.size(); ++j)
      if (j != i) cross = std::max(cross, max_abs<S>(p * *parts[j].p));
    const bool exact = is_exact_v<S>;
    const double limit = exact ? 0.0 : tol;
    const bool pass = max_abs(square) <= limit && commutation <= limit && cross <= limit;
    out.push_back(record("projector/" + parts[i].label,
                         "isotypic projector is idempotent, equivariant and annihilates the other projectors", pass,
                         {{"label", parts[i].label},
                          {"rank", parts[i].rank},
                          {"idempotence_residual", max_abs(square)},
                          {"commutation_residual", commutation},
                          {"cross_residual", cross},
                          {"projector", matrix_json<S>(p)}}));
  }
  Mat<S> sum = dec.fixed;
  OrderedJson ranks = OrderedJson::object();
  if (dec.fixed_rank > 0) ranks["trivial"] = dec.fixed_rank;
  for (const auto& piece : dec.pieces) {
    sum += piece.projector;
    ranks[piece.irrep.label] = piece.rank;
  }
  const Mat<S> residual = sum - Mat<S>::Identity(rep.dim(), rep.dim());
  out.push_back(record("projector/complete", "the trivial and isotypic projectors sum to the identity",
                       is_zero_matrix<S>(residual, tol), {{"dim", rep.dim()}, {"ranks", ranks}, {"residual", max_abs(residual)}}));
  return out;
}

template <class S>
std::vector<Record> reps_endotype(const reps::Representation<S>& rep, const Json& scenario) {
  const auto info = reps::endo_type(rep);
  const std::string type(reps::to_string(info.type));
  bool pass = true;
  OrderedJson cert{{"dim_v", rep.dim()}, {"type", type}, {"endo_dim", info.dim}};
  if (scenario.contains("expected_type")) {
    const std::string expected = scenario.at("expected_type").get<std::string>();
    cert["expected_type"] = expected;
    pass = expected == type;
  }
  return {record("endotype", "End_G(V) of an irreducible is R, C or H by its real dimension", pass, cert)};
}

template <class S>
std::vector<Record> reps_command(const std::string& verb, const Json& scenario, const reps::GroupPtr& group,
                                 const Settings& s) {
  const auto rep = parse_representation<S>(require(scenario, "representation"), group);
  if (verb == "decompose") return reps_decompose(rep, s.tolerance);
  return reps_endotype(rep, scenario);
}

// ---------------------------------------------------------------- bundles

template <class S>
std::vector<Record> bundle_decompose(const Json& scenario, const reps::GroupPtr& group, double tol) {
  const auto base = parse_base(require(scenario, "base"));
  const auto bundle = parse_bundle<S>(require(scenario, "bundle"), base, group);
  const auto split = bundles::decompose_bundle(bundle);
  OrderedJson components = OrderedJson::array();
  for (const auto& c : split.components) {
    OrderedJson ranks = OrderedJson::object();
    for (const auto& [label, r] : c.ranks) ranks[label] = r;
    components.push_back({{"component", c.component}, {"fixed_rank", c.fixed_rank}, {"ranks", ranks}});
  }
  Mat<S> sum = split.fiberwise.fixed;
  for (const auto& p : split.fiberwise.pieces) sum += p.projector;
  const bool complete = is_zero_matrix<S>(Mat<S>(sum - Mat<S>::Identity(bundle.rank(), bundle.rank())), tol);
  return {record("bundle/splitting",
                 "E splits as the fixed subbundle plus isotypic subbundles preserved by every transition", complete,
                 {{"rank", bundle.rank()}, {"components", components}})};
}

double min_norm_on(const bundles::GBundle<double>& bundle, const bundles::Section& section, const bundles::Simplex& simplex) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& bary : bundles::sample_grid(static_cast<int>(simplex.size()) - 1))
    best = std::min(best, bundles::evaluate(bundle, section, simplex, bary).norm());
  return best;
}

std::vector<Record> bundle_extend(const Json& scenario, const reps::GroupPtr& group, const Settings& s) {
  const auto base = parse_base(require(scenario, "base"));
  const auto bundle = parse_bundle<double>(require(scenario, "bundle"), base, group);
  const Json& spec = require(scenario, "sections");
  const std::string label = require(spec, "label").get<std::string>();
  const auto simplex = parse_simplex(require(spec, "simplex"), base);

  if (spec.contains("frame")) {
    bundles::Frame frame{label, {}};
    for (const auto& sec : spec.at("frame")) frame.sections.push_back(parse_section(sec, base.vertex_count()));
    const auto grown = bundles::extend_trivial_subbundle(bundle, simplex, frame, s.seed);
    const bundles::PureSpace pure(bundle, label);
    double quality = std::numeric_limits<double>::infinity();
    for (const auto& top : base.maximal_simplices())
      for (const auto& bary : bundles::sample_grid(static_cast<int>(top.size()) - 1))
        quality = std::min(quality, bundles::frame_quality(bundle, pure, grown, top, bary));
    OrderedJson values = OrderedJson::array();
    for (const auto& sec : grown.sections) {
      OrderedJson per_vertex = OrderedJson::array();
      for (const auto& v : sec.vertex) per_vertex.push_back(v ? vector_json(*v) : OrderedJson(nullptr));
      values.push_back(per_vertex);
    }
    return {record("bundle/frame-extension", "the frame's G-spans stay independent over the whole base", quality > 1e-8,
                   {{"label", label}, {"rank", static_cast<int>(grown.sections.size())}, {"min_independence", quality},
                    {"vertex_values", values}})};
  }

  const auto boundary = parse_section(require(spec, "boundary"), base.vertex_count());
  const auto section = bundles::extend_nonvanishing_section(bundle, simplex, boundary, label, s.seed);
  const double norm = min_norm_on(bundle, section, simplex);
  OrderedJson centers = OrderedJson::array();
  for (const auto& [sx, c] : section.centers) centers.push_back({{"simplex", sx}, {"value", vector_json(c)}});
  return {record("bundle/section-extension", "the boundary section extends over the simplex without zeros", norm > s.tolerance,
                 {{"label", label}, {"simplex", simplex}, {"min_norm", norm}, {"centers", centers}})};
}

std::vector<Record> bundle_stabilize(const Json& scenario, const reps::GroupPtr& group, const Settings& s) {
  const auto base = parse_base(require(scenario, "base"));
  const auto bundle = parse_bundle<double>(require(scenario, "bundle"), base, group);
  const Json& spec = require(scenario, "stabilize");
  const std::string label = require(spec, "label").get<std::string>();
  std::vector<MatD> images;
  for (const auto& m : require(spec, "images")) images.push_back(parse_matrix<double>(m));
  if (static_cast<int>(images.size()) != base.vertex_count()) throw InvalidInput("need one image matrix per vertex");
  for (auto& m : images) {
    if (m.size() == 0) m = MatD::Zero(bundle.rank(), 0);
    if (m.rows() != bundle.rank()) throw InvalidInput("image matrices need rank(E) rows");
  }

  const auto frame = bundles::stabilize_cokernel(bundle, label, images, s.seed);
  const bundles::PureSpace pure(bundle, label);
  const int target = pure.copies() * pure.dim_v();
  bool pass = true;
  OrderedJson vertices = OrderedJson::array();
  for (int v = 0; v < base.vertex_count(); ++v) {
    const MatD span = frame.sections.empty() ? MatD::Zero(bundle.rank(), 0) : bundles::frame_span_at(pure, frame, v);
    MatD joint(bundle.rank(), images[v].cols() + span.cols());
    joint << pure.projector() * images[v], span;
    const Eigen::JacobiSVD<MatD> svd(joint);
    const auto& sv = svd.singularValues();
    const double covered = target == 0 ? 1.0 : (sv.size() >= target ? sv(target - 1) : 0.0);
    pass = pass && covered > 1e-8;
    vertices.push_back({{"vertex", v}, {"sigma_cover", covered}});
  }
  return {record("bundle/stabilize", "im D plus the trivial subbundle spans the isotypic component at every vertex", pass,
                 {{"label", label}, {"rank", static_cast<int>(frame.sections.size())}, {"component_dim", target},
                  {"vertices", vertices}})};
}

// ---------------------------------------------------------------- transversality

OrderedJson obstruction_json(const std::vector<transversality::ObstructionCertificate>& certs) {
  OrderedJson out = OrderedJson::array();
  for (const auto& c : certs)
    out.push_back({{"vertex", c.vertex}, {"lambda", c.lambda}, {"n", c.n}, {"m", c.m}, {"d", c.d}, {"ind_sG", c.ind_sG},
                   {"rhs", c.rhs}});
  return out;
}

template <class T>
OrderedJson list_json(const std::vector<T>& v) {
  OrderedJson out = OrderedJson::array();
  for (const auto& x : v) out.push_back(static_cast<T>(x));
  return out;
}

std::vector<Record> transversality_check(const Json& scenario, const Settings& s) {
  const auto model = parse_fixed_locus(scenario, s);
  const auto report = transversality::check_transversality(model);
  std::vector<Record> out;
  for (const auto& v : report.vertices) {
    const bool pass = v.fixed_surjective_before && std::ranges::all_of(v.surjective_before, [](bool b) { return b; });
    out.push_back(record("vertex/" + std::to_string(v.vertex),
                         "D^G and every D^lambda are surjective at the zero", pass,
                         {{"vertex", v.vertex},
                          {"fixed_surjective", v.fixed_surjective_before},
                          {"labels", v.labels},
                          {"surjective", list_json<bool>({v.surjective_before.begin(), v.surjective_before.end()})},
                          {"condition", list_json<bool>({v.condition.begin(), v.condition.end()})}}));
  }
  out.push_back(record("pointwise-condition", "ind s^G < (ind D^lambda / dim V^lambda + 1) d at every zero",
                       report.certificates.empty(), {{"obstructions", obstruction_json(report.certificates)}}));
  return out;
}

std::vector<Record> transversality_perturb(const Json& scenario, const Settings& s) {
  const auto model = parse_fixed_locus(scenario, s);
  const auto result = transversality::construct_equivariant_perturbation(model, s.seed);
  std::vector<Record> out;
  for (const auto& v : result.report.vertices) {
    const bool pass = v.fixed_min_sv > 1e-8 && std::ranges::all_of(v.min_sv, [](double x) { return x > 1e-8; });
    out.push_back(record("vertex/" + std::to_string(v.vertex),
                         "after the equivariant perturbation every block of the linearization is surjective", pass,
                         {{"vertex", v.vertex},
                          {"fixed_min_sv", v.fixed_min_sv},
                          {"labels", v.labels},
                          {"min_sv", v.min_sv},
                          {"theta", matrix_json<double>(result.gamma.theta[static_cast<std::size_t>(v.vertex)])}}));
  }
  out.push_back(record("equivariance", "the perturbation commutes with the group action",
                       result.report.equivariance_residual <= s.tolerance,
                       {{"residual", result.report.equivariance_residual}, {"tolerance", s.tolerance}}));
  return out;
}

// ---------------------------------------------------------------- flow

std::vector<Record> flow_command(const std::string& verb, const Json& scenario) {
  const double threshold = scenario.contains("threshold") ? to_real(scenario.at("threshold")) : 1e-6;
  std::vector<Record> out;
  for (const auto& p : parse_paths(scenario)) {
    const int minus = flow::unstable_dim(p.path.minus());
    const int plus = flow::unstable_dim(p.path.plus());
    const int index = flow::fredholm_index(p.path);
    if (verb == "index") {
      OrderedJson cert{{"dim", p.path.dim()}, {"unstable_minus", minus}, {"unstable_plus", plus}, {"index", index}};
      bool pass = true;
      if (p.expected_index) {
        cert["expected_index"] = *p.expected_index;
        pass = *p.expected_index == index;
      }
      out.push_back(record("index/" + p.name, "Fredholm index is dim E^u(B^-) - dim E^u(B^+)", pass, cert));
    } else {
      const int kernel = flow::kernel_dim_oracle(p.path, threshold);
      const int cokernel = flow::kernel_dim_oracle(p.path.adjoint(), threshold);
      out.push_back(record("oracle/" + p.name, "the eigencount index equals dim ker L* - dim ker L from shooting",
                           cokernel - kernel == index,
                           {{"index", index}, {"kernel", kernel}, {"adjoint_kernel", cokernel}, {"threshold", threshold}}));
    }
  }
  return out;
}

// ---------------------------------------------------------------- floer

std::string key_json_name(const floer::FloerComplex& c, int i) { return c.generators.gens[static_cast<std::size_t>(i)].name; }

Record d_squared_record(const floer::FloerComplex& c) {
  const std::string anchor = "the Floer differential squares to zero";
  if (c.generators.size() == 0) return record("d-squared", anchor, true, {{"generators", 0}, {"vacuous", true}});
  const auto delta = floer::build_differential(c);
  const auto sq = floer::check_d_squared(delta, c.lattice);
  OrderedJson cert{{"generators", c.generators.size()}, {"nonzero_counts", static_cast<int>(c.counts.size())}};
  if (!sq.pass) {
    cert["x"] = key_json_name(c, sq.x);
    cert["z"] = key_json_name(c, sq.z);
    cert["coefficient"] = floer::to_string(sq.coefficient);
  }
  return record("d-squared", anchor, sq.pass, cert);
}

OrderedJson counts_json(const floer::FloerComplex& c, const floer::ModuliCountTable& counts) {
  OrderedJson out = OrderedJson::array();
  for (const auto& [key, n] : counts)
    if (n != 0)
      out.push_back({{"x", key_json_name(c, key.x)}, {"y", key_json_name(c, key.y)}, {"class", key.a}, {"count", n}});
  return out;
}

std::vector<Record> floer_command(const std::string& verb, const Json& scenario, const Settings& s) {
  const auto f = parse_floer(scenario);
  std::vector<Record> out;
  if (verb == "d2") {
    out.push_back(d_squared_record(f.complex));
    if (!f.strata.empty()) {
      const auto coh = floer::coherence_validate(f.complex, f.strata);
      out.push_back(record("coherence", "each broken stratum obeys the product rule and the strata add up to the square",
                           coh.pass, {{"strata_checked", coh.strata_checked}, {"failures", coh.failures}}));
    }
  } else if (verb == "reduce") {
    if (!f.s1_equivariant) throw InvalidInput("autonomous reduction needs \"s1_equivariant\": true");
    floer::FloerComplex reduced = f.complex;
    reduced.counts = floer::autonomous_reduce(f.complex, f.morse);
    reduced.validate();
    const auto delta = floer::build_differential(reduced);
    out.push_back(record("morse-tensor", "for an autonomous Hamiltonian the Floer differential is the Morse differential tensored with Lambda",
                         floer::equals_morse_tensor(delta, f.morse, reduced.lattice),
                         {{"counts", counts_json(reduced, reduced.counts)}}));
    out.push_back(d_squared_record(reduced));
  } else {
    // An S¹-invariant Hamiltonian is ranked after its autonomous reduction.
    floer::FloerComplex c = f.complex;
    const bool reduced = f.s1_equivariant;
    if (reduced) c.counts = floer::autonomous_reduce(f.complex, f.morse);
    out.push_back(d_squared_record(c));
    if (!out.back().pass) return out;
    const auto ranks = floer::cohomology_rank(c, s.cutoff);
    OrderedJson by_degree = OrderedJson::object();
    for (const auto& [deg, r] : ranks.ranks) by_degree[std::to_string(deg)] = r;
    out.push_back(record("ranks", "Lambda-ranks of Floer cohomology by grading class", true,
                         {{"modulus", ranks.modulus}, {"ranks", by_degree}, {"total", ranks.total()},
                          {"differential_rank", ranks.differential_rank}, {"cutoff", equitrans::to_string(s.cutoff)},
                          {"autonomous_reduction", reduced}}));
    out.push_back(record("generator-bound", "the number of generators bounds the total rank from above",
                         c.generators.size() >= ranks.total(),
                         {{"generators", c.generators.size()}, {"total", ranks.total()}}));
  }
  return out;
}

// ---------------------------------------------------------------- groupoid and metric

std::vector<Record> groupoid_command(const std::string& verb, const Json& scenario) {
  const auto g = parse_groupoid(scenario);
  std::vector<Record> out;
  if (verb == "quotient") {
    const auto q = groupoid::quotient_groupoid(g.groupoid, *g.action, g.slices, g.kernels);
    for (std::size_t i = 0; i < q.slices.size(); ++i) {
      const int stab_q = q.stab_q[i];
      const int stab_eff = q.stab_eff[i];
      const int g_x = q.g_x[i];
      out.push_back(record("slice/" + std::to_string(q.slices[i]), "|stab^Q_x| = |stab^eff_x| |G_x|",
                           stab_q == stab_eff * g_x,
                           {{"object", q.slices[i]}, {"stab_q", stab_q}, {"stab_eff", stab_eff}, {"g_x", g_x}}));
    }
    out.push_back(record("quotient", "the quotient is a groupoid with one object per orbit class", true,
                         {{"objects", q.groupoid.object_count()}, {"morphisms", q.groupoid.morphism_count()},
                          {"slices", q.slices}}));
    return out;
  }
  const auto proper = groupoid::properness_check(g.groupoid, g.uniformizers);
  OrderedJson failures = OrderedJson::array();
  for (const auto& f : proper.failures)
    failures.push_back({{"x", f.x}, {"y", f.y}, {"orbit_set_size", f.orbit_set_size}, {"stab_size", f.stab_size}});
  out.push_back(record("properness", "|S_{y,U_x}| = |stab_x| for every y in U_x", proper.pass,
                       {{"checked", proper.checked}, {"failures", failures}}));
  if (!g.regularity.empty()) {
    const auto reg = groupoid::regularity_check(g.groupoid, g.regularity);
    OrderedJson bad = OrderedJson::array();
    for (const auto& r : reg.records)
      if (!r.pass) bad.push_back({{"object", r.object}, {"morphism", r.morphism}});
    out.push_back(record("regularity", "an element fixing a sub-neighborhood pointwise fixes the neighborhood", reg.pass,
                         {{"checked", static_cast<int>(reg.records.size())}, {"failures", bad}}));
  }
  return out;
}

OrderedJson axioms(const MatD& d, double tol, bool& ok) {
  double diag = 0, asym = 0, triangle = 0, negative = 0;
  for (Eigen::Index i = 0; i < d.rows(); ++i) {
    diag = std::max(diag, std::abs(d(i, i)));
    for (Eigen::Index j = 0; j < d.rows(); ++j) {
      asym = std::max(asym, std::abs(d(i, j) - d(j, i)));
      negative = std::max(negative, -d(i, j));
      for (Eigen::Index k = 0; k < d.rows(); ++k) triangle = std::max(triangle, d(i, k) - d(i, j) - d(j, k));
    }
  }
  ok = diag <= tol && asym <= tol && triangle <= tol && negative <= tol;
  return {{"diagonal", diag}, {"asymmetry", asym}, {"triangle_excess", std::max(0.0, triangle)}, {"tolerance", tol}};
}

std::vector<Record> metric_quotient(const Json& scenario, const Settings& s) {
  const auto m = parse_metric(scenario, s);
  const auto qm = groupoid::quotient_metric(m.points, m.action, m.metric);
  const double tol = m.action.is_circle() ? 1e-8 : 0.0;
  bool ok_g = false;
  bool ok_q = false;
  const auto ax_g = axioms(qm.d_g, tol, ok_g);
  const auto ax_q = axioms(qm.d_quotient, tol, ok_q);
  double invariance = 0.0;
  for (int k = 0; k < m.action.count(); ++k) {
    const MatD g = m.action.element(k);
    for (std::size_t i = 0; i < m.points.size(); ++i)
      for (std::size_t j = 0; j < m.points.size(); ++j)
        invariance = std::max(invariance, std::abs(groupoid::averaged_distance(g * m.points[i], g * m.points[j], m.action, m.metric) -
                                                   qm.d_g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))));
  }
  return {record("metric/averaged", "the averaged distance d_G is a G-invariant metric", ok_g && invariance <= tol,
                 {{"metric", m.metric_name}, {"axioms", ax_g}, {"invariance_residual", invariance},
                  {"distances", matrix_json<double>(qm.d_g)}}),
          record("metric/quotient", "min over g of d_G(x, g y) is a pseudometric on the orbit space", ok_q,
                 {{"axioms", ax_q}, {"distances", matrix_json<double>(qm.d_quotient)}})};
}

}  // namespace

bool Report::pass() const {
  return std::ranges::all_of(records, [](const Record& r) { return r.pass; });
}

const std::vector<std::pair<std::string, std::vector<std::string>>>& command_table() {
  static const std::vector<std::pair<std::string, std::vector<std::string>>> table{
      {"reps", {"decompose", "endotype"}},
      {"bundle", {"decompose", "extend", "stabilize"}},
      {"transversality", {"check", "perturb"}},
      {"flow", {"index", "oracle"}},
      {"floer", {"d2", "reduce", "ranks"}},
      {"groupoid", {"quotient", "check"}},
      {"metric", {"quotient"}},
  };
  return table;
}

Report run_command(const std::string& area, const std::string& verb, const Json& scenario, const Settings& s) {
  Report report{area + " " + verb, s, {}, {}};
  const auto area_it = std::ranges::find_if(command_table(), [&](const auto& e) { return e.first == area; });
  if (area_it == command_table().end() || std::ranges::find(area_it->second, verb) == area_it->second.end())
    throw InvalidInput("unknown command '" + area + " " + verb + "'");

  try {
    if (area == "reps") {
      const auto group = parse_group(require(scenario, "group"), s);
      report.records = use_exact(group, s) ? reps_command<Rational>(verb, scenario, group, s)
                                           : reps_command<double>(verb, scenario, group, s);
    } else if (area == "bundle") {
      const auto group = parse_group(require(scenario, "group"), s);
      if (verb == "decompose")
        report.records = use_exact(group, s) ? bundle_decompose<Rational>(scenario, group, s.tolerance)
                                             : bundle_decompose<double>(scenario, group, s.tolerance);
      else if (verb == "extend")
        report.records = bundle_extend(scenario, group, s);
      else
        report.records = bundle_stabilize(scenario, group, s);
    } else if (area == "transversality") {
      report.records = verb == "check" ? transversality_check(scenario, s) : transversality_perturb(scenario, s);
    } else if (area == "flow") {
      report.records = flow_command(verb, scenario);
    } else if (area == "floer") {
      report.records = floer_command(verb, scenario, s);
    } else if (area == "groupoid") {
      report.records = groupoid_command(verb, scenario);
    } else {
      report.records = metric_quotient(scenario, s);
    }
  } catch (const MathFailure& e) {
    report.records.push_back(failure_record(area + "/" + verb, e));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("scenario has the wrong shape: ") + e.what());
  }
  return report;
}

Report run_suites(const std::string& name, const Settings& s) {
  const suites::Options options{s.seed, s.tolerance, s.quadrature_order, s.cutoff};
  Report report{"suite " + name, s, {}, {}};
  const auto names = name == "all" ? suites::suite_names() : std::vector<std::string>{name};
  for (const auto& n : names) {
    auto r = suites::run_suite(n, options);
    report.records.insert(report.records.end(), r.records.begin(), r.records.end());
    report.suites.push_back(std::move(r));
  }
  return report;
}

OrderedJson to_json(const Report& report) {
  OrderedJson out{{"command", report.command}, {"settings", settings_json(report.settings)}, {"pass", report.pass()}};
  if (!report.suites.empty()) {
    OrderedJson list = OrderedJson::array();
    for (const auto& s : report.suites) list.push_back(suites::to_json(s));
    out["suites"] = list;
    return out;
  }
  OrderedJson records = OrderedJson::array();
  for (const auto& r : report.records) records.push_back(suites::to_json(r));
  out["records"] = records;
  return out;
}

std::string to_text(const Report& report) {
  std::ostringstream os;
  const auto line = [&](const Record& r) {
    os << (r.pass ? "PASS " : "FAIL ") << r.id << ": " << r.anchor << "\n";
    if (!r.pass) os << "     " << r.certificate.dump() << "\n";
  };
  os << report.command << " (seed " << report.settings.seed << ")\n";
  if (report.suites.empty()) {
    for (const auto& r : report.records) line(r);
  } else {
    for (const auto& s : report.suites) {
      const auto failed = std::ranges::count_if(s.records, [](const Record& r) { return !r.pass; });
      os << (s.pass() ? "PASS " : "FAIL ") << "suite " << s.name << ": " << s.records.size() << " records, " << failed
         << " failed, " << std::fixed << std::setprecision(3) << s.seconds << " s\n";
      for (const auto& r : s.records)
        if (!r.pass) line(r);
    }
  }
  const auto failed = std::ranges::count_if(report.records, [](const Record& r) { return !r.pass; });
  os << (report.pass() ? "all " + std::to_string(report.records.size()) + " checks pass"
                       : std::to_string(failed) + " of " + std::to_string(report.records.size()) + " checks fail")
     << "\n";
  return os.str();
}

}  // namespace equitrans::cli

#include "scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace equitrans::cli {

namespace {

std::string where(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  int line = 1;
  std::size_t line_start = 0;
  for (std::size_t i = 0; i < byte; ++i)
    if (text[i] == '\n') {
      ++line;
      line_start = i + 1;
    }
  // nlohmann reports the byte just past the offending token.
  const std::size_t column = byte > line_start ? byte - line_start : 1;
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

int to_int(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) throw InvalidInput(what + " must be an integer");
  return j.get<int>();
}

std::vector<int> int_list(const Json& j, const std::string& what) {
  if (!j.is_array()) throw InvalidInput(what + " must be an array of integers");
  std::vector<int> out;
  for (const auto& e : j) out.push_back(to_int(e, what));
  return out;
}

std::vector<std::vector<int>> int_table(const Json& j, const std::string& what) {
  if (!j.is_array()) throw InvalidInput(what + " must be an array of integer arrays");
  std::vector<std::vector<int>> out;
  for (const auto& row : j) out.push_back(int_list(row, what));
  return out;
}

int int_key(const std::string& key, const std::string& what) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(key, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != key.size()) throw InvalidInput(what + " key '" + key + "' is not an integer");
  return value;
}

template <class S>
S scalar_of(const Json& j) {
  if constexpr (is_exact_v<S>)
    return to_rational(j);
  else
    return to_real(j);
}

}  // namespace

Json parse_scenario_text(const std::string& text) {
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) return Json::object();
  try {
    Json j = Json::parse(text);
    if (!j.is_object()) throw InvalidInput("scenario must be a JSON object");
    return j;
  } catch (const Json::parse_error& e) {
    std::string message = e.what();
    if (const auto pos = message.find("syntax error"); pos != std::string::npos) message = message.substr(pos);
    throw InvalidInput("scenario parse error at " + where(text, e.byte) + ": " + message);
  }
}

Json load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read scenario file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario_text(buffer.str());
}

const Json& require(const Json& j, const std::string& key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInput("missing field '" + key + "'");
  return j.at(key);
}

Rational to_rational(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_float()) {
    const std::string text = j.dump();
    if (text.find_first_of("eE") == std::string::npos) return parse_rational(text);
    return Rational(j.get<double>());
  }
  throw InvalidInput("expected a number or a \"p/q\" string, got " + j.dump());
}

double to_real(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_rational(j.get<std::string>()).convert_to<double>();
  throw InvalidInput("expected a number, got " + j.dump());
}

Settings resolve_settings(const Json& scenario, const FlagOverrides& flags) {
  Settings s;
  if (scenario.contains("settings")) {
    const Json& cfg = scenario.at("settings");
    if (!cfg.is_object()) throw InvalidInput("'settings' must be an object");
    if (cfg.contains("seed")) {
      if (!cfg.at("seed").is_number_unsigned()) throw InvalidInput("settings.seed must be a nonnegative integer");
      s.seed = cfg.at("seed").get<std::uint64_t>();
    }
    if (cfg.contains("tolerance")) s.tolerance = to_real(cfg.at("tolerance"));
    if (cfg.contains("cutoff")) s.cutoff = to_rational(cfg.at("cutoff"));
    if (cfg.contains("quadrature_order")) s.quadrature_order = to_int(cfg.at("quadrature_order"), "settings.quadrature_order");
    if (cfg.contains("mode")) {
      const std::string m = cfg.at("mode").get<std::string>();
      if (m != "exact" && m != "float") throw InvalidInput("settings.mode must be exact or float");
      s.mode = m == "exact" ? Arithmetic::exact : Arithmetic::floating;
      s.mode_explicit = true;
    }
  }
  if (flags.seed) s.seed = *flags.seed;
  if (flags.tolerance) s.tolerance = *flags.tolerance;
  if (flags.cutoff) s.cutoff = parse_rational(*flags.cutoff);
  if (flags.quadrature_order) s.quadrature_order = *flags.quadrature_order;
  if (flags.mode) {
    if (*flags.mode != "exact" && *flags.mode != "float") throw InvalidInput("--mode must be exact or float");
    s.mode = *flags.mode == "exact" ? Arithmetic::exact : Arithmetic::floating;
    s.mode_explicit = true;
  }
  if (!(s.tolerance > 0.0)) throw InvalidInput("tolerance must be positive");
  if (s.quadrature_order < 5) throw InvalidInput("quadrature order must be at least 5");
  return s;
}

OrderedJson settings_json(const Settings& s) {
  return OrderedJson{{"seed", s.seed},
                     {"tolerance", s.tolerance},
                     {"cutoff", equitrans::to_string(s.cutoff)},
                     {"quadrature_order", s.quadrature_order},
                     {"mode", s.mode == Arithmetic::exact ? "exact" : "float"}};
}

template <class S>
Mat<S> parse_matrix(const Json& j) {
  if (!j.is_array()) throw InvalidInput("matrix must be an array of rows");
  if (j.empty()) return Mat<S>(0, 0);
  const auto cols = j.front().is_array() ? j.front().size() : 0;
  Mat<S> m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw InvalidInput("matrix rows must be arrays of equal length");
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = scalar_of<S>(j[r][c]);
  }
  return m;
}

VecD parse_vector(const Json& j) {
  if (!j.is_array()) throw InvalidInput("vector must be an array of numbers");
  VecD v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = to_real(j[i]);
  return v;
}

template <class S>
OrderedJson matrix_json(const Mat<S>& m) {
  OrderedJson rows = OrderedJson::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    OrderedJson row = OrderedJson::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if constexpr (is_exact_v<S>)
        row.push_back(equitrans::to_string(m(r, c)));
      else
        row.push_back(m(r, c));
    }
    rows.push_back(row);
  }
  return rows;
}

OrderedJson vector_json(const VecD& v) {
  OrderedJson out = OrderedJson::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

reps::FiniteGroup parse_finite_group(const Json& j) {
  if (j.is_string()) {
    const auto g = reps::preset_group(j.get<std::string>());
    if (g->is_circle()) throw InvalidInput("expected a finite group");
    return g->finite();
  }
  if (j.contains("preset")) return parse_finite_group(j.at("preset"));
  if (!j.contains("table")) throw InvalidInput("finite group needs a preset name or a 'table'");
  auto group = reps::FiniteGroup::from_table(int_table(j.at("table"), "group table"),
                                             j.value("name", std::string("custom")));
  if (j.contains("irreps")) {
    std::vector<reps::IrrepData> irreps;
    for (const auto& ir : j.at("irreps")) {
      reps::IrrepData data;
      data.label = require(ir, "label").get<std::string>();
      for (const auto& m : require(ir, "matrices")) {
        data.exact.push_back(parse_matrix<Rational>(m));
        data.floating.push_back(to_double(data.exact.back()));
      }
      if (data.exact.empty()) throw InvalidInput("irrep " + data.label + " has no matrices");
      data.dim = static_cast<int>(data.exact.front().rows());
      irreps.push_back(std::move(data));
    }
    group = group.with_irreps(std::move(irreps));
  }
  return group;
}

reps::GroupPtr parse_group(const Json& j, const Settings& s) {
  if (j.is_object() && j.contains("circle")) {
    const Json& c = j.at("circle");
    int order = s.quadrature_order;
    if (c.is_object() && c.contains("quadrature_order")) order = to_int(c.at("quadrature_order"), "circle.quadrature_order");
    return reps::make_group(reps::CircleGroup(order));
  }
  if (j.is_string() && (j.get<std::string>() == "circle" || j.get<std::string>() == "S1"))
    return reps::make_group(reps::CircleGroup(s.quadrature_order));
  return reps::make_group(parse_finite_group(j));
}

template <class S>
reps::Representation<S> parse_representation(const Json& j, const reps::GroupPtr& group) {
  if (!j.is_object()) throw InvalidInput("representation must be an object");
  if (j.contains("sum")) {
    const Json& parts = j.at("sum");
    if (!parts.is_array() || parts.empty()) throw InvalidInput("'sum' needs at least one summand");
    auto rep = parse_representation<S>(parts.front(), group);
    for (std::size_t i = 1; i < parts.size(); ++i) rep = reps::direct_sum(rep, parse_representation<S>(parts[i], group));
    return rep;
  }
  if (j.contains("trivial")) return reps::trivial_representation<S>(group, to_int(j.at("trivial"), "trivial dimension"));
  if (j.contains("irrep")) return reps::irrep_by_label<S>(group, j.at("irrep").get<std::string>()).realization;
  if (j.contains("weights")) {
    if constexpr (is_exact_v<S>) {
      throw InvalidInput("weight representations of the circle need float mode");
    } else {
      return reps::weight_representation(group, int_list(j.at("weights"), "weights"));
    }
  }
  if (j.contains("permutation")) {
    auto rep = reps::permutation_representation(group, int_table(j.at("permutation"), "permutation"));
    if constexpr (is_exact_v<S>)
      return rep;
    else
      return reps::to_float(rep);
  }
  if (j.contains("matrices")) {
    std::vector<Mat<S>> action;
    for (const auto& m : j.at("matrices")) action.push_back(parse_matrix<S>(m));
    return reps::Representation<S>(group, std::move(action));
  }
  if (j.contains("generators")) {
    std::map<int, Mat<S>> images;
    for (const auto& [key, m] : j.at("generators").items()) images[int_key(key, "generator")] = parse_matrix<S>(m);
    return reps::Representation<S>::from_generators(group, images);
  }
  throw InvalidInput("representation needs one of sum, trivial, irrep, weights, permutation, matrices, generators");
}

bundles::SimplicialBase parse_base(const Json& j) {
  if (!j.is_object()) throw InvalidInput("'base' must be an object");
  if (j.contains("interval")) return bundles::SimplicialBase::interval(to_int(j.at("interval"), "interval"));
  if (j.contains("circle")) return bundles::SimplicialBase::circle(to_int(j.at("circle"), "circle"));
  if (j.contains("simplex")) return bundles::SimplicialBase::standard_simplex(to_int(j.at("simplex"), "simplex"));
  if (j.contains("points")) return bundles::SimplicialBase::points(to_int(j.at("points"), "points"));
  return bundles::SimplicialBase(to_int(require(j, "vertices"), "vertices"), int_table(require(j, "simplices"), "simplices"));
}

template <class S>
bundles::GBundle<S> parse_bundle(const Json& j, const bundles::SimplicialBase& base, const reps::GroupPtr& group) {
  auto fiber = parse_representation<S>(require(j, "fiber"), group);
  std::map<bundles::Edge, Mat<S>> transitions;
  if (j.contains("transitions")) {
    for (const auto& t : j.at("transitions")) {
      const auto edge = int_list(require(t, "edge"), "edge");
      if (edge.size() != 2) throw InvalidInput("transition edge must have two vertices");
      Mat<S> m = parse_matrix<S>(require(t, "matrix"));
      if (edge[0] < edge[1]) {
        transitions[{edge[0], edge[1]}] = m;
      } else {
        // τ(b → a) given; store τ(a → b) as its inverse.
        if (m.rows() != m.cols()) throw InvalidInput("transition matrix must be square");
        transitions[{edge[1], edge[0]}] = Mat<S>(m.fullPivLu().inverse());
      }
    }
  }
  return bundles::GBundle<S>(base, std::move(fiber), transitions);
}

bundles::Simplex parse_simplex(const Json& j, const bundles::SimplicialBase& base) {
  auto s = int_list(j, "simplex");
  std::ranges::sort(s);
  if (!base.contains(s)) throw InvalidInput("simplex " + j.dump() + " is not in the base");
  return s;
}

bundles::Section parse_section(const Json& j, int vertex_count) {
  if (!j.is_object()) throw InvalidInput("section must map vertex numbers to vectors");
  auto section = bundles::Section::undefined(vertex_count);
  for (const auto& [key, value] : j.items()) {
    const int v = int_key(key, "section vertex");
    if (v < 0 || v >= vertex_count) throw InvalidInput("section vertex " + key + " is not in the base");
    section.vertex[static_cast<std::size_t>(v)] = parse_vector(value);
  }
  return section;
}

transversality::FixedLocusModel parse_fixed_locus(const Json& scenario, const Settings& s) {
  const auto group = parse_group(require(scenario, "group"), s);
  const auto base = parse_base(require(scenario, "base"));
  auto tangent = parse_bundle<double>(require(scenario, "tangent"), base, group);
  auto obstruction = parse_bundle<double>(require(scenario, "obstruction"), base, group);
  std::vector<MatD> lin;
  for (const auto& m : require(scenario, "linearizations")) lin.push_back(parse_matrix<double>(m));
  if (static_cast<int>(lin.size()) != base.vertex_count())
    throw InvalidInput("need one linearization per vertex (" + std::to_string(base.vertex_count()) + ")");
  for (const auto& m : lin)
    if (m.rows() != obstruction.rank() || m.cols() != tangent.rank())
      throw InvalidInput("linearizations must be rank(obstruction) x rank(tangent)");
  transversality::FixedLocusModel model{std::move(tangent), std::move(obstruction), std::move(lin),
                                        int_list(require(scenario, "zeros"), "zeros"), std::nullopt};
  for (int z : model.zeros)
    if (z < 0 || z >= base.vertex_count()) throw InvalidInput("zero vertex " + std::to_string(z) + " is not in the base");
  if (scenario.contains("support")) model.support = int_list(scenario.at("support"), "support");
  return model;
}

namespace {

flow::MatrixPath parse_path(const Json& p) {
  const std::string preset = require(p, "preset").get<std::string>();
  const double horizon = p.contains("horizon") ? to_real(p.at("horizon")) : 10.0;
  if (preset == "constant") return flow::MatrixPath::constant(parse_matrix<double>(require(p, "matrix")), horizon);
  if (preset == "tanh-ramp")
    return flow::MatrixPath::tanh_ramp(parse_matrix<double>(require(p, "minus")), parse_matrix<double>(require(p, "plus")),
                                       horizon);
  if (preset == "sampled") {
    std::vector<double> s;
    for (const auto& x : require(p, "s")) s.push_back(to_real(x));
    std::vector<MatD> b;
    for (const auto& m : require(p, "matrices")) b.push_back(parse_matrix<double>(m));
    return flow::MatrixPath::sampled(std::move(s), std::move(b));
  }
  if (preset == "lambda-operator") {
    const int n = to_int(require(p, "n"), "n");
    const int lambda = to_int(require(p, "lambda"), "lambda");
    if (!p.contains("a_minus") && !p.contains("a_plus")) return flow::build_lambda_path(flow::LambdaOperatorSpec::zero(n, lambda));
    const MatD zero = MatD::Zero(2 * n, 2 * n);
    const MatD a_minus = p.contains("a_minus") ? parse_matrix<double>(p.at("a_minus")) : zero;
    const MatD a_plus = p.contains("a_plus") ? parse_matrix<double>(p.at("a_plus")) : zero;
    if (a_minus.rows() != 2 * n || a_minus.cols() != 2 * n || a_plus.rows() != 2 * n || a_plus.cols() != 2 * n)
      throw InvalidInput("lambda-operator matrices must be 2n x 2n");
    return flow::build_lambda_path(flow::LambdaOperatorSpec::ramp(lambda, a_minus, a_plus));
  }
  throw InvalidInput("unknown path preset '" + preset + "'");
}

}  // namespace

std::vector<NamedPath> parse_paths(const Json& scenario) {
  std::vector<Json> specs;
  if (scenario.contains("path")) specs.push_back(scenario.at("path"));
  if (scenario.contains("paths"))
    for (const auto& p : scenario.at("paths")) specs.push_back(p);
  if (specs.empty()) throw InvalidInput("scenario has no 'path' or 'paths'");
  std::vector<NamedPath> out;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const Json& p = specs[i];
    std::optional<int> expected;
    if (p.contains("expected_index")) expected = to_int(p.at("expected_index"), "expected_index");
    out.push_back({p.value("name", "path" + std::to_string(i)), parse_path(p), expected});
  }
  return out;
}

namespace {

int generator_ref(const Json& j, const floer::GeneratorSet& gens) {
  if (j.is_string()) {
    const int i = gens.find(j.get<std::string>());
    if (i < 0) throw InvalidInput("unknown generator '" + j.get<std::string>() + "'");
    return i;
  }
  const int i = to_int(j, "generator reference");
  if (i < 0 || i >= gens.size()) throw InvalidInput("generator index " + std::to_string(i) + " out of range");
  return i;
}

floer::CountKey count_key(const Json& j, const floer::FloerComplex& c) {
  floer::CountKey key{generator_ref(require(j, "x"), c.generators), generator_ref(require(j, "y"), c.generators),
                      j.contains("class") ? int_list(j.at("class"), "class") : c.lattice.zero()};
  c.lattice.check_point(key.a);
  return key;
}

}  // namespace

FloerScenario parse_floer(const Json& scenario) {
  FloerScenario out;
  if (scenario.contains("toy_model")) {
    auto toy = floer::toy_model(scenario.at("toy_model").get<std::string>());
    out.complex = std::move(toy.complex);
    out.morse = std::move(toy.morse);
    out.s1_equivariant = true;
  }
  auto& c = out.complex;
  if (scenario.contains("lattice")) {
    const Json& l = scenario.at("lattice");
    c.lattice = {};
    for (const auto& w : require(l, "omega")) c.lattice.omega.push_back(to_rational(w));
    c.lattice.c1 = int_list(require(l, "c1"), "c1");
  }
  if (scenario.contains("generators")) {
    const Json& g = scenario.at("generators");
    c.generators = {};
    c.generators.half_dim = to_int(require(g, "half_dim"), "half_dim");
    for (const auto& x : require(g, "critical_points"))
      c.generators.gens.push_back({require(x, "name").get<std::string>(), to_int(require(x, "index"), "index"),
                                   to_rational(require(x, "value"))});
  }
  c.lattice.validate();
  c.generators.validate();
  if (scenario.contains("counts")) {
    c.counts.clear();
    for (const auto& e : scenario.at("counts")) {
      const auto key = count_key(e, c);
      if (!require(e, "count").is_number_integer()) throw InvalidInput("counts must be integers");
      c.counts[key] += e.at("count").get<long long>();
    }
  }
  if (scenario.contains("morse_counts")) {
    out.morse.clear();
    for (const auto& e : scenario.at("morse_counts")) {
      if (!require(e, "count").is_number_integer()) throw InvalidInput("Morse counts must be integers");
      out.morse[{generator_ref(require(e, "x"), c.generators), generator_ref(require(e, "y"), c.generators)}] +=
          e.at("count").get<long long>();
    }
  }
  if (scenario.contains("strata"))
    for (const auto& e : scenario.at("strata")) {
      if (!require(e, "count").is_number_integer()) throw InvalidInput("stratum counts must be integers");
      out.strata.push_back({count_key(require(e, "target"), c), count_key(require(e, "outer"), c),
                            count_key(require(e, "inner"), c), e.at("count").get<long long>()});
    }
  if (scenario.contains("s1_equivariant")) out.s1_equivariant = scenario.at("s1_equivariant").get<bool>();
  c.validate();
  return out;
}

GroupoidScenario parse_groupoid(const Json& scenario) {
  GroupoidScenario out;
  if (scenario.contains("group_action")) {
    const Json& a = scenario.at("group_action");
    out.translation = groupoid::make_translation_groupoid(parse_finite_group(require(a, "group")),
                                                          int_table(require(a, "action"), "group_action.action"));
    out.groupoid = out.translation->groupoid;
  } else {
    const Json& g = require(scenario, "groupoid");
    std::vector<groupoid::Morphism> morphisms;
    for (const auto& m : int_table(require(g, "morphisms"), "morphisms")) {
      if (m.size() != 2) throw InvalidInput("morphisms are [source, target] pairs");
      morphisms.push_back({m[0], m[1]});
    }
    std::vector<int> composition;
    for (const auto& row : int_table(require(g, "composition"), "composition"))
      composition.insert(composition.end(), row.begin(), row.end());
    out.groupoid = groupoid::FiniteGroupoid(to_int(require(g, "objects"), "objects"), std::move(morphisms),
                                            int_list(require(g, "units"), "units"),
                                            int_list(require(g, "inverses"), "inverses"), std::move(composition));
  }
  out.groupoid.validate();

  if (scenario.contains("global_action")) {
    const Json& a = scenario.at("global_action");
    const auto group = parse_finite_group(require(a, "group"));
    if (a.contains("sigma")) {
      if (!out.translation) throw InvalidInput("global_action.sigma needs a 'group_action' groupoid");
      out.action = groupoid::GlobalAction::on_translation(*out.translation, group, int_table(a.at("sigma"), "sigma"),
                                                          int_table(require(a, "alpha"), "alpha"));
    } else {
      out.action = groupoid::GlobalAction{group, int_table(require(a, "objects"), "objects"), int_table(require(a, "morphisms"), "morphisms")};
    }
  } else {
    out.action = groupoid::GlobalAction::trivial(out.groupoid);
  }
  out.action->validate(out.groupoid);

  out.slices = scenario.contains("slices") ? int_list(scenario.at("slices"), "slices")
                                           : groupoid::default_slices(out.groupoid, *out.action);

  if (scenario.contains("kernels")) {
    const Json& k = scenario.at("kernels");
    if (k.is_string() && k.get<std::string>() == "effective") {
      if (!out.translation) throw InvalidInput("effective kernels need a 'group_action' groupoid");
      std::vector<int> everything(static_cast<std::size_t>(out.groupoid.object_count()));
      std::iota(everything.begin(), everything.end(), 0);
      for (int x = 0; x < out.groupoid.object_count(); ++x)
        out.kernels.push_back(
            groupoid::effective_part(out.groupoid, groupoid::translation_local_action(*out.translation, x, everything)).kernel);
    } else {
      out.kernels = int_table(k, "kernels");
    }
  }

  if (scenario.contains("uniformizers"))
    for (const auto& [key, u] : scenario.at("uniformizers").items())
      out.uniformizers[int_key(key, "uniformizer")] = int_list(u, "uniformizer");

  if (scenario.contains("regularity")) {
    if (!out.translation) throw InvalidInput("regularity data needs a 'group_action' groupoid");
    for (const auto& r : scenario.at("regularity"))
      out.regularity.push_back({groupoid::translation_local_action(*out.translation, to_int(require(r, "object"), "object"),
                                                                   int_list(require(r, "neighborhood"), "neighborhood")),
                                int_table(require(r, "subneighborhoods"), "subneighborhoods")});
  }
  return out;
}

MetricScenario parse_metric(const Json& scenario, const Settings& s) {
  const Json& a = require(scenario, "point_action");
  auto action = [&] {
    if (a.contains("circle")) {
      const Json& c = a.at("circle");
      const int order = c.contains("quadrature_order") ? to_int(c.at("quadrature_order"), "quadrature_order") : s.quadrature_order;
      return groupoid::PointAction::circle(int_list(require(c, "weights"), "weights"), order);
    }
    std::vector<MatD> mats;
    for (const auto& m : require(a, "finite")) mats.push_back(parse_matrix<double>(m));
    return groupoid::PointAction::finite(std::move(mats));
  }();
  std::vector<VecD> points;
  for (const auto& p : require(scenario, "metric_points")) {
    points.push_back(parse_vector(p));
    if (points.back().size() != action.dim()) throw InvalidInput("metric point dimension does not match the action");
  }
  const std::string name = scenario.value("metric", std::string("euclidean"));
  groupoid::Metric metric;
  if (name == "euclidean")
    metric = groupoid::euclidean;
  else if (name == "l1")
    metric = [](const VecD& x, const VecD& y) { return (x - y).cwiseAbs().sum(); };
  else if (name == "max")
    metric = [](const VecD& x, const VecD& y) { return (x - y).cwiseAbs().maxCoeff(); };
  else
    throw InvalidInput("unknown metric '" + name + "' (euclidean, l1, max)");
  return {std::move(points), std::move(action), std::move(metric), name};
}

template Mat<Rational> parse_matrix<Rational>(const Json&);
template Mat<double> parse_matrix<double>(const Json&);
template OrderedJson matrix_json<Rational>(const Mat<Rational>&);
template OrderedJson matrix_json<double>(const Mat<double>&);
template reps::Representation<Rational> parse_representation<Rational>(const Json&, const reps::GroupPtr&);
template reps::Representation<double> parse_representation<double>(const Json&, const reps::GroupPtr&);
template bundles::GBundle<Rational> parse_bundle<Rational>(const Json&, const bundles::SimplicialBase&, const reps::GroupPtr&);
template bundles::GBundle<double> parse_bundle<double>(const Json&, const bundles::SimplicialBase&, const reps::GroupPtr&);

}  // namespace equitrans::cli

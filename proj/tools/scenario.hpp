#pragma once

#include "equitrans/bundles.hpp"
#include "equitrans/floer.hpp"
#include "equitrans/groupoid.hpp"
#include "equitrans/representation.hpp"
#include "equitrans/spectral_flow.hpp"
#include "equitrans/transversality.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace equitrans::cli {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

struct Settings {
  std::uint64_t seed = 1;
  double tolerance = kTolerance;
  Rational cutoff = 20;
  int quadrature_order = 64;
  Arithmetic mode = Arithmetic::exact;
  bool mode_explicit = false;
};

/// Flag values; unset flags fall back to the scenario's "settings" section.
struct FlagOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance;
  std::optional<std::string> cutoff;
  std::optional<int> quadrature_order;
  std::optional<std::string> mode;
};

/// Reads a scenario file. An empty (or whitespace-only) file is {}. Syntax
/// errors become InvalidInput with line and column.
Json load_scenario(const std::string& path);
Json parse_scenario_text(const std::string& text);

Settings resolve_settings(const Json& scenario, const FlagOverrides& flags);
OrderedJson settings_json(const Settings& s);

/// Field access that reports the missing key by name.
const Json& require(const Json& j, const std::string& key);
Rational to_rational(const Json& j);
double to_real(const Json& j);

template <class S>
Mat<S> parse_matrix(const Json& j);
VecD parse_vector(const Json& j);
template <class S>
OrderedJson matrix_json(const Mat<S>& m);
OrderedJson vector_json(const VecD& v);

reps::GroupPtr parse_group(const Json& j, const Settings& s);
reps::FiniteGroup parse_finite_group(const Json& j);
/// Generator matrices, full matrix lists, permutations, weights, named irreps,
/// trivial blocks, or a direct sum of those.
template <class S>
reps::Representation<S> parse_representation(const Json& j, const reps::GroupPtr& group);

bundles::SimplicialBase parse_base(const Json& j);
template <class S>
bundles::GBundle<S> parse_bundle(const Json& j, const bundles::SimplicialBase& base, const reps::GroupPtr& group);
bundles::Simplex parse_simplex(const Json& j, const bundles::SimplicialBase& base);
/// {"<vertex>": vector, ...}
bundles::Section parse_section(const Json& j, int vertex_count);

transversality::FixedLocusModel parse_fixed_locus(const Json& scenario, const Settings& s);

struct NamedPath {
  std::string name;
  flow::MatrixPath path;
  std::optional<int> expected_index;
};
std::vector<NamedPath> parse_paths(const Json& scenario);

struct FloerScenario {
  floer::FloerComplex complex;
  floer::MorseCounts morse;
  std::vector<floer::BrokenStratum> strata;
  bool s1_equivariant = false;
};
FloerScenario parse_floer(const Json& scenario);

struct GroupoidScenario {
  std::optional<groupoid::ActionGroupoid> translation;
  groupoid::FiniteGroupoid groupoid;
  std::optional<groupoid::GlobalAction> action;  ///< always set by parse_groupoid
  std::vector<int> slices;
  std::vector<std::vector<int>> kernels;
  std::map<int, std::vector<int>> uniformizers;
  std::vector<groupoid::RegularityData> regularity;
};
GroupoidScenario parse_groupoid(const Json& scenario);

struct MetricScenario {
  std::vector<VecD> points;
  groupoid::PointAction action;
  groupoid::Metric metric;
  std::string metric_name;
};
MetricScenario parse_metric(const Json& scenario, const Settings& s);

}  // namespace equitrans::cli

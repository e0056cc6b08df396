#pragma once

#include "equitrans/scalar.hpp"
#include "equitrans/transversality.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace equitrans::suites {

using Json = nlohmann::ordered_json;

struct Options {
  std::uint64_t seed = 1;
  double tolerance = kTolerance;
  int quadrature_order = 64;
  Rational cutoff = 20;
};

/// One check: `anchor` names the statement being verified.
struct Record {
  std::string id;
  std::string anchor;
  bool pass = false;
  Json certificate;
};

struct SuiteReport {
  std::string name;
  std::vector<Record> records;
  double seconds = 0.0;

  [[nodiscard]] bool pass() const;
};

/// Suite names in canonical order (without "all").
const std::vector<std::string>& suite_names();

/// Runs a named suite; throws InvalidInput for an unknown name.
SuiteReport run_suite(const std::string& name, const Options& options);

SuiteReport projectors(const Options& options);
SuiteReport endotypes(const Options& options);
SuiteReport codimension(const Options& options);
SuiteReport conditions(const Options& options);
SuiteReport spectral_flow(const Options& options);
SuiteReport oracle(const Options& options);
SuiteReport perturbation(const Options& options);
SuiteReport floer(const Options& options);
SuiteReport groupoid(const Options& options);

/// Synthetic S¹ fixed-locus model over an interval or circle base with
/// weights ≤ 3 and a rank drop at one vertex. When `satisfying` is false
/// one weight breaks the pointwise condition and every vertex is a zero.
transversality::FixedLocusModel synthetic_fixed_locus_model(std::uint64_t seed, bool satisfying, int quadrature_order = 64);

Json to_json(const Record& record);
Json to_json(const SuiteReport& report);

}  // namespace equitrans::suites

#pragma once

#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "su3ff/bethe.hpp"
#include "su3ff/formfactor.hpp"
#include "su3ff/model.hpp"
#include "su3ff/types.hpp"

// Lossless JSON encoding of the domain types; complex numbers are
// two-element arrays [re, im].

namespace su3ff {

using json = nlohmann::json;

// Read-side accessor that tracks the document path so schema violations
// report where they happened (e.g. "$.model.xi[2]").
class JsonCursor {
 public:
  JsonCursor(const json& j, std::string path = "$");

  const json& raw() const { return *j_; }
  const std::string& path() const { return path_; }

  bool has(const char* key) const;
  JsonCursor at(const char* key) const;                 // required object key
  std::optional<JsonCursor> maybe(const char* key) const;
  JsonCursor item(std::size_t i) const;                 // array element
  std::size_t array_size() const;

  double as_number() const;
  double as_positive_number() const;
  long as_integer() const;
  int as_int_in(int lo, int hi) const;
  bool as_bool() const;
  std::string as_string() const;
  cplx as_complex() const;
  VarSet as_varset() const;
  std::vector<long> as_integers() const;

  [[noreturn]] void fail(const std::string& expected) const;

 private:
  const json* j_;
  std::string path_;
};

json to_json(cplx z);
json to_json(const VarSet& xs);
json to_json(const Twist& twist);

json state_to_json(const BetheState& state, const std::string& id = {});
BetheState state_from_json(const JsonCursor& cur);

json ff_result_to_json(const FormFactorResult& result);

json model_to_json(const ModelSpec& model);
ModelSpec model_from_json(const JsonCursor& cur);

Twist twist_from_json(const JsonCursor& cur);

struct SolverConfig {
  double tol = 1e-12;
  int max_iter = 50;
  std::uint64_t rng_seed = 1;
  int random_seeds = 32;
  Modes modes;  // empty lists mean all-zero modes
  std::vector<std::pair<VarSet, VarSet>> seeds;
};

struct RunConfig {
  ModelSpec model;
  int a = 0;
  int b = 0;
  Twist twist;
  SolverConfig solver;
};

// Parses and schema-validates the common configuration sections; throws
// ConfigError naming the offending path.
RunConfig parse_config(const json& j);

}  // namespace su3ff

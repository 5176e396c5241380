#include "su3ff/serialize.hpp"

#include <nlohmann/json.hpp>

namespace su3ff {

JsonCursor::JsonCursor(const json& j, std::string path) : j_(&j), path_(std::move(path)) {}

void JsonCursor::fail(const std::string& expected) const {
  throw ConfigError(path_ + ": expected " + expected);
}

bool JsonCursor::has(const char* key) const { return j_->is_object() && j_->contains(key); }

JsonCursor JsonCursor::at(const char* key) const {
  if (!j_->is_object()) fail("an object");
  auto it = j_->find(key);
  if (it == j_->end()) throw ConfigError(path_ + "." + key + ": required key missing");
  return JsonCursor(*it, path_ + "." + key);
}

std::optional<JsonCursor> JsonCursor::maybe(const char* key) const {
  if (!has(key)) return std::nullopt;
  return at(key);
}

JsonCursor JsonCursor::item(std::size_t i) const {
  if (!j_->is_array()) fail("an array");
  if (i >= j_->size()) fail("an array with at least " + std::to_string(i + 1) + " entries");
  return JsonCursor((*j_)[i], path_ + "[" + std::to_string(i) + "]");
}

std::size_t JsonCursor::array_size() const {
  if (!j_->is_array()) fail("an array");
  return j_->size();
}

double JsonCursor::as_number() const {
  if (!j_->is_number()) fail("a number");
  return j_->get<double>();
}

double JsonCursor::as_positive_number() const {
  const double x = as_number();
  if (!(x > 0.0)) fail("a positive number");
  return x;
}

long JsonCursor::as_integer() const {
  if (!j_->is_number_integer()) fail("an integer");
  return j_->get<long>();
}

int JsonCursor::as_int_in(int lo, int hi) const {
  const long x = as_integer();
  if (x < lo || x > hi)
    fail("an integer in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<int>(x);
}

bool JsonCursor::as_bool() const {
  if (!j_->is_boolean()) fail("a boolean");
  return j_->get<bool>();
}

std::string JsonCursor::as_string() const {
  if (!j_->is_string()) fail("a string");
  return j_->get<std::string>();
}

cplx JsonCursor::as_complex() const {
  if (!j_->is_array() || j_->size() != 2) fail("a complex number as [re, im]");
  return cplx(item(0).as_number(), item(1).as_number());
}

VarSet JsonCursor::as_varset() const {
  if (!j_->is_array()) fail("an array of complex numbers");
  std::vector<cplx> out;
  out.reserve(j_->size());
  for (std::size_t i = 0; i < j_->size(); ++i) out.push_back(item(i).as_complex());
  return VarSet(std::move(out));
}

std::vector<long> JsonCursor::as_integers() const {
  if (!j_->is_array()) fail("an array of integers");
  std::vector<long> out;
  out.reserve(j_->size());
  for (std::size_t i = 0; i < j_->size(); ++i) out.push_back(item(i).as_integer());
  return out;
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const VarSet& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(to_json(x));
  return out;
}

json to_json(const Twist& twist) {
  return json::array({to_json(twist.k1()), to_json(twist.k2()), to_json(twist.k3())});
}

json state_to_json(const BetheState& state, const std::string& id) {
  json out{{"u", to_json(state.u)},
           {"v", to_json(state.v)},
           {"twist", to_json(state.twist)},
           {"modes", {{"ell", state.modes.ell}, {"m", state.modes.m}}},
           {"residual_norm", state.residual_norm},
           {"on_shell", state.on_shell}};
  if (!id.empty()) out["id"] = id;
  return out;
}

BetheState state_from_json(const JsonCursor& cur) {
  BetheState state;
  state.u = cur.at("u").as_varset();
  state.v = cur.at("v").as_varset();
  state.twist = twist_from_json(cur.at("twist"));
  if (auto modes = cur.maybe("modes")) {
    if (auto ell = modes->maybe("ell")) state.modes.ell = ell->as_integers();
    if (auto m = modes->maybe("m")) state.modes.m = m->as_integers();
  }
  if (state.modes.ell.empty()) state.modes.ell.assign(state.a(), 0);
  if (state.modes.m.empty()) state.modes.m.assign(state.b(), 0);
  state.residual_norm = cur.at("residual_norm").as_number();
  state.on_shell = cur.at("on_shell").as_bool();
  return state;
}

json ff_result_to_json(const FormFactorResult& result) {
  json out{{"value", to_json(result.value)}, {"s", result.s},       {"z", to_json(result.z)},
           {"a", result.a},                  {"b", result.b},       {"cond", result.cond}};
  if (result.p >= 0) out["p"] = result.p;
  if (!result.note.empty()) out["note"] = result.note;
  if (!result.state_c.empty()) out["state_c"] = result.state_c;
  if (!result.state_b.empty()) out["state_b"] = result.state_b;
  return out;
}

namespace {

json rational_to_json(const RationalFn& fn) {
  json zeros = json::array(), poles = json::array();
  for (const auto& z : fn.zeros) zeros.push_back(to_json(z));
  for (const auto& p : fn.poles) poles.push_back(to_json(p));
  return json{{"zeros", zeros}, {"poles", poles}, {"scale", to_json(fn.scale)}};
}

RationalFn rational_from_json(const JsonCursor& cur) {
  RationalFn fn;
  if (auto zeros = cur.maybe("zeros"))
    for (const auto& z : zeros->as_varset()) fn.zeros.push_back(z);
  if (auto poles = cur.maybe("poles"))
    for (const auto& p : poles->as_varset()) fn.poles.push_back(p);
  if (auto scale = cur.maybe("scale")) fn.scale = scale->as_complex();
  return fn;
}

}  // namespace

json model_to_json(const ModelSpec& model) {
  json out{{"c", to_json(model.coupling().value())}};
  if (model.is_chain()) {
    out["type"] = "chain";
    out["L"] = model.chain().length;
    out["xi"] = to_json(model.chain().xi);
  } else {
    out["type"] = "generic";
    out["r1"] = rational_to_json(model.rational().r1);
    out["r3"] = rational_to_json(model.rational().r3);
    out["lambda2"] = rational_to_json(model.rational().lambda2);
  }
  return out;
}

ModelSpec model_from_json(const JsonCursor& cur) {
  const std::string type = cur.at("type").as_string();
  Coupling c = [&] {
    try {
      return Coupling(cur.at("c").as_complex());
    } catch (const ConstructionError& e) {
      throw ConfigError(cur.path() + ".c: " + e.what());
    }
  }();
  if (type == "chain") {
    const int length = cur.at("L").as_int_in(1, 64);
    const VarSet xi = cur.at("xi").as_varset();
    try {
      return ModelSpec::xxx_chain(length, xi, c);
    } catch (const ConstructionError& e) {
      throw ConfigError(cur.path() + ": " + e.what());
    }
  }
  if (type == "generic") {
    try {
      return ModelSpec::generic(rational_from_json(cur.at("r1")),
                                rational_from_json(cur.at("r3")),
                                cur.has("lambda2") ? rational_from_json(cur.at("lambda2"))
                                                   : RationalFn::one(),
                                c);
    } catch (const ConstructionError& e) {
      throw ConfigError(cur.path() + ": " + e.what());
    }
  }
  throw ConfigError(cur.path() + ".type: expected \"chain\" or \"generic\"");
}

Twist twist_from_json(const JsonCursor& cur) {
  if (cur.array_size() != 3) cur.fail("a twist as [[re,im],[re,im],[re,im]]");
  try {
    return Twist(cur.item(0).as_complex(), cur.item(1).as_complex(), cur.item(2).as_complex());
  } catch (const ConstructionError& e) {
    throw ConfigError(cur.path() + ": " + e.what());
  }
}

RunConfig parse_config(const json& j) {
  JsonCursor root(j);
  RunConfig config{model_from_json(root.at("model")), 0, 0, Twist::identity(), SolverConfig{}};

  if (auto sector = root.maybe("sector")) {
    config.a = sector->at("a").as_int_in(0, 16);
    config.b = sector->at("b").as_int_in(0, 16);
  }
  if (auto twist = root.maybe("twist")) config.twist = twist_from_json(*twist);
  if (auto solver = root.maybe("solver")) {
    if (auto tol = solver->maybe("tol")) config.solver.tol = tol->as_positive_number();
    if (auto iters = solver->maybe("max_iter"))
      config.solver.max_iter = iters->as_int_in(1, 10000);
    if (auto seed = solver->maybe("rng_seed"))
      config.solver.rng_seed = static_cast<std::uint64_t>(seed->as_integer());
    if (auto count = solver->maybe("random_seeds"))
      config.solver.random_seeds = count->as_int_in(0, 100000);
    if (auto modes = solver->maybe("modes")) {
      if (auto ell = modes->maybe("ell")) config.solver.modes.ell = ell->as_integers();
      if (auto m = modes->maybe("m")) config.solver.modes.m = m->as_integers();
    }
    if (auto seeds = solver->maybe("seeds")) {
      for (std::size_t i = 0; i < seeds->array_size(); ++i) {
        const JsonCursor seed = seeds->item(i);
        config.solver.seeds.emplace_back(seed.at("u").as_varset(), seed.at("v").as_varset());
      }
    }
  }
  return config;
}

}  // namespace su3ff

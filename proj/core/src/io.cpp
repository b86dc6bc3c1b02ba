// Copyright 2026 The subsearch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "subsearch/io.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "subsearch/errors.hpp"

namespace subsearch {

using json = nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& what) { throw ParseError(what); }

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    size_t line = 1, column = 1;
    for (size_t i = 0; i < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    fail("JSON parse error at line " + std::to_string(line) + ", column " +
         std::to_string(column) + ": " + e.what());
  }
}

Value parse_value(const json& node, NumericMode mode) {
  if (node.is_string()) return Value::parse(node.get<std::string>(), mode);
  if (node.is_number_integer())
    return Value::from_int(node.get<long long>(), mode);
  if (node.is_number_float()) {
    if (mode == NumericMode::kRational)
      fail("rational instances must write non-integer values as \"p/q\" "
           "strings, got " +
           node.dump());
    return Value::real(node.get<double>());
  }
  fail("expected a numeric value, got " + node.dump());
}

json emit_value(const Value& v) {
  if (v.is_rational()) return v.str();
  return v.to_double();
}

const json& require_field(const json& node, const char* key,
                          const char* where) {
  auto it = node.find(key);
  if (it == node.end())
    fail(std::string("missing field \"") + key + "\" in " + where);
  return *it;
}

StructureFlags parse_props(const json& list) {
  StructureFlags flags;
  for (const json& p : list) {
    std::string name = p.get<std::string>();
    if (name == "normalized")
      flags.normalized = true;
    else if (name == "nondecreasing")
      flags.nondecreasing = true;
    else if (name == "submodular")
      flags.submodular = true;
    else if (name == "supermodular")
      flags.supermodular = true;
    else if (name == "modular")
      flags.modular = true;
    else
      fail("unknown property flag \"" + name + "\"");
  }
  return flags;
}

json emit_props(const StructureFlags& flags) {
  json out = json::array();
  if (flags.modular) out.push_back("modular");
  if (flags.nondecreasing) out.push_back("nondecreasing");
  if (flags.normalized) out.push_back("normalized");
  if (flags.submodular) out.push_back("submodular");
  if (flags.supermodular) out.push_back("supermodular");
  return out;
}

HSpec parse_hspec(const json& node, NumericMode mode) {
  std::string kind = require_field(node, "kind", "h").get<std::string>();
  if (kind == "identity") return HSpec::identity();
  if (kind == "power")
    return HSpec::power(require_field(node, "beta", "h").get<double>());
  if (kind == "log")
    return HSpec::log(require_field(node, "a", "h").get<double>());
  if (kind == "exp_discount")
    return HSpec::exp_discount(require_field(node, "r", "h").get<double>());
  if (kind == "table") {
    std::vector<std::pair<Value, Value>> points;
    for (const json& p : require_field(node, "points", "h")) {
      if (!p.is_array() || p.size() != 2) fail("table h points are [y, h(y)]");
      points.push_back({parse_value(p[0], mode), parse_value(p[1], mode)});
    }
    return HSpec::piecewise(std::move(points));
  }
  fail("unknown h kind \"" + kind + "\"");
}

json emit_hspec(const HSpec& h) {
  json out;
  switch (h.kind) {
    case HSpec::Kind::kIdentity:
      out["kind"] = "identity";
      break;
    case HSpec::Kind::kPower:
      out["kind"] = "power";
      out["beta"] = h.param;
      break;
    case HSpec::Kind::kLog:
      out["kind"] = "log";
      out["a"] = h.param;
      break;
    case HSpec::Kind::kExpDiscount:
      out["kind"] = "exp_discount";
      out["r"] = h.param;
      break;
    case HSpec::Kind::kTable: {
      out["kind"] = "table";
      json points = json::array();
      for (const auto& [y, hy] : h.table)
        points.push_back(json::array({emit_value(y), emit_value(hy)}));
      out["points"] = points;
      break;
    }
  }
  return out;
}

Mask parse_set(const json& node, int n) {
  Mask out = 0;
  for (const json& e : node) {
    int v = e.get<int>();
    if (v < 0 || v >= n) fail("set element " + std::to_string(v) + " out of range");
    out |= bit(v);
  }
  return out;
}

json emit_set(Mask a) {
  json out = json::array();
  for (int s : mask_elements(a)) out.push_back(s);
  return out;
}

std::vector<std::pair<int, int>> parse_edges(const json& node, int n) {
  std::vector<std::pair<int, int>> edges;
  for (const json& e : node) {
    if (!e.is_array() || e.size() != 2) fail("precedence edges are [s, t]");
    int s = e[0].get<int>(), t = e[1].get<int>();
    if (s < 0 || s >= n || t < 0 || t >= n) fail("edge endpoint out of range");
    edges.push_back({s, t});
  }
  return edges;
}

// Parses one oracle description; returns the oracle and its canonical JSON.
std::pair<SetFunctionPtr, json> parse_oracle(const json& spec,
                                             const GroundSet& ground,
                                             NumericMode mode,
                                             bool cost_position) {
  if (!spec.is_object()) fail("oracle description must be an object");
  const int n = ground.size();
  std::string kind =
      require_field(spec, "kind", "oracle description").get<std::string>();
  json canon;
  canon["kind"] = kind;

  if (kind == "tabular") {
    const json& values = require_field(spec, "values", "tabular oracle");
    if (!values.is_array() || values.size() != (size_t{1} << n))
      fail("tabular oracle needs 2^n values");
    std::vector<Value> table;
    json cvals = json::array();
    for (const json& v : values) {
      table.push_back(parse_value(v, mode));
      cvals.push_back(emit_value(table.back()));
    }
    StructureFlags flags;
    if (spec.contains("props")) {
      flags = parse_props(spec["props"]);
    } else if (cost_position) {
      flags = {.normalized = true, .nondecreasing = true, .submodular = true};
    } else {
      flags = {.normalized = true, .nondecreasing = true, .supermodular = true};
    }
    canon["values"] = cvals;
    canon["props"] = emit_props(flags);
    return {make_tabular(ground, mode, std::move(table), flags), canon};
  }

  if (kind == "modular") {
    const json& weights = require_field(spec, "weights", "modular oracle");
    if (!weights.is_array() || weights.size() != static_cast<size_t>(n))
      fail("modular oracle needs n weights");
    std::vector<Value> w;
    json cvals = json::array();
    for (const json& v : weights) {
      w.push_back(parse_value(v, mode));
      cvals.push_back(emit_value(w.back()));
    }
    canon["weights"] = cvals;
    return {make_modular(ground, mode, std::move(w)), canon};
  }

  if (kind == "dag") {
    if (!cost_position) fail("\"dag\" describes a cost oracle, not weights");
    PrecedenceInstance inst;
    inst.jobs = ground.labels();
    inst.mode = mode;
    inst.edges = parse_edges(require_field(spec, "edges", "dag oracle"), n);
    for (const json& v : require_field(spec, "p", "dag oracle"))
      inst.p.push_back(parse_value(v, mode));
    inst.h = spec.contains("h") ? parse_hspec(spec["h"], mode)
                                : HSpec::identity();
    json cedges = json::array();
    for (auto [s, t] : inst.edges) cedges.push_back(json::array({s, t}));
    canon["edges"] = cedges;
    json cp = json::array();
    for (const Value& v : inst.p) cp.push_back(emit_value(v));
    canon["p"] = cp;
    canon["h"] = emit_hspec(inst.h);
    return {cost_oracle(inst), canon};
  }

  if (kind == "tree") {
    if (!cost_position) fail("\"tree\" describes a cost oracle, not weights");
    RootedTree tree;
    tree.root = require_field(spec, "root", "tree oracle").get<int>();
    json cedges = json::array();
    for (const json& e : require_field(spec, "edges", "tree oracle")) {
      if (!e.is_array() || e.size() != 3) fail("tree edges are [u, v, cost]");
      Value cost = parse_value(e[2], mode);
      tree.edges.push_back({e[0].get<int>(), e[1].get<int>(), cost});
      cedges.push_back(
          json::array({e[0].get<int>(), e[1].get<int>(), emit_value(cost)}));
    }
    SetFunctionPtr oracle = tree_cost_oracle(tree);
    if (oracle->ground().labels() != ground.labels())
      fail("tree vertices must match the instance labels (non-root vertex "
           "ids, ascending)");
    canon["root"] = tree.root;
    canon["edges"] = cedges;
    return {oracle, canon};
  }

  if (kind == "subset_weights") {
    if (cost_position)
      fail("\"subset_weights\" describes a weight oracle, not costs");
    PrecedenceInstance carrier;  // reuse the weight-oracle constructor
    carrier.jobs = ground.labels();
    carrier.mode = mode;
    carrier.p.assign(static_cast<size_t>(n), Value::from_int(1, mode));
    json centries = json::array();
    for (const json& e :
         require_field(spec, "entries", "subset_weights oracle")) {
      Mask set = parse_set(require_field(e, "set", "subset weight entry"), n);
      Value w = parse_value(require_field(e, "w", "subset weight entry"), mode);
      carrier.subset_weights.push_back({set, w});
      json ce;
      ce["set"] = emit_set(set);
      ce["w"] = emit_value(w);
      centries.push_back(ce);
    }
    canon["entries"] = centries;
    return {weight_oracle(carrier), canon};
  }

  if (kind == "h_of") {
    HSpec h = parse_hspec(require_field(spec, "h", "h_of oracle"), mode);
    auto [inner, inner_canon] = parse_oracle(
        require_field(spec, "inner", "h_of oracle"), ground, mode,
        cost_position);
    canon["h"] = emit_hspec(h);
    canon["inner"] = inner_canon;
    return {compose_concave(std::move(h), std::move(inner)), canon};
  }

  fail("unknown oracle kind \"" + kind + "\"");
}

NumericMode parse_mode(const json& doc, NumericMode fallback) {
  if (!doc.contains("mode")) return fallback;
  std::string mode = doc["mode"].get<std::string>();
  if (mode == "rational") return NumericMode::kRational;
  if (mode == "float") return NumericMode::kFloat;
  fail("mode must be \"rational\" or \"float\"");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) !=
      1)
    throw std::runtime_error("sha256 failure");
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 0xf]);
  }
  return out;
}

LoadedInstance parse_instance_json(const std::string& text) {
  json doc = parse_document(text);
  if (!doc.is_object()) fail("instance document must be an object");
  int n = require_field(doc, "n", "instance").get<int>();
  if (n < 1 || n > kMaxGroundSize) fail("instance n out of range [1, 62]");
  NumericMode mode = parse_mode(doc, NumericMode::kRational);

  std::vector<std::string> labels;
  if (doc.contains("labels")) {
    for (const json& l : doc["labels"]) labels.push_back(l.get<std::string>());
    if (static_cast<int>(labels.size()) != n)
      fail("labels must list one name per element");
  }
  GroundSet ground = labels.empty() ? GroundSet(n) : GroundSet(labels);

  auto [f, f_canon] =
      parse_oracle(require_field(doc, "f", "instance"), ground, mode, true);
  auto [g, g_canon] =
      parse_oracle(require_field(doc, "g", "instance"), ground, mode, false);

  json canon;
  canon["n"] = n;
  canon["labels"] = ground.labels();
  canon["mode"] = to_string(mode);
  canon["f"] = f_canon;
  canon["g"] = g_canon;
  std::string canonical = canon.dump();
  std::string digest = sha256_hex(canonical);
  return LoadedInstance{SearchInstance(std::move(f), std::move(g)),
                        std::move(canonical), std::move(digest)};
}

LoadedInstance load_instance_file(const std::string& path) {
  return parse_instance_json(read_file(path));
}

LoadedCostFunction parse_cost_function_json(const std::string& text) {
  json doc = parse_document(text);
  if (!doc.is_object()) fail("cost function document must be an object");
  int n = require_field(doc, "n", "cost function").get<int>();
  if (n < 1 || n > kMaxGroundSize) fail("n out of range [1, 62]");
  NumericMode mode = parse_mode(doc, NumericMode::kRational);
  std::vector<std::string> labels;
  if (doc.contains("labels")) {
    for (const json& l : doc["labels"]) labels.push_back(l.get<std::string>());
    if (static_cast<int>(labels.size()) != n)
      fail("labels must list one name per element");
  }
  GroundSet ground = labels.empty() ? GroundSet(n) : GroundSet(labels);
  auto [f, f_canon] =
      parse_oracle(require_field(doc, "f", "cost function"), ground, mode,
                   true);
  json canon;
  canon["n"] = n;
  canon["labels"] = ground.labels();
  canon["mode"] = to_string(mode);
  canon["f"] = f_canon;
  std::string canonical = canon.dump();
  std::string digest = sha256_hex(canonical);
  return LoadedCostFunction{std::move(f), std::move(canonical),
                            std::move(digest)};
}

LoadedCostFunction load_cost_function_file(const std::string& path) {
  return parse_cost_function_json(read_file(path));
}

LoadedSchedule parse_schedule_json(const std::string& text) {
  json doc = parse_document(text);
  if (!doc.is_object()) fail("schedule document must be an object");
  PrecedenceInstance inst;
  for (const json& j : require_field(doc, "jobs", "schedule"))
    inst.jobs.push_back(j.is_string() ? j.get<std::string>()
                                      : std::to_string(j.get<int>()));
  const int n = inst.n();
  if (n < 1 || n > kMaxGroundSize) fail("job count out of range [1, 62]");

  inst.h = doc.contains("h") ? parse_hspec(doc["h"], NumericMode::kFloat)
                             : HSpec::identity();
  inst.mode = parse_mode(doc, inst.h.requires_float() ? NumericMode::kFloat
                                                      : NumericMode::kRational);
  if (doc.contains("h")) inst.h = parse_hspec(doc["h"], inst.mode);

  inst.edges = doc.contains("edges") ? parse_edges(doc["edges"], n)
                                     : std::vector<std::pair<int, int>>{};
  for (const json& v : require_field(doc, "p", "schedule"))
    inst.p.push_back(parse_value(v, inst.mode));

  bool has_w = doc.contains("w");
  bool has_wa = doc.contains("wA");
  if (has_w == has_wa) fail("schedule needs exactly one of \"w\" and \"wA\"");
  if (has_w) {
    for (const json& v : doc["w"]) inst.weights.push_back(parse_value(v, inst.mode));
  } else {
    for (const json& e : doc["wA"]) {
      Mask set = parse_set(require_field(e, "set", "wA entry"), n);
      inst.subset_weights.push_back(
          {set, parse_value(require_field(e, "w", "wA entry"), inst.mode)});
    }
  }

  json canon;
  canon["jobs"] = inst.jobs;
  canon["mode"] = to_string(inst.mode);
  json cedges = json::array();
  for (auto [s, t] : inst.edges) cedges.push_back(json::array({s, t}));
  canon["edges"] = cedges;
  json cp = json::array();
  for (const Value& v : inst.p) cp.push_back(emit_value(v));
  canon["p"] = cp;
  if (has_w) {
    json cw = json::array();
    for (const Value& v : inst.weights) cw.push_back(emit_value(v));
    canon["w"] = cw;
  } else {
    json cwa = json::array();
    for (const auto& [set, w] : inst.subset_weights) {
      json ce;
      ce["set"] = emit_set(set);
      ce["w"] = emit_value(w);
      cwa.push_back(ce);
    }
    canon["wA"] = cwa;
  }
  canon["h"] = emit_hspec(inst.h);
  std::string canonical = canon.dump();
  std::string digest = sha256_hex(canonical);
  return LoadedSchedule{std::move(inst), std::move(canonical),
                        std::move(digest)};
}

LoadedSchedule load_schedule_file(const std::string& path) {
  return parse_schedule_json(read_file(path));
}

std::string schedule_to_instance_json(const PrecedenceInstance& instance) {
  json doc;
  doc["n"] = instance.n();
  doc["labels"] = instance.jobs;
  doc["mode"] = to_string(instance.mode);

  json f;
  f["kind"] = "dag";
  json edges = json::array();
  for (auto [s, t] : instance.edges) edges.push_back(json::array({s, t}));
  f["edges"] = edges;
  json p = json::array();
  for (const Value& v : instance.p) p.push_back(emit_value(v));
  f["p"] = p;
  f["h"] = emit_hspec(instance.h);
  doc["f"] = f;

  json g;
  if (!instance.weights.empty()) {
    g["kind"] = "modular";
    json w = json::array();
    for (const Value& v : instance.weights) w.push_back(emit_value(v));
    g["weights"] = w;
  } else {
    g["kind"] = "subset_weights";
    json entries = json::array();
    for (const auto& [set, w] : instance.subset_weights) {
      json e;
      e["set"] = emit_set(set);
      e["w"] = emit_value(w);
      entries.push_back(e);
    }
    g["entries"] = entries;
  }
  doc["g"] = g;
  return doc.dump();
}

}  // namespace subsearch

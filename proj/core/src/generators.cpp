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

#include "subsearch/generators.hpp"

#include <functional>
#include <random>

#include <nlohmann/json.hpp>

#include "subsearch/errors.hpp"
#include "subsearch/ground.hpp"
#include "subsearch/sched.hpp"
#include "subsearch/value.hpp"

namespace subsearch {

using json = nlohmann::json;

namespace {

// Raw modulo draws keep the output identical across standard libraries.
long draw(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

json default_labels(int n) {
  json labels = json::array();
  for (int i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
  return labels;
}

json instance_shell(int n) {
  json doc;
  doc["n"] = n;
  doc["labels"] = default_labels(n);
  doc["mode"] = "rational";
  return doc;
}

// Weighted coverage function over a small item universe. Every element
// covers a private item, which keeps singleton values positive.
struct Coverage {
  std::vector<Mask> covers;       // per element, over the item universe
  std::vector<long> item_weight;  // positive integers

  long value(Mask a) const {
    Mask covered = 0;
    for (int s : mask_elements(a)) covered |= covers[s];
    long total = 0;
    for (int i : mask_elements(covered)) total += item_weight[i];
    return total;
  }
};

Coverage random_coverage(int n, std::mt19937_64& rng) {
  int shared_items = n + 2;
  int items = shared_items + n;  // shared pool plus one private item each
  Coverage cov;
  cov.item_weight.reserve(static_cast<size_t>(items));
  for (int i = 0; i < items; ++i) cov.item_weight.push_back(draw(rng, 1, 9));
  for (int s = 0; s < n; ++s) {
    Mask m = bit(shared_items + s);  // the private item
    for (int i = 0; i < shared_items; ++i)
      if (draw(rng, 0, 2) == 0) m |= bit(i);
    cov.covers.push_back(m);
  }
  return cov;
}

json tabulate(int n, const std::function<std::string(Mask)>& value) {
  json values = json::array();
  for (Mask a = 0; a <= full_mask(n); ++a) values.push_back(value(a));
  return values;
}

json coverage_f(int n, std::mt19937_64& rng) {
  Coverage cov = random_coverage(n, rng);
  json f;
  f["kind"] = "tabular";
  f["values"] =
      tabulate(n, [&](Mask a) { return std::to_string(cov.value(a)); });
  f["props"] = json::array({"normalized", "nondecreasing", "submodular"});
  return f;
}

json dual_coverage_g(int n, std::mt19937_64& rng) {
  Coverage cov = random_coverage(n, rng);
  const Mask full = full_mask(n);
  long total = cov.value(full);
  json g;
  g["kind"] = "tabular";
  g["values"] = tabulate(n, [&](Mask a) {
    return std::to_string(total - cov.value(full & ~a));
  });
  g["props"] = json::array({"normalized", "nondecreasing", "supermodular"});
  return g;
}

json modular_weights(int n, std::mt19937_64& rng) {
  json w = json::array();
  for (int i = 0; i < n; ++i) w.push_back(std::to_string(draw(rng, 1, 9)));
  return w;
}

json gen_coverage(int n, std::mt19937_64& rng) {
  json doc = instance_shell(n);
  doc["f"] = coverage_f(n, rng);
  doc["g"] = dual_coverage_g(n, rng);
  return doc;
}

json gen_concave_modular(int n, std::mt19937_64& rng) {
  json doc = instance_shell(n);
  // Piecewise-linear concave h with positive decreasing slopes, wide enough
  // for any load the modular part can reach.
  std::vector<long> p;
  long total = 0;
  for (int i = 0; i < n; ++i) {
    p.push_back(draw(rng, 1, 9));
    total += p.back();
  }
  long knee = draw(rng, 1, std::max<long>(1, total - 1));
  long s1 = draw(rng, 2, 6);  // slope before the knee
  long s2 = draw(rng, 1, s1);  // gentler slope after it
  json points = json::array();
  points.push_back(json::array({"0", "0"}));
  points.push_back(
      json::array({std::to_string(knee), std::to_string(s1 * knee)}));
  points.push_back(json::array(
      {std::to_string(total), std::to_string(s1 * knee + s2 * (total - knee))}));

  json inner;
  inner["kind"] = "modular";
  json weights = json::array();
  for (long v : p) weights.push_back(std::to_string(v));
  inner["weights"] = weights;

  json f;
  f["kind"] = "h_of";
  f["h"] = {{"kind", "table"}, {"points", points}};
  f["inner"] = inner;
  doc["f"] = f;
  doc["g"] = dual_coverage_g(n, rng);
  return doc;
}

json gen_modular(int n, std::mt19937_64& rng) {
  json doc = instance_shell(n);
  doc["f"] = {{"kind", "modular"}, {"weights", modular_weights(n, rng)}};
  doc["g"] = {{"kind", "modular"}, {"weights", modular_weights(n, rng)}};
  return doc;
}

json gen_tree(int n, std::mt19937_64& rng) {
  // Root 0, non-root vertices 1..n attached to a random earlier vertex.
  json doc = instance_shell(n);
  json edges = json::array();
  for (int v = 1; v <= n; ++v) {
    int parent = static_cast<int>(draw(rng, 0, v - 1));
    edges.push_back(
        json::array({parent, v, std::to_string(draw(rng, 1, 9))}));
  }
  doc["f"] = {{"kind", "tree"}, {"root", 0}, {"edges", edges}};
  doc["g"] = {{"kind", "modular"}, {"weights", modular_weights(n, rng)}};
  return doc;
}

Dag random_gsp(int lo, int hi, std::mt19937_64& rng) {
  if (lo == hi) return Dag{{lo}, {}};
  int mid = static_cast<int>(draw(rng, lo, hi - 1));
  Dag left = random_gsp(lo, mid, rng);
  Dag right = random_gsp(mid + 1, hi, rng);
  GspKind kind = draw(rng, 0, 1) == 0 ? GspKind::kSeries : GspKind::kParallel;
  return gsp_compose(kind, left, right);
}

json gen_gsp(int n, std::mt19937_64& rng) {
  Dag dag = random_gsp(0, n - 1, rng);
  json doc = instance_shell(n);
  json edges = json::array();
  for (auto [s, t] : dag.edges) edges.push_back(json::array({s, t}));
  json f;
  f["kind"] = "dag";
  f["edges"] = edges;
  json p = json::array();
  for (int i = 0; i < n; ++i) p.push_back(std::to_string(draw(rng, 1, 9)));
  f["p"] = p;
  f["h"] = {{"kind", "identity"}};
  doc["f"] = f;
  doc["g"] = {{"kind", "modular"}, {"weights", modular_weights(n, rng)}};
  return doc;
}

json gen_kuniform(int n, int k, std::mt19937_64& rng) {
  if (k < 1 || k > n) throw std::invalid_argument("kuniform needs 1 <= k <= n");
  json doc = instance_shell(n);
  doc["f"] = {{"kind", "modular"}, {"weights", modular_weights(n, rng)}};

  long long count = 1;
  for (int i = 0; i < k; ++i) count = count * (n - i) / (i + 1);
  std::string w = "1/" + std::to_string(count);
  json entries = json::array();
  for (Mask a = 0; a <= full_mask(n); ++a) {
    if (mask_size(a) != k) continue;
    json e;
    e["set"] = [&] {
      json s = json::array();
      for (int i : mask_elements(a)) s.push_back(i);
      return s;
    }();
    e["w"] = w;
    entries.push_back(e);
  }
  doc["g"] = {{"kind", "subset_weights"}, {"entries", entries}};
  return doc;
}

}  // namespace

std::string generate_instance_json(const GenRequest& request) {
  if (request.n < 1 || request.n > 16)
    throw CapacityError("generators emit tabular data; n is limited to 16");
  std::mt19937_64 rng(request.seed);
  json doc;
  if (request.family == "coverage")
    doc = gen_coverage(request.n, rng);
  else if (request.family == "concave_modular")
    doc = gen_concave_modular(request.n, rng);
  else if (request.family == "modular")
    doc = gen_modular(request.n, rng);
  else if (request.family == "tree")
    doc = gen_tree(request.n, rng);
  else if (request.family == "gsp")
    doc = gen_gsp(request.n, rng);
  else if (request.family == "kuniform")
    doc = gen_kuniform(request.n, request.k, rng);
  else
    throw std::invalid_argument("unknown generator family \"" +
                                request.family + "\"");
  return doc.dump();
}

}  // namespace subsearch

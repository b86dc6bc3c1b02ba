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

#include "subsearch/set_function.hpp"

#include <doctest.h>

#include <algorithm>
#include <thread>

#include "subsearch/errors.hpp"
#include "test_util.hpp"

using namespace subsearch;
using namespace testutil;

namespace {

bool same_function(const SetFunction& a, const SetFunction& b) {
  if (a.n() != b.n()) return false;
  for (Mask m = 0; m <= full_mask(a.n()); ++m)
    if (!(a.eval(m) == b.eval(m))) return false;
  return true;
}

}  // namespace

TEST_CASE("evaluation of the basic oracle kinds") {
  SetFunctionPtr mod = modular_of(rationals({{1, 1}, {2, 1}, {3, 1}}));
  CHECK(mod->eval(0b101) == Q(4));  // elements 1 and 3
  CHECK(mod->eval(0) == Q(0));

  SetFunctionPtr f3 = f3_cost();
  CHECK(f3->eval(0b110) == Q(3, 2));  // {2,3}
  CHECK(f3->eval(0) == Q(0));
  CHECK(f3->eval(0b111) == Q(2));

  CHECK_THROWS_AS(f3->eval(0b1000), std::invalid_argument);
}

TEST_CASE("dual examples and involution") {
  SetFunctionPtr g = modular_of(rationals({{1, 3}, {2, 3}}));
  SetFunctionPtr gs = dual(g);
  for (Mask a = 0; a < 4; ++a) CHECK(gs->eval(a) == g->eval(a));  // self-dual

  SetFunctionPtr f3 = f3_cost();
  CHECK(dual(f3)->eval(0b001) == Q(1, 2));  // f#({1}) = 2 - 3/2

  SetFunctionPtr gg = dual(dual(g));
  CHECK(same_function(*gg, *g));

  SearchInstance random = generated("coverage", 5, 11);
  CHECK(same_function(*dual(dual(random.g_ptr())), random.g()));
  CHECK(dual(random.g_ptr())->declared().submodular);
  CHECK(dual(random.g_ptr())->declared().nondecreasing);
  CHECK(dual(random.g_ptr())->declared().normalized);
  CHECK(dual(random.g_ptr())->eval(full_mask(5)) ==
        random.g_of(full_mask(5)));
}

TEST_CASE("contraction examples") {
  SetFunctionPtr f3 = f3_cost();
  CHECK(contract(f3, 0) == f3);

  SetFunctionPtr by1 = contract(f3, 0b001);
  CHECK(by1->n() == 2);
  CHECK(by1->eval(0b11) == Q(1));  // f({1,2,3}) - f({1})
  CHECK(by1->parent_index_map() == std::vector<int>{1, 2});

  SetFunctionPtr mod = modular_of(rationals({{1, 1}, {2, 1}, {3, 1}}));
  SetFunctionPtr mod_by2 = contract(mod, 0b010);
  CHECK(mod_by2->eval(0b11) == Q(4));  // {1,3} in local indexing
}

TEST_CASE("contraction preserves submodularity") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    SearchInstance inst = generated("coverage", 6, seed);
    for (Mask by : {Mask{0b1}, Mask{0b101}, Mask{0b11000}}) {
      StructureReport report = verify_structure(*contract(inst.f_ptr(), by));
      CHECK(report.flags.submodular);
      CHECK(report.flags.nondecreasing);
      CHECK(report.flags.normalized);
    }
  }
}

TEST_CASE("restriction examples") {
  SetFunctionPtr f3 = f3_cost();
  CHECK(restrict_to(f3, 0b111) == f3);
  SetFunctionPtr r = restrict_to(f3, 0b110);
  CHECK(r->eval(0b11) == Q(3, 2));
  CHECK(r->ground().labels() == std::vector<std::string>{"2", "3"});

  SetFunctionPtr mod = modular_of(rationals({{1, 1}, {2, 1}, {3, 1}}));
  CHECK(restrict_to(mod, 0b001)->eval(0b1) == Q(1));
}

TEST_CASE("direct sum") {
  SetFunctionPtr m1 = modular_of(rationals({{1, 1}, {2, 1}}));
  SetFunctionPtr m2 = make_modular(GroundSet({"a", "b"}),
                                   NumericMode::kRational,
                                   rationals({{5, 1}, {7, 1}}));
  SetFunctionPtr sum = direct_sum(m1, m2);
  CHECK(sum->n() == 4);
  CHECK(sum->eval(0b1010) == Q(2 + 5));
  CHECK(sum->eval(full_mask(4)) == m1->eval(0b11) + m2->eval(0b11));

  SetFunctionPtr back = restrict_to(sum, 0b0011);
  CHECK(same_function(*back, *m1));

  CHECK_THROWS_AS(direct_sum(m1, m1), std::invalid_argument);
}

TEST_CASE("verify_structure on the fixtures") {
  StructureReport f3 = verify_structure(*f3_cost());
  CHECK(f3.flags.submodular);
  CHECK(f3.flags.nondecreasing);
  CHECK(f3.flags.normalized);
  CHECK_FALSE(f3.flags.modular);

  StructureReport mod =
      verify_structure(*modular_of(rationals({{1, 1}, {2, 1}})));
  CHECK(mod.flags.submodular);
  CHECK(mod.flags.supermodular);
  CHECK(mod.flags.modular);

  // Strictly superadditive pair: f({1,2}) > f({1}) + f({2}).
  SetFunctionPtr bad = make_tabular(
      GroundSet(2), NumericMode::kRational,
      {Q(0), Q(1), Q(1), Q(3)}, StructureFlags{});
  StructureReport report = verify_structure(*bad);
  CHECK_FALSE(report.flags.submodular);
  REQUIRE(report.submodular_witness.has_value());
  CHECK(report.submodular_witness->a == 0);
  CHECK(report.submodular_witness->s == 0);
  CHECK(report.submodular_witness->t == 1);
  CHECK(report.flags.supermodular);
}

TEST_CASE("curvature") {
  CHECK(curvature(*modular_of(rationals({{1, 1}, {2, 1}, {3, 1}}))) == Q(0));
  CHECK(curvature(*f3_cost()) == Q(1));

  // Marginal at the top is half the singleton value for both elements.
  SetFunctionPtr half = make_tabular(GroundSet(2), NumericMode::kRational,
                                     {Q(0), Q(2), Q(2), Q(3)},
                                     submodular_flags());
  CHECK(curvature(*half) == Q(1, 2));

  SetFunctionPtr zero_single = make_tabular(GroundSet(2),
                                            NumericMode::kRational,
                                            {Q(0), Q(0), Q(1), Q(1)},
                                            StructureFlags{});
  CHECK_THROWS_AS(curvature(*zero_single), std::domain_error);
}

TEST_CASE("base polyhedron vertices") {
  SetFunctionPtr mod = modular_of(rationals({{1, 1}, {2, 1}, {3, 1}}));
  auto x = base_polyhedron_vertex(*mod, {2, 0, 1});
  CHECK(x == std::vector<Value>{Q(1), Q(2), Q(3)});

  SetFunctionPtr f3 = f3_cost();
  CHECK(base_polyhedron_vertex(*f3, {0, 1, 2}) ==
        std::vector<Value>{Q(1), Q(1), Q(0)});
  CHECK(base_polyhedron_vertex(*f3, {2, 1, 0}) ==
        std::vector<Value>{Q(1, 2), Q(1, 2), Q(1)});
}

TEST_CASE("greedy vertices stay in the base polyhedron") {
  for (std::uint64_t seed : {4u, 9u}) {
    SearchInstance inst = generated("coverage", 6, seed);
    const SetFunction& f = inst.f();
    const Mask full = full_mask(6);
    std::vector<int> order{0, 1, 2, 3, 4, 5};
    do {
      std::vector<Value> x = base_polyhedron_vertex(f, order);
      Value total = Q(0);
      for (const Value& v : x) total += v;
      REQUIRE(total == f.eval(full));
      for (Mask a = 0; a <= full; ++a) {
        Value xa = Q(0);
        for (int s : mask_elements(a)) xa += x[s];
        REQUIRE(xa <= f.eval(a));
      }
    } while (std::next_permutation(order.begin(), order.end()));
  }
}

TEST_CASE("memoized oracles are safe to share across threads") {
  SearchInstance inst = generated("coverage", 8, 5);
  SetFunctionPtr derived = contract(dual(inst.g_ptr()), 0b101);
  std::vector<Value> expected;
  for (Mask a = 0; a <= full_mask(derived->n()); ++a)
    expected.push_back(derived->eval(a));
  std::vector<std::thread> workers;
  std::vector<bool> ok(4, false);
  for (int t = 0; t < 4; ++t) {
    workers.emplace_back([&, t] {
      bool good = true;
      for (Mask a = 0; a <= full_mask(derived->n()); ++a)
        good = good && derived->eval(a) == expected[a];
      ok[t] = good;
    });
  }
  for (auto& w : workers) w.join();
  for (int t = 0; t < 4; ++t) CHECK(ok[t]);
}

// Copyright 2026 The makpabe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <filesystem>
#include <functional>
#include <set>
#include <fstream>

#include "makpabe/errors.hpp"
#include "makpabe/groups.hpp"
#include "makpabe/lsss.hpp"
#include "makpabe/policy.hpp"
#include "oracles.hpp"

using namespace makpabe;
using namespace makpabe::policy;
using groups::PairingContext;

namespace {

const AttributeUniverse& abc() {
  static const AttributeUniverse u = AttributeUniverse::from_names({"A", "B", "C", "D", "E", "F"});
  return u;
}

PolicyNode L(AttributeIndex i) { return PolicyNode::leaf(i); }

std::size_t syntax_offset(std::string_view text) {
  try {
    parse_policy(text, abc());
  } catch (const PolicySyntaxError& e) {
    return e.offset();
  }
  return static_cast<std::size_t>(-1);
}

Errc error_code(std::string_view text) {
  try {
    parse_policy(text, abc());
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::kIo;
}

std::vector<std::vector<std::int64_t>> small_entries(const lsss::AccessMatrix& m) {
  std::vector<std::vector<std::int64_t>> out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::vector<std::int64_t> row;
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(*m.at(i, j).to_small_signed());
    out.push_back(row);
  }
  return out;
}

}  // namespace

TEST_CASE("universe basics") {
  const auto& u = abc();
  CHECK(u.size() == 6);
  CHECK(u.index_of("C") == 2);
  CHECK(u.name(4) == "E");
  CHECK(!u.find("Z"));
  CHECK(u.parse_set("A, C") == AttributeSet{0, 2});
  CHECK(u.names_of({1, 3}) == std::vector<std::string>{"B", "D"});
  CHECK_THROWS_AS(AttributeUniverse::from_names({"A", "A"}), Error);
  CHECK_THROWS_AS(AttributeUniverse::from_names({"and"}), Error);
  CHECK_THROWS_AS(AttributeUniverse::from_names({"a b"}), Error);
  CHECK(u.hash_hex() == AttributeUniverse::from_names({"A", "B", "C", "D", "E", "F"}).hash_hex());
  CHECK(u.hash_hex() != AttributeUniverse::from_names({"B", "A", "C", "D", "E", "F"}).hash_hex());
}

TEST_CASE("universe file: one name per line in file order") {
  const auto path = std::filesystem::temp_directory_path() / "makpabe_universe_test.txt";
  {
    std::ofstream f(path);
    f << "doctor\nnurse\r\nadmin\n";
  }
  const auto u = AttributeUniverse::load(path);
  std::filesystem::remove(path);
  CHECK(u.names() == std::vector<std::string>{"doctor", "nurse", "admin"});
  CHECK(u.index_of("admin") == 2);
}

TEST_CASE("parser examples") {
  const auto& u = abc();
  CHECK(parse_policy("A", u) == L(0));
  CHECK(parse_policy("(A and B) or C", u) == PolicyNode::gate(1, {PolicyNode::gate(2, {L(0), L(1)}), L(2)}));
  CHECK(parse_policy("2 of (A, B, C)", u) == PolicyNode::gate(2, {L(0), L(1), L(2)}));
  CHECK(syntax_offset("A and") == 5);
  CHECK(error_code("A and") == Errc::kMalformedPolicy);
}

TEST_CASE("and binds tighter than or") {
  const auto& u = abc();
  CHECK(parse_policy("A or B and C", u) == PolicyNode::any_of({L(0), PolicyNode::all_of({L(1), L(2)})}));
  CHECK(parse_policy("A and B or C and D", u) ==
        PolicyNode::any_of({PolicyNode::all_of({L(0), L(1)}), PolicyNode::all_of({L(2), L(3)})}));
  CHECK(parse_policy("A and B and C", u) == PolicyNode::all_of({L(0), L(1), L(2)}));
  CHECK(parse_policy("  (A)  ", u) == L(0));
  CHECK(parse_policy("1 of (A)", u) == PolicyNode::gate(1, {L(0)}));
}

TEST_CASE("parser errors") {
  CHECK(error_code("Z") == Errc::kUnknownAttribute);
  CHECK(error_code("A and Z") == Errc::kUnknownAttribute);
  CHECK(error_code("4 of (A, B, C)") == Errc::kThresholdOutOfRange);
  CHECK(error_code("0 of (A, B)") == Errc::kThresholdOutOfRange);
  CHECK(syntax_offset("") == 0);
  CHECK(syntax_offset("(A or B") == 7);
  CHECK(syntax_offset("A B") == 2);
  CHECK(syntax_offset("2 of A") == 5);
  CHECK(syntax_offset("A or or B") == 5);
  CHECK(syntax_offset("2 of (A,)") == 8);
}

TEST_CASE("pretty print round trip") {
  const auto& u = abc();
  for (const auto& p : oracle::enumerate_policies(4, true)) {
    REQUIRE(parse_policy(to_string(p, u), u) == p);
  }
  for (const char* text : {"A", "(A and B) or C", "2 of (A, B, C)", "A and (B or 2 of (C, D, E))"}) {
    const auto p = parse_policy(text, u);
    CHECK(parse_policy(to_string(p, u), u) == p);
  }
}

TEST_CASE("tree shape helpers") {
  const auto p = parse_policy("A and (B or 2 of (C, D, E))", abc());
  CHECK(p.leaf_count() == 5);
  CHECK(p.depth() == 4);
  CHECK(evaluate(p, {0, 1}));
  CHECK(evaluate(p, {0, 2, 4}));
  CHECK(!evaluate(p, {0, 2}));
  CHECK(!evaluate(p, {1, 2, 3}));
}

TEST_CASE("compiler examples") {
  const auto& ctx = PairingContext::debug(13);
  const auto leaf = to_lsss(L(0), ctx);
  CHECK(small_entries(leaf) == std::vector<std::vector<std::int64_t>>{{1}});
  CHECK(leaf.rho() == std::vector<AttributeIndex>{0});

  const auto either = to_lsss(PolicyNode::any_of({L(0), L(1)}), ctx);
  CHECK(small_entries(either) == std::vector<std::vector<std::int64_t>>{{1}, {1}});

  const auto both = to_lsss(PolicyNode::all_of({L(0), L(1)}), ctx);
  CHECK(small_entries(both) == std::vector<std::vector<std::int64_t>>{{1, 1}, {0, -1}});
  CHECK(oracle::span_contains_target(both, {0, 1}, 13));
  CHECK(!oracle::span_contains_target(both, {0}, 13));
  CHECK(!oracle::span_contains_target(both, {1}, 13));

  const auto two = to_lsss(PolicyNode::gate(2, {L(0), L(1), L(2)}), ctx);
  REQUIRE(two.rows() == 3);
  REQUIRE(two.cols() == 2);
  std::set<std::uint64_t> xs;
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(two.at(i, 0) == ctx.scalar(1));
    CHECK(!two.at(i, 1).is_zero());
    xs.insert(two.at(i, 1).to_u64());
  }
  CHECK(xs.size() == 3);
  for (std::uint64_t mask = 0; mask < 8; ++mask) {
    const auto s = oracle::subset_from_mask(mask);
    CHECK(oracle::span_contains_target(two, s, 13) == (s.size() >= 2));
  }
}

TEST_CASE("compiled span equals tree evaluation (brute-force span at p=13)") {
  const auto& ctx = PairingContext::debug(13);
  auto family = oracle::enumerate_policies(4, false);
  family.push_back(PolicyNode::all_of({PolicyNode::any_of({L(0), L(1)}), PolicyNode::gate(2, {L(1), L(2), L(3)})}));
  family.push_back(PolicyNode::any_of({PolicyNode::all_of({L(0), L(1)}), PolicyNode::all_of({L(2), L(3)})}));
  family.push_back(PolicyNode::all_of({L(0), L(0)}));
  for (const auto& p : family) {
    const auto m = to_lsss(p, ctx);
    for (std::uint64_t mask = 0; mask < 16; ++mask) {
      const auto s = oracle::subset_from_mask(mask);
      REQUIRE(oracle::span_contains_target(m, s, 13) == evaluate(p, s));
    }
  }
}

TEST_CASE("matrix dimensions and monotonicity") {
  const auto& ctx = PairingContext::debug();
  for (const auto& p : oracle::enumerate_policies(4, true)) {
    const auto m = to_lsss(p, ctx);
    CHECK(m.rows() == p.leaf_count());
    std::size_t bound = 1;
    std::function<void(const PolicyNode&)> walk = [&](const PolicyNode& n) {
      if (n.is_leaf()) return;
      bound += n.threshold - 1;
      for (const auto& c : n.children) walk(c);
    };
    walk(p);
    CHECK(m.cols() <= bound);
    for (std::uint64_t s0 = 0; s0 < 16; ++s0) {
      if (!evaluate(p, oracle::subset_from_mask(s0))) continue;
      for (std::uint64_t s1 = 0; s1 < 16; ++s1) {
        if ((s0 & s1) == s0) REQUIRE(lsss::is_authorized(m, oracle::subset_from_mask(s1)));
      }
    }
  }
}

TEST_CASE("fan-in must stay below the field order") {
  const auto& ctx = PairingContext::debug(13);
  std::vector<PolicyNode> kids;
  for (int i = 0; i < 13; ++i) kids.push_back(L(0));
  CHECK_THROWS_AS(to_lsss(PolicyNode::gate(2, kids), ctx), Error);
  kids.pop_back();
  CHECK_NOTHROW(to_lsss(PolicyNode::gate(2, kids), ctx));
}

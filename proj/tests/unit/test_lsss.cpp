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

#include <functional>
#include <map>

#include "makpabe/errors.hpp"
#include "makpabe/lsss.hpp"
#include "oracles.hpp"

using namespace makpabe;
using namespace makpabe::lsss;
using groups::PairingContext;
using policy::PolicyNode;

namespace {

const PairingContext& p13() { return PairingContext::debug(13); }

AccessMatrix and_matrix() { return AccessMatrix::from_integers(p13(), {{1, 1}, {0, -1}}, {0, 1}); }
AccessMatrix or_matrix() { return AccessMatrix::from_integers(p13(), {{1}, {1}}, {0, 1}); }

std::vector<std::uint64_t> values(const ScalarVector& v) {
  std::vector<std::uint64_t> out;
  for (const auto& x : v) out.push_back(x.to_u64());
  return out;
}

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::kIo;
}

}  // namespace

TEST_CASE("matrix validation") {
  const auto& ctx = p13();
  CHECK_THROWS(AccessMatrix(ctx, 0, {}, {}));
  CHECK_THROWS(AccessMatrix::from_integers(ctx, {{1, 2}, {1}}, {0, 1}));
  CHECK_THROWS(AccessMatrix::from_integers(ctx, {{1}}, {0, 1}));
  CHECK(and_matrix().at(1, 1).to_u64() == 12);
}

TEST_CASE("share examples at p=13") {
  const auto& ctx = p13();
  CHECK(values(share_with_vector(and_matrix(), {ctx.scalar(5), ctx.scalar(3)}).lambda) ==
        std::vector<std::uint64_t>{8, 10});
  Rng rng = Rng::from_seed(1);
  const auto leaf = AccessMatrix::from_integers(ctx, {{1}}, {0});
  const auto sv = share(leaf, ctx.scalar(7), rng);
  CHECK(values(sv.lambda) == std::vector<std::uint64_t>{7});
  CHECK(values(sv.v) == std::vector<std::uint64_t>{7});
  CHECK(values(share_with_vector(and_matrix(), {ctx.scalar(0), ctx.scalar(0)}).lambda) ==
        std::vector<std::uint64_t>{0, 0});
  const auto shared = share(and_matrix(), ctx.scalar(5), rng);
  CHECK(shared.v[0] == ctx.scalar(5));
  CHECK_THROWS(share_with_vector(and_matrix(), {ctx.scalar(1)}));
}

TEST_CASE("authorization examples") {
  CHECK(is_authorized(and_matrix(), {0, 1}));
  CHECK(!is_authorized(and_matrix(), {0}));
  CHECK(!is_authorized(and_matrix(), {}));
}

TEST_CASE("reconstruction examples") {
  const auto plan = reconstruction_coefficients(and_matrix(), {0, 1});
  CHECK(plan.rows == std::vector<std::size_t>{0, 1});
  CHECK(values(plan.coeffs) == std::vector<std::uint64_t>{1, 1});
  const auto single = reconstruction_coefficients(or_matrix(), {1});
  CHECK(single.rows == std::vector<std::size_t>{1});
  CHECK(values(single.coeffs) == std::vector<std::uint64_t>{1});
  CHECK(code_of([] { reconstruction_coefficients(and_matrix(), {0}); }) == Errc::kUnauthorized);
  // Both OR rows present: the second gets a zero coefficient and is dropped.
  const auto both = reconstruction_coefficients(or_matrix(), {0, 1});
  CHECK(both.rows == std::vector<std::size_t>{0});
}

TEST_CASE("blocking vector examples") {
  CHECK(values(blocking_vector(and_matrix(), {0})) == std::vector<std::uint64_t>{1, 12});
  const auto wide = AccessMatrix::from_integers(p13(), {{1, 2, 3}}, {0});
  CHECK(values(blocking_vector(wide, {})) == std::vector<std::uint64_t>{1, 0, 0});
  CHECK(code_of([] { blocking_vector(and_matrix(), {0, 1}); }) == Errc::kAuthorized);
}

TEST_CASE("apply plan examples") {
  const auto& ctx = p13();
  const ReconstructionPlan plan{{0, 1}, {ctx.scalar(1), ctx.scalar(1)}};
  CHECK(apply_plan(plan, ScalarVector{ctx.scalar(8), ctx.scalar(10)}).to_u64() == 5);
  const ReconstructionPlan one{{0}, {ctx.scalar(1)}};
  CHECK(apply_plan(one, ScalarVector{ctx.scalar(7)}).to_u64() == 7);
  CHECK(apply_plan(ReconstructionPlan{}, ScalarVector{ctx.scalar(7)}).is_zero());
  CHECK(code_of([&] { apply_plan(ReconstructionPlan{{3}, {ctx.scalar(1)}}, ScalarVector{ctx.scalar(7)}); }) ==
        Errc::kIndexOutOfRange);
}

TEST_CASE("duality and plan validity over enumerated policies") {
  const auto& ctx = PairingContext::debug();
  for (const auto& p : oracle::enumerate_policies(5, true)) {
    const auto m = policy::to_lsss(p, ctx);
    for (std::uint64_t mask = 0; mask < 32; ++mask) {
      const auto s = oracle::subset_from_mask(mask);
      const auto plan = try_reconstruction_coefficients(m, s);
      const auto y = try_blocking_vector(m, s);
      REQUIRE(plan.has_value() != y.has_value());
      REQUIRE(plan.has_value() == policy::evaluate(p, s));
      if (plan) {
        ScalarVector sum(m.cols(), ctx.scalar(0));
        for (std::size_t k = 0; k < plan->rows.size(); ++k) {
          REQUIRE(s.contains(m.label(plan->rows[k])));
          REQUIRE(!plan->coeffs[k].is_zero());
          for (std::size_t j = 0; j < m.cols(); ++j) sum[j] += plan->coeffs[k] * m.at(plan->rows[k], j);
        }
        REQUIRE(sum[0] == ctx.scalar(1));
        for (std::size_t j = 1; j < m.cols(); ++j) REQUIRE(sum[j].is_zero());
      } else {
        REQUIRE((*y)[0] == ctx.scalar(1));
        for (std::size_t i = 0; i < m.rows(); ++i) {
          if (s.contains(m.label(i))) REQUIRE(m.row_dot(i, *y).is_zero());
        }
      }
    }
  }
}

TEST_CASE("reconstruction recovers the secret") {
  const auto& ctx = PairingContext::debug();
  Rng rng = Rng::from_seed(2);
  const auto family = oracle::enumerate_policies(5, false);
  std::size_t trials = 0;
  while (trials < 1000) {
    const auto& p = family[rng.uniform(family.size())];
    const auto s = oracle::subset_from_mask(rng.uniform(32));
    const auto m = policy::to_lsss(p, ctx);
    const auto plan = try_reconstruction_coefficients(m, s);
    if (!plan) continue;
    const Scalar secret = ctx.random_scalar(rng);
    REQUIRE(apply_plan(*plan, share(m, secret, rng)) == secret);
    ++trials;
  }
}

TEST_CASE("determinism") {
  const auto& ctx = PairingContext::debug();
  const auto m = policy::to_lsss(policy::PolicyNode::gate(2, {PolicyNode::leaf(0), PolicyNode::leaf(1),
                                                              PolicyNode::leaf(2)}),
                                 ctx);
  const auto a = reconstruction_coefficients(m, {0, 1, 2});
  const auto b = reconstruction_coefficients(m, {0, 1, 2});
  CHECK(a.rows == b.rows);
  CHECK(a.coeffs == b.coeffs);
  CHECK(blocking_vector(m, {1}) == blocking_vector(m, {1}));
}

TEST_CASE("unauthorized shares reveal nothing at p=13") {
  // For each secret, the multiset of S-labelled share tuples over every v.
  const auto& ctx = p13();
  struct Case {
    AccessMatrix m;
    policy::AttributeSet s;
  };
  const std::vector<Case> cases = {
      {and_matrix(), {0}},
      {and_matrix(), {1}},
      {policy::to_lsss(PolicyNode::gate(2, {PolicyNode::leaf(0), PolicyNode::leaf(1), PolicyNode::leaf(2)}), ctx),
       {2}},
  };
  for (const auto& c : cases) {
    std::map<std::vector<std::uint64_t>, std::size_t> reference;
    for (std::int64_t secret = 0; secret < 13; ++secret) {
      std::map<std::vector<std::uint64_t>, std::size_t> tally;
      for (std::int64_t r = 0; r < 13; ++r) {
        const auto sv = share_with_vector(c.m, {ctx.scalar(secret), ctx.scalar(r)});
        std::vector<std::uint64_t> seen;
        for (std::size_t i = 0; i < c.m.rows(); ++i) {
          if (c.s.contains(c.m.label(i))) seen.push_back(sv.lambda[i].to_u64());
        }
        ++tally[seen];
      }
      if (secret == 0) reference = tally;
      REQUIRE(tally == reference);
    }
  }
}

TEST_CASE("solver handles an inconsistent system") {
  const auto& ctx = p13();
  std::vector<ScalarVector> a{{ctx.scalar(1), ctx.scalar(1)}, {ctx.scalar(2), ctx.scalar(2)}};
  CHECK(!solve_linear_system(a, {ctx.scalar(1), ctx.scalar(3)}, 2, ctx));
  const auto x = solve_linear_system(a, {ctx.scalar(1), ctx.scalar(2)}, 2, ctx);
  REQUIRE(x);
  CHECK(values(*x) == std::vector<std::uint64_t>{1, 0});
}

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

#include <set>

#include "makpabe/errors.hpp"
#include "makpabe/groups.hpp"
#include "oracles.hpp"

using namespace makpabe;
using namespace makpabe::groups;

namespace {

const PairingContext& p13() { return PairingContext::debug(13); }

GroupElem g(Role role, std::int64_t e) { return p13().generator(role).pow(p13().scalar(e)); }

std::uint64_t log13(const GroupElem& x) { return p13().debug_log(x).to_u64(); }

}  // namespace

TEST_CASE("debug context construction") {
  const auto& ctx = p13();
  CHECK(ctx.is_debug());
  CHECK(ctx.debug_order() == 13);
  CHECK(log13(ctx.generator(Role::kKey)) == 1);
  CHECK(log13(ctx.generator(Role::kTarget)) == 1);
  CHECK(&PairingContext::debug(13) == &ctx);
  CHECK(PairingContext::debug().debug_order() == (std::uint64_t{1} << 61) - 1);
  CHECK(ctx.backend_id() == "debug:13");
  CHECK(&PairingContext::from_backend_id("debug:13") == &ctx);
}

TEST_CASE("debug context rejects bad orders") {
  auto code = [](std::uint64_t p) {
    try {
      PairingContext::debug(p);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::kIo;
  };
  CHECK(code(12) == Errc::kNonPrime);
  CHECK(code(1) == Errc::kNonPrime);
  CHECK(code(11) == Errc::kBackendUnsupported);
  CHECK(code((std::uint64_t{1} << 61) + 1) == Errc::kNonPrime);
}

TEST_CASE("unknown curve id") {
  CHECK_THROWS_AS(PairingContext::curve("bn254"), Error);
  try {
    PairingContext::curve("bn254");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kUnknownCurve);
  }
}

TEST_CASE("pairing examples at p=13") {
  const auto& ctx = p13();
  CHECK(log13(ctx.pair(g(Role::kKey, 2), g(Role::kCipher, 3))) == 6);
  CHECK(ctx.pair(g(Role::kKey, 0), g(Role::kCipher, 5)) == ctx.identity(Role::kTarget));
  PairingCounter counter;
  const GroupElem e = ctx.pair(ctx.generator(Role::kKey), ctx.generator(Role::kCipher));
  CHECK(e == ctx.generator(Role::kTarget));
  CHECK(!(e == ctx.identity(Role::kTarget)));
  CHECK(counter.count() == 1);
}

TEST_CASE("group operation examples at p=13") {
  const auto& ctx = p13();
  CHECK(log13(ctx.exp(g(Role::kKey, 2), ctx.scalar(3))) == 6);
  CHECK(log13(ctx.combine(g(Role::kKey, 5), g(Role::kKey, 9))) == 1);
  CHECK(log13(ctx.invert(g(Role::kKey, 4))) == 9);
  CHECK(ctx.eq(g(Role::kCipher, 7), g(Role::kCipher, 20)));
}

TEST_CASE("roles are never mixed") {
  const auto& ctx = p13();
  CHECK_THROWS_AS(ctx.combine(g(Role::kKey, 1), g(Role::kTarget, 1)), Error);
  CHECK_THROWS_AS(ctx.pair(g(Role::kTarget, 1), g(Role::kCipher, 1)), Error);
  CHECK_THROWS_AS(ctx.pair(g(Role::kCipher, 1), g(Role::kKey, 1)), Error);
  const auto& other = PairingContext::debug(17);
  CHECK_THROWS_AS(ctx.combine(g(Role::kKey, 1), other.generator(Role::kKey)), Error);
}

TEST_CASE("bilinearity exhaustive at p=13") {
  const auto& ctx = p13();
  for (std::int64_t a = 0; a < 13; ++a) {
    for (std::int64_t b = 0; b < 13; ++b) {
      REQUIRE(ctx.pair(g(Role::kKey, a), g(Role::kCipher, b)) == g(Role::kTarget, a * b));
    }
  }
}

TEST_CASE("bilinearity randomized at the default prime") {
  const auto& ctx = PairingContext::debug();
  Rng rng = Rng::from_seed(7);
  for (int i = 0; i < 200; ++i) {
    const Scalar a = ctx.random_scalar(rng), b = ctx.random_scalar(rng);
    const GroupElem lhs = ctx.pair(ctx.generator(Role::kKey).pow(a), ctx.generator(Role::kCipher).pow(b));
    REQUIRE(lhs == ctx.generator(Role::kTarget).pow(a * b));
  }
}

TEST_CASE("group laws") {
  const auto& ctx = PairingContext::debug();
  Rng rng = Rng::from_seed(8);
  for (Role role : {Role::kKey, Role::kCipher, Role::kTarget}) {
    const GroupElem x = ctx.random_element(role, rng), y = ctx.random_element(role, rng),
                    z = ctx.random_element(role, rng);
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * y == y * x);
    CHECK(x * ctx.identity(role) == x);
    CHECK(x * x.inverse() == ctx.identity(role));
  }
  // exp(x, p) = identity: p reduces to 0 as a scalar.
  const auto& small = p13();
  CHECK(g(Role::kKey, 5).pow(small.scalar(13)) == small.identity(Role::kKey));
}

TEST_CASE("pairing counter scopes") {
  const auto& ctx = p13();
  PairingCounter outer;
  {
    PairingCounter inner;
    for (int i = 0; i < 5; ++i) ctx.pair(g(Role::kKey, i), g(Role::kCipher, 1));
    CHECK(inner.count() == 5);
    inner.reset();
    CHECK(inner.count() == 0);
    const std::vector<GroupElem> ks{g(Role::kKey, 1), g(Role::kKey, 2), g(Role::kKey, 3)};
    const std::vector<GroupElem> cs{g(Role::kCipher, 1), g(Role::kCipher, 1), g(Role::kCipher, 1)};
    CHECK(log13(ctx.pair_product(ks, cs)) == 6);
    CHECK(inner.count() == 3);
  }
  CHECK(outer.count() == 8);
  ctx.exp(g(Role::kKey, 2), ctx.scalar(3));
  CHECK(outer.count() == 8);
}

TEST_CASE("seeded scalars are reproducible") {
  const auto& ctx = PairingContext::debug();
  Rng a = Rng::from_seed(42), b = Rng::from_seed(42), c = Rng::from_seed(43);
  std::vector<Scalar> xa, xb, xc;
  for (int i = 0; i < 20; ++i) {
    xa.push_back(ctx.random_scalar(a));
    xb.push_back(ctx.random_scalar(b));
    xc.push_back(ctx.random_scalar(c));
  }
  CHECK(xa == xb);
  CHECK(xa != xc);
}

TEST_CASE("nonzero scalars never hit zero") {
  const auto& ctx = p13();
  Rng rng = Rng::from_seed(9);
  for (int i = 0; i < 100000; ++i) REQUIRE(!ctx.random_scalar(rng, true).is_zero());
}

TEST_CASE("scalar distribution at p=13 passes chi-square") {
  const auto& ctx = p13();
  Rng rng = Rng::from_seed(10);
  std::vector<std::size_t> counts(13, 0);
  for (int i = 0; i < 100000; ++i) ++counts[ctx.random_scalar(rng).to_u64()];
  CHECK(oracle::chi_square_uniform(counts) < oracle::kChiSquare12At99);
}

TEST_CASE("scalar field axioms") {
  const auto& ctx = p13();
  for (std::int64_t a = 1; a < 13; ++a) {
    const Scalar x = ctx.scalar(a);
    CHECK(x * x.inverse() == ctx.scalar(1));
    CHECK((x + (-x)).is_zero());
  }
  CHECK(ctx.scalar(-1).to_u64() == 12);
  CHECK(ctx.scalar(-1).to_small_signed() == -1);
  CHECK_THROWS_AS(ctx.scalar(0).inverse(), std::domain_error);
}

TEST_CASE("canonical bytes at p=13 are injective and fixed length") {
  const auto& ctx = p13();
  for (Role role : {Role::kKey, Role::kCipher, Role::kTarget}) {
    std::set<std::vector<std::uint8_t>> seen;
    for (std::int64_t e = 0; e < 13; ++e) {
      const auto bytes = ctx.canonical_bytes(g(role, e));
      CHECK(bytes.size() == ctx.element_size(role));
      CHECK(ctx.decode(role, bytes) == g(role, e));
      seen.insert(bytes);
    }
    CHECK(seen.size() == 13);
  }
  std::vector<std::uint8_t> bad(8, 0);
  bad[7] = 13;
  CHECK_THROWS_AS(ctx.decode(Role::kKey, bad), Error);
  CHECK_THROWS_AS(ctx.decode(Role::kKey, std::vector<std::uint8_t>(7, 0)), Error);
}

TEST_CASE("curve backend basics") {
  const auto& ctx = PairingContext::curve();
  CHECK(!ctx.is_debug());
  CHECK(ctx.secret_safe());
  CHECK(ctx.backend_id() == "curve:bls12-381");
  CHECK(ctx.element_size(Role::kKey) == 96);
  CHECK(ctx.element_size(Role::kCipher) == 48);
  CHECK(ctx.element_size(Role::kTarget) == 576);
  Rng rng = Rng::from_seed(11);
  const Scalar a = ctx.random_scalar(rng), b = ctx.random_scalar(rng);
  const GroupElem& gk = ctx.generator(Role::kKey);
  const GroupElem& gc = ctx.generator(Role::kCipher);
  const GroupElem& gt = ctx.generator(Role::kTarget);
  CHECK(!(gt == ctx.identity(Role::kTarget)));
  CHECK(ctx.pair(gk, gc) == gt);
  CHECK(ctx.pair(gk.pow(a), gc.pow(b)) == gt.pow(a * b));
  CHECK(ctx.pair(gk.pow(a), gc) == ctx.pair(gk, gc.pow(a)));
  CHECK(gt.pow(a) * gt.pow(b) == gt.pow(a + b));
  CHECK(gk.pow(a).inverse() * gk.pow(a) == ctx.identity(Role::kKey));
  for (Role role : {Role::kKey, Role::kCipher, Role::kTarget}) {
    const GroupElem x = ctx.random_element(role, rng);
    const auto bytes = ctx.canonical_bytes(x);
    CHECK(bytes.size() == ctx.element_size(role));
    CHECK(ctx.decode(role, bytes) == x);
    auto flipped = bytes;
    flipped[bytes.size() / 2] ^= 0x10;
    CHECK_THROWS_AS(ctx.decode(role, flipped), Error);
  }
  CHECK_THROWS_AS(ctx.debug_log(gt), Error);
  CHECK(ctx.decode_scalar(ctx.scalar_bytes(a)) == a);
}

TEST_CASE("curve pair product matches individual pairings") {
  const auto& ctx = PairingContext::curve();
  Rng rng = Rng::from_seed(12);
  std::vector<GroupElem> ks, cs;
  GroupElem expect = ctx.identity(Role::kTarget);
  for (int i = 0; i < 3; ++i) {
    ks.push_back(ctx.random_element(Role::kKey, rng));
    cs.push_back(ctx.random_element(Role::kCipher, rng));
    expect *= ctx.pair(ks.back(), cs.back());
  }
  ks.push_back(ctx.identity(Role::kKey));
  cs.push_back(ctx.random_element(Role::kCipher, rng));
  PairingCounter counter;
  CHECK(ctx.pair_product(ks, cs) == expect);
  CHECK(counter.count() == 4);
}

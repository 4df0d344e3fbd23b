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
#include "makpabe/scheme.hpp"
#include "oracles.hpp"

using namespace makpabe;
using namespace makpabe::scheme;
using policy::PolicyNode;
using groups::PairingCounter;

namespace {

const PairingContext& p13() { return PairingContext::debug(13); }

GlobalParams params(const PairingContext& ctx, std::vector<std::string> names = {"A", "B", "C", "D", "E"}) {
  return GlobalParams(ctx, AttributeUniverse::from_names(std::move(names)));
}

std::uint64_t log13(const GroupElem& x) { return p13().debug_log(x).to_u64(); }

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::kIo;
}

PolicyNode L(AttributeIndex i) { return PolicyNode::leaf(i); }

}  // namespace

TEST_CASE("setup with forced secrets at p=13") {
  const auto gp = params(p13(), {"A", "B"});
  const auto keys = authority_from_secrets(gp, "k1", p13().scalar(4), {p13().scalar(2), p13().scalar(5)});
  CHECK(log13(keys.pub.e_gg_alpha) == 4);
  CHECK(keys.pub.e_gg_alpha.role() == Role::kTarget);
  REQUIRE(keys.pub.z_pub.size() == 2);
  CHECK(log13(keys.pub.z_pub[0]) == 2);
  CHECK(log13(keys.pub.z_pub[1]) == 5);
  CHECK(keys.pub.z_pub[0].role() == Role::kCipher);
  CHECK_THROWS(authority_from_secrets(gp, "k1", p13().scalar(4), {p13().scalar(0), p13().scalar(5)}));
}

TEST_CASE("setup samples nonzero z and independent authorities") {
  const auto gp = params(p13(), {"A"});
  Rng rng = Rng::from_seed(3);
  for (int i = 0; i < 100000; ++i) REQUIRE(!authority_setup(gp, "k", rng).master.z[0].is_zero());
  const auto big = params(PairingContext::debug());
  Rng r1 = Rng::from_seed(1), r2 = Rng::from_seed(2);
  const auto a = authority_setup(big, "k1", r1);
  const auto b = authority_setup(big, "k2", r2);
  CHECK(!(a.master.alpha == b.master.alpha));
  CHECK(a.master.z != b.master.z);
}

TEST_CASE("keygen examples at p=13") {
  const auto gp = params(p13(), {"A", "B"});
  const auto keys = authority_from_secrets(gp, "k1", p13().scalar(4), {p13().scalar(2), p13().scalar(5)});
  const auto am = policy::to_lsss(PolicyNode::all_of({L(0), L(1)}), p13());
  const auto key = keygen_with_vector(gp, keys.master, am, {p13().scalar(4), p13().scalar(1)});
  REQUIRE(key.components.size() == 2);
  CHECK(log13(key.components[0]) == 9);
  CHECK(log13(key.components[1]) == 5);
  CHECK(key.components[0].role() == Role::kKey);

  const auto leaf = keygen_with_vector(gp, keys.master, policy::to_lsss(L(0), p13()), {p13().scalar(4)});
  CHECK(log13(leaf.components[0]) == 2);
}

TEST_CASE("keygen draws fresh randomness") {
  const auto gp = params(PairingContext::debug());
  Rng rng = Rng::from_seed(4);
  const auto keys = authority_setup(gp, "k1", rng);
  const auto am = policy::to_lsss(PolicyNode::all_of({L(0), L(1)}), gp.context());
  CHECK(keygen(gp, keys.master, am, rng).components != keygen(gp, keys.master, am, rng).components);
  const auto bad = lsss::AccessMatrix::from_integers(gp.context(), {{1}}, {9});
  CHECK(code_of([&] { keygen(gp, keys.master, bad, rng); }) == Errc::kUnknownAttribute);
}

TEST_CASE("encrypt example with forced exponent at p=13") {
  const auto gp = params(p13(), {"A", "B", "C"});
  const auto& ctx = p13();
  const auto k1 = authority_from_secrets(gp, "k1", ctx.scalar(4), {ctx.scalar(1), ctx.scalar(2), ctx.scalar(3)});
  const auto k2 = authority_from_secrets(gp, "k2", ctx.scalar(6), {ctx.scalar(4), ctx.scalar(5), ctx.scalar(6)});
  const std::vector<AuthorityPublicKey> pks{k1.pub, k2.pub};
  const GroupElem m = ctx.generator(Role::kTarget).pow(ctx.scalar(2));
  PairingCounter counter;
  const auto ct = encrypt_with_exponent(gp, m, {0, 1, 2}, pks, ctx.scalar(3));
  CHECK(counter.count() == 0);
  CHECK(log13(ct.c_prime) == 6);
  CHECK(ct.component_count() == 7);
  for (std::size_t a = 0; a < 2; ++a) {
    for (AttributeIndex i = 0; i < 3; ++i) CHECK(ct.component(a, i) == pks[a].z_pub[i].pow(ctx.scalar(3)));
  }
}

TEST_CASE("encrypt errors") {
  const auto gp = params(PairingContext::debug());
  Rng rng = Rng::from_seed(5);
  const auto k1 = authority_setup(gp, "k1", rng);
  const GroupElem m = gp.context().random_element(Role::kTarget, rng);
  const std::vector<AuthorityPublicKey> one{k1.pub};
  const std::vector<AuthorityPublicKey> twice{k1.pub, k1.pub};
  CHECK(code_of([&] { encrypt(gp, m, {0}, {}, rng); }) == Errc::kEmptyAuthoritySet);
  CHECK(code_of([&] { encrypt(gp, m, {}, one, rng); }) == Errc::kEmptyAttributeSet);
  CHECK(code_of([&] { encrypt(gp, m, {7}, one, rng); }) == Errc::kUnknownAttribute);
  CHECK(code_of([&] { encrypt(gp, m, {0}, twice, rng); }) == Errc::kDuplicateAuthority);
  CHECK(code_of([&] { encrypt(gp, gp.context().generator(Role::kKey), {0}, one, rng); }) == Errc::kRoleMismatch);
}

TEST_CASE("decrypt round trip and errors") {
  const auto gp = params(PairingContext::debug());
  Rng rng = Rng::from_seed(6);
  const auto k1 = authority_setup(gp, "k1", rng);
  const auto k2 = authority_setup(gp, "k2", rng);
  const std::vector<AuthorityPublicKey> pks{k1.pub, k2.pub};
  const GroupElem m = gp.context().random_element(Role::kTarget, rng);
  const auto ct = encrypt(gp, m, {0, 1, 2}, pks, rng);
  const auto& ctx = gp.context();
  KeyRing ring;
  ring.emplace("k1", keygen(gp, k1.master, policy::to_lsss(PolicyNode::all_of({L(0), L(1)}), ctx), rng));
  ring.emplace("k2", keygen(gp, k2.master, policy::to_lsss(PolicyNode::any_of({L(2), L(4)}), ctx), rng));
  DecryptStats stats;
  PairingCounter counter;
  CHECK(decrypt(gp, ct, ring, &stats) == m);
  CHECK(counter.count() == 3);
  CHECK(stats.pairings == 3);
  CHECK(stats.rows_used == std::vector<std::size_t>{2, 1});

  KeyRing missing;
  missing.emplace("k1", ring.at("k1"));
  CHECK(code_of([&] { decrypt(gp, ct, missing); }) == Errc::kMissingAuthorityKey);

  KeyRing weak = ring;
  weak.insert_or_assign("k2", keygen(gp, k2.master, policy::to_lsss(PolicyNode::all_of({L(0), L(3)}), ctx), rng));
  counter.reset();
  try {
    decrypt(gp, ct, weak);
    FAIL("expected NotAuthorized");
  } catch (const NotAuthorizedError& e) {
    CHECK(e.authority_id() == "k2");
  }
  CHECK(counter.count() == 0);
}

TEST_CASE("NotAuthorized for S={A} under A and B") {
  const auto gp = params(PairingContext::debug());
  Rng rng = Rng::from_seed(7);
  const auto k1 = authority_setup(gp, "k1", rng);
  const std::vector<AuthorityPublicKey> pks{k1.pub};
  const auto ct = encrypt(gp, gp.context().random_element(Role::kTarget, rng), {0}, pks, rng);
  KeyRing ring;
  ring.emplace("k1", keygen(gp, k1.master, policy::to_lsss(PolicyNode::all_of({L(0), L(1)}), gp.context()), rng));
  CHECK(code_of([&] { decrypt(gp, ct, ring); }) == Errc::kNotAuthorized);
}

TEST_CASE("decryption correctness over random policies and authority counts") {
  const auto gp = params(PairingContext::debug());
  const auto& ctx = gp.context();
  Rng rng = Rng::from_seed(8);
  const auto family = oracle::enumerate_policies(5, true);
  std::vector<AuthorityKeys> auths;
  for (int k = 0; k < 3; ++k) auths.push_back(authority_setup(gp, "auth" + std::to_string(k), rng));
  std::size_t ok = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t na = 1 + rng.uniform(3);
    AttributeSet s = oracle::subset_from_mask(1 + rng.uniform(31));
    std::vector<AuthorityPublicKey> pks;
    KeyRing ring;
    bool authorized = true;
    for (std::size_t k = 0; k < na; ++k) {
      const auto& p = family[rng.uniform(family.size())];
      authorized = authorized && policy::evaluate(p, s);
      pks.push_back(auths[k].pub);
      ring.emplace(auths[k].pub.authority_id, keygen(gp, auths[k].master, policy::to_lsss(p, ctx), rng));
    }
    const GroupElem m = ctx.random_element(Role::kTarget, rng);
    const auto ct = encrypt(gp, m, s, pks, rng);
    if (authorized) {
      REQUIRE(decrypt(gp, ct, ring) == m);
      ++ok;
    } else {
      REQUIRE(code_of([&] { decrypt(gp, ct, ring); }) == Errc::kNotAuthorized);
    }
  }
  CHECK(ok > 100);
}

TEST_CASE("spliced rows never reconstruct e(g,g)^(alpha s)") {
  const auto gp = params(PairingContext::debug());
  const auto& ctx = gp.context();
  Rng rng = Rng::from_seed(9);
  const auto am = policy::to_lsss(PolicyNode::all_of({L(0), L(1)}), ctx);
  const auto plan = lsss::reconstruction_coefficients(am, {0, 1});
  for (int trial = 0; trial < 1000; ++trial) {
    const auto k = authority_setup(gp, "k", rng);
    const auto key1 = keygen(gp, k.master, am, rng);
    const auto key2 = keygen(gp, k.master, am, rng);
    const Scalar s = ctx.random_scalar(rng);
    // Encrypted to {A, B} but the attacker holds row A of one key and row B
    // of another: a superset plan with mismatched shares.
    const std::vector<GroupElem> ks{key1.components[0], key2.components[1]};
    const std::vector<GroupElem> cs{k.pub.z_pub[0].pow(s * plan.coeffs[0]), k.pub.z_pub[1].pow(s * plan.coeffs[1])};
    REQUIRE(!(ctx.pair_product(ks, cs) == k.pub.e_gg_alpha.pow(s)));
  }
}

TEST_CASE("unauthorized key rows are independent of alpha at p=13") {
  // Policy A and B, S = {A}: the A row exponent is (alpha + v2)/z_A. Over all
  // v2 it takes every value once, whatever alpha is.
  const auto gp = params(p13(), {"A", "B"});
  const auto& ctx = p13();
  const auto am = policy::to_lsss(PolicyNode::all_of({L(0), L(1)}), ctx);
  std::map<std::uint64_t, std::size_t> reference;
  for (std::int64_t alpha = 0; alpha < 13; ++alpha) {
    const auto keys = authority_from_secrets(gp, "k", ctx.scalar(alpha), {ctx.scalar(3), ctx.scalar(5)});
    std::map<std::uint64_t, std::size_t> tally;
    for (std::int64_t v2 = 0; v2 < 13; ++v2)
      ++tally[log13(keygen_with_vector(gp, keys.master, am, {ctx.scalar(alpha), ctx.scalar(v2)}).components[0])];
    if (alpha == 0) reference = tally;
    REQUIRE(tally == reference);
  }
}

TEST_CASE("scheme on the curve backend") {
  const auto gp = params(PairingContext::curve(), {"A", "B", "C"});
  const auto& ctx = gp.context();
  Rng rng = Rng::from_seed(10);
  const auto k1 = authority_setup(gp, "k1", rng);
  const auto k2 = authority_setup(gp, "k2", rng);
  const std::vector<AuthorityPublicKey> pks{k1.pub, k2.pub};
  const GroupElem m = ctx.random_element(Role::kTarget, rng);
  PairingCounter counter;
  const auto ct = encrypt(gp, m, {0, 2}, pks, rng);
  CHECK(counter.count() == 0);
  CHECK(ct.component_count() == 5);
  KeyRing ring;
  ring.emplace("k1", keygen(gp, k1.master, policy::to_lsss(PolicyNode::all_of({L(0), L(2)}), ctx), rng));
  ring.emplace("k2", keygen(gp, k2.master, policy::to_lsss(PolicyNode::any_of({L(1), L(2)}), ctx), rng));
  CHECK(decrypt(gp, ct, ring) == m);
  CHECK(counter.count() == 3);
  ring.insert_or_assign("k2", keygen(gp, k2.master, policy::to_lsss(L(1), ctx), rng));
  CHECK(code_of([&] { decrypt(gp, ct, ring); }) == Errc::kNotAuthorized);
}

TEST_CASE("context mismatch") {
  const auto gp = params(PairingContext::debug());
  const auto other = params(PairingContext::debug(13));
  Rng rng = Rng::from_seed(11);
  const auto k = authority_setup(other, "k", rng);
  const std::vector<AuthorityPublicKey> pks{k.pub};
  CHECK_THROWS_AS(encrypt(gp, gp.context().random_element(Role::kTarget, rng), {0}, pks, rng), Error);
}

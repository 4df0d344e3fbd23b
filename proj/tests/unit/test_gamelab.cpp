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

#include <cmath>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "makpabe/errors.hpp"
#include "makpabe/gamelab.hpp"

using namespace makpabe;
using namespace makpabe::gamelab;
using groups::Role;
using policy::PolicyNode;

namespace {

const PairingContext& p13() { return PairingContext::debug(13); }

std::uint64_t log13(const GroupElem& x) { return p13().debug_log(x).to_u64(); }

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::kIo;
}

GlobalParams abc(const PairingContext& ctx) {
  return GlobalParams(ctx, policy::AttributeUniverse::from_names({"A", "B", "C"}));
}

}  // namespace

TEST_CASE("BDH tuple examples") {
  const auto& ctx = p13();
  const auto c = bdh_challenge_from(ctx, ctx.scalar(2), ctx.scalar(3), ctx.scalar(5), true, ctx.scalar(0));
  CHECK(log13(c.instance.t) == 4);
  CHECK(log13(c.instance.a_key) == 2);
  CHECK(log13(c.instance.b_cipher) == 3);
  CHECK(log13(c.instance.s_cipher) == 5);

  Rng rng = Rng::from_seed(1);
  const auto& big = PairingContext::debug();
  for (int i = 0; i < 50; ++i) {
    const auto real = bdh_challenge(big, rng, true);
    REQUIRE(big.debug_log(real.instance.t) == real.hidden.a * real.hidden.b * real.hidden.s);
    const auto fake = bdh_challenge(big, rng, false);
    REQUIRE(big.debug_log(fake.instance.t) == fake.hidden.z);
    REQUIRE(!(fake.hidden.z == fake.hidden.a * fake.hidden.b * fake.hidden.s));
  }
  CHECK(code_of([&] { bdh_challenge(PairingContext::curve(), rng, true); }) == Errc::kBackendUnsupported);
}

TEST_CASE("random T is uniform at p=13") {
  Rng rng = Rng::from_seed(2);
  std::vector<std::size_t> counts(13, 0);
  for (int i = 0; i < 26000; ++i) ++counts[log13(bdh_challenge(p13(), rng, false).instance.t)];
  double chi = 0;
  for (auto c : counts) chi += (c - 2000.0) * (c - 2000.0) / 2000.0;
  CHECK(chi < 26.217);
}

TEST_CASE("simulator setup examples at p=13") {
  const auto& ctx = p13();
  const auto gp = abc(ctx);
  const auto bdh = bdh_challenge_from(ctx, ctx.scalar(2), ctx.scalar(3), ctx.scalar(5), true, ctx.scalar(0));
  std::map<std::string, Scalar, std::less<>> r{{"k1", ctx.scalar(4)}};
  const ScalarVector zp{ctx.scalar(2), ctx.scalar(7), ctx.scalar(11)};
  std::map<std::string, ScalarVector, std::less<>> z{{"k0", zp}, {"k1", zp}};
  const auto setup = simulator_init_with(gp, bdh.instance, {0, 1}, {"k0", "k1"}, "k0", r, z);
  CHECK(log13(setup.public_keys[0].e_gg_alpha) == 5);
  CHECK(log13(setup.public_keys[1].e_gg_alpha) == 1);
  // In the target set: g^z'. Outside: (g^b)^z'.
  CHECK(log13(setup.public_keys[0].z_pub[0]) == 2);
  CHECK(log13(setup.public_keys[0].z_pub[1]) == 7);
  CHECK(log13(setup.public_keys[0].z_pub[2]) == (3 * 11) % 13);
  AuditReport report;
  audit_setup(setup, bdh.hidden, report);
  CHECK(report.ok());
}

TEST_CASE("simulator rejects an honest authority outside the set") {
  const auto& ctx = PairingContext::debug();
  const auto gp = abc(ctx);
  Rng rng = Rng::from_seed(3);
  const auto bdh = bdh_challenge(ctx, rng, true);
  CHECK(code_of([&] { simulator_init(gp, bdh.instance, {0}, {"k0", "k1"}, "k9", rng); }) ==
        Errc::kProtocolViolation);
  CHECK(code_of([&] { simulator_init(gp, bdh.instance, {5}, {"k0"}, "k0", rng); }) == Errc::kUnknownAttribute);
}

TEST_CASE("simulated keys satisfy the implicit identities") {
  const auto& ctx = PairingContext::debug();
  const auto gp = abc(ctx);
  Rng rng = Rng::from_seed(4);
  for (int i = 0; i < 100; ++i) {
    const auto bdh = bdh_challenge(ctx, rng, true);
    const auto setup = simulator_init(gp, bdh.instance, {0}, {"k0", "k1", "k2"}, "k1", rng);
    AuditReport report;
    audit_setup(setup, bdh.hidden, report);
    const auto unauth = policy::to_lsss(PolicyNode::all_of({PolicyNode::leaf(0), PolicyNode::leaf(1)}), ctx);
    const auto auth = policy::to_lsss(PolicyNode::any_of({PolicyNode::leaf(0), PolicyNode::leaf(2)}), ctx);
    const auto honest = simulator_keygen(setup.state, "k1", unauth, rng);
    audit_key(setup.state, bdh.hidden, "k1", honest, report);
    CHECK(implicit_share_vector(setup.state, bdh.hidden, "k1", honest)[0] ==
          implicit_alpha(setup.state, bdh.hidden, "k1"));
    for (const char* id : {"k0", "k2"}) audit_key(setup.state, bdh.hidden, id, simulator_keygen(setup.state, id, auth, rng), report);
    REQUIRE(report.ok());
  }
}

TEST_CASE("honest authority refuses authorizing keys") {
  const auto& ctx = PairingContext::debug();
  const auto gp = abc(ctx);
  Rng rng = Rng::from_seed(5);
  const auto bdh = bdh_challenge(ctx, rng, true);
  const auto setup = simulator_init(gp, bdh.instance, {0, 1}, {"k0", "k1"}, "k0", rng);
  const auto am = policy::to_lsss(PolicyNode::all_of({PolicyNode::leaf(0), PolicyNode::leaf(1)}), ctx);
  CHECK(code_of([&] { simulator_keygen(setup.state, "k0", am, rng); }) == Errc::kHonestAuthorityRefusal);
  CHECK_NOTHROW(simulator_keygen(setup.state, "k1", am, rng));
}

TEST_CASE("corrupted-authority keys decrypt real ciphertexts") {
  // Keys from a simulated corrupted authority against a ciphertext produced
  // by the ordinary encryption under the simulated public keys.
  const auto& ctx = PairingContext::debug();
  const auto gp = abc(ctx);
  Rng rng = Rng::from_seed(6);
  for (int i = 0; i < 20; ++i) {
    const auto bdh = bdh_challenge(ctx, rng, true);
    const auto setup = simulator_init(gp, bdh.instance, {0}, {"k0", "k1"}, "k0", rng);
    scheme::KeyRing ring;
    ring.emplace("k1", simulator_keygen(setup.state, "k1",
                                        policy::to_lsss(PolicyNode::any_of({PolicyNode::leaf(1), PolicyNode::leaf(2)}), ctx),
                                        rng)
                           .key);
    const auto k0 = scheme::authority_from_secrets(
        gp, "k0", implicit_alpha(setup.state, bdh.hidden, "k0"),
        {implicit_z(setup.state, bdh.hidden, "k0", 0), implicit_z(setup.state, bdh.hidden, "k0", 1),
         implicit_z(setup.state, bdh.hidden, "k0", 2)});
    CHECK(k0.pub.e_gg_alpha == setup.public_keys[0].e_gg_alpha);
    CHECK(k0.pub.z_pub == setup.public_keys[0].z_pub);
    ring.emplace("k0", scheme::keygen(gp, k0.master, policy::to_lsss(PolicyNode::leaf(1), ctx), rng));
    const GroupElem m = ctx.random_element(Role::kTarget, rng);
    const auto ct = scheme::encrypt(gp, m, {1, 2}, setup.public_keys, rng);
    REQUIRE(scheme::decrypt(gp, ct, ring) == m);
  }
}

TEST_CASE("challenge shape and real-T audit") {
  const auto& ctx = PairingContext::debug();
  const auto gp = abc(ctx);
  Rng rng = Rng::from_seed(7);
  const auto bdh = bdh_challenge(ctx, rng, true);
  const auto setup = simulator_init(gp, bdh.instance, {0, 2}, {"k0", "k1", "k2"}, "k2", rng);
  const GroupElem m0 = ctx.random_element(Role::kTarget, rng), m1 = ctx.random_element(Role::kTarget, rng);
  const auto ct = simulator_challenge(setup.state, m0, m1, true);
  CHECK(ct.component_count() == 3 * 2 + 1);
  AuditReport report;
  audit_real_challenge(setup.state, bdh.hidden, ct, m1, report);
  CHECK(report.ok());
  AuditReport wrong;
  audit_real_challenge(setup.state, bdh.hidden, ct, m0, wrong);
  CHECK(!wrong.ok());
}

TEST_CASE("payload mode") {
  const auto& ctx = PairingContext::debug();
  const auto gp = abc(ctx);
  Rng rng = Rng::from_seed(8);
  const auto bdh = bdh_challenge(ctx, rng, true);
  const auto setup = simulator_init(gp, bdh.instance, {0}, {"k0"}, "k0", rng);
  const std::vector<std::uint8_t> a{1, 2, 3}, b{4, 5, 6}, c{7};
  CHECK(code_of([&] { simulator_challenge_payload(setup.state, a, c, false, rng); }) == Errc::kLengthMismatch);
  const auto pc = simulator_challenge_payload(setup.state, a, b, true, rng);
  const GroupElem mask = ctx.generator(Role::kTarget).pow(bdh.hidden.a * bdh.hidden.b * bdh.hidden.s);
  CHECK(open_payload(pc.abe.c_prime * mask.inverse(), pc.body) == b);
}

TEST_CASE("exhaustive audits at p=13") {
  const auto ids = run_exhaustive_identity_audit();
  CHECK(ids.ok());
  CHECK(ids.checks > 10000);
  const auto mu = run_exhaustive_mu_independence();
  CHECK(mu.ok());
}

TEST_CASE("randomized audit at the default prime") {
  const auto report = run_randomized_audit({});
  CHECK(report.ok());
  CHECK(report.checks > 1000);
}

TEST_CASE("coin adversary has no advantage") {
  auto adv = make_coin_adversary();
  const auto res = run_selective_game(*adv, 2000, 0xc0ffee);
  CHECK(res.aborted == 0);
  CHECK(res.advantage <= 3 * res.sigma);
  CHECK(res.ci_low <= 0.5);
  CHECK(res.ci_high >= 0.5);
}

TEST_CASE("omniscient adversary wins with a real T and not with a random one") {
  auto adv = make_omniscient_adversary();
  const auto real = run_selective_game(*adv, 300, 1);
  CHECK(real.success_rate >= 0.99);
  CHECK(real.decryptions == 300);
  GameOptions opts;
  opts.t_mode = TMode::kRandom;
  const auto random = run_selective_game(*adv, 2000, 1, opts);
  CHECK(random.advantage <= 3 * random.sigma);
}

TEST_CASE("replay, splice and share-mix adversaries") {
  for (const char* name : {"replay", "splice", "share-mix"}) {
    auto adv = make_adversary(name);
    const auto res = run_selective_game(*adv, 1000, 99);
    CAPTURE(name);
    CHECK(res.aborted == 0);
    CHECK(res.decryptions == 0);
    CHECK(res.advantage <= 3 * res.sigma);
  }
}

TEST_CASE("protocol violations abort and lose") {
  auto adv = make_cheating_adversary();
  std::ostringstream out;
  GameOptions opts;
  opts.transcript = &out;
  const auto res = run_selective_game(*adv, 5, 3, opts);
  CHECK(res.aborted == 5);
  CHECK(res.wins == 0);
  std::istringstream lines(out.str());
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) {
    const auto j = nlohmann::json::parse(line);
    CHECK(j["outcome"] == "aborted");
    CHECK(j["error"] == "HonestAuthorityRefusal");
    CHECK(j["queries"].back()["refused"] == true);
    ++n;
  }
  CHECK(n == 5);
  CHECK(code_of([] { make_adversary("oracle"); }) == Errc::kProtocolViolation);
}

TEST_CASE("trials are reproducible from the master seed") {
  auto adv = make_coin_adversary();
  std::ostringstream a, b;
  GameOptions oa, ob;
  oa.transcript = &a;
  ob.transcript = &b;
  run_selective_game(*adv, 20, 77, oa);
  run_selective_game(*adv, 20, 77, ob);
  CHECK(a.str() == b.str());
  const auto first = nlohmann::json::parse(a.str().substr(0, a.str().find('\n')));
  CHECK(first["seed"] == 77);
  CHECK(first.contains("target"));
  CHECK(first.contains("guess"));
}

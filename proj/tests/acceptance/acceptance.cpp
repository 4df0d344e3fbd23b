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

// One line per acceptance criterion: "[PASS] n ..." or "[FAIL] n ...".
// Pass criterion numbers as arguments to run a subset.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "makpabe/envelope.hpp"
#include "makpabe/errors.hpp"
#include "makpabe/gamelab.hpp"
#include "makpabe/scheme.hpp"
#include "oracles.hpp"

using namespace makpabe;
using groups::GroupElem;
using groups::PairingContext;
using groups::PairingCounter;
using groups::Role;
using policy::AttributeSet;
using policy::PolicyNode;
using scheme::GlobalParams;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Verdict {
  bool pass = true;
  std::string detail;
};

// ------------------------------------------------------------ criteria 1, 3, 4

struct RoundTripStats {
  std::size_t trials = 0;
  std::size_t authorized = 0;
  std::size_t unauthorized = 0;
  std::size_t empty_rejected = 0;
  std::size_t encryptions = 0;
  std::size_t failures_correctness = 0;
  std::size_t failures_pairings = 0;
  std::size_t failures_size = 0;
  std::uint64_t max_pairings = 0;
  double elapsed = 0;
  std::string first_failure;

  void fail(std::size_t& counter, const std::string& what) {
    ++counter;
    if (first_failure.empty()) first_failure = what;
  }
};

// Every policy over five attributes up to depth three, every subset S and
// |A| in {1, 2, 3}. Authority 0 holds the enumerated policy; authorities 1
// and 2 hold rotated entries of the same family, so mixed outcomes occur.
//
// With fresh set, each trial runs its own keygen and encryption. Otherwise
// keys are issued once per (authority, policy) and one ciphertext is made per
// (S, |A|); the per-trial assertions are the same.
RoundTripStats round_trips(const PairingContext& ctx, bool fresh, std::uint64_t seed) {
  const auto t0 = Clock::now();
  const GlobalParams gp(ctx, policy::AttributeUniverse::from_names({"A", "B", "C", "D", "E"}));
  const auto family = oracle::enumerate_policies(5, true);
  Rng rng = Rng::from_seed(seed);
  std::vector<scheme::AuthorityKeys> auths;
  for (int k = 0; k < 3; ++k) auths.push_back(scheme::authority_setup(gp, "authority-" + std::to_string(k), rng));
  std::vector<lsss::AccessMatrix> matrices;
  for (const auto& p : family) matrices.push_back(policy::to_lsss(p, ctx));

  auto policy_for = [&](std::size_t p, std::size_t k) { return (p + 389 * k) % family.size(); };

  std::map<std::pair<std::size_t, std::size_t>, scheme::UserKey> key_cache;
  auto key_for = [&](std::size_t k, std::size_t p) -> scheme::UserKey {
    if (fresh) return scheme::keygen(gp, auths[k].master, matrices[p], rng);
    auto it = key_cache.find({k, p});
    if (it == key_cache.end())
      it = key_cache.emplace(std::make_pair(k, p), scheme::keygen(gp, auths[k].master, matrices[p], rng)).first;
    return it->second;
  };

  RoundTripStats st;
  for (std::size_t na = 1; na <= 3; ++na) {
    std::vector<scheme::AuthorityPublicKey> pks;
    for (std::size_t k = 0; k < na; ++k) pks.push_back(auths[k].pub);
    for (std::uint64_t mask = 0; mask < 32; ++mask) {
      const AttributeSet s = oracle::subset_from_mask(mask);
      if (s.empty()) {
        // Nothing to decrypt with: encryption refuses outright.
        try {
          scheme::encrypt(gp, ctx.random_element(Role::kTarget, rng), s, pks, rng);
          st.fail(st.failures_correctness, "empty S accepted");
        } catch (const Error& e) {
          if (e.code() == Errc::kEmptyAttributeSet) {
            ++st.empty_rejected;
          } else {
            st.fail(st.failures_correctness, "empty S: wrong error");
          }
        }
        continue;
      }
      GroupElem m;
      scheme::Ciphertext ct;
      auto encrypt_once = [&] {
        m = ctx.random_element(Role::kTarget, rng);
        PairingCounter enc;
        ct = scheme::encrypt(gp, m, s, pks, rng);
        ++st.encryptions;
        if (enc.count() != 0) st.fail(st.failures_pairings, "encrypt paired");
        std::size_t stored = 1;
        for (const auto& row : ct.components) stored += row.size();
        if (ct.component_count() != na * s.size() + 1 || stored != na * s.size() + 1)
          st.fail(st.failures_size, "component count");
      };
      if (!fresh) encrypt_once();

      for (std::size_t p = 0; p < family.size(); ++p) {
        if (fresh) encrypt_once();
        ++st.trials;
        scheme::KeyRing ring;
        bool authorized = true;
        std::size_t rows_total = 0;
        std::size_t expected_rows = 0;
        for (std::size_t k = 0; k < na; ++k) {
          const std::size_t idx = policy_for(p, k);
          auto key = key_for(k, idx);
          const bool ok = policy::evaluate(family[idx], s);
          authorized = authorized && ok;
          rows_total += key.matrix.rows();
          if (ok) expected_rows += lsss::reconstruction_coefficients(key.matrix, s).rows.size();
          ring.emplace(auths[k].pub.authority_id, std::move(key));
        }
        PairingCounter dec;
        scheme::DecryptStats stats;
        if (authorized) {
          ++st.authorized;
          if (!(scheme::decrypt(gp, ct, ring, &stats) == m))
            st.fail(st.failures_correctness, "authorized decrypt returned a wrong message");
          std::size_t used = 0;
          for (auto r : stats.rows_used) used += r;
          if (dec.count() != used || used != expected_rows || used > rows_total || stats.pairings != used)
            st.fail(st.failures_pairings, "decrypt pairing count");
          st.max_pairings = std::max<std::uint64_t>(st.max_pairings, dec.count());
        } else {
          ++st.unauthorized;
          try {
            scheme::decrypt(gp, ct, ring);
            st.fail(st.failures_correctness, "unauthorized decrypt succeeded");
          } catch (const NotAuthorizedError&) {
            if (dec.count() != 0) st.fail(st.failures_pairings, "pairings before NotAuthorized");
          }
        }
      }
    }
  }
  st.elapsed = seconds_since(t0);
  return st;
}

Verdict criterion1(const RoundTripStats& st) {
  Verdict v;
  v.pass = st.failures_correctness == 0 && st.authorized > 0 && st.unauthorized > 0;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%zu trials (%zu authorized, %zu NotAuthorized), %zu empty-S encryptions rejected, %.1f s", st.trials,
                st.authorized, st.unauthorized, st.empty_rejected, st.elapsed);
  v.detail = buf;
  if (!st.first_failure.empty()) v.detail += "; first failure: " + st.first_failure;
  return v;
}

Verdict criterion3(const RoundTripStats& st) {
  Verdict v;
  v.pass = st.failures_pairings == 0;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%zu encryptions with 0 pairings; decrypt pairings = sum |I_k| <= sum l_k on all %zu authorized "
                "trials (max %llu); %zu mismatches",
                st.encryptions, st.authorized, static_cast<unsigned long long>(st.max_pairings),
                st.failures_pairings);
  v.detail = buf;
  return v;
}

Verdict criterion4(const RoundTripStats& st) {
  Verdict v;
  v.pass = st.failures_size == 0 && st.encryptions > 0;
  v.detail = std::to_string(st.encryptions) + " ciphertexts with |A|*|S|+1 components, " +
             std::to_string(st.failures_size) + " mismatches";
  return v;
}

// ------------------------------------------------------------ criterion 2

// Policies with thresholds and repeated attributes, up to three gate levels.
PolicyNode random_tree(std::size_t n, int depth, Rng& rng) {
  if (depth == 0 || rng.uniform(3) == 0) return PolicyNode::leaf(static_cast<policy::AttributeIndex>(rng.uniform(n)));
  const std::size_t fan = 2 + rng.uniform(3);
  std::vector<PolicyNode> kids;
  for (std::size_t i = 0; i < fan; ++i) kids.push_back(random_tree(n, depth - 1, rng));
  return PolicyNode::gate(1 + rng.uniform(fan), std::move(kids));
}

Verdict criterion2() {
  const auto t0 = Clock::now();
  const auto& ctx = PairingContext::debug();
  std::size_t pairs = 0, disagreements = 0, duality = 0;
  auto check = [&](const PolicyNode& p, std::size_t n) {
    const auto m = policy::to_lsss(p, ctx);
    for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
      const auto s = oracle::subset_from_mask(mask);
      ++pairs;
      const bool truth = policy::evaluate(p, s);
      if (lsss::is_authorized(m, s) != truth) ++disagreements;
      const bool plan = lsss::try_reconstruction_coefficients(m, s).has_value();
      const bool block = lsss::try_blocking_vector(m, s).has_value();
      if (plan == block || plan != truth) ++duality;
    }
  };
  std::size_t policies = 0;
  for (std::size_t n = 1; n <= 6; ++n) {
    for (const auto& p : oracle::enumerate_policies(n, true)) {
      check(p, n);
      ++policies;
    }
  }
  Rng rng = Rng::from_seed(2);
  for (int i = 0; i < 3000; ++i) {
    check(random_tree(6, 3, rng), 6);
    ++policies;
  }
  Verdict v;
  v.pass = disagreements == 0 && duality == 0;
  char buf[200];
  std::snprintf(buf, sizeof buf, "%zu policies, %zu (policy, S) pairs, %zu disagreements, %zu duality violations, %.1f s",
                policies, pairs, disagreements, duality, seconds_since(t0));
  v.detail = buf;
  return v;
}

// ------------------------------------------------------------ criterion 5

Verdict criterion5() {
  const auto t0 = Clock::now();
  const auto randomized = gamelab::run_randomized_audit({});
  const auto identities = gamelab::run_exhaustive_identity_audit();
  const auto mu = gamelab::run_exhaustive_mu_independence();
  const double dt = seconds_since(t0);
  Verdict v;
  v.pass = randomized.ok() && identities.ok() && mu.ok() && dt < 60;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "randomized p=2^61-1: %zu checks; exhaustive p=13: %zu identity checks, mu-independence %s; %.1f s",
                randomized.checks, identities.checks, mu.ok() ? "holds" : "FAILS", dt);
  v.detail = buf;
  for (const auto* r : {&randomized, &identities, &mu}) {
    if (!r->ok()) v.detail += "; " + r->failures.front();
  }
  return v;
}

// ------------------------------------------------------------ criteria 6, 7

Verdict criterion6() {
  auto coin = gamelab::make_coin_adversary();
  const auto c = gamelab::run_selective_game(*coin, 10000, 0x5eed);
  auto omni = gamelab::make_omniscient_adversary();
  const auto o = gamelab::run_selective_game(*omni, 1000, 0x0a11);
  Verdict v;
  v.pass = c.advantage <= 3 * c.sigma && o.success_rate >= 0.99;
  char buf[256];
  std::snprintf(buf, sizeof buf, "coin: advantage %.4f vs 3 sigma %.4f over %zu trials; omniscient: success %.3f", c.advantage,
                3 * c.sigma, c.trials, o.success_rate);
  v.detail = buf;
  return v;
}

Verdict criterion7() {
  Verdict v;
  for (const char* name : {"splice", "share-mix"}) {
    auto adv = gamelab::make_adversary(name);
    const auto r = gamelab::run_selective_game(*adv, 1000, 0x7a7);
    v.pass = v.pass && r.decryptions == 0 && r.aborted == 0;
    if (!v.detail.empty()) v.detail += "; ";
    v.detail += std::string(name) + ": " + std::to_string(r.decryptions) + "/" + std::to_string(r.trials) +
                " decryptions";
  }
  return v;
}

// ------------------------------------------------------------ criterion 8

Verdict envelope_robustness(const PairingContext& ctx, std::uint64_t seed) {
  const auto t0 = Clock::now();
  const GlobalParams gp(ctx, policy::AttributeUniverse::from_names({"A", "B", "C", "D"}));
  Rng rng = Rng::from_seed(seed);
  std::vector<scheme::AuthorityPublicKey> pks;
  scheme::KeyRing ring;
  const std::vector<PolicyNode> pols = {
      policy::parse_policy("A and B", gp.universe()),
      policy::parse_policy("2 of (A, C, D)", gp.universe()),
  };
  for (std::size_t k = 0; k < pols.size(); ++k) {
    const auto a = scheme::authority_setup(gp, "authority-" + std::to_string(k), rng);
    pks.push_back(a.pub);
    ring.emplace(a.pub.authority_id, scheme::keygen(gp, a.master, policy::to_lsss(pols[k], ctx), rng));
  }
  const AttributeSet s{0, 1, 2};
  Verdict v;
  std::size_t round_trips = 0;
  for (std::size_t size : {std::size_t{0}, std::size_t{1}, std::size_t{1024}, std::size_t{1} << 20}) {
    toolkit::Bytes payload(size);
    rng.fill(payload);
    const auto env = toolkit::seal(gp, payload, s, pks, rng);
    const auto info = toolkit::inspect(env);
    const bool ok = toolkit::open(gp, env, ring) == payload && info.body_bytes == size + toolkit::kAeadTagSize &&
                    info.group_elements == pks.size() * s.size() + 1;
    round_trips += ok ? 1 : 0;
    v.pass = v.pass && ok;
  }
  toolkit::Bytes payload(1024);
  rng.fill(payload);
  const auto env = toolkit::seal(gp, payload, s, pks, rng);
  std::size_t detected = 0, header_hits = 0;
  const std::size_t header = toolkit::inspect(env).header_bytes;
  for (int trial = 0; trial < 1000; ++trial) {
    auto t = env;
    const std::size_t bit = rng.uniform(t.size() * 8);
    t[bit / 8] ^= static_cast<std::uint8_t>(1U << (bit % 8));
    header_hits += bit / 8 < header ? 1 : 0;
    try {
      detected += toolkit::open(gp, t, ring) != payload ? 1 : 0;
    } catch (const Error&) {
      ++detected;
    }
  }
  v.pass = v.pass && detected == 1000;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "%zu/4 payload sizes round-trip; %zu/1000 single-bit corruptions detected (%zu in header); %.1f s",
                round_trips, detected, header_hits, seconds_since(t0));
  v.detail = buf;
  return v;
}

// ------------------------------------------------------------ criterion 9

Verdict criterion9() {
  const auto& curve = PairingContext::curve();
  const auto st = round_trips(curve, false, 9);
  const Verdict c1 = criterion1(st), c3 = criterion3(st), c4 = criterion4(st);
  const Verdict c8 = envelope_robustness(curve, 8);
  Verdict v;
  v.pass = c1.pass && c3.pass && c4.pass && c8.pass;
  auto tag = [](const Verdict& x) { return x.pass ? "pass" : "FAIL"; };
  v.detail = std::string("curve:bls12-381; 1 ") + tag(c1) + " (" + c1.detail + "); 3 " + tag(c3) + "; 4 " + tag(c4) +
             "; 8 " + tag(c8) + " (" + c8.detail + ")";
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));
  auto want = [&](int n) { return wanted.empty() || wanted.contains(n); };

  int failures = 0;
  auto report = [&](int n, const char* title, const Verdict& v) {
    std::printf("[%s] %d %s: %s\n", v.pass ? "PASS" : "FAIL", n, title, v.detail.c_str());
    std::fflush(stdout);
    failures += v.pass ? 0 : 1;
  };

  try {
    if (want(1) || want(3) || want(4)) {
      const auto st = round_trips(PairingContext::debug(), true, 1);
      if (want(1)) report(1, "round-trip correctness", criterion1(st));
      if (want(2)) report(2, "LSSS oracle equivalence", criterion2());
      if (want(3)) report(3, "pairing instrumentation", criterion3(st));
      if (want(4)) report(4, "ciphertext size", criterion4(st));
    } else if (want(2)) {
      report(2, "LSSS oracle equivalence", criterion2());
    }
    if (want(5)) report(5, "simulator audit", criterion5());
    if (want(6)) report(6, "statistical game sanity", criterion6());
    if (want(7)) report(7, "attack-resistance spot checks", criterion7());
    if (want(8)) report(8, "envelope robustness", envelope_robustness(PairingContext::debug(), 8));
    if (want(9)) report(9, "backend parity", criterion9());
  } catch (const std::exception& e) {
    std::printf("[FAIL] acceptance aborted: %s\n", e.what());
    return 2;
  }
  return failures == 0 ? 0 : 1;
}

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

#include <map>
#include <tuple>

#include "gamelab/internal.hpp"
#include "makpabe/errors.hpp"
#include "makpabe/gamelab.hpp"

namespace makpabe::gamelab {

using groups::Role;
using policy::AttributeIndex;
using policy::AttributeSet;
using policy::PolicyNode;

namespace detail {

PolicyNode random_policy(std::size_t universe_size, std::size_t max_depth, Rng& rng) {
  if (max_depth == 0 || rng.uniform(4) == 0)
    return PolicyNode::leaf(static_cast<AttributeIndex>(rng.uniform(universe_size)));
  const std::size_t fan = 2 + rng.uniform(2);
  std::vector<PolicyNode> kids;
  for (std::size_t i = 0; i < fan; ++i) kids.push_back(random_policy(universe_size, max_depth - 1, rng));
  const std::size_t t = 1 + rng.uniform(fan);
  return PolicyNode::gate(t, std::move(kids));
}

PolicyNode any_of_set(const AttributeSet& attrs) {
  if (attrs.size() == 1) return PolicyNode::leaf(*attrs.begin());
  std::vector<PolicyNode> kids;
  for (auto i : attrs) kids.push_back(PolicyNode::leaf(i));
  return PolicyNode::any_of(std::move(kids));
}

PolicyNode random_policy_with(std::size_t universe_size, const AttributeSet& attrs, bool authorized, Rng& rng) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    PolicyNode p = random_policy(universe_size, 2, rng);
    if (policy::evaluate(p, attrs) == authorized) return p;
  }
  if (authorized) return any_of_set(attrs);
  for (AttributeIndex i = 0; i < universe_size; ++i) {
    if (!attrs.contains(i)) return PolicyNode::leaf(i);
  }
  throw Error(Errc::kProtocolViolation, "every policy is satisfied by the full universe");
}

AttributeSet random_nonempty_subset(std::size_t universe_size, Rng& rng) {
  AttributeSet s;
  while (s.empty()) {
    for (AttributeIndex i = 0; i < universe_size; ++i) {
      if (rng.coin()) s.insert(i);
    }
  }
  return s;
}

}  // namespace detail

void AuditReport::expect(bool condition, std::string what) {
  ++checks;
  if (!condition && failures.size() < 32) failures.push_back(std::move(what));
}

void AuditReport::merge(const AuditReport& other) {
  checks += other.checks;
  for (const auto& f : other.failures) {
    if (failures.size() < 32) failures.push_back(f);
  }
}

Scalar implicit_alpha(const SimulatorState& state, const BDHWitness& w, std::string_view authority) {
  state.position(authority);
  if (state.is_honest(authority)) return w.a * w.b + w.b * state.r_sum();
  return -(state.r.find(authority)->second * w.b);
}

Scalar implicit_z(const SimulatorState& state, const BDHWitness& w, std::string_view authority,
                  AttributeIndex attribute) {
  state.position(authority);
  const Scalar& zp = state.zprime.find(authority)->second.at(attribute);
  return state.target.contains(attribute) ? zp : w.b * zp;
}

ScalarVector implicit_share_vector(const SimulatorState& state, const BDHWitness& w, std::string_view authority,
                                   const SimulatedKey& key) {
  ScalarVector u;
  if (state.is_honest(authority)) {
    if (!key.y) throw Error(Errc::kProtocolViolation, "honest key without a blocking vector");
    const Scalar shift = w.a + state.r_sum() - key.v.at(0);
    for (std::size_t j = 0; j < key.v.size(); ++j) u.push_back(w.b * (key.v[j] + shift * key.y->at(j)));
  } else {
    for (const auto& t : key.v) u.push_back(w.b * t);
  }
  return u;
}

void audit_setup(const SimulatorSetup& setup, const BDHWitness& w, AuditReport& report) {
  const SimulatorState& st = setup.state;
  const auto& ctx = st.gp.context();
  for (const auto& pk : setup.public_keys) {
    const Scalar alpha = implicit_alpha(st, w, pk.authority_id);
    report.expect(ctx.debug_log(pk.e_gg_alpha) == alpha,
                  "e(g,g)^alpha exponent for " + pk.authority_id + " is " + ctx.debug_log(pk.e_gg_alpha).to_string() +
                      ", implicit alpha " + alpha.to_string());
    for (AttributeIndex i = 0; i < pk.z_pub.size(); ++i) {
      report.expect(ctx.debug_log(pk.z_pub[i]) == implicit_z(st, w, pk.authority_id, i),
                    "published z for " + pk.authority_id + " attribute " + st.gp.universe().name(i));
    }
  }
}

void audit_key(const SimulatorState& state, const BDHWitness& w, std::string_view authority, const SimulatedKey& key,
               AuditReport& report) {
  const auto& ctx = state.gp.context();
  const auto& am = key.key.matrix;
  const std::string who(authority);
  const ScalarVector u = implicit_share_vector(state, w, authority, key);
  report.expect(u.at(0) == implicit_alpha(state, w, authority), "u1 != alpha for " + who);
  if (state.is_honest(authority)) {
    report.expect(key.y->at(0) == ctx.scalar(1), "blocking vector has y1 != 1");
    for (std::size_t i = 0; i < am.rows(); ++i) {
      if (state.target.contains(am.label(i)))
        report.expect(am.row_dot(i, *key.y).is_zero(), "blocking vector not orthogonal to a target row");
    }
  } else {
    const Scalar expected = -state.r.find(authority)->second;
    report.expect(key.v.at(0) == expected, "t1 != -r_k for " + who);
  }
  for (std::size_t i = 0; i < am.rows(); ++i) {
    const Scalar lambda = am.row_dot(i, u);
    const Scalar want = lambda * implicit_z(state, w, authority, am.label(i)).inverse();
    report.expect(ctx.debug_log(key.key.components[i]) == want,
                  "K_i != g^(lambda_i/z) for " + who + " row " + std::to_string(i));
  }
}

void audit_real_challenge(const SimulatorState& state, const BDHWitness& w, const scheme::Ciphertext& ct,
                          const GroupElem& expected, AuditReport& report) {
  const auto& gp = state.gp;
  const auto& ctx = gp.context();
  const auto am = policy::to_lsss(detail::any_of_set(state.target), ctx);
  scheme::KeyRing ring;
  for (const auto& id : state.authority_ids) {
    ScalarVector z;
    for (AttributeIndex i = 0; i < gp.universe().size(); ++i) z.push_back(implicit_z(state, w, id, i));
    const auto keys = scheme::authority_from_secrets(gp, id, implicit_alpha(state, w, id), std::move(z));
    ScalarVector v{keys.master.alpha};
    for (std::size_t j = 1; j < am.cols(); ++j) v.push_back(ctx.scalar(static_cast<std::int64_t>(j) + 1));
    ring.emplace(id, scheme::keygen_with_vector(gp, keys.master, am, std::move(v)));
    for (std::size_t pos = 0; pos < ct.authority_ids.size(); ++pos) {
      if (ct.authority_ids[pos] != id) continue;
      std::size_t j = 0;
      for (auto i : ct.attributes) {
        report.expect(ctx.debug_log(ct.components[pos][j++]) == w.s * implicit_z(state, w, id, i),
                      "challenge component is not g^(s z) for " + id);
      }
    }
  }
  report.expect(scheme::decrypt(gp, ct, ring) == expected, "real challenge does not decrypt to m_mu");
}

namespace {

std::vector<std::string> universe_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::string(1, static_cast<char>('A' + i)));
  return names;
}

std::vector<std::string> authority_names(std::size_t n) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("auth" + std::to_string(i));
  return ids;
}

// All policies over three attributes with at most two gate levels that the
// audits draw from.
std::vector<PolicyNode> small_family() {
  using P = PolicyNode;
  std::vector<P> f;
  for (AttributeIndex i = 0; i < 3; ++i) f.push_back(P::leaf(i));
  for (AttributeIndex i = 0; i < 3; ++i) {
    for (AttributeIndex j = i + 1; j < 3; ++j) {
      f.push_back(P::all_of({P::leaf(i), P::leaf(j)}));
      f.push_back(P::any_of({P::leaf(i), P::leaf(j)}));
    }
  }
  f.push_back(P::gate(2, {P::leaf(0), P::leaf(1), P::leaf(2)}));
  f.push_back(P::all_of({P::leaf(0), P::leaf(1), P::leaf(2)}));
  f.push_back(P::any_of({P::leaf(0), P::leaf(1), P::leaf(2)}));
  for (AttributeIndex i = 0; i < 3; ++i) {
    const AttributeIndex j = (i + 1) % 3, k = (i + 2) % 3;
    f.push_back(P::all_of({P::leaf(i), P::any_of({P::leaf(j), P::leaf(k)})}));
    f.push_back(P::any_of({P::leaf(i), P::all_of({P::leaf(j), P::leaf(k)})}));
  }
  return f;
}

void audit_instance(const GlobalParams& gp, const BDHChallenge& bdh, const AttributeSet& target,
                    const std::vector<std::string>& ids, const std::string& honest,
                    const std::vector<PolicyNode>& honest_policies, const std::vector<PolicyNode>& other_policies,
                    Rng& rng, AuditReport& report) {
  const auto& ctx = gp.context();
  const SimulatorSetup setup = simulator_init(gp, bdh.instance, target, ids, honest, rng);
  audit_setup(setup, bdh.hidden, report);
  for (const auto& id : ids) {
    const auto& family = setup.state.is_honest(id) ? honest_policies : other_policies;
    for (const auto& p : family) {
      const auto key = simulator_keygen(setup.state, id, policy::to_lsss(p, ctx), rng);
      audit_key(setup.state, bdh.hidden, id, key, report);
    }
  }
  const GroupElem m0 = ctx.random_element(Role::kTarget, rng);
  const GroupElem m1 = ctx.random_element(Role::kTarget, rng);
  const bool mu = rng.coin();
  audit_real_challenge(setup.state, bdh.hidden, simulator_challenge(setup.state, m0, m1, mu), mu ? m1 : m0, report);
}

}  // namespace

AuditReport run_randomized_audit(const AuditOptions& options) {
  const auto& ctx = PairingContext::debug(options.prime);
  const GlobalParams gp(ctx, policy::AttributeUniverse::from_names(universe_names(options.universe_size)));
  AuditReport report;
  for (std::size_t inst = 0; inst < options.instances; ++inst) {
    Rng rng = Rng::from_seed(options.seed ^ inst);
    const BDHChallenge bdh = bdh_challenge(ctx, rng, true);
    const AttributeSet target = detail::random_nonempty_subset(options.universe_size, rng);
    const auto ids = authority_names(1 + rng.uniform(3));
    const std::string honest = ids[rng.uniform(ids.size())];
    std::vector<PolicyNode> honest_policies, other_policies;
    for (int q = 0; q < 3; ++q) {
      if (target.size() < options.universe_size)
        honest_policies.push_back(detail::random_policy_with(options.universe_size, target, false, rng));
      other_policies.push_back(detail::random_policy(options.universe_size, 2, rng));
      other_policies.push_back(detail::random_policy_with(options.universe_size, target, true, rng));
    }
    audit_instance(gp, bdh, target, ids, honest, honest_policies, other_policies, rng, report);
  }
  return report;
}

AuditReport run_exhaustive_identity_audit() {
  const auto& ctx = PairingContext::debug(13);
  const GlobalParams gp(ctx, policy::AttributeUniverse::from_names(universe_names(3)));
  const auto family = small_family();
  const std::vector<std::string> ids = {"auth0", "auth1"};
  AuditReport report;
  std::uint64_t counter = 0;
  for (std::uint64_t mask = 1; mask < 8; ++mask) {
    AttributeSet target;
    for (AttributeIndex i = 0; i < 3; ++i) {
      if ((mask >> i) & 1U) target.insert(i);
    }
    std::vector<PolicyNode> unauthorized;
    for (const auto& p : family) {
      if (!policy::evaluate(p, target)) unauthorized.push_back(p);
    }
    for (std::int64_t a = 0; a < 13; ++a) {
      for (std::int64_t b = 1; b < 13; ++b) {
        Rng rng = Rng::from_seed(0x13ULL ^ (counter++ << 8));
        const Scalar s = ctx.random_scalar(rng);
        const BDHChallenge bdh = bdh_challenge_from(ctx, ctx.scalar(a), ctx.scalar(b), s, true, ctx.scalar(0));
        report.expect(ctx.debug_log(bdh.instance.t) == ctx.scalar(a * b) * s, "log T != abs");
        audit_instance(gp, bdh, target, ids, ids[counter % 2], unauthorized, family, rng, report);
      }
    }
  }
  return report;
}

AuditReport run_exhaustive_mu_independence() {
  const auto& ctx = PairingContext::debug(13);
  const GlobalParams gp(ctx, policy::AttributeUniverse::from_names(universe_names(2)));
  const AttributeSet target{0};
  const std::vector<std::string> ids = {"auth0", "auth1"};
  const GroupElem& gt = ctx.generator(Role::kTarget);
  const GroupElem m0 = gt.pow(ctx.scalar(2));
  const GroupElem m1 = gt.pow(ctx.scalar(7));

  using Tuple = std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>;
  auto tally = [&](bool real, bool mu) {
    std::map<Tuple, std::size_t> hist;
    const Scalar a = ctx.scalar(2), b = ctx.scalar(3);
    for (std::int64_t s = 0; s < 13; ++s) {
      for (std::int64_t t = 0; t < 13; ++t) {
        if (real && t > 0) break;  // T is determined by (a, b, s)
        const BDHChallenge bdh = bdh_challenge_from(ctx, a, b, ctx.scalar(s), real, ctx.scalar(t));
        for (std::int64_t z0 = 1; z0 < 13; ++z0) {
          for (std::int64_t z1 = 1; z1 < 13; ++z1) {
            std::map<std::string, Scalar, std::less<>> r{{"auth1", ctx.scalar(4)}};
            std::map<std::string, ScalarVector, std::less<>> zp{{"auth0", {ctx.scalar(z0), ctx.scalar(1)}},
                                                                {"auth1", {ctx.scalar(z1), ctx.scalar(1)}}};
            const auto setup = simulator_init_with(gp, bdh.instance, target, ids, "auth0", r, zp);
            const auto ct = simulator_challenge(setup.state, m0, m1, mu);
            ++hist[{ctx.debug_log(ct.c_prime).to_u64(), ctx.debug_log(ct.components[0][0]).to_u64(),
                    ctx.debug_log(ct.components[1][0]).to_u64()}];
          }
        }
      }
    }
    return hist;
  };

  AuditReport report;
  const auto h0 = tally(false, false);
  const auto h1 = tally(false, true);
  std::size_t total = 0;
  for (const auto& [k, n] : h0) total += n;
  report.expect(total == 13 * 13 * 12 * 12, "enumeration incomplete");
  report.expect(h0 == h1, "random-T challenge distribution depends on mu");
  // Control: with a real T the coin is visible, so the tallies must differ.
  report.expect(tally(true, false) != tally(true, true), "real-T control failed to separate the coins");
  return report;
}

}  // namespace makpabe::gamelab

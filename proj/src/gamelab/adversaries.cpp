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

#include "gamelab/internal.hpp"
#include "makpabe/errors.hpp"
#include "makpabe/gamelab.hpp"

namespace makpabe::gamelab {

using groups::Role;
using policy::AttributeIndex;
using policy::AttributeSet;
using policy::PolicyNode;

std::pair<GroupElem, GroupElem> Adversary::choose_messages(const GlobalParams& gp, Rng& rng) {
  const auto& ctx = gp.context();
  GroupElem m0 = ctx.random_element(Role::kTarget, rng);
  GroupElem m1 = ctx.random_element(Role::kTarget, rng);
  while (m1 == m0) m1 = ctx.random_element(Role::kTarget, rng);
  return {m0, m1};
}

namespace {

std::vector<std::string> pick_authorities(Rng& rng) {
  std::vector<std::string> ids;
  const std::size_t n = 1 + rng.uniform(3);
  for (std::size_t i = 0; i < n; ++i) ids.push_back("auth" + std::to_string(i));
  return ids;
}

Commitment commit_to(AttributeSet target, Rng& rng) {
  Commitment c;
  c.target = std::move(target);
  c.authority_ids = pick_authorities(rng);
  c.honest = c.authority_ids[rng.uniform(c.authority_ids.size())];
  return c;
}

AttributeSet proper_subset(std::size_t n, Rng& rng) {
  for (;;) {
    AttributeSet s = detail::random_nonempty_subset(n, rng);
    if (s.size() < n) return s;
  }
}

Guess guess_from_plaintext(const ChallengeView& view, const GroupElem& candidate, Rng& rng) {
  Guess g;
  g.plaintext = candidate;
  if (candidate == view.m1) {
    g.mu = true;
  } else if (candidate == view.m0) {
    g.mu = false;
  } else {
    g.mu = rng.coin();
  }
  return g;
}

// Authorized keys from every corrupted authority.
scheme::KeyRing corrupted_keys(const Commitment& c, KeyOracle& oracle) {
  scheme::KeyRing ring;
  for (const auto& id : c.authority_ids) {
    if (id != c.honest) ring.emplace(id, oracle.query(id, detail::any_of_set(c.target)));
  }
  return ring;
}

class CoinAdversary : public Adversary {
 public:
  std::string name() const override { return "coin"; }
  Commitment commit(const GlobalParams& gp, Rng& rng) override {
    return commit_to(proper_subset(gp.universe().size(), rng), rng);
  }
  void phase1(const PublicView& view, KeyOracle& oracle, Rng& rng) override {
    const std::size_t n = view.gp.universe().size();
    for (const auto& id : view.commitment.authority_ids) {
      const bool honest = id == view.commitment.honest;
      oracle.query(id, honest ? detail::random_policy_with(n, view.commitment.target, false, rng)
                              : detail::random_policy(n, 2, rng));
    }
  }
  Guess guess(const ChallengeView&, KeyOracle&, Rng& rng) override { return Guess{rng.coin(), std::nullopt}; }
};

class OmniscientAdversary : public CoinAdversary {
 public:
  std::string name() const override { return "omniscient"; }
  Guess guess(const ChallengeView& view, KeyOracle&, Rng& rng) override {
    if (!view.hidden.real) return Guess{rng.coin(), std::nullopt};
    const auto& w = view.hidden;
    const GroupElem mask = view.gp.context().generator(Role::kTarget).pow(w.a * w.b * w.s);
    return guess_from_plaintext(view, view.ciphertext.c_prime * mask.inverse(), rng);
  }
};

class ReplayAdversary : public CoinAdversary {
 public:
  std::string name() const override { return "replay"; }
  void phase1(const PublicView& view, KeyOracle& oracle, Rng& rng) override {
    const auto& c = view.commitment;
    ring_ = corrupted_keys(c, oracle);
    ring_.insert_or_assign(
        c.honest, oracle.query(c.honest, detail::random_policy_with(view.gp.universe().size(), c.target, false, rng)));
  }
  Guess guess(const ChallengeView& view, KeyOracle&, Rng& rng) override {
    try {
      return guess_from_plaintext(view, scheme::decrypt(view.gp, view.ciphertext, ring_), rng);
    } catch (const NotAuthorizedError&) {
      return Guess{rng.coin(), std::nullopt};
    }
  }

 private:
  scheme::KeyRing ring_;
};

// Builds a forged honest-authority key and runs the ordinary decryption with
// it next to genuinely authorized corrupted keys.
class ForgingAdversary : public Adversary {
 public:
  Guess guess(const ChallengeView& view, KeyOracle&, Rng& rng) override {
    scheme::KeyRing ring = corrupted_;
    ring.insert_or_assign(forged_->authority_id, *forged_);
    try {
      return guess_from_plaintext(view, scheme::decrypt(view.gp, view.ciphertext, ring), rng);
    } catch (const NotAuthorizedError&) {
      return Guess{rng.coin(), std::nullopt};
    }
  }

 protected:
  scheme::KeyRing corrupted_;
  std::optional<scheme::UserKey> forged_;
};

class SpliceAdversary : public ForgingAdversary {
 public:
  std::string name() const override { return "splice"; }
  Commitment commit(const GlobalParams& gp, Rng& rng) override {
    if (gp.universe().size() < 3) throw Error(Errc::kProtocolViolation, "splice needs three attributes");
    return commit_to({0, 2}, rng);
  }
  void phase1(const PublicView& view, KeyOracle& oracle, Rng&) override {
    const auto& c = view.commitment;
    const auto& ctx = view.gp.context();
    corrupted_ = corrupted_keys(c, oracle);
    // "A and B" twice; neither key alone reaches {A, C}.
    const PolicyNode p = PolicyNode::all_of({PolicyNode::leaf(0), PolicyNode::leaf(1)});
    const auto k1 = oracle.query(c.honest, p);
    const auto k2 = oracle.query(c.honest, p);
    // The coefficients for the full set {A, B}, with B's row taken from the
    // second key and pointed at C.
    const auto& m = k1.matrix;
    std::vector<ScalarVector> rows{ScalarVector(m.row(0).begin(), m.row(0).end()),
                                   ScalarVector(m.row(1).begin(), m.row(1).end())};
    lsss::AccessMatrix spliced(ctx, m.cols(), std::move(rows), {0, 2});
    forged_ = scheme::UserKey{c.honest, std::move(spliced), {k1.components[0], k2.components[1]}};
  }
};

class ShareMixAdversary : public ForgingAdversary {
 public:
  std::string name() const override { return "share-mix"; }
  Commitment commit(const GlobalParams& gp, Rng& rng) override {
    if (gp.universe().size() < 4) throw Error(Errc::kProtocolViolation, "share-mix needs four attributes");
    return commit_to({0, 3}, rng);
  }
  void phase1(const PublicView& view, KeyOracle& oracle, Rng&) override {
    const auto& c = view.commitment;
    const auto& ctx = view.gp.context();
    corrupted_ = corrupted_keys(c, oracle);
    const auto ab = oracle.query(c.honest, PolicyNode::all_of({PolicyNode::leaf(0), PolicyNode::leaf(1)}));
    const auto cd = oracle.query(c.honest, PolicyNode::all_of({PolicyNode::leaf(2), PolicyNode::leaf(3)}));
    // Stack both matrices; rows A and D then span e1.
    const std::size_t cols = std::max(ab.matrix.cols(), cd.matrix.cols());
    std::vector<ScalarVector> rows;
    std::vector<AttributeIndex> rho;
    std::vector<GroupElem> comps;
    for (const auto* k : {&ab, &cd}) {
      for (std::size_t i = 0; i < k->matrix.rows(); ++i) {
        ScalarVector row(k->matrix.row(i).begin(), k->matrix.row(i).end());
        row.resize(cols, ctx.scalar(0));
        rows.push_back(std::move(row));
        rho.push_back(k->matrix.label(i));
        comps.push_back(k->components[i]);
      }
    }
    lsss::AccessMatrix stacked(ctx, cols, std::move(rows), std::move(rho));
    forged_ = scheme::UserKey{c.honest, std::move(stacked), std::move(comps)};
  }
};

class CheatingAdversary : public CoinAdversary {
 public:
  std::string name() const override { return "cheat"; }
  void phase1(const PublicView& view, KeyOracle& oracle, Rng&) override {
    oracle.query(view.commitment.honest, detail::any_of_set(view.commitment.target));
  }
};

}  // namespace

std::unique_ptr<Adversary> make_coin_adversary() { return std::make_unique<CoinAdversary>(); }
std::unique_ptr<Adversary> make_omniscient_adversary() { return std::make_unique<OmniscientAdversary>(); }
std::unique_ptr<Adversary> make_splice_adversary() { return std::make_unique<SpliceAdversary>(); }
std::unique_ptr<Adversary> make_share_mix_adversary() { return std::make_unique<ShareMixAdversary>(); }
std::unique_ptr<Adversary> make_replay_adversary() { return std::make_unique<ReplayAdversary>(); }
std::unique_ptr<Adversary> make_cheating_adversary() { return std::make_unique<CheatingAdversary>(); }

std::vector<std::string> adversary_names() { return {"coin", "omniscient", "splice", "share-mix", "replay", "cheat"}; }

std::unique_ptr<Adversary> make_adversary(std::string_view name) {
  if (name == "coin") return make_coin_adversary();
  if (name == "omniscient") return make_omniscient_adversary();
  if (name == "splice") return make_splice_adversary();
  if (name == "share-mix") return make_share_mix_adversary();
  if (name == "replay") return make_replay_adversary();
  if (name == "cheat") return make_cheating_adversary();
  throw Error(Errc::kProtocolViolation, "unknown adversary '" + std::string(name) + "'");
}

}  // namespace makpabe::gamelab

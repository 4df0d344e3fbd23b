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

#include <cmath>

#include <json.hpp>

#include "makpabe/errors.hpp"
#include "makpabe/gamelab.hpp"

namespace makpabe::gamelab {

using nlohmann::json;

scheme::UserKey KeyOracle::query(std::string_view authority, const lsss::AccessMatrix& am) {
  QueryRecord rec;
  rec.authority = std::string(authority);
  rec.rows = am.rows();
  for (auto label : am.rho()) rec.rho.push_back(state_->gp.universe().name(label));
  try {
    auto key = simulator_keygen(*state_, authority, am, *rng_);
    log_->push_back(std::move(rec));
    return std::move(key.key);
  } catch (const Error& e) {
    if (e.code() == Errc::kHonestAuthorityRefusal) {
      rec.refused = true;
      log_->push_back(std::move(rec));
    }
    throw;
  }
}

scheme::UserKey KeyOracle::query(std::string_view authority, const policy::PolicyNode& policy) {
  return query(authority, policy::to_lsss(policy, state_->gp.context()));
}

namespace {

struct Trial {
  bool won = false;
  bool aborted = false;
  bool decrypted = false;
  json record;
};

Trial play(Adversary& adv, const GlobalParams& gp, std::uint64_t seed, TMode mode) {
  Rng rng = Rng::from_seed(seed);
  const auto& ctx = gp.context();
  Trial out;
  json& rec = out.record;
  rec["seed"] = seed;
  std::vector<QueryRecord> queries;
  try {
    const Commitment c = adv.commit(gp, rng);
    rec["target"] = gp.universe().names_of(c.target);
    rec["authorities"] = c.authority_ids;
    rec["honest"] = c.honest;

    const bool real = mode == TMode::kReal;
    const BDHChallenge bdh = bdh_challenge(ctx, rng, real);
    rec["real_t"] = real;
    const SimulatorSetup setup = simulator_init(gp, bdh.instance, c.target, c.authority_ids, c.honest, rng);
    KeyOracle oracle(setup.state, rng, queries);
    adv.phase1(PublicView{gp, c, setup.public_keys}, oracle, rng);

    const auto [m0, m1] = adv.choose_messages(gp, rng);
    const bool mu = rng.coin();
    rec["mu"] = mu ? 1 : 0;
    const scheme::Ciphertext ct = simulator_challenge(setup.state, m0, m1, mu);
    const Guess g = adv.guess(ChallengeView{gp, c, setup.public_keys, ct, m0, m1, bdh.hidden}, oracle, rng);
    rec["guess"] = g.mu ? 1 : 0;
    out.won = g.mu == mu;
    out.decrypted = g.plaintext.has_value() && *g.plaintext == (mu ? m1 : m0);
    rec["decrypted"] = out.decrypted;
    rec["outcome"] = out.won ? "win" : "loss";
  } catch (const Error& e) {
    // Any rule break by the adversary ends the trial as a loss.
    out.aborted = true;
    out.won = false;
    rec["outcome"] = "aborted";
    rec["error"] = std::string(errc_name(e.code()));
  }
  json q = json::array();
  for (const auto& r : queries)
    q.push_back({{"authority", r.authority}, {"rho", r.rho}, {"rows", r.rows}, {"refused", r.refused}});
  rec["queries"] = std::move(q);
  return out;
}

}  // namespace

GameResult run_selective_game(Adversary& adversary, std::size_t trials, std::uint64_t master_seed,
                              const GameOptions& options) {
  const auto& ctx = PairingContext::debug(options.prime);
  const GlobalParams gp(ctx, policy::AttributeUniverse::from_names(options.universe));
  GameResult res;
  res.trials = trials;
  for (std::size_t i = 0; i < trials; ++i) {
    Trial t = play(adversary, gp, master_seed ^ static_cast<std::uint64_t>(i), options.t_mode);
    res.wins += t.won ? 1 : 0;
    res.aborted += t.aborted ? 1 : 0;
    res.decryptions += t.decrypted ? 1 : 0;
    if (options.transcript != nullptr) {
      t.record["trial"] = i;
      t.record["adversary"] = adversary.name();
      *options.transcript << t.record.dump() << '\n';
    }
  }
  if (trials == 0) return res;
  const double n = static_cast<double>(trials);
  res.success_rate = static_cast<double>(res.wins) / n;
  res.advantage = std::abs(res.success_rate - 0.5);
  res.sigma = 0.5 / std::sqrt(n);
  const double z = 1.959963984540054;
  const double p = res.success_rate;
  const double denom = 1 + z * z / n;
  const double centre = (p + z * z / (2 * n)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / denom;
  res.ci_low = centre - half;
  res.ci_high = centre + half;
  return res;
}

}  // namespace makpabe::gamelab

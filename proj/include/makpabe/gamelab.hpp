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

#ifndef MAKPABE_GAMELAB_HPP
#define MAKPABE_GAMELAB_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "makpabe/scheme.hpp"

namespace makpabe::gamelab {

using groups::GroupElem;
using groups::PairingContext;
using groups::Scalar;
using groups::ScalarVector;
using scheme::GlobalParams;

// ---------------------------------------------------------------- BDH tuple

// What a distinguisher (and the simulator) is allowed to see. Debug backend
// only, so KEY and CIPHER copies are the same group.
struct BDHInstance {
  GroupElem a_key, a_cipher;  // g^a
  GroupElem b_key, b_cipher;  // g^b
  GroupElem s_cipher;         // g^s
  GroupElem t;                // e(g,g)^{abs} or e(g,g)^z
};

// Hidden exponents, readable by the auditor and the omniscient adversary.
struct BDHWitness {
  Scalar a, b, s, z;
  bool real = false;
};

struct BDHChallenge {
  BDHInstance instance;
  BDHWitness hidden;
};

// b is sampled nonzero so that the implicit z = b z' stays invertible.
BDHChallenge bdh_challenge(const PairingContext& ctx, Rng& rng, bool real);
// z is ignored when real is set.
BDHChallenge bdh_challenge_from(const PairingContext& ctx, const Scalar& a, const Scalar& b, const Scalar& s,
                                bool real, const Scalar& z);

// ---------------------------------------------------------------- simulator

struct SimulatorState {
  GlobalParams gp;
  policy::AttributeSet target;
  std::vector<std::string> authority_ids;
  std::string honest;
  std::map<std::string, Scalar, std::less<>> r;             // every k except the honest one
  std::map<std::string, ScalarVector, std::less<>> zprime;  // per authority, indexed by attribute
  BDHInstance challenge;

  Scalar r_sum() const;
  bool is_honest(std::string_view authority) const { return authority == honest; }
  std::size_t position(std::string_view authority) const;  // throws ProtocolViolation
};

struct SimulatorSetup {
  SimulatorState state;
  std::vector<scheme::AuthorityPublicKey> public_keys;  // authority_ids order
};

SimulatorSetup simulator_init(const GlobalParams& gp, const BDHInstance& challenge,
                              const policy::AttributeSet& target, std::vector<std::string> authority_ids,
                              std::string honest, Rng& rng);
// Same, with r and z' supplied instead of sampled.
SimulatorSetup simulator_init_with(const GlobalParams& gp, const BDHInstance& challenge,
                                   const policy::AttributeSet& target, std::vector<std::string> authority_ids,
                                   std::string honest, std::map<std::string, Scalar, std::less<>> r,
                                   std::map<std::string, ScalarVector, std::less<>> zprime);

// The key plus the scalars the simulator chose, so an auditor can rebuild the
// implicit share vector. For the honest authority v is the random vector and
// y the blocking vector; otherwise v holds t with t1 = -r_k.
struct SimulatedKey {
  scheme::UserKey key;
  ScalarVector v;
  std::optional<ScalarVector> y;
};

// HonestAuthorityRefusal when the honest authority is asked for a matrix
// that authorizes the target set.
SimulatedKey simulator_keygen(const SimulatorState& state, std::string_view authority,
                              const lsss::AccessMatrix& am, Rng& rng);

scheme::Ciphertext simulator_challenge(const SimulatorState& state, const GroupElem& m0, const GroupElem& m1,
                                       bool mu);

// Payload mode: the ABE part hides a fresh TARGET element, which keys an AEAD
// over the chosen payload. Unequal lengths raise LengthMismatch.
struct PayloadChallenge {
  scheme::Ciphertext abe;
  std::vector<std::uint8_t> body;
};
PayloadChallenge simulator_challenge_payload(const SimulatorState& state, std::span<const std::uint8_t> m0,
                                             std::span<const std::uint8_t> m1, bool mu, Rng& rng);
// Inverse of the payload mode given the hidden TARGET element.
std::vector<std::uint8_t> open_payload(const GroupElem& key_element, std::span<const std::uint8_t> body);

// ---------------------------------------------------------------- audit

struct AuditReport {
  std::size_t checks = 0;
  std::vector<std::string> failures;

  bool ok() const noexcept { return failures.empty(); }
  void expect(bool condition, std::string what);
  void merge(const AuditReport& other);
};

Scalar implicit_alpha(const SimulatorState& state, const BDHWitness& w, std::string_view authority);
Scalar implicit_z(const SimulatorState& state, const BDHWitness& w, std::string_view authority,
                  policy::AttributeIndex attribute);
// u = b(v + (a + sum r - v1) y) for the honest authority, b t otherwise.
ScalarVector implicit_share_vector(const SimulatorState& state, const BDHWitness& w, std::string_view authority,
                                   const SimulatedKey& key);

void audit_setup(const SimulatorSetup& setup, const BDHWitness& w, AuditReport& report);
void audit_key(const SimulatorState& state, const BDHWitness& w, std::string_view authority,
               const SimulatedKey& key, AuditReport& report);
// Builds an authorized key for every authority from the implicit master
// secrets and checks the challenge decrypts to expected.
void audit_real_challenge(const SimulatorState& state, const BDHWitness& w, const scheme::Ciphertext& ct,
                          const GroupElem& expected, AuditReport& report);

struct AuditOptions {
  std::uint64_t prime = PairingContext::kDefaultDebugPrime;
  std::size_t instances = 100;
  std::size_t universe_size = 5;
  std::uint64_t seed = 1;
};
// Randomized instances: setup, honest and corrupted keys, real challenge.
AuditReport run_randomized_audit(const AuditOptions& options);
// p = 13, |U| = 3: every (a, b) pair and every target set.
AuditReport run_exhaustive_identity_audit();
// p = 13: C' and every C_{k,i} tallied over all s, T and z' for both coins;
// the two histograms must coincide.
AuditReport run_exhaustive_mu_independence();

// ---------------------------------------------------------------- game

struct Commitment {
  policy::AttributeSet target;
  std::vector<std::string> authority_ids;
  std::string honest;
};

struct QueryRecord {
  std::string authority;
  std::vector<std::string> rho;
  std::size_t rows = 0;
  bool refused = false;
};

class KeyOracle {
 public:
  KeyOracle(const SimulatorState& state, Rng& rng, std::vector<QueryRecord>& log)
      : state_(&state), rng_(&rng), log_(&log) {}
  // Throws HonestAuthorityRefusal, which ends the trial as a loss.
  scheme::UserKey query(std::string_view authority, const lsss::AccessMatrix& am);
  scheme::UserKey query(std::string_view authority, const policy::PolicyNode& policy);

 private:
  const SimulatorState* state_;
  Rng* rng_;
  std::vector<QueryRecord>* log_;
};

struct PublicView {
  const GlobalParams& gp;
  const Commitment& commitment;
  std::span<const scheme::AuthorityPublicKey> public_keys;
};

struct ChallengeView {
  const GlobalParams& gp;
  const Commitment& commitment;
  std::span<const scheme::AuthorityPublicKey> public_keys;
  const scheme::Ciphertext& ciphertext;
  const GroupElem& m0;
  const GroupElem& m1;
  // Debug harness hook; honest strategies ignore it.
  const BDHWitness& hidden;
};

struct Guess {
  bool mu = false;
  std::optional<GroupElem> plaintext;  // set by strategies that attempt decryption
};

class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual std::string name() const = 0;
  virtual Commitment commit(const GlobalParams& gp, Rng& rng) = 0;
  virtual void phase1(const PublicView&, KeyOracle&, Rng&) {}
  virtual std::pair<GroupElem, GroupElem> choose_messages(const GlobalParams& gp, Rng& rng);
  // Phase II queries go through the same oracle.
  virtual Guess guess(const ChallengeView& view, KeyOracle& oracle, Rng& rng) = 0;
};

std::unique_ptr<Adversary> make_coin_adversary();
std::unique_ptr<Adversary> make_omniscient_adversary();
// Two honest-authority keys for one unauthorized policy; rows are spliced
// and combined with coefficients solved for a superset of the target.
std::unique_ptr<Adversary> make_splice_adversary();
// Keys for "A and B" and "C and D" stacked into one matrix; the target
// {A, D} then looks authorized to a naive solver.
std::unique_ptr<Adversary> make_share_mix_adversary();
// Replays a Phase-I honest key against the challenge and falls back to a coin.
std::unique_ptr<Adversary> make_replay_adversary();
// Asks the honest authority for an authorizing key; always aborted.
std::unique_ptr<Adversary> make_cheating_adversary();
std::unique_ptr<Adversary> make_adversary(std::string_view name);  // ProtocolViolation if unknown
std::vector<std::string> adversary_names();

enum class TMode { kReal, kRandom };

struct GameOptions {
  std::uint64_t prime = PairingContext::kDefaultDebugPrime;
  std::vector<std::string> universe = {"A", "B", "C", "D", "E", "F"};
  TMode t_mode = TMode::kReal;
  std::ostream* transcript = nullptr;  // JSON lines, one per trial
};

struct GameResult {
  std::size_t trials = 0;
  std::size_t wins = 0;
  std::size_t aborted = 0;
  std::size_t decryptions = 0;   // trials whose plaintext guess equals m_mu
  double success_rate = 0;
  double advantage = 0;          // |success_rate - 1/2|
  double sigma = 0;              // binomial standard deviation under no advantage
  double ci_low = 0, ci_high = 0;  // 95% Wilson interval on success_rate
};

// Trial i runs on its own stream seeded with master_seed XOR i.
GameResult run_selective_game(Adversary& adversary, std::size_t trials, std::uint64_t master_seed,
                              const GameOptions& options = {});

}  // namespace makpabe::gamelab

#endif  // MAKPABE_GAMELAB_HPP

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

#include <sodium.h>

#include <algorithm>
#include <cstring>
#include <set>

#include "makpabe/encoding.hpp"
#include "makpabe/errors.hpp"
#include "makpabe/gamelab.hpp"

namespace makpabe::gamelab {

using groups::Role;
using lsss::AccessMatrix;

Scalar SimulatorState::r_sum() const {
  Scalar sum = gp.context().scalar(0);
  for (const auto& [id, rk] : r) sum += rk;
  return sum;
}

std::size_t SimulatorState::position(std::string_view authority) const {
  const auto it = std::find(authority_ids.begin(), authority_ids.end(), authority);
  if (it == authority_ids.end())
    throw Error(Errc::kProtocolViolation, "authority '" + std::string(authority) + "' is not in the game");
  return static_cast<std::size_t>(it - authority_ids.begin());
}

namespace {

void validate_commitment(const GlobalParams& gp, const policy::AttributeSet& target,
                         const std::vector<std::string>& ids, const std::string& honest) {
  if (ids.empty()) throw Error(Errc::kEmptyAuthoritySet, "no authorities");
  if (target.empty()) throw Error(Errc::kEmptyAttributeSet, "empty target set");
  for (auto i : target) {
    if (i >= gp.universe().size()) throw Error(Errc::kUnknownAttribute, "target attribute outside the universe");
  }
  std::set<std::string_view> seen;
  for (const auto& id : ids) {
    if (!seen.insert(id).second) throw Error(Errc::kDuplicateAuthority, "duplicate authority '" + id + "'");
  }
  if (!seen.contains(honest))
    throw Error(Errc::kProtocolViolation, "honest authority '" + honest + "' is not among the chosen authorities");
}

}  // namespace

SimulatorSetup simulator_init_with(const GlobalParams& gp, const BDHInstance& challenge,
                                   const policy::AttributeSet& target, std::vector<std::string> authority_ids,
                                   std::string honest, std::map<std::string, Scalar, std::less<>> r,
                                   std::map<std::string, ScalarVector, std::less<>> zprime) {
  validate_commitment(gp, target, authority_ids, honest);
  const auto& ctx = gp.context();
  const std::size_t n = gp.universe().size();
  for (const auto& id : authority_ids) {
    if (id != honest && !r.contains(id)) throw Error(Errc::kProtocolViolation, "missing r for '" + id + "'");
    const auto z = zprime.find(id);
    if (z == zprime.end() || z->second.size() != n)
      throw Error(Errc::kProtocolViolation, "z' for '" + id + "' must cover the universe");
    for (const auto& zi : z->second) {
      if (zi.is_zero()) throw Error(Errc::kProtocolViolation, "z' must be nonzero");
    }
  }
  r.erase(honest);

  SimulatorSetup out{SimulatorState{gp, target, std::move(authority_ids), std::move(honest), std::move(r),
                                    std::move(zprime), challenge},
                     {}};
  const SimulatorState& st = out.state;
  const GroupElem& gc = ctx.generator(Role::kCipher);

  for (const auto& id : st.authority_ids) {
    scheme::AuthorityPublicKey pk;
    pk.authority_id = id;
    if (st.is_honest(id)) {
      // e(A, B) * prod e(B, g^{r_k})
      std::vector<GroupElem> keys{challenge.a_key};
      std::vector<GroupElem> ciphers{challenge.b_cipher};
      for (const auto& [k, rk] : st.r) {
        keys.push_back(challenge.b_key);
        ciphers.push_back(gc.pow(rk));
      }
      pk.e_gg_alpha = ctx.pair_product(keys, ciphers);
    } else {
      pk.e_gg_alpha = ctx.pair(challenge.b_key, gc.pow(-st.r.find(id)->second));
    }
    const ScalarVector& zp = st.zprime.find(id)->second;
    for (policy::AttributeIndex i = 0; i < n; ++i) {
      pk.z_pub.push_back(st.target.contains(i) ? gc.pow(zp[i]) : challenge.b_cipher.pow(zp[i]));
    }
    out.public_keys.push_back(std::move(pk));
  }
  return out;
}

SimulatorSetup simulator_init(const GlobalParams& gp, const BDHInstance& challenge,
                              const policy::AttributeSet& target, std::vector<std::string> authority_ids,
                              std::string honest, Rng& rng) {
  validate_commitment(gp, target, authority_ids, honest);
  const auto& ctx = gp.context();
  std::map<std::string, Scalar, std::less<>> r;
  std::map<std::string, ScalarVector, std::less<>> zprime;
  for (const auto& id : authority_ids) {
    if (id != honest) r.emplace(id, ctx.random_scalar(rng));
    ScalarVector z;
    for (std::size_t i = 0; i < gp.universe().size(); ++i) z.push_back(ctx.random_scalar(rng, true));
    zprime.emplace(id, std::move(z));
  }
  return simulator_init_with(gp, challenge, target, std::move(authority_ids), std::move(honest), std::move(r),
                             std::move(zprime));
}

SimulatedKey simulator_keygen(const SimulatorState& state, std::string_view authority, const AccessMatrix& am,
                              Rng& rng) {
  const auto& ctx = state.gp.context();
  if (&am.context() != &ctx) throw Error(Errc::kContextMismatch, "matrix built over another context");
  state.position(authority);
  for (auto label : am.rho()) {
    if (label >= state.gp.universe().size()) throw Error(Errc::kUnknownAttribute, "matrix label outside universe");
  }
  const ScalarVector& zp = state.zprime.find(authority)->second;
  const GroupElem& g = ctx.generator(Role::kKey);
  const std::size_t n = am.cols();

  SimulatedKey out{scheme::UserKey{std::string(authority), am, {}}, {}, std::nullopt};
  auto& comps = out.key.components;

  if (state.is_honest(authority)) {
    auto y = lsss::try_blocking_vector(am, state.target);
    if (!y) {
      throw Error(Errc::kHonestAuthorityRefusal,
                  "honest authority '" + std::string(authority) + "' refuses a key authorizing the target set");
    }
    ScalarVector v;
    for (std::size_t j = 0; j < n; ++j) v.push_back(ctx.random_scalar(rng));
    const Scalar shift = state.r_sum() - v[0];  // (r - v1) with the a-part carried by A
    for (std::size_t i = 0; i < am.rows(); ++i) {
      const Scalar zinv = zp[am.label(i)].inverse();
      const Scalar mv = am.row_dot(i, v);
      if (state.target.contains(am.label(i))) {
        comps.push_back(state.challenge.b_key.pow(mv * zinv));
      } else {
        const Scalar my = am.row_dot(i, *y);
        comps.push_back(g.pow((mv + shift * my) * zinv) * state.challenge.a_key.pow(my * zinv));
      }
    }
    out.v = std::move(v);
    out.y = std::move(*y);
  } else {
    ScalarVector t{-state.r.find(authority)->second};
    for (std::size_t j = 1; j < n; ++j) t.push_back(ctx.random_scalar(rng));
    for (std::size_t i = 0; i < am.rows(); ++i) {
      const Scalar e = am.row_dot(i, t) * zp[am.label(i)].inverse();
      comps.push_back(state.target.contains(am.label(i)) ? state.challenge.b_key.pow(e) : g.pow(e));
    }
    out.v = std::move(t);
  }
  return out;
}

scheme::Ciphertext simulator_challenge(const SimulatorState& state, const GroupElem& m0, const GroupElem& m1,
                                       bool mu) {
  const auto& ctx = state.gp.context();
  if (m0.role() != Role::kTarget || m1.role() != Role::kTarget || &m0.context() != &ctx ||
      &m1.context() != &ctx) {
    throw Error(Errc::kRoleMismatch, "challenge messages must be TARGET elements of the game context");
  }
  scheme::Ciphertext ct;
  ct.attributes = state.target;
  ct.authority_ids = state.authority_ids;
  ct.c_prime = (mu ? m1 : m0) * state.challenge.t;
  for (const auto& id : state.authority_ids) {
    const ScalarVector& zp = state.zprime.find(id)->second;
    std::vector<GroupElem> comps;
    for (auto i : state.target) comps.push_back(state.challenge.s_cipher.pow(zp[i]));
    ct.components.push_back(std::move(comps));
  }
  return ct;
}

namespace {

constexpr std::string_view kPayloadLabel = "makpabe-game-payload";

std::array<std::uint8_t, crypto_aead_chacha20poly1305_ietf_KEYBYTES> payload_key(const GroupElem& m) {
  const auto d = toolkit::blake2b_256(m.context().canonical_bytes(m), kPayloadLabel);
  std::array<std::uint8_t, crypto_aead_chacha20poly1305_ietf_KEYBYTES> key{};
  std::memcpy(key.data(), d.data(), key.size());
  return key;
}

}  // namespace

PayloadChallenge simulator_challenge_payload(const SimulatorState& state, std::span<const std::uint8_t> m0,
                                             std::span<const std::uint8_t> m1, bool mu, Rng& rng) {
  if (m0.size() != m1.size())
    throw Error(Errc::kLengthMismatch, "challenge payloads must have equal length");
  ensure_sodium();
  const GroupElem k = state.gp.context().random_element(Role::kTarget, rng);
  PayloadChallenge out{simulator_challenge(state, k, k, false), {}};
  const auto payload = mu ? m1 : m0;
  out.body.resize(payload.size() + crypto_aead_chacha20poly1305_ietf_ABYTES);
  // The key is fresh per challenge, so a fixed nonce is safe.
  const std::array<std::uint8_t, crypto_aead_chacha20poly1305_ietf_NPUBBYTES> nonce{};
  const auto key = payload_key(k);
  unsigned long long written = 0;
  crypto_aead_chacha20poly1305_ietf_encrypt(out.body.data(), &written, payload.data(), payload.size(), nullptr, 0,
                                            nullptr, nonce.data(), key.data());
  out.body.resize(written);
  return out;
}

std::vector<std::uint8_t> open_payload(const GroupElem& key_element, std::span<const std::uint8_t> body) {
  ensure_sodium();
  if (body.size() < crypto_aead_chacha20poly1305_ietf_ABYTES)
    throw Error(Errc::kAuthenticationFailed, "payload body truncated");
  std::vector<std::uint8_t> out(body.size() - crypto_aead_chacha20poly1305_ietf_ABYTES);
  const std::array<std::uint8_t, crypto_aead_chacha20poly1305_ietf_NPUBBYTES> nonce{};
  const auto key = payload_key(key_element);
  unsigned long long written = 0;
  if (crypto_aead_chacha20poly1305_ietf_decrypt(out.data(), &written, nullptr, body.data(), body.size(), nullptr, 0,
                                                nonce.data(), key.data()) != 0) {
    throw Error(Errc::kAuthenticationFailed, "payload authentication failed");
  }
  out.resize(written);
  return out;
}

}  // namespace makpabe::gamelab

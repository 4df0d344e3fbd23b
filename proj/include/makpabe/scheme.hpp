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

#ifndef MAKPABE_SCHEME_HPP
#define MAKPABE_SCHEME_HPP

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "makpabe/groups.hpp"
#include "makpabe/lsss.hpp"
#include "makpabe/policy.hpp"

namespace makpabe::scheme {

using groups::GroupElem;
using groups::PairingContext;
using groups::Role;
using groups::Scalar;
using groups::ScalarVector;
using policy::AttributeIndex;
using policy::AttributeSet;
using policy::AttributeUniverse;

// The bilinear group and attribute universe every authority agrees on.
class GlobalParams {
 public:
  GlobalParams(const PairingContext& ctx, AttributeUniverse universe)
      : ctx_(&ctx), universe_(std::move(universe)) {}

  const PairingContext& context() const noexcept { return *ctx_; }
  const AttributeUniverse& universe() const noexcept { return universe_; }

 private:
  const PairingContext* ctx_;
  AttributeUniverse universe_;
};

// MK_k = (alpha_k, {z_{k,i}}); z is indexed by attribute and never zero.
struct AuthorityMasterKey {
  std::string authority_id;
  Scalar alpha;
  ScalarVector z;
};

// PK_k = (e(g,g)^alpha_k, {g^{z_{k,i}}}) with the g^z in the CIPHER group.
struct AuthorityPublicKey {
  std::string authority_id;
  GroupElem e_gg_alpha;
  std::vector<GroupElem> z_pub;
};

struct AuthorityKeys {
  AuthorityPublicKey pub;
  AuthorityMasterKey master;
};

// One KEY element per matrix row: K_i = g^{lambda_i / z_{rho(i)}}.
struct UserKey {
  std::string authority_id;
  lsss::AccessMatrix matrix;
  std::vector<GroupElem> components;
};

// (S, C' = m * prod_k e(g,g)^{alpha_k s}, {C_{k,i} = g^{z_{k,i} s}}).
// components[a][j] belongs to authority_ids[a] and the j-th smallest
// attribute of S.
struct Ciphertext {
  AttributeSet attributes;
  std::vector<std::string> authority_ids;
  GroupElem c_prime;
  std::vector<std::vector<GroupElem>> components;

  std::size_t component_count() const noexcept;
  const GroupElem& component(std::size_t authority_pos, AttributeIndex attribute) const;
};

using KeyRing = std::map<std::string, UserKey, std::less<>>;

struct DecryptStats {
  std::vector<std::size_t> rows_used;  // |I_k| per authority, ciphertext order
  std::size_t pairings = 0;
};

AuthorityKeys authority_setup(const GlobalParams& gp, std::string authority_id, Rng& rng);
// Builds the key pair from given secrets; z entries must be nonzero.
AuthorityKeys authority_from_secrets(const GlobalParams& gp, std::string authority_id, Scalar alpha,
                                     ScalarVector z);
AuthorityPublicKey derive_public_key(const GlobalParams& gp, const AuthorityMasterKey& master);

UserKey keygen(const GlobalParams& gp, const AuthorityMasterKey& master, const lsss::AccessMatrix& am, Rng& rng);
// v[0] must equal master.alpha.
UserKey keygen_with_vector(const GlobalParams& gp, const AuthorityMasterKey& master, const lsss::AccessMatrix& am,
                           ScalarVector v);

// m must be a TARGET element. Performs no pairings.
Ciphertext encrypt(const GlobalParams& gp, const GroupElem& message, const AttributeSet& attributes,
                   std::span<const AuthorityPublicKey> authorities, Rng& rng);
Ciphertext encrypt_with_exponent(const GlobalParams& gp, const GroupElem& message, const AttributeSet& attributes,
                                 std::span<const AuthorityPublicKey> authorities, const Scalar& s);

// Requires a key for every authority of the ciphertext. Throws
// MissingAuthorityKey or NotAuthorizedError before any pairing is evaluated.
GroupElem decrypt(const GlobalParams& gp, const Ciphertext& ct, const KeyRing& keys,
                  DecryptStats* stats = nullptr);

}  // namespace makpabe::scheme

#endif  // MAKPABE_SCHEME_HPP

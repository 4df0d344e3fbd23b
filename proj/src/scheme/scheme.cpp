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

#include "makpabe/scheme.hpp"

#include <algorithm>
#include <set>

#include "makpabe/errors.hpp"

namespace makpabe::scheme {

std::size_t Ciphertext::component_count() const noexcept {
  std::size_t n = 1;
  for (const auto& per_authority : components) n += per_authority.size();
  return n;
}

const GroupElem& Ciphertext::component(std::size_t authority_pos, AttributeIndex attribute) const {
  const auto it = attributes.find(attribute);
  if (authority_pos >= components.size() || it == attributes.end())
    throw Error(Errc::kIndexOutOfRange, "no ciphertext component for this (authority, attribute)");
  return components[authority_pos][static_cast<std::size_t>(std::distance(attributes.begin(), it))];
}

namespace {

void check_context(const GlobalParams& gp, const PairingContext& ctx) {
  if (&gp.context() != &ctx) throw Error(Errc::kBackendMismatch, "material belongs to another backend");
}

void check_matrix_labels(const GlobalParams& gp, const lsss::AccessMatrix& am) {
  check_context(gp, am.context());
  for (const AttributeIndex label : am.rho()) {
    if (label >= gp.universe().size())
      throw Error(Errc::kUnknownAttribute, "access matrix row labelled outside the universe");
  }
}

}  // namespace

AuthorityPublicKey derive_public_key(const GlobalParams& gp, const AuthorityMasterKey& master) {
  const PairingContext& ctx = gp.context();
  AuthorityPublicKey pub;
  pub.authority_id = master.authority_id;
  pub.e_gg_alpha = ctx.generator(Role::kTarget).pow(master.alpha);
  pub.z_pub.reserve(master.z.size());
  for (const Scalar& z : master.z) pub.z_pub.push_back(ctx.generator(Role::kCipher).pow(z));
  return pub;
}

AuthorityKeys authority_from_secrets(const GlobalParams& gp, std::string authority_id, Scalar alpha,
                                     ScalarVector z) {
  if (z.size() != gp.universe().size()) throw Error(Errc::kUniverseMismatch, "one z per universe attribute required");
  check_context(gp, alpha.context());
  for (const Scalar& zi : z) {
    check_context(gp, zi.context());
    if (zi.is_zero()) throw std::invalid_argument("authority attribute secret z must be nonzero");
  }
  AuthorityKeys keys;
  keys.master = AuthorityMasterKey{std::move(authority_id), std::move(alpha), std::move(z)};
  keys.pub = derive_public_key(gp, keys.master);
  return keys;
}

AuthorityKeys authority_setup(const GlobalParams& gp, std::string authority_id, Rng& rng) {
  const PairingContext& ctx = gp.context();
  Scalar alpha = ctx.random_scalar(rng);
  ScalarVector z;
  z.reserve(gp.universe().size());
  for (std::size_t i = 0; i < gp.universe().size(); ++i) z.push_back(ctx.random_scalar(rng, /*nonzero=*/true));
  return authority_from_secrets(gp, std::move(authority_id), std::move(alpha), std::move(z));
}

UserKey keygen_with_vector(const GlobalParams& gp, const AuthorityMasterKey& master, const lsss::AccessMatrix& am,
                           ScalarVector v) {
  check_matrix_labels(gp, am);
  if (v.empty() || !(v[0] == master.alpha)) throw std::invalid_argument("keygen: v[0] must equal alpha");
  if (master.z.size() != gp.universe().size()) throw Error(Errc::kUniverseMismatch, "master key universe size");
  const auto shares = lsss::share_with_vector(am, std::move(v));
  const GroupElem& g = gp.context().generator(Role::kKey);
  UserKey key{master.authority_id, am, {}};
  key.components.reserve(am.rows());
  for (std::size_t i = 0; i < am.rows(); ++i)
    key.components.push_back(g.pow(shares.lambda[i] * master.z[am.label(i)].inverse()));
  return key;
}

UserKey keygen(const GlobalParams& gp, const AuthorityMasterKey& master, const lsss::AccessMatrix& am, Rng& rng) {
  ScalarVector v;
  v.reserve(am.cols());
  v.push_back(master.alpha);
  for (std::size_t j = 1; j < am.cols(); ++j) v.push_back(gp.context().random_scalar(rng));
  return keygen_with_vector(gp, master, am, std::move(v));
}

Ciphertext encrypt_with_exponent(const GlobalParams& gp, const GroupElem& message, const AttributeSet& attributes,
                                 std::span<const AuthorityPublicKey> authorities, const Scalar& s) {
  const PairingContext& ctx = gp.context();
  check_context(gp, message.context());
  if (message.role() != Role::kTarget) throw Error(Errc::kRoleMismatch, "message must be a TARGET element");
  if (authorities.empty()) throw Error(Errc::kEmptyAuthoritySet, "at least one authority is required");
  if (attributes.empty()) throw Error(Errc::kEmptyAttributeSet, "attribute set must be nonempty");
  for (const AttributeIndex a : attributes) {
    if (a >= gp.universe().size()) throw Error(Errc::kUnknownAttribute, "attribute outside the universe");
  }
  std::set<std::string, std::less<>> seen;
  for (const auto& pk : authorities) {
    if (!seen.insert(pk.authority_id).second)
      throw Error(Errc::kDuplicateAuthority, "authority '" + pk.authority_id + "' listed twice");
    if (pk.z_pub.size() != gp.universe().size())
      throw Error(Errc::kUniverseMismatch, "public key of '" + pk.authority_id + "' has a different universe");
    check_context(gp, pk.e_gg_alpha.context());
  }

  Ciphertext ct;
  ct.attributes = attributes;
  GroupElem blind = ctx.identity(Role::kTarget);
  for (const auto& pk : authorities) {
    ct.authority_ids.push_back(pk.authority_id);
    blind *= pk.e_gg_alpha;
    std::vector<GroupElem> per_attr;
    per_attr.reserve(attributes.size());
    for (const AttributeIndex a : attributes) per_attr.push_back(pk.z_pub[a].pow(s));
    ct.components.push_back(std::move(per_attr));
  }
  ct.c_prime = message * blind.pow(s);
  return ct;
}

Ciphertext encrypt(const GlobalParams& gp, const GroupElem& message, const AttributeSet& attributes,
                   std::span<const AuthorityPublicKey> authorities, Rng& rng) {
  return encrypt_with_exponent(gp, message, attributes, authorities, gp.context().random_scalar(rng));
}

GroupElem decrypt(const GlobalParams& gp, const Ciphertext& ct, const KeyRing& keys, DecryptStats* stats) {
  const PairingContext& ctx = gp.context();
  check_context(gp, ct.c_prime.context());
  if (ct.components.size() != ct.authority_ids.size())
    throw Error(Errc::kCorruptField, "ciphertext authority list and components disagree");

  std::vector<lsss::ReconstructionPlan> plans;
  std::vector<const UserKey*> used;
  for (const auto& id : ct.authority_ids) {
    const auto it = keys.find(id);
    if (it == keys.end()) throw Error(Errc::kMissingAuthorityKey, "no key supplied for authority '" + id + "'");
    const UserKey& key = it->second;
    check_context(gp, key.matrix.context());
    if (key.components.size() != key.matrix.rows())
      throw Error(Errc::kCorruptField, "user key component count differs from matrix rows");
    auto plan = lsss::try_reconstruction_coefficients(key.matrix, ct.attributes);
    if (!plan) throw NotAuthorizedError(id);
    plans.push_back(std::move(*plan));
    used.push_back(&key);
  }

  std::vector<GroupElem> lhs;
  std::vector<GroupElem> rhs;
  DecryptStats local;
  for (std::size_t k = 0; k < plans.size(); ++k) {
    const auto& plan = plans[k];
    for (std::size_t r = 0; r < plan.rows.size(); ++r) {
      const std::size_t row = plan.rows[r];
      // e(K, C)^w = e(K, C^w)
      lhs.push_back(used[k]->components[row]);
      rhs.push_back(ct.component(k, used[k]->matrix.label(row)).pow(plan.coeffs[r]));
    }
    local.rows_used.push_back(plan.rows.size());
  }
  local.pairings = lhs.size();
  const GroupElem blind = ctx.pair_product(lhs, rhs);
  if (stats != nullptr) *stats = std::move(local);
  return ct.c_prime * blind.inverse();
}

}  // namespace makpabe::scheme

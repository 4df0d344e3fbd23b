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

#include "makpabe/envelope.hpp"

#include <sodium.h>

#include <cstring>

#include <json.hpp>

#include "makpabe/errors.hpp"

namespace makpabe::toolkit {

using nlohmann::json;
using groups::GroupElem;
using scheme::GlobalParams;

namespace {

constexpr std::size_t kPrefix = kEnvelopeMagic.size() + 4;
constexpr int kEnvelopeVersion = 1;

[[noreturn]] void corrupt(const std::string& what) { throw Error(Errc::kCorruptField, "envelope: " + what); }

struct Parsed {
  json header;
  std::span<const std::uint8_t> associated;  // magic, length and header
  std::span<const std::uint8_t> body;
};

Parsed parse(std::span<const std::uint8_t> env) {
  if (env.size() < kPrefix || std::memcmp(env.data(), kEnvelopeMagic.data(), kEnvelopeMagic.size()) != 0)
    corrupt("bad magic");
  const std::uint8_t* l = env.data() + kEnvelopeMagic.size();
  const std::size_t len = (std::size_t{l[0]} << 24) | (std::size_t{l[1]} << 16) | (std::size_t{l[2]} << 8) | l[3];
  if (len > env.size() - kPrefix) corrupt("header length exceeds file");
  const std::string_view text(reinterpret_cast<const char*>(env.data() + kPrefix), len);
  Parsed out;
  try {
    out.header = json::parse(text);
  } catch (const json::exception&) {
    corrupt("header is not JSON");
  }
  if (!out.header.is_object() || out.header.dump() != text) corrupt("header is not canonical");
  out.associated = env.first(kPrefix + len);
  out.body = env.subspan(kPrefix + len);
  return out;
}

template <typename T>
T get(const json& j, const char* name) {
  const auto it = j.find(name);
  if (it == j.end()) corrupt(std::string("missing field '") + name + "'");
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    corrupt(std::string("bad field '") + name + "'");
  }
}

void check_version(const json& h) {
  const auto it = h.find("version");
  if (it == h.end() || !it->is_number_integer() || it->get<int>() != kEnvelopeVersion)
    throw Error(Errc::kUnknownVersion, "unsupported envelope version");
  if (get<std::string>(h, "aead") != kAeadId) corrupt("unknown AEAD algorithm");
}

std::string b64(const GroupElem& x) { return base64url_encode(x.context().canonical_bytes(x)); }

GroupElem elem(const scheme::PairingContext& ctx, groups::Role role, const std::string& text) {
  return ctx.decode(role, base64url_decode(text));
}

scheme::Ciphertext ciphertext_from(const GlobalParams& gp, const json& h) {
  const auto& ctx = gp.context();
  if (get<std::string>(h, "backend") != ctx.backend_id())
    throw Error(Errc::kBackendMismatch, "envelope backend " + get<std::string>(h, "backend") + " differs from " +
                                            ctx.backend_id());
  if (get<std::string>(h, "universe_hash") != gp.universe().hash_hex())
    throw Error(Errc::kUniverseMismatch, "envelope was sealed under a different attribute universe");
  if (get<bool>(h, "production") != ctx.secret_safe()) corrupt("production marker does not match backend");

  scheme::Ciphertext ct;
  for (const auto& name : get<std::vector<std::string>>(h, "attributes")) {
    const auto idx = gp.universe().find(name);
    if (!idx) corrupt("unknown attribute '" + name + "'");
    if (!ct.attributes.insert(*idx).second) corrupt("duplicate attribute");
  }
  ct.c_prime = elem(ctx, groups::Role::kTarget, get<std::string>(h, "c_prime"));
  const auto auths = get<json>(h, "authorities");
  if (!auths.is_array()) corrupt("authorities must be an array");
  for (const auto& a : auths) {
    ct.authority_ids.push_back(get<std::string>(a, "id"));
    std::vector<GroupElem> comps;
    for (const auto& c : get<std::vector<std::string>>(a, "components"))
      comps.push_back(elem(ctx, groups::Role::kCipher, c));
    if (comps.size() != ct.attributes.size()) corrupt("component count does not match attributes");
    ct.components.push_back(std::move(comps));
  }
  return ct;
}

std::array<std::uint8_t, crypto_aead_chacha20poly1305_ietf_KEYBYTES> kem_key(const GroupElem& m) {
  const Bytes digest = blake2b_256(m.context().canonical_bytes(m), kKemLabel);
  std::array<std::uint8_t, crypto_aead_chacha20poly1305_ietf_KEYBYTES> key{};
  std::memcpy(key.data(), digest.data(), key.size());
  return key;
}

}  // namespace

Bytes seal(const GlobalParams& gp, std::span<const std::uint8_t> payload, const scheme::AttributeSet& attributes,
           std::span<const scheme::AuthorityPublicKey> authorities, Rng& rng) {
  ensure_sodium();
  const auto& ctx = gp.context();
  const GroupElem m = ctx.random_element(groups::Role::kTarget, rng);
  const scheme::Ciphertext ct = scheme::encrypt(gp, m, attributes, authorities, rng);

  std::array<std::uint8_t, crypto_aead_chacha20poly1305_ietf_NPUBBYTES> nonce{};
  rng.fill(nonce);

  json h;
  h["version"] = kEnvelopeVersion;
  h["aead"] = std::string(kAeadId);
  h["backend"] = ctx.backend_id();
  h["production"] = ctx.secret_safe();
  h["universe_hash"] = gp.universe().hash_hex();
  h["attributes"] = gp.universe().names_of(ct.attributes);
  h["c_prime"] = b64(ct.c_prime);
  json auths = json::array();
  for (std::size_t a = 0; a < ct.authority_ids.size(); ++a) {
    json comps = json::array();
    for (const auto& c : ct.components[a]) comps.push_back(b64(c));
    auths.push_back({{"id", ct.authority_ids[a]}, {"components", std::move(comps)}});
  }
  h["authorities"] = std::move(auths);
  h["nonce"] = base64url_encode(nonce);
  const std::string header = h.dump();
  if (header.size() > 0xffffffffU) corrupt("header too large");

  Bytes out;
  out.reserve(kPrefix + header.size() + payload.size() + kAeadTagSize);
  out.insert(out.end(), kEnvelopeMagic.begin(), kEnvelopeMagic.end());
  const auto len = static_cast<std::uint32_t>(header.size());
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(len >> shift));
  out.insert(out.end(), header.begin(), header.end());
  const std::size_t ad_len = out.size();

  out.resize(ad_len + payload.size() + kAeadTagSize);
  const auto key = kem_key(m);
  unsigned long long written = 0;
  crypto_aead_chacha20poly1305_ietf_encrypt(out.data() + ad_len, &written, payload.data(), payload.size(),
                                            out.data(), ad_len, nullptr, nonce.data(), key.data());
  out.resize(ad_len + written);
  return out;
}

Bytes open(const GlobalParams& gp, std::span<const std::uint8_t> envelope, const scheme::KeyRing& keys,
           scheme::DecryptStats* stats) {
  ensure_sodium();
  const Parsed p = parse(envelope);
  check_version(p.header);
  const scheme::Ciphertext ct = ciphertext_from(gp, p.header);
  const Bytes nonce = base64url_decode(get<std::string>(p.header, "nonce"));
  if (nonce.size() != crypto_aead_chacha20poly1305_ietf_NPUBBYTES) corrupt("bad nonce length");

  const GroupElem m = scheme::decrypt(gp, ct, keys, stats);

  if (p.body.size() < kAeadTagSize) throw Error(Errc::kAuthenticationFailed, "envelope body truncated");
  const auto key = kem_key(m);
  Bytes out(p.body.size() - kAeadTagSize);
  unsigned long long written = 0;
  if (crypto_aead_chacha20poly1305_ietf_decrypt(out.data(), &written, nullptr, p.body.data(), p.body.size(),
                                                p.associated.data(), p.associated.size(), nonce.data(),
                                                key.data()) != 0) {
    throw Error(Errc::kAuthenticationFailed, "envelope authentication failed");
  }
  out.resize(written);
  return out;
}

EnvelopeInfo inspect(std::span<const std::uint8_t> envelope) {
  const Parsed p = parse(envelope);
  check_version(p.header);
  const json& h = p.header;
  EnvelopeInfo info;
  info.backend = get<std::string>(h, "backend");
  info.universe_hash = get<std::string>(h, "universe_hash");
  info.aead = get<std::string>(h, "aead");
  info.production = get<bool>(h, "production");
  info.attributes = get<std::vector<std::string>>(h, "attributes");
  info.group_elements = 1;
  for (const auto& a : get<json>(h, "authorities")) {
    info.authority_ids.push_back(get<std::string>(a, "id"));
    info.group_elements += get<std::vector<std::string>>(a, "components").size();
  }
  info.header_bytes = p.associated.size();
  info.body_bytes = p.body.size();
  info.payload_bytes = p.body.size() >= kAeadTagSize ? p.body.size() - kAeadTagSize : 0;
  return info;
}

scheme::Ciphertext envelope_ciphertext(const GlobalParams& gp, std::span<const std::uint8_t> envelope) {
  const Parsed p = parse(envelope);
  check_version(p.header);
  return ciphertext_from(gp, p.header);
}

}  // namespace makpabe::toolkit

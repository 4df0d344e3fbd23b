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

#include "makpabe/serialize.hpp"

#include <optional>

#include <json.hpp>

#include "makpabe/encoding.hpp"
#include "makpabe/errors.hpp"

namespace makpabe::toolkit {

using nlohmann::json;
using scheme::GlobalParams;

std::string_view artifact_kind_name(ArtifactKind kind) noexcept {
  switch (kind) {
    case ArtifactKind::kAuthorityPublic: return "authority-public";
    case ArtifactKind::kAuthorityMaster: return "authority-master";
    case ArtifactKind::kUserKey: return "user-key";
    case ArtifactKind::kCiphertext: return "ciphertext";
  }
  return "?";
}

namespace {

constexpr std::string_view kChecksumLabel = "makpabe-file-checksum";

ArtifactKind parse_kind(const std::string& name) {
  for (ArtifactKind k : {ArtifactKind::kAuthorityPublic, ArtifactKind::kAuthorityMaster, ArtifactKind::kUserKey,
                         ArtifactKind::kCiphertext}) {
    if (artifact_kind_name(k) == name) return k;
  }
  throw Error(Errc::kCorruptField, "unknown artifact kind '" + name + "'");
}

[[noreturn]] void corrupt(const std::string& what) { throw Error(Errc::kCorruptField, what); }

std::string checksum_of(const json& body) {
  return hex_encode(blake2b_256(as_bytes(body.dump()), kChecksumLabel));
}

json envelope_fields(const GlobalParams& gp, ArtifactKind kind) {
  json j;
  j["kind"] = std::string(artifact_kind_name(kind));
  j["version"] = kFormatVersion;
  j["backend"] = gp.context().backend_id();
  j["universe"] = gp.universe().names();
  j["universe_hash"] = gp.universe().hash_hex();
  j["production"] = gp.context().secret_safe();
  return j;
}

std::string finish(json j) {
  j["checksum"] = checksum_of(j);
  return j.dump();
}

std::string elem_b64(const scheme::GroupElem& x) { return base64url_encode(x.context().canonical_bytes(x)); }
std::string scalar_b64(const scheme::Scalar& s) { return base64url_encode(s.context().scalar_bytes(s)); }

const json& field(const json& j, const char* name) {
  const auto it = j.find(name);
  if (it == j.end()) corrupt(std::string("missing field '") + name + "'");
  return *it;
}

std::string string_field(const json& j, const char* name) {
  const json& f = field(j, name);
  if (!f.is_string()) corrupt(std::string("field '") + name + "' must be a string");
  return f.get<std::string>();
}

const json& array_field(const json& j, const char* name) {
  const json& f = field(j, name);
  if (!f.is_array()) corrupt(std::string("field '") + name + "' must be an array");
  return f;
}

scheme::GroupElem decode_elem(const scheme::PairingContext& ctx, groups::Role role, const json& f) {
  if (!f.is_string()) corrupt("group element must be a base64url string");
  return ctx.decode(role, base64url_decode(f.get<std::string>()));
}

scheme::Scalar decode_scalar(const scheme::PairingContext& ctx, const json& f) {
  if (!f.is_string()) corrupt("scalar must be a base64url string");
  return ctx.decode_scalar(base64url_decode(f.get<std::string>()));
}

json parse_json(std::string_view text) {
  try {
    json j = json::parse(text);
    if (!j.is_object()) corrupt("artifact must be a JSON object");
    return j;
  } catch (const json::exception& e) {
    corrupt(std::string("malformed JSON: ") + e.what());
  }
}

// Validates version, kind, checksum and the recorded universe; returns the
// parameters the file claims.
GlobalParams read_common(const json& j, std::optional<ArtifactKind> expected_kind, ArtifactKind* kind_out) {
  const json& version = field(j, "version");
  if (!version.is_number_integer() || version.get<int>() != kFormatVersion)
    throw Error(Errc::kUnknownVersion, "unsupported artifact version " + version.dump());
  const ArtifactKind kind = parse_kind(string_field(j, "kind"));
  if (expected_kind && kind != *expected_kind) {
    corrupt("expected a " + std::string(artifact_kind_name(*expected_kind)) + " file, found " +
            std::string(artifact_kind_name(kind)));
  }
  if (kind_out != nullptr) *kind_out = kind;

  json body = j;
  body.erase("checksum");
  if (string_field(j, "checksum") != checksum_of(body)) corrupt("checksum mismatch");

  std::vector<std::string> names;
  for (const auto& n : array_field(j, "universe")) {
    if (!n.is_string()) corrupt("universe entries must be strings");
    names.push_back(n.get<std::string>());
  }
  auto universe = policy::AttributeUniverse::from_names(std::move(names));
  if (universe.hash_hex() != string_field(j, "universe_hash")) corrupt("universe hash does not match names");
  const auto& ctx = groups::PairingContext::from_backend_id(string_field(j, "backend"));
  const json& production = field(j, "production");
  if (!production.is_boolean()) corrupt("field 'production' must be a boolean");
  if (production.get<bool>() && !ctx.secret_safe())
    throw Error(Errc::kInsecureBackend, "production artifact on the insecure debug backend");
  return GlobalParams(ctx, std::move(universe));
}

json parse_against(std::string_view text, const GlobalParams& gp, ArtifactKind kind) {
  json j = parse_json(text);
  const GlobalParams recorded = [&] {
    try {
      return read_common(j, kind, nullptr);
    } catch (const Error& e) {
      // An unrecognised backend id is a mismatch with the caller's backend.
      if (e.code() == Errc::kBackendUnsupported || e.code() == Errc::kUnknownCurve || e.code() == Errc::kNonPrime)
        throw Error(Errc::kBackendMismatch, e.what());
      throw;
    }
  }();
  if (&recorded.context() != &gp.context()) {
    throw Error(Errc::kBackendMismatch, "artifact backend " + recorded.context().backend_id() + " differs from " +
                                            gp.context().backend_id());
  }
  if (!(recorded.universe() == gp.universe())) throw Error(Errc::kUniverseMismatch, "artifact universe differs");
  return j;
}

template <typename Fn>
auto guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    corrupt(std::string("malformed field: ") + e.what());
  } catch (const std::invalid_argument& e) {
    corrupt(e.what());
  }
}

}  // namespace

FileHeader read_file_header(std::string_view text) {
  const json j = parse_json(text);
  ArtifactKind kind{};
  GlobalParams params = read_common(j, std::nullopt, &kind);
  return FileHeader{kind, std::move(params)};
}

std::string encode_public_key(const GlobalParams& gp, const scheme::AuthorityPublicKey& pk) {
  json j = envelope_fields(gp, ArtifactKind::kAuthorityPublic);
  j["authority_id"] = pk.authority_id;
  j["e_gg_alpha"] = elem_b64(pk.e_gg_alpha);
  json z = json::array();
  for (const auto& zi : pk.z_pub) z.push_back(elem_b64(zi));
  j["z"] = std::move(z);
  return finish(std::move(j));
}

std::string encode_master_key(const GlobalParams& gp, const scheme::AuthorityMasterKey& mk) {
  json j = envelope_fields(gp, ArtifactKind::kAuthorityMaster);
  j["secret"] = true;
  j["authority_id"] = mk.authority_id;
  j["alpha"] = scalar_b64(mk.alpha);
  json z = json::array();
  for (const auto& zi : mk.z) z.push_back(scalar_b64(zi));
  j["z"] = std::move(z);
  return finish(std::move(j));
}

std::string encode_user_key(const GlobalParams& gp, const scheme::UserKey& key) {
  json j = envelope_fields(gp, ArtifactKind::kUserKey);
  j["authority_id"] = key.authority_id;
  json rows = json::array();
  json rho = json::array();
  for (std::size_t i = 0; i < key.matrix.rows(); ++i) {
    json row = json::array();
    for (const auto& e : key.matrix.row(i)) row.push_back(scalar_b64(e));
    rows.push_back(std::move(row));
    rho.push_back(gp.universe().name(key.matrix.label(i)));
  }
  j["matrix"] = {{"cols", key.matrix.cols()}, {"rows", std::move(rows)}};
  j["rho"] = std::move(rho);
  json comps = json::array();
  for (const auto& k : key.components) comps.push_back(elem_b64(k));
  j["components"] = std::move(comps);
  return finish(std::move(j));
}

std::string encode_ciphertext(const GlobalParams& gp, const scheme::Ciphertext& ct) {
  json j = envelope_fields(gp, ArtifactKind::kCiphertext);
  j["attributes"] = gp.universe().names_of(ct.attributes);
  j["c_prime"] = elem_b64(ct.c_prime);
  json auths = json::array();
  for (std::size_t a = 0; a < ct.authority_ids.size(); ++a) {
    json comps = json::array();
    for (const auto& c : ct.components[a]) comps.push_back(elem_b64(c));
    auths.push_back({{"id", ct.authority_ids[a]}, {"components", std::move(comps)}});
  }
  j["authorities"] = std::move(auths);
  return finish(std::move(j));
}

scheme::AuthorityPublicKey decode_public_key(std::string_view text, const GlobalParams& gp) {
  const json j = parse_against(text, gp, ArtifactKind::kAuthorityPublic);
  return guarded([&] {
    const auto& ctx = gp.context();
    scheme::AuthorityPublicKey pk;
    pk.authority_id = string_field(j, "authority_id");
    pk.e_gg_alpha = decode_elem(ctx, groups::Role::kTarget, field(j, "e_gg_alpha"));
    for (const auto& z : array_field(j, "z")) pk.z_pub.push_back(decode_elem(ctx, groups::Role::kCipher, z));
    if (pk.z_pub.size() != gp.universe().size()) corrupt("public key must carry one element per attribute");
    return pk;
  });
}

scheme::AuthorityMasterKey decode_master_key(std::string_view text, const GlobalParams& gp) {
  const json j = parse_against(text, gp, ArtifactKind::kAuthorityMaster);
  return guarded([&] {
    const auto& ctx = gp.context();
    scheme::AuthorityMasterKey mk;
    mk.authority_id = string_field(j, "authority_id");
    mk.alpha = decode_scalar(ctx, field(j, "alpha"));
    for (const auto& z : array_field(j, "z")) {
      mk.z.push_back(decode_scalar(ctx, z));
      if (mk.z.back().is_zero()) corrupt("master key attribute secret is zero");
    }
    if (mk.z.size() != gp.universe().size()) corrupt("master key must carry one secret per attribute");
    return mk;
  });
}

scheme::UserKey decode_user_key(std::string_view text, const GlobalParams& gp) {
  const json j = parse_against(text, gp, ArtifactKind::kUserKey);
  return guarded([&] {
    const auto& ctx = gp.context();
    const json& m = field(j, "matrix");
    const std::size_t cols = field(m, "cols").get<std::size_t>();
    std::vector<groups::ScalarVector> rows;
    for (const auto& r : array_field(m, "rows")) {
      if (!r.is_array()) corrupt("matrix rows must be arrays");
      groups::ScalarVector row;
      for (const auto& e : r) row.push_back(decode_scalar(ctx, e));
      rows.push_back(std::move(row));
    }
    std::vector<policy::AttributeIndex> rho;
    for (const auto& name : array_field(j, "rho")) {
      if (!name.is_string()) corrupt("rho entries must be attribute names");
      const auto idx = gp.universe().find(name.get<std::string>());
      if (!idx) corrupt("rho names an attribute outside the universe");
      rho.push_back(*idx);
    }
    lsss::AccessMatrix matrix(ctx, cols, std::move(rows), std::move(rho));
    std::vector<groups::GroupElem> comps;
    for (const auto& k : array_field(j, "components")) comps.push_back(decode_elem(ctx, groups::Role::kKey, k));
    if (comps.size() != matrix.rows()) corrupt("user key needs one component per matrix row");
    return scheme::UserKey{string_field(j, "authority_id"), std::move(matrix), std::move(comps)};
  });
}

scheme::Ciphertext decode_ciphertext(std::string_view text, const GlobalParams& gp) {
  const json j = parse_against(text, gp, ArtifactKind::kCiphertext);
  return guarded([&] {
    const auto& ctx = gp.context();
    scheme::Ciphertext ct;
    for (const auto& name : array_field(j, "attributes")) {
      if (!name.is_string()) corrupt("attribute names must be strings");
      const auto idx = gp.universe().find(name.get<std::string>());
      if (!idx) corrupt("ciphertext names an attribute outside the universe");
      if (!ct.attributes.insert(*idx).second) corrupt("duplicate ciphertext attribute");
    }
    ct.c_prime = decode_elem(ctx, groups::Role::kTarget, field(j, "c_prime"));
    for (const auto& a : array_field(j, "authorities")) {
      ct.authority_ids.push_back(string_field(a, "id"));
      std::vector<groups::GroupElem> comps;
      for (const auto& c : array_field(a, "components")) comps.push_back(decode_elem(ctx, groups::Role::kCipher, c));
      if (comps.size() != ct.attributes.size()) corrupt("one component per attribute per authority required");
      ct.components.push_back(std::move(comps));
    }
    return ct;
  });
}

}  // namespace makpabe::toolkit

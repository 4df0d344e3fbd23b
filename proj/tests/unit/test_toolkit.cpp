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

#include <doctest.h>

#include <functional>

#include <json.hpp>

#include "makpabe/encoding.hpp"
#include "makpabe/envelope.hpp"
#include "makpabe/errors.hpp"
#include "makpabe/serialize.hpp"

using namespace makpabe;
using namespace makpabe::toolkit;
using scheme::GlobalParams;
using policy::PolicyNode;
using groups::GroupElem;

namespace {

GlobalParams params(const groups::PairingContext& ctx) {
  return GlobalParams(ctx, policy::AttributeUniverse::from_names({"A", "B", "C", "D"}));
}

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::kIo;
}

struct World {
  GlobalParams gp;
  std::vector<scheme::AuthorityKeys> auths;
  std::vector<scheme::AuthorityPublicKey> pks;
  scheme::KeyRing ring;

  World(const groups::PairingContext& ctx, Rng& rng) : gp(params(ctx)) {
    for (const char* id : {"hospital", "insurer"}) {
      auths.push_back(scheme::authority_setup(gp, id, rng));
      pks.push_back(auths.back().pub);
    }
    ring.emplace("hospital", scheme::keygen(gp, auths[0].master,
                                            policy::to_lsss(policy::parse_policy("A and B", gp.universe()), ctx),
                                            rng));
    ring.emplace("insurer", scheme::keygen(gp, auths[1].master,
                                           policy::to_lsss(policy::parse_policy("2 of (A, C, D)", gp.universe()), ctx),
                                           rng));
  }
};

}  // namespace

TEST_CASE("base64url and hex") {
  const Bytes data{0xfb, 0xff, 0x00, 0x10};
  CHECK(base64url_encode(data) == "-_8AEA");
  CHECK(base64url_decode("-_8AEA") == data);
  CHECK(base64url_encode(Bytes{}) == "");
  CHECK(hex_encode(data) == "fbff0010");
  CHECK(code_of([] { base64url_decode("-_8AEA=="); }) == Errc::kCorruptField);
  CHECK(code_of([] { base64url_decode("***"); }) == Errc::kCorruptField);
  CHECK(blake2b_256(data, "x") != blake2b_256(data, "y"));
  CHECK(blake2b_256(data, "x").size() == 32);
}

TEST_CASE("artifact round trips") {
  for (const auto* ctx : {&groups::PairingContext::debug(), &groups::PairingContext::curve()}) {
    Rng rng = Rng::from_seed(1);
    World w(*ctx, rng);
    const auto& a = w.auths[0];
    const std::string pub = encode_public_key(w.gp, a.pub);
    CHECK(encode_public_key(w.gp, decode_public_key(pub, w.gp)) == pub);
    CHECK(decode_public_key(pub, w.gp).e_gg_alpha == a.pub.e_gg_alpha);

    const std::string master = encode_master_key(w.gp, a.master);
    const auto mk = decode_master_key(master, w.gp);
    CHECK(mk.alpha == a.master.alpha);
    CHECK(mk.z == a.master.z);
    CHECK(nlohmann::json::parse(master)["secret"] == true);

    const auto& uk = w.ring.at("hospital");
    const std::string user = encode_user_key(w.gp, uk);
    const auto back = decode_user_key(user, w.gp);
    CHECK(back.matrix == uk.matrix);
    CHECK(back.components == uk.components);
    CHECK(encode_user_key(w.gp, back) == user);

    const GroupElem m = ctx->random_element(groups::Role::kTarget, rng);
    const auto ct = scheme::encrypt(w.gp, m, {0, 1, 2}, w.pks, rng);
    const std::string ctext = encode_ciphertext(w.gp, ct);
    const auto ct2 = decode_ciphertext(ctext, w.gp);
    CHECK(encode_ciphertext(w.gp, ct2) == ctext);
    CHECK(scheme::decrypt(w.gp, ct2, w.ring) == m);

    const auto hdr = read_file_header(user);
    CHECK(hdr.kind == ArtifactKind::kUserKey);
    CHECK(&hdr.params.context() == ctx);
    CHECK(hdr.params.universe() == w.gp.universe());
  }
}

TEST_CASE("decode errors") {
  Rng rng = Rng::from_seed(2);
  World w(groups::PairingContext::debug(), rng);
  const std::string pub = encode_public_key(w.gp, w.auths[0].pub);
  auto j = nlohmann::json::parse(pub);

  auto resigned = [](nlohmann::json doc) {
    // Keep the checksum consistent so the field-level check is what fires.
    doc.erase("checksum");
    const auto sum = hex_encode(blake2b_256(as_bytes(doc.dump()), "makpabe-file-checksum"));
    doc["checksum"] = sum;
    return doc.dump();
  };

  auto v = j;
  v["version"] = 2;
  CHECK(code_of([&] { decode_public_key(resigned(v), w.gp); }) == Errc::kUnknownVersion);

  // A flipped character inside a group element.
  auto e = j;
  std::string elem = e["e_gg_alpha"];
  elem[3] = elem[3] == 'A' ? 'B' : 'A';
  e["e_gg_alpha"] = elem;
  CHECK(code_of([&] { decode_public_key(e.dump(), w.gp); }) == Errc::kCorruptField);

  const auto curve = params(groups::PairingContext::curve());
  CHECK(code_of([&] { decode_public_key(pub, curve); }) == Errc::kBackendMismatch);

  const GlobalParams other(groups::PairingContext::debug(),
                           policy::AttributeUniverse::from_names({"A", "B", "C", "E"}));
  CHECK(code_of([&] { decode_public_key(pub, other); }) == Errc::kUniverseMismatch);

  CHECK(code_of([&] { decode_master_key(pub, w.gp); }) == Errc::kCorruptField);
  CHECK(code_of([&] { decode_public_key("not json", w.gp); }) == Errc::kCorruptField);

  auto p = j;
  p["production"] = true;
  CHECK(code_of([&] { decode_public_key(resigned(p), w.gp); }) == Errc::kInsecureBackend);
}

TEST_CASE("every single-byte change in a debug key file is caught") {
  Rng rng = Rng::from_seed(3);
  World w(groups::PairingContext::debug(), rng);
  const std::string user = encode_user_key(w.gp, w.ring.at("insurer"));
  for (std::size_t i = 0; i < user.size(); ++i) {
    std::string t = user;
    t[i] = static_cast<char>(t[i] ^ 0x01);
    REQUIRE_THROWS_AS(decode_user_key(t, w.gp), Error);
  }
}

TEST_CASE("envelope round trips") {
  Rng rng = Rng::from_seed(4);
  World w(groups::PairingContext::debug(), rng);
  for (std::size_t size : {std::size_t{0}, std::size_t{1}, std::size_t{1024}, std::size_t{1} << 20}) {
    Bytes payload(size);
    rng.fill(payload);
    const Bytes env = seal(w.gp, payload, {0, 1, 2}, w.pks, rng);
    CHECK(open(w.gp, env, w.ring) == payload);
    const auto info = inspect(env);
    CHECK(info.payload_bytes == size);
    CHECK(info.body_bytes == size + kAeadTagSize);
    CHECK(info.group_elements == 2 * 3 + 1);
    CHECK(!info.production);
    CHECK(info.attributes == std::vector<std::string>{"A", "B", "C"});
    CHECK(info.authority_ids == std::vector<std::string>{"hospital", "insurer"});
  }
}

TEST_CASE("envelope size grows by one element per authority-attribute pair") {
  Rng rng = Rng::from_seed(5);
  World w(groups::PairingContext::curve(), rng);
  const Bytes payload(100, 7);
  const auto one = inspect(seal(w.gp, payload, {0}, std::span(w.pks).first(1), rng));
  const auto two = inspect(seal(w.gp, payload, {0, 1}, std::span(w.pks).first(1), rng));
  const auto four = inspect(seal(w.gp, payload, {0, 1}, w.pks, rng));
  CHECK(one.group_elements == 2);
  CHECK(two.group_elements == 3);
  CHECK(four.group_elements == 5);
  CHECK(one.body_bytes == 100 + kAeadTagSize);
  CHECK(one.production);
  // A G1 element is 48 bytes, 64 characters once base64url encoded, plus
  // quoting and a comma.
  CHECK(two.header_bytes - one.header_bytes == 64 + 3 + 4);
}

TEST_CASE("envelope tamper detection") {
  Rng rng = Rng::from_seed(6);
  World w(groups::PairingContext::debug(), rng);
  const Bytes payload(64, 0x42);
  const Bytes env = seal(w.gp, payload, {0, 1, 2}, w.pks, rng);

  Bytes body = env;
  body.back() ^= 0x01;
  CHECK(code_of([&] { open(w.gp, body, w.ring); }) == Errc::kAuthenticationFailed);

  // Swap C for D in the attribute list: keys still authorize, the AEAD
  // associated data no longer matches.
  std::string text(env.begin(), env.end());
  const auto pos = text.find("\"attributes\":[\"A\",\"B\",\"C\"]");
  REQUIRE(pos != std::string::npos);
  text[pos + 23] = 'D';
  const Bytes swapped(text.begin(), text.end());
  CHECK(code_of([&] { open(w.gp, swapped, w.ring); }) == Errc::kAuthenticationFailed);

  CHECK(code_of([&] { open(w.gp, Bytes(env.begin(), env.begin() + 20), w.ring); }) == Errc::kCorruptField);
}

TEST_CASE("envelope open errors come from decrypt first") {
  Rng rng = Rng::from_seed(7);
  World w(groups::PairingContext::debug(), rng);
  const Bytes env = seal(w.gp, Bytes(10, 1), {0, 2}, w.pks, rng);
  scheme::KeyRing weak = w.ring;  // A and B is not met by {A, C}
  CHECK(code_of([&] { open(w.gp, env, weak); }) == Errc::kNotAuthorized);
  scheme::KeyRing missing;
  missing.emplace("insurer", w.ring.at("insurer"));
  CHECK(code_of([&] { open(w.gp, env, missing); }) == Errc::kMissingAuthorityKey);

  const GlobalParams other(groups::PairingContext::debug(),
                           policy::AttributeUniverse::from_names({"A", "B", "C", "X"}));
  CHECK(code_of([&] { open(other, env, w.ring); }) == Errc::kUniverseMismatch);
  CHECK(code_of([&] { open(params(groups::PairingContext::curve()), env, w.ring); }) == Errc::kBackendMismatch);
}

TEST_CASE("random single-bit corruptions are all detected") {
  Rng rng = Rng::from_seed(8);
  World w(groups::PairingContext::debug(), rng);
  const Bytes payload(256, 0x5a);
  const Bytes env = seal(w.gp, payload, {0, 1, 2}, w.pks, rng);
  for (int trial = 0; trial < 1000; ++trial) {
    Bytes t = env;
    const std::size_t bit = rng.uniform(t.size() * 8);
    t[bit / 8] ^= static_cast<std::uint8_t>(1U << (bit % 8));
    bool detected = false;
    try {
      detected = open(w.gp, t, w.ring) != payload;
    } catch (const Error&) {
      detected = true;
    }
    REQUIRE(detected);
  }
}

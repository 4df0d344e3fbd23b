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

#ifndef MAKPABE_ENVELOPE_HPP
#define MAKPABE_ENVELOPE_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "makpabe/encoding.hpp"
#include "makpabe/scheme.hpp"

namespace makpabe::toolkit {

// Layout: "MAKP1" | u32 big-endian header length | canonical header JSON | body.
// Everything before the body is the AEAD associated data, so the attribute
// set, authority list and the embedded ABE ciphertext are all authenticated.
inline constexpr std::string_view kEnvelopeMagic = "MAKP1";
inline constexpr std::string_view kKemLabel = "MAKP1-KEM";
inline constexpr std::string_view kAeadId = "chacha20poly1305-ietf";
inline constexpr std::size_t kAeadTagSize = 16;

Bytes seal(const scheme::GlobalParams& gp, std::span<const std::uint8_t> payload,
           const scheme::AttributeSet& attributes, std::span<const scheme::AuthorityPublicKey> authorities,
           Rng& rng);

// Decrypts the embedded ABE ciphertext first, so NotAuthorized and
// MissingAuthorityKey surface before any symmetric work.
Bytes open(const scheme::GlobalParams& gp, std::span<const std::uint8_t> envelope, const scheme::KeyRing& keys,
           scheme::DecryptStats* stats = nullptr);

struct EnvelopeInfo {
  std::string backend;
  std::string universe_hash;
  std::string aead;
  bool production = false;
  std::vector<std::string> attributes;
  std::vector<std::string> authority_ids;
  std::size_t group_elements = 0;  // c_prime plus one per (authority, attribute)
  std::size_t header_bytes = 0;
  std::size_t body_bytes = 0;
  std::size_t payload_bytes = 0;
};

// Reads metadata only; needs no keys and reveals no secrets.
EnvelopeInfo inspect(std::span<const std::uint8_t> envelope);

// The embedded ABE ciphertext, decoded against gp.
scheme::Ciphertext envelope_ciphertext(const scheme::GlobalParams& gp, std::span<const std::uint8_t> envelope);

}  // namespace makpabe::toolkit

#endif  // MAKPABE_ENVELOPE_HPP

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

#ifndef MAKPABE_ENCODING_HPP
#define MAKPABE_ENCODING_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace makpabe::toolkit {

using Bytes = std::vector<std::uint8_t>;

// RFC 4648 base64url without padding. Decoding is strict: non-alphabet
// characters and nonzero trailing bits raise CorruptField.
std::string base64url_encode(std::span<const std::uint8_t> data);
Bytes base64url_decode(std::string_view text);

std::string hex_encode(std::span<const std::uint8_t> data);

// BLAKE2b-256 of data under a domain-separation label (at most 255 bytes).
Bytes blake2b_256(std::span<const std::uint8_t> data, std::string_view label);

inline std::span<const std::uint8_t> as_bytes(std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

}  // namespace makpabe::toolkit

#endif  // MAKPABE_ENCODING_HPP

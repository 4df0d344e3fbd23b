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

#include "makpabe/encoding.hpp"

#include <sodium.h>

#include "makpabe/errors.hpp"
#include "makpabe/rng.hpp"

namespace makpabe::toolkit {

std::string base64url_encode(std::span<const std::uint8_t> data) {
  ensure_sodium();
  constexpr int kVariant = sodium_base64_VARIANT_URLSAFE_NO_PADDING;
  std::string out(sodium_base64_ENCODED_LEN(data.size(), kVariant), '\0');
  sodium_bin2base64(out.data(), out.size(), data.data(), data.size(), kVariant);
  out.resize(out.size() - 1);  // drop NUL
  return out;
}

Bytes base64url_decode(std::string_view text) {
  ensure_sodium();
  Bytes out(text.size() * 3 / 4 + 3);
  std::size_t len = 0;
  const char* end = nullptr;
  if (sodium_base642bin(out.data(), out.size(), text.data(), text.size(), nullptr, &len, &end,
                        sodium_base64_VARIANT_URLSAFE_NO_PADDING) != 0 ||
      end != text.data() + text.size()) {
    throw Error(Errc::kCorruptField, "invalid base64url field");
  }
  out.resize(len);
  return out;
}

std::string hex_encode(std::span<const std::uint8_t> data) {
  ensure_sodium();
  std::string out(data.size() * 2 + 1, '\0');
  sodium_bin2hex(out.data(), out.size(), data.data(), data.size());
  out.resize(data.size() * 2);
  return out;
}

Bytes blake2b_256(std::span<const std::uint8_t> data, std::string_view label) {
  ensure_sodium();
  // Domain separation: H(len(label) || label || data).
  crypto_generichash_state st;
  crypto_generichash_init(&st, nullptr, 0, crypto_generichash_BYTES);
  const auto label_len = static_cast<unsigned char>(label.size());
  crypto_generichash_update(&st, &label_len, 1);
  crypto_generichash_update(&st, reinterpret_cast<const unsigned char*>(label.data()), label.size());
  crypto_generichash_update(&st, data.data(), data.size());
  Bytes out(crypto_generichash_BYTES);
  crypto_generichash_final(&st, out.data(), out.size());
  return out;
}

}  // namespace makpabe::toolkit

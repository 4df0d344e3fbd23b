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

#ifndef MAKPABE_RNG_HPP
#define MAKPABE_RNG_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace makpabe {

// Randomness source for every sampling operation in the library. A seeded
// instance expands its key with ChaCha20 and is reproducible across runs and
// platforms; the system instance draws from the OS CSPRNG on every call.
class Rng {
 public:
  static Rng from_seed(std::uint64_t seed);
  static Rng from_seed_bytes(std::span<const std::uint8_t> seed);
  static Rng system();

  void fill(std::span<std::uint8_t> out);
  std::uint64_t next_u64();
  // Uniform in [0, bound); bound must be nonzero.
  std::uint64_t uniform(std::uint64_t bound);
  bool coin() { return (next_u64() & 1U) != 0; }

  bool deterministic() const noexcept { return deterministic_; }

 private:
  Rng() = default;
  void refill();

  bool deterministic_ = false;
  std::array<std::uint8_t, 32> key_{};
  std::uint64_t block_ = 0;
  std::array<std::uint8_t, 256> buffer_{};
  std::size_t pos_ = 0;
};

// Accepts up to 16 hex digits, optional "0x" prefix.
std::optional<std::uint64_t> parse_seed_hex(std::string_view text);

// Initializes libsodium once; safe to call from any thread.
void ensure_sodium();

}  // namespace makpabe

#endif  // MAKPABE_RNG_HPP

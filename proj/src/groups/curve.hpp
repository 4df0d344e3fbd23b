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

// BLS12-381 primitives behind the curve backend. KEY = G2, CIPHER = G1.

#ifndef MAKPABE_SRC_GROUPS_CURVE_HPP
#define MAKPABE_SRC_GROUPS_CURVE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "makpabe/groups.hpp"

namespace makpabe::groups::detail::curve {

using Fr = std::array<std::uint64_t, 4>;
using G1 = GroupElem::G1Limbs;
using G2 = GroupElem::G2Limbs;
using Gt = GroupElem::GtLimbs;

inline constexpr std::size_t kScalarBytes = 32;
inline constexpr std::size_t kG1Bytes = 48;
inline constexpr std::size_t kG2Bytes = 96;
inline constexpr std::size_t kGtBytes = 576;

extern const char* const kOrderDecimal;

Fr fr_from_u64(std::uint64_t v);
Fr fr_add(const Fr& a, const Fr& b);
Fr fr_sub(const Fr& a, const Fr& b);
Fr fr_mul(const Fr& a, const Fr& b);
Fr fr_neg(const Fr& a);
Fr fr_inv(const Fr& a);
bool fr_is_zero(const Fr& a);
// Canonical little-endian 64-bit limbs of the residue.
std::array<std::uint64_t, 4> fr_to_canonical(const Fr& a);
std::array<std::uint8_t, kScalarBytes> fr_to_bytes(const Fr& a);  // big-endian
std::optional<Fr> fr_from_bytes(std::span<const std::uint8_t> bytes);
Fr fr_random(Rng& rng, bool nonzero);

G1 g1_generator();
G1 g1_identity();
G1 g1_add(const G1& a, const G1& b);
G1 g1_neg(const G1& a);
G1 g1_mul(const G1& a, const Fr& k);
bool g1_eq(const G1& a, const G1& b);
std::vector<std::uint8_t> g1_encode(const G1& a);
std::optional<G1> g1_decode(std::span<const std::uint8_t> bytes);

G2 g2_generator();
G2 g2_identity();
G2 g2_add(const G2& a, const G2& b);
G2 g2_neg(const G2& a);
G2 g2_mul(const G2& a, const Fr& k);
bool g2_eq(const G2& a, const G2& b);
std::vector<std::uint8_t> g2_encode(const G2& a);
std::optional<G2> g2_decode(std::span<const std::uint8_t> bytes);

Gt gt_generator();
Gt gt_identity();
Gt gt_mul(const Gt& a, const Gt& b);
Gt gt_inv(const Gt& a);
Gt gt_pow(const Gt& a, const Fr& k);
bool gt_eq(const Gt& a, const Gt& b);
std::vector<std::uint8_t> gt_encode(const Gt& a);
std::optional<Gt> gt_decode(std::span<const std::uint8_t> bytes);

Gt pairing(const G2& key, const G1& cipher);
Gt pairing_product(std::span<const G2> keys, std::span<const G1> ciphers);

}  // namespace makpabe::groups::detail::curve

#endif  // MAKPABE_SRC_GROUPS_CURVE_HPP

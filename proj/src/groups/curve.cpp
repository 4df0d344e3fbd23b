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

#include "groups/curve.hpp"

#include <blst.h>
#include <blst_aux.h>

#include <algorithm>
#include <cstring>

namespace makpabe::groups::detail::curve {

static_assert(sizeof(blst_fr) == sizeof(Fr));
static_assert(sizeof(blst_p1) == sizeof(G1));
static_assert(sizeof(blst_p2) == sizeof(G2));
static_assert(sizeof(blst_fp12) == sizeof(Gt));

const char* const kOrderDecimal =
    "52435875175126190479447740508185965837690552500527637822603658699938581184513";

namespace {

template <typename To, typename From>
To bit_copy(const From& from) {
  static_assert(sizeof(To) == sizeof(From));
  To to;
  std::memcpy(&to, &from, sizeof(To));
  return to;
}

blst_scalar to_blst_scalar(const Fr& k) {
  blst_scalar s;
  const blst_fr fr = bit_copy<blst_fr>(k);
  blst_scalar_from_fr(&s, &fr);
  return s;
}

// Top byte of r = 0x73ed...; sampling 255-bit strings accepts ~90%.
constexpr std::uint8_t kTopByteMask = 0x7f;

}  // namespace

Fr fr_from_u64(std::uint64_t v) {
  const std::uint64_t limbs[4] = {v, 0, 0, 0};
  blst_fr out;
  blst_fr_from_uint64(&out, limbs);
  return bit_copy<Fr>(out);
}

#define MAKPABE_FR_BINOP(name, fn)                  \
  Fr name(const Fr& a, const Fr& b) {               \
    const blst_fr x = bit_copy<blst_fr>(a);         \
    const blst_fr y = bit_copy<blst_fr>(b);         \
    blst_fr out;                                    \
    fn(&out, &x, &y);                               \
    return bit_copy<Fr>(out);                       \
  }
MAKPABE_FR_BINOP(fr_add, blst_fr_add)
MAKPABE_FR_BINOP(fr_sub, blst_fr_sub)
MAKPABE_FR_BINOP(fr_mul, blst_fr_mul)
#undef MAKPABE_FR_BINOP

Fr fr_neg(const Fr& a) {
  const blst_fr x = bit_copy<blst_fr>(a);
  blst_fr out;
  blst_fr_cneg(&out, &x, true);
  return bit_copy<Fr>(out);
}

Fr fr_inv(const Fr& a) {
  const blst_fr x = bit_copy<blst_fr>(a);
  blst_fr out;
  blst_fr_inverse(&out, &x);
  return bit_copy<Fr>(out);
}

bool fr_is_zero(const Fr& a) {
  std::uint64_t acc = 0;
  for (const std::uint64_t limb : a) acc |= limb;
  return acc == 0;
}

std::array<std::uint64_t, 4> fr_to_canonical(const Fr& a) {
  const blst_fr x = bit_copy<blst_fr>(a);
  std::array<std::uint64_t, 4> out{};
  blst_uint64_from_fr(out.data(), &x);
  return out;
}

std::array<std::uint8_t, kScalarBytes> fr_to_bytes(const Fr& a) {
  const blst_scalar s = to_blst_scalar(a);
  std::array<std::uint8_t, kScalarBytes> out{};
  blst_bendian_from_scalar(out.data(), &s);
  return out;
}

std::optional<Fr> fr_from_bytes(std::span<const std::uint8_t> bytes) {
  if (bytes.size() != kScalarBytes) return std::nullopt;
  blst_scalar s;
  blst_scalar_from_bendian(&s, bytes.data());
  if (!blst_scalar_fr_check(&s)) {
    // fr_check rejects zero as well; zero is a valid residue here.
    if (std::all_of(bytes.begin(), bytes.end(), [](std::uint8_t b) { return b == 0; }))
      return Fr{};
    return std::nullopt;
  }
  blst_fr out;
  blst_fr_from_scalar(&out, &s);
  return bit_copy<Fr>(out);
}

Fr fr_random(Rng& rng, bool nonzero) {
  std::array<std::uint8_t, kScalarBytes> buf{};
  for (;;) {
    rng.fill(buf);
    buf[0] &= kTopByteMask;
    if (auto fr = fr_from_bytes(buf)) {
      if (nonzero && fr_is_zero(*fr)) continue;
      return *fr;
    }
  }
}

// ---- G1 (CIPHER) ----

G1 g1_generator() { return bit_copy<G1>(*blst_p1_generator()); }
G1 g1_identity() { return G1{}; }

G1 g1_add(const G1& a, const G1& b) {
  const blst_p1 x = bit_copy<blst_p1>(a);
  const blst_p1 y = bit_copy<blst_p1>(b);
  blst_p1 out;
  blst_p1_add_or_double(&out, &x, &y);
  return bit_copy<G1>(out);
}

G1 g1_neg(const G1& a) {
  blst_p1 x = bit_copy<blst_p1>(a);
  blst_p1_cneg(&x, true);
  return bit_copy<G1>(x);
}

G1 g1_mul(const G1& a, const Fr& k) {
  const blst_p1 x = bit_copy<blst_p1>(a);
  const blst_scalar s = to_blst_scalar(k);
  blst_p1 out;
  blst_p1_mult(&out, &x, s.b, 255);
  return bit_copy<G1>(out);
}

bool g1_eq(const G1& a, const G1& b) {
  const blst_p1 x = bit_copy<blst_p1>(a);
  const blst_p1 y = bit_copy<blst_p1>(b);
  return blst_p1_is_equal(&x, &y);
}

std::vector<std::uint8_t> g1_encode(const G1& a) {
  const blst_p1 x = bit_copy<blst_p1>(a);
  std::vector<std::uint8_t> out(kG1Bytes);
  blst_p1_compress(out.data(), &x);
  return out;
}

std::optional<G1> g1_decode(std::span<const std::uint8_t> bytes) {
  if (bytes.size() != kG1Bytes) return std::nullopt;
  blst_p1_affine aff;
  if (blst_p1_uncompress(&aff, bytes.data()) != BLST_SUCCESS) return std::nullopt;
  if (!blst_p1_affine_in_g1(&aff)) return std::nullopt;
  blst_p1 p;
  blst_p1_from_affine(&p, &aff);
  G1 out = bit_copy<G1>(p);
  const auto again = g1_encode(out);
  if (!std::equal(again.begin(), again.end(), bytes.begin())) return std::nullopt;
  return out;
}

// ---- G2 (KEY) ----

G2 g2_generator() { return bit_copy<G2>(*blst_p2_generator()); }
G2 g2_identity() { return G2{}; }

G2 g2_add(const G2& a, const G2& b) {
  const blst_p2 x = bit_copy<blst_p2>(a);
  const blst_p2 y = bit_copy<blst_p2>(b);
  blst_p2 out;
  blst_p2_add_or_double(&out, &x, &y);
  return bit_copy<G2>(out);
}

G2 g2_neg(const G2& a) {
  blst_p2 x = bit_copy<blst_p2>(a);
  blst_p2_cneg(&x, true);
  return bit_copy<G2>(x);
}

G2 g2_mul(const G2& a, const Fr& k) {
  const blst_p2 x = bit_copy<blst_p2>(a);
  const blst_scalar s = to_blst_scalar(k);
  blst_p2 out;
  blst_p2_mult(&out, &x, s.b, 255);
  return bit_copy<G2>(out);
}

bool g2_eq(const G2& a, const G2& b) {
  const blst_p2 x = bit_copy<blst_p2>(a);
  const blst_p2 y = bit_copy<blst_p2>(b);
  return blst_p2_is_equal(&x, &y);
}

std::vector<std::uint8_t> g2_encode(const G2& a) {
  const blst_p2 x = bit_copy<blst_p2>(a);
  std::vector<std::uint8_t> out(kG2Bytes);
  blst_p2_compress(out.data(), &x);
  return out;
}

std::optional<G2> g2_decode(std::span<const std::uint8_t> bytes) {
  if (bytes.size() != kG2Bytes) return std::nullopt;
  blst_p2_affine aff;
  if (blst_p2_uncompress(&aff, bytes.data()) != BLST_SUCCESS) return std::nullopt;
  if (!blst_p2_affine_in_g2(&aff)) return std::nullopt;
  blst_p2 p;
  blst_p2_from_affine(&p, &aff);
  G2 out = bit_copy<G2>(p);
  const auto again = g2_encode(out);
  if (!std::equal(again.begin(), again.end(), bytes.begin())) return std::nullopt;
  return out;
}

// ---- GT (TARGET) ----

Gt gt_identity() { return bit_copy<Gt>(*blst_fp12_one()); }

Gt gt_generator() {
  static const Gt gen = pairing(g2_generator(), g1_generator());
  return gen;
}

Gt gt_mul(const Gt& a, const Gt& b) {
  const blst_fp12 x = bit_copy<blst_fp12>(a);
  const blst_fp12 y = bit_copy<blst_fp12>(b);
  blst_fp12 out;
  blst_fp12_mul(&out, &x, &y);
  return bit_copy<Gt>(out);
}

Gt gt_inv(const Gt& a) {
  const blst_fp12 x = bit_copy<blst_fp12>(a);
  blst_fp12 out;
  blst_fp12_inverse(&out, &x);
  return bit_copy<Gt>(out);
}

Gt gt_pow(const Gt& a, const Fr& k) {
  // Fixed 4-bit windows with a full-table masked lookup: the sequence of
  // field operations and memory accesses does not depend on k.
  std::array<blst_fp12, 16> table;
  table[0] = *blst_fp12_one();
  table[1] = bit_copy<blst_fp12>(a);
  for (std::size_t i = 2; i < table.size(); ++i) blst_fp12_mul(&table[i], &table[i - 1], &table[1]);

  const auto bytes = fr_to_bytes(k);
  blst_fp12 acc = *blst_fp12_one();
  for (std::size_t nib = 0; nib < 2 * bytes.size(); ++nib) {
    for (int s = 0; s < 4; ++s) blst_fp12_cyclotomic_sqr(&acc, &acc);
    const std::uint64_t digit = (nib % 2 == 0) ? (bytes[nib / 2] >> 4) : (bytes[nib / 2] & 0x0f);
    std::array<std::uint64_t, 72> pick{};
    for (std::uint64_t i = 0; i < table.size(); ++i) {
      const std::uint64_t mask = 0 - (((i ^ digit) - 1) >> 63);
      const auto entry = bit_copy<Gt>(table[i]);
      for (std::size_t l = 0; l < pick.size(); ++l) pick[l] |= entry[l] & mask;
    }
    const blst_fp12 factor = bit_copy<blst_fp12>(pick);
    blst_fp12_mul(&acc, &acc, &factor);
  }
  return bit_copy<Gt>(acc);
}

bool gt_eq(const Gt& a, const Gt& b) {
  const blst_fp12 x = bit_copy<blst_fp12>(a);
  const blst_fp12 y = bit_copy<blst_fp12>(b);
  return blst_fp12_is_equal(&x, &y);
}

std::vector<std::uint8_t> gt_encode(const Gt& a) {
  const blst_fp12 x = bit_copy<blst_fp12>(a);
  std::vector<std::uint8_t> out(kGtBytes);
  blst_bendian_from_fp12(out.data(), &x);
  return out;
}

std::optional<Gt> gt_decode(std::span<const std::uint8_t> bytes) {
  if (bytes.size() != kGtBytes) return std::nullopt;
  // Inverse of blst_bendian_from_fp12's coefficient order.
  blst_fp12 f;
  const std::uint8_t* p = bytes.data();
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      blst_fp_from_bendian(&f.fp6[j].fp2[i].fp[0], p);
      p += 48;
      blst_fp_from_bendian(&f.fp6[j].fp2[i].fp[1], p);
      p += 48;
    }
  }
  Gt out = bit_copy<Gt>(f);
  const auto again = gt_encode(out);
  if (!std::equal(again.begin(), again.end(), bytes.begin())) return std::nullopt;
  if (!blst_fp12_in_group(&f)) return std::nullopt;
  return out;
}

// ---- pairing ----

Gt pairing(const G2& key, const G1& cipher) {
  return pairing_product(std::span<const G2>(&key, 1), std::span<const G1>(&cipher, 1));
}

Gt pairing_product(std::span<const G2> keys, std::span<const G1> ciphers) {
  std::vector<blst_p2_affine> qs;
  std::vector<blst_p1_affine> ps;
  qs.reserve(keys.size());
  ps.reserve(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const blst_p2 q = bit_copy<blst_p2>(keys[i]);
    const blst_p1 p = bit_copy<blst_p1>(ciphers[i]);
    // e(O, Q) = e(P, O) = 1.
    if (blst_p2_is_inf(&q) || blst_p1_is_inf(&p)) continue;
    qs.emplace_back();
    blst_p2_to_affine(&qs.back(), &q);
    ps.emplace_back();
    blst_p1_to_affine(&ps.back(), &p);
  }
  if (qs.empty()) return gt_identity();
  std::vector<const blst_p2_affine*> qptr;
  std::vector<const blst_p1_affine*> pptr;
  for (std::size_t i = 0; i < qs.size(); ++i) {
    qptr.push_back(&qs[i]);
    pptr.push_back(&ps[i]);
  }
  blst_fp12 ml;
  blst_miller_loop_n(&ml, qptr.data(), pptr.data(), qs.size());
  blst_fp12 out;
  blst_final_exp(&out, &ml);
  return bit_copy<Gt>(out);
}

}  // namespace makpabe::groups::detail::curve

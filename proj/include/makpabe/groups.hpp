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

#ifndef MAKPABE_GROUPS_HPP
#define MAKPABE_GROUPS_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "makpabe/rng.hpp"

namespace makpabe::groups {

enum class Backend : std::uint8_t { kDebugExponent, kCurve };

// KEY holds user-key components, CIPHER holds ciphertext attribute
// components and published attribute keys, TARGET is the pairing image.
// On the debug backend KEY and CIPHER are the same group.
enum class Role : std::uint8_t { kKey, kCipher, kTarget };

std::string_view role_name(Role role) noexcept;

class PairingContext;

namespace detail {
struct Access;
}

// Residue modulo the prime group order of a PairingContext.
class Scalar {
 public:
  Scalar() = default;

  bool bound() const noexcept { return ctx_ != nullptr; }
  const PairingContext& context() const;

  bool is_zero() const;
  Scalar inverse() const;  // throws std::domain_error on zero

  Scalar operator+(const Scalar& rhs) const;
  Scalar operator-(const Scalar& rhs) const;
  Scalar operator*(const Scalar& rhs) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& rhs) { return *this = *this + rhs; }
  Scalar& operator-=(const Scalar& rhs) { return *this = *this - rhs; }
  Scalar& operator*=(const Scalar& rhs) { return *this = *this * rhs; }

  friend bool operator==(const Scalar& a, const Scalar& b);

  // Canonical residue; throws if it does not fit in 64 bits.
  std::uint64_t to_u64() const;
  // Signed representative v with |v| < 2^62 and v = value (mod p), if any.
  std::optional<std::int64_t> to_small_signed() const;
  std::string to_string() const;

 private:
  friend struct detail::Access;
  const PairingContext* ctx_ = nullptr;
  // Debug backend: limbs_[0] is the residue. Curve backend: Montgomery form.
  std::array<std::uint64_t, 4> limbs_{};
};

using ScalarVector = std::vector<Scalar>;

// Element of one of the three groups of a PairingContext. Immutable value.
class GroupElem {
 public:
  using G1Limbs = std::array<std::uint64_t, 18>;
  using G2Limbs = std::array<std::uint64_t, 36>;
  using GtLimbs = std::array<std::uint64_t, 72>;
  using Repr = std::variant<std::monostate, std::uint64_t, G1Limbs, G2Limbs, GtLimbs>;

  GroupElem() = default;

  bool bound() const noexcept { return ctx_ != nullptr; }
  Role role() const noexcept { return role_; }
  const PairingContext& context() const;

  GroupElem operator*(const GroupElem& rhs) const;
  GroupElem& operator*=(const GroupElem& rhs) { return *this = *this * rhs; }
  GroupElem pow(const Scalar& k) const;
  GroupElem inverse() const;

  friend bool operator==(const GroupElem& a, const GroupElem& b);

 private:
  friend struct detail::Access;
  const PairingContext* ctx_ = nullptr;
  Role role_ = Role::kTarget;
  Repr repr_;
};

// Counts pair() evaluations made on the current thread while it is alive.
// Scopes nest; every enclosing scope sees the calls of its inner scopes.
class PairingCounter {
 public:
  PairingCounter();
  ~PairingCounter();
  PairingCounter(const PairingCounter&) = delete;
  PairingCounter& operator=(const PairingCounter&) = delete;

  std::uint64_t count() const noexcept { return count_; }
  void reset() noexcept { count_ = 0; }

  static void record(std::uint64_t n) noexcept;

 private:
  PairingCounter* parent_;
  std::uint64_t count_ = 0;
};

// A bilinear group (KEY x CIPHER -> TARGET) of prime order p with fixed
// generators. Contexts are interned for the life of the process, so elements
// may refer to their context by address.
class PairingContext {
 public:
  static constexpr std::uint64_t kDefaultDebugPrime = (std::uint64_t{1} << 61) - 1;
  static constexpr std::string_view kCurveBls12_381 = "bls12-381";

  // Exponent-representation backend. p must be a prime in [13, 2^63).
  static const PairingContext& debug(std::uint64_t p = kDefaultDebugPrime);
  static const PairingContext& curve(std::string_view curve_id = kCurveBls12_381);
  // "debug:<p>" or "curve:<curve-id>".
  static const PairingContext& from_backend_id(std::string_view backend_id);

  PairingContext(const PairingContext&) = delete;
  PairingContext& operator=(const PairingContext&) = delete;

  Backend backend() const noexcept { return backend_; }
  const std::string& backend_id() const noexcept { return backend_id_; }
  bool is_debug() const noexcept { return backend_ == Backend::kDebugExponent; }
  // Only the curve backend may hold production secrets.
  bool secret_safe() const noexcept { return backend_ == Backend::kCurve; }
  std::uint64_t debug_order() const;
  const std::string& order_string() const noexcept { return order_string_; }

  const GroupElem& generator(Role role) const;
  const GroupElem& identity(Role role) const;

  Scalar scalar(std::int64_t value) const;
  Scalar scalar_from_u64(std::uint64_t value) const;
  Scalar random_scalar(Rng& rng, bool nonzero = false) const;
  std::size_t scalar_size() const noexcept;
  std::vector<std::uint8_t> scalar_bytes(const Scalar& s) const;
  Scalar decode_scalar(std::span<const std::uint8_t> bytes) const;

  GroupElem exp(const GroupElem& base, const Scalar& k) const;
  GroupElem combine(const GroupElem& x, const GroupElem& y) const;
  GroupElem invert(const GroupElem& x) const;
  bool eq(const GroupElem& x, const GroupElem& y) const;
  GroupElem random_element(Role role, Rng& rng) const;

  GroupElem pair(const GroupElem& key, const GroupElem& cipher) const;
  // prod_i pair(keys[i], ciphers[i]); records keys.size() pairings.
  GroupElem pair_product(std::span<const GroupElem> keys,
                         std::span<const GroupElem> ciphers) const;

  std::size_t element_size(Role role) const noexcept;
  std::vector<std::uint8_t> canonical_bytes(const GroupElem& x) const;
  GroupElem decode(Role role, std::span<const std::uint8_t> bytes) const;

  // Audit hooks, debug backend only: elements are discrete logs relative to
  // the generator of their role.
  Scalar debug_log(const GroupElem& x) const;
  GroupElem debug_element(Role role, const Scalar& log) const;
  // Retags a KEY/CIPHER element; legal because the debug pairing is symmetric.
  GroupElem debug_recast(const GroupElem& x, Role role) const;

 private:
  friend struct detail::Access;
  PairingContext(Backend backend, std::uint64_t p);

  void check_scalar(const Scalar& s) const;
  void check_elem(const GroupElem& x) const;
  void require_debug(std::string_view op) const;

  Backend backend_;
  std::uint64_t p_;  // debug backend only
  std::string backend_id_;
  std::string order_string_;
  std::array<GroupElem, 3> generators_;
  std::array<GroupElem, 3> identities_;
};

bool is_prime_u64(std::uint64_t n) noexcept;

}  // namespace makpabe::groups

#endif  // MAKPABE_GROUPS_HPP

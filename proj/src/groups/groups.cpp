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

#include "makpabe/groups.hpp"

#include <charconv>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "groups/curve.hpp"
#include "makpabe/errors.hpp"

namespace makpabe::groups {

namespace detail {

struct Access {
  static Scalar make_scalar(const PairingContext* ctx, const std::array<std::uint64_t, 4>& limbs) {
    Scalar s;
    s.ctx_ = ctx;
    s.limbs_ = limbs;
    return s;
  }
  static Scalar make_small(const PairingContext* ctx, std::uint64_t v) {
    return make_scalar(ctx, {v, 0, 0, 0});
  }
  static const std::array<std::uint64_t, 4>& limbs(const Scalar& s) { return s.limbs_; }
  static const PairingContext* ctx(const Scalar& s) { return s.ctx_; }

  static GroupElem make_elem(const PairingContext* ctx, Role role, GroupElem::Repr repr) {
    GroupElem x;
    x.ctx_ = ctx;
    x.role_ = role;
    x.repr_ = std::move(repr);
    return x;
  }
  static const GroupElem::Repr& repr(const GroupElem& x) { return x.repr_; }
  static const PairingContext* ctx(const GroupElem& x) { return x.ctx_; }
  static std::uint64_t debug_p(const PairingContext& ctx) { return ctx.p_; }
};

}  // namespace detail

using detail::Access;
namespace cv = detail::curve;

namespace {

std::uint64_t mod_add(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  const std::uint64_t s = a + b;  // p < 2^63, no overflow
  return s >= p ? s - p : s;
}

std::uint64_t mod_sub(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return a >= b ? a - b : a + (p - b);
}

std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t e, std::uint64_t p) {
  std::uint64_t acc = 1 % p;
  base %= p;
  while (e != 0) {
    if (e & 1U) acc = mod_mul(acc, base, p);
    base = mod_mul(base, base, p);
    e >>= 1U;
  }
  return acc;
}

std::string u256_to_decimal(std::array<std::uint64_t, 4> v) {
  std::string digits;
  auto is_zero = [&v] { return (v[0] | v[1] | v[2] | v[3]) == 0; };
  if (is_zero()) return "0";
  while (!is_zero()) {
    unsigned __int128 rem = 0;
    for (int i = 3; i >= 0; --i) {
      const unsigned __int128 cur = (rem << 64) | v[static_cast<std::size_t>(i)];
      v[static_cast<std::size_t>(i)] = static_cast<std::uint64_t>(cur / 10);
      rem = cur % 10;
    }
    digits.push_back(static_cast<char>('0' + static_cast<int>(rem)));
  }
  return {digits.rbegin(), digits.rend()};
}

constexpr std::size_t kDebugBytes = 8;

void put_be64(std::uint64_t v, std::uint8_t* out) {
  for (int i = 7; i >= 0; --i) {
    out[i] = static_cast<std::uint8_t>(v);
    v >>= 8;
  }
}

std::uint64_t get_be64(const std::uint8_t* in) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = (v << 8) | in[i];
  return v;
}

thread_local PairingCounter* tl_counter_top = nullptr;

}  // namespace

std::string_view role_name(Role role) noexcept {
  switch (role) {
    case Role::kKey: return "KEY";
    case Role::kCipher: return "CIPHER";
    case Role::kTarget: return "TARGET";
  }
  return "?";
}

bool is_prime_u64(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++r;
  }
  // Deterministic for all n < 2^64 with these bases.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = mod_pow(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mod_mul(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// ---------------------------------------------------------------- counter

PairingCounter::PairingCounter() : parent_(tl_counter_top) { tl_counter_top = this; }

PairingCounter::~PairingCounter() { tl_counter_top = parent_; }

void PairingCounter::record(std::uint64_t n) noexcept {
  for (PairingCounter* c = tl_counter_top; c != nullptr; c = c->parent_) c->count_ += n;
}

// ----------------------------------------------------------------- scalar

const PairingContext& Scalar::context() const {
  if (ctx_ == nullptr) throw std::logic_error("unbound Scalar");
  return *ctx_;
}

bool Scalar::is_zero() const {
  const PairingContext& c = context();
  if (c.is_debug()) return limbs_[0] == 0;
  return cv::fr_is_zero(limbs_);
}

namespace {
const PairingContext& same_ctx(const Scalar& a, const Scalar& b) {
  const PairingContext& c = a.context();
  if (&c != &b.context()) throw Error(Errc::kContextMismatch, "scalars from different contexts");
  return c;
}
}  // namespace

Scalar Scalar::operator+(const Scalar& rhs) const {
  const PairingContext& c = same_ctx(*this, rhs);
  if (c.is_debug()) return Access::make_small(&c, mod_add(limbs_[0], rhs.limbs_[0], Access::debug_p(c)));
  return Access::make_scalar(&c, cv::fr_add(limbs_, rhs.limbs_));
}

Scalar Scalar::operator-(const Scalar& rhs) const {
  const PairingContext& c = same_ctx(*this, rhs);
  if (c.is_debug()) return Access::make_small(&c, mod_sub(limbs_[0], rhs.limbs_[0], Access::debug_p(c)));
  return Access::make_scalar(&c, cv::fr_sub(limbs_, rhs.limbs_));
}

Scalar Scalar::operator*(const Scalar& rhs) const {
  const PairingContext& c = same_ctx(*this, rhs);
  if (c.is_debug()) return Access::make_small(&c, mod_mul(limbs_[0], rhs.limbs_[0], Access::debug_p(c)));
  return Access::make_scalar(&c, cv::fr_mul(limbs_, rhs.limbs_));
}

Scalar Scalar::operator-() const {
  const PairingContext& c = context();
  if (c.is_debug()) return Access::make_small(&c, mod_sub(0, limbs_[0], Access::debug_p(c)));
  return Access::make_scalar(&c, cv::fr_neg(limbs_));
}

Scalar Scalar::inverse() const {
  const PairingContext& c = context();
  if (is_zero()) throw std::domain_error("inverse of zero scalar");
  if (c.is_debug()) {
    const std::uint64_t p = Access::debug_p(c);
    return Access::make_small(&c, mod_pow(limbs_[0], p - 2, p));
  }
  return Access::make_scalar(&c, cv::fr_inv(limbs_));
}

bool operator==(const Scalar& a, const Scalar& b) {
  return a.ctx_ == b.ctx_ && a.limbs_ == b.limbs_;
}

std::uint64_t Scalar::to_u64() const {
  const PairingContext& c = context();
  if (c.is_debug()) return limbs_[0];
  const auto canon = cv::fr_to_canonical(limbs_);
  if ((canon[1] | canon[2] | canon[3]) != 0) throw std::out_of_range("scalar exceeds 64 bits");
  return canon[0];
}

std::optional<std::int64_t> Scalar::to_small_signed() const {
  constexpr std::uint64_t kLimit = std::uint64_t{1} << 62;
  auto small = [](const Scalar& s) -> std::optional<std::uint64_t> {
    const PairingContext& c = s.context();
    if (c.is_debug()) return s.limbs_[0];
    const auto canon = cv::fr_to_canonical(s.limbs_);
    if ((canon[1] | canon[2] | canon[3]) != 0) return std::nullopt;
    return canon[0];
  };
  const auto pos = small(*this);
  const auto neg = small(-*this);
  if (pos && *pos < kLimit && (!neg || *pos <= *neg)) return static_cast<std::int64_t>(*pos);
  if (neg && *neg < kLimit) return -static_cast<std::int64_t>(*neg);
  return std::nullopt;
}

std::string Scalar::to_string() const {
  const PairingContext& c = context();
  if (c.is_debug()) return std::to_string(limbs_[0]);
  return u256_to_decimal(cv::fr_to_canonical(limbs_));
}

// ------------------------------------------------------------ group elem

const PairingContext& GroupElem::context() const {
  if (ctx_ == nullptr) throw std::logic_error("unbound GroupElem");
  return *ctx_;
}

GroupElem GroupElem::operator*(const GroupElem& rhs) const { return context().combine(*this, rhs); }
GroupElem GroupElem::pow(const Scalar& k) const { return context().exp(*this, k); }
GroupElem GroupElem::inverse() const { return context().invert(*this); }

bool operator==(const GroupElem& a, const GroupElem& b) {
  if (a.ctx_ == nullptr || b.ctx_ == nullptr) return a.ctx_ == b.ctx_;
  return a.ctx_->eq(a, b);
}

// --------------------------------------------------------------- context

PairingContext::PairingContext(Backend backend, std::uint64_t p) : backend_(backend), p_(p) {
  if (backend_ == Backend::kDebugExponent) {
    backend_id_ = "debug:" + std::to_string(p_);
    order_string_ = std::to_string(p_);
    for (Role role : {Role::kKey, Role::kCipher, Role::kTarget}) {
      const auto i = static_cast<std::size_t>(role);
      generators_[i] = Access::make_elem(this, role, std::uint64_t{1});
      identities_[i] = Access::make_elem(this, role, std::uint64_t{0});
    }
  } else {
    backend_id_ = "curve:" + std::string(kCurveBls12_381);
    order_string_ = cv::kOrderDecimal;
    generators_[0] = Access::make_elem(this, Role::kKey, cv::g2_generator());
    generators_[1] = Access::make_elem(this, Role::kCipher, cv::g1_generator());
    generators_[2] = Access::make_elem(this, Role::kTarget, cv::gt_generator());
    identities_[0] = Access::make_elem(this, Role::kKey, cv::g2_identity());
    identities_[1] = Access::make_elem(this, Role::kCipher, cv::g1_identity());
    identities_[2] = Access::make_elem(this, Role::kTarget, cv::gt_identity());
  }
}

const PairingContext& PairingContext::debug(std::uint64_t p) {
  if (!is_prime_u64(p)) throw Error(Errc::kNonPrime, std::to_string(p) + " is not prime");
  if (p < 13) throw Error(Errc::kBackendUnsupported, "debug prime must be at least 13");
  if (p >= (std::uint64_t{1} << 63)) throw Error(Errc::kBackendUnsupported, "debug prime must be below 2^63");
  static std::mutex mu;
  static std::map<std::uint64_t, std::unique_ptr<PairingContext>> interned;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = interned[p];
  if (!slot) slot.reset(new PairingContext(Backend::kDebugExponent, p));
  return *slot;
}

const PairingContext& PairingContext::curve(std::string_view curve_id) {
  if (curve_id != kCurveBls12_381) throw Error(Errc::kUnknownCurve, "unknown curve '" + std::string(curve_id) + "'");
  static const PairingContext* const instance = new PairingContext(Backend::kCurve, 0);
  return *instance;
}

const PairingContext& PairingContext::from_backend_id(std::string_view id) {
  if (id.starts_with("curve:")) return curve(id.substr(6));
  if (id.starts_with("debug:")) {
    const std::string_view digits = id.substr(6);
    std::uint64_t p = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec == std::errc{} && ptr == digits.data() + digits.size() && !digits.empty()) return debug(p);
  }
  throw Error(Errc::kBackendUnsupported, "unknown backend id '" + std::string(id) + "'");
}

std::uint64_t PairingContext::debug_order() const {
  require_debug("debug_order");
  return p_;
}

void PairingContext::require_debug(std::string_view op) const {
  if (!is_debug()) throw Error(Errc::kBackendUnsupported, std::string(op) + " requires the debug backend");
}

void PairingContext::check_scalar(const Scalar& s) const {
  if (Access::ctx(s) != this) throw Error(Errc::kContextMismatch, "scalar from another context");
}

void PairingContext::check_elem(const GroupElem& x) const {
  if (Access::ctx(x) != this) throw Error(Errc::kContextMismatch, "group element from another context");
}

const GroupElem& PairingContext::generator(Role role) const { return generators_[static_cast<std::size_t>(role)]; }
const GroupElem& PairingContext::identity(Role role) const { return identities_[static_cast<std::size_t>(role)]; }

Scalar PairingContext::scalar(std::int64_t value) const {
  const Scalar magnitude = scalar_from_u64(value < 0 ? 0 - static_cast<std::uint64_t>(value)
                                                    : static_cast<std::uint64_t>(value));
  return value < 0 ? -magnitude : magnitude;
}

Scalar PairingContext::scalar_from_u64(std::uint64_t value) const {
  if (is_debug()) return Access::make_small(this, value % p_);
  return Access::make_scalar(this, cv::fr_from_u64(value));
}

Scalar PairingContext::random_scalar(Rng& rng, bool nonzero) const {
  if (is_debug()) {
    return Access::make_small(this, nonzero ? 1 + rng.uniform(p_ - 1) : rng.uniform(p_));
  }
  return Access::make_scalar(this, cv::fr_random(rng, nonzero));
}

std::size_t PairingContext::scalar_size() const noexcept {
  return is_debug() ? kDebugBytes : cv::kScalarBytes;
}

std::vector<std::uint8_t> PairingContext::scalar_bytes(const Scalar& s) const {
  check_scalar(s);
  if (is_debug()) {
    std::vector<std::uint8_t> out(kDebugBytes);
    put_be64(Access::limbs(s)[0], out.data());
    return out;
  }
  const auto bytes = cv::fr_to_bytes(Access::limbs(s));
  return {bytes.begin(), bytes.end()};
}

Scalar PairingContext::decode_scalar(std::span<const std::uint8_t> bytes) const {
  if (bytes.size() != scalar_size()) throw Error(Errc::kCorruptField, "scalar has wrong length");
  if (is_debug()) {
    const std::uint64_t v = get_be64(bytes.data());
    if (v >= p_) throw Error(Errc::kCorruptField, "scalar not reduced modulo p");
    return Access::make_small(this, v);
  }
  const auto fr = cv::fr_from_bytes(bytes);
  if (!fr) throw Error(Errc::kCorruptField, "scalar not reduced modulo r");
  return Access::make_scalar(this, *fr);
}

GroupElem PairingContext::exp(const GroupElem& base, const Scalar& k) const {
  check_elem(base);
  check_scalar(k);
  const auto& r = Access::repr(base);
  const auto& kl = Access::limbs(k);
  if (is_debug()) return Access::make_elem(this, base.role(), mod_mul(std::get<std::uint64_t>(r), kl[0], p_));
  switch (base.role()) {
    case Role::kKey: return Access::make_elem(this, Role::kKey, cv::g2_mul(std::get<cv::G2>(r), kl));
    case Role::kCipher: return Access::make_elem(this, Role::kCipher, cv::g1_mul(std::get<cv::G1>(r), kl));
    case Role::kTarget: return Access::make_elem(this, Role::kTarget, cv::gt_pow(std::get<cv::Gt>(r), kl));
  }
  throw std::logic_error("bad role");
}

GroupElem PairingContext::combine(const GroupElem& x, const GroupElem& y) const {
  check_elem(x);
  check_elem(y);
  if (x.role() != y.role()) {
    throw Error(Errc::kRoleMismatch, "cannot combine " + std::string(role_name(x.role())) + " with " +
                                         std::string(role_name(y.role())));
  }
  const auto& a = Access::repr(x);
  const auto& b = Access::repr(y);
  if (is_debug())
    return Access::make_elem(this, x.role(), mod_add(std::get<std::uint64_t>(a), std::get<std::uint64_t>(b), p_));
  switch (x.role()) {
    case Role::kKey: return Access::make_elem(this, Role::kKey, cv::g2_add(std::get<cv::G2>(a), std::get<cv::G2>(b)));
    case Role::kCipher:
      return Access::make_elem(this, Role::kCipher, cv::g1_add(std::get<cv::G1>(a), std::get<cv::G1>(b)));
    case Role::kTarget:
      return Access::make_elem(this, Role::kTarget, cv::gt_mul(std::get<cv::Gt>(a), std::get<cv::Gt>(b)));
  }
  throw std::logic_error("bad role");
}

GroupElem PairingContext::invert(const GroupElem& x) const {
  check_elem(x);
  const auto& a = Access::repr(x);
  if (is_debug()) return Access::make_elem(this, x.role(), mod_sub(0, std::get<std::uint64_t>(a), p_));
  switch (x.role()) {
    case Role::kKey: return Access::make_elem(this, Role::kKey, cv::g2_neg(std::get<cv::G2>(a)));
    case Role::kCipher: return Access::make_elem(this, Role::kCipher, cv::g1_neg(std::get<cv::G1>(a)));
    case Role::kTarget: return Access::make_elem(this, Role::kTarget, cv::gt_inv(std::get<cv::Gt>(a)));
  }
  throw std::logic_error("bad role");
}

bool PairingContext::eq(const GroupElem& x, const GroupElem& y) const {
  check_elem(x);
  check_elem(y);
  if (x.role() != y.role()) throw Error(Errc::kRoleMismatch, "cannot compare elements of different roles");
  const auto& a = Access::repr(x);
  const auto& b = Access::repr(y);
  if (is_debug()) return std::get<std::uint64_t>(a) == std::get<std::uint64_t>(b);
  switch (x.role()) {
    case Role::kKey: return cv::g2_eq(std::get<cv::G2>(a), std::get<cv::G2>(b));
    case Role::kCipher: return cv::g1_eq(std::get<cv::G1>(a), std::get<cv::G1>(b));
    case Role::kTarget: return cv::gt_eq(std::get<cv::Gt>(a), std::get<cv::Gt>(b));
  }
  return false;
}

GroupElem PairingContext::random_element(Role role, Rng& rng) const {
  return exp(generator(role), random_scalar(rng));
}

GroupElem PairingContext::pair(const GroupElem& key, const GroupElem& cipher) const {
  return pair_product(std::span<const GroupElem>(&key, 1), std::span<const GroupElem>(&cipher, 1));
}

GroupElem PairingContext::pair_product(std::span<const GroupElem> keys, std::span<const GroupElem> ciphers) const {
  if (keys.size() != ciphers.size()) throw std::invalid_argument("pair_product: length mismatch");
  for (std::size_t i = 0; i < keys.size(); ++i) {
    check_elem(keys[i]);
    check_elem(ciphers[i]);
    if (keys[i].role() != Role::kKey || ciphers[i].role() != Role::kCipher)
      throw Error(Errc::kRoleMismatch, "pair expects (KEY, CIPHER) arguments");
  }
  PairingCounter::record(keys.size());
  if (is_debug()) {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < keys.size(); ++i) {
      acc = mod_add(acc,
                    mod_mul(std::get<std::uint64_t>(Access::repr(keys[i])),
                            std::get<std::uint64_t>(Access::repr(ciphers[i])), p_),
                    p_);
    }
    return Access::make_elem(this, Role::kTarget, acc);
  }
  std::vector<cv::G2> qs;
  std::vector<cv::G1> ps;
  qs.reserve(keys.size());
  ps.reserve(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    qs.push_back(std::get<cv::G2>(Access::repr(keys[i])));
    ps.push_back(std::get<cv::G1>(Access::repr(ciphers[i])));
  }
  return Access::make_elem(this, Role::kTarget, cv::pairing_product(qs, ps));
}

std::size_t PairingContext::element_size(Role role) const noexcept {
  if (is_debug()) return kDebugBytes;
  switch (role) {
    case Role::kKey: return cv::kG2Bytes;
    case Role::kCipher: return cv::kG1Bytes;
    case Role::kTarget: return cv::kGtBytes;
  }
  return 0;
}

std::vector<std::uint8_t> PairingContext::canonical_bytes(const GroupElem& x) const {
  check_elem(x);
  const auto& a = Access::repr(x);
  if (is_debug()) {
    std::vector<std::uint8_t> out(kDebugBytes);
    put_be64(std::get<std::uint64_t>(a), out.data());
    return out;
  }
  switch (x.role()) {
    case Role::kKey: return cv::g2_encode(std::get<cv::G2>(a));
    case Role::kCipher: return cv::g1_encode(std::get<cv::G1>(a));
    case Role::kTarget: return cv::gt_encode(std::get<cv::Gt>(a));
  }
  return {};
}

GroupElem PairingContext::decode(Role role, std::span<const std::uint8_t> bytes) const {
  const std::string what = std::string(role_name(role)) + " element";
  if (bytes.size() != element_size(role)) throw Error(Errc::kCorruptField, what + " has wrong length");
  if (is_debug()) {
    const std::uint64_t v = get_be64(bytes.data());
    if (v >= p_) throw Error(Errc::kCorruptField, what + " not reduced modulo p");
    return Access::make_elem(this, role, v);
  }
  switch (role) {
    case Role::kKey:
      if (auto q = cv::g2_decode(bytes)) return Access::make_elem(this, role, *q);
      break;
    case Role::kCipher:
      if (auto p = cv::g1_decode(bytes)) return Access::make_elem(this, role, *p);
      break;
    case Role::kTarget:
      if (auto f = cv::gt_decode(bytes)) return Access::make_elem(this, role, *f);
      break;
  }
  throw Error(Errc::kCorruptField, what + " is not a valid group encoding");
}

Scalar PairingContext::debug_log(const GroupElem& x) const {
  require_debug("debug_log");
  check_elem(x);
  return Access::make_small(this, std::get<std::uint64_t>(Access::repr(x)));
}

GroupElem PairingContext::debug_element(Role role, const Scalar& log) const {
  require_debug("debug_element");
  check_scalar(log);
  return Access::make_elem(this, role, Access::limbs(log)[0]);
}

GroupElem PairingContext::debug_recast(const GroupElem& x, Role role) const {
  require_debug("debug_recast");
  check_elem(x);
  if (x.role() == Role::kTarget || role == Role::kTarget)
    throw Error(Errc::kRoleMismatch, "only KEY and CIPHER elements may be recast");
  return Access::make_elem(this, role, Access::repr(x));
}

}  // namespace makpabe::groups

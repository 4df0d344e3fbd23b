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

#ifndef MAKPABE_ERRORS_HPP
#define MAKPABE_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace makpabe {

enum class Errc {
  kNonPrime,
  kUnknownCurve,
  kRoleMismatch,
  kContextMismatch,
  kBackendUnsupported,
  kMalformedPolicy,
  kUnknownAttribute,
  kThresholdOutOfRange,
  kDuplicateAttribute,
  kUnauthorized,
  kAuthorized,
  kIndexOutOfRange,
  kEmptyAuthoritySet,
  kEmptyAttributeSet,
  kDuplicateAuthority,
  kMissingAuthorityKey,
  kNotAuthorized,
  kUnknownVersion,
  kCorruptField,
  kBackendMismatch,
  kUniverseMismatch,
  kAuthenticationFailed,
  kInsecureBackend,
  kHonestAuthorityRefusal,
  kProtocolViolation,
  kLengthMismatch,
  kIo,
};

// Stable identifier used in machine-readable CLI errors ("NotAuthorized").
std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Raised by the policy parser; offset is a 0-based byte offset into the input.
class PolicySyntaxError : public Error {
 public:
  PolicySyntaxError(std::size_t offset, const std::string& message)
      : Error(Errc::kMalformedPolicy,
              message + " at offset " + std::to_string(offset)),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class NotAuthorizedError : public Error {
 public:
  explicit NotAuthorizedError(std::string authority_id)
      : Error(Errc::kNotAuthorized,
              "key of authority '" + authority_id +
                  "' does not authorize the ciphertext attributes"),
        authority_id_(std::move(authority_id)) {}

  const std::string& authority_id() const noexcept { return authority_id_; }

 private:
  std::string authority_id_;
};

}  // namespace makpabe

#endif  // MAKPABE_ERRORS_HPP

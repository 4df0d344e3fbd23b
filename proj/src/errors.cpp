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

#include "makpabe/errors.hpp"

namespace makpabe {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::kNonPrime: return "NonPrime";
    case Errc::kUnknownCurve: return "UnknownCurve";
    case Errc::kRoleMismatch: return "RoleMismatch";
    case Errc::kContextMismatch: return "ContextMismatch";
    case Errc::kBackendUnsupported: return "BackendUnsupported";
    case Errc::kMalformedPolicy: return "Malformed";
    case Errc::kUnknownAttribute: return "UnknownAttribute";
    case Errc::kThresholdOutOfRange: return "ThresholdOutOfRange";
    case Errc::kDuplicateAttribute: return "DuplicateAttribute";
    case Errc::kUnauthorized: return "Unauthorized";
    case Errc::kAuthorized: return "Authorized";
    case Errc::kIndexOutOfRange: return "IndexOutOfRange";
    case Errc::kEmptyAuthoritySet: return "EmptyAuthoritySet";
    case Errc::kEmptyAttributeSet: return "EmptyAttributeSet";
    case Errc::kDuplicateAuthority: return "DuplicateAuthority";
    case Errc::kMissingAuthorityKey: return "MissingAuthorityKey";
    case Errc::kNotAuthorized: return "NotAuthorized";
    case Errc::kUnknownVersion: return "UnknownVersion";
    case Errc::kCorruptField: return "CorruptField";
    case Errc::kBackendMismatch: return "BackendMismatch";
    case Errc::kUniverseMismatch: return "UniverseMismatch";
    case Errc::kAuthenticationFailed: return "AuthenticationFailed";
    case Errc::kInsecureBackend: return "InsecureBackend";
    case Errc::kHonestAuthorityRefusal: return "HonestAuthorityRefusal";
    case Errc::kProtocolViolation: return "ProtocolViolation";
    case Errc::kLengthMismatch: return "LengthMismatch";
    case Errc::kIo: return "Io";
  }
  return "Unknown";
}

}  // namespace makpabe

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

#ifndef MAKPABE_SERIALIZE_HPP
#define MAKPABE_SERIALIZE_HPP

#include <string>
#include <string_view>

#include "makpabe/scheme.hpp"

namespace makpabe::toolkit {

inline constexpr int kFormatVersion = 1;

enum class ArtifactKind { kAuthorityPublic, kAuthorityMaster, kUserKey, kCiphertext };

std::string_view artifact_kind_name(ArtifactKind kind) noexcept;

// Key and ciphertext files are canonical JSON (sorted keys, no whitespace)
// with base64url binary fields, an explicit version, the backend id, the
// attribute universe and a BLAKE2b checksum over the rest of the object.
//
// Decoding against expected parameters raises UnknownVersion, BackendMismatch,
// UniverseMismatch or CorruptField.

// Every file records "production": true only for the curve backend. A file
// claiming production on the debug backend is refused with InsecureBackend.

std::string encode_public_key(const scheme::GlobalParams& gp, const scheme::AuthorityPublicKey& pk);
std::string encode_master_key(const scheme::GlobalParams& gp, const scheme::AuthorityMasterKey& mk);
std::string encode_user_key(const scheme::GlobalParams& gp, const scheme::UserKey& key);
std::string encode_ciphertext(const scheme::GlobalParams& gp, const scheme::Ciphertext& ct);

scheme::AuthorityPublicKey decode_public_key(std::string_view text, const scheme::GlobalParams& gp);
scheme::AuthorityMasterKey decode_master_key(std::string_view text, const scheme::GlobalParams& gp);
scheme::UserKey decode_user_key(std::string_view text, const scheme::GlobalParams& gp);
scheme::Ciphertext decode_ciphertext(std::string_view text, const scheme::GlobalParams& gp);

// Artifact kind and the parameters recorded in a file, without decoding the
// payload against anything.
struct FileHeader {
  ArtifactKind kind;
  scheme::GlobalParams params;
};
FileHeader read_file_header(std::string_view text);

}  // namespace makpabe::toolkit

#endif  // MAKPABE_SERIALIZE_HPP

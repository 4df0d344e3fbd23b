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

#include <sodium.h>

#include <fstream>
#include <sstream>

#include "makpabe/errors.hpp"
#include "makpabe/policy.hpp"
#include "makpabe/rng.hpp"

namespace makpabe::policy {

namespace {

bool is_reserved(std::string_view name) { return name == "and" || name == "or" || name == "of"; }

void validate_name(const std::string& name, std::size_t line) {
  const std::string where = "universe line " + std::to_string(line + 1);
  if (name.empty()) throw Error(Errc::kCorruptField, where + ": empty attribute name");
  for (const char c : name) {
    if (c == ' ' || c == '\t' || c == '(' || c == ')' || c == ',' || c == '\n' || c == '\r')
      throw Error(Errc::kCorruptField, where + ": attribute '" + name + "' contains a reserved character");
  }
  if (is_reserved(name)) throw Error(Errc::kCorruptField, where + ": '" + name + "' is a policy keyword");
}

}  // namespace

AttributeUniverse AttributeUniverse::from_names(std::vector<std::string> names) {
  AttributeUniverse u;
  for (std::size_t i = 0; i < names.size(); ++i) {
    validate_name(names[i], i);
    const auto [it, inserted] = u.index_.emplace(names[i], static_cast<AttributeIndex>(i));
    if (!inserted) throw Error(Errc::kDuplicateAttribute, "duplicate attribute '" + names[i] + "'");
  }
  u.names_ = std::move(names);
  return u;
}

AttributeUniverse AttributeUniverse::parse(std::string_view text) {
  if (text.ends_with('\n')) text.remove_suffix(1);
  std::vector<std::string> names;
  if (text.empty()) return from_names(std::move(names));
  std::size_t start = 0;
  for (;;) {
    const std::size_t end = text.find('\n', start);
    std::string_view line = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    if (line.ends_with('\r')) line.remove_suffix(1);
    names.emplace_back(line);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return from_names(std::move(names));
}

AttributeUniverse AttributeUniverse::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kIo, "cannot read universe file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

const std::string& AttributeUniverse::name(AttributeIndex index) const {
  if (index >= names_.size()) throw Error(Errc::kUnknownAttribute, "attribute index " + std::to_string(index) + " outside universe");
  return names_[index];
}

std::optional<AttributeIndex> AttributeUniverse::find(std::string_view name) const {
  const auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

AttributeIndex AttributeUniverse::index_of(std::string_view name) const {
  if (auto idx = find(name)) return *idx;
  throw Error(Errc::kUnknownAttribute, "unknown attribute '" + std::string(name) + "'");
}

AttributeSet AttributeUniverse::parse_set(std::string_view list) const {
  AttributeSet out;
  std::size_t start = 0;
  while (start <= list.size()) {
    const std::size_t end = std::min(list.find(',', start), list.size());
    std::string_view item = list.substr(start, end - start);
    while (!item.empty() && (item.front() == ' ' || item.front() == '\t')) item.remove_prefix(1);
    while (!item.empty() && (item.back() == ' ' || item.back() == '\t')) item.remove_suffix(1);
    if (!item.empty()) out.insert(index_of(item));
    start = end + 1;
  }
  return out;
}

std::vector<std::string> AttributeUniverse::names_of(const AttributeSet& set) const {
  std::vector<std::string> out;
  out.reserve(set.size());
  for (const AttributeIndex i : set) out.push_back(name(i));
  return out;
}

AttributeSet AttributeUniverse::all() const {
  AttributeSet out;
  for (std::size_t i = 0; i < names_.size(); ++i) out.insert(static_cast<AttributeIndex>(i));
  return out;
}

std::string AttributeUniverse::hash_hex() const {
  ensure_sodium();
  crypto_generichash_state st;
  crypto_generichash_init(&st, reinterpret_cast<const unsigned char*>("makpabe-universe"), 16, 32);
  for (const auto& n : names_) {
    crypto_generichash_update(&st, reinterpret_cast<const unsigned char*>(n.data()), n.size());
    const unsigned char sep = '\n';
    crypto_generichash_update(&st, &sep, 1);
  }
  unsigned char digest[32];
  crypto_generichash_final(&st, digest, sizeof(digest));
  char hex[65];
  sodium_bin2hex(hex, sizeof(hex), digest, sizeof(digest));
  return hex;
}

}  // namespace makpabe::policy

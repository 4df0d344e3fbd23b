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

#ifndef MAKPABE_POLICY_HPP
#define MAKPABE_POLICY_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace makpabe::groups {
class PairingContext;
}
namespace makpabe::lsss {
class AccessMatrix;
}

namespace makpabe::policy {

// Position of an attribute in its universe file (line number - 1).
using AttributeIndex = std::uint32_t;
using AttributeSet = std::set<AttributeIndex>;

// Small attribute universe shared by every authority. Names are unique,
// non-empty, free of whitespace, parentheses and commas, and are not one of
// the policy keywords.
class AttributeUniverse {
 public:
  AttributeUniverse() = default;
  static AttributeUniverse from_names(std::vector<std::string> names);
  // One attribute per line; a single trailing newline is allowed.
  static AttributeUniverse parse(std::string_view text);
  static AttributeUniverse load(const std::filesystem::path& path);

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(AttributeIndex index) const;
  std::optional<AttributeIndex> find(std::string_view name) const;
  AttributeIndex index_of(std::string_view name) const;  // throws UnknownAttribute

  // Comma-separated names, e.g. "A,B,C".
  AttributeSet parse_set(std::string_view list) const;
  std::vector<std::string> names_of(const AttributeSet& set) const;
  AttributeSet all() const;

  // Hex BLAKE2b-256 over the names in order; binds files to this table.
  std::string hash_hex() const;

  friend bool operator==(const AttributeUniverse& a, const AttributeUniverse& b) {
    return a.names_ == b.names_;
  }

 private:
  std::vector<std::string> names_;
  std::map<std::string, AttributeIndex, std::less<>> index_;
};

// Monotone access tree. A node with no children is a leaf; otherwise it is a
// threshold gate with 1 <= threshold <= children.size(). AND is n-of-n and OR
// is 1-of-n.
struct PolicyNode {
  AttributeIndex attribute = 0;
  std::size_t threshold = 0;
  std::vector<PolicyNode> children;

  static PolicyNode leaf(AttributeIndex attribute);
  static PolicyNode gate(std::size_t threshold, std::vector<PolicyNode> children);
  static PolicyNode all_of(std::vector<PolicyNode> children);
  static PolicyNode any_of(std::vector<PolicyNode> children);

  bool is_leaf() const noexcept { return children.empty(); }
  std::size_t leaf_count() const noexcept;
  std::size_t depth() const noexcept;

  friend bool operator==(const PolicyNode&, const PolicyNode&) = default;
};

// Grammar (whitespace-insensitive, "and" binds tighter than "or"):
//   expr   := term { "or" term }
//   term   := factor { "and" factor }
//   factor := NAME | INT "of" "(" expr { "," expr } ")" | "(" expr ")"
PolicyNode parse_policy(std::string_view text, const AttributeUniverse& universe);

// Inverse of parse_policy on ASTs: parse_policy(to_string(n, u), u) == n.
std::string to_string(const PolicyNode& node, const AttributeUniverse& universe);

bool evaluate(const PolicyNode& node, const AttributeSet& attributes);

// Compiles the tree to a share-generating matrix. OR gates copy the parent
// vector, n-of-n gates split it with +1/-1 columns, and 1 < t < n gates append
// Vandermonde columns (x, x^2, ..., x^(t-1)) at x = 1..n. The target vector
// (1, 0, ..., 0) is in the span of the rows labelled by S iff evaluate(S).
lsss::AccessMatrix to_lsss(const PolicyNode& node, const groups::PairingContext& ctx);

}  // namespace makpabe::policy

#endif  // MAKPABE_POLICY_HPP

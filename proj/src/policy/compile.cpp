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
#include "makpabe/groups.hpp"
#include "makpabe/lsss.hpp"
#include "makpabe/policy.hpp"

namespace makpabe::policy {

namespace {

using groups::Scalar;
using groups::ScalarVector;

// Vectors grow as gates append columns; rows are zero-padded at the end.
struct Compiler {
  const groups::PairingContext& ctx;
  std::size_t width = 1;
  std::vector<ScalarVector> rows;
  std::vector<AttributeIndex> rho;

  ScalarVector widened(ScalarVector v) const {
    v.resize(width, ctx.scalar(0));
    return v;
  }

  void visit(const PolicyNode& node, const ScalarVector& v) {
    if (node.is_leaf()) {
      rows.push_back(v);
      rho.push_back(node.attribute);
      return;
    }
    const std::size_t n = node.children.size();
    const std::size_t t = node.threshold;
    if (t == 1) {
      for (const auto& child : node.children) visit(child, v);
      return;
    }
    // x_j = 1..n must be distinct and nonzero mod p.
    if (ctx.is_debug() && n >= ctx.debug_order())
      throw Error(Errc::kThresholdOutOfRange, "gate fan-in exceeds the field size");
    const std::size_t base = width;
    if (t == n) {
      width += n - 1;
      ScalarVector first = widened(v);
      for (std::size_t k = 0; k + 1 < n; ++k) first[base + k] = ctx.scalar(1);
      visit(node.children[0], first);
      for (std::size_t j = 1; j < n; ++j) {
        ScalarVector split(width, ctx.scalar(0));
        split[base + j - 1] = ctx.scalar(-1);
        visit(node.children[j], split);
      }
      return;
    }
    width += t - 1;
    for (std::size_t j = 0; j < n; ++j) {
      ScalarVector child = widened(v);
      const Scalar x = ctx.scalar_from_u64(j + 1);
      Scalar power = x;
      for (std::size_t k = 0; k + 1 < t; ++k) {
        child[base + k] = power;
        power *= x;
      }
      visit(node.children[j], child);
    }
  }
};

}  // namespace

lsss::AccessMatrix to_lsss(const PolicyNode& node, const groups::PairingContext& ctx) {
  Compiler c{ctx, 1, {}, {}};
  c.visit(node, ScalarVector{ctx.scalar(1)});
  for (auto& row : c.rows) row.resize(c.width, ctx.scalar(0));
  return lsss::AccessMatrix(ctx, c.width, std::move(c.rows), std::move(c.rho));
}

}  // namespace makpabe::policy

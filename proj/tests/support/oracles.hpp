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

// Independent reference computations for the tests. Nothing here calls the
// library's solver.

#ifndef MAKPABE_TESTS_ORACLES_HPP
#define MAKPABE_TESTS_ORACLES_HPP

#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "makpabe/lsss.hpp"
#include "makpabe/policy.hpp"

namespace oracle {

using makpabe::policy::AttributeIndex;
using makpabe::policy::AttributeSet;
using makpabe::policy::PolicyNode;

// Brute force over every coefficient vector in Z_p^k: is (1,0,...,0) a
// combination of the rows labelled in s? Only sensible for tiny p and k.
inline bool span_contains_target(const makpabe::lsss::AccessMatrix& m, const AttributeSet& s, std::uint64_t p) {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (s.contains(m.label(i))) rows.push_back(i);
  }
  std::vector<std::uint64_t> w(rows.size(), 0);
  for (;;) {
    bool hit = true;
    for (std::size_t j = 0; j < m.cols() && hit; ++j) {
      std::uint64_t acc = 0;
      for (std::size_t r = 0; r < rows.size(); ++r) acc = (acc + w[r] * m.at(rows[r], j).to_u64()) % p;
      hit = acc == (j == 0 ? 1U : 0U);
    }
    if (hit && !rows.empty()) return true;
    std::size_t k = 0;
    while (k < w.size() && ++w[k] == p) w[k++] = 0;
    if (k == w.size()) return false;
  }
}

inline AttributeSet subset_from_mask(std::uint64_t mask) {
  AttributeSet s;
  for (AttributeIndex i = 0; i < 64; ++i) {
    if ((mask >> i) & 1U) s.insert(i);
  }
  return s;
}

// Depth <= 2: every leaf, AND/OR over unordered pairs of distinct leaves and
// 2-of-3 over leaf triples. With depth3 set, AND/OR over unordered pairs of
// those are appended.
inline std::vector<PolicyNode> enumerate_policies(std::size_t n, bool depth3) {
  std::vector<PolicyNode> base;
  for (AttributeIndex i = 0; i < n; ++i) base.push_back(PolicyNode::leaf(i));
  for (AttributeIndex i = 0; i < n; ++i) {
    for (AttributeIndex j = i + 1; j < n; ++j) {
      base.push_back(PolicyNode::all_of({PolicyNode::leaf(i), PolicyNode::leaf(j)}));
      base.push_back(PolicyNode::any_of({PolicyNode::leaf(i), PolicyNode::leaf(j)}));
    }
  }
  for (AttributeIndex i = 0; i < n; ++i) {
    for (AttributeIndex j = i + 1; j < n; ++j) {
      for (AttributeIndex k = j + 1; k < n; ++k)
        base.push_back(PolicyNode::gate(2, {PolicyNode::leaf(i), PolicyNode::leaf(j), PolicyNode::leaf(k)}));
    }
  }
  if (!depth3) return base;
  std::vector<PolicyNode> out = base;
  for (std::size_t a = 0; a < base.size(); ++a) {
    for (std::size_t b = a + 1; b < base.size(); ++b) {
      out.push_back(PolicyNode::all_of({base[a], base[b]}));
      out.push_back(PolicyNode::any_of({base[a], base[b]}));
    }
  }
  return out;
}

// Pearson statistic against a uniform distribution over counts.size() cells.
inline double chi_square_uniform(const std::vector<std::size_t>& counts) {
  double total = 0;
  for (auto c : counts) total += static_cast<double>(c);
  const double expected = total / static_cast<double>(counts.size());
  double chi = 0;
  for (auto c : counts) chi += (static_cast<double>(c) - expected) * (static_cast<double>(c) - expected) / expected;
  return chi;
}

// Upper 1% point of chi-square with 12 degrees of freedom.
inline constexpr double kChiSquare12At99 = 26.217;

}  // namespace oracle

#endif  // MAKPABE_TESTS_ORACLES_HPP

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

#ifndef MAKPABE_LSSS_HPP
#define MAKPABE_LSSS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "makpabe/groups.hpp"
#include "makpabe/policy.hpp"

namespace makpabe::lsss {

using groups::PairingContext;
using groups::Scalar;
using groups::ScalarVector;
using policy::AttributeIndex;
using policy::AttributeSet;

// Share-generating matrix M (l x n over Z_p) with row labelling rho.
class AccessMatrix {
 public:
  AccessMatrix(const PairingContext& ctx, std::size_t cols, std::vector<ScalarVector> rows,
               std::vector<AttributeIndex> rho);
  static AccessMatrix from_integers(const PairingContext& ctx,
                                    const std::vector<std::vector<std::int64_t>>& rows,
                                    std::vector<AttributeIndex> rho);

  const PairingContext& context() const noexcept { return *ctx_; }
  std::size_t rows() const noexcept { return rho_.size(); }
  std::size_t cols() const noexcept { return cols_; }
  std::span<const Scalar> row(std::size_t i) const;
  const Scalar& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  AttributeIndex label(std::size_t i) const { return rho_.at(i); }
  const std::vector<AttributeIndex>& rho() const noexcept { return rho_; }

  // M_i . v
  Scalar row_dot(std::size_t i, std::span<const Scalar> v) const;

  friend bool operator==(const AccessMatrix& a, const AccessMatrix& b) {
    return a.ctx_ == b.ctx_ && a.cols_ == b.cols_ && a.entries_ == b.entries_ && a.rho_ == b.rho_;
  }

 private:
  const PairingContext* ctx_;
  std::size_t cols_;
  ScalarVector entries_;  // row-major
  std::vector<AttributeIndex> rho_;
};

// lambda = M v, with v[0] the shared secret. v is kept so tests and audits can
// check the sharing.
struct ShareVector {
  ScalarVector lambda;
  ScalarVector v;
};

// sum_{k} coeffs[k] * M_{rows[k]} = (1, 0, ..., 0), every rows[k] labelled by S.
struct ReconstructionPlan {
  std::vector<std::size_t> rows;
  ScalarVector coeffs;
};

ShareVector share(const AccessMatrix& am, const Scalar& secret, Rng& rng);
// v.size() must equal am.cols().
ShareVector share_with_vector(const AccessMatrix& am, ScalarVector v);

bool is_authorized(const AccessMatrix& am, const AttributeSet& attributes);

// Gaussian elimination over the S-labelled rows in row order, first-nonzero
// pivoting, free variables zero. Rows with a zero coefficient are dropped.
std::optional<ReconstructionPlan> try_reconstruction_coefficients(const AccessMatrix& am,
                                                                  const AttributeSet& attributes);
ReconstructionPlan reconstruction_coefficients(const AccessMatrix& am, const AttributeSet& attributes);

// y with y[0] = 1 and M_i . y = 0 for every S-labelled row i.
std::optional<ScalarVector> try_blocking_vector(const AccessMatrix& am, const AttributeSet& attributes);
ScalarVector blocking_vector(const AccessMatrix& am, const AttributeSet& attributes);

Scalar apply_plan(const ReconstructionPlan& plan, std::span<const Scalar> lambda);
inline Scalar apply_plan(const ReconstructionPlan& plan, const ShareVector& shares) {
  return apply_plan(plan, shares.lambda);
}

// Solves A x = b over Z_p (A given as rows). Returns the solution with all
// free variables set to zero, or nullopt if the system is inconsistent.
std::optional<ScalarVector> solve_linear_system(std::vector<ScalarVector> a, ScalarVector b,
                                                std::size_t unknowns, const PairingContext& ctx);

}  // namespace makpabe::lsss

#endif  // MAKPABE_LSSS_HPP

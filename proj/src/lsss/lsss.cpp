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

#include "makpabe/lsss.hpp"

#include <stdexcept>

#include "makpabe/errors.hpp"

namespace makpabe::lsss {

AccessMatrix::AccessMatrix(const PairingContext& ctx, std::size_t cols, std::vector<ScalarVector> rows,
                           std::vector<AttributeIndex> rho)
    : ctx_(&ctx), cols_(cols), rho_(std::move(rho)) {
  if (rows.empty() || cols_ == 0) throw std::invalid_argument("AccessMatrix must be at least 1x1");
  if (rows.size() != rho_.size()) throw std::invalid_argument("AccessMatrix: rho length differs from row count");
  entries_.reserve(rows.size() * cols_);
  for (auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("AccessMatrix: ragged rows");
    for (auto& e : r) {
      if (&e.context() != ctx_) throw Error(Errc::kContextMismatch, "AccessMatrix entry from another context");
      entries_.push_back(std::move(e));
    }
  }
}

AccessMatrix AccessMatrix::from_integers(const PairingContext& ctx,
                                         const std::vector<std::vector<std::int64_t>>& rows,
                                         std::vector<AttributeIndex> rho) {
  std::vector<ScalarVector> converted;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (const auto& r : rows) {
    ScalarVector out;
    for (const std::int64_t e : r) out.push_back(ctx.scalar(e));
    converted.push_back(std::move(out));
  }
  return AccessMatrix(ctx, cols, std::move(converted), std::move(rho));
}

std::span<const Scalar> AccessMatrix::row(std::size_t i) const {
  if (i >= rows()) throw Error(Errc::kIndexOutOfRange, "row index out of range");
  return std::span<const Scalar>(entries_).subspan(i * cols_, cols_);
}

Scalar AccessMatrix::row_dot(std::size_t i, std::span<const Scalar> v) const {
  if (v.size() != cols_) throw std::invalid_argument("row_dot: vector length differs from column count");
  const auto r = row(i);
  Scalar acc = ctx_->scalar(0);
  for (std::size_t j = 0; j < cols_; ++j) acc += r[j] * v[j];
  return acc;
}

ShareVector share_with_vector(const AccessMatrix& am, ScalarVector v) {
  if (v.size() != am.cols()) throw std::invalid_argument("share: vector length differs from column count");
  ShareVector out;
  out.lambda.reserve(am.rows());
  for (std::size_t i = 0; i < am.rows(); ++i) out.lambda.push_back(am.row_dot(i, v));
  out.v = std::move(v);
  return out;
}

ShareVector share(const AccessMatrix& am, const Scalar& secret, Rng& rng) {
  ScalarVector v;
  v.reserve(am.cols());
  v.push_back(secret);
  for (std::size_t j = 1; j < am.cols(); ++j) v.push_back(am.context().random_scalar(rng));
  return share_with_vector(am, std::move(v));
}

std::optional<ScalarVector> solve_linear_system(std::vector<ScalarVector> a, ScalarVector b, std::size_t unknowns,
                                                const PairingContext& ctx) {
  const std::size_t m = a.size();
  if (b.size() != m) throw std::invalid_argument("solve_linear_system: rhs length");
  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < unknowns && rank < m; ++col) {
    std::size_t pivot = rank;
    while (pivot < m && a[pivot][col].is_zero()) ++pivot;
    if (pivot == m) continue;
    std::swap(a[pivot], a[rank]);
    std::swap(b[pivot], b[rank]);
    const Scalar inv = a[rank][col].inverse();
    for (std::size_t j = col; j < unknowns; ++j) a[rank][j] *= inv;
    b[rank] *= inv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == rank || a[r][col].is_zero()) continue;
      const Scalar f = a[r][col];
      for (std::size_t j = col; j < unknowns; ++j) a[r][j] -= f * a[rank][j];
      b[r] -= f * b[rank];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  for (std::size_t r = rank; r < m; ++r) {
    if (!b[r].is_zero()) return std::nullopt;
  }
  ScalarVector x(unknowns, ctx.scalar(0));
  for (std::size_t r = 0; r < rank; ++r) x[pivot_col[r]] = b[r];
  return x;
}

namespace {

std::vector<std::size_t> labelled_rows(const AccessMatrix& am, const AttributeSet& attributes) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < am.rows(); ++i) {
    if (attributes.contains(am.label(i))) out.push_back(i);
  }
  return out;
}

}  // namespace

std::optional<ReconstructionPlan> try_reconstruction_coefficients(const AccessMatrix& am,
                                                                  const AttributeSet& attributes) {
  const PairingContext& ctx = am.context();
  const auto rows = labelled_rows(am, attributes);
  if (rows.empty()) return std::nullopt;
  // One equation per column: sum_k w_k M_{rows[k], j} = e1_j.
  std::vector<ScalarVector> a(am.cols(), ScalarVector(rows.size(), ctx.scalar(0)));
  for (std::size_t j = 0; j < am.cols(); ++j) {
    for (std::size_t k = 0; k < rows.size(); ++k) a[j][k] = am.at(rows[k], j);
  }
  ScalarVector b(am.cols(), ctx.scalar(0));
  b[0] = ctx.scalar(1);
  const auto w = solve_linear_system(std::move(a), std::move(b), rows.size(), ctx);
  if (!w) return std::nullopt;
  ReconstructionPlan plan;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if ((*w)[k].is_zero()) continue;
    plan.rows.push_back(rows[k]);
    plan.coeffs.push_back((*w)[k]);
  }
  return plan;
}

ReconstructionPlan reconstruction_coefficients(const AccessMatrix& am, const AttributeSet& attributes) {
  if (auto plan = try_reconstruction_coefficients(am, attributes)) return std::move(*plan);
  throw Error(Errc::kUnauthorized, "attribute set does not satisfy the access matrix");
}

bool is_authorized(const AccessMatrix& am, const AttributeSet& attributes) {
  return try_reconstruction_coefficients(am, attributes).has_value();
}

std::optional<ScalarVector> try_blocking_vector(const AccessMatrix& am, const AttributeSet& attributes) {
  const PairingContext& ctx = am.context();
  const auto rows = labelled_rows(am, attributes);
  std::vector<ScalarVector> a;
  ScalarVector b;
  ScalarVector first(am.cols(), ctx.scalar(0));
  first[0] = ctx.scalar(1);
  a.push_back(std::move(first));
  b.push_back(ctx.scalar(1));
  for (const std::size_t i : rows) {
    const auto r = am.row(i);
    a.emplace_back(r.begin(), r.end());
    b.push_back(ctx.scalar(0));
  }
  return solve_linear_system(std::move(a), std::move(b), am.cols(), ctx);
}

ScalarVector blocking_vector(const AccessMatrix& am, const AttributeSet& attributes) {
  if (auto y = try_blocking_vector(am, attributes)) return std::move(*y);
  throw Error(Errc::kAuthorized, "attribute set is authorized; no blocking vector exists");
}

Scalar apply_plan(const ReconstructionPlan& plan, std::span<const Scalar> lambda) {
  if (plan.rows.size() != plan.coeffs.size()) throw std::invalid_argument("apply_plan: malformed plan");
  if (lambda.empty()) throw Error(Errc::kIndexOutOfRange, "apply_plan: empty share vector");
  Scalar acc = lambda.front().context().scalar(0);
  for (std::size_t k = 0; k < plan.rows.size(); ++k) {
    if (plan.rows[k] >= lambda.size()) throw Error(Errc::kIndexOutOfRange, "apply_plan: row index out of range");
    acc += plan.coeffs[k] * lambda[plan.rows[k]];
  }
  return acc;
}

}  // namespace makpabe::lsss

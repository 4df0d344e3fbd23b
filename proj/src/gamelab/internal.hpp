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

#ifndef MAKPABE_GAMELAB_INTERNAL_HPP
#define MAKPABE_GAMELAB_INTERNAL_HPP

#include <vector>

#include "makpabe/policy.hpp"
#include "makpabe/rng.hpp"

namespace makpabe::gamelab::detail {

// Random monotone policy over attributes [0, universe_size), at most max_depth
// gate levels, fan-in 2..3.
policy::PolicyNode random_policy(std::size_t universe_size, std::size_t max_depth, Rng& rng);

// Draws until the policy is (or is not) satisfied by attrs; falls back to a
// single leaf outside attrs, or any_of(attrs) when authorizing.
policy::PolicyNode random_policy_with(std::size_t universe_size, const policy::AttributeSet& attrs, bool authorized,
                                      Rng& rng);

policy::AttributeSet random_nonempty_subset(std::size_t universe_size, Rng& rng);

policy::PolicyNode any_of_set(const policy::AttributeSet& attrs);

}  // namespace makpabe::gamelab::detail

#endif  // MAKPABE_GAMELAB_INTERNAL_HPP

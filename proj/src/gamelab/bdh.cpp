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
#include "makpabe/gamelab.hpp"

namespace makpabe::gamelab {

using groups::Role;

BDHChallenge bdh_challenge_from(const PairingContext& ctx, const Scalar& a, const Scalar& b, const Scalar& s,
                                bool real, const Scalar& z) {
  if (!ctx.is_debug())
    throw Error(Errc::kBackendUnsupported, "BDH challenges keep hidden exponents; debug backend only");
  if (b.is_zero()) throw Error(Errc::kProtocolViolation, "b must be nonzero");
  const GroupElem& gk = ctx.generator(Role::kKey);
  const GroupElem& gc = ctx.generator(Role::kCipher);
  BDHChallenge c;
  c.hidden = BDHWitness{a, b, s, real ? a * b * s : z, real};
  c.instance.a_key = gk.pow(a);
  c.instance.a_cipher = gc.pow(a);
  c.instance.b_key = gk.pow(b);
  c.instance.b_cipher = gc.pow(b);
  c.instance.s_cipher = gc.pow(s);
  c.instance.t = ctx.generator(Role::kTarget).pow(c.hidden.z);
  return c;
}

BDHChallenge bdh_challenge(const PairingContext& ctx, Rng& rng, bool real) {
  if (!ctx.is_debug())
    throw Error(Errc::kBackendUnsupported, "BDH challenges keep hidden exponents; debug backend only");
  const Scalar a = ctx.random_scalar(rng);
  const Scalar b = ctx.random_scalar(rng, true);
  const Scalar s = ctx.random_scalar(rng);
  const Scalar z = ctx.random_scalar(rng);
  return bdh_challenge_from(ctx, a, b, s, real, z);
}

}  // namespace makpabe::gamelab

// Copyright 2026 The qhash Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qhash/gf2.hpp"

#include <array>

#include "qhash/error.hpp"
#include "qhash/simd/kernels.hpp"

namespace qhash::gf2 {

namespace {

// Low-weight irreducible polynomials, degree 1..16 (docs/irreducible_polynomials.md).
constexpr std::array<std::uint32_t, kMaxDegree + 1> kPolys = {
    0x0,      // unused
    0x3,      // x + 1
    0x7,      // x^2 + x + 1
    0xB,      // x^3 + x + 1
    0x13,     // x^4 + x + 1
    0x25,     // x^5 + x^2 + 1
    0x43,     // x^6 + x + 1
    0x83,     // x^7 + x + 1
    0x11B,    // x^8 + x^4 + x^3 + x + 1
    0x211,    // x^9 + x^4 + 1
    0x409,    // x^10 + x^3 + 1
    0x805,    // x^11 + x^2 + 1
    0x1009,   // x^12 + x^3 + 1
    0x201B,   // x^13 + x^4 + x^3 + x + 1
    0x4021,   // x^14 + x^5 + 1
    0x8003,   // x^15 + x + 1
    0x1002B,  // x^16 + x^5 + x^3 + x + 1
};

}  // namespace

std::uint32_t irreducible_poly(unsigned n) {
  if (n < 1 || n > kMaxDegree) throw ValidationError("GF(2^n) supported for 1 <= n <= 16");
  return kPolys[n];
}

std::uint32_t reduce(std::uint64_t product, std::uint32_t poly, unsigned n) {
  for (int bit = 2 * static_cast<int>(n) - 2; bit >= static_cast<int>(n); --bit) {
    if ((product >> bit) & 1u) product ^= static_cast<std::uint64_t>(poly) << (bit - n);
  }
  return static_cast<std::uint32_t>(product);
}

Field::Field(unsigned n) : n_(n), poly_(irreducible_poly(n)) {}

std::uint32_t Field::mul(std::uint32_t a, std::uint32_t b) const {
  return reduce(simd::clmul32(a, b), poly_, n_);
}

}  // namespace qhash::gf2

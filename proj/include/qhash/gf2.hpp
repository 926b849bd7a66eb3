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

#pragma once

#include <cstdint>

namespace qhash::gf2 {

inline constexpr unsigned kMaxDegree = 16;

/// Fixed irreducible polynomial of degree n (1 <= n <= 16), bit i = coeff of x^i.
std::uint32_t irreducible_poly(unsigned n);

/// Reduces a polynomial of degree < 2n modulo `poly` of degree n.
std::uint32_t reduce(std::uint64_t product, std::uint32_t poly, unsigned n);

/// GF(2^n) with the fixed modulus from irreducible_poly(n).
class Field {
 public:
  explicit Field(unsigned n);

  unsigned degree() const { return n_; }
  std::uint32_t modulus() const { return poly_; }
  std::uint32_t size() const { return std::uint32_t{1} << n_; }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  static std::uint32_t add(std::uint32_t a, std::uint32_t b) { return a ^ b; }

 private:
  unsigned n_;
  std::uint32_t poly_;
};

}  // namespace qhash::gf2

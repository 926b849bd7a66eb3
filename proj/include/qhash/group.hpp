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

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace qhash {

/// A finite abelian group: either the cyclic group Z_m or the product Z_n x Z_n.
/// The group operation is componentwise addition modulo the modulus.
class GroupSpec {
 public:
  enum class Kind { cyclic, product };

  static GroupSpec cyclic(std::uint64_t modulus);
  static GroupSpec product(std::uint64_t modulus);

  Kind kind() const { return kind_; }
  std::uint64_t modulus() const { return modulus_; }
  std::size_t arity() const { return kind_ == Kind::cyclic ? 1 : 2; }
  std::uint64_t order() const;

  /// Ceiling of log2(order): bits needed to name an element.
  unsigned index_bits() const;

  /// "Z_7" or "Z_5xZ_5".
  std::string name() const;

  /// Parses "25" as Z_25 and "5x5" as Z_5 x Z_5.
  static GroupSpec parse(const std::string& text);

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;

 private:
  GroupSpec(Kind kind, std::uint64_t modulus) : kind_(kind), modulus_(modulus) {}

  Kind kind_;
  std::uint64_t modulus_;
};

class GroupElement {
 public:
  /// Coordinates are reduced modulo the group's modulus.
  GroupElement(const GroupSpec& group, std::uint64_t c0, std::uint64_t c1 = 0);

  /// Row-major enumeration: index = c0 * n + c1 for the product group.
  static GroupElement from_index(const GroupSpec& group, std::uint64_t index);
  static GroupElement identity(const GroupSpec& group) { return {group, 0, 0}; }

  const GroupSpec& group() const { return group_; }
  std::uint64_t coord(std::size_t i) const { return coords_[i]; }
  std::vector<std::uint64_t> coords() const;
  std::uint64_t index() const;
  bool is_identity() const { return coords_[0] == 0 && coords_[1] == 0; }

  /// "3" or "(1,2)".
  std::string to_string() const;
  /// Parses "3", "1,2" or "(1,2)".
  static GroupElement parse(const GroupSpec& group, const std::string& text);

  friend bool operator==(const GroupElement&, const GroupElement&) = default;

 private:
  GroupSpec group_;
  std::array<std::uint64_t, 2> coords_{};
};

/// a o b. Throws SpecMismatch if the operands belong to different groups.
GroupElement op_apply(const GroupElement& a, const GroupElement& b);
GroupElement inverse(const GroupElement& a);

/// Integer pairing <a, x> = sum_i a_i x_i reduced mod the modulus.
std::uint64_t pairing(const GroupElement& a, const GroupElement& x);

/// The character chi_a(x) = exp(2 pi i <a, x> / m).
class Character {
 public:
  explicit Character(GroupElement index) : index_(std::move(index)) {}

  const GroupElement& index() const { return index_; }
  const GroupSpec& group() const { return index_.group(); }

  std::complex<double> operator()(const GroupElement& x) const;

 private:
  GroupElement index_;
};

std::complex<double> char_eval(const Character& chi, const GroupElement& x);

/// exp(2 pi i r / m) for r in [0, m). Every phase in the library goes through
/// this table so equal exponents always produce bit-identical amplitudes.
class RootsOfUnity {
 public:
  explicit RootsOfUnity(std::uint64_t order);

  std::uint64_t order() const { return table_.size(); }
  const std::complex<double>& operator[](std::uint64_t r) const { return table_[r]; }

 private:
  std::vector<std::complex<double>> table_;
};

/// exp(2 pi i r / m), computed the same way RootsOfUnity fills its table.
std::complex<double> root_of_unity(std::uint64_t r, std::uint64_t m);

}  // namespace qhash

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

#include "qhash/group.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qhash/error.hpp"

namespace qhash {

namespace {

// Moduli stay below 2^31 so pairings of two coordinates never overflow.
constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 31;

std::uint64_t parse_uint(const std::string& text, const std::string& what) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &pos);
  } catch (const std::exception&) {
    throw ValidationError("cannot parse " + what + " from '" + text + "'");
  }
  if (pos != text.size() || text.empty() || text[0] == '-') {
    throw ValidationError("cannot parse " + what + " from '" + text + "'");
  }
  return v;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

}  // namespace

GroupSpec GroupSpec::cyclic(std::uint64_t modulus) {
  if (modulus < 2) throw ValidationError("group order must be >= 2");
  if (modulus >= kMaxModulus) throw ValidationError("modulus too large");
  return {Kind::cyclic, modulus};
}

GroupSpec GroupSpec::product(std::uint64_t modulus) {
  if (modulus < 2) throw ValidationError("group order must be >= 2");
  if (modulus >= (std::uint64_t{1} << 16)) throw ValidationError("modulus too large");
  return {Kind::product, modulus};
}

std::uint64_t GroupSpec::order() const {
  return kind_ == Kind::cyclic ? modulus_ : modulus_ * modulus_;
}

unsigned GroupSpec::index_bits() const {
  unsigned bits = 0;
  while ((std::uint64_t{1} << bits) < order()) ++bits;
  return bits;
}

std::string GroupSpec::name() const {
  if (kind_ == Kind::cyclic) return "Z_" + std::to_string(modulus_);
  return "Z_" + std::to_string(modulus_) + "xZ_" + std::to_string(modulus_);
}

GroupSpec GroupSpec::parse(const std::string& text) {
  auto t = trim(text);
  auto x = t.find_first_of("xX");
  if (x == std::string::npos) return cyclic(parse_uint(t, "group order"));
  auto a = parse_uint(trim(t.substr(0, x)), "group modulus");
  auto b = parse_uint(trim(t.substr(x + 1)), "group modulus");
  if (a != b) throw ValidationError("product groups must be Z_n x Z_n");
  return product(a);
}

GroupElement::GroupElement(const GroupSpec& group, std::uint64_t c0, std::uint64_t c1)
    : group_(group) {
  coords_[0] = c0 % group.modulus();
  coords_[1] = group.arity() == 2 ? c1 % group.modulus() : 0;
}

GroupElement GroupElement::from_index(const GroupSpec& group, std::uint64_t index) {
  if (index >= group.order()) throw ValidationError("element index out of range");
  if (group.arity() == 1) return {group, index};
  return {group, index / group.modulus(), index % group.modulus()};
}

std::vector<std::uint64_t> GroupElement::coords() const {
  return {coords_.begin(), coords_.begin() + group_.arity()};
}

std::uint64_t GroupElement::index() const {
  return group_.arity() == 1 ? coords_[0] : coords_[0] * group_.modulus() + coords_[1];
}

std::string GroupElement::to_string() const {
  if (group_.arity() == 1) return std::to_string(coords_[0]);
  return "(" + std::to_string(coords_[0]) + "," + std::to_string(coords_[1]) + ")";
}

GroupElement GroupElement::parse(const GroupSpec& group, const std::string& text) {
  auto t = trim(text);
  if (!t.empty() && t.front() == '(' && t.back() == ')') t = t.substr(1, t.size() - 2);
  std::vector<std::uint64_t> parts;
  std::stringstream ss(t);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(parse_uint(trim(item), "coordinate"));
  if (parts.size() != group.arity()) {
    throw ValidationError("element '" + text + "' needs " + std::to_string(group.arity()) +
                          " coordinate(s) for " + group.name());
  }
  for (auto p : parts) {
    if (p >= group.modulus()) throw ValidationError("coordinate out of range in '" + text + "'");
  }
  return {group, parts[0], parts.size() > 1 ? parts[1] : 0};
}

GroupElement op_apply(const GroupElement& a, const GroupElement& b) {
  if (a.group() != b.group()) {
    throw SpecMismatch("op_apply: " + a.group().name() + " vs " + b.group().name());
  }
  return {a.group(), a.coord(0) + b.coord(0), a.coord(1) + b.coord(1)};
}

GroupElement inverse(const GroupElement& a) {
  const auto m = a.group().modulus();
  return {a.group(), (m - a.coord(0)) % m, (m - a.coord(1)) % m};
}

std::uint64_t pairing(const GroupElement& a, const GroupElement& x) {
  if (a.group() != x.group()) {
    throw SpecMismatch("character " + a.group().name() + " applied to " + x.group().name());
  }
  const auto m = a.group().modulus();
  return (a.coord(0) * x.coord(0) % m + a.coord(1) * x.coord(1) % m) % m;
}

std::complex<double> root_of_unity(std::uint64_t r, std::uint64_t m) {
  r %= m;
  // Exact values on the axes keep trivial cases (chi_0, quarter turns) exact.
  if (r == 0) return {1.0, 0.0};
  if (4 * r == m) return {0.0, 1.0};
  if (2 * r == m) return {-1.0, 0.0};
  if (4 * r == 3 * m) return {0.0, -1.0};
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(m);
  return {std::cos(angle), std::sin(angle)};
}

RootsOfUnity::RootsOfUnity(std::uint64_t order) : table_(order) {
  if (order == 0) throw ValidationError("roots of unity need order >= 1");
  for (std::uint64_t r = 0; r < order; ++r) table_[r] = root_of_unity(r, order);
}

std::complex<double> Character::operator()(const GroupElement& x) const {
  return root_of_unity(pairing(index_, x), group().modulus());
}

std::complex<double> char_eval(const Character& chi, const GroupElement& x) { return chi(x); }

}  // namespace qhash

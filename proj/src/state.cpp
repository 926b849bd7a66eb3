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

#include "qhash/state.hpp"

#include <cmath>
#include <numeric>
#include <ostream>

#include "qhash/error.hpp"
#include "qhash/random.hpp"
#include "qhash/serialize.hpp"
#include "qhash/simd/kernels.hpp"

namespace qhash {

namespace {

void require_same_dimension(const HashState& a, const HashState& b, const char* where) {
  if (a.dimension() != b.dimension()) {
    throw DimensionMismatch(std::string(where) + ": dimensions " + std::to_string(a.dimension()) +
                            " and " + std::to_string(b.dimension()));
  }
}

}  // namespace

HashState::HashState(std::vector<Complex> amplitudes, std::vector<std::size_t> registers,
                     std::string label)
    : amplitudes_(std::move(amplitudes)), registers_(std::move(registers)), label_(std::move(label)) {
  if (amplitudes_.empty()) throw ValidationError("state dimension must be >= 1");
  if (registers_.empty()) registers_ = {amplitudes_.size()};
  const auto product = std::accumulate(registers_.begin(), registers_.end(), std::size_t{1},
                                       std::multiplies<>());
  if (product != amplitudes_.size()) {
    throw ValidationError("register sizes do not multiply to the state dimension");
  }
}

HashState HashState::normalized(std::vector<Complex> amplitudes, std::string label) {
  const double n2 = simd::norm_sq(amplitudes);
  if (!(n2 > 0.0) || !std::isfinite(n2)) throw ValidationError("cannot normalize a zero vector");
  const double scale = 1.0 / std::sqrt(n2);
  for (auto& a : amplitudes) a *= scale;
  return HashState(std::move(amplitudes), {}, std::move(label));
}

HashState HashState::checked(std::vector<Complex> amplitudes, std::vector<std::size_t> registers,
                             std::string label) {
  const double n2 = simd::norm_sq(amplitudes);
  if (!std::isfinite(n2) || std::abs(n2 - 1.0) > kNormTolerance) {
    throw ValidationError("state is not normalized (norm^2 = " + format_double(n2) + ")");
  }
  return HashState(std::move(amplitudes), std::move(registers), std::move(label));
}

HashState HashState::basis(std::size_t dimension, std::size_t index) {
  if (index >= dimension) throw ValidationError("basis index out of range");
  std::vector<Complex> v(dimension);
  v[index] = 1.0;
  return HashState(std::move(v), {}, "|" + std::to_string(index) + ">");
}

unsigned HashState::qubits() const { return qubit_count(dimension()); }

HashState HashState::with_global_phase(double angle) const {
  const Complex phase = std::polar(1.0, angle);
  std::vector<Complex> v(amplitudes_);
  for (auto& a : v) a *= phase;
  return HashState(std::move(v), registers_, label_);
}

Complex inner_product(const HashState& psi, const HashState& phi) {
  require_same_dimension(psi, phi, "inner_product");
  return simd::cdot(psi.amplitudes(), phi.amplitudes());
}

double overlap(const HashState& psi, const HashState& phi) {
  return std::abs(inner_product(psi, phi));
}

double swap_test_prob(const HashState& psi, const HashState& phi) {
  require_same_dimension(psi, phi, "swap_test_prob");
  const double o = std::min(1.0, overlap(psi, phi));
  return 0.5 * (1.0 + o * o);
}

std::uint64_t swap_test_sample(const HashState& psi, const HashState& phi, std::uint64_t reps,
                               std::uint64_t seed) {
  if (reps == 0) throw ValidationError("swap_test_sample: reps must be >= 1");
  const double p = swap_test_prob(psi, phi);
  Rng rng(derive_seed(seed, "swap_test"));
  std::uint64_t accepts = 0;
  for (std::uint64_t r = 0; r < reps; ++r) accepts += rng.bernoulli(p) ? 1 : 0;
  return accepts;
}

unsigned qubit_count(std::uint64_t dimension) {
  if (dimension == 0) throw ValidationError("qubit_count: dimension must be >= 1");
  unsigned s = 0;
  while ((std::uint64_t{1} << s) < dimension) ++s;
  return s;
}

void write_overlap_matrix_csv(std::ostream& os, std::span<const HashState> states) {
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (std::size_t j = 0; j < states.size(); ++j) {
      if (j) os << ',';
      os << format_double(overlap(states[i], states[j]));
    }
    os << '\n';
  }
}

}  // namespace qhash

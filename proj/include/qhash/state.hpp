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

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace qhash {

using Complex = std::complex<double>;

/// Pure quantum state as a unit-norm amplitude vector. Immutable.
///
/// Register sizes describe the tensor layout: {t} for a single register
/// |i>, or {2^d, t} for the two-register states |j>|i> with amplitude index
/// j * t + i. Their product is always the dimension.
class HashState {
 public:
  /// Tolerance of the unit-norm invariant.
  static constexpr double kNormTolerance = 1e-9;

  /// Scales `amplitudes` to unit norm. Throws ValidationError on an all-zero
  /// (or non-finite) vector.
  static HashState normalized(std::vector<Complex> amplitudes, std::string label = {});

  /// Takes amplitudes that are already normalized; throws ValidationError
  /// if the norm is off by more than kNormTolerance.
  static HashState checked(std::vector<Complex> amplitudes, std::vector<std::size_t> registers = {},
                           std::string label = {});

  /// Computational basis state |index>.
  static HashState basis(std::size_t dimension, std::size_t index);

  std::size_t dimension() const { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }
  const std::vector<std::size_t>& registers() const { return registers_; }
  const std::string& label() const { return label_; }

  /// Number of qubits needed to hold the state.
  unsigned qubits() const;

  /// Same state multiplied by a global phase exp(i * angle).
  HashState with_global_phase(double angle) const;

 private:
  HashState(std::vector<Complex> amplitudes, std::vector<std::size_t> registers, std::string label);

  std::vector<Complex> amplitudes_;
  std::vector<std::size_t> registers_;
  std::string label_;
};

/// <psi|phi>, conjugate-linear in psi.
Complex inner_product(const HashState& psi, const HashState& phi);

/// |<psi|phi>|.
double overlap(const HashState& psi, const HashState& phi);

/// SWAP-test acceptance probability (1 + |<psi|phi>|^2) / 2.
double swap_test_prob(const HashState& psi, const HashState& phi);

/// Runs `reps` independent SWAP tests; returns the number of accepts.
std::uint64_t swap_test_sample(const HashState& psi, const HashState& phi, std::uint64_t reps,
                               std::uint64_t seed);

/// Smallest s with 2^s >= dimension.
unsigned qubit_count(std::uint64_t dimension);

/// Writes |<psi_i|psi_j>| for all pairs as a square CSV matrix.
void write_overlap_matrix_csv(std::ostream& os, std::span<const HashState> states);

}  // namespace qhash

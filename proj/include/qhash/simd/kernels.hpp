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

// Data-parallel inner loops. Each kernel has a scalar reference version and,
// where the host supports it, a vector version; the vector versions are
// selected once at runtime and are equivalence-tested against the scalar
// reference.

#include <complex>
#include <cstdint>
#include <span>

namespace qhash::simd {

enum class Isa { scalar, avx2, neon };

const char* isa_name(Isa isa);

/// True when the kernels for `isa` are compiled in and the CPU can run them.
bool isa_supported(Isa isa);

/// Best supported ISA, detected on first use.
Isa detected_isa();

/// ISA the dispatching entry points currently route to.
Isa active_isa();

/// Overrides the dispatch target (tests, benchmarks). Throws ValidationError
/// if `isa` is not supported on this host.
void set_active_isa(Isa isa);

using Complex = std::complex<double>;

/// sum_i conj(a_i) * b_i. Spans must have equal length.
Complex cdot(std::span<const Complex> a, std::span<const Complex> b);

/// sum_i |a_i|^2.
double norm_sq(std::span<const Complex> a);

/// Carry-less (GF(2)[x]) product of two 32-bit polynomials.
std::uint64_t clmul32(std::uint32_t a, std::uint32_t b);

/// Function table for one ISA; lets tests compare variants side by side.
struct KernelSet {
  Isa isa;
  Complex (*cdot)(const Complex*, const Complex*, std::size_t);
  double (*norm_sq)(const Complex*, std::size_t);
  std::uint64_t (*clmul32)(std::uint32_t, std::uint32_t);
};

/// Throws ValidationError if `isa` is not supported on this host.
const KernelSet& kernels_for(Isa isa);

// Per-ISA implementations. Only call the non-scalar ones through
// kernels_for(); they are not linked on hosts that lack the ISA.
namespace scalar {
Complex cdot(const Complex* a, const Complex* b, std::size_t n);
double norm_sq(const Complex* a, std::size_t n);
std::uint64_t clmul32(std::uint32_t a, std::uint32_t b);
}  // namespace scalar

namespace avx2 {
Complex cdot(const Complex* a, const Complex* b, std::size_t n);
double norm_sq(const Complex* a, std::size_t n);
std::uint64_t clmul32(std::uint32_t a, std::uint32_t b);
}  // namespace avx2

namespace neon {
Complex cdot(const Complex* a, const Complex* b, std::size_t n);
double norm_sq(const Complex* a, std::size_t n);
}  // namespace neon

}  // namespace qhash::simd

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

#include <atomic>

#include "qhash/error.hpp"
#include "qhash/simd/kernels.hpp"

namespace qhash::simd {

namespace {

bool cpu_has_avx2() {
#if defined(QHASH_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma") &&
         __builtin_cpu_supports("pclmul");
#else
  return false;
#endif
}

std::atomic<Isa>& active_slot() {
  static std::atomic<Isa> slot{detected_isa()};
  return slot;
}

}  // namespace

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2: return cpu_has_avx2();
    case Isa::neon:
#if defined(QHASH_HAVE_NEON_TU)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa detected_isa() {
  static const Isa best = [] {
    if (isa_supported(Isa::avx2)) return Isa::avx2;
    if (isa_supported(Isa::neon)) return Isa::neon;
    return Isa::scalar;
  }();
  return best;
}

Isa active_isa() { return active_slot().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!isa_supported(isa)) {
    throw ValidationError(std::string("ISA not supported on this host: ") + isa_name(isa));
  }
  active_slot().store(isa, std::memory_order_relaxed);
}

const KernelSet& kernels_for(Isa isa) {
  static const KernelSet scalar_set{Isa::scalar, scalar::cdot, scalar::norm_sq, scalar::clmul32};
#if defined(QHASH_HAVE_AVX2_TU)
  static const KernelSet avx2_set{Isa::avx2, avx2::cdot, avx2::norm_sq, avx2::clmul32};
#endif
#if defined(QHASH_HAVE_NEON_TU)
  // No polynomial-multiply variant on NEON yet; clmul stays scalar there.
  static const KernelSet neon_set{Isa::neon, neon::cdot, neon::norm_sq, scalar::clmul32};
#endif
  if (!isa_supported(isa)) {
    throw ValidationError(std::string("ISA not supported on this host: ") + isa_name(isa));
  }
  switch (isa) {
#if defined(QHASH_HAVE_AVX2_TU)
    case Isa::avx2: return avx2_set;
#endif
#if defined(QHASH_HAVE_NEON_TU)
    case Isa::neon: return neon_set;
#endif
    default: return scalar_set;
  }
}

Complex cdot(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw DimensionMismatch("cdot: length mismatch");
  switch (active_isa()) {
#if defined(QHASH_HAVE_AVX2_TU)
    case Isa::avx2: return avx2::cdot(a.data(), b.data(), a.size());
#endif
#if defined(QHASH_HAVE_NEON_TU)
    case Isa::neon: return neon::cdot(a.data(), b.data(), a.size());
#endif
    default: return scalar::cdot(a.data(), b.data(), a.size());
  }
}

double norm_sq(std::span<const Complex> a) {
  switch (active_isa()) {
#if defined(QHASH_HAVE_AVX2_TU)
    case Isa::avx2: return avx2::norm_sq(a.data(), a.size());
#endif
#if defined(QHASH_HAVE_NEON_TU)
    case Isa::neon: return neon::norm_sq(a.data(), a.size());
#endif
    default: return scalar::norm_sq(a.data(), a.size());
  }
}

std::uint64_t clmul32(std::uint32_t a, std::uint32_t b) {
#if defined(QHASH_HAVE_AVX2_TU)
  if (active_isa() == Isa::avx2) return avx2::clmul32(a, b);
#endif
  return scalar::clmul32(a, b);
}

}  // namespace qhash::simd

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
#include <iosfwd>
#include <string>
#include <vector>

#include "qhash/qhf.hpp"

namespace qhash {

struct PairStrategy {
  enum class Kind { exhaustive, sampled };
  Kind kind = Kind::exhaustive;
  std::uint64_t samples = 0;  ///< sampled mode only

  static PairStrategy exhaustive() { return {}; }
  static PairStrategy sampled(std::uint64_t count) { return {Kind::sampled, count}; }
};

inline constexpr std::uint64_t kExhaustiveLimit = 4096;
inline constexpr double kHistogramBinWidth = 0.01;
inline constexpr std::size_t kHistogramBins = 101;  ///< [0, 0.01), ..., [1.00, ...)

struct ResistanceReport {
  std::string instance;  ///< e.g. "iid Z_257 t=1024"
  PairStrategy strategy;
  double max_overlap = 0.0;
  double mean_overlap = 0.0;
  std::vector<std::uint64_t> histogram;
  double target_delta = 0.0;
  bool satisfied = false;
  std::uint64_t pairs = 0;
  double wall_seconds = 0.0;  ///< not part of the canonical (deterministic) output
};

/// Measures |<psi(w)|psi(w')>| over distinct message pairs; satisfied when
/// the maximum is at most target_delta. `threads` = 0 uses the hardware
/// concurrency; results do not depend on it.
ResistanceReport measure_resistance(const QHFInstance& inst, const PairStrategy& strategy,
                                    double target_delta, std::uint64_t seed, unsigned threads = 0);

std::string describe(const QHFInstance& inst);

/// "bin_low,bin_high,count" rows.
void write_histogram_csv(std::ostream& os, const ResistanceReport& report);

struct ComparisonRow {
  Variant variant = Variant::iid;
  std::uint64_t t = 0;
  std::uint64_t randomness_bits = 0;
  unsigned qubits = 0;
  double max_overlap = 0.0;
  bool satisfied = false;
};

/// Builds and measures (exhaustively) each instance; rows ascend by randomness bits.
std::vector<ComparisonRow> compare_constructions(const std::vector<InstanceConfig>& configs,
                                                 double target_delta, std::uint64_t seed);

void write_comparison_csv(std::ostream& os, const std::vector<ComparisonRow>& rows);

struct SwapVerifyResult {
  double exact_prob = 0.0;
  double frequency = 0.0;
  double z_score = 0.0;
  std::uint64_t accepts = 0;
  std::uint64_t reps = 0;
};

/// SWAP test between psi(w) and psi(w') repeated `reps` times (reps >= 100).
SwapVerifyResult swap_verify_experiment(const QHFInstance& inst, const GroupElement& w,
                                        const GroupElement& w2, std::uint64_t reps,
                                        std::uint64_t seed);

/// z-score of `accepts` successes against Binomial(reps, p). Zero when the
/// binomial is degenerate and the count matches, infinite when it does not.
double binomial_z(std::uint64_t accepts, std::uint64_t reps, double p);

struct SweepReport {
  std::uint64_t seeds = 0;
  std::uint64_t satisfied = 0;
  double satisfied_fraction = 0.0;
  double failing_fraction = 0.0;
  double target_delta = 0.0;
  std::vector<double> max_overlaps;  ///< per seed, in seed order
  std::vector<std::uint64_t> instance_seeds;
};

/// Rebuilds `config` under `count` derived seeds and measures each instance
/// exhaustively: the fraction of constructions that are delta-resistant.
SweepReport seeds_sweep(const InstanceConfig& config, std::uint64_t count, double target_delta,
                        std::uint64_t master_seed);

}  // namespace qhash

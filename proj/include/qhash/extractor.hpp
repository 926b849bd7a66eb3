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
#include <string>
#include <vector>

#include "qhash/gf2.hpp"

namespace qhash {

class Rng;

/// A bit string of fixed width; value holds the bits MSB-first as written,
/// so "101" is value 5, width 3.
struct BitString {
  std::uint32_t value = 0;
  unsigned width = 0;

  static BitString parse(const std::string& bits);
  std::string to_string() const;

  friend bool operator==(const BitString&, const BitString&) = default;
};

/// Seeded extractor Ext: {0,1}^n x {0,1}^d -> {0,1}^m.
///
///   hadamard: m = 1, d = n, Ext(x, y) = parity(x & y).
///   lhl:      d = n, Ext(x, a) = low m bits of a * x in GF(2^n).
///
/// lhl is a universal hash family, so the leftover hash lemma applies.
class ExtractorSpec {
 public:
  enum class Family { hadamard, lhl };

  static ExtractorSpec hadamard(unsigned n);
  static ExtractorSpec lhl(unsigned n, unsigned m);
  /// Validating constructor matching the serialized fields.
  static ExtractorSpec make(Family family, unsigned n, unsigned d, unsigned m);

  Family family() const { return family_; }
  unsigned input_bits() const { return n_; }
  unsigned seed_bits() const { return d_; }
  unsigned output_bits() const { return m_; }
  std::string family_name() const;
  static Family parse_family(const std::string& name);

  /// Raw evaluation; x < 2^n and y < 2^d are the caller's responsibility.
  std::uint32_t eval(std::uint32_t x, std::uint32_t y) const;

 private:
  ExtractorSpec(Family family, unsigned n, unsigned d, unsigned m);

  Family family_;
  unsigned n_, d_, m_;
  gf2::Field field_;
};

/// Checked evaluation: throws ValidationError on a length mismatch.
BitString ext_eval(const ExtractorSpec& spec, const BitString& x, const BitString& y);

/// Explicit probability table over the universe {0, ..., size - 1}.
class SourceDistribution {
 public:
  /// Probabilities must be non-negative and sum to 1 within 1e-12.
  static SourceDistribution from_table(std::vector<double> probabilities);
  /// Uniform over `support` (distinct points inside the universe).
  static SourceDistribution flat(std::uint64_t universe, std::vector<std::uint64_t> support);
  static SourceDistribution uniform(std::uint64_t universe);
  static SourceDistribution point_mass(std::uint64_t universe, std::uint64_t x);
  /// Uniform over a random subset of size 2^ceil(k).
  static SourceDistribution random_flat(std::uint64_t universe, double k, Rng& rng);

  std::uint64_t universe() const { return probabilities_.size(); }
  double probability(std::uint64_t x) const { return probabilities_[x]; }
  const std::vector<double>& table() const { return probabilities_; }
  /// Points with positive mass, ascending.
  const std::vector<std::uint64_t>& support() const { return support_; }

 private:
  explicit SourceDistribution(std::vector<double> probabilities);

  std::vector<double> probabilities_;
  std::vector<std::uint64_t> support_;
};

/// H_inf(X) = -log2 max_x Pr[X = x].
double min_entropy(const SourceDistribution& dist);

/// Half the L1 distance; equals the largest event-probability gap.
double stat_distance(const SourceDistribution& p, const SourceDistribution& q);

/// Exact distribution of Ext(X, U_d) over {0,1}^m, by enumeration.
SourceDistribution output_distribution(const ExtractorSpec& spec, const SourceDistribution& source);

/// Leftover-hash bound 2^((m - k)/2 - 1) on the distance to uniform.
double leftover_hash_bound(unsigned m, double k);

struct ExtractorQuality {
  double max_distance = 0.0;
  double mean_distance = 0.0;
  double lhl_bound = 0.0;
  /// Min-entropy of the generated sources (k rounded up to an integer).
  double achieved_min_entropy = 0.0;
  std::uint64_t sources = 0;
};

/// Draws `sources` random flat k-sources over {0,1}^n and reports the
/// distance of Ext(X, U_d) to U_m, computed exactly. Requires n, d <= 16.
ExtractorQuality extractor_quality(const ExtractorSpec& spec, double k, std::uint64_t sources,
                                   std::uint64_t seed);

}  // namespace qhash

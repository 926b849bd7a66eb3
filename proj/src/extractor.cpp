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

#include "qhash/extractor.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "qhash/error.hpp"
#include "qhash/random.hpp"

namespace qhash {

BitString BitString::parse(const std::string& bits) {
  if (bits.empty() || bits.size() > 32) throw ValidationError("bit string must have 1..32 bits");
  BitString b;
  for (char c : bits) {
    if (c != '0' && c != '1') throw ValidationError("bit string may only contain 0 and 1");
    b.value = (b.value << 1) | static_cast<std::uint32_t>(c - '0');
  }
  b.width = static_cast<unsigned>(bits.size());
  return b;
}

std::string BitString::to_string() const {
  std::string s(width, '0');
  for (unsigned i = 0; i < width; ++i) {
    if ((value >> (width - 1 - i)) & 1u) s[i] = '1';
  }
  return s;
}

ExtractorSpec::ExtractorSpec(Family family, unsigned n, unsigned d, unsigned m)
    : family_(family), n_(n), d_(d), m_(m), field_(n) {}

ExtractorSpec ExtractorSpec::make(Family family, unsigned n, unsigned d, unsigned m) {
  if (n < 1 || n > gf2::kMaxDegree) throw ValidationError("extractor input bits must be in [1, 16]");
  if (m < 1 || m > n) throw ValidationError("extractor output bits must satisfy 1 <= m <= n");
  if (d != n) throw ValidationError("extractor seed bits must equal n for this family");
  if (family == Family::hadamard && m != 1) throw ValidationError("hadamard extractor requires m = 1");
  return {family, n, d, m};
}

ExtractorSpec ExtractorSpec::hadamard(unsigned n) { return make(Family::hadamard, n, n, 1); }

ExtractorSpec ExtractorSpec::lhl(unsigned n, unsigned m) { return make(Family::lhl, n, n, m); }

std::string ExtractorSpec::family_name() const {
  return family_ == Family::hadamard ? "hadamard" : "lhl";
}

ExtractorSpec::Family ExtractorSpec::parse_family(const std::string& name) {
  if (name == "hadamard") return Family::hadamard;
  if (name == "lhl") return Family::lhl;
  throw ValidationError("unknown extractor family '" + name + "' (expected hadamard or lhl)");
}

std::uint32_t ExtractorSpec::eval(std::uint32_t x, std::uint32_t y) const {
  if (family_ == Family::hadamard) return static_cast<std::uint32_t>(std::popcount(x & y) & 1);
  return field_.mul(y, x) & ((std::uint32_t{1} << m_) - 1);
}

BitString ext_eval(const ExtractorSpec& spec, const BitString& x, const BitString& y) {
  if (x.width != spec.input_bits()) {
    throw ValidationError("ext_eval: input has " + std::to_string(x.width) + " bits, expected " +
                          std::to_string(spec.input_bits()));
  }
  if (y.width != spec.seed_bits()) {
    throw ValidationError("ext_eval: seed has " + std::to_string(y.width) + " bits, expected " +
                          std::to_string(spec.seed_bits()));
  }
  return {spec.eval(x.value, y.value), spec.output_bits()};
}

SourceDistribution::SourceDistribution(std::vector<double> probabilities)
    : probabilities_(std::move(probabilities)) {
  for (std::uint64_t x = 0; x < probabilities_.size(); ++x) {
    if (probabilities_[x] > 0.0) support_.push_back(x);
  }
}

SourceDistribution SourceDistribution::from_table(std::vector<double> probabilities) {
  if (probabilities.empty()) throw ValidationError("distribution needs a non-empty universe");
  double sum = 0.0;
  for (double p : probabilities) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw ValidationError("probabilities must be non-negative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw ValidationError("probabilities must sum to 1");
  return SourceDistribution(std::move(probabilities));
}

SourceDistribution SourceDistribution::flat(std::uint64_t universe,
                                            std::vector<std::uint64_t> support) {
  if (universe == 0 || support.empty()) throw ValidationError("flat source needs a non-empty support");
  std::sort(support.begin(), support.end());
  if (std::adjacent_find(support.begin(), support.end()) != support.end()) {
    throw ValidationError("flat source support has repeated points");
  }
  if (support.back() >= universe) throw ValidationError("flat source support outside the universe");
  std::vector<double> p(universe, 0.0);
  const double mass = 1.0 / static_cast<double>(support.size());
  for (auto x : support) p[x] = mass;
  return SourceDistribution(std::move(p));
}

SourceDistribution SourceDistribution::uniform(std::uint64_t universe) {
  std::vector<std::uint64_t> all(universe);
  std::iota(all.begin(), all.end(), std::uint64_t{0});
  return flat(universe, std::move(all));
}

SourceDistribution SourceDistribution::point_mass(std::uint64_t universe, std::uint64_t x) {
  return flat(universe, {x});
}

SourceDistribution SourceDistribution::random_flat(std::uint64_t universe, double k, Rng& rng) {
  if (!(k >= 0.0)) throw ValidationError("min-entropy k must be >= 0");
  const auto bits = static_cast<unsigned>(std::ceil(k));
  if (bits >= 63 || (std::uint64_t{1} << bits) > universe) {
    throw ValidationError("flat k-source needs 2^ceil(k) <= universe size");
  }
  const std::uint64_t size = std::uint64_t{1} << bits;
  // Partial Fisher-Yates over the universe.
  std::vector<std::uint64_t> pool(universe);
  std::iota(pool.begin(), pool.end(), std::uint64_t{0});
  for (std::uint64_t i = 0; i < size; ++i) {
    const auto j = i + rng.uniform_below(universe - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(size);
  return flat(universe, std::move(pool));
}

double min_entropy(const SourceDistribution& dist) {
  const double pmax = *std::max_element(dist.table().begin(), dist.table().end());
  return -std::log2(pmax);
}

double stat_distance(const SourceDistribution& p, const SourceDistribution& q) {
  if (p.universe() != q.universe()) throw ValidationError("stat_distance: universes differ");
  double s = 0.0;
  for (std::uint64_t x = 0; x < p.universe(); ++x) s += std::abs(p.probability(x) - q.probability(x));
  return std::min(1.0, 0.5 * s);
}

SourceDistribution output_distribution(const ExtractorSpec& spec, const SourceDistribution& source) {
  if (source.universe() != (std::uint64_t{1} << spec.input_bits())) {
    throw ValidationError("source universe must be {0,1}^n");
  }
  const std::uint32_t seeds = std::uint32_t{1} << spec.seed_bits();
  std::vector<double> out(std::size_t{1} << spec.output_bits(), 0.0);
  for (auto x : source.support()) {
    const double w = source.probability(x) / seeds;
    for (std::uint32_t y = 0; y < seeds; ++y) {
      out[spec.eval(static_cast<std::uint32_t>(x), y)] += w;
    }
  }
  // Renormalize away accumulated rounding so the table passes validation.
  const double sum = std::accumulate(out.begin(), out.end(), 0.0);
  for (auto& v : out) v /= sum;
  return SourceDistribution::from_table(std::move(out));
}

double leftover_hash_bound(unsigned m, double k) {
  return std::pow(2.0, (static_cast<double>(m) - k) / 2.0 - 1.0);
}

ExtractorQuality extractor_quality(const ExtractorSpec& spec, double k, std::uint64_t sources,
                                   std::uint64_t seed) {
  if (spec.input_bits() > 16 || spec.seed_bits() > 16) {
    throw TooLarge("extractor_quality enumerates {0,1}^n x {0,1}^d; needs n, d <= 16");
  }
  if (sources < 1) throw ValidationError("extractor_quality: sources must be >= 1");
  if (!(k >= 0.0) || k > spec.input_bits()) throw ValidationError("k must lie in [0, n]");

  const std::uint64_t universe = std::uint64_t{1} << spec.input_bits();
  const auto target = SourceDistribution::uniform(std::uint64_t{1} << spec.output_bits());
  ExtractorQuality q;
  q.sources = sources;
  q.lhl_bound = leftover_hash_bound(spec.output_bits(), k);
  double sum = 0.0;
  for (std::uint64_t s = 0; s < sources; ++s) {
    Rng rng(derive_seed(seed, "flat_source", s));
    const auto source = SourceDistribution::random_flat(universe, k, rng);
    if (s == 0) q.achieved_min_entropy = min_entropy(source);
    const double dist = stat_distance(output_distribution(spec, source), target);
    q.max_distance = std::max(q.max_distance, dist);
    sum += dist;
  }
  q.mean_distance = sum / static_cast<double>(sources);
  return q;
}

}  // namespace qhash

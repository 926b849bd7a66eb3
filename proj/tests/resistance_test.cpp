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

#include "qhash/resistance.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <utility>

#include "gtest/gtest.h"
#include "qhash/error.hpp"

namespace qhash {
namespace {

InstanceConfig config(Variant v, GroupSpec g, std::uint64_t t, std::uint64_t seed) {
  InstanceConfig c;
  c.variant = v;
  c.group = std::move(g);
  c.t = t;
  c.seed = seed;
  return c;
}

TEST(measure_resistance, full_dual_is_zero) {
  const auto r = measure_resistance(build_full_dual(GroupSpec::cyclic(16)), PairStrategy::exhaustive(),
                                    0.1, 0);
  EXPECT_LE(r.max_overlap, 1e-9);
  EXPECT_TRUE(r.satisfied);
  EXPECT_EQ(r.pairs, 16u * 15 / 2);
}

TEST(measure_resistance, single_seed_collides) {
  const auto r = measure_resistance(build_iid(GroupSpec::cyclic(9), 1, 3), PairStrategy::exhaustive(),
                                    0.5, 0);
  EXPECT_NEAR(r.max_overlap, 1.0, 1e-12);
  EXPECT_FALSE(r.satisfied);
}

TEST(measure_resistance, pair_count_and_histogram) {
  for (std::uint64_t m : {5u, 25u, 64u}) {
    const auto r = measure_resistance(build_iid(GroupSpec::cyclic(m), 7, m), PairStrategy::exhaustive(),
                                      0.5, 0);
    EXPECT_EQ(r.pairs, m * (m - 1) / 2);
    ASSERT_EQ(r.histogram.size(), kHistogramBins);
    EXPECT_EQ(std::accumulate(r.histogram.begin(), r.histogram.end(), std::uint64_t{0}), r.pairs);
    EXPECT_LE(r.mean_overlap, r.max_overlap);
  }
}

TEST(measure_resistance, overlap_is_symmetric) {
  const auto inst = build_expander(5, 30, 4);
  const auto states = hash_all(inst);
  for (std::size_t a = 0; a < states.size(); ++a) {
    for (std::size_t b = 0; b < states.size(); ++b) {
      ASSERT_DOUBLE_EQ(overlap(states[a], states[b]), overlap(states[b], states[a]));
    }
  }
}

TEST(measure_resistance, thread_count_independent) {
  const auto inst = build_iid(GroupSpec::cyclic(200), 40, 12);
  const auto one = measure_resistance(inst, PairStrategy::exhaustive(), 0.4, 0, 1);
  for (unsigned threads : {2u, 3u, 8u}) {
    const auto r = measure_resistance(inst, PairStrategy::exhaustive(), 0.4, 0, threads);
    EXPECT_EQ(r.max_overlap, one.max_overlap);
    EXPECT_EQ(r.mean_overlap, one.mean_overlap);
    EXPECT_EQ(r.histogram, one.histogram);
  }
}

TEST(measure_resistance, sampled_approaches_exhaustive) {
  const auto inst = build_iid(GroupSpec::cyclic(101), 24, 5);
  const auto full = measure_resistance(inst, PairStrategy::exhaustive(), 0.5, 0);
  double best = 0.0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto r = measure_resistance(inst, PairStrategy::sampled(2000), 0.5, s);
    EXPECT_LE(r.max_overlap, full.max_overlap + 1e-12);
    EXPECT_NEAR(r.mean_overlap, full.mean_overlap, 0.02);
    best = std::max(best, r.max_overlap);
  }
  EXPECT_GE(best, 0.9 * full.max_overlap);
}

TEST(measure_resistance, validation) {
  EXPECT_THROW(measure_resistance(build_iid(GroupSpec::cyclic(5000), 2, 0), PairStrategy::exhaustive(),
                                  0.5, 0),
               TooLarge);
  EXPECT_THROW(measure_resistance(build_iid(GroupSpec::cyclic(50), 2, 0), PairStrategy::sampled(0),
                                  0.5, 0),
               ValidationError);
}

TEST(compare_constructions, sorted_by_bits) {
  const auto g = GroupSpec::product(5);
  const auto a = config(Variant::iid, g, 200, 1);
  const auto b = config(Variant::expander, g, 200, 1);
  const auto c = config(Variant::iid, g, 20, 1);
  const auto rows = compare_constructions({a, b, c}, 0.5, 0);
  ASSERT_EQ(rows.size(), 3u);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LE(rows[i - 1].randomness_bits, rows[i].randomness_bits);
  std::ostringstream os;
  write_comparison_csv(os, rows);
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "variant,t,randomness_bits,qubits,max_overlap,satisfied");

  const auto d = config(Variant::iid, GroupSpec::cyclic(25), 20, 1);
  EXPECT_THROW(compare_constructions({a, d}, 0.5, 0), SpecMismatch);
}

TEST(swap_verify_experiment, identical_and_orthogonal) {
  const auto dual = build_full_dual(GroupSpec::cyclic(8));
  const auto& g = dual.group();
  const auto same = swap_verify_experiment(dual, {g, 3}, {g, 3}, 1000, 1);
  EXPECT_EQ(same.accepts, 1000u);
  EXPECT_DOUBLE_EQ(same.exact_prob, 1.0);
  const auto orth = swap_verify_experiment(dual, {g, 3}, {g, 4}, 10000, 1);
  EXPECT_NEAR(orth.exact_prob, 0.5, 1e-12);
  EXPECT_LT(std::abs(orth.z_score), 4.0);
  EXPECT_THROW(swap_verify_experiment(dual, {g, 1}, {g, 2}, 99, 0), ValidationError);
}

TEST(binomial_z, cases) {
  EXPECT_DOUBLE_EQ(binomial_z(50, 100, 0.5), 0.0);
  EXPECT_DOUBLE_EQ(binomial_z(60, 100, 0.5), 2.0);
  EXPECT_DOUBLE_EQ(binomial_z(100, 100, 1.0), 0.0);
  EXPECT_TRUE(std::isinf(binomial_z(99, 100, 1.0)));
}

TEST(seeds_sweep, deterministic) {
  const auto c = config(Variant::iid, GroupSpec::cyclic(31), 60, 0);
  const auto a = seeds_sweep(c, 6, 0.6, 42);
  const auto b = seeds_sweep(c, 6, 0.6, 42);
  EXPECT_EQ(a.max_overlaps, b.max_overlaps);
  EXPECT_EQ(a.instance_seeds, b.instance_seeds);
  EXPECT_EQ(a.seeds, 6u);
  EXPECT_DOUBLE_EQ(a.satisfied_fraction + a.failing_fraction, 1.0);
  EXPECT_THROW(seeds_sweep(c, 0, 0.5, 0), ValidationError);
}

}  // namespace
}  // namespace qhash

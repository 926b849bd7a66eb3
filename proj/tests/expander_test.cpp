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

#include "qhash/expander.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gtest/gtest.h"
#include "qhash/error.hpp"

namespace qhash {
namespace {

RotationGraph complete_graph(std::uint32_t n) {
  return RotationGraph(n, n - 1, [n](std::uint32_t v, unsigned l) {
    return static_cast<std::uint32_t>((v + 1 + l) % n);
  });
}

RotationGraph cycle_graph(std::uint32_t n) {
  return RotationGraph(n, 2, [n](std::uint32_t v, unsigned l) {
    return l == 0 ? (v + 1) % n : (v + n - 1) % n;
  });
}

TEST(rotation_graph, rejects_asymmetric_maps) {
  // Directed 3-cycle: 0->1->2->0 only.
  EXPECT_THROW(RotationGraph(3, 1, [](std::uint32_t v, unsigned) { return (v + 1) % 3; }),
               ValidationError);
  EXPECT_THROW(RotationGraph(3, 1, [](std::uint32_t, unsigned) { return 7u; }), ValidationError);
}

TEST(margulis, size_and_degree) {
  const auto g = margulis_graph(3);
  EXPECT_EQ(g.vertex_count(), 9u);
  EXPECT_EQ(g.degree(), 8u);
  EXPECT_THROW(margulis_graph(1), ValidationError);
}

TEST(margulis, handshake_and_symmetry) {
  for (std::uint32_t n = 2; n <= 16; ++n) {
    const auto g = margulis_graph(n);
    std::uint64_t endpoints = 0;
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
      for (unsigned l = 0; l < g.degree(); ++l) {
        ASSERT_LT(g.neighbor(v, l), g.vertex_count());
        ++endpoints;
      }
    }
    EXPECT_EQ(endpoints, 8u * n * n);
    EXPECT_TRUE(g.is_symmetric());
  }
}

TEST(margulis, neighbors_of_1_1_for_n3) {
  // Frozen from tests/oracles/frozen_values.py.
  const auto g = margulis_graph(3);
  std::vector<std::uint32_t> got;
  for (unsigned l = 0; l < 8; ++l) got.push_back(g.neighbor(1 * 3 + 1, l));
  std::sort(got.begin(), got.end());
  const std::vector<std::pair<int, int>> want = {{0, 1}, {0, 1}, {1, 0}, {1, 0},
                                                 {1, 2}, {1, 2}, {2, 1}, {2, 1}};
  std::vector<std::uint32_t> want_idx;
  for (auto [x, y] : want) want_idx.push_back(static_cast<std::uint32_t>(x * 3 + y));
  std::sort(want_idx.begin(), want_idx.end());
  EXPECT_EQ(got, want_idx);
}

TEST(spectral, small_graphs) {
  EXPECT_NEAR(spectral_lambda(complete_graph(4)), 1.0, 1e-9);
  EXPECT_NEAR(spectral_lambda(cycle_graph(4)), 2.0, 1e-9);
  const auto ev = adjacency_spectrum(complete_graph(4));
  EXPECT_NEAR(ev.front(), 3.0, 1e-9);
}

TEST(spectral, margulis_bound_and_top_eigenvalue) {
  for (std::uint32_t n = 2; n <= 12; ++n) {
    const auto g = margulis_graph(n);
    const auto ev = adjacency_spectrum(g);
    EXPECT_NEAR(ev.front(), 8.0, 1e-6) << "n=" << n;
    EXPECT_LE(spectral_lambda(g), kMargulisLambdaBound + 1e-6) << "n=" << n;
  }
}

TEST(spectral, iterative_agrees_with_dense) {
  SpectralOptions iterative;
  iterative.mode = SpectralOptions::Mode::iterative;
  for (std::uint32_t n : {3u, 5u, 8u, 11u}) {
    const auto g = margulis_graph(n);
    EXPECT_NEAR(spectral_lambda(g, iterative), spectral_lambda(g), 1e-5) << "n=" << n;
  }
  // Bipartite: lambda_V = -2 dominates after deflation.
  EXPECT_NEAR(spectral_lambda(cycle_graph(6), iterative), 2.0, 1e-6);
}

TEST(spectral, dense_limit) {
  SpectralOptions opts;
  opts.dense_limit = 16;
  const auto g = margulis_graph(5);
  EXPECT_THROW(adjacency_spectrum(g, opts), TooLarge);
  opts.mode = SpectralOptions::Mode::dense;
  EXPECT_THROW(spectral_lambda(g, opts), TooLarge);
  opts.mode = SpectralOptions::Mode::automatic;  // falls through to power iteration
  EXPECT_NEAR(spectral_lambda(g, opts), 6.0, 1e-5);
}

TEST(random_walk, empty_and_deterministic) {
  const auto g = margulis_graph(5);
  const auto w0 = random_walk(g, 0, 1);
  EXPECT_TRUE(w0.visited.empty());
  EXPECT_LT(w0.start, 25u);
  const auto a = random_walk(g, 200, 77);
  const auto b = random_walk(g, 200, 77);
  EXPECT_EQ(a.start, b.start);
  EXPECT_EQ(a.labels, b.labels);
  EXPECT_EQ(a.visited, b.visited);
  EXPECT_EQ(a.length(), 200u);
  EXPECT_NE(random_walk(g, 200, 78).labels, a.labels);
}

TEST(random_walk, replay_regenerates_visits) {
  const auto g = margulis_graph(7);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto w = random_walk(g, 50, seed);
    EXPECT_EQ(replay_walk(g, w.start, w.labels), w.visited);
    if (!w.visited.empty()) {
      EXPECT_EQ(w.visited[0], g.neighbor(w.start, w.labels[0]));
    }
    for (std::size_t k = 1; k < w.visited.size(); ++k) {
      EXPECT_EQ(w.visited[k], g.neighbor(w.visited[k - 1], w.labels[k]));
    }
  }
  EXPECT_THROW(replay_walk(g, 0, {8}), ValidationError);
}

TEST(random_walk, label_frequencies_uniform) {
  // Single vertex with 8 self-loops; chi-square with 7 dof, 99% quantile 18.475.
  const RotationGraph g(1, 8, [](std::uint32_t, unsigned) { return 0u; });
  const std::uint64_t steps = 10000;
  const auto w = random_walk(g, steps, 2024);
  std::vector<double> counts(8, 0.0);
  for (auto l : w.labels) counts[l] += 1.0;
  const double expected = steps / 8.0;
  double chi2 = 0.0;
  for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
  EXPECT_LT(chi2, 18.475);
}

TEST(gillman, examples) {
  GillmanParams p;
  p.steps = 1000;
  p.deviation = 0.0;
  p.gap = 0.116;
  p.nq = 2.5;
  EXPECT_DOUBLE_EQ(gillman_bound(p), 10.0);
  p.nq = 1.0;
  p.deviation = 100.0;
  // 4 exp(-0.058), frozen from the oracle script.
  EXPECT_NEAR(gillman_bound(p), 3.7745997897471940579, 1e-12);
}

TEST(gillman, monotone_in_steps) {
  GillmanParams p;
  p.deviation = 50.0;
  p.gap = 0.2;
  double prev = 0.0;
  for (std::uint64_t n = 1; n <= 4096; n *= 2) {
    p.steps = n;
    const double v = gillman_bound(p);
    EXPECT_GT(v, prev);
    prev = v;
  }
}

TEST(gillman, validation) {
  GillmanParams p;
  p.gap = 0.0;
  EXPECT_THROW(gillman_bound(p), ValidationError);
  p.gap = 0.5;
  p.nq = 0.5;
  EXPECT_THROW(gillman_bound(p), ValidationError);
  p.nq = 1.0;
  p.steps = 0;
  EXPECT_THROW(gillman_bound(p), ValidationError);
}

TEST(walk_randomness_bits, examples) {
  EXPECT_EQ(walk_randomness_bits(100, 8, 25), 305u);
  EXPECT_EQ(walk_randomness_bits(0, 8, 25), 5u);
  EXPECT_EQ(walk_randomness_bits(64, 2, 2), 65u);
  EXPECT_EQ(walk_randomness_bits_literal(100, 8, 25), 805u);
}

TEST(edge_list, csv_rows) {
  std::ostringstream os;
  write_edge_list_csv(os, margulis_graph(2));
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "u,v,label");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  EXPECT_EQ(rows, 4 * 8);
}

}  // namespace
}  // namespace qhash

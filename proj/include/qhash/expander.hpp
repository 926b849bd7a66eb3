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
#include <functional>
#include <iosfwd>
#include <vector>

namespace qhash {

/// d-regular undirected multigraph given by its rotation map: every vertex
/// has exactly d edge labels, each naming a neighbor. Self-loops and parallel
/// edges are allowed; the neighbor multiset relation is symmetric.
class RotationGraph {
 public:
  using NeighborFn = std::function<std::uint32_t(std::uint32_t vertex, unsigned label)>;

  /// Builds the table from `fn` and validates range and symmetry.
  RotationGraph(std::uint32_t vertices, unsigned degree, const NeighborFn& fn);

  std::uint32_t vertex_count() const { return vertices_; }
  unsigned degree() const { return degree_; }
  std::uint32_t neighbor(std::uint32_t v, unsigned label) const {
    return table_[static_cast<std::size_t>(v) * degree_ + label];
  }

  /// Edge multiplicity u->v equals v->u for every pair.
  bool is_symmetric() const;

  /// y = A x.
  void multiply_adjacency(const std::vector<double>& x, std::vector<double>& y) const;

 private:
  std::uint32_t vertices_;
  unsigned degree_;
  std::vector<std::uint32_t> table_;
};

/// 8-regular Margulis expander on Z_n x Z_n (vertex x*n + y). Neighbors of
/// (x, y): (x+-y, y), (x+-(y+1), y), (x, y+-x), (x, y+-(x+1)), all mod n.
RotationGraph margulis_graph(std::uint32_t n);

/// Certified bound lambda <= 5 sqrt(2) for the Margulis family.
inline constexpr double kMargulisLambdaBound = 7.0710678118654752440;

struct SpectralOptions {
  enum class Mode { automatic, dense, iterative };
  Mode mode = Mode::automatic;
  /// Largest V for the dense eigensolver in automatic mode.
  std::uint32_t dense_limit = 4096;
  double tolerance = 1e-8;
  std::uint64_t max_iterations = 100000;
};

/// Adjacency eigenvalues sorted descending (dense; throws TooLarge above the
/// dense limit).
std::vector<double> adjacency_spectrum(const RotationGraph& graph,
                                       const SpectralOptions& options = {});

/// lambda(G) = max(|lambda_2|, |lambda_V|). Dense eigendecomposition up to
/// the dense limit; above it, power iteration on A^2 with the all-ones
/// eigenvector deflated.
double spectral_lambda(const RotationGraph& graph, const SpectralOptions& options = {});

struct WalkRecord {
  std::uint32_t start = 0;
  std::vector<unsigned> labels;  ///< one per step, length t
  std::vector<std::uint32_t> visited;  ///< s_1..s_t, s_1 = neighbor(start, labels[0])

  std::size_t length() const { return labels.size(); }
};

/// Uniform start vertex, then t uniform edge labels, all from one seeded stream.
WalkRecord random_walk(const RotationGraph& graph, std::uint64_t t, std::uint64_t seed);

/// Regenerates the visited sequence from a start vertex and labels.
std::vector<std::uint32_t> replay_walk(const RotationGraph& graph, std::uint32_t start,
                                       const std::vector<unsigned>& labels);

/// Parameters of the Chernoff bound for sums along expander walks.
struct GillmanParams {
  std::uint64_t steps = 1;     ///< n
  double deviation = 0.0;      ///< gamma
  double gap = 1.0;            ///< epsilon = 1 - lambda, in (0, 1]
  double nq = 1.0;             ///< initial-distribution factor N_q >= 1
  double f_sup_norm = 1.0;     ///< ||f||_inf

  void validate() const;
};

/// 4 N_q exp(-(gamma / ||f||_inf)^2 * eps / (20 n)). An upper bound; may exceed 1.
double gillman_bound(const GillmanParams& p);

/// ceil(log2 V) + t * ceil(log2 d): start vertex plus one label per step.
std::uint64_t walk_randomness_bits(std::uint64_t t, std::uint64_t d, std::uint64_t vertices);

/// t * d + ceil(log2 V), the count read literally off the construction's text.
std::uint64_t walk_randomness_bits_literal(std::uint64_t t, std::uint64_t d,
                                           std::uint64_t vertices);

unsigned ceil_log2(std::uint64_t x);

/// "u,v,label" rows, one per (vertex, label).
void write_edge_list_csv(std::ostream& os, const RotationGraph& graph);

}  // namespace qhash

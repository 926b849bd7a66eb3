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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

#include "qhash/error.hpp"
#include "qhash/random.hpp"

namespace qhash {

RotationGraph::RotationGraph(std::uint32_t vertices, unsigned degree, const NeighborFn& fn)
    : vertices_(vertices), degree_(degree), table_(static_cast<std::size_t>(vertices) * degree) {
  if (vertices == 0) throw ValidationError("graph needs at least one vertex");
  if (degree == 0) throw ValidationError("graph degree must be >= 1");
  for (std::uint32_t v = 0; v < vertices; ++v) {
    for (unsigned l = 0; l < degree; ++l) {
      const auto u = fn(v, l);
      if (u >= vertices) throw ValidationError("neighbor map leaves the vertex set");
      table_[static_cast<std::size_t>(v) * degree + l] = u;
    }
  }
  if (!is_symmetric()) throw ValidationError("neighbor relation is not symmetric");
}

bool RotationGraph::is_symmetric() const {
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::int64_t> balance;
  for (std::uint32_t v = 0; v < vertices_; ++v) {
    for (unsigned l = 0; l < degree_; ++l) {
      const auto u = neighbor(v, l);
      if (u == v) continue;
      if (v < u) ++balance[{v, u}];
      else --balance[{u, v}];
    }
  }
  return std::all_of(balance.begin(), balance.end(), [](const auto& kv) { return kv.second == 0; });
}

void RotationGraph::multiply_adjacency(const std::vector<double>& x, std::vector<double>& y) const {
  y.assign(vertices_, 0.0);
  for (std::uint32_t v = 0; v < vertices_; ++v) {
    double s = 0.0;
    const auto* row = &table_[static_cast<std::size_t>(v) * degree_];
    for (unsigned l = 0; l < degree_; ++l) s += x[row[l]];
    y[v] = s;
  }
}

RotationGraph margulis_graph(std::uint32_t n) {
  if (n < 2) throw ValidationError("margulis_graph: n must be >= 2");
  if (n > 65535) throw ValidationError("margulis_graph: n too large");
  const std::uint64_t m = n;
  return RotationGraph(n * n, 8, [m](std::uint32_t v, unsigned label) -> std::uint32_t {
    const std::uint64_t x = v / m, y = v % m;
    std::uint64_t nx = x, ny = y;
    switch (label) {
      case 0: nx = (x + y) % m; break;
      case 1: nx = (x + m - y) % m; break;
      case 2: nx = (x + y + 1) % m; break;
      case 3: nx = (x + 2 * m - y - 1) % m; break;
      case 4: ny = (y + x) % m; break;
      case 5: ny = (y + m - x) % m; break;
      case 6: ny = (y + x + 1) % m; break;
      default: ny = (y + 2 * m - x - 1) % m; break;
    }
    return static_cast<std::uint32_t>(nx * m + ny);
  });
}

std::vector<double> adjacency_spectrum(const RotationGraph& graph, const SpectralOptions& options) {
  const auto V = graph.vertex_count();
  if (V > options.dense_limit) {
    throw TooLarge("dense spectrum limited to " + std::to_string(options.dense_limit) +
                   " vertices; use iterative mode");
  }
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(V, V);
  for (std::uint32_t v = 0; v < V; ++v) {
    for (unsigned l = 0; l < graph.degree(); ++l) a(v, graph.neighbor(v, l)) += 1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver did not converge");
  std::vector<double> ev(solver.eigenvalues().data(), solver.eigenvalues().data() + V);
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

namespace {

double lambda_power_iteration(const RotationGraph& graph, const SpectralOptions& options) {
  const auto V = graph.vertex_count();
  if (V == 1) return 0.0;
  auto deflate = [V](std::vector<double>& x) {
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= V;
    for (double& v : x) v -= mean;
  };
  auto norm = [](const std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
  };

  std::vector<double> x(V), y, z;
  Rng rng(derive_seed(0, "power_iteration"));
  for (auto& v : x) v = rng.uniform01() - 0.5;
  deflate(x);
  double nx = norm(x);
  if (nx == 0.0) return 0.0;
  for (auto& v : x) v /= nx;

  // Iterating with A^2 makes +lambda_2 and -lambda_V compete on magnitude.
  double estimate = 0.0;
  for (std::uint64_t it = 0; it < options.max_iterations; ++it) {
    graph.multiply_adjacency(x, y);
    graph.multiply_adjacency(y, z);
    deflate(z);
    double rayleigh = 0.0;
    for (std::uint32_t i = 0; i < V; ++i) rayleigh += x[i] * z[i];
    const double next = std::sqrt(std::max(0.0, rayleigh));
    const double nz = norm(z);
    if (nz == 0.0) return 0.0;
    for (std::uint32_t i = 0; i < V; ++i) x[i] = z[i] / nz;
    if (it > 0 && std::abs(next - estimate) <= options.tolerance * std::max(1.0, next)) {
      return next;
    }
    estimate = next;
  }
  return estimate;
}

}  // namespace

double spectral_lambda(const RotationGraph& graph, const SpectralOptions& options) {
  using Mode = SpectralOptions::Mode;
  const bool dense = options.mode == Mode::dense ||
                     (options.mode == Mode::automatic && graph.vertex_count() <= options.dense_limit);
  if (!dense) return lambda_power_iteration(graph, options);
  const auto ev = adjacency_spectrum(graph, options);
  if (ev.size() < 2) return 0.0;
  return std::max(std::abs(ev[1]), std::abs(ev.back()));
}

WalkRecord random_walk(const RotationGraph& graph, std::uint64_t t, std::uint64_t seed) {
  Rng rng(derive_seed(seed, "random_walk"));
  WalkRecord w;
  w.start = static_cast<std::uint32_t>(rng.uniform_below(graph.vertex_count()));
  w.labels.reserve(t);
  for (std::uint64_t k = 0; k < t; ++k) {
    w.labels.push_back(static_cast<unsigned>(rng.uniform_below(graph.degree())));
  }
  w.visited = replay_walk(graph, w.start, w.labels);
  return w;
}

std::vector<std::uint32_t> replay_walk(const RotationGraph& graph, std::uint32_t start,
                                       const std::vector<unsigned>& labels) {
  if (start >= graph.vertex_count()) throw ValidationError("walk start outside the graph");
  std::vector<std::uint32_t> visited;
  visited.reserve(labels.size());
  auto v = start;
  for (auto l : labels) {
    if (l >= graph.degree()) throw ValidationError("walk label outside [0, d)");
    v = graph.neighbor(v, l);
    visited.push_back(v);
  }
  return visited;
}

void GillmanParams::validate() const {
  if (steps < 1) throw ValidationError("gillman: steps must be >= 1");
  if (!(deviation >= 0.0)) throw ValidationError("gillman: deviation must be >= 0");
  if (!(gap > 0.0 && gap <= 1.0)) throw ValidationError("gillman: gap must lie in (0, 1]");
  if (!(nq >= 1.0)) throw ValidationError("gillman: N_q must be >= 1");
  if (!(f_sup_norm > 0.0)) throw ValidationError("gillman: ||f||_inf must be positive");
}

double gillman_bound(const GillmanParams& p) {
  p.validate();
  const double r = p.deviation / p.f_sup_norm;
  return 4.0 * p.nq * std::exp(-r * r * p.gap / (20.0 * static_cast<double>(p.steps)));
}

unsigned ceil_log2(std::uint64_t x) {
  unsigned b = 0;
  while (b < 64 && (std::uint64_t{1} << b) < x) ++b;
  return b;
}

std::uint64_t walk_randomness_bits(std::uint64_t t, std::uint64_t d, std::uint64_t vertices) {
  return ceil_log2(vertices) + t * ceil_log2(d);
}

std::uint64_t walk_randomness_bits_literal(std::uint64_t t, std::uint64_t d,
                                           std::uint64_t vertices) {
  return t * d + ceil_log2(vertices);
}

void write_edge_list_csv(std::ostream& os, const RotationGraph& graph) {
  os << "u,v,label\n";
  for (std::uint32_t v = 0; v < graph.vertex_count(); ++v) {
    for (unsigned l = 0; l < graph.degree(); ++l) {
      os << v << ',' << graph.neighbor(v, l) << ',' << l << '\n';
    }
  }
}

}  // namespace qhash

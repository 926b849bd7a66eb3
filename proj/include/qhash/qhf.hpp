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
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qhash/expander.hpp"
#include "qhash/extractor.hpp"
#include "qhash/group.hpp"
#include "qhash/state.hpp"

namespace qhash {

enum class Variant { iid, expander, extractor_seeded };

std::string variant_name(Variant v);
Variant parse_variant(const std::string& name);

/// Extractor and seed source of an extractor-seeded instance. Group elements
/// enter the extractor through their row-major index, so the group order
/// must not exceed 2^n.
struct ExtractorSetup {
  ExtractorSpec spec;
  double k = 0.0;
  /// Support of the flat k-source that S was drawn from (element indices).
  std::vector<std::uint64_t> source_support;
};

/// A frozen hash construction. Hash states are a pure function of the
/// instance and the message.
///
///   iid / expander:    psi(g) = t^{-1/2} sum_k chi_{s_k}(g) |k>
///   extractor_seeded:  psi(g) = (t 2^d)^{-1/2} sum_i sum_j chi(Ext(g o s_i, j)) |j>|i>
///
/// with chi_a(x) = exp(2 pi i <a, x> / m) and, for the extractor variant,
/// chi the index-1 character of Z_{2^m} applied to the output bits.
class QHFInstance {
 public:
  static QHFInstance make(Variant variant, GroupSpec group, std::vector<GroupElement> seeds,
                          std::uint64_t build_seed, std::optional<ExtractorSetup> extractor = {},
                          std::optional<WalkRecord> walk = {});

  Variant variant() const { return variant_; }
  const GroupSpec& group() const { return group_; }
  std::uint64_t t() const { return seeds_.size(); }
  const std::vector<GroupElement>& seeds() const { return seeds_; }
  std::uint64_t build_seed() const { return build_seed_; }
  const std::optional<ExtractorSetup>& extractor() const { return extractor_; }
  const std::optional<WalkRecord>& walk() const { return walk_; }

  std::size_t dimension() const;
  /// {t} or {2^d, t}.
  std::vector<std::size_t> registers() const;
  double normalization() const;
  unsigned qubits() const { return qubit_count(dimension()); }

  /// Phase table of order m (iid/expander) or 2^m (extractor outputs).
  const RootsOfUnity& roots() const { return *roots_; }

 private:
  QHFInstance() = default;

  Variant variant_ = Variant::iid;
  GroupSpec group_ = GroupSpec::cyclic(2);
  std::vector<GroupElement> seeds_;
  std::uint64_t build_seed_ = 0;
  std::optional<ExtractorSetup> extractor_;
  std::optional<WalkRecord> walk_;
  std::shared_ptr<const RootsOfUnity> roots_;
};

/// s_i i.i.d. uniform over the group.
QHFInstance build_iid(const GroupSpec& group, std::uint64_t t, std::uint64_t seed);

/// S = every element of the group (t = |G|): the full dual, exactly orthogonal.
QHFInstance build_full_dual(const GroupSpec& group);

/// S = vertices of a seeded random walk of length t on margulis_graph(n),
/// vertices labelled by Z_n x Z_n elements.
QHFInstance build_expander(std::uint32_t n, std::uint64_t t, std::uint64_t seed);

/// S drawn from a random flat k-source over `group`.
QHFInstance build_extractor_qhf(const ExtractorSpec& spec, std::uint64_t t, double k,
                                std::uint64_t seed);
QHFInstance build_extractor_qhf(const ExtractorSpec& spec, const GroupSpec& group, std::uint64_t t,
                                double k, std::uint64_t seed);

HashState hash_eval(const QHFInstance& inst, const GroupElement& g);

/// Keyed tag: the extractor hash with every seed shifted by the key.
HashState keyed_hash(const QHFInstance& inst, const GroupElement& key, const GroupElement& g);

/// hash_eval for every element of the group, in index order.
std::vector<HashState> hash_all(const QHFInstance& inst);

/// Classical random bits consumed to build the instance.
std::uint64_t randomness_budget(const QHFInstance& inst);

/// Build parameters, enough to reconstruct an instance (and to rebuild it
/// under other seeds).
struct InstanceConfig {
  Variant variant = Variant::iid;
  GroupSpec group = GroupSpec::cyclic(2);
  std::uint64_t t = 1;
  std::uint64_t seed = 0;
  bool full_dual = false;
  std::optional<ExtractorSpec> extractor;
  double k = 0.0;
};

QHFInstance build_instance(const InstanceConfig& config);

struct PlannerReport {
  Variant variant = Variant::expander;
  double requested = 0.0;  ///< delta (expander) or epsilon (extractor)
  std::uint64_t group_order = 0;
  std::uint64_t target_order = 0;
  double lambda_ratio = 0.0;
  /// ceil(20 / ((1 - lambda) delta) ln(4|G|)) or ceil((log2|H| + 1) / (2 eps^2)).
  std::uint64_t t_paper = 0;
  /// Expander: delta^2 in place of delta. Extractor: equals t_paper.
  std::uint64_t t_rederived = 0;
  /// Expander: ceil(160 sqrt(2) / (3 delta) ln(4|G|)), the Margulis-family constant.
  std::uint64_t t_corollary = 0;
  std::uint64_t randomness_bits = 0;
  std::uint64_t randomness_bits_literal = 0;
  unsigned qubits = 0;
};

/// Walk length for delta-resistance on a graph with normalized second
/// eigenvalue lambda_ratio = lambda / d.
PlannerReport plan_t_expander(double delta, std::uint64_t group_order, double lambda_ratio,
                              unsigned degree = 8);

/// Seed count for epsilon-resistance with target group H. group_order and
/// seed_bits only feed the budget and qubit fields (0 = use target_order / none).
PlannerReport plan_t_extractor(double eps, std::uint64_t target_order,
                               std::uint64_t group_order = 0, unsigned seed_bits = 0);

/// Normalized Margulis bound 5 sqrt(2) / 8.
inline constexpr double kMargulisLambdaRatio = kMargulisLambdaBound / 8.0;

}  // namespace qhash

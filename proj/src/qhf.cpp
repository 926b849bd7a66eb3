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

#include "qhash/qhf.hpp"

#include <cmath>
#include <numbers>

#include "qhash/error.hpp"
#include "qhash/random.hpp"

namespace qhash {

namespace {

// ceil() that does not round 450.00000000000006 up to 451 when the exact
// value is an integer.
std::uint64_t ceil_planned(double x) {
  const double r = std::round(x);
  if (std::abs(x - r) <= 1e-9 * std::max(1.0, std::abs(x))) return static_cast<std::uint64_t>(r);
  return static_cast<std::uint64_t>(std::ceil(x));
}

}  // namespace

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::iid: return "iid";
    case Variant::expander: return "expander";
    case Variant::extractor_seeded: return "extractor_seeded";
  }
  return "unknown";
}

Variant parse_variant(const std::string& name) {
  if (name == "iid") return Variant::iid;
  if (name == "expander") return Variant::expander;
  if (name == "extractor_seeded" || name == "extractor") return Variant::extractor_seeded;
  throw ValidationError("unknown variant '" + name + "' (expected iid, expander, extractor)");
}

QHFInstance QHFInstance::make(Variant variant, GroupSpec group, std::vector<GroupElement> seeds,
                              std::uint64_t build_seed, std::optional<ExtractorSetup> extractor,
                              std::optional<WalkRecord> walk) {
  if (seeds.empty()) throw ValidationError("instance needs t >= 1");
  for (const auto& s : seeds) {
    if (s.group() != group) throw SpecMismatch("seed element outside the instance group");
  }
  if (variant == Variant::extractor_seeded) {
    if (!extractor) throw ValidationError("extractor-seeded instance needs an extractor");
    if (group.order() > (std::uint64_t{1} << extractor->spec.input_bits())) {
      throw ValidationError("group " + group.name() + " does not embed into " +
                            std::to_string(extractor->spec.input_bits()) + "-bit strings");
    }
  } else if (extractor) {
    throw ValidationError("only the extractor-seeded variant carries an extractor");
  }
  if (variant == Variant::expander) {
    if (group.kind() != GroupSpec::Kind::product) {
      throw ValidationError("expander instances live on Z_n x Z_n");
    }
    if (walk) {
      if (walk->length() != seeds.size()) throw ValidationError("walk length must equal t");
      const auto graph = margulis_graph(static_cast<std::uint32_t>(group.modulus()));
      if (replay_walk(graph, walk->start, walk->labels) != walk->visited) {
        throw ValidationError("walk record does not replay");
      }
      for (std::size_t k = 0; k < seeds.size(); ++k) {
        if (seeds[k].index() != walk->visited[k]) throw ValidationError("seeds differ from the walk");
      }
    }
  }

  QHFInstance inst;
  inst.variant_ = variant;
  inst.group_ = group;
  inst.seeds_ = std::move(seeds);
  inst.build_seed_ = build_seed;
  inst.extractor_ = std::move(extractor);
  inst.walk_ = std::move(walk);
  const std::uint64_t order = variant == Variant::extractor_seeded
                                  ? std::uint64_t{1} << inst.extractor_->spec.output_bits()
                                  : group.modulus();
  inst.roots_ = std::make_shared<const RootsOfUnity>(order);
  return inst;
}

std::size_t QHFInstance::dimension() const {
  if (variant_ == Variant::extractor_seeded) {
    return seeds_.size() * (std::size_t{1} << extractor_->spec.seed_bits());
  }
  return seeds_.size();
}

std::vector<std::size_t> QHFInstance::registers() const {
  if (variant_ == Variant::extractor_seeded) {
    return {std::size_t{1} << extractor_->spec.seed_bits(), seeds_.size()};
  }
  return {seeds_.size()};
}

double QHFInstance::normalization() const {
  return 1.0 / std::sqrt(static_cast<double>(dimension()));
}

QHFInstance build_iid(const GroupSpec& group, std::uint64_t t, std::uint64_t seed) {
  if (t < 1) throw ValidationError("build_iid: t must be >= 1");
  Rng rng(derive_seed(seed, "iid_seeds"));
  std::vector<GroupElement> s;
  s.reserve(t);
  for (std::uint64_t i = 0; i < t; ++i) {
    s.push_back(GroupElement::from_index(group, rng.uniform_below(group.order())));
  }
  return QHFInstance::make(Variant::iid, group, std::move(s), seed);
}

QHFInstance build_full_dual(const GroupSpec& group) {
  std::vector<GroupElement> s;
  s.reserve(group.order());
  for (std::uint64_t i = 0; i < group.order(); ++i) s.push_back(GroupElement::from_index(group, i));
  return QHFInstance::make(Variant::iid, group, std::move(s), 0);
}

QHFInstance build_expander(std::uint32_t n, std::uint64_t t, std::uint64_t seed) {
  if (t < 1) throw ValidationError("build_expander: t must be >= 1");
  const auto graph = margulis_graph(n);
  const auto group = GroupSpec::product(n);
  auto walk = random_walk(graph, t, seed);
  std::vector<GroupElement> s;
  s.reserve(t);
  for (auto v : walk.visited) s.push_back(GroupElement::from_index(group, v));
  return QHFInstance::make(Variant::expander, group, std::move(s), seed, std::nullopt,
                           std::move(walk));
}

QHFInstance build_extractor_qhf(const ExtractorSpec& spec, const GroupSpec& group, std::uint64_t t,
                                double k, std::uint64_t seed) {
  if (t < 1) throw ValidationError("build_extractor_qhf: t must be >= 1");
  if (group.order() > (std::uint64_t{1} << spec.input_bits())) {
    throw ValidationError("group " + group.name() + " does not embed into " +
                          std::to_string(spec.input_bits()) + "-bit strings");
  }
  Rng source_rng(derive_seed(seed, "extractor_source"));
  const auto source = SourceDistribution::random_flat(group.order(), k, source_rng);
  const auto& support = source.support();
  Rng rng(derive_seed(seed, "extractor_seeds"));
  std::vector<GroupElement> s;
  s.reserve(t);
  for (std::uint64_t i = 0; i < t; ++i) {
    s.push_back(GroupElement::from_index(group, support[rng.uniform_below(support.size())]));
  }
  return QHFInstance::make(Variant::extractor_seeded, group, std::move(s), seed,
                           ExtractorSetup{spec, k, support});
}

QHFInstance build_extractor_qhf(const ExtractorSpec& spec, std::uint64_t t, double k,
                                std::uint64_t seed) {
  return build_extractor_qhf(spec, GroupSpec::cyclic(std::uint64_t{1} << spec.input_bits()), t, k,
                             seed);
}

HashState hash_eval(const QHFInstance& inst, const GroupElement& g) {
  if (g.group() != inst.group()) {
    throw SpecMismatch("message in " + g.group().name() + ", instance on " + inst.group().name());
  }
  const double scale = inst.normalization();
  const auto& roots = inst.roots();
  const auto t = inst.t();
  std::vector<Complex> amps(inst.dimension());
  if (inst.variant() != Variant::extractor_seeded) {
    for (std::uint64_t k = 0; k < t; ++k) amps[k] = roots[pairing(inst.seeds()[k], g)] * scale;
  } else {
    const auto& ext = inst.extractor()->spec;
    const std::uint32_t seeds = std::uint32_t{1} << ext.seed_bits();
    for (std::uint64_t i = 0; i < t; ++i) {
      const auto x = static_cast<std::uint32_t>(op_apply(g, inst.seeds()[i]).index());
      for (std::uint32_t j = 0; j < seeds; ++j) amps[j * t + i] = roots[ext.eval(x, j)] * scale;
    }
  }
  return HashState::checked(std::move(amps), inst.registers(), g.to_string());
}

HashState keyed_hash(const QHFInstance& inst, const GroupElement& key, const GroupElement& g) {
  if (inst.variant() != Variant::extractor_seeded) {
    throw ValidationError("keyed_hash needs an extractor-seeded instance");
  }
  if (key.group() != inst.group()) throw SpecMismatch("key outside the instance group");
  return hash_eval(inst, op_apply(g, key));
}

std::vector<HashState> hash_all(const QHFInstance& inst) {
  std::vector<HashState> out;
  out.reserve(inst.group().order());
  for (std::uint64_t i = 0; i < inst.group().order(); ++i) {
    out.push_back(hash_eval(inst, GroupElement::from_index(inst.group(), i)));
  }
  return out;
}

std::uint64_t randomness_budget(const QHFInstance& inst) {
  switch (inst.variant()) {
    case Variant::iid: return inst.t() * inst.group().index_bits();
    case Variant::expander: return walk_randomness_bits(inst.t(), 8, inst.group().order());
    case Variant::extractor_seeded:
      return inst.t() * static_cast<std::uint64_t>(std::ceil(inst.extractor()->k));
  }
  return 0;
}

QHFInstance build_instance(const InstanceConfig& c) {
  switch (c.variant) {
    case Variant::iid:
      return c.full_dual ? build_full_dual(c.group) : build_iid(c.group, c.t, c.seed);
    case Variant::expander:
      if (c.group.kind() != GroupSpec::Kind::product) {
        throw ValidationError("expander variant needs a Z_n x Z_n group (e.g. 5x5)");
      }
      return build_expander(static_cast<std::uint32_t>(c.group.modulus()), c.t, c.seed);
    case Variant::extractor_seeded:
      if (!c.extractor) throw ValidationError("extractor variant needs an extractor spec");
      return build_extractor_qhf(*c.extractor, c.group, c.t, c.k, c.seed);
  }
  throw ValidationError("unknown variant");
}

PlannerReport plan_t_expander(double delta, std::uint64_t group_order, double lambda_ratio,
                              unsigned degree) {
  if (!(delta > 0.0 && delta < 0.5)) throw ValidationError("delta must lie in (0, 1/2)");
  if (!(lambda_ratio >= 0.0 && lambda_ratio < 1.0)) {
    throw ValidationError("lambda ratio must lie in [0, 1)");
  }
  if (group_order < 2) throw ValidationError("group order must be >= 2");
  const double log_term = std::log(4.0 * static_cast<double>(group_order));
  const double gap = 1.0 - lambda_ratio;
  PlannerReport r;
  r.variant = Variant::expander;
  r.requested = delta;
  r.group_order = group_order;
  r.target_order = group_order;
  r.lambda_ratio = lambda_ratio;
  r.t_paper = ceil_planned(20.0 / (gap * delta) * log_term);
  r.t_rederived = ceil_planned(20.0 / (gap * delta * delta) * log_term);
  r.t_corollary = ceil_planned(160.0 * std::numbers::sqrt2 / (3.0 * delta) * log_term);
  r.randomness_bits = walk_randomness_bits(r.t_paper, degree, group_order);
  r.randomness_bits_literal = walk_randomness_bits_literal(r.t_paper, degree, group_order);
  r.qubits = qubit_count(r.t_paper);
  return r;
}

PlannerReport plan_t_extractor(double eps, std::uint64_t target_order, std::uint64_t group_order,
                               unsigned seed_bits) {
  if (!(eps > 0.0 && eps < 1.0)) throw ValidationError("epsilon must lie in (0, 1)");
  if (target_order < 2) throw ValidationError("target order must be >= 2");
  if (group_order == 0) group_order = target_order;
  PlannerReport r;
  r.variant = Variant::extractor_seeded;
  r.requested = eps;
  r.group_order = group_order;
  r.target_order = target_order;
  r.t_paper = ceil_planned((std::log2(static_cast<double>(target_order)) + 1.0) / (2.0 * eps * eps));
  r.t_rederived = r.t_paper;
  r.randomness_bits = r.t_paper * ceil_log2(group_order);
  r.randomness_bits_literal = r.randomness_bits;
  r.qubits = qubit_count(r.t_paper) + seed_bits;
  return r;
}

}  // namespace qhash

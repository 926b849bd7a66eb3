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

#include "qhash/serialize.hpp"

#include <charconv>
#include <cmath>

#include "qhash/error.hpp"

namespace qhash {

namespace {

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ValidationError(std::string("missing field '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    throw ValidationError(std::string("field '") + key + "' has the wrong type");
  }
}

Json double_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

Json to_json(const GroupSpec& g) {
  return {{"kind", g.kind() == GroupSpec::Kind::cyclic ? "cyclic" : "product"},
          {"modulus", g.modulus()},
          {"order", g.order()}};
}

GroupSpec group_from_json(const Json& j) {
  if (j.is_string()) return GroupSpec::parse(j.get<std::string>());
  if (j.is_number_unsigned()) return GroupSpec::cyclic(j.get<std::uint64_t>());
  const auto kind = field<std::string>(j, "kind");
  const auto modulus = field<std::uint64_t>(j, "modulus");
  if (kind == "cyclic") return GroupSpec::cyclic(modulus);
  if (kind == "product") return GroupSpec::product(modulus);
  throw ValidationError("unknown group kind '" + kind + "'");
}

Json to_json(const GroupElement& e) { return e.coords(); }

GroupElement element_from_json(const GroupSpec& g, const Json& j) {
  if (j.is_string()) return GroupElement::parse(g, j.get<std::string>());
  if (j.is_number_unsigned()) {
    if (g.arity() != 1) throw ValidationError("element needs two coordinates");
    const auto v = j.get<std::uint64_t>();
    if (v >= g.modulus()) throw ValidationError("coordinate out of range");
    return {g, v};
  }
  if (!j.is_array() || j.size() != g.arity()) {
    throw ValidationError("element must be an array of " + std::to_string(g.arity()) +
                          " coordinate(s)");
  }
  std::uint64_t c[2] = {0, 0};
  for (std::size_t i = 0; i < g.arity(); ++i) {
    if (!j[i].is_number_unsigned()) throw ValidationError("coordinates must be non-negative integers");
    c[i] = j[i].get<std::uint64_t>();
    if (c[i] >= g.modulus()) throw ValidationError("coordinate out of range");
  }
  return {g, c[0], c[1]};
}

Json to_json(const HashState& s) {
  Json amps = Json::array();
  for (const auto& a : s.amplitudes()) amps.push_back({a.real(), a.imag()});
  Json j = {{"dimension", s.dimension()}, {"registers", s.registers()}, {"amplitudes", amps},
            {"qubits", s.qubits()}};
  if (!s.label().empty()) j["label"] = s.label();
  return j;
}

HashState state_from_json(const Json& j) {
  const Json& amps = j.is_array() ? j : j.at("amplitudes");
  std::vector<Complex> v;
  v.reserve(amps.size());
  for (const auto& p : amps) {
    if (!p.is_array() || p.size() != 2) throw ValidationError("amplitudes must be [re, im] pairs");
    v.emplace_back(p[0].get<double>(), p[1].get<double>());
  }
  std::vector<std::size_t> regs;
  if (j.is_object() && j.contains("registers")) regs = j.at("registers").get<std::vector<std::size_t>>();
  std::string label = j.is_object() ? j.value("label", std::string{}) : std::string{};
  return HashState::checked(std::move(v), std::move(regs), std::move(label));
}

Json to_json(const ExtractorSpec& e) {
  return {{"family", e.family_name()},
          {"n", e.input_bits()},
          {"d", e.seed_bits()},
          {"m", e.output_bits()}};
}

ExtractorSpec extractor_from_json(const Json& j) {
  const auto family = ExtractorSpec::parse_family(field<std::string>(j, "family"));
  const auto n = field<unsigned>(j, "n");
  const auto m = j.contains("m") ? field<unsigned>(j, "m") : 1u;
  const auto d = j.contains("d") ? field<unsigned>(j, "d") : n;
  return ExtractorSpec::make(family, n, d, m);
}

Json to_json(const WalkRecord& w) {
  return {{"start", w.start}, {"labels", w.labels}, {"visited", w.visited}};
}

WalkRecord walk_from_json(const Json& j) {
  WalkRecord w;
  w.start = field<std::uint32_t>(j, "start");
  w.labels = field<std::vector<unsigned>>(j, "labels");
  w.visited = field<std::vector<std::uint32_t>>(j, "visited");
  return w;
}

Json to_json(const QHFInstance& inst) {
  Json seeds = Json::array();
  for (const auto& s : inst.seeds()) seeds.push_back(to_json(s));
  Json j = {{"variant", variant_name(inst.variant())},
            {"group", to_json(inst.group())},
            {"t", inst.t()},
            {"seed", inst.build_seed()},
            {"seeds", seeds},
            {"dimension", inst.dimension()},
            {"qubits", inst.qubits()},
            {"randomness_bits", randomness_budget(inst)}};
  if (inst.extractor()) {
    Json e = to_json(inst.extractor()->spec);
    e["k"] = inst.extractor()->k;
    e["source_support"] = inst.extractor()->source_support;
    j["extractor"] = e;
  }
  if (inst.walk()) j["walk"] = to_json(*inst.walk());
  return j;
}

QHFInstance instance_from_json(const Json& j) {
  const auto variant = parse_variant(field<std::string>(j, "variant"));
  const auto group = group_from_json(j.at("group"));
  std::vector<GroupElement> seeds;
  for (const auto& s : j.at("seeds")) seeds.push_back(element_from_json(group, s));
  if (j.contains("t") && field<std::uint64_t>(j, "t") != seeds.size()) {
    throw ValidationError("t does not match the number of seeds");
  }
  std::optional<ExtractorSetup> ext;
  if (j.contains("extractor")) {
    const auto& e = j.at("extractor");
    ext = ExtractorSetup{extractor_from_json(e), field<double>(e, "k"),
                         e.value("source_support", std::vector<std::uint64_t>{})};
  }
  std::optional<WalkRecord> walk;
  if (j.contains("walk")) walk = walk_from_json(j.at("walk"));
  return QHFInstance::make(variant, group, std::move(seeds), j.value("seed", std::uint64_t{0}),
                           std::move(ext), std::move(walk));
}

Json to_json(const InstanceConfig& c) {
  Json j = {{"variant", variant_name(c.variant)},
            {"group", to_json(c.group)},
            {"t", c.t},
            {"seed", c.seed},
            {"full_dual", c.full_dual}};
  if (c.extractor) {
    j["extractor"] = to_json(*c.extractor);
    j["extractor"]["k"] = c.k;
  }
  return j;
}

InstanceConfig config_from_json(const Json& j) {
  InstanceConfig c;
  c.variant = parse_variant(field<std::string>(j, "variant"));
  c.group = group_from_json(j.at("group"));
  c.t = j.contains("t") ? field<std::uint64_t>(j, "t") : 1;
  c.seed = j.value("seed", std::uint64_t{0});
  c.full_dual = j.value("full_dual", false);
  if (j.contains("extractor")) {
    c.extractor = extractor_from_json(j.at("extractor"));
    c.k = j.at("extractor").contains("k") ? field<double>(j.at("extractor"), "k")
                                          : static_cast<double>(c.extractor->input_bits());
  }
  if (c.t < 1) throw ValidationError("t must be >= 1");
  return c;
}

InstanceConfig config_of(const QHFInstance& inst) {
  InstanceConfig c;
  c.variant = inst.variant();
  c.group = inst.group();
  c.t = inst.t();
  c.seed = inst.build_seed();
  if (inst.extractor()) {
    c.extractor = inst.extractor()->spec;
    c.k = inst.extractor()->k;
  }
  return c;
}

Json to_json(const PlannerReport& r) {
  Json j = {{"variant", variant_name(r.variant)},
            {"group_order", r.group_order},
            {"target_order", r.target_order},
            {"t_paper", r.t_paper},
            {"t_rederived", r.t_rederived},
            {"randomness_bits", r.randomness_bits},
            {"qubits", r.qubits}};
  if (r.variant == Variant::expander) {
    j["delta"] = r.requested;
    j["lambda_ratio"] = r.lambda_ratio;
    j["t_corollary"] = r.t_corollary;
    j["randomness_bits_literal"] = r.randomness_bits_literal;
  } else {
    j["epsilon"] = r.requested;
  }
  return j;
}

Json to_json(const ResistanceReport& r) {
  Json strategy = {{"kind", r.strategy.kind == PairStrategy::Kind::exhaustive ? "exhaustive"
                                                                               : "sampled"}};
  if (r.strategy.kind == PairStrategy::Kind::sampled) strategy["samples"] = r.strategy.samples;
  return {{"instance", r.instance},
          {"strategy", strategy},
          {"max_overlap", r.max_overlap},
          {"mean_overlap", r.mean_overlap},
          {"histogram", {{"bin_width", kHistogramBinWidth}, {"counts", r.histogram}}},
          {"target_delta", r.target_delta},
          {"satisfied", r.satisfied},
          {"pairs", r.pairs}};
}

Json to_json(const ComparisonRow& r) {
  return {{"variant", variant_name(r.variant)},
          {"t", r.t},
          {"randomness_bits", r.randomness_bits},
          {"qubits", r.qubits},
          {"max_overlap", r.max_overlap},
          {"satisfied", r.satisfied}};
}

Json to_json(const SwapVerifyResult& r) {
  return {{"exact_prob", r.exact_prob},
          {"frequency", r.frequency},
          {"z_score", double_or_null(r.z_score)},
          {"accepts", r.accepts},
          {"reps", r.reps}};
}

Json to_json(const SweepReport& r) {
  return {{"seeds", r.seeds},
          {"satisfied", r.satisfied},
          {"satisfied_fraction", r.satisfied_fraction},
          {"failing_fraction", r.failing_fraction},
          {"target_delta", r.target_delta},
          {"max_overlaps", r.max_overlaps},
          {"instance_seeds", r.instance_seeds}};
}

Json to_json(const ExtractorQuality& q) {
  return {{"max_distance", q.max_distance},
          {"mean_distance", q.mean_distance},
          {"lhl_bound", q.lhl_bound},
          {"achieved_min_entropy", q.achieved_min_entropy},
          {"sources", q.sources}};
}

Json to_json(const ForgeReport& r) {
  Json j = {{"acceptance_rate", r.acceptance_rate},
            {"accepted", r.accepted},
            {"trials", r.trials},
            {"tau", r.tau},
            {"theorem_bound", r.theorem_bound},
            {"qubits", r.qubits},
            {"mean_squared_overlap", r.mean_squared_overlap},
            {"squared_overlap_stderr", r.squared_overlap_stderr}};
  if (!r.transcript.empty()) {
    Json games = Json::array();
    for (const auto& g : r.transcript) {
      Json queries = Json::array();
      for (const auto& q : g.queries) {
        queries.push_back({{"key", to_json(q.key)}, {"message", to_json(q.message)}});
      }
      games.push_back({{"target_key", to_json(g.target_key)},
                       {"message", to_json(g.message)},
                       {"queries", queries},
                       {"squared_overlap", g.squared_overlap},
                       {"accepted", g.accepted}});
    }
    j["transcript"] = games;
  }
  return j;
}

Json to_json(const MacScheme& s) {
  return {{"instance", to_json(s.instance)},
          {"verify_mode", s.mode == VerifyMode::exact ? "exact" : "sampled"},
          {"tau", s.tau},
          {"epsilon", s.epsilon},
          {"sampled_reps", s.sampled_reps},
          {"sampled_margin", s.sampled_margin}};
}

MacScheme scheme_from_json(const Json& j) {
  const auto& ij = j.at("instance");
  // The instance may be given in full or as build parameters.
  auto inst = ij.contains("seeds") ? instance_from_json(ij) : build_instance(config_from_json(ij));
  const auto mode_name = j.value("verify_mode", std::string("exact"));
  VerifyMode mode;
  if (mode_name == "exact") mode = VerifyMode::exact;
  else if (mode_name == "sampled") mode = VerifyMode::sampled;
  else throw ValidationError("verify_mode must be exact or sampled");
  const double epsilon = j.value("epsilon", 0.0);
  const double tau = j.value("tau", default_tau(epsilon));
  auto s = make_scheme(std::move(inst), epsilon, tau, mode);
  s.sampled_reps = j.value("sampled_reps", s.sampled_reps);
  s.sampled_margin = j.value("sampled_margin", s.sampled_margin);
  if (s.sampled_reps < 1) throw ValidationError("sampled_reps must be >= 1");
  return s;
}

}  // namespace qhash

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

#include "gtest/gtest.h"
#include "qhash/error.hpp"

namespace qhash {
namespace {

// Independent re-evaluation of an extractor-seeded hash amplitude straight
// from the definition, using std::polar instead of the phase table and
// bit-by-bit carry-less multiplication instead of the field class.
std::complex<double> reference_amplitude(const QHFInstance& inst, const GroupElement& g,
                                         std::uint32_t j, std::size_t i) {
  const auto& spec = inst.extractor()->spec;
  const unsigned n = spec.input_bits();
  const std::uint32_t poly = gf2::irreducible_poly(n);
  const std::uint32_t x = static_cast<std::uint32_t>((g.index() + inst.seeds()[i].index()) %
                                                     inst.group().order());
  std::uint64_t prod = 0;
  for (unsigned b = 0; b < n; ++b) {
    if ((x >> b) & 1u) prod ^= static_cast<std::uint64_t>(j) << b;
  }
  for (int b = 2 * n - 2; b >= static_cast<int>(n); --b) {
    if ((prod >> b) & 1u) prod ^= static_cast<std::uint64_t>(poly) << (b - n);
  }
  const auto out = static_cast<double>(prod & ((1u << spec.output_bits()) - 1));
  const double d = static_cast<double>(inst.dimension());
  return std::polar(1.0 / std::sqrt(d), 2.0 * std::numbers::pi * out / std::ldexp(1.0, spec.output_bits()));
}

TEST(build_iid, full_dual_is_orthogonal) {
  for (std::uint64_t m : {2u, 5u, 16u, 31u}) {
    const auto inst = build_full_dual(GroupSpec::cyclic(m));
    EXPECT_EQ(inst.t(), m);
    const auto states = hash_all(inst);
    for (std::size_t a = 0; a < states.size(); ++a) {
      for (std::size_t b = a + 1; b < states.size(); ++b) {
        EXPECT_LE(overlap(states[a], states[b]), 1e-9);
      }
    }
  }
}

TEST(build_iid, deterministic_and_budget) {
  const auto g = GroupSpec::cyclic(257);
  const auto a = build_iid(g, 1024, 5);
  const auto b = build_iid(g, 1024, 5);
  EXPECT_EQ(a.seeds(), b.seeds());
  EXPECT_EQ(a.dimension(), 1024u);
  EXPECT_EQ(randomness_budget(a), 1024u * 9);
  EXPECT_NE(build_iid(g, 1024, 6).seeds(), a.seeds());
  EXPECT_THROW(build_iid(g, 0, 1), ValidationError);
}

TEST(build_iid, budget_examples) {
  EXPECT_EQ(randomness_budget(build_iid(GroupSpec::cyclic(25), 100, 1)), 500u);
  EXPECT_EQ(randomness_budget(build_expander(5, 100, 1)), 305u);
}

TEST(hash_eval, two_term_character_sum) {
  const auto g = GroupSpec::cyclic(5);
  const auto inst = QHFInstance::make(Variant::iid, g, {{g, 1}, {g, 2}}, 0);
  const double o = overlap(hash_eval(inst, {g, 1}), hash_eval(inst, {g, 2}));
  // |e^{2 pi i/5} + e^{4 pi i/5}| / 2, from the oracle script.
  EXPECT_NEAR(o, 0.8090169943749474241, 1e-12);
}

TEST(hash_eval, unit_norm_and_self_overlap) {
  const std::vector<QHFInstance> instances = {
      build_iid(GroupSpec::cyclic(31), 40, 1), build_expander(4, 60, 2),
      build_extractor_qhf(ExtractorSpec::lhl(5, 2), GroupSpec::cyclic(25), 6, 4, 3)};
  for (const auto& inst : instances) {
    for (const auto& s : hash_all(inst)) {
      double n2 = 0.0;
      for (const auto& a : s.amplitudes()) n2 += std::norm(a);
      EXPECT_NEAR(n2, 1.0, 1e-9);
      EXPECT_NEAR(overlap(s, s), 1.0, 1e-9);
    }
  }
}

TEST(hash_eval, group_mismatch) {
  const auto inst = build_iid(GroupSpec::cyclic(7), 3, 0);
  EXPECT_THROW(hash_eval(inst, {GroupSpec::cyclic(8), 1}), SpecMismatch);
}

TEST(hash_eval, deterministic_bit_identical) {
  const auto a = build_expander(6, 100, 9);
  const auto b = build_expander(6, 100, 9);
  const auto g = GroupElement(GroupSpec::product(6), 2, 5);
  const auto sa = hash_eval(a, g), sb = hash_eval(b, g);
  for (std::size_t k = 0; k < sa.dimension(); ++k) ASSERT_EQ(sa[k], sb[k]);
}

TEST(hash_eval, shift_covariance) {
  // |<psi(g)|psi(g')>| depends only on g^{-1} o g'.
  for (const auto& inst : {build_iid(GroupSpec::cyclic(12), 9, 4), build_expander(4, 25, 8)}) {
    const auto& g = inst.group();
    const auto states = hash_all(inst);
    for (std::uint64_t h = 0; h < g.order(); ++h) {
      const auto diff = GroupElement::from_index(g, h);
      const double base = overlap(states[0], states[diff.index()]);
      for (std::uint64_t a = 0; a < g.order(); ++a) {
        const auto ga = GroupElement::from_index(g, a);
        const auto gb = op_apply(ga, diff);
        ASSERT_NEAR(overlap(states[ga.index()], states[gb.index()]), base, 1e-12);
      }
    }
  }
}

TEST(build_expander, degenerate_t1) {
  const auto inst = build_expander(5, 1, 3);
  const auto states = hash_all(inst);
  for (std::size_t a = 1; a < states.size(); ++a) EXPECT_NEAR(overlap(states[0], states[a]), 1.0, 1e-12);
}

TEST(build_expander, walk_provenance_regenerates_seeds) {
  const auto inst = build_expander(7, 80, 21);
  ASSERT_TRUE(inst.walk());
  const auto graph = margulis_graph(7);
  const auto visited = replay_walk(graph, inst.walk()->start, inst.walk()->labels);
  ASSERT_EQ(visited.size(), inst.t());
  for (std::size_t k = 0; k < visited.size(); ++k) EXPECT_EQ(inst.seeds()[k].index(), visited[k]);

  auto tampered = *inst.walk();
  tampered.labels[3] = (tampered.labels[3] + 1) % 8;
  EXPECT_THROW(QHFInstance::make(Variant::expander, inst.group(), inst.seeds(), 0, std::nullopt,
                                 tampered),
               ValidationError);
}

TEST(build_extractor_qhf, dimension_and_source) {
  const auto spec = ExtractorSpec::lhl(3, 2);
  const auto inst = build_extractor_qhf(spec, 4, 3.0, 1);
  EXPECT_EQ(inst.dimension(), 32u);
  EXPECT_EQ(inst.registers(), (std::vector<std::size_t>{8, 4}));
  // k = n: the source is uniform over all of {0,1}^n.
  const auto source = SourceDistribution::flat(8, inst.extractor()->source_support);
  EXPECT_DOUBLE_EQ(min_entropy(source), 3.0);
  EXPECT_EQ(randomness_budget(inst), 4u * 3);
}

TEST(build_extractor_qhf, amplitudes_match_reference) {
  const auto inst = build_extractor_qhf(ExtractorSpec::lhl(5, 3), GroupSpec::cyclic(27), 5, 3, 77);
  for (std::uint64_t gi = 0; gi < 27; ++gi) {
    const auto g = GroupElement::from_index(inst.group(), gi);
    const auto s = hash_eval(inst, g);
    for (std::uint32_t j = 0; j < 32; ++j) {
      for (std::size_t i = 0; i < inst.t(); ++i) {
        ASSERT_LE(std::abs(s[j * inst.t() + i] - reference_amplitude(inst, g, j, i)), 1e-12);
      }
    }
  }
}

TEST(build_extractor_qhf, embedding_unavailable) {
  EXPECT_THROW(build_extractor_qhf(ExtractorSpec::lhl(4, 2), GroupSpec::cyclic(17), 3, 2, 0),
               ValidationError);
  // 2^ceil(k) points must fit inside the group.
  EXPECT_THROW(build_extractor_qhf(ExtractorSpec::lhl(5, 2), GroupSpec::cyclic(25), 3, 5, 0),
               ValidationError);
}

TEST(keyed_hash, shift_identities) {
  const auto inst = build_extractor_qhf(ExtractorSpec::lhl(5, 2), GroupSpec::cyclic(25), 7, 4, 11);
  const auto& g = inst.group();
  const auto e = GroupElement::identity(g);
  for (std::uint64_t x = 0; x < 25; ++x) {
    const GroupElement msg(g, x);
    const auto plain = hash_eval(inst, msg);
    const auto keyed = keyed_hash(inst, e, msg);
    for (std::size_t i = 0; i < plain.dimension(); ++i) ASSERT_EQ(plain[i], keyed[i]);
    for (std::uint64_t k = 0; k < 25; k += 6) {
      const GroupElement key(g, k);
      const auto a = keyed_hash(inst, key, msg);
      const auto b = keyed_hash(inst, e, op_apply(msg, key));
      for (std::size_t i = 0; i < a.dimension(); ++i) ASSERT_EQ(a[i], b[i]);
    }
  }
  EXPECT_THROW(keyed_hash(build_iid(g, 3, 0), e, e), ValidationError);
}

TEST(plan_t_expander, frozen_values) {
  // Recomputed with mpmath in tests/oracles/frozen_values.py.
  const auto r = plan_t_expander(0.25, 25, kMargulisLambdaRatio);
  EXPECT_EQ(r.t_paper, 3173u);
  EXPECT_EQ(r.t_rederived, 12692u);
  EXPECT_EQ(r.t_corollary, 1390u);
  EXPECT_EQ(plan_t_expander(0.25, 25, 0.88388).t_paper, 3173u);
  EXPECT_EQ(plan_t_expander(0.3, 25, kMargulisLambdaRatio).t_paper, 2644u);
  EXPECT_EQ(r.randomness_bits, walk_randomness_bits(3173, 8, 25));
  EXPECT_EQ(r.qubits, 12u);
}

TEST(plan_t_expander, zero_lambda_and_scaling) {
  for (double delta : {0.1, 0.2, 0.25, 0.4}) {
    const auto r = plan_t_expander(delta, 100, 0.0);
    EXPECT_EQ(r.t_paper, static_cast<std::uint64_t>(std::ceil(20.0 / delta * std::log(400.0))));
    EXPECT_LE(r.t_paper, r.t_rederived);
  }
  // With 1/delta an integer, t_rederived ~ t_paper * (1/delta) up to rounding.
  for (double delta : {0.25, 0.2, 0.125}) {
    const auto r = plan_t_expander(delta, 49, 0.5);
    const double k = std::round(1.0 / delta);
    EXPECT_LE(std::abs(static_cast<double>(r.t_rederived) - k * r.t_paper), k);
  }
}

TEST(plan_t_expander, validation) {
  EXPECT_THROW(plan_t_expander(0.5, 25, 0.5), ValidationError);
  EXPECT_THROW(plan_t_expander(0.0, 25, 0.5), ValidationError);
  EXPECT_THROW(plan_t_expander(0.25, 25, 1.0), ValidationError);
  EXPECT_THROW(plan_t_expander(0.25, 25, -0.1), ValidationError);
}

TEST(plan_t_extractor, frozen_values) {
  EXPECT_EQ(plan_t_extractor(0.1, 256).t_paper, 450u);
  EXPECT_EQ(plan_t_extractor(0.5, 2).t_paper, 4u);
  EXPECT_EQ(plan_t_extractor(0.3, 4).t_paper, 17u);
  std::uint64_t prev = ~std::uint64_t{0};
  for (double eps = 0.05; eps < 1.0; eps += 0.05) {
    const auto t = plan_t_extractor(eps, 64).t_paper;
    EXPECT_LE(t, prev);
    prev = t;
  }
  EXPECT_THROW(plan_t_extractor(0.0, 4), ValidationError);
  EXPECT_THROW(plan_t_extractor(1.0, 4), ValidationError);
}

TEST(build_instance, dispatch) {
  InstanceConfig c;
  c.variant = Variant::expander;
  c.group = GroupSpec::cyclic(25);
  c.t = 5;
  EXPECT_THROW(build_instance(c), ValidationError);
  c.group = GroupSpec::product(5);
  EXPECT_EQ(build_instance(c).variant(), Variant::expander);
  c.variant = Variant::extractor_seeded;
  EXPECT_THROW(build_instance(c), ValidationError);
}

}  // namespace
}  // namespace qhash

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

#include "qhash/mac.hpp"

#include <cmath>

#include "gtest/gtest.h"
#include "qhash/error.hpp"
#include "qhash/random.hpp"

namespace qhash {
namespace {

MacScheme small_scheme(VerifyMode mode = VerifyMode::exact) {
  auto inst = build_extractor_qhf(ExtractorSpec::lhl(5, 2), GroupSpec::cyclic(25), 8, 4, 19);
  return make_scheme(std::move(inst), 0.3, default_tau(0.3), mode);
}

TEST(keygen, uniform_over_keys) {
  const auto scheme = small_scheme();
  std::vector<double> counts(25, 0.0);
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) counts[keygen(scheme, i).index()] += 1.0;
  const double expect = draws / 25.0;
  double chi2 = 0.0;
  for (double c : counts) chi2 += (c - expect) * (c - expect) / expect;
  // 24 degrees of freedom, p = 0.001.
  EXPECT_LT(chi2, 51.179);
}

TEST(verify, honest_tags_accepted) {
  for (auto mode : {VerifyMode::exact, VerifyMode::sampled}) {
    const auto scheme = small_scheme(mode);
    const auto& g = scheme.key_group();
    for (std::uint64_t k = 0; k < 25; k += 4) {
      for (std::uint64_t x = 0; x < 25; x += 3) {
        const GroupElement key(g, k), msg(g, x);
        EXPECT_EQ(verify(scheme, key, msg, tag(scheme, key, msg), k * 25 + x), Decision::accept);
      }
    }
  }
}

TEST(verify, substitution_attack) {
  const auto scheme = small_scheme();
  const auto& g = scheme.key_group();
  const GroupElement key(g, 7), msg(g, 2);
  // A tag with a global phase is the same quantum state.
  EXPECT_EQ(verify(scheme, key, msg, tag(scheme, key, msg).with_global_phase(1.3)), Decision::accept);
  // The tag of a different message is not accepted when overlaps stay below tau.
  const auto other = tag(scheme, key, GroupElement(g, 3));
  const double o = overlap(other, tag(scheme, key, msg));
  EXPECT_EQ(verify(scheme, key, msg, other) == Decision::accept, o * o >= scheme.tau * scheme.tau);
}

TEST(verify, orthogonal_candidate_rejected) {
  const auto scheme = small_scheme(VerifyMode::sampled);
  const auto& g = scheme.key_group();
  const GroupElement key(g, 1), msg(g, 1);
  const auto truth = tag(scheme, key, msg);
  // Build a unit vector orthogonal to the tag by Gram-Schmidt on a basis vector.
  std::vector<Complex> v(truth.dimension());
  v[0] = 1.0;
  const Complex c = truth[0];
  for (std::size_t i = 0; i < v.size(); ++i) v[i] -= std::conj(c) * truth[i];
  const auto orth = HashState::normalized(v, "orth");
  EXPECT_LE(overlap(orth, truth), 1e-12);
  EXPECT_EQ(verify(scheme, key, msg, orth, 5), Decision::reject);
  EXPECT_THROW(verify(scheme, key, msg, HashState::basis(4, 0)), DimensionMismatch);
}

TEST(haar_random_state, mean_squared_overlap) {
  Rng rng(3);
  const auto target = HashState::basis(4, 1);
  double sum = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double o = overlap(haar_random_state(4, rng), target);
    sum += o * o;
  }
  EXPECT_NEAR(sum / n, 0.25, 0.01);
}

TEST(forge_experiment, replay_without_queries_is_random_state) {
  const auto scheme = small_scheme();
  const auto a = forge_experiment(scheme, {AttackerModel::Kind::random_state, 0}, 200, 9);
  const auto b = forge_experiment(scheme, {AttackerModel::Kind::replay, 0}, 200, 9);
  EXPECT_EQ(a.accepted, b.accepted);
  EXPECT_EQ(a.mean_squared_overlap, b.mean_squared_overlap);
}

TEST(forge_experiment, transcript_never_contains_target) {
  const auto scheme = small_scheme();
  for (auto kind : {AttackerModel::Kind::replay, AttackerModel::Kind::oracle_query}) {
    const auto r = forge_experiment(scheme, {kind, 5}, 100, 2, true);
    ASSERT_EQ(r.transcript.size(), 100u);
    for (const auto& game : r.transcript) {
      EXPECT_EQ(game.queries.size(), 5u);
      for (const auto& q : game.queries) EXPECT_NE(q.key, game.target_key);
    }
  }
}

TEST(forge_experiment, random_state_below_bound) {
  const auto scheme = small_scheme();
  const auto r = forge_experiment(scheme, {AttackerModel::Kind::random_state, 0}, 2000, 1);
  EXPECT_EQ(r.qubits, qubit_count(scheme.tag_dimension()));
  EXPECT_LE(r.acceptance_rate, r.theorem_bound);
  EXPECT_NEAR(r.mean_squared_overlap, 1.0 / scheme.tag_dimension(), 5 * r.squared_overlap_stderr + 1e-3);
}

TEST(forgery_bound, values) {
  EXPECT_DOUBLE_EQ(forgery_bound(0.5, 1), 0.5 + 0.125);
  EXPECT_DOUBLE_EQ(forgery_bound(0.0, 3), 0.0);
  EXPECT_NEAR(forgery_bound(0.3, 8), 0.3, 1e-100);
}

TEST(make_scheme, validation) {
  auto inst = build_extractor_qhf(ExtractorSpec::lhl(5, 2), GroupSpec::cyclic(25), 8, 4, 19);
  EXPECT_THROW(make_scheme(inst, 0.3, 0.3), ValidationError);
  EXPECT_THROW(make_scheme(inst, 0.3, 1.1), ValidationError);
  EXPECT_THROW(make_scheme(inst, 1.0, 1.0), ValidationError);
  EXPECT_THROW(make_scheme(build_iid(GroupSpec::cyclic(25), 3, 0), 0.3, 0.9), ValidationError);
  const auto s = make_scheme(inst, 0.3, default_tau(0.3));
  EXPECT_THROW(forge_experiment(s, {AttackerModel::Kind::oracle_query, 25}, 1, 0), ValidationError);
  EXPECT_THROW(forge_experiment(s, {AttackerModel::Kind::random_state, 0}, 0, 0), ValidationError);
  EXPECT_THROW(AttackerModel::parse_kind("brute"), ValidationError);
}

}  // namespace
}  // namespace qhash

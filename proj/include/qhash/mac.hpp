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
#include <optional>
#include <string>
#include <vector>

#include "qhash/qhf.hpp"

namespace qhash {

enum class Decision { accept, reject };

enum class VerifyMode {
  exact,    ///< recompute the tag, accept iff |<candidate|tag>|^2 >= tau^2
  sampled,  ///< SWAP-test repetitions against the recomputed tag
};

/// Message authentication built on the keyed extractor hash. Keys and
/// messages both range over the instance group.
struct MacScheme {
  QHFInstance instance;
  VerifyMode mode = VerifyMode::exact;
  double tau = 1.0;        ///< acceptance threshold on |<candidate|tag>|
  double epsilon = 0.0;    ///< resistance of the instance; tau must exceed it
  std::uint64_t sampled_reps = 10000;
  double sampled_margin = 0.01;

  const GroupSpec& key_group() const { return instance.group(); }
  std::size_t tag_dimension() const { return instance.dimension(); }
};

/// Threshold halfway between an honest overlap (1) and a resistant one (delta).
inline double default_tau(double delta) { return 0.5 * (1.0 + delta); }

/// Validates tau in (epsilon, 1] and the instance variant.
MacScheme make_scheme(QHFInstance instance, double epsilon, double tau,
                      VerifyMode mode = VerifyMode::exact);

/// G: uniform key from the seeded stream.
GroupElement keygen(const MacScheme& scheme, std::uint64_t seed);

/// S(key, x).
HashState tag(const MacScheme& scheme, const GroupElement& key, const GroupElement& x);

/// V(key, x, candidate). `seed` drives the SWAP tests in sampled mode.
Decision verify(const MacScheme& scheme, const GroupElement& key, const GroupElement& x,
                const HashState& candidate, std::uint64_t seed = 0);

struct AttackerModel {
  enum class Kind {
    random_state,  ///< Haar-random pure state
    replay,        ///< replays a tag observed under a queried key
    oracle_query,  ///< adaptive: queries r distinct keys, submits the normalized sum
  };
  Kind kind = Kind::random_state;
  std::uint64_t queries = 0;  ///< r

  static std::string kind_name(Kind k);
  static Kind parse_kind(const std::string& name);
};

/// Haar-random pure state: normalized vector of i.i.d. complex Gaussians.
HashState haar_random_state(std::size_t dimension, Rng& rng);

struct TranscriptEntry {
  GroupElement key;
  GroupElement message;
};

struct GameRecord {
  GroupElement target_key;
  GroupElement message;
  std::vector<TranscriptEntry> queries;
  double squared_overlap = 0.0;
  bool accepted = false;
};

struct ForgeReport {
  double acceptance_rate = 0.0;
  std::uint64_t accepted = 0;
  std::uint64_t trials = 0;
  double tau = 0.0;
  /// epsilon + epsilon^(2^s + 1), s = qubit count of the tag space.
  double theorem_bound = 0.0;
  unsigned qubits = 0;
  double mean_squared_overlap = 0.0;
  /// Standard error of mean_squared_overlap.
  double squared_overlap_stderr = 0.0;
  std::vector<GameRecord> transcript;  ///< filled when requested
};

/// epsilon + epsilon^(2^s + 1).
double forgery_bound(double epsilon, unsigned qubits);

/// Runs `trials` independent forgery games against fresh unqueried keys.
ForgeReport forge_experiment(const MacScheme& scheme, const AttackerModel& attacker,
                             std::uint64_t trials, std::uint64_t seed,
                             bool keep_transcript = false);

}  // namespace qhash

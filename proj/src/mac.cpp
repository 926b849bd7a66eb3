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

#include "qhash/error.hpp"
#include "qhash/random.hpp"

namespace qhash {

namespace {

// Honest tags sit at |<t|t>|^2 = 1 up to rounding; tau = 1 must still accept them.
constexpr double kAcceptSlack = 1e-12;

GroupElement uniform_element(const GroupSpec& group, Rng& rng) {
  return GroupElement::from_index(group, rng.uniform_below(group.order()));
}

GroupElement uniform_other_key(const GroupSpec& group, const GroupElement& excluded, Rng& rng) {
  // Uniform over K \ {excluded}.
  auto i = rng.uniform_below(group.order() - 1);
  if (i >= excluded.index()) ++i;
  return GroupElement::from_index(group, i);
}

}  // namespace

MacScheme make_scheme(QHFInstance instance, double epsilon, double tau, VerifyMode mode) {
  if (instance.variant() != Variant::extractor_seeded) {
    throw ValidationError("MAC schemes need an extractor-seeded instance");
  }
  if (!(epsilon >= 0.0 && epsilon < 1.0)) throw ValidationError("epsilon must lie in [0, 1)");
  if (!(tau > epsilon && tau <= 1.0)) throw ValidationError("tau must lie in (epsilon, 1]");
  MacScheme s{std::move(instance)};
  s.mode = mode;
  s.tau = tau;
  s.epsilon = epsilon;
  return s;
}

GroupElement keygen(const MacScheme& scheme, std::uint64_t seed) {
  Rng rng(derive_seed(seed, "keygen"));
  return uniform_element(scheme.key_group(), rng);
}

HashState tag(const MacScheme& scheme, const GroupElement& key, const GroupElement& x) {
  return keyed_hash(scheme.instance, key, x);
}

Decision verify(const MacScheme& scheme, const GroupElement& key, const GroupElement& x,
                const HashState& candidate, std::uint64_t seed) {
  if (candidate.dimension() != scheme.tag_dimension()) {
    throw DimensionMismatch("candidate tag has dimension " + std::to_string(candidate.dimension()) +
                            ", scheme expects " + std::to_string(scheme.tag_dimension()));
  }
  const auto expected = tag(scheme, key, x);
  if (scheme.mode == VerifyMode::exact) {
    const double o = overlap(candidate, expected);
    return o * o >= scheme.tau * scheme.tau - kAcceptSlack ? Decision::accept : Decision::reject;
  }
  const auto accepts = swap_test_sample(candidate, expected, scheme.sampled_reps, seed);
  const double freq = static_cast<double>(accepts) / static_cast<double>(scheme.sampled_reps);
  const double threshold = 0.5 * (1.0 + scheme.tau * scheme.tau) - scheme.sampled_margin;
  return freq >= threshold ? Decision::accept : Decision::reject;
}

std::string AttackerModel::kind_name(Kind k) {
  switch (k) {
    case Kind::random_state: return "random_state";
    case Kind::replay: return "replay";
    case Kind::oracle_query: return "oracle_query";
  }
  return "unknown";
}

AttackerModel::Kind AttackerModel::parse_kind(const std::string& name) {
  if (name == "random_state") return Kind::random_state;
  if (name == "replay") return Kind::replay;
  if (name == "oracle_query") return Kind::oracle_query;
  throw ValidationError("unknown attacker '" + name +
                        "' (expected random_state, replay, oracle_query)");
}

HashState haar_random_state(std::size_t dimension, Rng& rng) {
  std::vector<Complex> v(dimension);
  for (auto& a : v) {
    const double re = rng.normal();
    const double im = rng.normal();
    a = {re, im};
  }
  return HashState::normalized(std::move(v), "haar");
}

double forgery_bound(double epsilon, unsigned qubits) {
  return epsilon + std::pow(epsilon, std::ldexp(1.0, static_cast<int>(qubits)) + 1.0);
}

ForgeReport forge_experiment(const MacScheme& scheme, const AttackerModel& attacker,
                             std::uint64_t trials, std::uint64_t seed, bool keep_transcript) {
  if (trials < 1) throw ValidationError("forge_experiment: trials must be >= 1");
  const auto& group = scheme.key_group();
  if (attacker.queries > 0 && group.order() < 2) {
    throw ValidationError("queries need at least one key besides the target");
  }
  if (attacker.kind == AttackerModel::Kind::oracle_query && attacker.queries > group.order() - 1) {
    throw ValidationError("oracle_query budget exceeds the number of unqueried keys");
  }

  ForgeReport rep;
  rep.trials = trials;
  rep.tau = scheme.tau;
  rep.qubits = qubit_count(scheme.tag_dimension());
  rep.theorem_bound = forgery_bound(scheme.epsilon, rep.qubits);

  double sum = 0.0, sum_sq = 0.0;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    Rng rng(derive_seed(seed, "forge_game", trial));
    GameRecord game{uniform_element(group, rng), uniform_element(group, rng), {}, 0.0, false};

    // Oracle phase: tags under keys other than the target.
    std::vector<HashState> observed;
    if (attacker.kind != AttackerModel::Kind::random_state) {
      for (std::uint64_t q = 0; q < attacker.queries; ++q) {
        GroupElement key = uniform_other_key(group, game.target_key, rng);
        if (attacker.kind == AttackerModel::Kind::oracle_query) {
          // Adaptive: never repeat a key already in the transcript.
          auto seen = [&](const GroupElement& k) {
            for (const auto& e : game.queries) {
              if (e.key == k) return true;
            }
            return false;
          };
          while (seen(key)) key = uniform_other_key(group, game.target_key, rng);
        }
        game.queries.push_back({key, game.message});
        observed.push_back(tag(scheme, key, game.message));
      }
    }
    for (const auto& e : game.queries) {
      if (e.key == game.target_key) throw std::logic_error("forged key appears in the transcript");
    }

    // Forgery phase.
    std::optional<HashState> candidate;
    if (attacker.kind == AttackerModel::Kind::replay && !observed.empty()) {
      for (std::size_t q = 0; q < game.queries.size() && !candidate; ++q) {
        if (game.queries[q].message == game.message) candidate = observed[q];
      }
      if (!candidate) candidate = observed.front();
    } else if (attacker.kind == AttackerModel::Kind::oracle_query && !observed.empty()) {
      std::vector<Complex> acc(scheme.tag_dimension());
      for (const auto& s : observed) {
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += s[i];
      }
      try {
        candidate = HashState::normalized(std::move(acc), "centroid");
      } catch (const ValidationError&) {
        candidate = observed.front();
      }
    }
    if (!candidate) candidate = haar_random_state(scheme.tag_dimension(), rng);

    const auto truth = tag(scheme, game.target_key, game.message);
    const double o = overlap(*candidate, truth);
    game.squared_overlap = o * o;
    game.accepted = verify(scheme, game.target_key, game.message, *candidate,
                           derive_seed(seed, "forge_verify", trial)) == Decision::accept;
    sum += game.squared_overlap;
    sum_sq += game.squared_overlap * game.squared_overlap;
    if (game.accepted) ++rep.accepted;
    if (keep_transcript) rep.transcript.push_back(std::move(game));
  }
  const double n = static_cast<double>(trials);
  rep.acceptance_rate = static_cast<double>(rep.accepted) / n;
  rep.mean_squared_overlap = sum / n;
  const double var = trials > 1 ? std::max(0.0, (sum_sq - n * rep.mean_squared_overlap *
                                                             rep.mean_squared_overlap) / (n - 1))
                                : 0.0;
  rep.squared_overlap_stderr = std::sqrt(var / n);
  return rep;
}

}  // namespace qhash

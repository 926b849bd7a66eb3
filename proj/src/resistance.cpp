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

#include "qhash/resistance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>
#include <thread>

#include "qhash/error.hpp"
#include "qhash/random.hpp"
#include "qhash/serialize.hpp"
#include "qhash/simd/kernels.hpp"

namespace qhash {

namespace {

struct Partial {
  double max = 0.0;
  double sum = 0.0;
  std::uint64_t pairs = 0;
  std::vector<std::uint64_t> histogram = std::vector<std::uint64_t>(kHistogramBins, 0);

  void add(double v) {
    max = std::max(max, v);
    sum += v;
    ++pairs;
    const auto bin = static_cast<std::size_t>(std::floor(v / kHistogramBinWidth));
    ++histogram[std::min(bin, kHistogramBins - 1)];
  }
};

double pair_overlap(const std::vector<HashState>& states, std::size_t i, std::size_t j) {
  return std::abs(simd::cdot(states[i].amplitudes(), states[j].amplitudes()));
}

// Rows are split into fixed chunks whose partial results are merged in chunk
// order, so the floating-point sum is the same for any thread count.
Partial exhaustive_partial(const std::vector<HashState>& states, unsigned threads) {
  const std::size_t n = states.size();
  constexpr std::size_t kChunkRows = 16;
  const std::size_t chunks = (n + kChunkRows - 1) / kChunkRows;
  std::vector<Partial> partials(chunks);
  auto work = [&](std::size_t first_chunk, std::size_t stride) {
    for (std::size_t c = first_chunk; c < chunks; c += stride) {
      for (std::size_t i = c * kChunkRows; i < std::min(n, (c + 1) * kChunkRows); ++i) {
        for (std::size_t j = i + 1; j < n; ++j) partials[c].add(pair_overlap(states, i, j));
      }
    }
  };
  if (threads <= 1 || chunks <= 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w, threads);
    for (auto& th : pool) th.join();
  }
  Partial total;
  for (const auto& p : partials) {
    total.max = std::max(total.max, p.max);
    total.sum += p.sum;
    total.pairs += p.pairs;
    for (std::size_t b = 0; b < kHistogramBins; ++b) total.histogram[b] += p.histogram[b];
  }
  return total;
}

}  // namespace

std::string describe(const QHFInstance& inst) {
  std::string s = variant_name(inst.variant()) + " " + inst.group().name() +
                  " t=" + std::to_string(inst.t());
  if (inst.extractor()) {
    const auto& e = inst.extractor()->spec;
    s += " ext=" + e.family_name() + "(n=" + std::to_string(e.input_bits()) +
         ",d=" + std::to_string(e.seed_bits()) + ",m=" + std::to_string(e.output_bits()) + ")";
  }
  return s;
}

ResistanceReport measure_resistance(const QHFInstance& inst, const PairStrategy& strategy,
                                    double target_delta, std::uint64_t seed, unsigned threads) {
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t order = inst.group().order();
  if (strategy.kind == PairStrategy::Kind::exhaustive && order > kExhaustiveLimit) {
    throw TooLarge("exhaustive mode needs |G| <= " + std::to_string(kExhaustiveLimit) +
                   "; use sampled mode");
  }
  if (strategy.kind == PairStrategy::Kind::sampled && strategy.samples < 1) {
    throw ValidationError("sampled mode needs a positive sample count");
  }
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

  Partial total;
  if (strategy.kind == PairStrategy::Kind::exhaustive) {
    total = exhaustive_partial(hash_all(inst), threads);
  } else {
    Rng rng(derive_seed(seed, "pair_sampling"));
    for (std::uint64_t s = 0; s < strategy.samples; ++s) {
      const auto a = rng.uniform_below(order);
      auto b = rng.uniform_below(order - 1);
      if (b >= a) ++b;
      const auto ga = GroupElement::from_index(inst.group(), a);
      const auto gb = GroupElement::from_index(inst.group(), b);
      total.add(overlap(hash_eval(inst, ga), hash_eval(inst, gb)));
    }
  }

  ResistanceReport r;
  r.instance = describe(inst);
  r.strategy = strategy;
  r.max_overlap = total.max;
  r.mean_overlap = total.pairs ? total.sum / static_cast<double>(total.pairs) : 0.0;
  r.histogram = std::move(total.histogram);
  r.target_delta = target_delta;
  r.satisfied = r.max_overlap <= target_delta;
  r.pairs = total.pairs;
  r.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

void write_histogram_csv(std::ostream& os, const ResistanceReport& report) {
  os << "bin_low,bin_high,count\n";
  for (std::size_t b = 0; b < report.histogram.size(); ++b) {
    os << format_double(static_cast<double>(b) * kHistogramBinWidth) << ','
       << format_double(static_cast<double>(b + 1) * kHistogramBinWidth) << ','
       << report.histogram[b] << '\n';
  }
}

std::vector<ComparisonRow> compare_constructions(const std::vector<InstanceConfig>& configs,
                                                 double target_delta, std::uint64_t seed) {
  if (configs.empty()) throw ValidationError("compare_constructions: no instances");
  for (const auto& c : configs) {
    if (c.group != configs.front().group) {
      throw SpecMismatch("compare_constructions: all instances must share one group");
    }
  }
  std::vector<ComparisonRow> rows;
  for (const auto& c : configs) {
    const auto inst = build_instance(c);
    const auto rep = measure_resistance(inst, PairStrategy::exhaustive(), target_delta, seed);
    rows.push_back({inst.variant(), inst.t(), randomness_budget(inst), inst.qubits(),
                    rep.max_overlap, rep.satisfied});
  }
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.randomness_bits < b.randomness_bits;
  });
  return rows;
}

void write_comparison_csv(std::ostream& os, const std::vector<ComparisonRow>& rows) {
  os << "variant,t,randomness_bits,qubits,max_overlap,satisfied\n";
  for (const auto& r : rows) {
    os << variant_name(r.variant) << ',' << r.t << ',' << r.randomness_bits << ',' << r.qubits
       << ',' << format_double(r.max_overlap) << ',' << (r.satisfied ? "true" : "false") << '\n';
  }
}

double binomial_z(std::uint64_t accepts, std::uint64_t reps, double p) {
  const double n = static_cast<double>(reps);
  const double sd = std::sqrt(n * p * (1.0 - p));
  const double diff = static_cast<double>(accepts) - n * p;
  if (sd == 0.0 || sd < 1e-12) {
    return std::abs(diff) < 0.5 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return diff / sd;
}

SwapVerifyResult swap_verify_experiment(const QHFInstance& inst, const GroupElement& w,
                                        const GroupElement& w2, std::uint64_t reps,
                                        std::uint64_t seed) {
  if (reps < 100) throw ValidationError("swap_verify_experiment: reps must be >= 100");
  const auto a = hash_eval(inst, w);
  const auto b = hash_eval(inst, w2);
  SwapVerifyResult r;
  r.reps = reps;
  r.exact_prob = swap_test_prob(a, b);
  r.accepts = swap_test_sample(a, b, reps, seed);
  r.frequency = static_cast<double>(r.accepts) / static_cast<double>(reps);
  r.z_score = binomial_z(r.accepts, reps, r.exact_prob);
  return r;
}

SweepReport seeds_sweep(const InstanceConfig& config, std::uint64_t count, double target_delta,
                        std::uint64_t master_seed) {
  if (count < 1) throw ValidationError("seeds_sweep: count must be >= 1");
  SweepReport r;
  r.seeds = count;
  r.target_delta = target_delta;
  for (std::uint64_t i = 0; i < count; ++i) {
    auto c = config;
    c.seed = derive_seed(master_seed, "sweep", i);
    const auto inst = build_instance(c);
    const auto rep = measure_resistance(inst, PairStrategy::exhaustive(), target_delta, c.seed);
    r.instance_seeds.push_back(c.seed);
    r.max_overlaps.push_back(rep.max_overlap);
    if (rep.satisfied) ++r.satisfied;
  }
  r.satisfied_fraction = static_cast<double>(r.satisfied) / static_cast<double>(count);
  r.failing_fraction = 1.0 - r.satisfied_fraction;
  return r;
}

}  // namespace qhash

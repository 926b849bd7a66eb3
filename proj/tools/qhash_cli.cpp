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

// qhash: build quantum hash instances, run the resistance and MAC
// experiments, and emit JSON (canonical) or CSV.

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qhash/error.hpp"
#include "qhash/expander.hpp"
#include "qhash/extractor.hpp"
#include "qhash/mac.hpp"
#include "qhash/qhf.hpp"
#include "qhash/resistance.hpp"
#include "qhash/serialize.hpp"
#include "qhash/simd/kernels.hpp"

namespace {

using qhash::Json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

// A validation failure tied to a flag.
struct FlagError : qhash::ValidationError {
  FlagError(std::string flag_name, const std::string& what)
      : qhash::ValidationError(what), flag(std::move(flag_name)) {}
  std::string flag;
};

struct Globals {
  std::uint64_t seed = 0;
  std::string out = "-";
  std::string format = "json";
  std::string config_file;
  std::string isa;
};

// Output of one subcommand: the canonical JSON result and, when the command
// has a table form, its CSV rendering.
struct Output {
  Json result;
  std::function<void(std::ostream&)> csv;
  bool csv_default = false;
};

// Flags shared by every command that needs a hash instance.
struct InstanceFlags {
  std::string instance_file;
  std::string variant = "iid";
  std::string group;
  std::uint64_t t = 0;
  bool full_dual = false;
  std::string ext_family = "lhl";
  unsigned ext_n = 0;
  unsigned ext_m = 2;
  double k = -1.0;
};

void add_instance_flags(CLI::App* cmd, InstanceFlags& f) {
  cmd->add_option("--instance", f.instance_file, "Instance JSON (output of qhf build)");
  cmd->add_option("--variant", f.variant, "iid | expander | extractor")->capture_default_str();
  cmd->add_option("--group", f.group, "Group: m for Z_m, or nxn for Z_n x Z_n");
  cmd->add_option("--t", f.t, "Number of seeds");
  cmd->add_flag("--full-dual", f.full_dual, "Use every group element as a seed (iid)");
  cmd->add_option("--ext-family", f.ext_family, "Extractor family: lhl | hadamard")
      ->capture_default_str();
  cmd->add_option("--ext-n", f.ext_n, "Extractor input bits (default ceil(log2 |G|))");
  cmd->add_option("--ext-m", f.ext_m, "Extractor output bits")->capture_default_str();
  cmd->add_option("--k", f.k, "Min-entropy of the seed source (default ext-n)");
}

Json read_json_file(const std::string& path, const std::string& flag) {
  std::ifstream in(path);
  if (!in) throw FlagError(flag, "cannot open " + path);
  try {
    Json j = Json::parse(in);
    // Accept a full CLI output document as well as the bare object.
    if (j.is_object() && j.contains("result") && j.contains("tool_version")) return j.at("result");
    return j;
  } catch (const Json::parse_error& e) {
    throw FlagError(flag, path + ": " + e.what());
  }
}

qhash::GroupSpec parse_group(const std::string& text) {
  if (text.empty()) throw FlagError("--group", "--group is required");
  try {
    return qhash::GroupSpec::parse(text);
  } catch (const qhash::ValidationError& e) {
    throw FlagError("--group", e.what());
  }
}

qhash::InstanceConfig config_from_flags(const InstanceFlags& f, std::uint64_t seed) {
  qhash::InstanceConfig c;
  c.variant = qhash::parse_variant(f.variant);
  c.group = parse_group(f.group);
  c.seed = seed;
  c.full_dual = f.full_dual;
  if (f.full_dual) {
    if (c.variant != qhash::Variant::iid) throw FlagError("--full-dual", "--full-dual needs --variant iid");
    c.t = c.group.order();
  } else {
    if (f.t < 1) throw FlagError("--t", "--t is required and must be >= 1");
    c.t = f.t;
  }
  if (c.variant == qhash::Variant::extractor_seeded) {
    const unsigned n = f.ext_n ? f.ext_n : qhash::ceil_log2(c.group.order());
    try {
      c.extractor = qhash::ExtractorSpec::make(qhash::ExtractorSpec::parse_family(f.ext_family), n, n,
                                               f.ext_family == "hadamard" ? 1 : f.ext_m);
    } catch (const qhash::ValidationError& e) {
      throw FlagError("--ext-n", e.what());
    }
    c.k = f.k >= 0.0 ? f.k : static_cast<double>(n);
  }
  return c;
}

qhash::QHFInstance instance_from_flags(const InstanceFlags& f, std::uint64_t seed, Json& source) {
  if (!f.instance_file.empty()) {
    const Json j = read_json_file(f.instance_file, "--instance");
    source = {{"instance_file", f.instance_file}};
    if (j.contains("seeds")) return qhash::instance_from_json(j);
    return qhash::build_instance(qhash::config_from_json(j));
  }
  const auto c = config_from_flags(f, seed);
  source = qhash::to_json(c);
  return qhash::build_instance(c);
}

qhash::GroupElement parse_message(const qhash::GroupSpec& g, const std::string& text,
                                  const std::string& flag) {
  try {
    return qhash::GroupElement::parse(g, text);
  } catch (const qhash::ValidationError& e) {
    throw FlagError(flag, e.what());
  }
}

template <class Fn>
void csv_rows(std::ostream& os, const std::string& header, Fn&& body) {
  os << header << '\n';
  body(os);
}

// Values on the command line are strings; echo them as JSON scalars so the
// effective config reads naturally.
Json typed_value(const std::string& s) {
  if (s == "true") return true;
  if (s == "false") return false;
  if (!s.empty()) {
    char* end = nullptr;
    if (s.find_first_of(".eE") == std::string::npos && s[0] != '-') {
      const auto u = std::strtoull(s.c_str(), &end, 10);
      if (*end == '\0') return u;
    }
    const auto d = std::strtod(s.c_str(), &end);
    if (*end == '\0' && std::isfinite(d)) return d;
  }
  return s;
}

void collect_options(const CLI::App* app, Json& into) {
  for (const auto* opt : app->get_options()) {
    const std::string name = opt->get_name(false, true);
    if (name.rfind("--", 0) != 0 || name == "--help" || name == "--config") continue;
    const std::string key = name.substr(2);
    if (opt->count() > 0) {
      const auto& res = opt->results();
      if (opt->get_type_size() == 0) {
        into[key] = true;
      } else if (res.size() == 1) {
        into[key] = typed_value(res.front());
      } else {
        Json arr = Json::array();
        for (const auto& r : res) arr.push_back(typed_value(r));
        into[key] = arr;
      }
    } else if (!opt->get_default_str().empty()) {
      into[key] = typed_value(opt->get_default_str());
    }
  }
}

// Appends flags from a JSON config file for every flag not already present
// on the command line, so command-line values take precedence.
std::vector<std::string> merge_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i + 1 < args.size(); ++i) {
    if (args[i] == "--config") path = args[i + 1];
  }
  for (const auto& a : args) {
    if (a.rfind("--config=", 0) == 0) path = a.substr(9);
  }
  if (path.empty()) return args;
  const Json cfg = read_json_file(path, "--config");
  if (!cfg.is_object()) throw FlagError("--config", "config file must hold a JSON object");
  auto present = [&](const std::string& flag) {
    for (const auto& a : args) {
      if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    }
    return false;
  };
  for (const auto& [key, value] : cfg.items()) {
    const std::string flag = "--" + key;
    if (key == "config" || present(flag)) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back(flag);
    } else if (value.is_array()) {
      for (const auto& v : value) {
        args.push_back(flag);
        args.push_back(v.is_string() ? v.get<std::string>() : v.dump());
      }
    } else {
      args.push_back(flag);
      args.push_back(value.is_string() ? value.get<std::string>() : value.dump());
    }
  }
  return args;
}

// ---- subcommands ----

Output graph_spectrum(std::uint32_t n, std::uint32_t dense_limit, const std::string& edges_csv) {
  const auto graph = qhash::margulis_graph(n);
  qhash::SpectralOptions opts;
  opts.dense_limit = dense_limit;
  const double lambda = qhash::spectral_lambda(graph, opts);
  const std::uint32_t v = graph.vertex_count();
  Output out;
  out.result = {{"n", n},
                {"V", v},
                {"d", graph.degree()},
                {"lambda", lambda},
                {"lambda_ratio", lambda / graph.degree()},
                {"lambda_bound", qhash::kMargulisLambdaBound},
                {"within_bound", lambda <= qhash::kMargulisLambdaBound + 1e-6},
                {"symmetric", graph.is_symmetric()},
                {"method", v <= dense_limit ? "dense" : "power_iteration"}};
  if (!edges_csv.empty()) {
    std::ofstream f(edges_csv);
    if (!f) throw FlagError("--edges-csv", "cannot write " + edges_csv);
    qhash::write_edge_list_csv(f, graph);
  }
  out.csv = [graph](std::ostream& os) { qhash::write_edge_list_csv(os, graph); };
  return out;
}

Output walk_cmd(std::uint32_t n, std::uint64_t t, std::uint64_t seed) {
  const auto graph = qhash::margulis_graph(n);
  const auto w = qhash::random_walk(graph, t, seed);
  Output out;
  out.result = qhash::to_json(w);
  out.result["n"] = n;
  out.result["randomness_bits"] = qhash::walk_randomness_bits(t, graph.degree(), graph.vertex_count());
  out.result["randomness_bits_literal"] =
      qhash::walk_randomness_bits_literal(t, graph.degree(), graph.vertex_count());
  out.csv = [w, n](std::ostream& os) {
    csv_rows(os, "step,label,x,y", [&](std::ostream& o) {
      o << 0 << ",," << w.start / n << ',' << w.start % n << '\n';
      for (std::size_t i = 0; i < w.visited.size(); ++i) {
        o << i + 1 << ',' << w.labels[i] << ',' << w.visited[i] / n << ',' << w.visited[i] % n << '\n';
      }
    });
  };
  return out;
}

Output ext_test(const std::string& family, unsigned n, unsigned m, double k, std::uint64_t sources,
                std::uint64_t seed) {
  const auto fam = qhash::ExtractorSpec::parse_family(family);
  const auto spec = qhash::ExtractorSpec::make(fam, n, n, fam == qhash::ExtractorSpec::Family::hadamard ? 1 : m);
  const auto q = qhash::extractor_quality(spec, k, sources, seed);
  Output out;
  out.result = qhash::to_json(q);
  out.result["extractor"] = qhash::to_json(spec);
  out.result["k"] = k;
  out.csv = [q](std::ostream& os) {
    csv_rows(os, "max_distance,mean_distance,lhl_bound,achieved_min_entropy,sources", [&](std::ostream& o) {
      o << qhash::format_double(q.max_distance) << ',' << qhash::format_double(q.mean_distance) << ','
        << qhash::format_double(q.lhl_bound) << ',' << qhash::format_double(q.achieved_min_entropy)
        << ',' << q.sources << '\n';
    });
  };
  return out;
}

Output qhf_build(const qhash::QHFInstance& inst) {
  Output out;
  out.result = qhash::to_json(inst);
  out.csv = [inst](std::ostream& os) {
    csv_rows(os, "index,seed", [&](std::ostream& o) {
      for (std::size_t i = 0; i < inst.seeds().size(); ++i) o << i << ',' << inst.seeds()[i].to_string() << '\n';
    });
  };
  return out;
}

Output qhf_eval(const qhash::QHFInstance& inst, const std::string& message) {
  const auto g = parse_message(inst.group(), message, "--message");
  const auto s = qhash::hash_eval(inst, g);
  Output out;
  out.result = {{"message", qhash::to_json(g)}, {"state", qhash::to_json(s)}, {"qubits", s.qubits()}};
  out.csv = [s](std::ostream& os) {
    csv_rows(os, "index,re,im", [&](std::ostream& o) {
      for (std::size_t i = 0; i < s.dimension(); ++i) {
        o << i << ',' << qhash::format_double(s[i].real()) << ',' << qhash::format_double(s[i].imag()) << '\n';
      }
    });
  };
  return out;
}

Output qhf_plan(const std::string& variant, std::optional<double> delta, std::optional<double> eps,
                const std::string& group, double lambda_ratio, unsigned degree, std::uint64_t target,
                unsigned seed_bits) {
  qhash::PlannerReport r;
  const auto v = qhash::parse_variant(variant);
  if (v == qhash::Variant::expander) {
    if (!delta) throw FlagError("--delta", "--delta is required for the expander planner");
    r = qhash::plan_t_expander(*delta, parse_group(group).order(), lambda_ratio, degree);
  } else if (v == qhash::Variant::extractor_seeded) {
    if (!eps) throw FlagError("--epsilon", "--epsilon is required for the extractor planner");
    if (target < 1) throw FlagError("--target", "--target (|H|) is required for the extractor planner");
    const std::uint64_t order = group.empty() ? 0 : parse_group(group).order();
    r = qhash::plan_t_extractor(*eps, target, order, seed_bits);
  } else {
    throw FlagError("--variant", "the planner covers the expander and extractor variants");
  }
  Output out;
  out.result = qhash::to_json(r);
  out.csv = [j = out.result](std::ostream& os) {
    std::string header, row;
    for (const auto& [key, value] : j.items()) {
      if (!header.empty()) {
        header += ',';
        row += ',';
      }
      header += key;
      if (value.is_number_float()) row += qhash::format_double(value.get<double>());
      else if (value.is_string()) row += value.get<std::string>();
      else row += value.dump();
    }
    os << header << '\n' << row << '\n';
  };
  return out;
}

qhash::PairStrategy parse_strategy(const std::string& mode, std::uint64_t samples) {
  if (mode == "exhaustive") return qhash::PairStrategy::exhaustive();
  if (mode == "sampled") {
    if (samples < 1) throw FlagError("--samples", "--samples must be >= 1 in sampled mode");
    return qhash::PairStrategy::sampled(samples);
  }
  throw FlagError("--mode", "--mode must be exhaustive or sampled");
}

Output qhf_resist(const std::optional<qhash::QHFInstance>& inst, const qhash::InstanceConfig* rebuild, double delta,
                  const std::string& mode, std::uint64_t samples, unsigned threads,
                  std::uint64_t sweep, const std::string& hist_csv, std::uint64_t seed) {
  Output out;
  if (sweep > 0) {
    if (!rebuild) throw FlagError("--sweep", "--sweep rebuilds the instance; give build flags, not --instance");
    const auto s = qhash::seeds_sweep(*rebuild, sweep, delta, seed);
    out.result = qhash::to_json(s);
    out.csv = [s](std::ostream& os) {
      csv_rows(os, "index,instance_seed,max_overlap,satisfied", [&](std::ostream& o) {
        for (std::size_t i = 0; i < s.max_overlaps.size(); ++i) {
          o << i << ',' << s.instance_seeds[i] << ',' << qhash::format_double(s.max_overlaps[i]) << ','
            << (s.max_overlaps[i] <= s.target_delta ? "true" : "false") << '\n';
        }
      });
    };
    return out;
  }
  const auto r = qhash::measure_resistance(*inst, parse_strategy(mode, samples), delta, seed, threads);
  out.result = qhash::to_json(r);
  if (!hist_csv.empty()) {
    std::ofstream f(hist_csv);
    if (!f) throw FlagError("--csv", "cannot write " + hist_csv);
    qhash::write_histogram_csv(f, r);
  }
  out.csv = [r](std::ostream& os) { qhash::write_histogram_csv(os, r); };
  return out;
}

Output qhf_compare(const InstanceFlags& base, const std::vector<std::string>& variants,
                   const std::vector<std::uint64_t>& ts, double delta, std::uint64_t seed) {
  std::vector<qhash::InstanceConfig> configs;
  for (const auto& v : variants) {
    for (auto t : ts) {
      InstanceFlags f = base;
      f.variant = v;
      f.t = t;
      configs.push_back(config_from_flags(f, seed));
    }
  }
  const auto rows = qhash::compare_constructions(configs, delta, seed);
  Output out;
  out.result = Json::array();
  for (const auto& r : rows) out.result.push_back(qhash::to_json(r));
  out.result = {{"rows", out.result}, {"target_delta", delta}};
  out.csv = [rows](std::ostream& os) { qhash::write_comparison_csv(os, rows); };
  out.csv_default = true;
  return out;
}

Output mac_sim(qhash::MacScheme scheme, const std::string& attacker, std::uint64_t queries,
               std::uint64_t trials, bool transcript, std::uint64_t seed) {
  const qhash::AttackerModel model{qhash::AttackerModel::parse_kind(attacker), queries};
  const auto r = qhash::forge_experiment(scheme, model, trials, seed, transcript);
  Output out;
  out.result = qhash::to_json(r);
  out.result["attacker"] = {{"kind", attacker}, {"queries", queries}};
  out.result["scheme"] = qhash::to_json(scheme);
  out.csv = [r](std::ostream& os) {
    csv_rows(os, "trials,accepted,acceptance_rate,tau,theorem_bound,qubits,mean_squared_overlap,squared_overlap_stderr",
             [&](std::ostream& o) {
               o << r.trials << ',' << r.accepted << ',' << qhash::format_double(r.acceptance_rate) << ','
                 << qhash::format_double(r.tau) << ',' << qhash::format_double(r.theorem_bound) << ','
                 << r.qubits << ',' << qhash::format_double(r.mean_squared_overlap) << ','
                 << qhash::format_double(r.squared_overlap_stderr) << '\n';
             });
  };
  return out;
}

void print_error(const std::string& kind, const std::string& message, const std::string& flag) {
  Json err = {{"kind", kind}, {"message", message}};
  if (!flag.empty()) err["flag"] = flag;
  std::cout << Json{{"error", err}}.dump(2) << std::endl;
}

// CLI11 messages name the option; pull it out for the error object.
std::string flag_in(const std::string& message) {
  const auto pos = message.find("--");
  if (pos == std::string::npos) return {};
  auto end = message.find_first_of(" :,=", pos);
  return message.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum hash function toolkit", "qhash"};
  app.set_version_flag("--version", QHASH_VERSION);
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Master seed (64-bit)")->capture_default_str();
  app.add_option("--out", g.out, "Output path, - for stdout")->capture_default_str();
  app.add_option("--format", g.format, "json | csv")->capture_default_str()->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--config", g.config_file, "JSON file of flag values (flags override it)");
  app.add_option("--isa", g.isa, "Force a kernel set: scalar | avx2 | neon");

  // graph spectrum / walk
  auto* graph = app.add_subcommand("graph", "Margulis expander graphs")->require_subcommand(1);
  std::uint32_t graph_n = 0, dense_limit = 4096;
  std::string edges_csv;
  auto* spectrum = graph->add_subcommand("spectrum", "Second eigenvalue of the Margulis graph");
  spectrum->add_option("--n", graph_n, "Modulus n (V = n^2)")->required()->check(CLI::Range(2u, 1u << 15));
  spectrum->add_option("--dense-limit", dense_limit, "Largest V for the dense solver")->capture_default_str();
  spectrum->add_option("--edges-csv", edges_csv, "Also write the edge list here");

  auto* walk = app.add_subcommand("walk", "Seeded random walk on the Margulis graph");
  std::uint32_t walk_n = 0;
  std::uint64_t walk_t = 0;
  walk->add_option("--n", walk_n, "Modulus n")->required()->check(CLI::Range(2u, 1u << 15));
  walk->add_option("--t", walk_t, "Walk length")->required()->check(CLI::PositiveNumber);

  // ext test
  auto* ext = app.add_subcommand("ext", "Seeded extractors")->require_subcommand(1);
  auto* ext_t = ext->add_subcommand("test", "Statistical distance over random flat sources");
  std::string family = "lhl";
  unsigned ext_n = 0, ext_m = 2;
  double ext_k = 0.0;
  std::uint64_t sources = 200;
  ext_t->add_option("--family", family, "lhl | hadamard")->capture_default_str();
  ext_t->add_option("--n", ext_n, "Input bits (seed bits d = n)")->required()->check(CLI::Range(1u, 16u));
  ext_t->add_option("--m", ext_m, "Output bits")->capture_default_str();
  ext_t->add_option("--k", ext_k, "Source min-entropy")->required()->check(CLI::NonNegativeNumber);
  ext_t->add_option("--sources", sources, "Number of random flat sources")->capture_default_str()
      ->check(CLI::PositiveNumber);

  // qhf
  auto* qhf = app.add_subcommand("qhf", "Quantum hash instances")->require_subcommand(1);
  InstanceFlags build_f, eval_f, resist_f, compare_f;
  auto* build = qhf->add_subcommand("build", "Build an instance");
  add_instance_flags(build, build_f);

  auto* eval = qhf->add_subcommand("eval", "Hash state of one message");
  add_instance_flags(eval, eval_f);
  std::string message;
  eval->add_option("--message", message, "Group element, e.g. 3 or (1,2)")->required();

  auto* plan = qhf->add_subcommand("plan", "Seed count for a target resistance");
  std::string plan_variant = "expander", plan_group;
  std::optional<double> plan_delta, plan_eps;
  double lambda_ratio = qhash::kMargulisLambdaRatio;
  unsigned degree = 8, seed_bits = 0;
  std::uint64_t target = 0;
  plan->add_option("--variant", plan_variant, "expander | extractor")->capture_default_str();
  plan->add_option("--delta", plan_delta, "Target overlap bound (expander)");
  plan->add_option("--epsilon", plan_eps, "Target overlap bound (extractor)");
  plan->add_option("--group", plan_group, "Group order or nxn");
  plan->add_option("--lambda-ratio", lambda_ratio, "Normalized second eigenvalue")->capture_default_str();
  plan->add_option("--degree", degree, "Graph degree")->capture_default_str();
  plan->add_option("--target", target, "Target group order |H| (extractor)");
  plan->add_option("--seed-bits", seed_bits, "Extractor seed bits d, for the qubit count");

  auto* resist = qhf->add_subcommand("resist", "Measure pairwise overlaps");
  add_instance_flags(resist, resist_f);
  double resist_delta = 0.0;
  std::string resist_mode = "exhaustive", hist_csv;
  std::uint64_t samples = 0, sweep = 0;
  unsigned threads = 0;
  resist->add_option("--delta", resist_delta, "Target overlap bound")->required()->check(CLI::Range(0.0, 1.0));
  resist->add_option("--mode", resist_mode, "exhaustive | sampled")->capture_default_str();
  resist->add_option("--samples", samples, "Pair count in sampled mode");
  resist->add_option("--threads", threads, "Worker threads (0 = all cores)")->capture_default_str();
  resist->add_option("--sweep", sweep, "Rebuild under N derived seeds and report the satisfied fraction");
  resist->add_option("--csv", hist_csv, "Also write the overlap histogram here");

  auto* compare = qhf->add_subcommand("compare", "Randomness and qubits against resistance");
  add_instance_flags(compare, compare_f);
  std::vector<std::string> variants{"iid", "expander"};
  std::vector<std::uint64_t> ts;
  double compare_delta = 0.0;
  compare->add_option("--variants", variants, "Variants to compare")->delimiter(',')->capture_default_str();
  compare->add_option("--ts", ts, "Seed counts (comma separated)")->delimiter(',')->required();
  compare->add_option("--delta", compare_delta, "Target overlap bound")->required()->check(CLI::Range(0.0, 1.0));

  // mac sim
  auto* mac = app.add_subcommand("mac", "Keyed-hash MAC")->require_subcommand(1);
  auto* sim = mac->add_subcommand("sim", "Forgery experiment");
  InstanceFlags mac_f;
  mac_f.variant = "extractor";
  add_instance_flags(sim, mac_f);
  std::string scheme_file, attacker = "random_state", verify_mode = "exact";
  std::uint64_t trials = 1000, queries = 0;
  std::optional<double> tau;
  double epsilon = 0.3;
  bool transcript = false;
  sim->add_option("--scheme", scheme_file, "Scheme JSON (instance, epsilon, tau, verify_mode)");
  sim->add_option("--attacker", attacker, "random_state | replay | oracle_query")->capture_default_str();
  sim->add_option("--trials", trials, "Forgery games")->capture_default_str()->check(CLI::PositiveNumber);
  sim->add_option("--queries", queries, "Oracle queries r")->capture_default_str();
  sim->add_option("--tau", tau, "Acceptance threshold on the overlap");
  sim->add_option("--epsilon", epsilon, "Resistance of the instance")->capture_default_str();
  sim->add_option("--verify-mode", verify_mode, "exact | sampled")->capture_default_str();
  sim->add_flag("--transcript", transcript, "Include every game in the output");

  for (auto* sub : {graph, spectrum, walk, ext, ext_t, qhf, build, eval, plan, resist, compare, mac, sim}) {
    sub->fallthrough();
  }

  std::vector<std::string> args;
  try {
    args.assign(argv + 1, argv + argc);
    args = merge_config(std::move(args));
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::string message = e.what();
    std::vector<std::string> extra;
    for (const CLI::App* a = &app; a; a = a->get_subcommands().empty() ? nullptr : a->get_subcommands().front()) {
      for (const auto& r : a->remaining()) extra.push_back(r);
    }
    if (!extra.empty() && extra.front().rfind("-", 0) != 0) {
      message = "unknown subcommand '" + extra.front() + "'";
    }
    print_error("usage", message, flag_in(message));
    return kExitUsage;
  } catch (const FlagError& e) {
    print_error("validation", e.what(), e.flag);
    return kExitUsage;
  }

  const bool csv = g.format == "csv";
  std::string command;
  Json config = Json::object();
  collect_options(&app, config);
  const CLI::App* leaf = &app;
  while (!leaf->get_subcommands().empty()) {
    leaf = leaf->get_subcommands().front();
    command += (command.empty() ? "" : " ") + leaf->get_name();
    collect_options(leaf, config);
  }

  const auto start = std::chrono::steady_clock::now();
  Output out;
  Json source;
  try {
    if (!g.isa.empty()) {
      if (g.isa == "scalar") qhash::simd::set_active_isa(qhash::simd::Isa::scalar);
      else if (g.isa == "avx2") qhash::simd::set_active_isa(qhash::simd::Isa::avx2);
      else if (g.isa == "neon") qhash::simd::set_active_isa(qhash::simd::Isa::neon);
      else throw FlagError("--isa", "--isa must be scalar, avx2 or neon");
    }
    if (*spectrum) {
      out = graph_spectrum(graph_n, dense_limit, edges_csv);
    } else if (*walk) {
      out = walk_cmd(walk_n, walk_t, g.seed);
    } else if (*ext_t) {
      out = ext_test(family, ext_n, ext_m, ext_k, sources, g.seed);
    } else if (*build) {
      out = qhf_build(instance_from_flags(build_f, g.seed, source));
    } else if (*eval) {
      out = qhf_eval(instance_from_flags(eval_f, g.seed, source), message);
    } else if (*plan) {
      out = qhf_plan(plan_variant, plan_delta, plan_eps, plan_group, lambda_ratio, degree, target, seed_bits);
    } else if (*resist) {
      std::optional<qhash::InstanceConfig> c;
      std::optional<qhash::QHFInstance> inst;
      if (resist_f.instance_file.empty()) c = config_from_flags(resist_f, g.seed);
      if (sweep == 0) inst = instance_from_flags(resist_f, g.seed, source);
      out = qhf_resist(inst, c ? &*c : nullptr, resist_delta, resist_mode, samples, threads, sweep,
                       hist_csv, g.seed);
    } else if (*compare) {
      out = qhf_compare(compare_f, variants, ts, compare_delta, g.seed);
    } else if (*sim) {
      qhash::MacScheme scheme = [&] {
        if (!scheme_file.empty()) {
          Json j = read_json_file(scheme_file, "--scheme");
          if (tau) j["tau"] = *tau;
          if (!j.contains("verify_mode")) j["verify_mode"] = verify_mode;
          return qhash::scheme_from_json(j);
        }
        const auto inst = instance_from_flags(mac_f, g.seed, source);
        if (verify_mode != "exact" && verify_mode != "sampled") {
          throw FlagError("--verify-mode", "--verify-mode must be exact or sampled");
        }
        return qhash::make_scheme(inst, epsilon, tau ? *tau : qhash::default_tau(epsilon),
                                  verify_mode == "exact" ? qhash::VerifyMode::exact
                                                         : qhash::VerifyMode::sampled);
      }();
      out = mac_sim(std::move(scheme), attacker, queries, trials, transcript, g.seed);
    }
  } catch (const FlagError& e) {
    print_error("validation", e.what(), e.flag);
    return kExitUsage;
  } catch (const qhash::ValidationError& e) {
    print_error("precondition", e.what(), "");
    return kExitUsage;
  } catch (const std::exception& e) {
    print_error("runtime", e.what(), "");
    return kExitRuntime;
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  // Wall time and the kernel set do not belong in the deterministic
  // document; they go to a sidecar next to the output file.
  const Json metadata = {{"wall_seconds", wall}, {"isa", qhash::simd::isa_name(qhash::simd::active_isa())}};
  const bool want_csv = csv || (out.csv_default && app.get_option("--format")->count() == 0);
  try {
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (g.out != "-") {
      file.open(g.out);
      if (!file) throw FlagError("--out", "cannot write " + g.out);
      os = &file;
      std::ofstream meta(g.out + ".meta.json");
      meta << metadata.dump(2) << '\n';
    }
    if (want_csv && out.csv) {
      out.csv(*os);
    } else {
      Json doc = {{"tool", "qhash"},
                        {"tool_version", QHASH_VERSION},
                        {"command", command},
                        {"seed", g.seed},
                        {"config", config},
                        {"result", out.result}};
      if (!source.is_null()) doc["instance_source"] = source;
      *os << doc.dump(2) << '\n';
    }
  } catch (const FlagError& e) {
    print_error("validation", e.what(), e.flag);
    return kExitUsage;
  } catch (const std::exception& e) {
    print_error("runtime", e.what(), "");
    return kExitRuntime;
  }
  return kExitOk;
}

// Copyright 2026 The midselect Authors
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

#include "midselect_cli/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <midselect/builders.hpp>
#include <midselect/circuit_json.hpp>
#include <midselect/classical.hpp>
#include <midselect/experiments.hpp>
#include <midselect/qaoa.hpp>
#include <midselect/qubo.hpp>
#include <midselect/resources.hpp>
#include <midselect/statevector.hpp>
#include <midselect/transpile.hpp>
#include <midselect/version.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace midselect::cli {

namespace {

/// Thrown for input problems that should exit with kValidationError.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t spread_to_wires(std::uint64_t v, const std::vector<int>& wires) {
  std::uint64_t out = 0;
  for (std::size_t b = 0; b < wires.size(); ++b) {
    if ((v >> b) & 1U) out |= std::uint64_t{1} << wires[b];
  }
  return out;
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
  if (!f) throw std::runtime_error("write failed for " + path.string());
}

std::string read_text(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot read " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

/// manifest.json inside an output directory, or <file>.manifest.json beside a file.
fs::path manifest_path(const fs::path& out, bool is_dir) {
  return is_dir ? out / "manifest.json" : fs::path(out.string() + ".manifest.json");
}

void write_manifest(const fs::path& out, bool is_dir, const std::string& sub,
                    const std::vector<std::string>& args, json config, std::vector<std::string> artifacts) {
  json m;
  m["tool"] = "midselect";
  m["version"] = kVersion;
  m["subcommand"] = sub;
  m["args"] = args;
  m["config"] = std::move(config);
  m["artifacts"] = std::move(artifacts);
  write_text(manifest_path(out, is_dir), m.dump(2) + "\n");
}

struct EncodingOpts {
  std::string encoding;
  int n = 0;
  int k = 1;
  std::uint64_t mu = 0;
  int l = 0;
  int m = 0;
  std::optional<std::uint64_t> mu_last;
  std::string variant;
  int partial_checks = 0;
  bool no_bound_check = false;
};

void add_encoding_flags(CLI::App* sub, EncodingOpts& o, bool require_encoding) {
  auto* enc = sub->add_option("--encoding", o.encoding, "khot|onehot|wall|binary|gray|mixed")
                  ->check(CLI::IsMember({"khot", "onehot", "wall", "binary", "gray", "mixed"}));
  if (require_encoding) enc->required();
  sub->add_option("--n", o.n, "data width (not used by mixed)");
  sub->add_option("--k", o.k, "k-hot weight");
  sub->add_option("--mu", o.mu, "binary/Gray inclusive upper bound");
  sub->add_option("--l", o.l, "mixed: group count");
  sub->add_option("--m", o.m, "mixed: bits per group");
  sub->add_option("--mu-last", o.mu_last, "mixed: bound on the last group's value");
  sub->add_option("--variant", o.variant,
                  "khot: single|log; wall: parallel|inductive; mixed: sigma1|siglog|store");
  sub->add_option("--partial-checks", o.partial_checks, "binary/Gray: keep only the first c checks");
  sub->add_flag("--no-bound-check", o.no_bound_check, "onehot: skip the value < n check");
}

EncodingSpec spec_of(const EncodingOpts& o) {
  const EncodingKind kind = parse_encoding_kind(o.encoding);
  EncodingSpec s;
  switch (kind) {
    case EncodingKind::KHot: s = EncodingSpec::k_hot(o.n, o.k); break;
    case EncodingKind::OneHot: s = EncodingSpec::one_hot(o.n); break;
    case EncodingKind::DomainWall: s = EncodingSpec::domain_wall(o.n); break;
    case EncodingKind::BinaryBound: s = EncodingSpec::binary_bound(o.n, o.mu); break;
    case EncodingKind::GrayBound: s = EncodingSpec::gray_bound(o.n, o.mu); break;
    case EncodingKind::Mixed: s = EncodingSpec::mixed(o.l, o.m, o.mu_last); break;
  }
  s.validate();
  return s;
}

Circuit build_encoding(const EncodingOpts& o) {
  const EncodingSpec s = spec_of(o);
  if (o.partial_checks < 0) throw std::invalid_argument("--partial-checks must be non-negative");
  switch (s.kind) {
    case EncodingKind::KHot:
      return khot_filter(s.n, s.k, o.variant.empty() ? KHotVariant::SingleAncilla : parse_khot_variant(o.variant));
    case EncodingKind::OneHot: return onehot_postselect(s.n, !o.no_bound_check);
    case EncodingKind::DomainWall:
      return domainwall_filter(s.n, o.variant.empty() ? WallVariant::Parallel : parse_wall_variant(o.variant));
    case EncodingKind::BinaryBound: return binary_bound_filter(s.n, s.mu, o.partial_checks);
    case EncodingKind::GrayBound: return gray_bound_filter(s.n, s.mu, o.partial_checks);
    case EncodingKind::Mixed:
      return mixed_filter(s.l, s.m, o.variant.empty() ? MixedVariant::CountSigma1 : parse_mixed_variant(o.variant),
                          s.mu_last);
  }
  throw std::logic_error("unhandled encoding");
}

json encoding_json(const EncodingOpts& o) {
  json j{{"encoding", o.encoding}, {"n", o.n}, {"k", o.k}, {"mu", o.mu}, {"l", o.l}, {"m", o.m},
         {"variant", o.variant}, {"partial_checks", o.partial_checks}, {"bound_check", !o.no_bound_check}};
  if (o.mu_last) j["mu_last"] = *o.mu_last;
  return j;
}

json resources_json(const ResourceProfile& r) {
  return {{"ancilla", r.ancilla}, {"gates", r.gates}, {"depth", r.depth}, {"volume", r.volume}};
}

std::vector<double> read_angles(const fs::path& path) {
  try {
    const json j = json::parse(read_text(path));
    if (j.is_array()) return j.get<std::vector<double>>();
    return j.at("angles").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed angles file: ") + e.what());
  }
}

TspInstance load_instance(const fs::path& path) {
  try {
    return read_tsp_instance(path);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed instance file: ") + e.what());
  }
}

/// Wire count of the smallest circuit that still contains every block type.
int simulated_qubits(const QaoaProblem& prob, int stride, bool bound_check, McxStrategy mcx) {
  AnsatzConfig cfg;
  cfg.registers = prob.registers;
  cfg.width = prob.width;
  cfg.layers = std::max(1, stride);
  cfg.postselect_every = stride;
  cfg.bound_check = bound_check;
  cfg.angles.assign(static_cast<std::size_t>(2 * cfg.layers), 0.1);
  return transpile(assemble(cfg, prob.separator_qubo), TranspileOptions{mcx, true}).n_qubits();
}

void guard_size(int qubits, int max_qubits) {
  if (qubits > max_qubits) {
    throw ValidationError(fmt::format("simulation needs {} qubits, above --max-qubits {}", qubits, max_qubits));
  }
}

NoiseModel noise_of(const std::string& family, double gamma) {
  return NoiseModel(parse_noise_family(family), gamma);
}

struct ExpOpts {
  int cities = 3;
  int instances = 20;
  std::string layers = "4,8,12";
  std::string noise = "randx";
  double gamma = 0.01;
  int stride = 4;
  std::uint64_t seed = 0;
  std::string costs = "1..9";
  std::string out;
  int workers = 0;
  int max_qubits = 14;
  bool bound_check = false;
  bool full = false;
  std::string scenario;
  int max_iter = 200;
};

void add_experiment_flags(CLI::App* sub, ExpOpts& o) {
  sub->add_option("--cities", o.cities, "N (the circuit uses (N-1)^2 data qubits)")->capture_default_str();
  sub->add_option("--instances", o.instances, "instance count")->capture_default_str();
  sub->add_option("--layers", o.layers, "layer counts: 8, 4,8,12 or 1..40")->capture_default_str();
  sub->add_option("--noise", o.noise, "none|depol|ampdamp|randx")->capture_default_str();
  sub->add_option("--gamma", o.gamma, "noise strength")->capture_default_str();
  sub->add_option("--stride", o.stride, "mid-circuit post-selection every k layers")->capture_default_str();
  sub->add_option("--seed", o.seed, "PRNG seed")->capture_default_str();
  sub->add_option("--cost-range", o.costs, "lo..hi for sampled costs")->capture_default_str();
  sub->add_option("--out", o.out, "output directory")->required();
  sub->add_option("--workers", o.workers, "worker threads (default: MIDSELECT_WORKERS or 1)");
  sub->add_option("--max-qubits", o.max_qubits, "size guard")->capture_default_str();
  sub->add_flag("--bound-check", o.bound_check, "also check compressed values < width");
}

ExperimentPlan plan_of(const ExpOpts& o) {
  ExperimentPlan p;
  p.cities = o.cities;
  p.instances = o.instances;
  p.layers = parse_int_list(o.layers);
  p.noise = noise_of(o.noise, o.gamma);
  p.stride = o.stride;
  p.seed = o.seed;
  const auto costs = parse_int_list(o.costs);
  if (costs.empty()) throw std::invalid_argument("empty --cost-range");
  p.costs = {costs.front(), costs.back()};
  p.workers = o.workers > 0 ? o.workers : default_workers();
  p.bound_check = o.bound_check;
  p.optimizer.max_iterations = o.max_iter;
  p.validate();
  return p;
}

json plan_json(const ExperimentPlan& p) {
  return {{"scenario", std::string(to_string(p.scenario))},
          {"cities", p.cities},
          {"instances", p.instances},
          {"layers", p.layers},
          {"noise", std::string(to_string(p.noise.family()))},
          {"gamma", p.noise.gamma()},
          {"stride", p.stride},
          {"seed", p.seed},
          {"cost_range", {p.costs.lo, p.costs.hi}},
          {"workers", p.workers},
          {"bound_check", p.bound_check},
          {"max_iterations", p.optimizer.max_iterations}};
}

void guard_plan(const ExperimentPlan& p, int max_qubits) {
  if (p.cities > 6) throw ValidationError("--cities above 6 is beyond any dense simulation");
  const auto prob = make_problem(sample_instance(p.seed, 0, p.cities, p.costs));
  guard_size(simulated_qubits(prob, p.stride, p.bound_check, McxStrategy::AncillaFree), max_qubits);
}

}  // namespace

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw std::invalid_argument("bad integer list '" + text + "'");
    return v;
  };
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const int lo = to_int(text.substr(0, dots));
    const int hi = to_int(text.substr(dots + 2));
    if (hi < lo) throw std::invalid_argument("empty range '" + text + "'");
    for (int v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_int(item));
  if (out.empty()) throw std::invalid_argument("empty integer list");
  return out;
}

FilterCheck check_filter(const Circuit& c, const ValidityOracle& oracle) {
  const auto data = c.data_wires();
  if (static_cast<int>(data.size()) != oracle.spec().n) {
    throw std::invalid_argument(fmt::format("circuit has {} data wires, encoding expects {}", data.size(),
                                            oracle.spec().n));
  }
  if (data.size() > 12) throw std::invalid_argument("exhaustive check limited to 12 data wires");
  const bool classical = is_classical(c);
  FilterCheck r;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << data.size()); ++v) {
    const std::uint64_t basis = spread_to_wires(v, data);
    const double p = classical ? (classical_run(c, basis) ? 1.0 : 0.0) : basis_acceptance(c, basis);
    const double want = oracle.valid(v) ? 1.0 : 0.0;
    ++r.checked;
    if (std::abs(p - want) < 1e-10) {
      ++r.passed;
    } else if (r.counterexamples.size() < 8) {
      r.counterexamples.push_back(v);
    }
  }
  return r;
}

FilterCheck check_onehot_compression(int n) {
  const Compression comp = onehot_compression(n);
  const Circuit back = inverse(comp.circuit);
  FilterCheck r;
  for (int p = 0; p < n; ++p) {
    ++r.checked;
    const std::uint64_t in = std::uint64_t{1} << p;
    const auto out = classical_run(comp.circuit, in);
    bool ok = out.has_value();
    if (ok) {
      for (std::size_t b = 0; b < comp.outputs.size(); ++b) {
        ok = ok && (((*out >> comp.outputs[b]) & 1U) == ((static_cast<unsigned>(p) >> b) & 1U));
      }
      for (int z : comp.zeroed) ok = ok && !((*out >> z) & 1U);
      const auto restored = classical_run(back, *out);
      ok = ok && restored && *restored == in;
    }
    if (ok) {
      ++r.passed;
    } else if (r.counterexamples.size() < 8) {
      r.counterexamples.push_back(in);
    }
  }
  return r;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mid-circuit post-selection toolkit: encodings, density simulation, XY-QAOA experiments"};
  app.name("midselect");
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  // build
  EncodingOpts build_o;
  std::string build_out;
  bool build_transpile = false;
  std::string build_mcx = "ancilla_free";
  auto* build = app.add_subcommand("build", "Build an encoding filter circuit");
  add_encoding_flags(build, build_o, true);
  build->add_option("--out", build_out, "circuit JSON path")->required();
  build->add_flag("--transpile", build_transpile, "lower to 1-qubit gates and CNOT");
  build->add_option("--mcx", build_mcx, "ancilla_free|borrowed")->capture_default_str();

  // verify-encoding
  EncodingOpts ver_o;
  std::string ver_circuit;
  auto* verify = app.add_subcommand("verify-encoding", "Exhaustively check a filter against the validity oracle");
  add_encoding_flags(verify, ver_o, true);
  verify->add_option("--circuit", ver_circuit, "circuit JSON (default: build from the encoding flags)");

  // spectrum
  std::string spec_instance, spec_out;
  bool spec_reduced = false;
  auto* spectrum = app.add_subcommand("spectrum", "Brute-force E_min, E_max and argmin of a TSP QUBO");
  spectrum->add_option("--instance", spec_instance, "TSP instance JSON")->required();
  spectrum->add_flag("--reduced", spec_reduced, "fix city 0 at time 0, (N-1)^2 variables");
  spectrum->add_option("--out", spec_out, "also write the result as JSON");

  // simulate
  std::string sim_instance, sim_angles, sim_out, sim_noise = "none", sim_mcx = "ancilla_free";
  int sim_layers = 1, sim_every = 0, sim_max_qubits = 14;
  double sim_gamma = 0;
  std::uint64_t sim_seed = 0;
  bool sim_no_final = false, sim_bound = false;
  auto* simulate = app.add_subcommand("simulate", "Evaluate one XY-QAOA circuit under noise");
  simulate->add_option("--instance", sim_instance, "TSP instance JSON")->required();
  simulate->add_option("--layers", sim_layers, "QAOA layers")->capture_default_str();
  simulate->add_option("--gamma", sim_gamma, "noise strength")->capture_default_str();
  simulate->add_option("--noise", sim_noise, "none|depol|ampdamp|randx")->capture_default_str();
  simulate->add_option("--postselect-every", sim_every, "0 disables mid-circuit post-selection")
      ->capture_default_str();
  simulate->add_option("--angles", sim_angles, "JSON array p_1..p_l, r_1..r_l (default: seeded random)");
  simulate->add_option("--seed", sim_seed, "seed for random angles")->capture_default_str();
  simulate->add_option("--out", sim_out, "result JSON path")->required();
  simulate->add_flag("--no-final-postselect", sim_no_final, "skip classical post-selection");
  simulate->add_flag("--bound-check", sim_bound, "also check compressed values < width");
  simulate->add_option("--mcx", sim_mcx, "ancilla_free|borrowed")->capture_default_str();
  simulate->add_option("--max-qubits", sim_max_qubits, "size guard")->capture_default_str();

  // delta-e
  ExpOpts de_o;
  auto* delta_e = app.add_subcommand("delta-e", "ΔE study over seeded instances");
  add_experiment_flags(delta_e, de_o);
  delta_e->add_flag("--full", de_o.full, "N=4, 100 instances, layers 1..40 (hours)");

  // optimize-exp
  ExpOpts op_o;
  op_o.layers = "8";
  op_o.stride = 2;
  op_o.gamma = 0.002;
  op_o.instances = 10;
  auto* optimize = app.add_subcommand("optimize-exp", "Optimization scenarios with and without mid post-selection");
  add_experiment_flags(optimize, op_o);
  optimize->add_option("--scenario", op_o.scenario, "inject|co|re")
      ->required()
      ->check(CLI::IsMember({"inject", "co", "re", "inject_after", "co_optimize", "re_optimize"}));
  optimize->add_option("--max-iter", op_o.max_iter, "optimizer iteration limit")->capture_default_str();
  optimize->add_flag("--full", op_o.full, "40 instances");

  // replay
  std::string rep_manifest, rep_out;
  auto* replay = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  replay->add_option("--manifest", rep_manifest, "manifest.json")->required();
  replay->add_option("--out", rep_out, "override the output location");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const CLI::App* failing = &app;
    for (auto* s : app.get_subcommands()) failing = s;
    err << failing->help();
    return kValidationError;
  }

  try {
    if (*build) {
      Circuit c = build_encoding(build_o);
      if (build_transpile) c = transpile(c, parse_mcx_strategy(build_mcx));
      write_circuit(c, build_out);
      const auto res = resources(c);
      out << fmt::format("{} n={} wires={} ancilla={} gates={} depth={}\n", build_o.encoding,
                         spec_of(build_o).n, c.n_qubits(), res.ancilla, res.gates, res.depth);
      auto cfg = encoding_json(build_o);
      cfg["transpile"] = build_transpile;
      cfg["mcx"] = build_mcx;
      cfg["resources"] = resources_json(res);
      write_manifest(build_out, false, "build", args, cfg, {build_out});
      return kOk;
    }

    if (*verify) {
      const EncodingSpec spec = spec_of(ver_o);
      const Circuit c = ver_circuit.empty() ? build_encoding(ver_o) : read_circuit(ver_circuit);
      bool ok = true;
      auto report = [&](const char* what, const FilterCheck& r) {
        out << fmt::format("{}: {}/{} basis checks passed\n", what, r.passed, r.checked);
        for (auto v : r.counterexamples) {
          out << fmt::format("  counterexample: {}\n", to_bitstring(v, c.n_qubits()));
        }
        ok = ok && r.passed == r.checked;
      };
      if (spec.kind == EncodingKind::OneHot && ver_circuit.empty()) {
        report("compression", check_onehot_compression(spec.n));
      }
      const FilterCheck f = check_filter(c, ValidityOracle(spec));
      out << fmt::format("filter: {}/{} basis checks passed\n", f.passed, f.checked);
      for (auto v : f.counterexamples) out << fmt::format("  counterexample: {}\n", to_bitstring(v, spec.n));
      ok = ok && f.passed == f.checked;
      out << (ok ? "PASS\n" : "FAIL\n");
      return ok ? kOk : kRuntimeError;
    }

    if (*spectrum) {
      const TspInstance inst = load_instance(spec_instance);
      const QuboModel q = spec_reduced ? reduced_tsp_qubo(inst) : tsp_qubo(inst);
      const Spectrum s = brute_spectrum(q);
      const std::string argmin = to_bitstring(s.argmin.front(), q.n());
      out << fmt::format("E_min {}\nE_max {}\nargmin {}\n", s.e_min, s.e_max, argmin);
      if (!spec_out.empty()) {
        std::vector<std::string> all;
        for (auto z : s.argmin) all.push_back(to_bitstring(z, q.n()));
        const json j{{"variables", q.n()}, {"reduced", spec_reduced}, {"e_min", s.e_min},
                     {"e_max", s.e_max}, {"argmin", all}};
        write_text(spec_out, j.dump(2) + "\n");
        write_manifest(spec_out, false, "spectrum", args, {{"instance", spec_instance}, {"reduced", spec_reduced}},
                       {spec_out});
      }
      return kOk;
    }

    if (*simulate) {
      const auto prob = make_problem(load_instance(sim_instance));
      AnsatzConfig cfg;
      cfg.registers = prob.registers;
      cfg.width = prob.width;
      cfg.layers = sim_layers;
      cfg.postselect_every = sim_every;
      cfg.bound_check = sim_bound;
      cfg.angles = sim_angles.empty() ? sample_angles(sim_seed, 0, sim_layers) : read_angles(sim_angles);
      cfg.validate();
      const McxStrategy mcx = parse_mcx_strategy(sim_mcx);
      guard_size(simulated_qubits(prob, sim_every, sim_bound, mcx), sim_max_qubits);
      EvalOptions eo;
      eo.final_postselect = !sim_no_final;
      eo.mcx = mcx;
      const EvalResult r = evaluate(cfg, prob, noise_of(sim_noise, sim_gamma), eo);
      const json j{{"energy", r.energy},   {"raw_energy", r.raw_energy}, {"acc_mid", r.acc_mid},
                   {"acc_final", r.acc_final}, {"e_min", prob.e_min},  {"e_max", prob.e_max},
                   {"angles", cfg.angles}};
      write_text(sim_out, j.dump(2) + "\n");
      write_manifest(sim_out, false, "simulate", args,
                     {{"instance", sim_instance}, {"layers", sim_layers}, {"noise", sim_noise},
                      {"gamma", sim_gamma}, {"postselect_every", sim_every}, {"seed", sim_seed},
                      {"final_postselect", !sim_no_final}, {"bound_check", sim_bound}, {"mcx", sim_mcx}},
                     {sim_out});
      out << fmt::format("energy {:.12g} acc_mid {:.12g} acc_final {:.12g}\n", r.energy, r.acc_mid, r.acc_final);
      return kOk;
    }

    if (*delta_e) {
      if (de_o.full) {
        de_o.cities = 4;
        de_o.instances = 100;
        de_o.layers = "1..40";
      }
      ExperimentPlan plan = plan_of(de_o);
      plan.scenario = Scenario::DeltaE;
      guard_plan(plan, de_o.max_qubits);
      const auto recs = run_delta_e(plan);
      const fs::path dir = de_o.out;
      write_text(dir / "delta_e.csv", delta_e_csv(recs));
      write_text(dir / "summary.json", delta_e_summary_json(recs) + "\n");
      write_manifest(dir, true, "delta-e", args, plan_json(plan), {"delta_e.csv", "summary.json"});
      for (const auto& [l, s] : summarize_delta_e(recs)) {
        out << fmt::format("layers {:>3}  mean {:+.6f}  std {:.6f}  n {}  excluded {}\n", l, s.mean, s.std, s.n,
                           s.excluded);
      }
      return kOk;
    }

    if (*optimize) {
      if (op_o.full) op_o.instances = 40;
      ExperimentPlan plan = plan_of(op_o);
      plan.scenario = parse_scenario(op_o.scenario);
      guard_plan(plan, op_o.max_qubits);
      const auto recs = run_optimization(plan);
      const fs::path dir = op_o.out;
      write_text(dir / "optimization.csv", optimization_csv(recs));
      write_text(dir / "summary.json", optimization_summary_json(recs) + "\n");
      write_manifest(dir, true, "optimize-exp", args, plan_json(plan), {"optimization.csv", "summary.json"});
      const auto s = summarize_improvement(recs);
      out << fmt::format("scenario {}  rel_improvement mean {:+.4f}  std {:.4f}  n {}  failed {}\n",
                         to_string(plan.scenario), s.mean, s.std, s.n, s.excluded);
      return kOk;
    }

    if (*replay) {
      json m;
      try {
        m = json::parse(read_text(rep_manifest));
      } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed manifest: ") + e.what());
      }
      auto replay_args = m.at("args").get<std::vector<std::string>>();
      if (replay_args.empty() || replay_args.front() == "replay") throw ValidationError("manifest has no command");
      if (!rep_out.empty()) {
        auto it = std::find(replay_args.begin(), replay_args.end(), "--out");
        if (it != replay_args.end() && it + 1 != replay_args.end()) {
          *(it + 1) = rep_out;
        } else {
          replay_args.push_back("--out");
          replay_args.push_back(rep_out);
        }
      }
      return run_cli(replay_args, out, err);
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  } catch (const std::exception& e) {
    err << "runtime error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return kValidationError;
}

}  // namespace midselect::cli

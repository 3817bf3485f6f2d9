/*
 * Copyright 2026 The fockforge authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "fockforge/io.hpp"
#include "fockforge/simulator.hpp"

namespace fockforge {

namespace {

struct CommonOptions {
  std::string device_path;
  std::string core = "glynn";
  std::string basis = "full";
  std::string losses = "on";
  bool keep_loss_modes = false;
};

CoreKind parse_core(const std::string& name) {
  if (name == "glynn") return CoreKind::Glynn;
  if (name == "direct") return CoreKind::Direct;
  throw ValidationError("--core must be 'direct' or 'glynn'");
}

BasisSpec parse_basis(const std::string& name) {
  if (name == "full") return BasisSpec::full();
  if (name == "restricted") return BasisSpec::restricted();
  if (name.rfind("file=", 0) == 0) {
    const std::string path = name.substr(5);
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open basis file: " + path);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& err) {
      throw ValidationError("basis file " + path + ": " + err.what());
    }
    std::vector<OccupationVector> kets;
    for (const auto& entry : j) kets.push_back(entry.get<OccupationVector>());
    return BasisSpec::user(std::move(kets));
  }
  throw ValidationError("--basis must be 'full', 'restricted' or 'file=<kets.json>'");
}

OccupationVector parse_ket(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw ValidationError(std::string("ket must be a JSON integer array: ") + err.what());
  }
  return j.get<OccupationVector>();
}

void write_or_print(const std::string& content, const std::string& path) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write output file: " + path);
  out << content;
}

int cmd_run(const CommonOptions& common, const std::string& format,
            const std::string& out_prefix, uint64_t seed, long runs) {
  const Device device = load_device(common.device_path);
  const CompiledDevice dev = device.compile(common.losses == "on");
  Simulator sim({parse_core(common.core), parse_basis(common.basis)});

  State input = dev.fixed_input();
  input.normalize();
  const State raw = sim.run_state(input, dev);

  ProbabilityBins bins;
  if (common.keep_loss_modes) {
    // raw-granularity view with the virtual loss modes still in the key
    for (const auto& [ket, p] : raw_bins(raw).bins()) {
      bool pass = true;
      for (const DetectorSpec& d : dev.detection.detectors)
        if (d.condition &&
            dev.detection.modes.channel_total(ket, d.channel) != *d.condition)
          pass = false;
      if (pass) bins.add(ket, p);
    }
  } else {
    PipelineOptions pipeline;
    pipeline.seed = seed;
    pipeline.runs = runs;
    bins = detection_pipeline(raw, dev.detection, pipeline);
  }

  std::cout << std::fixed << std::setprecision(9)
            << "success probability: " << bins.total() << "\n";

  std::string state_text;
  if (!dev.loss_extended) {
    const ReducedState reduced = apply_condition(raw, dev.circuit);
    if (format == "json")
      state_text = state_to_json(reduced.state).dump(2) + "\n";
    else
      state_text = state_to_text(reduced.state);
  } else {
    if (format == "json")
      state_text = state_to_json(raw).dump(2) + "\n";
    else
      state_text = state_to_text(raw);
  }

  if (out_prefix.empty()) {
    std::cout << "post-selected state:\n" << state_text;
    std::cout << "outcome bins:\n" << bins_to_csv(bins);
  } else {
    write_or_print(state_text, out_prefix + "state." + (format == "json" ? "json" : "txt"));
    write_or_print(bins_to_csv(bins), out_prefix + "bins.csv");
  }
  return 0;
}

int cmd_amp(const CommonOptions& common, const std::string& out_ket_text,
            const std::string& in_ket_text) {
  const Device device = load_device(common.device_path);
  const CompiledDevice dev = device.compile(common.losses == "on");
  Simulator sim({parse_core(common.core), parse_basis(common.basis)});

  OccupationVector in_ket;
  if (in_ket_text.empty()) {
    State input = dev.fixed_input();
    input.prune();
    if (input.size() != 1)
      throw ValidationError("amp: device input is not a single ket; pass --in-ket");
    in_ket = input.term(0).ket;
  } else {
    in_ket = parse_ket(in_ket_text);
    in_ket.resize(static_cast<std::size_t>(dev.total_modes), 0);
  }
  OccupationVector out_ket = parse_ket(out_ket_text);
  out_ket.resize(static_cast<std::size_t>(dev.total_modes), 0);
  if (static_cast<int>(in_ket.size()) != dev.total_modes)
    throw ValidationError("amp: input ket does not match the device's " +
                          std::to_string(dev.total_modes) + " modes");

  const Complex amplitude =
      common.core == "direct"
          ? direct_ket_transform(in_ket, dev.transfer, BasisSpec::user({out_ket}))
                .amplitude_of(out_ket)
          : transition_amplitude(in_ket, out_ket, dev.transfer);
  std::cout << "amplitude: " << format_amplitude(amplitude) << "\n"
            << std::fixed << std::setprecision(9)
            << "probability: " << std::norm(amplitude) << "\n";
  return 0;
}

int cmd_sample(const CommonOptions& common, long n, uint64_t seed,
               const std::string& method, long burn_in, long thinning,
               const std::string& out_path) {
  const Device device = load_device(common.device_path);
  const CompiledDevice dev = device.compile(common.losses == "on");
  Simulator sim({parse_core(common.core), parse_basis(common.basis)});

  SampleConfig cfg;
  cfg.nsamples = n;
  cfg.seed = seed;
  cfg.burn_in = burn_in;
  cfg.thinning = thinning;
  const SamplerMethod m = method == "clifford" ? SamplerMethod::Clifford
                        : method == "metropolis"
                            ? SamplerMethod::Metropolis
                            : throw ValidationError("--method must be 'clifford' or 'metropolis'");
  const Simulator::SampleResult result = sim.sample(dev, m, cfg);
  write_or_print(sample_counts_to_csv(result.counts, result.emitted), out_path);
  return 0;
}

int cmd_ensemble(const CommonOptions& common, long runs, uint64_t seed,
                 int threads, bool raw, const std::string& out_path) {
  const Device device = load_device(common.device_path);
  const CompiledDevice dev = device.compile(common.losses == "on");
  Simulator sim({parse_core(common.core), parse_basis(common.basis)});
  const DensityMatrix dm = sim.ensemble(dev, runs, seed, threads);

  // labels live on the unconditioned channels
  std::vector<int> kept;
  for (int ch = 0; ch < dev.circuit.nchannels(); ++ch) {
    bool conditioned = false;
    for (const DetectorSpec& d : dev.circuit.detectors())
      if (d.channel == ch && d.condition) conditioned = true;
    if (!conditioned) kept.push_back(ch);
  }
  std::ostringstream header;
  header << std::fixed << std::setprecision(9)
         << "runs: " << dm.runs() << "\n"
         << "accepted trace / runs: " << dm.raw().trace().real() / dm.runs() << "\n";
  write_or_print(header.str() + density_matrix_to_text(dm, dev.circuit.modes(), kept, !raw),
                 out_path);
  return 0;
}

int cmd_bench(const std::string& table, int max_photons, uint64_t seed) {
  using Clock = std::chrono::steady_clock;
  std::cout << "benchmark: random-unitary circuits, at most one photon per channel\n";

  auto time_ms = [](auto&& fn) {
    const auto start = Clock::now();
    fn();
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  };

  if (table == "dist") {
    std::cout << "photons channels direct_full_ms direct_restricted_ms "
                 "glynn_full_ms glynn_restricted_ms\n";
    for (int n = 2; n <= max_photons; ++n) {
      const int channels = 2 * n;
      const Eigen::MatrixXcd u = haar_unitary(channels, seed + static_cast<uint64_t>(n));
      OccupationVector input(static_cast<std::size_t>(channels), 0);
      for (int i = 0; i < n; ++i) input[static_cast<std::size_t>(i)] = 1;
      State in(channels, 1);
      in.add_term(1.0, input);
      std::cout << n << " " << channels << std::fixed << std::setprecision(1);
      for (CoreKind core : {CoreKind::Direct, CoreKind::Glynn})
        for (const BasisSpec& basis : {BasisSpec::full(), BasisSpec::restricted()})
          std::cout << " " << time_ms([&] { transform(in, u, core, basis); });
      std::cout << "\n" << std::defaultfloat;
    }
    return 0;
  }

  // single-amplitude table
  std::cout << "photons channels direct_ms glynn_ms\n";
  std::vector<std::pair<int, int>> grid{{2, 4}, {4, 8}, {6, 12}, {8, 16}, {10, 20}};
  if (max_photons >= 20) grid.emplace_back(20, 40);
  if (max_photons >= 22) grid.emplace_back(22, 44);
  for (const auto& [n, channels] : grid) {
    const Eigen::MatrixXcd u = haar_unitary(channels, seed + static_cast<uint64_t>(n));
    OccupationVector input(static_cast<std::size_t>(channels), 0), output = input;
    for (int i = 0; i < n; ++i) input[static_cast<std::size_t>(i)] = 1;
    for (int i = 0; i < n; ++i) output[static_cast<std::size_t>(channels - 1 - i)] = 1;
    std::cout << n << " " << channels << std::fixed << std::setprecision(1);
    if (n <= 10) {
      std::cout << " "
                << time_ms([&] {
                     direct_ket_transform(input, u, BasisSpec::user({output}));
                   });
    } else {
      std::cout << " -";
    }
    std::cout << " " << time_ms([&] { transition_amplitude(input, output, u); })
              << "\n"
              << std::defaultfloat;
  }
  return 0;
}

int cmd_validate(const std::string& device_path) {
  const Device device = load_device(device_path);
  device.compile(true);
  std::cout << "OK: " << device_path << "\n";
  return 0;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"fockforge: linear-optical quantum circuit simulator over Fock states"};
  app.require_subcommand(1);

  CommonOptions common;
  std::string format = "csv";
  std::string out_path;
  std::string out_prefix;
  std::string method = "clifford";
  std::string in_ket_text, out_ket_text;
  std::string bench_table = "dist";
  uint64_t seed = 1;
  long nsamples = 100000;
  long runs = 10000;
  long pipeline_runs = 100000;
  long burn_in = 1000;
  long thinning = 10;
  int threads = 0;
  int max_photons = 6;
  bool raw_matrix = false;

  auto add_common = [&](CLI::App* cmd, bool needs_device = true) {
    if (needs_device)
      cmd->add_option("--device", common.device_path, "device description (JSON)")
          ->required();
    cmd->add_option("--core", common.core, "amplitude core: direct|glynn");
    cmd->add_option("--basis", common.basis,
                    "output basis: full|restricted|file=<kets.json>");
    cmd->add_option("--losses", common.losses,
                    "loss-mode dilation for lossy circuits: on|off");
    cmd->add_flag("--keep-loss-modes", common.keep_loss_modes,
                  "report outcomes with the virtual loss modes in the key");
  };

  CLI::App* run = app.add_subcommand("run", "full transform and detection pipeline");
  add_common(run);
  run->add_option("--format", format, "state output format: json|csv");
  run->add_option("--out", out_prefix, "output file prefix (stdout when omitted)");
  run->add_option("--seed", seed, "seed for stochastic detector models");
  run->add_option("--runs", pipeline_runs,
                  "conditioned-sampling rounds for dark counts / dead time");

  CLI::App* amp = app.add_subcommand("amp", "single transition amplitude");
  add_common(amp);
  amp->add_option("--out-ket", out_ket_text, "output ket as a JSON array")->required();
  amp->add_option("--in-ket", in_ket_text,
                  "input ket as a JSON array (defaults to the device input)");

  CLI::App* sample = app.add_subcommand("sample", "draw outcomes from the output distribution");
  add_common(sample);
  sample->add_option("--n", nsamples, "number of samples")->required();
  sample->add_option("--seed", seed, "sampler seed");
  sample->add_option("--method", method, "sampler: clifford|metropolis");
  sample->add_option("--burn-in", burn_in, "metropolis burn-in steps");
  sample->add_option("--thinning", thinning, "metropolis thinning stride");
  sample->add_option("--out", out_path, "output CSV path (stdout when omitted)");

  CLI::App* ensemble = app.add_subcommand(
      "ensemble", "repeated stochastic runs accumulated into a density matrix");
  add_common(ensemble);
  ensemble->add_option("--runs", runs, "number of independent runs")->required();
  ensemble->add_option("--seed", seed, "ensemble seed");
  ensemble->add_option("--threads", threads,
                       "worker threads (FOCKFORGE_THREADS or hardware default)");
  ensemble->add_flag("--raw", raw_matrix,
                     "print the run-averaged matrix instead of the unit-trace one");
  ensemble->add_option("--out", out_path, "output path (stdout when omitted)");

  CLI::App* bench = app.add_subcommand("bench", "timing report on random circuits");
  bench->add_option("--table", bench_table, "dist (full output state) or amp (single amplitude)");
  bench->add_option("--max-photons", max_photons, "largest photon count in the grid");
  bench->add_option("--seed", seed, "random-circuit seed");

  CLI::App* validate = app.add_subcommand("validate", "schema and invariant check of a device file");
  validate->add_option("--device", common.device_path, "device description (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) return cmd_run(common, format, out_prefix, seed, pipeline_runs);
    if (amp->parsed()) return cmd_amp(common, out_ket_text, in_ket_text);
    if (sample->parsed())
      return cmd_sample(common, nsamples, seed, method, burn_in, thinning, out_path);
    if (ensemble->parsed())
      return cmd_ensemble(common, runs, seed, threads, raw_matrix, out_path);
    if (bench->parsed()) return cmd_bench(bench_table, max_photons, seed);
    if (validate->parsed()) return cmd_validate(common.device_path);
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

}  // namespace fockforge

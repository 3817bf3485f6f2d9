#include <doctest.h>

#include <cmath>

#include "fockforge/device.hpp"
#include "fockforge/measurement.hpp"
#include "fockforge/simulator.hpp"
#include "test_helpers.hpp"

using namespace fockforge;
using fockforge::testing::complex_near;

namespace {

// The sign-flip gate with its ancilla photon and post-selection detectors.
Device nsx_device() {
  Device d(3);
  d.add_input_ket(1.0, {0, 1, 0});
  d.add_input_ket(1.0, {1, 1, 0});
  d.add_input_ket(1.0, {2, 1, 0});
  d.phase_shifter(0, 180.0);
  d.beamsplitter(1, 2, 22.5, 0.0);
  d.beamsplitter(0, 1, 65.5302, 0.0);
  d.beamsplitter(1, 2, -22.5, 0.0);
  d.detector(0);
  d.detector(1, 1);
  d.detector(2, 0);
  return d;
}

}  // namespace

TEST_CASE("enumerate_projectors spans the polarization combinations") {
  const ModeMap modes(3, 2, 1);
  Condition cond;
  cond.required = {{1, 1}, {2, 1}};
  const auto projectors = enumerate_projectors(cond, modes);
  REQUIRE(projectors.size() == 4);  // HH, HV, VH, VV on the two channels
  for (const OccupationVector& p : projectors) {
    REQUIRE(p.size() == 4);
    CHECK(p[0] + p[1] == 1);
    CHECK(p[2] + p[3] == 1);
  }
}

TEST_CASE("a vacuum condition has a single projector") {
  const ModeMap modes(2, 1, 1);
  Condition cond;
  cond.required = {{0, 0}};
  const auto projectors = enumerate_projectors(cond, modes);
  REQUIRE(projectors.size() == 1);
  CHECK(projectors[0] == OccupationVector{0});
}

TEST_CASE("two photons over two packets give three projectors") {
  const ModeMap modes(1, 1, 2);
  Condition cond;
  cond.required = {{0, 2}};
  const auto projectors = enumerate_projectors(cond, modes);
  REQUIRE(projectors.size() == 3);
  CHECK(projectors[0] == OccupationVector{2, 0});
  CHECK(projectors[1] == OccupationVector{1, 1});
  CHECK(projectors[2] == OccupationVector{0, 2});
}

TEST_CASE("nsx post-selection keeps the sign-flipped amplitudes") {
  const CompiledDevice dev = nsx_device().compile();
  Simulator sim({CoreKind::Direct, BasisSpec::full()});
  const Simulator::Conditioned result = sim.run_conditioned(dev);
  CHECK(result.reduced.channels == std::vector<int>{0});
  CHECK(complex_near(result.reduced.state.amplitude_of({0}), {0.5, 0}, 1e-7));
  CHECK(complex_near(result.reduced.state.amplitude_of({1}), {0.5, 0}, 1e-7));
  CHECK(complex_near(result.reduced.state.amplitude_of({2}), {-0.5, 0}, 1e-7));
  // norm^2(post-selected) / norm^2(input) is the success probability
  CHECK(result.success_probability == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("a condition matching no ket yields the zero state") {
  Device d(2);
  d.add_input_ket(1.0, {1, 0});
  d.detector(0, 0);
  d.detector(1, 0);
  const CompiledDevice dev = d.compile();
  Simulator sim;
  const State raw = sim.run_state(dev.fixed_input(), dev);
  const ReducedState reduced = apply_condition(raw, dev.circuit);
  CHECK(reduced.state.empty());
}

TEST_CASE("per-projector reduction splits by conditioned sub-mode content") {
  // polarized circuit, condition of one photon on channel 1: the H and V
  // projections come back as separate reduced states
  Device d(2, true);
  d.add_photons(1, 0, 0, 0.0, 1.0, 1.0);
  d.add_photons(1, 1, 0, 0.0, 1.0, 1.0);
  d.half_waveplate(1, 22.5);
  d.detector(0);
  d.detector(1, 1);
  const CompiledDevice dev = d.compile();
  Simulator sim({CoreKind::Direct, BasisSpec::full()});
  const State raw = sim.run_state(dev.fixed_input(), dev);
  const auto projected = project_per_projector(raw, dev.circuit);
  CHECK(projected.size() == 2);
  double total = 0;
  for (const State& s : projected) total += s.norm2();
  CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("project_onto_state reduces through an arbitrary projector") {
  // |psi> = (|1,0,ancilla> + |0,1,ancilla'>)/sqrt(2); projecting the last
  // two modes onto (|1,0> + |0,1>)/sqrt(2) leaves the matched components
  State psi(4, 1);
  psi.add_term(1.0 / std::sqrt(2.0), {1, 0, 1, 0});
  psi.add_term(1.0 / std::sqrt(2.0), {0, 1, 0, 1});
  State projector(2, 1);
  projector.add_term(1.0 / std::sqrt(2.0), {1, 0});
  projector.add_term(1.0 / std::sqrt(2.0), {0, 1});
  const State reduced = project_onto_state(psi, projector, {2, 3});
  CHECK(complex_near(reduced.amplitude_of({1, 0}), {0.5, 0}, 1e-12));
  CHECK(complex_near(reduced.amplitude_of({0, 1}), {0.5, 0}, 1e-12));
}

TEST_CASE("computational and bell projector sets give the same reduced matrix") {
  // basis independence of the projector sum: reduce a random two-photon
  // polarized state over {HH,HV,VH,VV} and over the four Bell states
  const ModeMap modes(3, 2, 1);
  Rng rng(29);
  State raw(modes.nmodes(), 1);
  // one photon on channel 0, one on each of channels 1 and 2 in random
  // polarization superpositions
  for (int p0 = 0; p0 < 2; ++p0)
    for (int p1 = 0; p1 < 2; ++p1)
      for (int p2 = 0; p2 < 2; ++p2) {
        OccupationVector ket(static_cast<std::size_t>(modes.nmodes()), 0);
        ket[static_cast<std::size_t>(modes.index(0, p0, 0))] = 1;
        ket[static_cast<std::size_t>(modes.index(1, p1, 0))] = 1;
        ket[static_cast<std::size_t>(modes.index(2, p2, 0))] = 1;
        raw.add_term(Complex{rng.uniform() - 0.5, rng.uniform() - 0.5}, ket);
      }
  raw.normalize();

  const std::vector<int> measured{modes.index(1, 0, 0), modes.index(1, 1, 0),
                                  modes.index(2, 0, 0), modes.index(2, 1, 0)};

  auto accumulate = [&](const std::vector<State>& projectors) {
    DensityMatrix dm;
    for (const State& p : projectors) dm.add_state(project_onto_state(raw, p, measured));
    dm.add_runs(1);
    return dm;
  };

  // computational projectors |ab> over (H1,V1,H2,V2) occupations
  std::vector<State> computational;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      State p(4, 1);
      OccupationVector ket{a == 0 ? 1 : 0, a == 0 ? 0 : 1, b == 0 ? 1 : 0,
                           b == 0 ? 0 : 1};
      p.add_term(1.0, ket);
      computational.push_back(p);
    }
  // Bell projectors
  const double s = 1.0 / std::sqrt(2.0);
  std::vector<State> bell(4, State(4, 1));
  bell[0].add_term(s, {1, 0, 1, 0});
  bell[0].add_term(s, {0, 1, 0, 1});
  bell[1].add_term(s, {1, 0, 1, 0});
  bell[1].add_term(-s, {0, 1, 0, 1});
  bell[2].add_term(s, {1, 0, 0, 1});
  bell[2].add_term(s, {0, 1, 1, 0});
  bell[3].add_term(s, {1, 0, 0, 1});
  bell[3].add_term(-s, {0, 1, 1, 0});

  const DensityMatrix dm_comp = accumulate(computational);
  const DensityMatrix dm_bell = accumulate(bell);
  for (const auto& [row, ri] : dm_comp.sorted_labels())
    for (const auto& [col, ci] : dm_comp.sorted_labels())
      CHECK(std::abs(dm_comp.entry(row, col) - dm_bell.entry(row, col)) < 1e-10);
}

TEST_CASE("counter bins sum squared amplitudes per channel") {
  Device d(2);
  d.add_input_ket(1.0, {1, 1});
  d.beamsplitter(0, 1, 45.0, 0.0);
  d.detector(0);
  d.detector(1);
  const CompiledDevice dev = d.compile();
  Simulator sim;
  const ProbabilityBins bins = sim.run(dev);
  CHECK(bins.probability({2, 0}) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(bins.probability({0, 2}) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(bins.probability({1, 1}) == doctest::Approx(0.0));
  CHECK(bins.total() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("ten-photon hom populates only even splits at zero delay") {
  Device d(2);
  for (int i = 0; i < 1; ++i) {
    d.add_photons(5, 0, 0, 0.0, 1.0, 1.0);
    d.add_photons(5, 1, 0, 0.0, 1.0, 1.0);
  }
  d.beamsplitter(0, 1, 45.0, 0.0);
  d.detector(0);
  d.detector(1);
  const CompiledDevice dev = d.compile();
  Simulator sim({CoreKind::Direct, BasisSpec::full()});
  const ProbabilityBins bins = sim.run(dev);
  CHECK(bins.total() == doctest::Approx(1.0).epsilon(1e-9));
  for (const auto& [key, p] : bins.bins()) {
    // odd-split outcomes are suppressed by interference
    if (key[0] % 2 == 1) CHECK(p < 1e-12);
  }
  // symmetric distribution
  CHECK(bins.probability({10, 0}) == doctest::Approx(bins.probability({0, 10})).epsilon(1e-9));
}

TEST_CASE("full detection keys keep the packet labels") {
  Device d(2);
  d.add_photons(1, 0, 0, 0.0, 1.0, 1.0);
  d.add_photons(1, 1, 0, 50.0, 1.0, 1.0);
  d.detector(0);
  d.detector(1);
  d.detector_kind(DetectorKind::Full);
  const CompiledDevice dev = d.compile();
  Simulator sim({CoreKind::Direct, BasisSpec::full()});
  const ProbabilityBins bins = sim.run(dev);
  // identity circuit: one outcome, photon 0 in packet 0 and photon 1 in packet 1
  REQUIRE(bins.size() == 1);
  const std::vector<int> key = bins.bins().begin()->first;
  CHECK(key == std::vector<int>{1, 0, 0, 1});
}

TEST_CASE("dark counts add a poisson mean per detector") {
  for (double lambda : {0.1, 0.5}) {
    DetectionSetup setup;
    setup.modes = ModeMap(1, 1, 1);
    DetectorSpec det;
    det.channel = 0;
    det.dark_rate = lambda;
    setup.detectors = {det};
    setup.total_modes = 1;
    setup.packet_periods = {0};

    ProbabilityBins vacuum;
    vacuum.add({0}, 1.0);
    Rng rng(33);
    const long runs = 100000;
    const ProbabilityBins out = dark_counts(vacuum, setup, rng, runs);
    double mean = 0;
    for (const auto& [key, p] : out.bins()) mean += key[0] * p;
    const double sigma = 3 * std::sqrt(lambda / runs);
    CHECK(std::abs(mean - lambda) < sigma);
    // zero-dark-count weight is exp(-lambda)
    CHECK(std::abs(out.probability({0}) - std::exp(-lambda)) <
          3 * std::sqrt(std::exp(-lambda) * (1 - std::exp(-lambda)) / runs));
  }
  // lambda = 0 leaves the bins untouched
  DetectionSetup setup;
  setup.modes = ModeMap(1, 1, 1);
  DetectorSpec det;
  det.channel = 0;
  setup.detectors = {det};
  setup.total_modes = 1;
  ProbabilityBins bins;
  bins.add({1}, 0.75);
  Rng rng(34);
  const ProbabilityBins out = dark_counts(bins, setup, rng, 1000);
  CHECK(out.probability({1}) == doctest::Approx(0.75));
}

TEST_CASE("dead time rejects detections at the configured rate") {
  for (double blnk : {0.1, 0.5}) {
    DetectionSetup setup;
    setup.modes = ModeMap(1, 1, 1);
    DetectorSpec det;
    det.channel = 0;
    det.dead_fraction = blnk;
    setup.detectors = {det};
    setup.total_modes = 1;

    ProbabilityBins one_photon;
    one_photon.add({1}, 1.0);
    Rng rng(35);
    const long runs = 100000;
    const ProbabilityBins out = dead_time(one_photon, setup, rng, runs);
    const double sigma = 3 * std::sqrt(blnk * (1 - blnk) / runs);
    CHECK(std::abs(out.probability({0}) - blnk) < sigma);
  }
  // extremes
  DetectionSetup setup;
  setup.modes = ModeMap(1, 1, 1);
  DetectorSpec det;
  det.channel = 0;
  det.dead_fraction = 1.0;
  setup.detectors = {det};
  setup.total_modes = 1;
  ProbabilityBins bins;
  bins.add({3}, 1.0);
  Rng rng(36);
  const ProbabilityBins out = dead_time(bins, setup, rng, 200);
  CHECK(out.probability({0}) == doctest::Approx(1.0));
}

TEST_CASE("noise perturbs bins with the requested variance and clamps at zero") {
  const double variance = 0.0004;
  Rng rng(37);
  ProbabilityBins flat;
  for (int i = 0; i < 2000; ++i) flat.add({i}, 0.5);
  const ProbabilityBins noisy = add_noise(flat, variance, rng);
  double mean = 0, second = 0;
  for (const auto& [key, p] : noisy.bins()) {
    const double delta = p - 0.5;
    mean += delta;
    second += delta * delta;
  }
  mean /= noisy.size();
  second /= noisy.size();
  CHECK(std::abs(second - variance) < 3 * variance * std::sqrt(2.0 / noisy.size()));

  ProbabilityBins tiny;
  tiny.add({0}, 0.001);
  Rng rng2(38);
  for (int i = 0; i < 200; ++i) {
    const ProbabilityBins clamped = add_noise(tiny, 4.0, rng2);
    CHECK(clamped.probability({0}) >= 0.0);
  }
  // zero variance is the identity
  Rng rng3(39);
  CHECK(add_noise(tiny, 0.0, rng3).probability({0}) == doctest::Approx(0.001));
}

TEST_CASE("pipeline with no imperfections equals condition plus binning") {
  const CompiledDevice dev = nsx_device().compile();
  Simulator sim({CoreKind::Direct, BasisSpec::full()});
  const ProbabilityBins bins = sim.run(dev);
  // normalized input: post-selected probabilities sum to 0.25 across the
  // three surviving outcomes (0.75 / 3 = 0.25 norm share each)
  CHECK(bins.total() == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(bins.probability({0}) == doctest::Approx(0.25 / 3).epsilon(1e-7));
  CHECK(bins.probability({1}) == doctest::Approx(0.25 / 3).epsilon(1e-7));
  CHECK(bins.probability({2}) == doctest::Approx(0.25 / 3).epsilon(1e-7));
}

TEST_CASE("counter relabeling preserves the total probability exactly") {
  Device d(2);
  d.add_photons(1, 0, 0, 0.0, 1.0, 1.0);
  d.add_photons(1, 1, 0, 0.7, 1.0, 1.0);
  d.beamsplitter(0, 1, 40.0, 10.0);
  d.detector(0);
  d.detector(1);
  const CompiledDevice dev = d.compile();
  Simulator sim({CoreKind::Direct, BasisSpec::full()});
  State input = dev.fixed_input();
  input.normalize();
  const State raw = sim.run_state(input, dev);
  const ProbabilityBins fine = raw_bins(raw);
  const ProbabilityBins coarse = bins_from_state(raw, dev.detection);
  CHECK(coarse.total() == doctest::Approx(fine.total()).epsilon(1e-12));
}

TEST_CASE("ignored channels are summed out of the bins") {
  Device d(2);
  d.add_input_ket(1.0, {1, 1});
  d.beamsplitter(0, 1, 45.0, 0.0);
  d.detector(0);
  d.ignore(1);
  const CompiledDevice dev = d.compile();
  Simulator sim;
  const ProbabilityBins bins = sim.run(dev);
  CHECK(bins.probability({2}) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(bins.probability({0}) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(bins.total() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("swapping the dark-count and noise steps changes the output") {
  // the pipeline applies darks before post-selection and noise after; the
  // reversed order is a different channel and must disagree
  Device d(1);
  d.add_input_ket(1.0, {1});
  d.detector(0, 1, 1.0, 0.0, 0.4);
  d.noise(0.01);
  const CompiledDevice dev = d.compile();
  Simulator sim;
  PipelineOptions opts;
  opts.seed = 41;
  opts.runs = 20000;
  const ProbabilityBins pipeline = sim.run(dev, opts);

  // manual permutation: noise first, then dark counts, then the condition
  State input = dev.fixed_input();
  input.normalize();
  const State raw = sim.run_state(input, dev);
  Rng rng(41);
  ProbabilityBins permuted = add_noise(raw_bins(raw), 0.01, rng);
  permuted = dark_counts(permuted, dev.detection, rng, opts.runs);
  ProbabilityBins filtered;
  for (const auto& [key, p] : permuted.bins())
    if (dev.detection.modes.channel_total(key, 0) == 1) filtered.add({}, p);

  bool differs = std::abs(pipeline.total() - filtered.total()) > 1e-6;
  CHECK(differs);
}

#include <doctest.h>

#include <cmath>
#include <functional>

#include "fockforge/circuit.hpp"
#include "fockforge/cores.hpp"
#include "fockforge/packets.hpp"
#include "test_helpers.hpp"

using namespace fockforge;
using fockforge::testing::complex_near;

namespace {

// Adaptive Simpson quadrature for complex integrands.
Complex adaptive_simpson(const std::function<Complex(double)>& f, double a,
                         double b, double tol, int depth = 30) {
  std::function<Complex(double, double, Complex, Complex, Complex, double, int)> rec =
      [&](double lo, double hi, Complex flo, Complex fmid, Complex fhi, double eps,
          int level) -> Complex {
    const double mid = 0.5 * (lo + hi);
    const Complex fl = f(0.5 * (lo + mid));
    const Complex fr = f(0.5 * (mid + hi));
    const Complex whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    const Complex left = (mid - lo) / 6.0 * (flo + 4.0 * fl + fmid);
    const Complex right = (hi - mid) / 6.0 * (fmid + 4.0 * fr + fhi);
    if (level <= 0 || std::abs(left + right - whole) < 15 * eps)
      return left + right + (left + right - whole) / 15.0;
    return rec(lo, mid, flo, fl, fmid, eps / 2, level - 1) +
           rec(mid, hi, fmid, fr, fhi, eps / 2, level - 1);
  };
  const double m = 0.5 * (a + b);
  return rec(a, b, f(a), f(m), f(b), tol, depth);
}

// Wavepacket amplitude at time t, unnormalized functional form.
Complex wavefunction(const PacketSpec& p, double t) {
  if (p.shape == PacketShape::Gaussian) {
    const double envelope = std::exp(-(t - p.t) * (t - p.t) * p.width * p.width);
    return envelope * std::exp(Complex{0, -p.omega * (t - p.t)});
  }
  if (t < p.t) return {0, 0};
  const double envelope = std::exp(-(t - p.t) / (2.0 * p.width));
  return envelope * std::exp(Complex{0, -p.omega * (t - p.t)});
}

// Ratio-normalized overlap by quadrature: <a|b> / sqrt(<a|a><b|b>), so the
// normalization constant of the functional form cancels. Integration bounds
// track each pair's support (exponentials start at the later of the two
// characteristic times).
Complex quadrature_overlap(const PacketSpec& a, const PacketSpec& b) {
  auto inner = [&](const PacketSpec& x, const PacketSpec& y) {
    double lo, hi;
    if (x.shape == PacketShape::Gaussian) {
      const double spread = 8.0 / std::min(x.width, y.width);
      lo = std::min(x.t, y.t) - spread;
      hi = std::max(x.t, y.t) + spread;
    } else {
      lo = std::max(x.t, y.t);
      hi = lo + 80.0 * std::max(x.width, y.width);
    }
    return adaptive_simpson(
        [&](double t) { return std::conj(wavefunction(x, t)) * wavefunction(y, t); },
        lo, hi, 1e-12);
  };
  const Complex ab = inner(a, b);
  const double na = inner(a, a).real();
  const double nb = inner(b, b).real();
  return ab / std::sqrt(na * nb);
}

}  // namespace

TEST_CASE("self overlap is one for both shapes") {
  const PacketSpec g{PacketShape::Gaussian, 1.3, 2.0, 0.7, 0};
  const PacketSpec e{PacketShape::Exponential, -0.4, 1.5, 2.2, 0};
  CHECK(complex_near(packet_overlap(g, g), {1, 0}, 1e-12));
  CHECK(complex_near(packet_overlap(e, e), {1, 0}, 1e-12));
}

TEST_CASE("distant packets have vanishing overlap") {
  const PacketSpec a{PacketShape::Gaussian, 0.0, 1.0, 1.0, 0};
  const PacketSpec b{PacketShape::Gaussian, 50.0, 1.0, 1.0, 0};
  CHECK(std::abs(packet_overlap(a, b)) < 1e-10);
}

TEST_CASE("gaussian closed form matches the quadrature oracle") {
  struct Case {
    PacketSpec a, b;
  };
  const Case cases[] = {
      {{PacketShape::Gaussian, 0.0, 1.0, 1.0, 0}, {PacketShape::Gaussian, 0.8, 1.0, 1.0, 0}},
      {{PacketShape::Gaussian, 0.0, 1.0, 1.0, 0}, {PacketShape::Gaussian, 1.5, 2.5, 1.0, 0}},
      {{PacketShape::Gaussian, -0.3, 0.7, 0.5, 0}, {PacketShape::Gaussian, 0.9, 1.1, 1.4, 0}},
      {{PacketShape::Gaussian, 0.2, 3.0, 2.0, 0}, {PacketShape::Gaussian, 0.2, 1.0, 0.8, 0}},
  };
  for (const Case& c : cases) {
    const Complex closed = packet_overlap(c.a, c.b);
    const Complex oracle = quadrature_overlap(c.a, c.b);
    CHECK(std::abs(closed - oracle) < 1e-8);
  }
}

TEST_CASE("exponential closed form matches the quadrature oracle") {
  struct Case {
    PacketSpec a, b;
  };
  const Case cases[] = {
      {{PacketShape::Exponential, 0.0, 1.0, 1.0, 0}, {PacketShape::Exponential, 0.5, 1.0, 1.0, 0}},
      {{PacketShape::Exponential, 0.0, 2.0, 1.0, 0}, {PacketShape::Exponential, 0.3, 1.4, 2.0, 0}},
      {{PacketShape::Exponential, 1.0, 0.0, 0.6, 0}, {PacketShape::Exponential, 0.0, 0.0, 1.8, 0}},
  };
  for (const Case& c : cases) {
    const Complex closed = packet_overlap(c.a, c.b);
    const Complex oracle = quadrature_overlap(c.a, c.b);
    CHECK(std::abs(closed - oracle) < 1e-8);
  }
}

TEST_CASE("equal-width equal-frequency gaussian overlap has the closed dip form") {
  const double w = 1.3, omega = 0.9;
  for (double dt : {0.1, 0.5, 1.1, 2.0}) {
    const PacketSpec a{PacketShape::Gaussian, 0.0, omega, w, 0};
    const PacketSpec b{PacketShape::Gaussian, dt, omega, w, 0};
    const Complex expected =
        std::exp(-w * w * dt * dt / 2.0) * std::exp(Complex{0, omega * dt});
    CHECK(complex_near(packet_overlap(a, b), expected, 1e-12));
  }
}

TEST_CASE("mixed shapes are unsupported") {
  const PacketSpec g{PacketShape::Gaussian, 0, 1, 1, 0};
  const PacketSpec e{PacketShape::Exponential, 0, 1, 1, 0};
  CHECK_THROWS_AS(packet_overlap(g, e), ValidationError);
}

TEST_CASE("gram_schmidt of an orthonormal table is the identity") {
  const EmitterMatrix gs = gram_schmidt(Eigen::MatrixXcd::Identity(4, 4));
  CHECK((gs.coefficients - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff() <
        1e-14);
}

TEST_CASE("two-packet gram_schmidt matches the hand recursion") {
  const double g = 0.73;
  Eigen::MatrixXcd gram(2, 2);
  gram << 1.0, g, g, 1.0;
  const EmitterMatrix gs = gram_schmidt(gram);
  CHECK(std::abs(gs.coefficients(0, 0) - Complex{1, 0}) < 1e-14);
  CHECK(std::abs(gs.coefficients(1, 0) - Complex{g, 0}) < 1e-14);
  CHECK(std::abs(gs.coefficients(1, 1) - Complex{std::sqrt(1 - g * g), 0}) < 1e-14);
}

TEST_CASE("duplicate packets raise a degenerate-packet error with the index") {
  Eigen::MatrixXcd gram(3, 3);
  gram << 1.0, 0.2, 1.0,
          0.2, 1.0, 0.2,
          1.0, 0.2, 1.0;  // packet 2 equals packet 0
  try {
    gram_schmidt(gram);
    FAIL("expected DegeneratePacketError");
  } catch (const DegeneratePacketError& err) {
    CHECK(err.index() == 2);
  }
}

TEST_CASE("gram_schmidt reconstructs the overlap matrix") {
  Rng rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<PacketSpec> table;
    const int n = 2 + static_cast<int>(rng.uniform_below(4));
    for (int i = 0; i < n; ++i)
      table.push_back(PacketSpec{PacketShape::Gaussian, 2.0 * rng.uniform(),
                                 1.0 + rng.uniform(), 0.5 + rng.uniform(), 0});
    const Eigen::MatrixXcd gram = overlap_matrix(table);
    const EmitterMatrix gs = gram_schmidt(gram);
    const Eigen::MatrixXcd rebuilt = gs.coefficients * gs.coefficients.adjoint();
    CHECK((rebuilt - gram).cwiseAbs().maxCoeff() < 1e-10);
    for (int i = 0; i < n; ++i)
      CHECK(gs.coefficients.row(i).norm() == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("packet table de-duplicates exact parameter tuples") {
  PacketTable table(10.0);
  const PacketSpec p{PacketShape::Gaussian, 0.0, 1.0, 1.0, 0};
  CHECK(table.add(p) == 0);
  CHECK(table.add(p) == 0);
  PacketSpec q = p;
  q.t = 0.5;
  CHECK(table.add(q) == 1);
  PacketSpec shifted = p;
  shifted.period = 1;
  CHECK(table.add(shifted) == 2);
  CHECK(table.shifted(0, 1) == 2);
  CHECK(table.shifted(1, 1) == -1);
}

namespace {

// Two photons, one per channel in different packets, balanced splitter,
// coincidence probability through the emitter route.
double hom_coincidence(double dt, double omega, double width) {
  Circuit c(2, false, 2);
  const int p0 =
      c.packet_table().add(PacketSpec{PacketShape::Gaussian, 0.0, omega, width, 0});
  const int p1 =
      c.packet_table().add(PacketSpec{PacketShape::Gaussian, dt, omega, width, 0});
  c.beamsplitter(0, 1, 45.0, 0.0);
  c.apply_emitter();

  const ModeMap& modes = c.modes();
  State input(modes.nmodes(), 2);
  OccupationVector ket(static_cast<std::size_t>(modes.nmodes()), 0);
  ket[static_cast<std::size_t>(modes.index(0, 0, p0))] += 1;
  ket[static_cast<std::size_t>(modes.index(1, 0, p1))] += 1;
  input.add_term(1.0, ket);

  const State out = transform(input, c.transfer_matrix(), CoreKind::Direct);
  double coincidence = 0;
  for (const Term& t : out.terms())
    if (modes.channel_total(t.ket, 0) == 1 && modes.channel_total(t.ket, 1) == 1)
      coincidence += std::norm(t.amplitude);
  return coincidence;
}

}  // namespace

TEST_CASE("single packet emitter is the identity") {
  Circuit c(2, false, 1);
  c.packet_table().add(PacketSpec{PacketShape::Gaussian, 0.0, 1.0, 1.0, 0});
  const Eigen::MatrixXcd e = emitter_matrix(c);
  CHECK((e - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("hom coincidence follows (1-|g|^2)/2") {
  const double omega = 1.0, width = 1.0;
  for (double dt : {0.0, 0.4, 0.9, 1.7, 3.0}) {
    const double g2 = std::exp(-width * width * dt * dt);
    CHECK(hom_coincidence(dt, omega, width) ==
          doctest::Approx((1.0 - g2) / 2.0).epsilon(1e-9));
  }
}

TEST_CASE("orthogonal packets give four equal-amplitude outcomes") {
  // far-separated packets: fully distinguishable photons on a balanced
  // splitter populate all four packet-resolved outcomes with |amp| 1/2
  Circuit c(2, false, 2);
  c.packet_table().add(PacketSpec{PacketShape::Gaussian, 0.0, 1.0, 1.0, 0});
  c.packet_table().add(PacketSpec{PacketShape::Gaussian, 1000.0, 1.0, 1.0, 0});
  c.beamsplitter(0, 1, 45.0, 0.0);
  c.apply_emitter();

  const ModeMap& modes = c.modes();
  State input(modes.nmodes(), 2);
  OccupationVector ket(static_cast<std::size_t>(modes.nmodes()), 0);
  ket[static_cast<std::size_t>(modes.index(0, 0, 0))] = 1;
  ket[static_cast<std::size_t>(modes.index(1, 0, 1))] = 1;
  input.add_term(1.0, ket);
  const State out = transform(input, c.transfer_matrix(), CoreKind::Direct);
  REQUIRE(out.size() == 4);
  for (const Term& t : out.terms())
    CHECK(std::abs(t.amplitude) == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("emitter-extended circuits conserve probability") {
  Rng rng(77);
  for (int trial = 0; trial < 5; ++trial) {
    Circuit c(2, false, 3);
    c.packet_table().add(PacketSpec{PacketShape::Gaussian, 0.0, 1.0, 1.0, 0});
    c.packet_table().add(PacketSpec{PacketShape::Gaussian, 0.7, 1.3, 1.1, 0});
    c.packet_table().add(PacketSpec{PacketShape::Gaussian, 1.4, 0.8, 0.9, 0});
    c.beamsplitter(0, 1, 360.0 * rng.uniform(), 360.0 * rng.uniform());
    c.apply_emitter();
    CHECK_THROWS_AS(c.apply_emitter(), ValidationError);

    const ModeMap& modes = c.modes();
    State input(modes.nmodes(), 2);
    OccupationVector ket(static_cast<std::size_t>(modes.nmodes()), 0);
    ket[static_cast<std::size_t>(modes.index(0, 0, static_cast<int>(rng.uniform_below(3))))] += 1;
    ket[static_cast<std::size_t>(modes.index(1, 0, static_cast<int>(rng.uniform_below(3))))] += 1;
    input.add_term(1.0, ket);
    const State out = transform(input, c.transfer_matrix(), CoreKind::Direct);
    CHECK(out.norm2() == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("delay permutes packet labels within range") {
  Circuit c(2, false, 2, 100.0);
  c.packet_table().add(PacketSpec{PacketShape::Gaussian, 0.0, 1.0, 1.0, 0});
  c.packet_table().add(PacketSpec{PacketShape::Gaussian, 0.0, 1.0, 1.0, 1});

  const Eigen::MatrixXcd zero_delay = delay_matrix(c, 1, 0);
  CHECK((zero_delay - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-15);

  const Eigen::MatrixXcd shift = delay_matrix(c, 1, 1);
  const ModeMap& modes = c.modes();
  // packet 0 on channel 1 maps to packet 1
  CHECK(shift(modes.index(1, 0, 1), modes.index(1, 0, 0)) == Complex{1, 0});
  // channel 0 untouched
  CHECK(shift(modes.index(0, 0, 0), modes.index(0, 0, 0)) == Complex{1, 0});
  // top-period label has no target inside the window
  CHECK(shift.col(modes.index(1, 0, 1)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("delay without period-shifted copies is a capacity error") {
  Circuit c(2, false, 1, 100.0);
  c.packet_table().add(PacketSpec{PacketShape::Gaussian, 0.0, 1.0, 1.0, 0});
  CHECK_THROWS_AS(delay_matrix(c, 0, 1), ValidationError);
}

TEST_CASE("a full-period delay restores the distinguishable coincidence rate") {
  // both photons in period-0 packets; delaying one arm by a full period
  // makes them distinguishable, so the coincidence probability is 1/2
  const double period = 50.0;
  Circuit c(2, false, 2, period);
  c.packet_table().add(PacketSpec{PacketShape::Gaussian, 0.0, 1.0, 1.0, 0});
  c.packet_table().add(PacketSpec{PacketShape::Gaussian, 0.0, 1.0, 1.0, 1});
  c.delay(1, 1);
  c.beamsplitter(0, 1, 45.0, 0.0);
  c.apply_emitter();

  const ModeMap& modes = c.modes();
  State input(modes.nmodes(), 2);
  OccupationVector ket(static_cast<std::size_t>(modes.nmodes()), 0);
  ket[static_cast<std::size_t>(modes.index(0, 0, 0))] = 1;
  ket[static_cast<std::size_t>(modes.index(1, 0, 0))] = 1;
  input.add_term(1.0, ket);
  const State out = transform(input, c.transfer_matrix(), CoreKind::Direct);
  double coincidence = 0;
  for (const Term& t : out.terms())
    if (modes.channel_total(t.ket, 0) == 1 && modes.channel_total(t.ket, 1) == 1)
      coincidence += std::norm(t.amplitude);
  CHECK(coincidence == doctest::Approx(0.5).epsilon(1e-9));
}

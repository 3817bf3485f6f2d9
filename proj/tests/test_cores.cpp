#include <doctest.h>

#include <cmath>

#include "fockforge/circuit.hpp"
#include "fockforge/cores.hpp"
#include "fockforge/permanent.hpp"
#include "test_helpers.hpp"

using namespace fockforge;
using fockforge::testing::complex_near;
using fockforge::testing::naive_permanent;
using fockforge::testing::random_matrix;
using fockforge::testing::states_equal;

TEST_CASE("permanent of the identity is one") {
  for (int n : {1, 2, 5, 8})
    CHECK(complex_near(glynn_permanent(Eigen::MatrixXcd::Identity(n, n)), {1, 0}, 1e-12));
  CHECK(complex_near(glynn_permanent(Eigen::MatrixXcd(0, 0)), {1, 0}, 0));
}

TEST_CASE("permanent of the all-ones matrix is n factorial") {
  double factorial = 1;
  for (int n = 1; n <= 7; ++n) {
    factorial *= n;
    const Eigen::MatrixXcd ones = Eigen::MatrixXcd::Ones(n, n);
    CHECK(std::abs(glynn_permanent(ones) - Complex{factorial, 0}) <
          1e-10 * factorial);
  }
}

TEST_CASE("glynn matches the naive permutation sum on random matrices") {
  Rng rng(41);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 1 + static_cast<int>(rng.uniform_below(5));
    const Eigen::MatrixXcd m = random_matrix(n, rng);
    const Complex expected = naive_permanent(m);
    CHECK(std::abs(glynn_permanent(m) - expected) <=
          1e-10 * std::max(1.0, std::abs(expected)));
  }
}

TEST_CASE("permanent is invariant under row and column permutations") {
  Rng rng(42);
  const Eigen::MatrixXcd m = random_matrix(5, rng);
  const Complex reference = glynn_permanent(m);
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::VectorXi perm(5);
    std::vector<int> p{0, 1, 2, 3, 4};
    for (int i = 4; i > 0; --i) std::swap(p[i], p[rng.uniform_below(i + 1)]);
    Eigen::MatrixXcd shuffled(5, 5);
    for (int i = 0; i < 5; ++i) shuffled.row(i) = m.row(p[static_cast<std::size_t>(i)]);
    CHECK(std::abs(glynn_permanent(shuffled) - reference) < 1e-10);
    for (int i = 0; i < 5; ++i) shuffled.col(i) = m.col(p[static_cast<std::size_t>(i)]);
  }
  CHECK_THROWS_AS(glynn_permanent(Eigen::MatrixXcd::Ones(2, 3)), ValidationError);
}

namespace {

Eigen::MatrixXcd beamsplitter(double theta_deg, double phi_deg) {
  Circuit c(2);
  c.beamsplitter(0, 1, theta_deg, phi_deg);
  return c.element_product();
}

// Independent expectation for the five two-photon transitions of a
// beamsplitter, expanded from the creation-operator binomials.
State two_photon_expectation(const OccupationVector& in, double theta_deg,
                             double phi_deg) {
  const double th = deg_to_rad(theta_deg);
  const double c = std::cos(th), s = std::sin(th);
  const Complex ep = std::exp(Complex{0, deg_to_rad(phi_deg)});
  const Complex em = std::exp(Complex{0, -deg_to_rad(phi_deg)});
  const double r2 = std::sqrt(2.0);
  State out(2, 2);
  if (in == OccupationVector{1, 0}) {
    out.add_term(c, {1, 0});
    out.add_term(em * s, {0, 1});
  } else if (in == OccupationVector{0, 1}) {
    out.add_term(-ep * s, {1, 0});
    out.add_term(c, {0, 1});
  } else if (in == OccupationVector{1, 1}) {
    out.add_term(-r2 * ep * c * s, {2, 0});
    out.add_term(c * c - s * s, {1, 1});
    out.add_term(r2 * em * c * s, {0, 2});
  } else if (in == OccupationVector{2, 0}) {
    out.add_term(c * c, {2, 0});
    out.add_term(r2 * em * c * s, {1, 1});
    out.add_term(em * em * s * s, {0, 2});
  } else if (in == OccupationVector{0, 2}) {
    out.add_term(ep * ep * s * s, {2, 0});
    out.add_term(-r2 * ep * c * s, {1, 1});
    out.add_term(c * c, {0, 2});
  }
  return out;
}

}  // namespace

TEST_CASE("two-photon beamsplitter table holds for both cores") {
  const std::vector<OccupationVector> inputs{{1, 0}, {0, 1}, {1, 1}, {2, 0}, {0, 2}};
  for (double theta : {30.0, 45.0, 60.0}) {
    for (double phi : {0.0, 90.0}) {
      const Eigen::MatrixXcd u = beamsplitter(theta, phi);
      for (const OccupationVector& in : inputs) {
        const State expected = two_photon_expectation(in, theta, phi);
        State input(2, 2);
        input.add_term(1.0, in);
        CHECK(states_equal(transform(input, u, CoreKind::Direct), expected, 1e-10));
        CHECK(states_equal(transform(input, u, CoreKind::Glynn), expected, 1e-10));
      }
    }
  }
}

TEST_CASE("amplitude of |1,1> -> |1,1> is cos^2 - sin^2") {
  const Eigen::MatrixXcd u = beamsplitter(33.0, 21.0);
  const double th = deg_to_rad(33.0);
  CHECK(complex_near(transition_amplitude({1, 1}, {1, 1}, u),
                     {std::cos(th) * std::cos(th) - std::sin(th) * std::sin(th), 0},
                     1e-12));
}

TEST_CASE("amplitude through the identity vanishes off the diagonal") {
  const Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(3, 3);
  CHECK(complex_near(transition_amplitude({1, 1, 0}, {1, 0, 1}, u), {0, 0}, 1e-15));
  CHECK(complex_near(transition_amplitude({1, 1, 0}, {1, 1, 0}, u), {1, 0}, 1e-15));
}

TEST_CASE("photon-number mismatch yields zero amplitude by contract") {
  const Eigen::MatrixXcd u = beamsplitter(45.0, 0.0);
  CHECK(transition_amplitude({1, 1}, {1, 0}, u) == Complex{0, 0});
}

TEST_CASE("vacuum transforms to vacuum with amplitude one") {
  const Eigen::MatrixXcd u = beamsplitter(45.0, 0.0);
  const State out = direct_ket_transform({0, 0}, u, BasisSpec::full());
  CHECK(out.size() == 1);
  CHECK(complex_near(out.amplitude_of({0, 0}), {1, 0}, 1e-15));
}

TEST_CASE("direct and glynn cores agree on random multi-photon kets") {
  Rng rng(5);
  for (int trial = 0; trial < 8; ++trial) {
    const Eigen::MatrixXcd u = haar_unitary(6, rng.next_u64());
    OccupationVector ket(6, 0);
    int photons = 3;
    while (photons > 0) {
      ++ket[rng.uniform_below(6)];
      --photons;
    }
    State input(6, 3);
    input.add_term(1.0, ket);
    const State direct = transform(input, u, CoreKind::Direct);
    const State glynn = transform(input, u, CoreKind::Glynn);
    CHECK(states_equal(direct, glynn, 1e-10));
    // probability conservation on the full basis
    CHECK(direct.norm2() == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("basis enumeration counts and order") {
  const auto full22 = enumerate_basis(2, 2, BasisSpec::full());
  REQUIRE(full22.size() == 3);
  CHECK(full22[0] == OccupationVector{2, 0});
  CHECK(full22[1] == OccupationVector{1, 1});
  CHECK(full22[2] == OccupationVector{0, 2});

  CHECK(enumerate_basis(4, 2, BasisSpec::restricted()).size() == 6);
  CHECK(enumerate_basis(12, 6, BasisSpec::full()).size() == 12376);
  CHECK(enumerate_basis(2, 3, BasisSpec::restricted()).empty());
}

TEST_CASE("restricted output equals full output filtered to binary kets") {
  Rng rng(9);
  const Eigen::MatrixXcd u = haar_unitary(5, 123);
  State input(5, 2);
  input.add_term(1.0, {1, 1, 0, 0, 0});
  const State full = transform(input, u, CoreKind::Glynn, BasisSpec::full());
  const State restricted = transform(input, u, CoreKind::Glynn, BasisSpec::restricted());
  State filtered(5, 2);
  for (const Term& t : full.terms()) {
    bool binary = true;
    for (int n : t.ket) binary &= n <= 1;
    if (binary) filtered.add_term(t.amplitude, t.ket);
  }
  CHECK(states_equal(restricted, filtered, 1e-12));
}

TEST_CASE("user basis restricts the evaluated kets") {
  const Eigen::MatrixXcd u = beamsplitter(45.0, 0.0);
  State input(2, 2);
  input.add_term(1.0, {1, 1});
  const BasisSpec basis = BasisSpec::user({{2, 0}});
  for (CoreKind core : {CoreKind::Direct, CoreKind::Glynn}) {
    const State out = transform(input, u, core, basis);
    CHECK(out.size() == 1);
    CHECK(complex_near(out.amplitude_of({2, 0}), {-1.0 / std::sqrt(2.0), 0}, 1e-12));
  }
  CHECK_THROWS_AS(transform(input, u, CoreKind::Glynn, BasisSpec::user({{1, 0}})),
                  ValidationError);
}

TEST_CASE("transform is linear in the input state") {
  Rng rng(31);
  const Eigen::MatrixXcd u = haar_unitary(4, 77);
  State s1(4, 2), s2(4, 2);
  s1.add_term(1.0, {1, 1, 0, 0});
  s2.add_term(1.0, {0, 0, 2, 0});
  const Complex alpha{0.6, -0.2}, beta{-0.3, 0.8};
  State combined(4, 2);
  combined.add_scaled(alpha, s1);
  combined.add_scaled(beta, s2);
  State expected(4, 2);
  expected.add_scaled(alpha, transform(s1, u, CoreKind::Glynn));
  expected.add_scaled(beta, transform(s2, u, CoreKind::Glynn));
  CHECK(states_equal(transform(combined, u, CoreKind::Glynn), expected, 1e-11));
}

TEST_CASE("hom interference bunches both photons") {
  const Eigen::MatrixXcd u = beamsplitter(45.0, 0.0);
  State input(2, 2);
  input.add_term(1.0, {1, 1});
  const State out = transform(input, u, CoreKind::Direct);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(complex_near(out.amplitude_of({2, 0}), {-inv_sqrt2, 0}, 1e-12));
  CHECK(complex_near(out.amplitude_of({0, 2}), {inv_sqrt2, 0}, 1e-12));
  CHECK(std::abs(out.amplitude_of({1, 1})) < 1e-12);
}

TEST_CASE("identity circuit returns the input") {
  State input(3, 2);
  input.add_term({0.3, 0.4}, {1, 0, 1});
  input.add_term({0.5, 0.0}, {0, 2, 0});
  const State out =
      transform(input, Eigen::MatrixXcd::Identity(3, 3), CoreKind::Glynn);
  CHECK(states_equal(out, input, 1e-12));
}

TEST_CASE("nsx circuit flips the two-photon sign under post-selection") {
  // the sign-flip gate: |0>+|1>+|2> with an ancilla photon, post-selected on
  // (1, 0) in the ancilla channels, leaves amplitudes (0.5, 0.5, -0.5)
  Circuit c(3);
  c.phase_shifter(0, 180.0);
  c.beamsplitter(1, 2, 22.5, 0.0);
  c.beamsplitter(0, 1, 65.5302, 0.0);
  c.beamsplitter(1, 2, -22.5, 0.0);

  State input(3, 2);
  input.add_term(1.0, {0, 1, 0});
  input.add_term(1.0, {1, 1, 0});
  input.add_term(1.0, {2, 1, 0});

  const State out = transform(input, c.element_product(), CoreKind::Direct);
  CHECK(complex_near(out.amplitude_of({0, 1, 0}), {0.5, 0}, 1e-7));
  CHECK(complex_near(out.amplitude_of({1, 1, 0}), {0.5, 0}, 1e-7));
  CHECK(complex_near(out.amplitude_of({2, 1, 0}), {-0.5, 0}, 1e-7));
}

#include <doctest.h>

#include <cmath>

#include "fockforge/qubit_encoding.hpp"
#include "fockforge/state.hpp"
#include "test_helpers.hpp"

using namespace fockforge;
using fockforge::testing::complex_near;
using fockforge::testing::states_equal;

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

TEST_CASE("add_term builds a two-term superposition with unit norm") {
  State s(2);
  s.add_term(kInvSqrt2, {2, 0});
  s.add_term(kInvSqrt2, {1, 1});
  CHECK(s.size() == 2);
  CHECK(s.norm2() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("add_term sums amplitudes of duplicate kets") {
  State s(2);
  s.add_term(0.5, {1, 0});
  s.add_term(0.5, {1, 0});
  CHECK(s.size() == 1);
  CHECK(complex_near(s.amplitude_of({1, 0}), {1.0, 0.0}, 1e-14));
}

TEST_CASE("add_term cancellation leaves a prunable zero term") {
  State s(2);
  s.add_term({0.3, 0.4}, {1, 0});
  s.add_term({-0.3, -0.4}, {1, 0});
  CHECK(s.norm2() == doctest::Approx(0.0));
  s.prune();
  CHECK(s.empty());
}

TEST_CASE("add_term validates ket length and occupation domain") {
  State s(2);
  CHECK_THROWS_AS(s.add_term(1.0, {1, 0, 0}), ValidationError);
  CHECK_THROWS_AS(s.add_term(1.0, {-1, 0}), ValidationError);
  CHECK_THROWS_AS(s.add_term(1.0, {kDefaultMaxOccupation + 1, 0}), ValidationError);
}

TEST_CASE("normalize rescales amplitudes") {
  State s(2);
  s.add_term(-0.25, {1, 1});
  s.normalize();
  CHECK(complex_near(s.amplitude_of({1, 1}), {-1.0, 0.0}, 1e-12));

  State four(2, 1);
  four.add_term(0.5, {0, 0});
  four.add_term(0.5, {0, 1});
  four.add_term(0.5, {1, 0});
  four.add_term(-0.5, {1, 1});
  State copy = four;
  copy.normalize();
  CHECK(states_equal(copy, four, 1e-12));
}

TEST_CASE("normalize rejects the zero state") {
  State s(2);
  CHECK_THROWS_AS(s.normalize(), NumericalError);
  s.add_term(1e-20, {1, 0});
  s.prune();
  CHECK_THROWS_AS(s.normalize(), NumericalError);
}

TEST_CASE("braket of a normalized state with itself is one") {
  State s(3);
  s.add_term({0.3, 0.1}, {1, 0, 2});
  s.add_term({-0.2, 0.7}, {0, 1, 2});
  s.normalize();
  CHECK(complex_near(braket(s, s), {1.0, 0.0}, 1e-12));
}

TEST_CASE("braket of distinct basis kets vanishes") {
  State a(2), b(2);
  a.add_term(1.0, {2, 0});
  b.add_term(1.0, {1, 1});
  CHECK(complex_near(braket(a, b), {0, 0}, 1e-15));
}

TEST_CASE("braket of path-encoded Bell states is zero") {
  // expand both states over four modes and take the inner product directly
  State phi_plus(4, 1), psi_minus(4, 1);
  phi_plus.add_term(kInvSqrt2, {1, 0, 1, 0});
  phi_plus.add_term(kInvSqrt2, {0, 1, 0, 1});
  psi_minus.add_term(kInvSqrt2, {1, 0, 0, 1});
  psi_minus.add_term(-kInvSqrt2, {0, 1, 1, 0});
  CHECK(complex_near(braket(phi_plus, psi_minus), {0, 0}, 1e-15));
  // conjugate symmetry on a pair with overlap
  State c(4, 1);
  c.add_term({0.6, 0.3}, {1, 0, 0, 1});
  const Complex forward = braket(phi_plus, c);
  const Complex backward = braket(c, phi_plus);
  CHECK(complex_near(forward, std::conj(backward), 1e-14));
}

TEST_CASE("braket rejects dimension mismatch") {
  State a(2), b(3);
  a.add_term(1.0, {1, 0});
  b.add_term(1.0, {1, 0, 0});
  CHECK_THROWS_AS(braket(a, b), ValidationError);
}

TEST_CASE("de-dup is insensitive to insertion order") {
  Rng rng(7);
  std::vector<Term> terms;
  for (int i = 0; i < 12; ++i) {
    OccupationVector ket{static_cast<int>(rng.uniform_below(3)),
                         static_cast<int>(rng.uniform_below(3)),
                         static_cast<int>(rng.uniform_below(2))};
    terms.push_back(Term{Complex{rng.uniform() - 0.5, rng.uniform() - 0.5}, ket});
  }
  State forward(3);
  for (const Term& t : terms) forward.add_term(t.amplitude, t.ket);
  State backward(3);
  for (auto it = terms.rbegin(); it != terms.rend(); ++it)
    backward.add_term(it->amplitude, it->ket);
  CHECK(states_equal(forward, backward, 1e-13));
}

TEST_CASE("apply_creation carries the bosonic factor") {
  State vac(2);
  vac.add_term(1.0, {0, 0});
  State one = apply_creation(vac, 0);
  State two = apply_creation(one, 0);
  CHECK(complex_near(two.amplitude_of({2, 0}), {std::sqrt(2.0), 0.0}, 1e-14));
}

TEST_CASE("encode_qubits maps channel pairs to logical values") {
  const ModeMap modes(4, 1, 1);
  const QubitMap qmap{{{0, 1}, {2, 3}}};

  State s(4, 1);
  s.add_term(1.0, {1, 0, 1, 0});
  CHECK(states_equal(encode_qubits(as_reduced(s, modes), qmap, modes), [] {
          State e(2, 1);
          e.add_term(1.0, {1, 1});
          return e;
        }(), 1e-14));

  State zz(4, 1);
  zz.add_term(1.0, {0, 1, 0, 1});
  CHECK(states_equal(encode_qubits(as_reduced(zz, modes), qmap, modes), [] {
          State e(2, 1);
          e.add_term(1.0, {0, 0});
          return e;
        }(), 1e-14));
}

TEST_CASE("encode_qubits rejects or drops invalid kets") {
  const ModeMap modes(4, 1, 1);
  const QubitMap qmap{{{0, 1}, {2, 3}}};
  State s(4, 2);
  s.add_term(0.8, {1, 0, 1, 0});
  s.add_term(0.2, {2, 0, 0, 0});  // two photons in one rail
  const State encoded = encode_qubits(as_reduced(s, modes), qmap, modes);
  CHECK(encoded.size() == 1);
  CHECK_THROWS_AS(encode_qubits(as_reduced(s, modes), qmap, modes, /*strict=*/true),
                  ValidationError);
}

TEST_CASE("decode_qubits inverts encode_qubits and fills ancillas") {
  const ModeMap modes(8, 1, 1);
  const QubitMap qmap{{{0, 1}, {2, 3}}};

  State logical(2, 1);
  logical.add_term(1.0, {1, 1});
  const State photonic = decode_qubits(logical, qmap, {1, 0, 1, 0}, modes);
  CHECK(photonic.size() == 1);
  CHECK(complex_near(photonic.amplitude_of({1, 0, 1, 0, 1, 0, 1, 0}), {1, 0}, 1e-14));

  // four-term superposition decodes to four photonic kets
  State super(2, 1);
  super.add_term(0.5, {0, 0});
  super.add_term(0.5, {0, 1});
  super.add_term(0.5, {1, 0});
  super.add_term(0.5, {1, 1});
  CHECK(decode_qubits(super, qmap, {1, 0, 1, 0}, modes).size() == 4);
}

TEST_CASE("encode after decode is the identity on valid qubit states") {
  const ModeMap modes(6, 1, 1);
  const QubitMap qmap{{{1, 3}, {2, 4}}};
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    State logical(2, 1);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        logical.add_term(Complex{rng.uniform() - 0.5, rng.uniform() - 0.5},
                         OccupationVector{a, b});
    logical.normalize();
    const State photonic = decode_qubits(logical, qmap, {0, 0}, modes);
    ReducedState reduced = as_reduced(photonic, modes);
    CHECK(states_equal(encode_qubits(reduced, qmap, modes), logical, 1e-12));
  }
}

TEST_CASE("decode_qubits rejects non-binary entries") {
  const ModeMap modes(4, 1, 1);
  const QubitMap qmap{{{0, 1}, {2, 3}}};
  State bad(2, 2);
  bad.add_term(1.0, {2, 0});
  CHECK_THROWS_AS(decode_qubits(bad, qmap, {}, modes), ValidationError);
}

TEST_CASE("sort_terms orders lexicographically") {
  State s(2, 3);
  s.add_term(1.0, {2, 0});
  s.add_term(1.0, {0, 2});
  s.add_term(1.0, {1, 1});
  s.sort_terms();
  CHECK(s.term(0).ket == OccupationVector{0, 2});
  CHECK(s.term(1).ket == OccupationVector{1, 1});
  CHECK(s.term(2).ket == OccupationVector{2, 0});
}

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

#include "fockforge/state.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fockforge {

int total_photons(const OccupationVector& ket) {
  int total = 0;
  for (int n : ket) total += n;
  return total;
}

std::string ket_key(const OccupationVector& ket) {
  std::string key(ket.size(), '\0');
  for (std::size_t i = 0; i < ket.size(); ++i)
    key[i] = static_cast<char>(static_cast<unsigned char>(ket[i]));
  return key;
}

std::string format_ket(const OccupationVector& ket) {
  std::ostringstream out;
  out << "| ";
  for (std::size_t i = 0; i < ket.size(); ++i) {
    if (i) out << ", ";
    out << ket[i];
  }
  out << " >";
  return out.str();
}

State::State(int nmodes, int max_occupation)
    : nmodes_(nmodes), max_occupation_(max_occupation) {
  if (nmodes < 0) throw ValidationError("state: negative mode count");
}

void State::add_term(const Complex& amplitude, const OccupationVector& ket) {
  if (static_cast<int>(ket.size()) != nmodes_)
    throw ValidationError("add_term: ket length does not match mode count");
  for (int n : ket) {
    if (n < 0) throw ValidationError("add_term: negative occupation");
    if (n > max_occupation_)
      throw ValidationError("add_term: occupation exceeds per-mode cap");
  }
  const std::string key = ket_key(ket);
  auto it = index_.find(key);
  if (it != index_.end()) {
    terms_[it->second].amplitude += amplitude;
    return;
  }
  index_.emplace(std::move(key), terms_.size());
  terms_.push_back(Term{amplitude, ket});
}

void State::add_scaled(const Complex& factor, const State& other) {
  if (other.nmodes_ != nmodes_)
    throw ValidationError("add_scaled: mode count mismatch");
  for (const Term& t : other.terms_) add_term(factor * t.amplitude, t.ket);
}

Complex State::amplitude_of(const OccupationVector& ket) const {
  auto it = index_.find(ket_key(ket));
  return it == index_.end() ? Complex{0, 0} : terms_[it->second].amplitude;
}

double State::norm2() const {
  double total = 0;
  for (const Term& t : terms_) total += std::norm(t.amplitude);
  return total;
}

void State::normalize() {
  const double n2 = norm2();
  if (n2 <= 0) throw NumericalError("normalize: zero-norm state");
  const double inv = 1.0 / std::sqrt(n2);
  for (Term& t : terms_) t.amplitude *= inv;
}

void State::prune(double eps) {
  std::vector<Term> kept;
  kept.reserve(terms_.size());
  for (Term& t : terms_)
    if (std::abs(t.amplitude) >= eps) kept.push_back(std::move(t));
  terms_ = std::move(kept);
  index_.clear();
  for (std::size_t i = 0; i < terms_.size(); ++i)
    index_.emplace(ket_key(terms_[i].ket), i);
}

void State::sort_terms() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.ket < b.ket; });
  index_.clear();
  for (std::size_t i = 0; i < terms_.size(); ++i)
    index_.emplace(ket_key(terms_[i].ket), i);
}

State State::scaled(const Complex& factor) const {
  State out(nmodes_, max_occupation_);
  for (const Term& t : terms_) out.add_term(factor * t.amplitude, t.ket);
  return out;
}

Complex braket(const State& a, const State& b) {
  if (a.nmodes() != b.nmodes())
    throw ValidationError("braket: mode count mismatch");
  // iterate the smaller state
  const State& small = a.size() <= b.size() ? a : b;
  const State& large = a.size() <= b.size() ? b : a;
  const bool small_is_a = a.size() <= b.size();
  Complex result{0, 0};
  for (const Term& t : small.terms()) {
    const Complex other = large.amplitude_of(t.ket);
    if (small_is_a)
      result += std::conj(t.amplitude) * other;
    else
      result += std::conj(other) * t.amplitude;
  }
  return result;
}

State apply_creation(const State& s, int mode) {
  if (mode < 0 || mode >= s.nmodes())
    throw ValidationError("apply_creation: mode out of range");
  State out(s.nmodes(), s.max_occupation());
  for (const Term& t : s.terms()) {
    OccupationVector ket = t.ket;
    const int n = ket[static_cast<std::size_t>(mode)];
    ket[static_cast<std::size_t>(mode)] = n + 1;
    out.add_term(t.amplitude * std::sqrt(static_cast<double>(n + 1)), ket);
  }
  return out;
}

State tensor(const State& a, const State& b) {
  State out(a.nmodes() + b.nmodes(),
            std::max(a.max_occupation(), b.max_occupation()));
  for (const Term& ta : a.terms()) {
    for (const Term& tb : b.terms()) {
      OccupationVector ket = ta.ket;
      ket.insert(ket.end(), tb.ket.begin(), tb.ket.end());
      out.add_term(ta.amplitude * tb.amplitude, ket);
    }
  }
  return out;
}

}  // namespace fockforge

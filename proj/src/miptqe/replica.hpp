// Copyright 2026 The miptqe Authors
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

#ifndef MIPTQE_REPLICA_HPP_
#define MIPTQE_REPLICA_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace miptqe {

// Element of the symmetric group S(Q) as an image array.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::uint8_t> image);

  static Permutation identity(int q);
  static Permutation transposition(int q, int a, int b);
  // k blocks of size n, each cyclically shifted, plus one fixed replica:
  // the distinguished element C for Q = n*k + 1.
  static Permutation block_cyclic(int n, int k);

  int size() const { return static_cast<int>(image_.size()); }
  int operator()(int i) const { return image_[i]; }
  const std::vector<std::uint8_t>& image() const { return image_; }

  Permutation compose(const Permutation& other) const;  // (this o other)(x)
  Permutation inverse() const;
  int cycle_count() const;
  std::vector<int> cycle_lengths() const;
  bool commutes_with(const Permutation& other) const;

  bool operator==(const Permutation&) const = default;
  std::string str() const;

 private:
  std::vector<std::uint8_t> image_;
};

std::vector<Permutation> all_permutations(int q);

// Product over cycles of length l of (-1)^(l-1) * Catalan(l-1).
std::int64_t moebius(const Permutation& g);

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  bool operator==(const Rational&) const = default;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// <sigma|tau> = d^{|sigma tau^{-1}|}.
std::uint64_t replica_inner(const Permutation& sigma, const Permutation& tau, int d);

// Leading large-d Weingarten weight Moeb(g) / d^{4Q - 2|g|}, exact.
Rational weingarten_leading(const Permutation& g, int d, int q);

struct ReplicaParams {
  int q = 2;          // replica count Q
  int d = 2;          // local Hilbert dimension
  Permutation cyclic; // the distinguished element C

  static ReplicaParams block(int n, int k, int d);
  static ReplicaParams with_cyclic(Permutation c, int d);
};

enum class BondKind { reset, depolarizing, dephasing_asymptotic };

// Non-vertical bond weight with independent field strengths: the noise
// field couples to the identity direction with rate q_n, the QE field to
// the cyclic direction with rate q_e. The symmetric q_n = q_e = q/2 slice
// reproduces the equal-rate closed forms.
double bond_weight_fields(const Permutation& sigma, const Permutation& tau,
                          const ReplicaParams& params, double p, double q_n,
                          double q_e, BondKind kind);

// Equal-rate form: q_n = q_e = q/2.
double bond_weight(const Permutation& sigma, const Permutation& tau,
                   const ReplicaParams& params, double p, double q,
                   BondKind kind);

enum class DeltaInner { n_op, q_op };

// Explicit enumeration of the delta-constrained sums for the dephasing
// channel: n_op counts index assignments fixed by both sigma and tau,
// q_op those fixed by sigma C^{-1} and tau C^{-1}. Requires d^Q <= 2^20.
std::uint64_t dephasing_exact_inner(const Permutation& sigma, const Permutation& tau,
                                    const ReplicaParams& params, DeltaInner which);

struct SymmetryCheckEntry {
  std::string family;     // "centralizer", "inversion", "field_swap"
  std::string generator;  // image form of the acting element, if any
  double max_violation = 0.0;
  bool pass = false;
};

struct SymmetryReport {
  int q = 0;
  BondKind kind = BondKind::reset;
  double p = 0.0, q_n = 0.0, q_e = 0.0;
  std::vector<SymmetryCheckEntry> entries;

  bool family_passes(const std::string& family) const;
  bool all_pass() const;
};

// Exhaustive invariance check of the bond weights under (a) conjugation
// by every centralizer element of C, (b) sigma -> sigma^{-1}, and
// (c) sigma -> sigma^{-1} C (the zero-field symmetry). Q <= 5.
SymmetryReport symmetry_check(const ReplicaParams& params, BondKind kind, double p,
                              double q_n, double q_e, double tol = 1e-9);

std::vector<Permutation> centralizer(const Permutation& c);

}  // namespace miptqe

#endif  // MIPTQE_REPLICA_HPP_

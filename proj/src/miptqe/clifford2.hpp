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

#ifndef MIPTQE_CLIFFORD2_HPP_
#define MIPTQE_CLIFFORD2_HPP_

#include <cstdint>
#include <span>

#include "miptqe/rng.hpp"

namespace miptqe {

// An element of the two-qubit Clifford group modulo global phase,
// identified by its index into the canonical group table. The table is
// built once by closure over {H, P, CNOT, SWAP} on both qubits and
// deduplicated by the signed-Pauli images of X0, Z0, X1, Z1.
struct Clifford2 {
  std::uint32_t index = 0;
  bool operator==(const Clifford2&) const = default;
};

inline constexpr std::uint32_t kTwoQubitCliffordCount = 11520;

// Number of elements actually found by the closure (asserted == 11520).
std::uint32_t clifford2_count();

// Conjugation table: entry `in` (bits xa|za<<1|xb<<2|zb<<3) maps to
// out bits in the low nibble plus a sign-flip flag in bit 4.
const std::uint8_t* clifford2_lut(Clifford2 gate);

// Elementary gate opcodes composing the element, first-applied first.
enum class Clifford2Op : std::uint8_t { h0, h1, p0, p1, cx01, cx10, swap01 };
std::span<const Clifford2Op> clifford2_gate_word(Clifford2 gate);

// Signed-Pauli image of one of {X0, Z0, X1, Z1} (which = 0..3).
struct SignedPauli2 {
  std::uint8_t bits = 0;  // xa | za<<1 | xb<<2 | zb<<3
  bool negative = false;
};
SignedPauli2 clifford2_image(Clifford2 gate, int which);

// Uniform over the 11520-element group.
Clifford2 sample_two_qubit_clifford(Rng& rng);

}  // namespace miptqe

#endif  // MIPTQE_CLIFFORD2_HPP_

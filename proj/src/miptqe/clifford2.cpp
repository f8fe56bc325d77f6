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

#include "miptqe/clifford2.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <deque>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace miptqe {

namespace {

// i-exponent of the single-qubit product left*right, with Paulis encoded
// as x | z<<1 and the (1,1) code standing for Y.
constexpr int kMulPhase[4][4] = {
    /* I */ {0, 0, 0, 0},
    /* X */ {0, 0, -1, 1},
    /* Z */ {0, 1, 0, -1},
    /* Y */ {0, -1, 1, 0},
};

int pair_phase(std::uint8_t left, std::uint8_t right) {
  return kMulPhase[left & 3][right & 3] + kMulPhase[(left >> 2) & 3][(right >> 2) & 3];
}

struct Element {
  std::array<std::uint8_t, 4> img_bits{};  // images of X0, Z0, X1, Z1
  std::array<std::uint8_t, 4> img_neg{};
  std::vector<Clifford2Op> word;
};

std::uint32_t key_of(const Element& e) {
  std::uint32_t key = 0;
  for (int k = 0; k < 4; ++k) {
    key |= static_cast<std::uint32_t>(e.img_bits[k] | (e.img_neg[k] << 4)) << (5 * k);
  }
  return key;
}

void conjugate_by_op(Clifford2Op op, std::uint8_t& bits, std::uint8_t& neg) {
  unsigned xa = bits & 1, za = (bits >> 1) & 1, xb = (bits >> 2) & 1, zb = (bits >> 3) & 1;
  switch (op) {
    case Clifford2Op::h0:
      neg ^= xa & za;
      std::swap(xa, za);
      break;
    case Clifford2Op::h1:
      neg ^= xb & zb;
      std::swap(xb, zb);
      break;
    case Clifford2Op::p0:
      neg ^= xa & za;
      za ^= xa;
      break;
    case Clifford2Op::p1:
      neg ^= xb & zb;
      zb ^= xb;
      break;
    case Clifford2Op::cx01:
      neg ^= xa & zb & (xb == za ? 1u : 0u);
      xb ^= xa;
      za ^= zb;
      break;
    case Clifford2Op::cx10:
      neg ^= xb & za & (xa == zb ? 1u : 0u);
      xa ^= xb;
      zb ^= za;
      break;
    case Clifford2Op::swap01:
      std::swap(xa, xb);
      std::swap(za, zb);
      break;
  }
  bits = static_cast<std::uint8_t>(xa | (za << 1) | (xb << 2) | (zb << 3));
}

struct GroupTable {
  std::vector<Element> elements;                 // sorted by key
  std::vector<std::array<std::uint8_t, 16>> lut;  // conjugation tables

  GroupTable() {
    Element identity;
    identity.img_bits = {0b0001, 0b0010, 0b0100, 0b1000};
    std::unordered_map<std::uint32_t, std::size_t> seen;
    std::deque<Element> queue;
    std::vector<Element> found;
    seen.emplace(key_of(identity), 0);
    found.push_back(identity);
    queue.push_back(identity);
    constexpr Clifford2Op kOps[] = {
        Clifford2Op::h0,   Clifford2Op::h1,   Clifford2Op::p0,  Clifford2Op::p1,
        Clifford2Op::cx01, Clifford2Op::cx10, Clifford2Op::swap01};
    while (!queue.empty()) {
      Element cur = std::move(queue.front());
      queue.pop_front();
      for (auto op : kOps) {
        Element next = cur;
        for (int k = 0; k < 4; ++k) {
          conjugate_by_op(op, next.img_bits[k], next.img_neg[k]);
        }
        const std::uint32_t key = key_of(next);
        if (seen.emplace(key, found.size()).second) {
          next.word = cur.word;
          next.word.push_back(op);
          found.push_back(next);
          queue.push_back(found.back());
        }
      }
    }
    std::sort(found.begin(), found.end(),
              [](const Element& a, const Element& b) { return key_of(a) < key_of(b); });
    elements = std::move(found);
    build_luts();
  }

  void build_luts() {
    lut.resize(elements.size());
    for (std::size_t i = 0; i < elements.size(); ++i) {
      const Element& e = elements[i];
      lut[i][0] = 0;
      for (unsigned in = 1; in < 16; ++in) {
        std::uint8_t acc_bits = 0;
        int acc_phase = 0;
        for (int k = 0; k < 4; ++k) {
          if (!(in >> k & 1)) continue;
          acc_phase += pair_phase(acc_bits, e.img_bits[k]) + 2 * e.img_neg[k];
          acc_bits ^= e.img_bits[k];
        }
        const int y_in = ((in & 1) & (in >> 1)) + ((in >> 2 & 1) & (in >> 3));
        const int total = ((acc_phase + y_in) % 4 + 4) % 4;
        assert(total % 2 == 0);
        lut[i][in] = static_cast<std::uint8_t>(acc_bits | ((total == 2) << 4));
      }
    }
  }
};

const GroupTable& table() {
  static const GroupTable t;
  return t;
}

}  // namespace

std::uint32_t clifford2_count() {
  return static_cast<std::uint32_t>(table().elements.size());
}

const std::uint8_t* clifford2_lut(Clifford2 gate) {
  return table().lut[gate.index].data();
}

std::span<const Clifford2Op> clifford2_gate_word(Clifford2 gate) {
  return table().elements[gate.index].word;
}

SignedPauli2 clifford2_image(Clifford2 gate, int which) {
  const Element& e = table().elements[gate.index];
  return SignedPauli2{e.img_bits[which], e.img_neg[which] != 0};
}

Clifford2 sample_two_qubit_clifford(Rng& rng) {
  const auto n = clifford2_count();
  if (n != kTwoQubitCliffordCount) {
    throw std::logic_error("two-qubit Clifford closure has unexpected size");
  }
  return Clifford2{rng.bounded(n)};
}

}  // namespace miptqe

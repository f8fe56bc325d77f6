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

#ifndef MIPTQE_OBSERVABLES_HPP_
#define MIPTQE_OBSERVABLES_HPP_

#include <cstdint>
#include <string_view>
#include <vector>

#include "miptqe/region.hpp"
#include "miptqe/schedule.hpp"

namespace miptqe {

enum class ObservableKind { i3, cee_half, cee_full };

std::string_view observable_name(ObservableKind kind);

// Four equal contiguous regions: arcs of the chain, or width-L/4 column
// strips of the torus (periodic in both axes).
struct Partition4 {
  QubitRegion a, b, c, d;
};

Partition4 partition_four(const Geometry& g);

// A quadrant split of the torus, kept next to the strip convention as a
// sensitivity check; throws for chains.
Partition4 partition_four_quadrants(const Geometry& g);

// Contiguous half system: half arc of the chain, half of the strips in 2D.
QubitRegion half_region(const Geometry& g);

// Conditional-entropy observables. Both CompressedState and EnvTwinState
// expose prefix_ranks(); for either one,
//   S'(x) = |x| + rank(x complement) - rank(all system columns),
// which is S(x|A) for the compressed state and S(x|E) for the twin.
template <class State>
int conditional_entropy(const State& state, const QubitRegion& m, std::uint32_t n_sys) {
  std::vector<std::uint32_t> order;
  order.reserve(n_sys);
  for (std::uint32_t q = 0; q < n_sys; ++q) {
    if (!m.contains(q)) order.push_back(q);
  }
  const std::uint32_t mc = static_cast<std::uint32_t>(order.size());
  for (auto q : m.qubits()) order.push_back(q);
  const std::uint32_t cuts[2] = {mc, n_sys};
  const auto ranks = state.prefix_ranks(order, cuts);
  return static_cast<int>(m.size()) + static_cast<int>(ranks[0]) - static_cast<int>(ranks[1]);
}

// Conditional entropy of the contiguous half system.
template <class State>
int bipartite_cee(const State& state, const Geometry& g) {
  return conditional_entropy(state, half_region(g), g.num_sites());
}

// I3 = S'(a)+S'(b)+S'(c)-S'(ab)-S'(ac)-S'(bc)+S'(abc). The |x| terms
// cancel for equal quarters; everything reduces to seven restricted ranks
// gathered from three eliminations with nested column prefixes.
template <class State>
int conditional_i3(const State& state, const Partition4& part, std::uint32_t n_sys) {
  const auto cat = [](std::initializer_list<const QubitRegion*> regions) {
    std::vector<std::uint32_t> order;
    for (const auto* r : regions) {
      order.insert(order.end(), r->qubits().begin(), r->qubits().end());
    }
    return order;
  };
  const auto q4 = static_cast<std::uint32_t>(part.a.size());

  // order d,c,b,a: prefixes d | dc | dcb | full
  const auto o1 = cat({&part.d, &part.c, &part.b, &part.a});
  const std::uint32_t c1[4] = {q4, 2 * q4, 3 * q4, n_sys};
  const auto r1 = state.prefix_ranks(o1, c1);
  // order a,d,c,b: prefixes ad | adc
  const auto o2 = cat({&part.a, &part.d, &part.c, &part.b});
  const std::uint32_t c2[2] = {2 * q4, 3 * q4};
  const auto r2 = state.prefix_ranks(o2, c2);
  // order b,d,a,c: prefixes bd | bda
  const auto o3 = cat({&part.b, &part.d, &part.a, &part.c});
  const std::uint32_t c3[2] = {2 * q4, 3 * q4};
  const auto r3 = state.prefix_ranks(o3, c3);

  const int rank_d = static_cast<int>(r1[0]);
  const int rank_cd = static_cast<int>(r1[1]);
  const int rank_bcd = static_cast<int>(r1[2]);
  const int rank_full = static_cast<int>(r1[3]);
  const int rank_ad = static_cast<int>(r2[0]);
  const int rank_acd = static_cast<int>(r2[1]);
  const int rank_bd = static_cast<int>(r3[0]);
  const int rank_abd = static_cast<int>(r3[1]);

  return (rank_bcd + rank_acd + rank_abd) - (rank_cd + rank_bd + rank_ad) + rank_d - rank_full;
}

}  // namespace miptqe

#endif  // MIPTQE_OBSERVABLES_HPP_

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

#ifndef MIPTQE_SCHEDULE_HPP_
#define MIPTQE_SCHEDULE_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "miptqe/region.hpp"

namespace miptqe {

enum class GeometryKind { chain, square };

struct Geometry {
  GeometryKind kind = GeometryKind::chain;
  std::uint32_t length = 0;  // chain length, or side of the L x L torus

  std::uint32_t num_sites() const {
    return kind == GeometryKind::chain ? length : length * length;
  }
};

// Brickwall gate layers. Within a layer the pairs are disjoint and cover
// every site exactly once; periodic boundaries throughout. Chains get the
// two even/odd bond layers; the square lattice gets four layers applied
// in the order horizontal-even, horizontal-odd, vertical-even,
// vertical-odd.
struct LayerSchedule {
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> layers;
};

LayerSchedule build_schedule(const Geometry& g);

}  // namespace miptqe

#endif  // MIPTQE_SCHEDULE_HPP_

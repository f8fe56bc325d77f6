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

#include "miptqe/observables.hpp"

#include <stdexcept>

namespace miptqe {

std::string_view observable_name(ObservableKind kind) {
  switch (kind) {
    case ObservableKind::i3: return "i3";
    case ObservableKind::cee_half: return "cee_half";
    case ObservableKind::cee_full: return "cee_full";
  }
  return "?";
}

Partition4 partition_four(const Geometry& g) {
  const std::uint32_t n = g.num_sites();
  if (n % 4 != 0) throw std::invalid_argument("site count must be divisible by 4");
  Partition4 p;
  if (g.kind == GeometryKind::chain) {
    const std::uint32_t q = g.length / 4;
    if (g.length % 4 != 0) throw std::invalid_argument("chain length must be divisible by 4");
    p.a = QubitRegion::range(0, q);
    p.b = QubitRegion::range(q, 2 * q);
    p.c = QubitRegion::range(2 * q, 3 * q);
    p.d = QubitRegion::range(3 * q, 4 * q);
    return p;
  }
  const std::uint32_t L = g.length;
  if (L % 4 != 0) throw std::invalid_argument("square side must be divisible by 4");
  const std::uint32_t w = L / 4;
  QubitRegion* regions[4] = {&p.a, &p.b, &p.c, &p.d};
  for (std::uint32_t k = 0; k < 4; ++k) {
    std::vector<std::uint32_t> qs;
    qs.reserve(w * L);
    for (std::uint32_t r = 0; r < L; ++r) {
      for (std::uint32_t c = k * w; c < (k + 1) * w; ++c) qs.push_back(r * L + c);
    }
    *regions[k] = QubitRegion(std::move(qs));
  }
  return p;
}

Partition4 partition_four_quadrants(const Geometry& g) {
  if (g.kind != GeometryKind::square) {
    throw std::invalid_argument("quadrant partition needs a square geometry");
  }
  const std::uint32_t L = g.length;
  if (L % 2 != 0) throw std::invalid_argument("square side must be even");
  const std::uint32_t h = L / 2;
  Partition4 p;
  QubitRegion* regions[4] = {&p.a, &p.b, &p.c, &p.d};
  const std::pair<std::uint32_t, std::uint32_t> corner[4] = {{0, 0}, {0, h}, {h, h}, {h, 0}};
  for (std::uint32_t k = 0; k < 4; ++k) {
    std::vector<std::uint32_t> qs;
    qs.reserve(h * h);
    for (std::uint32_t r = corner[k].first; r < corner[k].first + h; ++r) {
      for (std::uint32_t c = corner[k].second; c < corner[k].second + h; ++c) {
        qs.push_back(r * L + c);
      }
    }
    *regions[k] = QubitRegion(std::move(qs));
  }
  return p;
}

QubitRegion half_region(const Geometry& g) {
  const std::uint32_t n = g.num_sites();
  if (n % 2 != 0) throw std::invalid_argument("site count must be even");
  if (g.kind == GeometryKind::chain) return QubitRegion::range(0, g.length / 2);
  const std::uint32_t L = g.length;
  std::vector<std::uint32_t> qs;
  qs.reserve(n / 2);
  for (std::uint32_t r = 0; r < L; ++r) {
    for (std::uint32_t c = 0; c < L / 2; ++c) qs.push_back(r * L + c);
  }
  return QubitRegion(std::move(qs));
}

}  // namespace miptqe

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

#include "miptqe/schedule.hpp"

#include <stdexcept>

namespace miptqe {

LayerSchedule build_schedule(const Geometry& g) {
  if (g.length < 2) throw std::invalid_argument("geometry needs length >= 2");
  if (g.length % 2 != 0) {
    throw std::invalid_argument("brickwall layers need an even length");
  }
  LayerSchedule s;
  const std::uint32_t L = g.length;
  if (g.kind == GeometryKind::chain) {
    auto& even = s.layers.emplace_back();
    for (std::uint32_t i = 0; i < L; i += 2) even.emplace_back(i, i + 1);
    auto& odd = s.layers.emplace_back();
    for (std::uint32_t i = 1; i < L; i += 2) odd.emplace_back(i, (i + 1) % L);
    return s;
  }
  const auto site = [L](std::uint32_t r, std::uint32_t c) { return r * L + c; };
  auto& h_even = s.layers.emplace_back();
  for (std::uint32_t r = 0; r < L; ++r) {
    for (std::uint32_t c = 0; c < L; c += 2) h_even.emplace_back(site(r, c), site(r, c + 1));
  }
  auto& h_odd = s.layers.emplace_back();
  for (std::uint32_t r = 0; r < L; ++r) {
    for (std::uint32_t c = 1; c < L; c += 2) h_odd.emplace_back(site(r, c), site(r, (c + 1) % L));
  }
  auto& v_even = s.layers.emplace_back();
  for (std::uint32_t c = 0; c < L; ++c) {
    for (std::uint32_t r = 0; r < L; r += 2) v_even.emplace_back(site(r, c), site(r + 1, c));
  }
  auto& v_odd = s.layers.emplace_back();
  for (std::uint32_t c = 0; c < L; ++c) {
    for (std::uint32_t r = 1; r < L; r += 2) v_odd.emplace_back(site(r, c), site((r + 1) % L, c));
  }
  return s;
}

}  // namespace miptqe

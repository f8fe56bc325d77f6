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

#ifndef MIPTQE_REGION_HPP_
#define MIPTQE_REGION_HPP_

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace miptqe {

// A set of qubit indices. Stored sorted and deduplicated.
class QubitRegion {
 public:
  QubitRegion() = default;
  QubitRegion(std::initializer_list<std::uint32_t> qs) : qubits_(qs) { canonicalize(); }
  explicit QubitRegion(std::vector<std::uint32_t> qs) : qubits_(std::move(qs)) { canonicalize(); }

  static QubitRegion range(std::uint32_t begin, std::uint32_t end) {
    std::vector<std::uint32_t> qs;
    qs.reserve(end > begin ? end - begin : 0);
    for (std::uint32_t q = begin; q < end; ++q) qs.push_back(q);
    return QubitRegion(std::move(qs));
  }

  static QubitRegion full(std::uint32_t n) { return range(0, n); }

  std::size_t size() const { return qubits_.size(); }
  bool empty() const { return qubits_.empty(); }
  const std::vector<std::uint32_t>& qubits() const { return qubits_; }

  bool contains(std::uint32_t q) const {
    return std::binary_search(qubits_.begin(), qubits_.end(), q);
  }

  bool valid_for(std::uint32_t n) const {
    return qubits_.empty() || qubits_.back() < n;
  }

  QubitRegion complement(std::uint32_t n) const {
    if (!valid_for(n)) throw std::invalid_argument("region exceeds qubit count");
    std::vector<std::uint32_t> qs;
    qs.reserve(n - qubits_.size());
    for (std::uint32_t q = 0; q < n; ++q) {
      if (!contains(q)) qs.push_back(q);
    }
    return QubitRegion(std::move(qs));
  }

  QubitRegion unite(const QubitRegion& other) const {
    std::vector<std::uint32_t> qs(qubits_);
    qs.insert(qs.end(), other.qubits_.begin(), other.qubits_.end());
    return QubitRegion(std::move(qs));
  }

  bool disjoint_from(const QubitRegion& other) const {
    for (auto q : other.qubits_) {
      if (contains(q)) return false;
    }
    return true;
  }

  bool operator==(const QubitRegion& other) const { return qubits_ == other.qubits_; }

 private:
  void canonicalize() {
    std::sort(qubits_.begin(), qubits_.end());
    qubits_.erase(std::unique(qubits_.begin(), qubits_.end()), qubits_.end());
  }
  std::vector<std::uint32_t> qubits_;
};

}  // namespace miptqe

#endif  // MIPTQE_REGION_HPP_

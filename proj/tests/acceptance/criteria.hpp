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

#ifndef MIPTQE_TESTS_ACCEPTANCE_CRITERIA_HPP_
#define MIPTQE_TESTS_ACCEPTANCE_CRITERIA_HPP_

#include <span>
#include <string>

namespace miptqe::acceptance {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int number;
  const char* title;
  Outcome (*run)();
};

std::span<const Criterion> criteria();

}  // namespace miptqe::acceptance

#endif  // MIPTQE_TESTS_ACCEPTANCE_CRITERIA_HPP_

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

#ifndef MIPTQE_TESTS_ACCEPTANCE_CRITERIA_IMPL_HPP_
#define MIPTQE_TESTS_ACCEPTANCE_CRITERIA_IMPL_HPP_

#include "acceptance/criteria.hpp"

namespace miptqe::acceptance {

Outcome criterion_1();
Outcome criterion_2();
Outcome criterion_3();
Outcome criterion_4();
Outcome criterion_5();
Outcome criterion_6();
Outcome criterion_7();
Outcome criterion_8();
Outcome criterion_9();
Outcome criterion_10();
Outcome criterion_11();

}  // namespace miptqe::acceptance

#endif  // MIPTQE_TESTS_ACCEPTANCE_CRITERIA_IMPL_HPP_

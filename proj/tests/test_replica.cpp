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

#include <doctest.h>

#include <map>
#include <stdexcept>

#include "miptqe/replica.hpp"

using namespace miptqe;

namespace {

// Brute-force <sigma|tau> by the double basis sum over (i, j) labels.
std::uint64_t inner_bruteforce(const Permutation& sigma, const Permutation& tau, int d) {
  const int q = sigma.size();
  std::uint64_t total = 1;
  for (int i = 0; i < 2 * q; ++i) total *= d;
  std::uint64_t count = 0;
  for (std::uint64_t word = 0; word < total; ++word) {
    std::vector<int> idx(2 * q);
    std::uint64_t rem = word;
    for (int k = 0; k < 2 * q; ++k) {
      idx[k] = static_cast<int>(rem % d);
      rem /= d;
    }
    // <sigma| = sum_j <j_{sigma(1)}..; j_1..|, |tau> = sum_i |i_{tau(1)}..; i_1..>
    bool ok = true;
    for (int l = 0; l < q && ok; ++l) ok = idx[q + sigma(l)] == idx[tau(l)];
    for (int l = 0; l < q && ok; ++l) ok = idx[q + l] == idx[l];
    if (ok) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("cycle counting") {
  CHECK(Permutation::identity(3).cycle_count() == 3);
  CHECK(Permutation::transposition(3, 0, 1).cycle_count() == 2);
  Permutation full({1, 2, 3, 0});
  CHECK(full.cycle_count() == 1);
}

TEST_CASE("inner products") {
  const auto id3 = Permutation::identity(3);
  CHECK(replica_inner(id3, id3, 2) == 8);  // d^Q, maximal at sigma = tau
  CHECK(replica_inner(Permutation::identity(2), Permutation::transposition(2, 0, 1), 2) == 2);

  SUBCASE("brute-force sum over basis states matches for all of S(3)") {
    for (const auto& s : all_permutations(3)) {
      for (const auto& t : all_permutations(3)) {
        CHECK(replica_inner(s, t, 2) == inner_bruteforce(s, t, 2));
      }
    }
  }

  SUBCASE("symmetric and left-invariant") {
    for (const auto& s : all_permutations(4)) {
      const auto t = Permutation({1, 0, 3, 2});
      const auto g = Permutation({3, 2, 0, 1});
      CHECK(replica_inner(s, t, 3) == replica_inner(t, s, 3));
      CHECK(replica_inner(g.compose(s), g.compose(t), 3) == replica_inner(s, t, 3));
    }
  }
}

TEST_CASE("moebius numbers") {
  CHECK(moebius(Permutation::identity(4)) == 1);
  CHECK(moebius(Permutation::transposition(4, 1, 2)) == -1);
  CHECK(moebius(Permutation({1, 2, 0})) == 2);  // 3-cycle -> Catalan(2)

  SUBCASE("depends only on the cycle type") {
    std::map<std::vector<int>, std::int64_t> seen;
    for (const auto& g : all_permutations(4)) {
      auto type = g.cycle_lengths();
      std::sort(type.begin(), type.end());
      const auto m = moebius(g);
      const auto it = seen.find(type);
      if (it == seen.end()) {
        seen[type] = m;
      } else {
        CHECK(it->second == m);
      }
    }
  }
}

TEST_CASE("leading Weingarten weights") {
  const auto e1 = Permutation::identity(1);
  CHECK(weingarten_leading(e1, 2, 1) == Rational{1, 4});
  const auto e2 = Permutation::identity(2);
  CHECK(weingarten_leading(e2, 2, 2) == Rational{1, 16});

  // Exact Q = 2 Weingarten values for U(d^2): Wg(e) = 1/(D^2 - 1) and
  // Wg(swap) = -1/(D (D^2-1)) with D = d^2; the leading orders are
  // 1/D^2 and -1/D^3, matching Moeb = 1 and -1.
  const auto swap2 = Permutation::transposition(2, 0, 1);
  CHECK(weingarten_leading(swap2, 2, 2) == Rational{-1, 64});

  // Q = 3: the leading coefficient of a 3-cycle is 2 (Catalan(2)).
  const auto cyc3 = Permutation({1, 2, 0});
  const auto w = weingarten_leading(cyc3, 2, 3);
  CHECK(w.num == 2);

  SUBCASE("sign alternates with the parity of Q - |g|") {
    for (const auto& g : all_permutations(4)) {
      const auto w4 = weingarten_leading(g, 2, 4);
      const int parity = (4 - g.cycle_count()) % 2;
      CHECK((w4.num < 0) == (parity == 1));
    }
  }
}

TEST_CASE("bond weights") {
  const auto params = ReplicaParams::with_cyclic(Permutation::transposition(2, 0, 1), 2);
  const auto id = Permutation::identity(2);

  // p = 1 leaves only the measurement term.
  for (const auto& s : all_permutations(2)) {
    for (const auto& t : all_permutations(2)) {
      CHECK(bond_weight(s, t, params, 1.0, 0.3, BondKind::reset) == doctest::Approx(2.0));
    }
  }

  // Worked example: Q = 2, d = 2, sigma = tau = identity, p = q = 1/2.
  CHECK(bond_weight(id, id, params, 0.5, 0.5, BondKind::reset) == doctest::Approx(2.75));

  // Noiseless limit reduces to the plain inner product for every kind.
  for (const auto kind :
       {BondKind::reset, BondKind::depolarizing, BondKind::dephasing_asymptotic}) {
    for (const auto& s : all_permutations(2)) {
      for (const auto& t : all_permutations(2)) {
        CHECK(bond_weight(s, t, params, 0.0, 0.0, kind) ==
              doctest::Approx(static_cast<double>(replica_inner(s, t, 2))));
      }
    }
  }

  SUBCASE("pure two-field form at p = 0, q = 1 is tau-independent") {
    const auto params3 = ReplicaParams::block(2, 1, 2);  // Q = 3
    for (const auto& s : all_permutations(3)) {
      const double expect =
          0.5 * (static_cast<double>(replica_inner(s, params3.cyclic, 2)) +
                 static_cast<double>(replica_inner(s, Permutation::identity(3), 2)));
      for (const auto& t : all_permutations(3)) {
        CHECK(bond_weight(s, t, params3, 0.0, 1.0, BondKind::reset) ==
              doctest::Approx(expect));
      }
    }
  }
}

TEST_CASE("dephasing delta-sum identities") {
  // <sigma|N|I> = d^{|sigma|} and <sigma|Q|C> = d^{|sigma C^-1|},
  // exhaustively for Q <= 4 at d = 2.
  for (int q = 2; q <= 4; ++q) {
    const auto params = ReplicaParams::block(q - 1, 1, 2);
    const auto id = Permutation::identity(q);
    for (const auto& s : all_permutations(q)) {
      CHECK(dephasing_exact_inner(s, id, params, DeltaInner::n_op) ==
            static_cast<std::uint64_t>(1) << s.cycle_count());
      CHECK(dephasing_exact_inner(s, params.cyclic, params, DeltaInner::q_op) ==
            replica_inner(s, params.cyclic, 2));
    }
  }

  SUBCASE("hermitian-symmetric diagonal") {
    const auto params = ReplicaParams::block(2, 1, 2);
    for (const auto& s : all_permutations(3)) {
      const auto id = Permutation::identity(3);
      CHECK(dephasing_exact_inner(s, id, params, DeltaInner::n_op) ==
            dephasing_exact_inner(id, s, params, DeltaInner::n_op));
      CHECK(dephasing_exact_inner(s, s, params, DeltaInner::n_op) ==
            dephasing_exact_inner(s, id, params, DeltaInner::n_op));
    }
  }

  SUBCASE("off-diagonal suppression by at least 1/d") {
    const auto params = ReplicaParams::block(2, 1, 2);
    for (const auto& s : all_permutations(3)) {
      const auto diag = dephasing_exact_inner(
          s, Permutation::identity(3), params, DeltaInner::n_op);
      for (const auto& t : all_permutations(3)) {
        const auto off = dephasing_exact_inner(s, t, params, DeltaInner::n_op);
        // Equality happens exactly when tau preserves sigma's cycle
        // partition; otherwise the sum is smaller by at least 1/d.
        if (off != diag) CHECK(off * 2 <= diag);
      }
    }
  }

  CHECK_THROWS_AS(
      dephasing_exact_inner(Permutation::identity(4), Permutation::identity(4),
                            ReplicaParams::with_cyclic(Permutation::identity(4), 64),
                            DeltaInner::n_op),
      std::invalid_argument);
}

TEST_CASE("symmetry families of the bond weights") {
  for (int q = 2; q <= 3; ++q) {
    const Permutation c = q == 2 ? Permutation::transposition(2, 0, 1)
                                 : Permutation::block_cyclic(2, 1);
    const auto params = ReplicaParams::with_cyclic(c, 2);
    for (const auto kind :
         {BondKind::reset, BondKind::depolarizing, BondKind::dephasing_asymptotic}) {
      const auto equal = symmetry_check(params, kind, 0.3, 0.1, 0.1);
      CHECK(equal.family_passes("centralizer"));
      CHECK(equal.family_passes("inversion"));
      CHECK(equal.family_passes("field_swap"));

      const auto unequal = symmetry_check(params, kind, 0.3, 0.14, 0.06);
      CHECK(unequal.family_passes("centralizer"));
      CHECK(unequal.family_passes("inversion"));
      CHECK(!unequal.family_passes("field_swap"));
    }
  }

  SUBCASE("identity element always passes") {
    const auto params = ReplicaParams::with_cyclic(Permutation::transposition(2, 0, 1), 2);
    const auto rep = symmetry_check(params, BondKind::reset, 0.2, 0.2, 0.05);
    bool found_identity = false;
    for (const auto& e : rep.entries) {
      if (e.family == "centralizer" && e.generator == Permutation::identity(2).str()) {
        found_identity = true;
        CHECK(e.pass);
      }
    }
    CHECK(found_identity);
  }

  SUBCASE("explicit counterexample pair under unequal fields") {
    const auto params = ReplicaParams::with_cyclic(Permutation::transposition(2, 0, 1), 2);
    const auto id = Permutation::identity(2);
    const double w1 = bond_weight_fields(id, id, params, 0.3, 0.14, 0.06, BondKind::reset);
    const double w2 = bond_weight_fields(id.inverse().compose(params.cyclic),
                                         id.inverse().compose(params.cyclic), params, 0.3,
                                         0.14, 0.06, BondKind::reset);
    CHECK(std::abs(w1 - w2) > 1e-9);
  }
}

TEST_CASE("centralizer enumeration") {
  const auto c = Permutation::block_cyclic(2, 1);  // (01)(2) in S(3)
  const auto cz = centralizer(c);
  CHECK(cz.size() == 2);  // {e, (01)}
  for (const auto& g : cz) CHECK(g.compose(c) == c.compose(g));
}

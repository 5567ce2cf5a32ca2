#include <catch2/catch_amalgamated.hpp>

#include "monotest/metrics.hpp"
#include "monotest/rng.hpp"
#include "monotest/truth_table.hpp"
#include "oracles.hpp"

using namespace monotest;

TEST_CASE("distance to monotonicity") {
  SECTION("named values") {
    CHECK(distance_to_monotonicity(constant(3, true)) == 0);
    CHECK(distance_to_monotonicity(constant(3, false)) == 0);
    CHECK(distance_to_monotonicity(anti_majority(2)) == Rational(1, 4));
    CHECK(distance_to_monotonicity(anti_dictator(3, 0)) == Rational(1, 2));
  }
  SECTION("never exceeds one half") {
    Rng rng(5);
    for (int t = 0; t < 200; ++t) {
      const auto f = random_function(6, rng.next_u64());
      CHECK(distance_to_monotonicity(f) <= Rational(1, 2));
    }
  }
  SECTION("min-cut agrees with monotone enumeration on random n=4 functions") {
    const auto monotone4 = testoracle::monotone_tables_bits(4);
    Rng rng(17);
    for (int t = 0; t < 1500; ++t) {
      const auto f = table_from_bits(4, rng.uniform_below(65536));
      CHECK(distance_changes(f) == testoracle::min_hamming_by_enumeration(f, monotone4));
    }
  }
  SECTION("min-cut agrees with monotone enumeration on random n=5 functions") {
    const auto monotone5 = testoracle::monotone_tables_bits(5);
    Rng rng(18);
    for (int t = 0; t < 100; ++t) {
      const auto f = random_function(5, rng.next_u64());
      CHECK(distance_changes(f) == testoracle::min_hamming_by_enumeration(f, monotone5));
    }
  }
}

TEST_CASE("violated edges and influences") {
  SECTION("monotone functions have none") {
    CHECK(violated_edges(dictator(4, 2)).edges.empty());
    CHECK(violated_edges(majority(3)).edges.empty());
  }
  SECTION("anti-majority(2)") {
    const auto ve = violated_edges(anti_majority(2));
    REQUIRE(ve.edges.size() == 2);
    CHECK(ve.edges[0] == EdgePair{0b01, 0b11});
    CHECK(ve.edges[1] == EdgePair{0b10, 0b11});
    CHECK(ve.phi_plus == 1);
  }
  SECTION("anti-dictator(3,0)") {
    const auto ve = violated_edges(anti_dictator(3, 0));
    CHECK(ve.edges.size() == 4);
    CHECK(ve.phi_plus == 1);
  }
  SECTION("per-dimension counts sum to the total") {
    Rng rng(3);
    for (int t = 0; t < 50; ++t) {
      const auto f = random_function(6, rng.next_u64());
      const auto per_dim = violated_edges_per_dimension(f);
      std::int64_t sum = 0;
      for (auto c : per_dim) sum += c;
      CHECK(sum == static_cast<std::int64_t>(violated_edges(f).edges.size()));
    }
  }
  SECTION("average sensitivity") {
    CHECK(average_sensitivity(dictator(5, 3)) == 1);
    CHECK(average_sensitivity(majority(3)) == Rational(3, 2));
    CHECK(average_sensitivity(constant(4, true)) == 0);
  }
  SECTION("violation influence never exceeds average sensitivity, exhaustively at n=4") {
    for (std::uint64_t bits = 0; bits < 65536; ++bits) {
      const auto f = table_from_bits(4, bits);
      REQUIRE(violated_edges(f).phi_plus <= average_sensitivity(f));
    }
  }
}

TEST_CASE("violation graph") {
  SECTION("submask enumeration equals the quadratic scan") {
    Rng rng(23);
    for (int n : {3, 5, 7}) {
      for (int t = 0; t < 30; ++t) {
        const auto f = random_function(n, rng.next_u64());
        auto got = build_violation_graph(f).pairs;
        auto want = testoracle::violating_pairs_quadratic(f);
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        CHECK(got == want);
      }
    }
  }
}

TEST_CASE("gamma plus") {
  SECTION("monotone functions have empty matchings") {
    const auto params = make_params(4, 0.5, 0.5);
    CHECK(gamma_plus(dictator(4, 0), params).value == 0);
  }
  SECTION("anti-majority(2): the two violated edges share a vertex") {
    const auto params = make_params(2, 0.25, 0.5);
    const auto gp = gamma_plus(anti_majority(2), params);
    CHECK(gp.matching.size() == 1);
    CHECK(gp.value == Rational(1, 4));
  }
  SECTION("anti-dictator(3,0): four disjoint violated edges") {
    const auto params = make_params(3, 0.5, 0.5);
    const auto gp = gamma_plus(anti_dictator(3, 0), params);
    CHECK(gp.matching.size() == 4);
    CHECK(gp.value == Rational(1, 2));
  }
  SECTION("a matching of violated edges is a set of violated edges") {
    Rng rng(29);
    for (int t = 0; t < 100; ++t) {
      const auto f = random_function(5, rng.next_u64());
      const auto eps = distance_to_monotonicity(f);
      if (eps == 0) continue;
      const auto params = make_params(5, to_double(eps), 0.5);
      const auto gp = gamma_plus(f, params);
      const auto ve = violated_edges(f);
      // Gamma+ 2^n <= Phi+ 2^(n-1)
      CHECK(gp.matching.size() <= ve.edges.size());
      std::vector<bool> used(f.size(), false);
      for (const auto& [x, y] : gp.matching) {
        CHECK(f.get(x));
        CHECK(!f.get(y));
        CHECK(std::popcount(x ^ y) == 1);
        CHECK(!used[x]);
        CHECK(!used[y]);
        used[x] = used[y] = true;
      }
    }
  }
}

TEST_CASE("greedy maximal violation matching") {
  SECTION("monotone gives empty") {
    Rng rng(31);
    CHECK(greedy_maximal_violation_matching(dictator(4, 1), rng).pairs.empty());
  }
  SECTION("anti-majority(2) reaches the guaranteed size") {
    Rng rng(37);
    const auto m = greedy_maximal_violation_matching(anti_majority(2), rng);
    CHECK(m.size() == 1);
    // |M| >= eps 2^(n-1) = (1/4) * 2
    CHECK(Rational(m.size()) >= distance_to_monotonicity(anti_majority(2)) * 2);
  }
  SECTION("maximal-matching lower bound over random functions and seeds") {
    Rng rng(41);
    for (int t = 0; t < 400; ++t) {
      const auto f = table_from_bits(4, rng.uniform_below(65536));
      const Rational eps = distance_to_monotonicity(f);
      for (std::uint64_t seed = 0; seed < 3; ++seed) {
        Rng mrng(derive_seed(900 + t, seed));
        const auto m = greedy_maximal_violation_matching(f, mrng);
        REQUIRE(Rational(m.size()) >= eps * (1 << 3));
        validate_matching(f, m);
      }
    }
  }
  SECTION("maximality: no violating pair remains between unmatched points") {
    Rng rng(43);
    for (int t = 0; t < 50; ++t) {
      const auto f = random_function(5, rng.next_u64());
      Rng mrng(derive_seed(1000, static_cast<std::uint64_t>(t)));
      const auto m = greedy_maximal_violation_matching(f, mrng);
      std::vector<bool> used(f.size(), false);
      for (const auto& [x, y] : m.pairs) used[x] = used[y] = true;
      for (const auto& [x, y] : testoracle::violating_pairs_quadratic(f)) {
        CHECK((used[x] || used[y]));
      }
    }
  }
}

TEST_CASE("minimum-length maximum matching") {
  SECTION("single violating pair at n=1") {
    TruthTable f(1);
    f.set(0u, true);  // f(0)=1, f(1)=0
    const auto m = min_length_max_matching(f);
    REQUIRE(m.size() == 1);
    CHECK(m.pairs[0] == EdgePair{0, 1});
    CHECK(m.avg_length == 1);
  }
  SECTION("anti-dictator(2,0) pairs both dimension-0 edges") {
    const auto m = min_length_max_matching(anti_dictator(2, 0));
    REQUIRE(m.size() == 2);
    CHECK(m.avg_length == 1);
    CHECK(m.total_length == 2);
    CHECK(m.per_dimension[0] == 2);
    CHECK(m.per_dimension[1] == 0);
  }
  SECTION("per-dimension counts sum to the total length") {
    Rng rng(47);
    for (int t = 0; t < 60; ++t) {
      const auto f = random_function(6, rng.next_u64());
      const auto m = min_length_max_matching(f);
      std::int64_t sum = 0;
      for (auto c : m.per_dimension) sum += c;
      CHECK(sum == m.total_length);
      validate_matching(f, m);
    }
  }
  SECTION("cardinality and cost agree with the bitmask-DP brute force at n=4") {
    Rng rng(53);
    for (int t = 0; t < 250; ++t) {
      const auto f = table_from_bits(4, rng.uniform_below(65536));
      const auto m = min_length_max_matching(f);
      const auto [size, cost] = testoracle::min_length_matching_brute(f);
      REQUIRE(m.size() == size);
      REQUIRE(m.total_length == cost);
    }
  }
  SECTION("anti-majority(4): maximum cardinality with minimal length") {
    const auto f = anti_majority(4);
    const auto m = min_length_max_matching(f);
    const auto [size, cost] = testoracle::min_length_matching_brute(f);
    CHECK(m.size() == size);
    CHECK(m.total_length == cost);
  }
}

TEST_CASE("metrics report") {
  const auto rep = compute_metrics(anti_majority(2));
  CHECK(rep.eps_f == Rational(1, 4));
  CHECK(rep.phi_plus == 1);
  CHECK(rep.gamma_plus == Rational(1, 4));
  CHECK(rep.avg_sensitivity == 1);
  REQUIRE(rep.r.has_value());
  const auto j = to_json(rep);
  CHECK(j["eps_f"]["fraction"] == "1/4");
  CHECK(j["phi_plus"]["value"] == 1.0);
  CHECK(j.contains("r"));
}

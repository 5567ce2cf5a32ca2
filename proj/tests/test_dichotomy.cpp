#include <catch2/catch_amalgamated.hpp>

#include "monotest/dichotomy.hpp"
#include "monotest/metrics.hpp"
#include "monotest/rng.hpp"
#include "monotest/truth_table.hpp"
#include "oracles.hpp"

using namespace monotest;

TEST_CASE("product inequality") {
  SECTION("monotone functions pass vacuously") {
    const auto rep = verify_dichotomy(dictator(4, 1));
    CHECK(rep.eps_f == 0);
    CHECK(rep.pass);
    CHECK(rep.piece3_pass);
    CHECK(rep.piece4_pass);
    CHECK(rep.per_dim_pass);
  }
  SECTION("anti-majority(2) numbers") {
    const auto rep = verify_dichotomy(anti_majority(2));
    CHECK(rep.eps_f == Rational(1, 4));
    CHECK(rep.phi_plus == 1);
    CHECK(rep.gamma_plus == Rational(1, 4));
    CHECK(rep.product == Rational(1, 4));
    CHECK(rep.bound == Rational(1, 512));
    CHECK(rep.pass);
    CHECK(rep.piece3_pass);
    CHECK(rep.piece4_pass);
  }
  SECTION("exhaustive at n=3") {
    for (std::uint64_t bits = 0; bits < 256; ++bits) {
      const auto rep = verify_dichotomy(table_from_bits(3, bits));
      REQUIRE(rep.pass);
      REQUIRE(rep.piece3_pass);
      REQUIRE(rep.piece4_pass);
      REQUIRE(rep.per_dim_pass);
    }
  }
  SECTION("json rendering") {
    const auto j = to_json(verify_dichotomy(anti_majority(2)));
    CHECK(j["pass"] == true);
    CHECK(j["bound"]["fraction"] == "1/512");
  }
}

TEST_CASE("per-dimension bound") {
  SECTION("anti-dictator(2,0)") {
    const auto rep = per_dimension_check(anti_dictator(2, 0));
    REQUIRE(rep.m_i.size() == 2);
    CHECK(rep.violated_count[0] == 2);
    CHECK(rep.m_i[0] == 2);
    CHECK(rep.m_i[1] == 0);
    CHECK(rep.all_pass);
  }
  SECTION("monotone functions are all zero") {
    const auto rep = per_dimension_check(majority(3));
    for (std::size_t i = 0; i < rep.pass.size(); ++i) {
      CHECK(rep.violated_count[i] == 0);
      CHECK(rep.m_i[i] == 0);
    }
    CHECK(rep.all_pass);
  }
  SECTION("random functions at n in {5,6}") {
    Rng rng(61);
    for (int n : {5, 6}) {
      for (int t = 0; t < 60; ++t) {
        const auto f = random_function(n, rng.next_u64());
        CHECK(per_dimension_check(f).all_pass);
      }
    }
  }
}

TEST_CASE("vertex-disjoint routing") {
  SECTION("two single-edge pairs at n=3") {
    RoutingInstance inst{3, 1, 2, {0b001, 0b010}, {0b011, 0b110}};
    const auto res = lehman_ron_route(inst);
    REQUIRE(res.success);
    CHECK(res.flow_value == 2);
    CHECK(verify_disjoint_paths(inst, res.paths));
    CHECK(testoracle::disjoint_paths_exist_brute(inst));
  }
  SECTION("crossing pairing still routes disjointly at n=3") {
    RoutingInstance inst{3, 1, 2, {0b001, 0b010}, {0b101, 0b011}};
    const auto res = lehman_ron_route(inst);
    REQUIRE(res.success);
    CHECK(verify_disjoint_paths(inst, res.paths));
    CHECK(testoracle::disjoint_paths_exist_brute(inst));
  }
  SECTION("multi-level routing agrees with brute force on random instances") {
    Rng rng(67);
    int solved = 0;
    for (int t = 0; t < 300; ++t) {
      const int n = 4 + static_cast<int>(rng.uniform_below(2));  // 4 or 5
      const int lo = 1, hi = n - 1;
      // build a random consistent pairing
      std::vector<std::uint32_t> lower, upper;
      for (std::uint32_t m = 0; m < (1u << n); ++m) {
        if (std::popcount(m) == lo) lower.push_back(m);
        if (std::popcount(m) == hi) upper.push_back(m);
      }
      rng.shuffle(lower);
      rng.shuffle(upper);
      RoutingInstance inst{n, lo, hi, {}, {}};
      for (std::size_t k = 0; k < lower.size() && inst.sources.size() < 3; ++k) {
        for (std::size_t j = 0; j < upper.size(); ++j) {
          if (dominated_by(lower[k], upper[j]) &&
              std::find(inst.sinks.begin(), inst.sinks.end(), upper[j]) == inst.sinks.end()) {
            inst.sources.push_back(lower[k]);
            inst.sinks.push_back(upper[j]);
            break;
          }
        }
      }
      if (inst.sources.empty()) continue;
      const auto res = lehman_ron_route(inst);
      REQUIRE(res.success);  // guaranteed by the routing theorem
      REQUIRE(verify_disjoint_paths(inst, res.paths));
      CHECK(testoracle::disjoint_paths_exist_brute(inst));
      ++solved;
    }
    CHECK(solved > 200);
  }
  SECTION("malformed instances throw") {
    CHECK_THROWS_AS(lehman_ron_route(RoutingInstance{3, 1, 2, {0b011}, {0b011}}),
                    std::invalid_argument);  // source off layer
    CHECK_THROWS_AS(lehman_ron_route(RoutingInstance{3, 1, 2, {0b001}, {0b110}}),
                    std::invalid_argument);  // incomparable pairing
    CHECK_THROWS_AS(lehman_ron_route(RoutingInstance{3, 1, 2, {0b001, 0b001}, {0b011, 0b101}}),
                    std::invalid_argument);  // duplicate source
    CHECK_THROWS_AS(lehman_ron_route(RoutingInstance{3, 2, 1, {0b011}, {0b001}}),
                    std::invalid_argument);  // inverted layers
  }
  SECTION("the path verifier rejects corrupted path sets") {
    RoutingInstance inst{3, 1, 2, {0b001, 0b010}, {0b011, 0b110}};
    const auto res = lehman_ron_route(inst);
    REQUIRE(res.success);
    auto broken = res.paths;
    broken[0][1] = broken[1][1];  // force a shared vertex
    CHECK_FALSE(verify_disjoint_paths(inst, broken));
    auto short_set = res.paths;
    short_set.pop_back();
    CHECK_FALSE(verify_disjoint_paths(inst, short_set));
  }
}

TEST_CASE("violated-edge matching extraction") {
  SECTION("anti-dictator(2,0): both edges survive extraction") {
    const auto f = anti_dictator(2, 0);
    const auto m = min_length_max_matching(f);
    REQUIRE(m.size() == 2);
    const auto ex = extract_violated_edge_matching(f, m);
    CHECK(ex.routing_all_ok);
    CHECK(ex.paths_verified);
    CHECK(ex.edges_verified);
    CHECK(ex.multiset_size == 2);
    CHECK(ex.edge_matching.size() == 2);
    CHECK(ex.bound_holds);  // 2 >= 2/16
  }
  SECTION("monotone input gives the empty result") {
    const auto f = dictator(3, 1);
    const auto ex = extract_violated_edge_matching(f, min_length_max_matching(f));
    CHECK(ex.edge_matching.size() == 0);
    CHECK(ex.multiset_size == 0);
    CHECK(ex.bound_holds);
  }
  SECTION("anti-majority(6) full pipeline") {
    const auto f = anti_majority(6);
    const auto m = min_length_max_matching(f);
    REQUIRE(m.size() > 0);
    const auto ex = extract_violated_edge_matching(f, m);
    CHECK(ex.routing_all_ok);
    CHECK(ex.paths_verified);
    CHECK(ex.edges_verified);
    CHECK(ex.bound_holds);
    // every extracted edge is violated, disjoint, and in the middle layers
    const auto params = make_params(6, to_double(distance_to_monotonicity(f)), 0.5);
    std::vector<bool> used(f.size(), false);
    for (const auto& [x, y] : ex.edge_matching.pairs) {
      CHECK(f.get(x));
      CHECK(!f.get(y));
      CHECK(std::popcount(x ^ y) == 1);
      CHECK(params.in_middle(std::popcount(x)));
      CHECK(params.in_middle(std::popcount(y)));
      CHECK(!used[x]);
      CHECK(!used[y]);
      used[x] = used[y] = true;
    }
  }
  SECTION("random far functions keep the certificate") {
    Rng rng(71);
    for (int t = 0; t < 80; ++t) {
      const auto f = random_function(6, rng.next_u64());
      if (distance_to_monotonicity(f) == 0) continue;
      const auto m = min_length_max_matching(f);
      const auto ex = extract_violated_edge_matching(f, m);
      REQUIRE(ex.routing_all_ok);
      REQUIRE(ex.paths_verified);
      REQUIRE(ex.edges_verified);
      REQUIRE(ex.bound_holds);
    }
  }
}

TEST_CASE("crossing-pair diagnostic") {
  SECTION("aligned matchings have no crossings") {
    CHECK(count_crossing_pairs(min_length_max_matching(anti_dictator(3, 0))) == 0);
  }
  SECTION("a fabricated crossing is detected") {
    // intervals [0,3] and [1,4] strictly cross and share the middle
    // point 0110
    const auto m = make_matching(4, {{0b0000, 0b0111}, {0b0010, 0b1111}});
    CHECK(count_crossing_pairs(m) == 1);
  }
  SECTION("interval crossings without a shared middle point do not count") {
    // [0,2] and [1,3] cross as intervals but admit no common strict
    // middle vertex
    const auto m = make_matching(3, {{0b000, 0b011}, {0b001, 0b111}});
    CHECK(count_crossing_pairs(m) == 0);
  }
  SECTION("nested intervals never cross") {
    const auto m = make_matching(4, {{0b0000, 0b1111}, {0b0001, 0b0011}});
    CHECK(count_crossing_pairs(m) == 0);
  }
}

TEST_CASE("alternating sequences") {
  SECTION("anti-dictator(2,0), dimension 0") {
    const auto f = anti_dictator(2, 0);
    const auto m = min_length_max_matching(f);
    const auto rep = alternating_sequences(f, m, 0);
    CHECK(rep.m_i == 2);
    REQUIRE(rep.sequences.size() == 4);  // both endpoints of both pairs
    for (const auto& seq : rep.sequences) {
      CHECK(seq.steps.size() == 2);
      CHECK(seq.terminal == AlternatingSequence::Terminal::ReachedX);
      CHECK(seq.has_violated_h_edge);
    }
    CHECK(rep.distinct_violated_h_edges == 2);
    CHECK(rep.all_contain_violated);
    CHECK(rep.count_ok);
  }
  SECTION("anti-dictator(3,0), dimension 0: four violated H-edges") {
    const auto f = anti_dictator(3, 0);
    const auto m = min_length_max_matching(f);
    REQUIRE(m.size() == 4);
    const auto rep = alternating_sequences(f, m, 0);
    CHECK(rep.m_i == 4);
    CHECK(rep.sequences.size() == 8);
    CHECK(rep.distinct_violated_h_edges == 4);
    CHECK(rep.all_contain_violated);
    CHECK(rep.count_ok);
  }
  SECTION("monotone: vacuous") {
    const auto f = dictator(3, 0);
    const auto rep = alternating_sequences(f, min_length_max_matching(f), 1);
    CHECK(rep.sequences.empty());
    CHECK(rep.count_ok);
  }
  SECTION("non-maximum matchings are rejected") {
    const auto f = anti_dictator(2, 0);
    auto m = min_length_max_matching(f);
    m.pairs.pop_back();
    const auto trimmed = make_matching(2, m.pairs);
    CHECK_THROWS_AS(alternating_sequences(f, trimmed, 0), std::invalid_argument);
  }
  SECTION("invalid pairs are rejected") {
    const auto f = anti_dictator(2, 0);
    const auto bogus = make_matching(2, {{0b01, 0b11}});  // f(01)=0: not a violation
    CHECK_THROWS_AS(alternating_sequences(f, bogus, 0), std::invalid_argument);
  }
  SECTION("random functions: every sequence carries a violated H-edge") {
    Rng rng(73);
    for (int t = 0; t < 60; ++t) {
      const auto f = random_function(5, rng.next_u64());
      if (distance_to_monotonicity(f) == 0) continue;
      const auto m = min_length_max_matching(f);
      for (int dim = 0; dim < 5; ++dim) {
        if (m.per_dimension[static_cast<std::size_t>(dim)] == 0) continue;
        const auto rep = alternating_sequences(f, m, dim);
        REQUIRE(rep.all_contain_violated);
        REQUIRE(rep.count_ok);
        for (const auto& seq : rep.sequences)
          CHECK(seq.terminal != AlternatingSequence::Terminal::CycleGuard);
      }
    }
  }
}

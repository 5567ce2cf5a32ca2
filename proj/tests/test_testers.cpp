#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "monotest/metrics.hpp"
#include "monotest/oracle.hpp"
#include "monotest/stats.hpp"
#include "monotest/testers.hpp"
#include "monotest/truth_table.hpp"
#include "oracles.hpp"

using namespace monotest;

namespace {

QueryOracle oracle_of(TruthTable f, bool log = false) {
  return QueryOracle(std::move(f), log);
}

bool witness_is_violation(const TruthTable& f, const Verdict& v) {
  if (!v.witness) return false;
  const auto& w = *v.witness;
  return precedes(w.x, w.y) && f.get(w.x.bits) && !f.get(w.y.bits);
}

}  // namespace

TEST_CASE("edge tester") {
  SECTION("never rejects monotone functions") {
    for (std::uint64_t bits : testoracle::monotone_tables_bits(4)) {
      const auto f = table_from_bits(4, bits);
      auto oracle = oracle_of(f);
      Rng rng(derive_seed(1, bits));
      for (int t = 0; t < 100; ++t) CHECK_FALSE(edge_test_once(oracle, rng).rejected);
    }
  }
  SECTION("never rejects constants") {
    auto oracle = oracle_of(constant(6, true));
    Rng rng(2);
    for (int t = 0; t < 1000; ++t) CHECK_FALSE(edge_test_once(oracle, rng).rejected);
  }
  SECTION("uses exactly two queries per draw") {
    const auto f = random_function(5, 3);
    auto oracle = oracle_of(f);
    Rng rng(4);
    for (int t = 0; t < 100; ++t) CHECK(edge_test_once(oracle, rng).queries_used == 2);
    CHECK(oracle.query_count() == 200);
  }
  SECTION("rejection rate of anti-dictator(3,0) is exactly one third") {
    const auto f = anti_dictator(3, 0);
    auto oracle = oracle_of(f);
    Rng rng(20250810);
    const std::uint64_t draws = 100000;
    std::uint64_t rejections = 0;
    for (std::uint64_t t = 0; t < draws; ++t) {
      const auto v = edge_test_once(oracle, rng);
      if (v.rejected) {
        ++rejections;
        CHECK(witness_is_violation(f, v));
      }
    }
    const double freq = static_cast<double>(rejections) / static_cast<double>(draws);
    CHECK(within_4se(freq, 1.0 / 3.0, draws));
  }
  SECTION("witnesses of random functions re-verify") {
    Rng seeds(7);
    for (int t = 0; t < 40; ++t) {
      const auto f = random_function(6, seeds.next_u64());
      auto oracle = oracle_of(f);
      Rng rng(seeds.next_u64());
      for (int d = 0; d < 200; ++d) {
        const auto v = edge_test_once(oracle, rng);
        if (v.rejected) CHECK(witness_is_violation(f, v));
      }
    }
  }
}

TEST_CASE("path tester") {
  SECTION("never rejects monotone functions") {
    const auto params = make_params(4, 0.5, 0.25);
    for (std::uint64_t bits : testoracle::monotone_tables_bits(4)) {
      const auto f = table_from_bits(4, bits);
      auto oracle = oracle_of(f);
      Rng rng(derive_seed(2, bits));
      for (int t = 0; t < 100; ++t) CHECK_FALSE(path_test_once(oracle, params, rng).rejected);
    }
  }
  SECTION("query counts are two, or one on a same-point draw") {
    const auto params = make_params(6, 0.5, 0.5);
    const auto f = random_function(6, 8);
    auto oracle = oracle_of(f);
    Rng rng(9);
    std::uint64_t ones = 0;
    for (int t = 0; t < 2000; ++t) {
      const auto before = oracle.query_count();
      const auto v = path_test_once(oracle, params, rng);
      CHECK(oracle.query_count() - before == v.queries_used);
      REQUIRE((v.queries_used == 1 || v.queries_used == 2));
      if (v.queries_used == 1) ++ones;
    }
    CHECK(ones > 0);  // tau < 0 makes same-point draws possible
  }
  SECTION("exact rejection probability of anti-majority(2)") {
    const auto f = anti_majority(2);
    const auto params = make_params(2, 0.5, 0.25);
    const Rational exact = testoracle::exact_path_rejection_probability(f, params);
    REQUIRE(exact > 0);
    auto oracle = oracle_of(f);
    Rng rng(555);
    const std::uint64_t draws = 1000000;
    std::uint64_t rejections = 0;
    for (std::uint64_t t = 0; t < draws; ++t) {
      const auto v = path_test_once(oracle, params, rng);
      if (v.rejected) {
        ++rejections;
        CHECK(witness_is_violation(f, v));
      }
    }
    const double freq = static_cast<double>(rejections) / static_cast<double>(draws);
    CHECK(within_4se(freq, to_double(exact), draws));
  }
  SECTION("exact rejection probability on a random far function at n=6") {
    Rng seeds(77);
    const auto f = random_function(6, seeds.next_u64());
    const auto params = make_params(6, 0.5, 0.5);
    const Rational exact = testoracle::exact_path_rejection_probability(f, params);
    auto oracle = oracle_of(f);
    Rng rng(556);
    const std::uint64_t draws = 200000;
    std::uint64_t rejections = 0;
    for (std::uint64_t t = 0; t < draws; ++t)
      if (path_test_once(oracle, params, rng).rejected) ++rejections;
    const double freq = static_cast<double>(rejections) / static_cast<double>(draws);
    CHECK(within_4se(freq, to_double(exact), draws));
  }
  SECTION("the two-block function beats the edge tester") {
    const auto f = two_block_example(16);
    const int n = f.n();
    const auto cfg = make_combined_config(n, 0.5, 200);
    REQUIRE_FALSE(cfg.edge_only);  // 0.5 >= 17^(-1/4)
    const Rational path_reject = testoracle::two_block_exact_rejection(16, *cfg.params);
    // cross-check the analytic histogram against the generic scan route
    // at a reduced size first
    {
      const auto small = two_block_example(6);
      const auto small_params = make_params(7, 0.5, 0.3);
      CHECK(testoracle::two_block_exact_rejection(6, small_params) ==
            testoracle::exact_path_rejection_probability(small, small_params));
    }
    const Rational edge_reject = violated_edges(f).phi_plus / n;
    CHECK(path_reject > edge_reject);
  }
}

TEST_CASE("combined tester") {
  SECTION("accepts monotone functions across dimensions") {
    for (int n : {4, 8, 16}) {
      for (std::uint64_t s = 0; s < 10; ++s) {
        const auto f = random_monotone(n, derive_seed(31, s * 7 + static_cast<std::uint64_t>(n)));
        auto oracle = oracle_of(f);
        const auto run = combined_test(oracle, 0.5, 5.0, derive_seed(32, s));
        CHECK_FALSE(run.verdict.rejected);
        CHECK(run.rounds_executed == run.repetitions);
        CHECK(run.verdict.queries_used <= 2 * run.repetitions);
      }
    }
  }
  SECTION("rejects eps outside the range") {
    auto oracle = oracle_of(constant(4, true));
    CHECK_THROWS_AS(combined_test(oracle, 0.6, 200, 1), std::invalid_argument);
    CHECK_THROWS_AS(combined_test(oracle, 0.0, 200, 1), std::invalid_argument);
  }
  SECTION("small eps falls back to the edge tester alone") {
    const auto cfg = make_combined_config(16, 0.4, 200);
    CHECK(cfg.edge_only);  // 0.4 < 16^(-1/4) = 0.5
    CHECK(cfg.repetitions == 8000);  // ceil(200 * 16 / 0.4)
    const auto cfg2 = make_combined_config(16, 0.5, 200);
    CHECK_FALSE(cfg2.edge_only);
    CHECK(cfg2.sigma == Catch::Approx(std::pow(16.0, -0.125) * std::sqrt(0.5) / 32.0));
  }
  SECTION("rejects anti-dictator(16,0) reliably and early") {
    const auto f = anti_dictator(16, 0);
    int rejected = 0;
    for (std::uint64_t s = 0; s < 20; ++s) {
      auto oracle = oracle_of(f);
      const auto run = combined_test(oracle, 0.4, 200, derive_seed(99, s));
      if (run.verdict.rejected) {
        ++rejected;
        CHECK(witness_is_violation(f, run.verdict));
        CHECK(run.rounds_executed < run.repetitions);
      }
    }
    CHECK(rejected == 20);
  }
  SECTION("coin order: the round consumes the coin, then the draw") {
    // Two monotone functions; identical seeds must produce identical
    // query sequences because answers never feed back into sampling.
    const auto f = random_monotone(8, 41);
    const auto g = random_monotone(8, 42);
    REQUIRE(!(f == g));
    auto of = oracle_of(f, true);
    auto og = oracle_of(g, true);
    const auto cfg = make_combined_config(8, 0.5, 1.0);
    Rng rf(1234), rg(1234);
    for (int t = 0; t < 50; ++t) {
      combined_round(of, cfg, rf);
      combined_round(og, cfg, rg);
    }
    REQUIRE(of.query_log() != nullptr);
    REQUIRE(og.query_log() != nullptr);
    REQUIRE(of.query_log()->size() == og.query_log()->size());
    for (std::size_t i = 0; i < of.query_log()->size(); ++i)
      CHECK((*of.query_log())[i] == (*og.query_log())[i]);
  }
}

TEST_CASE("non-adaptivity of the primitive draws") {
  const auto f = random_function(7, 1);
  const auto g = random_function(7, 2);
  SECTION("edge draws") {
    auto of = oracle_of(f, true);
    auto og = oracle_of(g, true);
    Rng rf(606), rg(606);
    for (int t = 0; t < 300; ++t) {
      edge_test_once(of, rf);
      edge_test_once(og, rg);
    }
    CHECK(*of.query_log() == *og.query_log());
  }
  SECTION("path draws") {
    const auto params = make_params(7, 0.5, 0.5);
    auto of = oracle_of(f, true);
    auto og = oracle_of(g, true);
    Rng rf(707), rg(707);
    for (int t = 0; t < 300; ++t) {
      path_test_once(of, params, rf);
      path_test_once(og, params, rg);
    }
    CHECK(*of.query_log() == *og.query_log());
  }
}

TEST_CASE("sensitivity-tuned tester") {
  SECTION("accepts monotone functions") {
    const auto f = random_monotone(12, 5);
    auto oracle = oracle_of(f);
    const auto run = sensitivity_test(oracle, 0.5, 1.0, 1.0, 11);
    CHECK_FALSE(run.verdict.rejected);
  }
  SECTION("nonpositive sensitivity is an error") {
    auto oracle = oracle_of(constant(4, true));
    CHECK_THROWS_AS(sensitivity_test(oracle, 0.5, 0.0, 200, 1), std::invalid_argument);
    CHECK_THROWS_AS(sensitivity_test(oracle, 0.5, -1.0, 200, 1), std::invalid_argument);
  }
  SECTION("rejects anti-dictator(16,0) with unit average sensitivity") {
    const auto f = anti_dictator(16, 0);
    REQUIRE(average_sensitivity(f) == 1);
    int rejected = 0;
    const int runs = 100;
    for (int s = 0; s < runs; ++s) {
      auto oracle = oracle_of(f);
      const auto run =
          sensitivity_test(oracle, 0.5, 1.0, 500, derive_seed(313, static_cast<std::uint64_t>(s)));
      CHECK(run.sigma == Catch::Approx(1.0 / 128.0));
      if (run.verdict.rejected) ++rejected;
    }
    CHECK(rejected >= 95);
  }
}

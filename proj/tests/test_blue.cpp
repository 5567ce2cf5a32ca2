#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "monotest/blue.hpp"
#include "monotest/rng.hpp"
#include "monotest/stats.hpp"
#include "oracles.hpp"

using namespace monotest;

namespace {

BlueInstance all_middle_blue(const TesterParams& params) {
  std::vector<std::uint32_t> blue;
  for (std::uint32_t m = 0; m < (std::uint32_t{1} << params.n); ++m)
    if (params.in_middle(std::popcount(m))) blue.push_back(m);
  return BlueInstance{params, std::move(blue)};
}

}  // namespace

TEST_CASE("exact both-blue probability") {
  SECTION("everything blue and a vacuous threshold gives certainty") {
    const auto params = make_params(8, 0.5, 0.5);
    REQUIRE(params.tau < 0.0);
    CHECK(exact_blue_prob(all_middle_blue(params)) == 1);
  }
  SECTION("empty blue set gives zero") {
    const auto params = make_params(8, 0.5, 0.5);
    CHECK(exact_blue_prob(BlueInstance{params, {}}) == 0);
  }
  SECTION("monotone under blue-set growth") {
    const auto params = make_params(10, 0.5, 0.05);
    Rng rng(83);
    BlueInstance inst = random_blue_instance(params, 0.05, rng);
    Rational prev = exact_blue_prob(inst);
    std::vector<std::uint32_t> middle;
    for (std::uint32_t m = 0; m < (1u << 10); ++m)
      if (params.in_middle(std::popcount(m)) &&
          std::find(inst.blue.begin(), inst.blue.end(), m) == inst.blue.end())
        middle.push_back(m);
    rng.shuffle(middle);
    for (int step = 0; step < 20; ++step) {
      inst.blue.push_back(middle[static_cast<std::size_t>(step)]);
      const Rational cur = exact_blue_prob(inst);
      REQUIRE(cur >= prev);
      prev = cur;
    }
  }
  SECTION("matches Monte Carlo on a random instance at n=10") {
    const auto params = make_params(10, 0.5, 0.2);
    Rng rng(89);
    const auto inst = random_blue_instance(params, 0.2, rng);
    const double exact = to_double(exact_blue_prob(inst));
    std::vector<bool> is_blue(1u << 10, false);
    for (auto m : inst.blue) is_blue[m] = true;
    const std::uint64_t draws = 200000;
    std::uint64_t hits = 0;
    Rng draw_rng(97);
    for (std::uint64_t t = 0; t < draws; ++t) {
      const auto path = sample_path(10, draw_rng);
      const auto xs = middle_points(path, params);
      const Point x = xs[static_cast<std::size_t>(draw_rng.uniform_below(xs.size()))];
      const auto ys = y_set(xs, x, params);
      const Point y = ys[static_cast<std::size_t>(draw_rng.uniform_below(ys.size()))];
      if (is_blue[x.bits] && is_blue[y.bits]) ++hits;
    }
    const double freq = static_cast<double>(hits) / static_cast<double>(draws);
    CHECK(within_4se(freq, exact, draws));
  }
  SECTION("instance validation") {
    TesterParams params = make_params(6, 0.5, 0.5);
    params.i_lo = 2;
    params.i_hi = 4;
    CHECK_THROWS_AS(exact_blue_prob(BlueInstance{params, {0b000001}}), std::invalid_argument);
    CHECK_THROWS_AS(exact_blue_prob(BlueInstance{params, {0b000111, 0b000111}}),
                    std::invalid_argument);
  }
}

TEST_CASE("expected blue fraction") {
  SECTION("all blue gives one") {
    const auto params = make_params(8, 0.5, 0.5);
    CHECK(expected_blue_fraction(all_middle_blue(params)) == 1);
  }
  SECTION("one full layer among k layers gives 1/k") {
    const auto params = make_params(6, 0.5, 0.5);
    std::vector<std::uint32_t> blue;
    for (std::uint32_t m = 0; m < (1u << 6); ++m)
      if (std::popcount(m) == 3) blue.push_back(m);
    CHECK(expected_blue_fraction(BlueInstance{params, std::move(blue)}) ==
          Rational(1, params.window()));
  }
  SECTION("closed form matches path sampling at n=12") {
    const auto params = make_params(12, 0.25, 0.1);
    Rng rng(101);
    const auto inst = random_blue_instance(params, 0.1, rng);
    const double exact = to_double(expected_blue_fraction(inst));
    std::vector<bool> is_blue(1u << 12, false);
    for (auto m : inst.blue) is_blue[m] = true;
    const std::uint64_t draws = 100000;
    double acc = 0;
    Rng draw_rng(103);
    for (std::uint64_t t = 0; t < draws; ++t) {
      const auto path = sample_path(12, draw_rng);
      const auto xs = middle_points(path, params);
      int b = 0;
      for (const auto& p : xs)
        if (is_blue[p.bits]) ++b;
      acc += static_cast<double>(b) / static_cast<double>(xs.size());
    }
    // b(p)/|X_p| lies in [0,1]; 4 sigma with sigma <= 1/(2 sqrt(draws))
    CHECK(std::abs(acc / static_cast<double>(draws) - exact) <=
          4.0 * 0.5 / std::sqrt(static_cast<double>(draws)));
  }
}

TEST_CASE("blue correlation chain") {
  SECTION("full-blue instance holds trivially") {
    const auto params = make_params(10, 0.5, 0.5);
    const auto rep = check_blue_chain(all_middle_blue(params));
    CHECK(rep.pass_product);
    CHECK(rep.layer_condition);
    CHECK(rep.pass_sqrt);
    CHECK(rep.pass);
  }
  SECTION("random instances across sigma") {
    for (double sigma : {0.05, 0.1, 0.2}) {
      const auto params = make_params(12, 0.25, sigma);
      for (std::uint64_t s = 0; s < 10; ++s) {
        Rng rng(derive_seed(107, s));
        const auto inst = random_blue_instance(params, sigma, rng);
        const auto rep = check_blue_chain(inst);
        REQUIRE(rep.pass_product);
        REQUIRE(rep.pass);
      }
    }
  }
  SECTION("adversarial concentration on central layers") {
    for (double sigma : {0.05, 0.2}) {
      const auto params = make_params(12, 0.25, sigma);
      const auto inst = concentrated_blue_instance(params, sigma);
      const auto rep = check_blue_chain(inst);
      CHECK(rep.pass_product);
      CHECK(rep.pass);
    }
  }
  SECTION("density below sigma is a precondition violation") {
    const auto params = make_params(10, 0.5, 0.5);
    Rng rng(109);
    const auto inst = random_blue_instance(params, 0.1, rng);  // only 10% blue
    CHECK_THROWS_AS(check_blue_chain(inst), std::invalid_argument);
  }
}

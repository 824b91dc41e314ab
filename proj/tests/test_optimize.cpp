#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "pcepart/optimize.hpp"
#include "support/oracle.hpp"

using namespace pcepart;

namespace {

Objective counted(std::size_t arity, std::function<double(std::span<const double>)> f, int& calls) {
  return {arity, [f = std::move(f), &calls](std::span<const double> x) {
            ++calls;
            return f(x);
          }};
}

}  // namespace

TEST_CASE("bowl minimum") {
  int calls = 0;
  const auto obj = counted(3, [](std::span<const double> x) { return x[0] * x[0] + x[1] * x[1] + x[2] * x[2]; }, calls);
  const auto r = minimize(obj, {1.0, -2.0, 0.5});
  CHECK(r.best_value < 1e-8);
  CHECK(r.evaluations_used == calls);
  CHECK(r.evaluations_used <= 1000);
  CHECK(r.converged);
}

TEST_CASE("shifted bowl") {
  int calls = 0;
  const auto obj = counted(
      2, [](std::span<const double> x) { return (x[0] - 3.0) * (x[0] - 3.0) + 10.0 * (x[1] + 1.0) * (x[1] + 1.0) + 2.0; },
      calls);
  const auto r = minimize(obj, {0.0, 0.0});
  CHECK(r.best_value == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(r.best_params[0] == doctest::Approx(3.0).epsilon(1e-3));
  CHECK(r.best_params[1] == doctest::Approx(-1.0).epsilon(1e-3));
}

TEST_CASE("Rosenbrock within 2000 evaluations") {
  int calls = 0;
  const auto obj = counted(
      2,
      [](std::span<const double> x) {
        return 100.0 * (x[1] - x[0] * x[0]) * (x[1] - x[0] * x[0]) + (1.0 - x[0]) * (1.0 - x[0]);
      },
      calls);
  MinimizeOptions o;
  o.budget = 2000;
  const auto r = minimize(obj, {-1.2, 1.0}, o);
  CHECK(r.best_value < 1e-2);
  CHECK(calls <= 2000);
}

TEST_CASE("budget is a hard cap and best value never exceeds the start") {
  int calls = 0;
  std::mt19937_64 rng(1);
  const auto obj = counted(
      10,
      [](std::span<const double> x) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) s += std::sin(3.0 * x[i]) + 0.1 * x[i] * x[i];
        return s;
      },
      calls);
  std::vector<double> x0(10, 0.7);
  const double f0 = obj.evaluate(x0);
  calls = 0;
  MinimizeOptions o;
  o.budget = 37;
  const auto r = minimize(obj, x0, o);
  CHECK(calls <= 37);
  CHECK(r.evaluations_used == calls);
  CHECK(r.best_value <= f0);
  CHECK(obj.evaluate(r.best_params) == doctest::Approx(r.best_value));
}

TEST_CASE("non-finite objective values are reported with their input") {
  const Objective obj{2, [](std::span<const double> x) {
                        return x[0] > 0.5 ? std::numeric_limits<double>::quiet_NaN() : x[0] * x[0] + x[1] * x[1];
                      }};
  try {
    (void)minimize(obj, {0.0, 0.0});
    FAIL("expected NonFiniteObjective");
  } catch (const NonFiniteObjective& e) {
    REQUIRE(e.input().size() == 2);
    CHECK(e.input()[0] > 0.5);
  }
}

TEST_CASE("minimize contract") {
  const Objective obj{2, [](std::span<const double> x) { return x[0] + x[1]; }};
  CHECK_THROWS_AS(minimize(obj, {0.0}), ContractError);
  MinimizeOptions o;
  o.budget = 0;
  CHECK_THROWS_AS(minimize(obj, {0.0, 0.0}, o), ContractError);
  CHECK_THROWS_AS(minimize(Objective{2, {}}, {0.0, 0.0}), ContractError);
}

TEST_CASE("minimize is deterministic") {
  const Objective obj{4, [](std::span<const double> x) {
                        double s = 0.0;
                        for (double v : x) s += std::cos(v) + 0.05 * v * v;
                        return s;
                      }};
  const auto a = minimize(obj, {0.1, 0.2, 0.3, 0.4});
  const auto b = minimize(obj, {0.1, 0.2, 0.3, 0.4});
  CHECK(a.best_params == b.best_params);
  CHECK(a.evaluations_used == b.evaluations_used);
}

TEST_CASE("UMDA population default") {
  CHECK(umda_population(10, {}) == 63);
  CHECK(umda_population(1, {}) == 20);
  UmdaOptions o;
  o.population = 7;
  CHECK(umda_population(100, o) == 7);
}

TEST_CASE("UMDA finds the optimum on small graphs") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 5; ++t) {
    const Graph g = oracle::erdos_renyi(10, 0.5, rng);
    UmdaOptions o;
    o.seed = static_cast<std::uint64_t>(t);
    const Bits b = umda_maxcut(g, o);
    CHECK(is_two_sided(b));
    CHECK(cut_value(g, b) >= 0.9 * oracle::max_cut(g));
  }
}

TEST_CASE("UMDA is deterministic per seed") {
  std::mt19937_64 rng(3);
  const Graph g = oracle::erdos_renyi(14, 0.5, rng);
  UmdaOptions o;
  o.seed = 9;
  CHECK(umda_maxcut(g, o) == umda_maxcut(g, o));
}

TEST_CASE("local search never decreases the cut and ends at a local optimum") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 10; ++t) {
    const Graph g = oracle::erdos_renyi(12, 0.5, rng);
    Bits start(12);
    for (auto& b : start) b = static_cast<std::uint8_t>(rng() & 1U);
    const double before = cut_value(g, start);
    const Bits end = local_search_cut(g, start, static_cast<std::uint64_t>(t));
    const double after = cut_value(g, end);
    CHECK(after >= before - 1e-12);
    for (int v = 0; v < 12; ++v) {
      Bits flipped = end;
      flipped[static_cast<std::size_t>(v)] ^= 1U;
      CHECK(cut_value(g, flipped) <= after + 1e-12);
    }
  }
}

TEST_CASE("brute force agrees with plain enumeration") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    const int m = 2 + t;
    const Graph g = oracle::erdos_renyi(m, 0.6, rng);
    const MaxCut mc = brute_force_maxcut(g);
    CHECK(mc.value == doctest::Approx(oracle::max_cut(g)).epsilon(1e-12));
    CHECK(cut_value(g, mc.sides) == doctest::Approx(mc.value).epsilon(1e-12));
    CHECK(mc.sides[0] == 0);
  }
  CHECK_THROWS_AS(brute_force_maxcut(Graph(kBruteForceMaxVertices + 1)), ResourceError);
}

#include <doctest.h>

#include <cmath>
#include <random>

#include "pcepart/errors.hpp"
#include "pcepart/portfolio.hpp"

using namespace pcepart;

namespace {

PriceTable table(std::vector<std::vector<double>> cols) {
  PriceTable p;
  const std::size_t T = cols.front().size();
  p.close = Matrix(T, cols.size());
  for (std::size_t a = 0; a < cols.size(); ++a) {
    p.assets.push_back("A" + std::to_string(a));
    for (std::size_t t = 0; t < T; ++t) p.close(t, a) = cols[a][t];
  }
  for (std::size_t t = 0; t < T; ++t) p.dates.push_back("d" + std::to_string(100 + t));
  return p;
}

}  // namespace

TEST_CASE("train/test split") {
  const auto p = table({std::vector<double>(10, 1.0)});
  auto [train, test] = split_train_test(p);
  CHECK(train.date_count() == 8);
  CHECK(test.date_count() == 2);
  CHECK(test.dates.front() == "d108");
  auto [a, b] = split_train_test(table({std::vector<double>(7, 1.0)}));
  CHECK(a.date_count() == 6);  // ceil(5.6)
  CHECK(b.date_count() == 1);
  CHECK_THROWS_AS(split_train_test(p, SplitSpec{1.0}), ContractError);
  CHECK_THROWS_AS(split_train_test(p, SplitSpec{0.0}), ContractError);
  CHECK_THROWS_AS(split_train_test(table({std::vector<double>(3, 1.0)})), DataError);
}

TEST_CASE("representatives are the best mean return per cluster") {
  ReturnsMatrix r;
  r.returns = Matrix(2, 4);
  const double rows[2][4] = {{0.01, 0.02, -0.01, 0.03}, {0.03, 0.00, 0.05, 0.03}};
  for (int t = 0; t < 2; ++t)
    for (int a = 0; a < 4; ++a) r.returns(t, a) = rows[t][a];
  r.assets = {"a", "b", "c", "d"};
  r.dates = {"1", "2"};
  ClusterLabels l;
  l.label = {0, 0, 1, 1};
  l.cluster_count = 2;
  const Portfolio p = select_representatives(l, r);
  // cluster 0: means 0.02 vs 0.01 -> asset 0; cluster 1: 0.02 vs 0.03 -> asset 3
  CHECK(p.representatives == std::vector<int>{0, 3});
  CHECK(p.weights == std::vector<double>{0.5, 0.5});

  l.label = {1, 1, 0, 0};
  CHECK(select_representatives(l, r).representatives == std::vector<int>{3, 0});

  // ties go to the lowest index
  r.returns(0, 0) = 0.25;
  r.returns(1, 0) = 0.75;
  r.returns(0, 1) = 0.5;
  r.returns(1, 1) = 0.5;
  l.label = {0, 0, 1, 1};
  CHECK(select_representatives(l, r).representatives == std::vector<int>{0, 3});
  l.label = {1, 0, 0, 1};
  CHECK(select_representatives(l, r).representatives == std::vector<int>{1, 0});
}

TEST_CASE("buy-and-hold values") {
  const auto p = table({{10, 12, 9, 15}, {20, 20, 30, 10}});
  const Portfolio port{{0, 1}, {0.5, 0.5}};
  const auto bt = backtest(p, port, 1000.0);
  REQUIRE(bt.values.size() == 4);
  // 50 shares of A0, 25 shares of A1
  CHECK(bt.values[0] == doctest::Approx(1000.0));
  CHECK(bt.values[1] == doctest::Approx(50 * 12 + 25 * 20));
  CHECK(bt.values[2] == doctest::Approx(50 * 9 + 25 * 30));
  CHECK(bt.values[3] == doctest::Approx(50 * 15 + 25 * 10));
  CHECK(bt.terminal == bt.values.back());
  for (std::size_t t = 1; t < 4; ++t) CHECK(bt.returns[t - 1] == doctest::Approx(bt.values[t] / bt.values[t - 1] - 1.0));
  const auto base = baseline_backtest(p, 1000.0);
  CHECK(base.values == bt.values);
}

TEST_CASE("backtest contract") {
  const auto p = table({{10, 12}, {20, 20}});
  CHECK_THROWS_AS(backtest(p, Portfolio{{0}, {0.5}}), ContractError);
  CHECK_THROWS_AS(backtest(p, Portfolio{{}, {}}), ContractError);
  CHECK_THROWS_AS(backtest(p, Portfolio{{0}, {1.0}}, 0.0), ContractError);
  CHECK_THROWS_AS(backtest(p, Portfolio{{5}, {1.0}}), DataError);
}

TEST_CASE("Sharpe ratio") {
  const std::vector<double> r{0.01, -0.005, 0.02, 0.0, 0.007};
  const double mu = sample_mean(r);
  const double sd = sample_stddev(r);
  CHECK(sharpe_ratio(r, 0.0, false) == doctest::Approx(mu / sd));
  CHECK(sharpe_ratio(r) == doctest::Approx(std::sqrt(252.0) * mu / sd));
  CHECK(sharpe_ratio(r, 0.001, false) == doctest::Approx((mu - 0.001) / sd));

  std::vector<double> scaled(r), shifted(r);
  for (auto& x : scaled) x *= 4.0;
  for (auto& x : shifted) x += 0.003;
  CHECK(sharpe_ratio(scaled) == doctest::Approx(sharpe_ratio(r)));
  CHECK(sharpe_ratio(shifted, 0.003) == doctest::Approx(sharpe_ratio(r)));

  CHECK_THROWS_AS(sharpe_ratio(std::vector<double>{0.01}), DataError);
  CHECK_THROWS_AS(sharpe_ratio(std::vector<double>{0.01, 0.01, 0.01}), DataError);
}

TEST_CASE("flat prices leave Sharpe undefined") {
  const auto p = table({{5, 5, 5, 5}});
  const auto bt = backtest(p, Portfolio{{0}, {1.0}});
  CHECK_FALSE(bt.sharpe.has_value());
  CHECK(backtest_summary(bt)["sharpe"].is_null());
}

TEST_CASE("backtest CSV") {
  const auto p = table({{10, 11}});
  const auto bt = backtest(p, Portfolio{{0}, {1.0}}, 100.0);
  const std::string csv = backtest_to_csv(bt);
  CHECK(csv.rfind("date,value,return\nd100,100,\nd101,", 0) == 0);
}

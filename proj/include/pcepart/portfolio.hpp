#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pcepart/market.hpp"
#include "pcepart/partition.hpp"

namespace pcepart {

struct SplitSpec {
  double train_fraction = 0.8;
};

/// First ceil(f * T) dates go to training, the rest to testing.
std::pair<PriceTable, PriceTable> split_train_test(const PriceTable& prices, const SplitSpec& spec = {});

struct Portfolio {
  std::vector<int> representatives;  // asset (column) indices, one per cluster in label order
  std::vector<double> weights;       // same length, sums to 1
};

/// Mean daily return of each asset over the window.
std::vector<double> mean_returns(const ReturnsMatrix& r);

/// Per cluster, the member with the highest mean train return (lowest index on ties); equal weights.
Portfolio select_representatives(const ClusterLabels& labels, const ReturnsMatrix& train_returns);

inline constexpr double kTradingDaysPerYear = 252.0;
inline constexpr double kDefaultInitialInvestment = 1000.0;

struct BacktestResult {
  std::vector<std::string> dates;
  std::vector<double> values;   // values[0] == initial investment
  std::vector<double> returns;  // returns[t-1] = values[t] / values[t-1] - 1
  double terminal = 0.0;
  double mean_return = 0.0;     // mean daily return
  double volatility = 0.0;      // sample standard deviation of daily returns
  std::optional<double> sharpe; // annualized, zero risk-free; empty when undefined
};

/// Buy-and-hold: capital split by weight at the first close, held to the end.
BacktestResult backtest(const PriceTable& window, const Portfolio& portfolio,
                        double initial = kDefaultInitialInvestment);

/// Equal-weight buy-and-hold over every asset in the window.
BacktestResult baseline_backtest(const PriceTable& window, double initial = kDefaultInitialInvestment);

/// (mean - risk_free_daily) / sample_sd, times sqrt(252) when annualized.
/// Throws DataError on fewer than 2 returns or zero volatility.
double sharpe_ratio(const std::vector<double>& daily_returns, double risk_free_daily = 0.0,
                    bool annualize = true);
double sharpe_ratio(const BacktestResult& result, double risk_free_daily = 0.0, bool annualize = true);

double sample_mean(const std::vector<double>& x);
double sample_stddev(const std::vector<double>& x);

/// date,value,return rows (the first row has an empty return).
std::string backtest_to_csv(const BacktestResult& result);
nlohmann::json backtest_summary(const BacktestResult& result);

}  // namespace pcepart

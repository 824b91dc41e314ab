#include "pcepart/portfolio.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "pcepart/errors.hpp"

namespace pcepart {

std::pair<PriceTable, PriceTable> split_train_test(const PriceTable& prices, const SplitSpec& spec) {
  if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
    throw ContractError("train fraction must lie in (0, 1)");
  }
  const std::size_t T = prices.date_count();
  if (T < 5) throw DataError("split_train_test: need at least 5 dates, got " + std::to_string(T));
  // Small slack so 0.8 * 10 stays 8 despite binary rounding.
  const auto n_train = static_cast<std::size_t>(std::ceil(spec.train_fraction * static_cast<double>(T) - 1e-9));
  if (n_train == 0 || n_train >= T) {
    throw DataError("split_train_test: fraction " + std::to_string(spec.train_fraction) + " leaves an empty side for " +
                    std::to_string(T) + " dates");
  }
  return {prices.slice_rows(0, n_train), prices.slice_rows(n_train, T)};
}

std::vector<double> mean_returns(const ReturnsMatrix& r) {
  std::vector<double> mu(r.asset_count(), 0.0);
  if (r.observation_count() == 0) return mu;
  for (std::size_t t = 0; t < r.observation_count(); ++t) {
    for (std::size_t a = 0; a < r.asset_count(); ++a) mu[a] += r.returns(t, a);
  }
  for (auto& v : mu) v /= static_cast<double>(r.observation_count());
  return mu;
}

Portfolio select_representatives(const ClusterLabels& labels, const ReturnsMatrix& train_returns) {
  if (labels.label.size() != train_returns.asset_count()) {
    throw ContractError("select_representatives: labels cover " + std::to_string(labels.label.size()) +
                        " assets, returns have " + std::to_string(train_returns.asset_count()));
  }
  const auto mu = mean_returns(train_returns);
  Portfolio p;
  for (const auto& members : labels.clusters()) {
    if (members.empty()) throw ContractError("select_representatives: empty cluster");
    int best = members.front();
    for (int a : members) {
      if (mu[static_cast<std::size_t>(a)] > mu[static_cast<std::size_t>(best)]) best = a;
    }
    p.representatives.push_back(best);
  }
  p.weights.assign(p.representatives.size(), 1.0 / static_cast<double>(p.representatives.size()));
  return p;
}

double sample_mean(const std::vector<double>& x) {
  if (x.empty()) return 0.0;
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

double sample_stddev(const std::vector<double>& x) {
  if (x.size() < 2) return 0.0;
  const double mu = sample_mean(x);
  double ss = 0.0;
  for (double v : x) ss += (v - mu) * (v - mu);
  return std::sqrt(ss / static_cast<double>(x.size() - 1));
}

double sharpe_ratio(const std::vector<double>& daily_returns, double risk_free_daily, bool annualize) {
  if (daily_returns.size() < 2) throw DataError("Sharpe undefined: need at least 2 daily returns");
  const double mu = sample_mean(daily_returns);
  const double sd = sample_stddev(daily_returns);
  if (!(sd > 1e-12 * std::max(1.0, std::abs(mu)))) throw DataError("Sharpe undefined: zero volatility");
  const double s = (mu - risk_free_daily) / sd;
  return annualize ? s * std::sqrt(kTradingDaysPerYear) : s;
}

double sharpe_ratio(const BacktestResult& result, double risk_free_daily, bool annualize) {
  return sharpe_ratio(result.returns, risk_free_daily, annualize);
}

BacktestResult backtest(const PriceTable& window, const Portfolio& portfolio, double initial) {
  if (window.date_count() == 0) throw DataError("backtest: empty price window");
  if (portfolio.representatives.empty()) throw ContractError("backtest: empty portfolio");
  if (portfolio.weights.size() != portfolio.representatives.size()) {
    throw ContractError("backtest: weights and representatives differ in length");
  }
  if (!(initial > 0.0)) throw ContractError("backtest: initial investment must be positive");
  double wsum = 0.0;
  for (double w : portfolio.weights) {
    if (w < 0.0) throw ContractError("backtest: negative weight");
    wsum += w;
  }
  if (std::abs(wsum - 1.0) > 1e-12) throw ContractError("backtest: weights must sum to 1");

  std::vector<double> shares;
  for (std::size_t k = 0; k < portfolio.representatives.size(); ++k) {
    const int a = portfolio.representatives[k];
    if (a < 0 || static_cast<std::size_t>(a) >= window.asset_count()) {
      throw DataError("backtest: representative asset " + std::to_string(a) + " is not in the price window");
    }
    shares.push_back(initial * portfolio.weights[k] / window.close(0, static_cast<std::size_t>(a)));
  }

  BacktestResult r;
  r.dates = window.dates;
  r.values.reserve(window.date_count());
  for (std::size_t t = 0; t < window.date_count(); ++t) {
    double v = 0.0;
    for (std::size_t k = 0; k < shares.size(); ++k) {
      v += shares[k] * window.close(t, static_cast<std::size_t>(portfolio.representatives[k]));
    }
    r.values.push_back(t == 0 ? initial : v);
  }
  for (std::size_t t = 1; t < r.values.size(); ++t) r.returns.push_back(r.values[t] / r.values[t - 1] - 1.0);
  r.terminal = r.values.back();
  r.mean_return = sample_mean(r.returns);
  r.volatility = sample_stddev(r.returns);
  try {
    r.sharpe = sharpe_ratio(r.returns);
  } catch (const DataError&) {
    r.sharpe.reset();
  }
  return r;
}

BacktestResult baseline_backtest(const PriceTable& window, double initial) {
  Portfolio all;
  for (std::size_t a = 0; a < window.asset_count(); ++a) all.representatives.push_back(static_cast<int>(a));
  all.weights.assign(window.asset_count(), window.asset_count() ? 1.0 / static_cast<double>(window.asset_count()) : 0.0);
  return backtest(window, all, initial);
}

std::string backtest_to_csv(const BacktestResult& result) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "date,value,return\n";
  for (std::size_t t = 0; t < result.values.size(); ++t) {
    os << result.dates[t] << ',' << result.values[t] << ',';
    if (t > 0) os << result.returns[t - 1];
    os << '\n';
  }
  return os.str();
}

nlohmann::json backtest_summary(const BacktestResult& result) {
  nlohmann::json j;
  j["terminal"] = result.terminal;
  j["mean"] = result.mean_return;
  j["sigma"] = result.volatility;
  j["sharpe"] = result.sharpe ? nlohmann::json(*result.sharpe) : nlohmann::json(nullptr);
  j["days"] = result.values.size();
  return j;
}

}  // namespace pcepart

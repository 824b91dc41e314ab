#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "pcepart/graph.hpp"

namespace pcepart {

/// Row-major dense matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::vector<double> column(std::size_t c) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Close prices, one row per trading date and one column per asset.
struct PriceTable {
  std::vector<std::string> dates;   // strictly increasing
  std::vector<std::string> assets;  // file order
  Matrix close;                     // [date x asset], all > 0

  std::size_t date_count() const { return dates.size(); }
  std::size_t asset_count() const { return assets.size(); }
  /// Sub-table over rows [begin, end).
  PriceTable slice_rows(std::size_t begin, std::size_t end) const;
};

inline constexpr double kMinDateCoverage = 0.95;

/// Reads long-form (date, close, name) or wide-form (date, SYM1, SYM2, ...)
/// CSV. Assets under 95% date coverage are dropped, gaps are forward- then
/// back-filled, and the first m survivors in file order are kept.
/// m <= 0 keeps every survivor.
PriceTable load_prices(const std::string& path, int m);
PriceTable parse_prices(std::istream& in, int m, const std::string& source = "<stream>");

/// Simple daily returns P_t / P_{t-1} - 1; dates[t] labels the return ending on that date.
struct ReturnsMatrix {
  std::vector<std::string> dates;
  std::vector<std::string> assets;
  Matrix returns;

  std::size_t observation_count() const { return returns.rows(); }
  std::size_t asset_count() const { return returns.cols(); }
};

ReturnsMatrix compute_returns(const PriceTable& prices);

/// Sample (n-1) Pearson correlation. Throws DataError naming a zero-variance asset.
Matrix pearson_matrix(const ReturnsMatrix& r);
Matrix covariance_matrix(const ReturnsMatrix& r);

struct MarketGraph {
  Graph graph;
  double lambda = 0.0;
  std::vector<std::string> assets;
};

inline constexpr double kDefaultLambda = 0.35;

/// Edge (i, j) with weight 1 - |rho_ij| iff |rho_ij| > lambda.
MarketGraph build_graph(const Matrix& rho, double lambda, std::vector<std::string> assets = {});

struct GraphStats {
  int nodes = 0;
  std::size_t edges = 0;
  double density = 0.0;
  double average_degree = 0.0;
  double clustering = 0.0;  // mean unweighted local clustering coefficient
};

double graph_density(std::size_t nodes, std::size_t edges);
double average_degree(std::size_t nodes, std::size_t edges);
GraphStats graph_stats(const Graph& g);

nlohmann::json graph_to_json(const MarketGraph& g);
MarketGraph graph_from_json(const nlohmann::json& doc);
/// One "i j w" line per edge.
std::string graph_to_edge_list(const Graph& g);

}  // namespace pcepart

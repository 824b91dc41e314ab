#include "pcepart/market.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "pcepart/errors.hpp"

namespace pcepart {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n\"");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n\"");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (char ch : line) {
    if (ch == '"') {
      quoted = !quoted;
    } else if (ch == ',' && !quoted) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(trim(cur));
  return out;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::optional<double> parse_number(const std::string& s) {
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

[[noreturn]] void bad_line(const std::string& source, std::size_t line, const std::string& why) {
  throw DataError(source + ":" + std::to_string(line) + ": " + why);
}

struct Observation {
  std::size_t asset;
  std::string date;
  double close;
};

}  // namespace

std::vector<double> Matrix::column(std::size_t c) const {
  std::vector<double> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

PriceTable PriceTable::slice_rows(std::size_t begin, std::size_t end) const {
  if (begin > end || end > dates.size()) throw ContractError("PriceTable::slice_rows: bad range");
  PriceTable out;
  out.assets = assets;
  out.dates.assign(dates.begin() + static_cast<std::ptrdiff_t>(begin), dates.begin() + static_cast<std::ptrdiff_t>(end));
  out.close = Matrix(end - begin, assets.size());
  for (std::size_t r = begin; r < end; ++r) {
    for (std::size_t a = 0; a < assets.size(); ++a) out.close(r - begin, a) = close(r, a);
  }
  return out;
}

PriceTable load_prices(const std::string& path, int m) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open price file '" + path + "'");
  return parse_prices(in, m, path);
}

PriceTable parse_prices(std::istream& in, int m, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) {
      header = split_csv_line(line);
      break;
    }
  }
  if (header.empty()) throw DataError(source + ": empty price file");

  std::vector<std::string> lowered;
  for (const auto& h : header) lowered.push_back(lower(h));
  auto find_col = [&](std::initializer_list<const char*> names) -> int {
    for (const char* n : names) {
      const auto it = std::find(lowered.begin(), lowered.end(), n);
      if (it != lowered.end()) return static_cast<int>(it - lowered.begin());
    }
    return -1;
  };
  const int date_col = find_col({"date"});
  const int close_col = find_col({"close"});
  const int name_col = find_col({"name", "symbol", "ticker"});
  const bool long_form = close_col >= 0 && name_col >= 0;

  std::vector<std::string> asset_names;
  std::unordered_map<std::string, std::size_t> asset_index;
  auto intern = [&](const std::string& name) {
    auto [it, inserted] = asset_index.emplace(name, asset_names.size());
    if (inserted) asset_names.push_back(name);
    return it->second;
  };
  std::vector<Observation> obs;

  if (long_form) {
    if (date_col < 0) throw DataError(source + ": long-form CSV needs a 'date' column");
    const std::size_t need = static_cast<std::size_t>(std::max({date_col, close_col, name_col})) + 1;
    while (std::getline(in, line)) {
      ++line_no;
      if (trim(line).empty()) continue;
      const auto f = split_csv_line(line);
      if (f.size() < need) bad_line(source, line_no, "expected at least " + std::to_string(need) + " fields");
      const auto& date = f[static_cast<std::size_t>(date_col)];
      const auto& name = f[static_cast<std::size_t>(name_col)];
      if (date.empty() || name.empty()) bad_line(source, line_no, "missing date or name");
      const auto& cell = f[static_cast<std::size_t>(close_col)];
      if (cell.empty()) continue;  // missing close: treated as a gap
      const auto v = parse_number(cell);
      if (!v) bad_line(source, line_no, "unparsable close '" + cell + "'");
      if (!(*v > 0.0) || !std::isfinite(*v)) bad_line(source, line_no, "non-positive close " + cell);
      obs.push_back({intern(name), date, *v});
    }
  } else {
    const int dcol = date_col >= 0 ? date_col : 0;
    std::vector<std::size_t> col_asset(header.size(), std::numeric_limits<std::size_t>::max());
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (static_cast<int>(c) == dcol) continue;
      if (header[c].empty()) throw DataError(source + ": empty column name in header");
      if (asset_index.count(header[c])) throw DataError(source + ": duplicate column '" + header[c] + "'");
      col_asset[c] = intern(header[c]);
    }
    if (asset_names.empty()) throw DataError(source + ": no asset columns in header");
    while (std::getline(in, line)) {
      ++line_no;
      if (trim(line).empty()) continue;
      const auto f = split_csv_line(line);
      if (f.size() != header.size()) {
        bad_line(source, line_no, "expected " + std::to_string(header.size()) + " fields, got " + std::to_string(f.size()));
      }
      const auto& date = f[static_cast<std::size_t>(dcol)];
      if (date.empty()) bad_line(source, line_no, "missing date");
      for (std::size_t c = 0; c < f.size(); ++c) {
        if (static_cast<int>(c) == dcol || f[c].empty()) continue;
        const auto v = parse_number(f[c]);
        if (!v) bad_line(source, line_no, "unparsable price '" + f[c] + "'");
        if (!(*v > 0.0) || !std::isfinite(*v)) bad_line(source, line_no, "non-positive price " + f[c]);
        obs.push_back({col_asset[c], date, *v});
      }
    }
  }

  std::vector<std::string> dates;
  dates.reserve(obs.size());
  for (const auto& o : obs) dates.push_back(o.date);
  std::sort(dates.begin(), dates.end());
  dates.erase(std::unique(dates.begin(), dates.end()), dates.end());
  std::unordered_map<std::string, std::size_t> date_index;
  for (std::size_t i = 0; i < dates.size(); ++i) date_index.emplace(dates[i], i);

  const std::size_t T = dates.size();
  const std::size_t A = asset_names.size();
  constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();
  Matrix wide(T, A, kMissing);
  for (const auto& o : obs) {
    double& cell = wide(date_index.at(o.date), o.asset);
    if (!std::isnan(cell)) {
      throw DataError(source + ": duplicate price for " + asset_names[o.asset] + " on " + o.date);
    }
    cell = o.close;
  }

  std::vector<std::size_t> keep;
  for (std::size_t a = 0; a < A; ++a) {
    std::size_t present = 0;
    for (std::size_t t = 0; t < T; ++t) present += std::isnan(wide(t, a)) ? 0 : 1;
    if (T > 0 && static_cast<double>(present) >= kMinDateCoverage * static_cast<double>(T)) keep.push_back(a);
    if (m > 0 && keep.size() == static_cast<std::size_t>(m)) break;
  }
  if (m > 0 && keep.size() < static_cast<std::size_t>(m)) {
    throw DataError(source + ": only " + std::to_string(keep.size()) + " assets have at least " +
                    std::to_string(static_cast<int>(kMinDateCoverage * 100)) + "% date coverage, " +
                    std::to_string(m) + " requested");
  }
  if (keep.empty()) throw DataError(source + ": no usable assets");

  PriceTable out;
  out.dates = std::move(dates);
  out.close = Matrix(T, keep.size());
  for (std::size_t k = 0; k < keep.size(); ++k) {
    const std::size_t a = keep[k];
    out.assets.push_back(asset_names[a]);
    double last = kMissing;
    for (std::size_t t = 0; t < T; ++t) {
      if (!std::isnan(wide(t, a))) last = wide(t, a);
      out.close(t, k) = last;
    }
    double next = kMissing;
    for (std::size_t t = T; t-- > 0;) {
      if (!std::isnan(out.close(t, k))) {
        next = out.close(t, k);
      } else {
        out.close(t, k) = next;
      }
    }
  }
  return out;
}

ReturnsMatrix compute_returns(const PriceTable& prices) {
  const std::size_t T = prices.date_count();
  if (T < 2) throw DataError("compute_returns: need at least 2 dates, got " + std::to_string(T));
  ReturnsMatrix r;
  r.assets = prices.assets;
  r.dates.assign(prices.dates.begin() + 1, prices.dates.end());
  r.returns = Matrix(T - 1, prices.asset_count());
  for (std::size_t t = 1; t < T; ++t) {
    for (std::size_t a = 0; a < prices.asset_count(); ++a) {
      r.returns(t - 1, a) = prices.close(t, a) / prices.close(t - 1, a) - 1.0;
    }
  }
  return r;
}

namespace {

std::vector<double> column_means(const Matrix& x) {
  std::vector<double> mean(x.cols(), 0.0);
  for (std::size_t t = 0; t < x.rows(); ++t) {
    for (std::size_t a = 0; a < x.cols(); ++a) mean[a] += x(t, a);
  }
  for (auto& v : mean) v /= static_cast<double>(x.rows());
  return mean;
}

}  // namespace

Matrix covariance_matrix(const ReturnsMatrix& r) {
  const std::size_t n = r.observation_count();
  const std::size_t A = r.asset_count();
  if (n < 2) throw DataError("covariance_matrix: need at least 2 observations");
  const auto mean = column_means(r.returns);
  Matrix cov(A, A);
  for (std::size_t i = 0; i < A; ++i) {
    for (std::size_t j = i; j < A; ++j) {
      double s = 0.0;
      for (std::size_t t = 0; t < n; ++t) s += (r.returns(t, i) - mean[i]) * (r.returns(t, j) - mean[j]);
      cov(i, j) = cov(j, i) = s / static_cast<double>(n - 1);
    }
  }
  return cov;
}

Matrix pearson_matrix(const ReturnsMatrix& r) {
  if (r.observation_count() < 3) {
    throw DataError("pearson_matrix: need at least 3 observations, got " + std::to_string(r.observation_count()));
  }
  const Matrix cov = covariance_matrix(r);
  const std::size_t A = r.asset_count();
  std::vector<double> sd(A);
  for (std::size_t a = 0; a < A; ++a) {
    sd[a] = std::sqrt(cov(a, a));
    if (!(sd[a] > 0.0)) {
      const std::string name = a < r.assets.size() ? r.assets[a] : "#" + std::to_string(a);
      throw DataError("pearson_matrix: asset " + name + " has zero return variance");
    }
  }
  Matrix rho(A, A);
  for (std::size_t i = 0; i < A; ++i) {
    rho(i, i) = 1.0;
    for (std::size_t j = i + 1; j < A; ++j) {
      rho(i, j) = rho(j, i) = std::clamp(cov(i, j) / (sd[i] * sd[j]), -1.0, 1.0);
    }
  }
  return rho;
}

MarketGraph build_graph(const Matrix& rho, double lambda, std::vector<std::string> assets) {
  if (rho.rows() != rho.cols()) throw ContractError("build_graph: correlation matrix is not square");
  if (!(lambda >= 0.0 && lambda < 1.0)) throw ContractError("build_graph: lambda must lie in [0, 1)");
  const std::size_t n = rho.rows();
  if (!assets.empty() && assets.size() != n) throw ContractError("build_graph: asset names do not match matrix size");
  MarketGraph g;
  g.graph = Graph(static_cast<int>(n));
  g.lambda = lambda;
  g.assets = std::move(assets);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = std::abs(rho(i, j));
      if (a > lambda) g.graph.add_edge(static_cast<int>(i), static_cast<int>(j), 1.0 - a);
    }
  }
  return g;
}

double graph_density(std::size_t nodes, std::size_t edges) {
  if (nodes < 2) return 0.0;
  return 2.0 * static_cast<double>(edges) / (static_cast<double>(nodes) * static_cast<double>(nodes - 1));
}

double average_degree(std::size_t nodes, std::size_t edges) {
  if (nodes == 0) return 0.0;
  return 2.0 * static_cast<double>(edges) / static_cast<double>(nodes);
}

GraphStats graph_stats(const Graph& g) {
  GraphStats s;
  s.nodes = g.vertex_count();
  s.edges = g.edge_count();
  const auto n = static_cast<std::size_t>(s.nodes);
  s.density = graph_density(n, s.edges);
  s.average_degree = average_degree(n, s.edges);
  if (n == 0) return s;

  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  std::vector<std::vector<int>> nbrs(n);
  for (const Edge& e : g.edges()) {
    const auto i = static_cast<std::size_t>(e.i), j = static_cast<std::size_t>(e.j);
    if (adj[i][j]) continue;
    adj[i][j] = adj[j][i] = 1;
    nbrs[i].push_back(e.j);
    nbrs[j].push_back(e.i);
  }
  double total = 0.0;
  for (std::size_t v = 0; v < n; ++v) {
    const auto& nv = nbrs[v];
    const std::size_t d = nv.size();
    if (d < 2) continue;
    std::size_t links = 0;
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = a + 1; b < d; ++b) {
        links += adj[static_cast<std::size_t>(nv[a])][static_cast<std::size_t>(nv[b])] ? 1 : 0;
      }
    }
    total += 2.0 * static_cast<double>(links) / (static_cast<double>(d) * static_cast<double>(d - 1));
  }
  s.clustering = total / static_cast<double>(n);
  return s;
}

nlohmann::json graph_to_json(const MarketGraph& g) {
  nlohmann::json doc;
  nlohmann::json vertices = nlohmann::json::array();
  for (int v = 0; v < g.graph.vertex_count(); ++v) vertices.push_back(v);
  doc["vertices"] = vertices;
  if (!g.assets.empty()) doc["assets"] = g.assets;
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : g.graph.edges()) edges.push_back({{"i", e.i}, {"j", e.j}, {"w", e.w}});
  doc["edges"] = edges;
  doc["lambda"] = g.lambda;
  return doc;
}

MarketGraph graph_from_json(const nlohmann::json& doc) {
  try {
    MarketGraph g;
    g.lambda = doc.at("lambda").get<double>();
    g.graph = Graph(static_cast<int>(doc.at("vertices").size()));
    if (doc.contains("assets")) g.assets = doc.at("assets").get<std::vector<std::string>>();
    for (const auto& e : doc.at("edges")) {
      g.graph.add_edge(e.at("i").get<int>(), e.at("j").get<int>(), e.at("w").get<double>());
    }
    return g;
  } catch (const nlohmann::json::exception& ex) {
    throw DataError(std::string("malformed graph JSON: ") + ex.what());
  }
}

std::string graph_to_edge_list(const Graph& g) {
  std::ostringstream os;
  os << std::setprecision(17);
  for (const Edge& e : g.edges()) os << e.i << ' ' << e.j << ' ' << e.w << '\n';
  return os.str();
}

}  // namespace pcepart

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <utility>

#include "pcepart/optimize.hpp"

namespace pcepart {

namespace {

struct Neighbor {
  int v;
  double w;
};

std::vector<std::vector<Neighbor>> adjacency(const Graph& g) {
  std::vector<std::vector<Neighbor>> adj(static_cast<std::size_t>(g.vertex_count()));
  for (const Edge& e : g.edges()) {
    adj[static_cast<std::size_t>(e.i)].push_back({e.j, e.w});
    adj[static_cast<std::size_t>(e.j)].push_back({e.i, e.w});
  }
  return adj;
}

// Change in cut value if v switches side.
double flip_gain(const std::vector<Neighbor>& nbrs, const Bits& x, int v) {
  double gain = 0.0;
  const auto sv = x[static_cast<std::size_t>(v)];
  for (const auto& nb : nbrs) gain += (x[static_cast<std::size_t>(nb.v)] == sv) ? nb.w : -nb.w;
  return gain;
}

}  // namespace

MaxCut brute_force_maxcut(const Graph& g) {
  const int n = g.vertex_count();
  if (n > kBruteForceMaxVertices) {
    throw ResourceError("brute_force_maxcut: " + std::to_string(n) +
                        " vertices exceeds the limit of " + std::to_string(kBruteForceMaxVertices));
  }
  MaxCut best;
  best.sides.assign(static_cast<std::size_t>(n), 0);
  if (n < 2) return best;

  const auto adj = adjacency(g);
  Bits x(static_cast<std::size_t>(n), 0);
  double cut = 0.0;
  best.value = 0.0;
  // Gray-code walk over vertices 1..n-1; vertex 0 stays on side 0.
  const std::uint64_t count = std::uint64_t{1} << (n - 1);
  for (std::uint64_t step = 1; step < count; ++step) {
    const int v = 1 + std::countr_zero(step);
    cut += flip_gain(adj[static_cast<std::size_t>(v)], x, v);
    x[static_cast<std::size_t>(v)] ^= 1;
    if (cut > best.value) {
      best.value = cut;
      best.sides = x;
    }
  }
  // Re-sum to drop accumulated rounding from the incremental walk.
  best.value = cut_value(g, best.sides);
  return best;
}

Bits local_search_cut(const Graph& g, Bits start, std::uint64_t seed) {
  const int n = g.vertex_count();
  if (start.size() != static_cast<std::size_t>(n)) {
    throw ContractError("local_search_cut: start has " + std::to_string(start.size()) +
                        " entries for " + std::to_string(n) + " vertices");
  }
  for (auto& b : start) b = b ? 1 : 0;
  const auto adj = adjacency(g);
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  bool improved = true;
  while (improved) {
    improved = false;
    for (int v : order) {
      if (flip_gain(adj[static_cast<std::size_t>(v)], start, v) > 1e-12) {
        start[static_cast<std::size_t>(v)] ^= 1;
        improved = true;
      }
    }
  }
  return start;
}

int umda_population(int m, const UmdaOptions& opts) {
  if (opts.population > 0) return opts.population;
  return std::max(10, static_cast<int>(std::lround(20.0 * std::sqrt(static_cast<double>(m)))));
}

Bits umda_maxcut(const Graph& g, const UmdaOptions& opts) {
  const int m = g.vertex_count();
  const int pop = umda_population(m, opts);
  if (pop < 10) throw ContractError("umda_maxcut: population must be >= 10");
  if (!(opts.truncation > 0.0 && opts.truncation < 1.0)) {
    throw ContractError("umda_maxcut: truncation must lie in (0, 1)");
  }
  if (opts.generations < 1) throw ContractError("umda_maxcut: generations must be >= 1");
  Bits best(static_cast<std::size_t>(m), 0);
  if (m < 2) return best;

  const double lo = 1.0 / m;
  const double hi = 1.0 - lo;
  const int elite = std::max(1, static_cast<int>(std::lround(opts.truncation * pop)));
  std::vector<double> marginal(static_cast<std::size_t>(m), 0.5);
  std::vector<Bits> population(static_cast<std::size_t>(pop), Bits(static_cast<std::size_t>(m)));
  std::vector<double> fitness(static_cast<std::size_t>(pop));
  std::vector<int> rank(static_cast<std::size_t>(pop));
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double best_cut = -1.0;

  for (int gen = 0; gen < opts.generations; ++gen) {
    for (int s = 0; s < pop; ++s) {
      auto& x = population[static_cast<std::size_t>(s)];
      for (int i = 0; i < m; ++i) {
        x[static_cast<std::size_t>(i)] = unit(rng) < marginal[static_cast<std::size_t>(i)] ? 1 : 0;
      }
      fitness[static_cast<std::size_t>(s)] = cut_value(g, x);
      if (fitness[static_cast<std::size_t>(s)] > best_cut) {
        best_cut = fitness[static_cast<std::size_t>(s)];
        best = x;
      }
    }
    std::iota(rank.begin(), rank.end(), 0);
    std::stable_sort(rank.begin(), rank.end(), [&](int a, int b) {
      return fitness[static_cast<std::size_t>(a)] > fitness[static_cast<std::size_t>(b)];
    });
    for (int i = 0; i < m; ++i) {
      double ones = 0.0;
      for (int e = 0; e < elite; ++e) {
        ones += population[static_cast<std::size_t>(rank[static_cast<std::size_t>(e)])][static_cast<std::size_t>(i)];
      }
      marginal[static_cast<std::size_t>(i)] = std::clamp(ones / elite, lo, hi);
    }
  }
  repair_partition(g, best);
  return best;
}

}  // namespace pcepart

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "pcepart/errors.hpp"
#include "pcepart/graph.hpp"

namespace pcepart {

/// Scalar objective of fixed arity. Must be deterministic for a fixed input.
struct Objective {
  std::size_t arity = 0;
  std::function<double(std::span<const double>)> evaluate;
};

struct OptResult {
  std::vector<double> best_params;
  double best_value = 0.0;
  int evaluations_used = 0;
  bool converged = false;  // trust radius reached tol before the budget ran out
};

struct MinimizeOptions {
  int budget = 1000;
  double tol = 1e-6;        // final trust-region radius
  double rho_begin = 1.0;   // initial trust-region radius
};

/// Raised when the objective returns NaN or infinity. Carries the input.
class NonFiniteObjective : public ContractError {
 public:
  NonFiniteObjective(const std::string& what, std::vector<double> input)
      : ContractError(what), input_(std::move(input)) {}
  const std::vector<double>& input() const { return input_; }

 private:
  std::vector<double> input_;
};

/// Derivative-free minimization by linear approximation over a simplex of
/// arity+1 points with a shrinking trust region (unconstrained COBYLA).
/// Stops when the budget is spent or the trust radius falls to `tol`.
OptResult minimize(const Objective& obj, std::vector<double> x0, const MinimizeOptions& opts = {});

/// Pluggable minimizer so solvers can be driven by something other than `minimize`.
using Minimizer =
    std::function<OptResult(const Objective&, std::vector<double>, const MinimizeOptions&)>;

inline Minimizer default_minimizer() {
  return [](const Objective& obj, std::vector<double> x0, const MinimizeOptions& o) {
    return minimize(obj, std::move(x0), o);
  };
}

using Bits = std::vector<std::uint8_t>;

struct UmdaOptions {
  int population = 0;       // 0 = round(20 * sqrt(m)), at least 10
  double truncation = 0.5;  // elite fraction
  int generations = 100;
  std::uint64_t seed = 0;
};

/// Population size actually used for an m-vertex graph.
int umda_population(int m, const UmdaOptions& opts);

/// Univariate marginal EDA maximizing the cut. Returns the best-ever
/// bitstring after repair_partition.
Bits umda_maxcut(const Graph& g, const UmdaOptions& opts);

/// Single-bit-flip hill climbing from `start` (scan order shuffled by seed).
Bits local_search_cut(const Graph& g, Bits start, std::uint64_t seed);

inline constexpr int kBruteForceMaxVertices = 22;

struct MaxCut {
  Bits sides;
  double value = 0.0;
};

/// Exact maximum cut with vertex 0 fixed on side 0. ResourceError above 22 vertices.
MaxCut brute_force_maxcut(const Graph& g);

}  // namespace pcepart

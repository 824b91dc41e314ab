#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "pcepart/errors.hpp"
#include "pcepart/pce.hpp"
#include "support/oracle.hpp"

using namespace pcepart;

TEST_CASE("binomial") {
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(9, 3) == 84);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(60, 30) == 118264581564861424ULL);
}

TEST_CASE("sizing rule") {
  const Sizing a = compute_sizing(250, 3);
  CHECK(a.n == 9);
  CHECK(a.p == 27);
  const Sizing b = compute_sizing(10, 2);
  CHECK(b.n == 4);
  CHECK(b.p == 2);
  const Sizing c = compute_sizing(3, 1);
  CHECK(c.n == 1);
  CHECK(c.p == 3);
  const Sizing d = compute_sizing(9, 2);  // 3 * C(3, 2) = 9 exactly
  CHECK(d.n == 3);
  CHECK(compute_sizing(2, 3).n == 3);  // n >= k
  CHECK_THROWS_AS(compute_sizing(1, 2), ContractError);
  CHECK_THROWS_AS(compute_sizing(10, 4), ContractError);
  CHECK_THROWS_AS(compute_sizing(10, 0), ContractError);
}

TEST_CASE("sizing is minimal") {
  for (int k = 1; k <= 3; ++k) {
    for (int m = 2; m <= 400; ++m) {
      const Sizing s = compute_sizing(m, k);
      CHECK(3 * binomial(s.n, k) >= static_cast<std::uint64_t>(m));
      if (s.n > k) CHECK(3 * binomial(s.n - 1, k) < static_cast<std::uint64_t>(m));
      CHECK(s.p == std::max(1, m / s.n));
    }
  }
}

TEST_CASE("Pauli enumeration order") {
  const auto three = enumerate_pauli_strings(Sizing{3, 2, 1}, 2);
  REQUIRE(three.size() == 3);
  CHECK(three.strings[0].letters() == "XX");
  CHECK(three.strings[1].letters() == "YY");
  CHECK(three.strings[2].letters() == "ZZ");

  const auto four = enumerate_pauli_strings(Sizing{4, 3, 1}, 2);
  REQUIRE(four.size() == 4);
  CHECK(four.strings[0].letters() == "XXI");
  CHECK(four.strings[1].letters() == "XIX");
  CHECK(four.strings[2].letters() == "IXX");
  CHECK(four.strings[3].letters() == "YYI");

  CHECK_THROWS_AS(enumerate_pauli_strings(Sizing{10, 3, 1}, 2), ContractError);
}

TEST_CASE("Pauli enumeration invariants at every published size") {
  for (int m : {10, 20, 30, 50, 100, 150, 200, 250}) {
    for (int k : {2, 3}) {
      const Sizing s = compute_sizing(m, k);
      const auto a = enumerate_pauli_strings(s, k);
      REQUIRE(a.size() == static_cast<std::size_t>(m));
      std::set<std::string> distinct;
      for (const auto& p : a.strings) {
        CHECK(p.weight() == k);
        distinct.insert(p.letters());
        std::set<char> letters(p.letters().begin(), p.letters().end());
        letters.erase('I');
        CHECK(letters.size() == 1);
      }
      CHECK(distinct.size() == a.size());
      auto family = [](const PauliString& p) { return p.letters()[p.letters().find_first_not_of('I')]; };
      for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
          if (family(a.strings[i]) == family(a.strings[j])) CHECK(a.strings[i].commutes_with(a.strings[j]));
    }
  }
}

TEST_CASE("ansatz size") {
  for (auto [m, k, gates] : {std::tuple{10, 2, 25}, {250, 3, 730}, {20, 3, 61}, {250, 2, 715}}) {
    const Sizing s = compute_sizing(m, k);
    const Circuit c = build_hea(s);
    CHECK(c.gate_count() == static_cast<std::size_t>(gates));
    CHECK(hea_gate_count(s) == static_cast<std::size_t>(gates));
    CHECK(c.parameter_count() == 2 * s.n * s.p + 1);
    CHECK(c.n_qubits() == s.n);
  }
  // Small widths: no ring at n = 1, one CZ at n = 2.
  CHECK(build_hea(Sizing{3, 1, 3}).gate_count() == hea_gate_count(Sizing{3, 1, 3}));
  CHECK(build_hea(Sizing{3, 2, 1}).gate_count() == hea_gate_count(Sizing{3, 2, 1}));
}

TEST_CASE("alpha default") {
  PceConfig c;
  c.k = 3;
  CHECK(resolve_alpha(c, 9) == doctest::Approx(9.0));
  c.k = 2;
  CHECK(resolve_alpha(c, 9) == doctest::Approx(9.0));
  c.k = 1;
  CHECK(resolve_alpha(c, 9) == doctest::Approx(1.0));
  c.alpha_override = 2.5;
  CHECK(resolve_alpha(c, 9) == doctest::Approx(2.5));
}

TEST_CASE("sign decoding") {
  const std::vector<double> e{0.3, -0.2, 0.0, 1e-300, -0.0};
  const Bits b = decode_signs(e);
  CHECK(b == Bits{1, 0, 0, 1, 0});
}

TEST_CASE("loss against a direct evaluation") {
  std::mt19937_64 rng(3);
  const Graph g = oracle::erdos_renyi(7, 0.6, rng);
  const std::vector<double> ex{0.4, -0.1, 0.9, -0.7, 0.0, 0.25, -0.33};
  for (double reg : {0.0, 0.5}) {
    const double alpha = 3.0;
    double want = 0.0;
    for (const auto& e : g.edges()) want += e.w * std::tanh(alpha * ex[e.i]) * std::tanh(alpha * ex[e.j]);
    double mag = 0.0;
    for (double x : ex) mag += std::abs(std::tanh(alpha * x));
    want += reg * (-mag / 7.0);
    CHECK(pce_loss_from_expectations(g, ex, alpha, reg) == doctest::Approx(want).epsilon(1e-14));
  }
  CHECK_THROWS_AS(pce_loss_from_expectations(g, std::vector<double>(3, 0.0), 1.0, 0.0), ContractError);
}

TEST_CASE("loss from a state matches loss from its expectations") {
  std::mt19937_64 rng(4);
  const Graph g = oracle::erdos_renyi(10, 0.5, rng);
  PceConfig cfg;
  cfg.k = 2;
  const Sizing s = compute_sizing(10, 2);
  const auto a = enumerate_pauli_strings(s, 2);
  const Circuit c = build_hea(s);
  const auto params = oracle::random_params(static_cast<std::size_t>(c.parameter_count()), rng);
  const auto psi = apply_circuit(zero_state(s.n), c, params);
  const auto ex = pauli_expectations(psi, a);
  for (std::size_t i = 0; i < ex.size(); ++i) CHECK(ex[i] == doctest::Approx(expectation(psi, a.strings[i])));
  CHECK(pce_loss(g, a, psi, cfg) == doctest::Approx(pce_loss_from_expectations(g, ex, resolve_alpha(cfg, s.n), 0.0)));
  CHECK(std::abs(pce_loss(g, a, psi, cfg)) <= g.total_weight() + 1e-12);
}

TEST_CASE("bipartition of a single edge separates its endpoints") {
  Graph g(2);
  g.add_edge(0, 1, 1.0);
  PceConfig cfg;
  cfg.k = 1;
  const auto bp = bipartition_pce(g, cfg);
  CHECK(bp.sides[0] != bp.sides[1]);
  CHECK(bp.diagnostics.cut_value == doctest::Approx(1.0));
}

TEST_CASE("bipartition of an edgeless graph is repaired") {
  Graph g(5);
  const auto bp = bipartition_pce(g, PceConfig{});
  CHECK(is_two_sided(bp.sides));
  CHECK(bp.diagnostics.repaired);
  CHECK(bp.diagnostics.winning_restart == -1);
  CHECK(bp.diagnostics.evaluations == 0);
}

TEST_CASE("bipartition of a triangle cuts two edges") {
  Graph g(3);
  g.add_edge(0, 1, 1.0);
  g.add_edge(1, 2, 1.0);
  g.add_edge(0, 2, 1.0);
  PceConfig cfg;
  cfg.k = 1;
  cfg.restarts = 3;
  const auto bp = bipartition_pce(g, cfg);
  CHECK(cut_value(g, bp.sides) == doctest::Approx(2.0));
}

TEST_CASE("bipartition is deterministic and reports diagnostics") {
  std::mt19937_64 rng(5);
  const Graph g = oracle::erdos_renyi(12, 0.5, rng);
  PceConfig cfg;
  cfg.k = 2;
  cfg.restarts = 2;
  cfg.max_evals = 300;
  cfg.seed = 77;
  const auto a = bipartition_pce(g, cfg);
  const auto b = bipartition_pce(g, cfg);
  CHECK(a.sides == b.sides);
  CHECK(a.diagnostics.final_loss == b.diagnostics.final_loss);
  CHECK(a.diagnostics.evaluations <= 600);
  CHECK(a.diagnostics.evaluations > 0);
  CHECK(a.diagnostics.winning_restart >= 0);
  CHECK(a.diagnostics.cut_value == doctest::Approx(cut_value(g, a.sides)));
  CHECK(is_two_sided(a.sides));
}

TEST_CASE("bipartition rejects bad configuration") {
  Graph g(4);
  g.add_edge(0, 1, 1.0);
  PceConfig cfg;
  cfg.restarts = 0;
  CHECK_THROWS_AS(bipartition_pce(g, cfg), ContractError);
  cfg.restarts = 1;
  cfg.k = 5;
  CHECK_THROWS_AS(bipartition_pce(g, cfg), ContractError);
  CHECK_THROWS_AS(bipartition_pce(Graph(1), PceConfig{}), ContractError);
}

TEST_CASE("bipartition drives a pluggable minimizer") {
  Graph g(4);
  g.add_edge(0, 1, 1.0);
  g.add_edge(2, 3, 1.0);
  int calls = 0;
  Minimizer spy = [&](const Objective& obj, std::vector<double> x0, const MinimizeOptions& o) {
    ++calls;
    CHECK(obj.arity == x0.size());
    return minimize(obj, std::move(x0), o);
  };
  PceConfig cfg;
  cfg.k = 2;
  cfg.restarts = 3;
  (void)bipartition_pce(g, cfg, spy);
  CHECK(calls == 3);
}

// Unconstrained linear-approximation trust-region minimizer, following the
// structure of Powell's COBYLA: a simplex of n+1 interpolation points gives
// a linear model, the step is the model minimizer on the trust-region
// sphere, and simplex geometry is repaired before the resolution rho shrinks.
// The step radius grows after well-predicted steps and never falls below rho.

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "pcepart/optimize.hpp"

namespace pcepart {

namespace {

constexpr double kParSig = 0.25;   // minimum vertex-to-face distance, in units of rho
constexpr double kParEta = 2.1;    // maximum edge length, in units of rho
constexpr double kGamma = 0.5;     // geometry step length, in units of rho
constexpr double kDelta = 1.1;     // edge threshold when choosing a vertex to drop
constexpr double kAcceptRatio = 0.1;

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

class Cobyla {
 public:
  Cobyla(const Objective& obj, std::vector<double> x0, const MinimizeOptions& opts)
      : obj_(obj), opts_(opts), n_(x0.size()), base_(std::move(x0)) {}

  OptResult run();

 private:
  double eval(const std::vector<double>& x);
  double* dir(std::size_t j) { return &dirs_[j * n_]; }
  double* inv(std::size_t j) { return &simi_[j * n_]; }
  void switch_to_best_vertex();
  void replace_vertex(std::size_t j, const std::vector<double>& dx, double f);
  void gradient(std::vector<double>& g);

  const Objective& obj_;
  MinimizeOptions opts_;
  std::size_t n_;
  std::vector<double> base_;
  double f_base_ = 0.0;
  std::vector<double> dirs_;  // row j: displacement of vertex j from the base
  std::vector<double> simi_;  // row j: row j of the inverse of the displacement matrix
  std::vector<double> fvals_;
  int evals_ = 0;
  std::vector<double> best_x_;
  double best_f_ = std::numeric_limits<double>::infinity();
};

double Cobyla::eval(const std::vector<double>& x) {
  const double f = obj_.evaluate(x);
  ++evals_;
  if (!std::isfinite(f)) {
    std::ostringstream os;
    os.precision(17);
    os << "objective returned " << f << " at x = [";
    for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
    os << "]";
    throw NonFiniteObjective(os.str(), x);
  }
  if (f < best_f_) {
    best_f_ = f;
    best_x_ = x;
  }
  return f;
}

void Cobyla::switch_to_best_vertex() {
  std::size_t best = n_;
  double fbest = f_base_;
  for (std::size_t j = 0; j < n_; ++j) {
    if (fvals_[j] < fbest) {
      fbest = fvals_[j];
      best = j;
    }
  }
  if (best == n_) return;
  // New base is vertex `best`; the old base takes its slot.
  const std::vector<double> d(dir(best), dir(best) + n_);
  for (std::size_t i = 0; i < n_; ++i) base_[i] += d[i];
  std::swap(f_base_, fvals_[best]);
  for (std::size_t k = 0; k < n_; ++k) {
    double* dk = dir(k);
    if (k == best) {
      for (std::size_t i = 0; i < n_; ++i) dk[i] = -dk[i];
    } else {
      for (std::size_t i = 0; i < n_; ++i) dk[i] -= d[i];
    }
  }
  std::vector<double> row(n_, 0.0);
  for (std::size_t k = 0; k < n_; ++k) {
    const double* sk = inv(k);
    for (std::size_t i = 0; i < n_; ++i) row[i] -= sk[i];
  }
  std::copy(row.begin(), row.end(), inv(best));
}

void Cobyla::replace_vertex(std::size_t j, const std::vector<double>& dx, double f) {
  std::copy(dx.begin(), dx.end(), dir(j));
  fvals_[j] = f;
  double* sj = inv(j);
  const double pivot = dot(sj, dx.data(), n_);
  for (std::size_t i = 0; i < n_; ++i) sj[i] /= pivot;
  for (std::size_t k = 0; k < n_; ++k) {
    if (k == j) continue;
    double* sk = inv(k);
    const double t = dot(sk, dx.data(), n_);
    for (std::size_t i = 0; i < n_; ++i) sk[i] -= t * sj[i];
  }
}

void Cobyla::gradient(std::vector<double>& g) {
  std::fill(g.begin(), g.end(), 0.0);
  for (std::size_t j = 0; j < n_; ++j) {
    const double df = fvals_[j] - f_base_;
    const double* sj = inv(j);
    for (std::size_t i = 0; i < n_; ++i) g[i] += df * sj[i];
  }
}

OptResult Cobyla::run() {
  double rho = opts_.rho_begin;
  double delta = rho;  // trust radius; never below rho
  const double rho_end = std::min(opts_.tol, rho);

  f_base_ = eval(base_);
  dirs_.assign(n_ * n_, 0.0);
  simi_.assign(n_ * n_, 0.0);
  fvals_.assign(n_, 0.0);
  for (std::size_t j = 0; j < n_; ++j) {
    dir(j)[j] = rho;
    inv(j)[j] = 1.0 / rho;
    std::vector<double> x = base_;
    x[j] += rho;
    fvals_[j] = eval(x);
  }

  std::vector<double> g(n_), dx(n_), x(n_), veta(n_), vsig(n_), sigbar(n_);
  bool converged = false;
  bool fix_geometry = false;

  while (evals_ < opts_.budget) {
    switch_to_best_vertex();

    bool acceptable = true;
    for (std::size_t j = 0; j < n_; ++j) {
      veta[j] = std::sqrt(dot(dir(j), dir(j), n_));
      vsig[j] = 1.0 / std::sqrt(dot(inv(j), inv(j), n_));
      if (veta[j] > kParEta * delta || vsig[j] < kParSig * rho) acceptable = false;
    }
    gradient(g);

    if (!acceptable && fix_geometry) {
      // Move the worst vertex along the normal of its opposite face.
      std::size_t jdrop = n_;
      double worst = kParEta * delta;
      for (std::size_t j = 0; j < n_; ++j) {
        if (veta[j] > worst) {
          worst = veta[j];
          jdrop = j;
        }
      }
      if (jdrop == n_) {
        double smallest = kParSig * rho;
        for (std::size_t j = 0; j < n_; ++j) {
          if (vsig[j] < smallest) {
            smallest = vsig[j];
            jdrop = j;
          }
        }
      }
      const double* sj = inv(jdrop);
      const double len = kGamma * rho * vsig[jdrop];
      for (std::size_t i = 0; i < n_; ++i) dx[i] = len * sj[i];
      if (dot(g.data(), dx.data(), n_) > 0.0) {
        for (auto& v : dx) v = -v;
      }
      for (std::size_t i = 0; i < n_; ++i) x[i] = base_[i] + dx[i];
      const double f = eval(x);
      replace_vertex(jdrop, dx, f);
      continue;
    }

    const double gnorm = std::sqrt(dot(g.data(), g.data(), n_));
    bool reduce = true;
    if (gnorm > 0.0) {
      for (std::size_t i = 0; i < n_; ++i) dx[i] = -delta * g[i] / gnorm;
      const double predicted = delta * gnorm;
      for (std::size_t i = 0; i < n_; ++i) x[i] = base_[i] + dx[i];
      const double f = eval(x);
      const double actual = f_base_ - f;

      double ratio = actual <= 0.0 ? 1.0 : 0.0;
      std::size_t jdrop = n_;
      for (std::size_t j = 0; j < n_; ++j) {
        const double t = std::abs(dot(inv(j), dx.data(), n_));
        if (t > ratio) {
          jdrop = j;
          ratio = t;
        }
        sigbar[j] = t * vsig[j];
      }
      double edgmax = kDelta * delta;
      std::size_t far = n_;
      for (std::size_t j = 0; j < n_; ++j) {
        if (sigbar[j] >= kParSig * rho || sigbar[j] >= vsig[j]) {
          double t = veta[j];
          if (actual > 0.0) {
            t = 0.0;
            const double* dj = dir(j);
            for (std::size_t i = 0; i < n_; ++i) t += (dx[i] - dj[i]) * (dx[i] - dj[i]);
            t = std::sqrt(t);
          }
          if (t > edgmax) {
            far = j;
            edgmax = t;
          }
        }
      }
      if (far != n_) jdrop = far;
      if (jdrop != n_) replace_vertex(jdrop, dx, f);
      const double r = actual / predicted;
      const double step = delta;
      if (r <= kAcceptRatio) {
        delta *= 0.5;
      } else if (r <= 0.7) {
        delta = std::max(0.5 * delta, step);
      } else {
        delta = std::max(0.5 * delta, 2.0 * step);
      }
      if (delta <= 1.5 * rho) delta = rho;
      reduce = r <= kAcceptRatio && step <= rho;
    }

    if (!reduce) {
      fix_geometry = false;
      continue;
    }
    if (!acceptable) {
      fix_geometry = true;
      continue;
    }
    if (rho <= rho_end) {
      converged = true;
      break;
    }
    rho *= 0.5;
    if (rho <= 1.5 * rho_end) rho = rho_end;
    delta = std::max(0.5 * delta, rho);
    fix_geometry = false;
  }

  OptResult res;
  res.best_params = best_x_;
  res.best_value = best_f_;
  res.evaluations_used = evals_;
  res.converged = converged;
  return res;
}

}  // namespace

OptResult minimize(const Objective& obj, std::vector<double> x0, const MinimizeOptions& opts) {
  if (!obj.evaluate) throw ContractError("minimize: objective has no evaluate function");
  if (x0.size() != obj.arity) {
    throw ContractError("minimize: x0 has " + std::to_string(x0.size()) +
                        " entries, objective arity is " + std::to_string(obj.arity));
  }
  if (obj.arity == 0) throw ContractError("minimize: zero-arity objective");
  if (opts.budget < static_cast<int>(obj.arity) + 2) {
    throw ContractError("minimize: budget " + std::to_string(opts.budget) +
                        " is below arity + 2 = " + std::to_string(obj.arity + 2));
  }
  if (!(opts.tol > 0.0) || !(opts.rho_begin > 0.0)) {
    throw ContractError("minimize: tol and rho_begin must be positive");
  }
  return Cobyla(obj, std::move(x0), opts).run();
}

}  // namespace pcepart

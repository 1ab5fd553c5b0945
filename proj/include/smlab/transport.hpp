#pragma once

// Finitely supported probability measures on Z, optimal transport between
// them, and the Lipschitz-dual (Connes) LP. Every LP here is solved by one
// min-cost-flow routine (successive shortest paths, Bellman-Ford on the
// residual graph, edges scanned in a fixed order so optima are reproducible).

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "smlab/zline.hpp"

namespace smlab::transport {

using zline::ZMetric;

class ProbOnZ {
 public:
  /// Weights below 1e-15 are pruned; repeated sites, negative weights or a
  /// total off 1 by more than 1e-12 throw InvalidMeasure.
  static ProbOnZ from_pairs(std::vector<std::pair<int, double>> pairs);
  static ProbOnZ point_mass(int n);

  const std::vector<int>& sites() const { return sites_; }
  const std::vector<double>& weights() const { return weights_; }
  size_t size() const { return sites_.size(); }
  double mass_at(int n) const;
  /// sum_n rho_n f(n).
  template <class F>
  double expect(F&& f) const {
    double s = 0.0;
    for (size_t k = 0; k < sites_.size(); ++k) s += weights_[k] * f(sites_[k]);
    return s;
  }

 private:
  std::vector<int> sites_;  // ascending
  std::vector<double> weights_;
};

struct Coupling {
  std::vector<int> rows;  // sites of the first marginal
  std::vector<int> cols;  // sites of the second marginal
  Eigen::MatrixXd mu;

  double cost(const ZMetric& metric, double p = 1.0) const;
  /// max deviation of the marginals from (rho, omega).
  double marginal_defect(const ProbOnZ& rho, const ProbOnZ& omega) const;
};

struct TransportResult {
  double value = 0.0;
  Coupling coupling;
  /// Sites carrying the dual potential and its values there.
  std::vector<int> potential_sites;
  std::vector<double> dual_potential;
  double dual_objective = 0.0;
};

/// Usual metric |m - n| on lo..hi.
ZMetric usual_metric(int lo, int hi);

/// W_p by the transportation LP with ground cost d^p. For p = 1 the dual
/// potential is the 1-Lipschitz c-transform on the union of the supports,
/// zero at the smallest support site; for p > 1 it is the d^p-concave
/// Kantorovich potential.
TransportResult wasserstein_p(const ProbOnZ& rho, const ProbOnZ& omega, const ZMetric& metric, double p);

/// sum_n delta_{n+1} |F_rho(n) - F_omega(n)| on a path-gap metric.
double w1_line_oracle(const ProbOnZ& rho, const ProbOnZ& omega, const ZMetric& metric);

enum class Constraints {
  AllPairs,     // |a_m - a_n| <= d(m, n) for all pairs of support sites
  Consecutive,  // |a_n - a_{n+1}| <= d(n, n+1) on every site between the supports
};

/// sup sum_n (rho_n - omega_n) a_n over the constraint polytope, solved as a
/// transshipment problem on the constraint graph; the optimizer a is read off
/// the final node potentials and normalized to 0 at the smallest site.
TransportResult connes_dual_lp(const ProbOnZ& rho, const ProbOnZ& omega, const ZMetric& metric,
                               Constraints constraints = Constraints::AllPairs);

/// mu_{m,n} = r_n delta_{m,n} + omega+_m omega-_n / C with
/// r_n = min(rho_j,n, rho_n) for |n| <= N and 0 beyond.
Coupling dobrushin_coupling(const ProbOnZ& rho_j, const ProbOnZ& rho, int N);

/// sum_n (rho_j,n + rho_n - 2 r_n) |n|, the bound on the coupling's cost.
double dobrushin_cost_bound(const ProbOnZ& rho_j, const ProbOnZ& rho, int N);

/// Smallest N with sum_{|n| > N} |n| omega_n <= eps for every member. With
/// max_radius set, throws NotTightInWindow if that N exceeds it.
int d_tight_radius(const std::vector<ProbOnZ>& family, double eps, std::optional<int> max_radius = std::nullopt);

struct MomentReport {
  double w1 = 0.0;
  double expectation_gap = 0.0;  // |rho(a) - omega(a)|
  double weak_bound = 0.0;       // 2 ||a|| W1
  double moment_gap = 0.0;       // |sum (rho_n - omega_n) |n||
  double weak_slack() const { return weak_bound - expectation_gap; }
  double moment_slack() const { return w1 - moment_gap; }
};

/// Both first-moment estimates under the usual metric; a is evaluated at the
/// support sites.
template <class F>
MomentReport moment_bounds_check(const ProbOnZ& rho, const ProbOnZ& omega, F&& a, double sup_norm_a);

MomentReport moment_bounds_from_values(const ProbOnZ& rho, const ProbOnZ& omega, double rho_a, double omega_a,
                                       double sup_norm_a);

template <class F>
MomentReport moment_bounds_check(const ProbOnZ& rho, const ProbOnZ& omega, F&& a, double sup_norm_a) {
  return moment_bounds_from_values(rho, omega, rho.expect(a), omega.expect(a), sup_norm_a);
}

}  // namespace smlab::transport

#include "smlab/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace smlab::transport {

namespace {

constexpr double kPrune = 1e-15;
constexpr double kResidual = 1e-15;
constexpr double kUnbounded = 1e300;

// Min-cost flow by successive shortest paths. Residual shortest paths use
// Bellman-Ford with edges relaxed in insertion order, which fixes the
// tie-breaking between equal-cost optima.
class FlowNetwork {
 public:
  explicit FlowNetwork(int nodes) : nodes_(nodes) {}

  int add_edge(int u, int v, double cap, double cost) {
    const int id = static_cast<int>(edges_.size());
    edges_.push_back({u, v, cap, cost});
    edges_.push_back({v, u, 0.0, -cost});
    return id;
  }

  double flow(int id) const { return edges_[id + 1].cap; }

  /// Pushes up to `required` units from s to t; returns the total cost.
  double run(int s, int t, double required) {
    double total = 0.0;
    double remaining = required;
    std::vector<double> dist;
    std::vector<int> pred;
    while (remaining > 1e-14) {
      shortest_paths(s, dist, pred);
      if (pred[t] < 0) break;
      double push = remaining;
      for (int v = t; v != s; v = edges_[pred[v]].from) push = std::min(push, edges_[pred[v]].cap);
      if (push <= kResidual) break;
      for (int v = t; v != s; v = edges_[pred[v]].from) {
        edges_[pred[v]].cap -= push;
        edges_[pred[v] ^ 1].cap += push;
      }
      total += push * dist[t];
      remaining -= push;
    }
    return total;
  }

  /// Feasible node potentials of the residual graph restricted to `nodes`:
  /// pi_v <= pi_u + cost for every residual edge u -> v inside the set.
  std::vector<double> potentials(const std::vector<int>& nodes) const {
    std::vector<char> inside(static_cast<size_t>(nodes_), 0);
    for (int v : nodes) inside[v] = 1;
    std::vector<double> pi(static_cast<size_t>(nodes_), 0.0);
    for (int round = 0; round < nodes_; ++round) {
      bool changed = false;
      for (const auto& e : edges_) {
        if (e.cap <= kResidual || !inside[e.from] || !inside[e.to]) continue;
        const double cand = pi[e.from] + e.cost;
        if (cand < pi[e.to] - 1e-13 * (1.0 + std::abs(cand))) {
          pi[e.to] = cand;
          changed = true;
        }
      }
      if (!changed) break;
    }
    return pi;
  }

 private:
  struct Edge {
    int from, to;
    double cap, cost;
  };

  void shortest_paths(int s, std::vector<double>& dist, std::vector<int>& pred) const {
    dist.assign(static_cast<size_t>(nodes_), std::numeric_limits<double>::infinity());
    pred.assign(static_cast<size_t>(nodes_), -1);
    dist[s] = 0.0;
    for (int round = 0; round < nodes_; ++round) {
      bool changed = false;
      for (size_t id = 0; id < edges_.size(); ++id) {
        const auto& e = edges_[id];
        if (e.cap <= kResidual || !std::isfinite(dist[e.from])) continue;
        const double cand = dist[e.from] + e.cost;
        if (cand < dist[e.to] - 1e-13 * (1.0 + std::abs(cand))) {
          dist[e.to] = cand;
          pred[e.to] = static_cast<int>(id);
          changed = true;
        }
      }
      if (!changed) break;
    }
  }

  int nodes_;
  std::vector<Edge> edges_;
};

void require_nonempty(const ProbOnZ& rho, const ProbOnZ& omega) {
  if (rho.size() == 0 || omega.size() == 0) fail(ErrorCode::EmptySupport, "measure with empty support");
}

std::vector<int> union_sites(const ProbOnZ& rho, const ProbOnZ& omega) {
  std::vector<int> out;
  std::set_union(rho.sites().begin(), rho.sites().end(), omega.sites().begin(), omega.sites().end(),
                 std::back_inserter(out));
  return out;
}

}  // namespace

ProbOnZ ProbOnZ::from_pairs(std::vector<std::pair<int, double>> pairs) {
  std::sort(pairs.begin(), pairs.end());
  ProbOnZ p;
  double total = 0.0;
  for (size_t k = 0; k < pairs.size(); ++k) {
    const auto [site, w] = pairs[k];
    if (k > 0 && pairs[k - 1].first == site) fail(ErrorCode::InvalidMeasure, "repeated support site");
    if (!(w >= 0.0) || !std::isfinite(w)) fail(ErrorCode::InvalidMeasure, "weights must be finite and >= 0");
    total += w;
    if (w < kPrune) continue;
    p.sites_.push_back(site);
    p.weights_.push_back(w);
  }
  if (std::abs(total - 1.0) > 1e-12) fail(ErrorCode::InvalidMeasure, "weights must sum to 1");
  return p;
}

ProbOnZ ProbOnZ::point_mass(int n) { return from_pairs({{n, 1.0}}); }

double ProbOnZ::mass_at(int n) const {
  const auto it = std::lower_bound(sites_.begin(), sites_.end(), n);
  return it != sites_.end() && *it == n ? weights_[static_cast<size_t>(it - sites_.begin())] : 0.0;
}

double Coupling::cost(const ZMetric& metric, double p) const {
  double s = 0.0;
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j)
      if (mu(i, j) != 0.0) s += mu(i, j) * std::pow(metric(rows[i], cols[j]), p);
  return s;
}

double Coupling::marginal_defect(const ProbOnZ& rho, const ProbOnZ& omega) const {
  double worst = 0.0;
  for (size_t i = 0; i < rows.size(); ++i) worst = std::max(worst, std::abs(mu.row(i).sum() - rho.mass_at(rows[i])));
  for (size_t j = 0; j < cols.size(); ++j) worst = std::max(worst, std::abs(mu.col(j).sum() - omega.mass_at(cols[j])));
  // Mass of rho or omega sitting outside the coupling's index sets.
  for (size_t k = 0; k < rho.size(); ++k)
    if (std::find(rows.begin(), rows.end(), rho.sites()[k]) == rows.end()) worst = std::max(worst, rho.weights()[k]);
  for (size_t k = 0; k < omega.size(); ++k)
    if (std::find(cols.begin(), cols.end(), omega.sites()[k]) == cols.end())
      worst = std::max(worst, omega.weights()[k]);
  return worst;
}

ZMetric usual_metric(int lo, int hi) {
  return ZMetric::path_gaps(lo, std::vector<double>(static_cast<size_t>(std::max(hi - lo, 1)), 1.0));
}

TransportResult wasserstein_p(const ProbOnZ& rho, const ProbOnZ& omega, const ZMetric& metric, double p) {
  require_nonempty(rho, omega);
  if (!(p >= 1.0)) fail(ErrorCode::ConfigInvalid, "Wasserstein order must be >= 1");
  const int rows = static_cast<int>(rho.size());
  const int cols = static_cast<int>(omega.size());
  const int s = 0;
  const int t = rows + cols + 1;
  FlowNetwork net(rows + cols + 2);

  Eigen::MatrixXd cost(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) cost(i, j) = std::pow(metric(rho.sites()[i], omega.sites()[j]), p);

  for (int i = 0; i < rows; ++i) net.add_edge(s, 1 + i, rho.weights()[i], 0.0);
  std::vector<int> arc(static_cast<size_t>(rows) * cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) arc[static_cast<size_t>(i) * cols + j] = net.add_edge(1 + i, 1 + rows + j, kUnbounded, cost(i, j));
  for (int j = 0; j < cols; ++j) net.add_edge(1 + rows + j, t, omega.weights()[j], 0.0);

  double supply = 0.0;
  for (double w : rho.weights()) supply += w;
  double demand = 0.0;
  for (double w : omega.weights()) demand += w;
  net.run(s, t, std::min(supply, demand));

  TransportResult out;
  out.coupling.rows = rho.sites();
  out.coupling.cols = omega.sites();
  out.coupling.mu = Eigen::MatrixXd::Zero(rows, cols);
  double primal = 0.0;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const double f = net.flow(arc[static_cast<size_t>(i) * cols + j]);
      out.coupling.mu(i, j) = f;
      primal += f * cost(i, j);
    }
  out.value = std::pow(primal, 1.0 / p);

  // Kantorovich pair g_i - f_j <= c_ij from the residual potentials.
  std::vector<int> inner;
  for (int v = 1; v <= rows + cols; ++v) inner.push_back(v);
  const std::vector<double> pi = net.potentials(inner);
  std::vector<double> g(static_cast<size_t>(rows)), f(static_cast<size_t>(cols));
  for (int i = 0; i < rows; ++i) g[i] = -pi[1 + i];
  for (int j = 0; j < cols; ++j) f[j] = -pi[1 + rows + j];

  // c-transform a(x) = min_j f_j + c(x, y_j) on the union of supports.
  out.potential_sites = union_sites(rho, omega);
  out.dual_potential.resize(out.potential_sites.size());
  for (size_t k = 0; k < out.potential_sites.size(); ++k) {
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < cols; ++j)
      best = std::min(best, f[j] + std::pow(metric(out.potential_sites[k], omega.sites()[j]), p));
    out.dual_potential[k] = best;
  }
  const double shift = out.dual_potential.front();
  for (double& a : out.dual_potential) a -= shift;

  if (p == 1.0) {
    auto a_at = [&](int n) {
      const auto it = std::lower_bound(out.potential_sites.begin(), out.potential_sites.end(), n);
      return out.dual_potential[static_cast<size_t>(it - out.potential_sites.begin())];
    };
    out.dual_objective = rho.expect(a_at) - omega.expect(a_at);
  } else {
    double d = 0.0;
    for (int i = 0; i < rows; ++i) d += rho.weights()[i] * g[i];
    for (int j = 0; j < cols; ++j) d -= omega.weights()[j] * f[j];
    out.dual_objective = d;  // compare against value^p
  }
  return out;
}

double w1_line_oracle(const ProbOnZ& rho, const ProbOnZ& omega, const ZMetric& metric) {
  if (metric.kind() != ZMetric::Kind::PathGaps) fail(ErrorCode::InvalidMetric, "line oracle needs a path-gap metric");
  require_nonempty(rho, omega);
  const std::vector<int> sites = union_sites(rho, omega);
  double fr = 0.0, fo = 0.0, total = 0.0;
  for (int n = sites.front(); n < sites.back(); ++n) {
    fr += rho.mass_at(n);
    fo += omega.mass_at(n);
    total += metric.gap(n + 1) * std::abs(fr - fo);
  }
  return total;
}

TransportResult connes_dual_lp(const ProbOnZ& rho, const ProbOnZ& omega, const ZMetric& metric,
                               Constraints constraints) {
  require_nonempty(rho, omega);
  std::vector<int> sites = union_sites(rho, omega);
  if (constraints == Constraints::Consecutive) {
    const int lo = sites.front();
    const int hi = sites.back();
    sites.clear();
    for (int n = lo; n <= hi; ++n) sites.push_back(n);
  }
  const int m = static_cast<int>(sites.size());
  const int s = 0;
  const int t = m + 1;
  FlowNetwork net(m + 2);

  std::vector<double> b(static_cast<size_t>(m));
  double supply = 0.0;
  for (int k = 0; k < m; ++k) {
    b[k] = rho.mass_at(sites[k]) - omega.mass_at(sites[k]);
    if (b[k] > 0.0) {
      net.add_edge(s, 1 + k, b[k], 0.0);
      supply += b[k];
    } else if (b[k] < 0.0) {
      net.add_edge(1 + k, t, -b[k], 0.0);
    }
  }
  if (constraints == Constraints::AllPairs) {
    for (int u = 0; u < m; ++u)
      for (int v = 0; v < m; ++v)
        if (u != v) net.add_edge(1 + u, 1 + v, kUnbounded, metric(sites[u], sites[v]));
  } else {
    for (int u = 0; u + 1 < m; ++u) {
      const double d = metric(sites[u], sites[u + 1]);
      net.add_edge(1 + u, 2 + u, kUnbounded, d);
      net.add_edge(2 + u, 1 + u, kUnbounded, d);
    }
  }
  const double flow_cost = net.run(s, t, supply);

  std::vector<int> inner;
  for (int v = 1; v <= m; ++v) inner.push_back(v);
  const std::vector<double> pi = net.potentials(inner);

  TransportResult out;
  out.potential_sites = sites;
  out.dual_potential.resize(static_cast<size_t>(m));
  for (int k = 0; k < m; ++k) out.dual_potential[k] = pi[1] - pi[1 + k];  // a = -pi, a(first) = 0
  double value = 0.0;
  for (int k = 0; k < m; ++k) value += b[k] * out.dual_potential[k];
  out.value = value;
  out.dual_objective = flow_cost;  // the transshipment (primal) optimum
  return out;
}

Coupling dobrushin_coupling(const ProbOnZ& rho_j, const ProbOnZ& rho, int N) {
  require_nonempty(rho_j, rho);
  Coupling c;
  c.rows = rho_j.sites();
  c.cols = rho.sites();
  const int rows = static_cast<int>(c.rows.size());
  const int cols = static_cast<int>(c.cols.size());
  c.mu = Eigen::MatrixXd::Zero(rows, cols);

  auto r_at = [&](int n) { return std::abs(n) <= N ? std::min(rho_j.mass_at(n), rho.mass_at(n)) : 0.0; };
  std::vector<double> plus(static_cast<size_t>(rows)), minus(static_cast<size_t>(cols));
  double C = 0.0;
  for (int i = 0; i < rows; ++i) {
    plus[i] = rho_j.weights()[i] - r_at(c.rows[i]);
    C += plus[i];
  }
  for (int j = 0; j < cols; ++j) minus[j] = rho.weights()[j] - r_at(c.cols[j]);

  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      double v = c.rows[i] == c.cols[j] ? r_at(c.rows[i]) : 0.0;
      if (C > kPrune) v += plus[i] * minus[j] / C;
      c.mu(i, j) = v;
    }
  return c;
}

double dobrushin_cost_bound(const ProbOnZ& rho_j, const ProbOnZ& rho, int N) {
  double s = 0.0;
  for (int n : union_sites(rho_j, rho)) {
    const double r = std::abs(n) <= N ? std::min(rho_j.mass_at(n), rho.mass_at(n)) : 0.0;
    s += (rho_j.mass_at(n) + rho.mass_at(n) - 2.0 * r) * std::abs(n);
  }
  return s;
}

int d_tight_radius(const std::vector<ProbOnZ>& family, double eps, std::optional<int> max_radius) {
  if (!(eps > 0.0)) fail(ErrorCode::ConfigInvalid, "tightness threshold must be > 0");
  int radius = 0;
  for (const auto& w : family) {
    // Tail moment as a function of N, scanning outward until it drops below eps.
    int extent = 0;
    for (int n : w.sites()) extent = std::max(extent, std::abs(n));
    int N = 0;
    for (; N < extent; ++N) {
      const double tail = w.expect([N](int n) { return std::abs(n) > N ? std::abs(static_cast<double>(n)) : 0.0; });
      if (tail <= eps) break;
    }
    radius = std::max(radius, N);
  }
  if (max_radius && radius > *max_radius)
    fail(ErrorCode::NotTightInWindow, "tightness radius " + std::to_string(radius) + " exceeds the window");
  return radius;
}

MomentReport moment_bounds_from_values(const ProbOnZ& rho, const ProbOnZ& omega, double rho_a, double omega_a,
                                       double sup_norm_a) {
  require_nonempty(rho, omega);
  const std::vector<int> sites = union_sites(rho, omega);
  MomentReport r;
  r.w1 = wasserstein_p(rho, omega, usual_metric(sites.front(), sites.back()), 1.0).value;
  r.expectation_gap = std::abs(rho_a - omega_a);
  r.weak_bound = 2.0 * sup_norm_a * r.w1;
  auto absn = [](int n) { return std::abs(static_cast<double>(n)); };
  r.moment_gap = std::abs(rho.expect(absn) - omega.expect(absn));
  return r;
}

}  // namespace smlab::transport

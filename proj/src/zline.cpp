#include "smlab/zline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace smlab::zline {

Window::Window(int half_width) : n_(half_width) {
  if (half_width < 2) fail(ErrorCode::ConfigInvalid, "window half-width must be >= 2");
}

int Window::slot(int n) const {
  if (!contains(n)) fail(ErrorCode::OutOfWindow, "site " + std::to_string(n) + " outside window");
  return n + n_;
}

ZMetric ZMetric::path_gaps(int lo, std::vector<double> gaps) {
  if (gaps.empty()) fail(ErrorCode::InvalidMetric, "path metric needs at least one gap");
  for (double g : gaps)
    if (!(g > 0.0) || !std::isfinite(g)) fail(ErrorCode::InvalidMetric, "path gaps must be positive and finite");
  ZMetric m;
  m.kind_ = Kind::PathGaps;
  m.lo_ = lo;
  m.prefix_.assign(gaps.size() + 1, 0.0);
  for (size_t k = 0; k < gaps.size(); ++k) m.prefix_[k + 1] = m.prefix_[k] + gaps[k];
  m.values_ = std::move(gaps);
  return m;
}

ZMetric ZMetric::path_gaps(int lo, int hi, const std::function<double(int)>& gap) {
  std::vector<double> gaps;
  for (int n = lo + 1; n <= hi; ++n) gaps.push_back(gap(n));
  return path_gaps(lo, std::move(gaps));
}

ZMetric ZMetric::shift_invariant(std::vector<double> profile) {
  if (profile.size() < 2 || profile[0] != 0.0)
    fail(ErrorCode::InvalidMetric, "shift-invariant profile needs d_0 = 0 and at least d_1");
  for (size_t j = 1; j < profile.size(); ++j)
    if (!(profile[j] > 0.0) || !std::isfinite(profile[j]))
      fail(ErrorCode::InvalidMetric, "profile entries d_j (j >= 1) must be positive");
  const size_t jmax = profile.size() - 1;
  // d_j <= d_j' + d_j'' whenever j <= j' + j''.
  for (size_t j = 1; j <= jmax; ++j)
    for (size_t a = 1; a <= jmax; ++a)
      for (size_t b = a; b <= jmax; ++b)
        if (j <= a + b && profile[j] > profile[a] + profile[b] + 1e-12)
          fail(ErrorCode::InvalidMetric, "profile is not subadditive at j = " + std::to_string(j));
  ZMetric m;
  m.kind_ = Kind::ShiftInvariant;
  m.values_ = std::move(profile);
  return m;
}

ZMetric ZMetric::tanh_metric(int jmax) {
  std::vector<double> profile(static_cast<size_t>(jmax) + 1);
  for (int j = 0; j <= jmax; ++j) profile[j] = std::tanh(static_cast<double>(j));
  return shift_invariant(std::move(profile));
}

ZMetric ZMetric::table(int lo, std::vector<std::vector<double>> rows) {
  const size_t n = rows.size();
  if (n < 2) fail(ErrorCode::InvalidMetric, "table metric needs at least two sites");
  for (const auto& r : rows)
    if (r.size() != n) fail(ErrorCode::InvalidMetric, "table metric must be square");
  for (size_t i = 0; i < n; ++i) {
    if (rows[i][i] != 0.0) fail(ErrorCode::InvalidMetric, "table diagonal must vanish");
    for (size_t j = 0; j < n; ++j) {
      if (rows[i][j] != rows[j][i]) fail(ErrorCode::InvalidMetric, "table must be symmetric");
      if (i != j && !(rows[i][j] > 0.0)) fail(ErrorCode::InvalidMetric, "off-diagonal distances must be positive");
    }
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k)
        if (rows[i][k] > rows[i][j] + rows[j][k] + 1e-12)
          fail(ErrorCode::InvalidMetric, "table violates the triangle inequality");
  ZMetric m;
  m.kind_ = Kind::Table;
  m.lo_ = lo;
  m.table_size_ = static_cast<int>(n);
  for (const auto& r : rows) m.values_.insert(m.values_.end(), r.begin(), r.end());
  return m;
}

bool ZMetric::covers(int m, int n) const {
  switch (kind_) {
    case Kind::PathGaps: {
      const int hi = lo_ + static_cast<int>(values_.size());
      return m >= lo_ && m <= hi && n >= lo_ && n <= hi;
    }
    case Kind::ShiftInvariant:
      return static_cast<size_t>(std::abs(m - n)) < values_.size();
    case Kind::Table:
      return m >= lo_ && n >= lo_ && m < lo_ + table_size_ && n < lo_ + table_size_;
  }
  return false;
}

double ZMetric::operator()(int m, int n) const {
  if (!covers(m, n))
    fail(ErrorCode::OutOfWindow, "metric undefined for pair (" + std::to_string(m) + ", " + std::to_string(n) + ")");
  switch (kind_) {
    case Kind::PathGaps: return std::abs(prefix_[n - lo_] - prefix_[m - lo_]);
    case Kind::ShiftInvariant: return values_[static_cast<size_t>(std::abs(m - n))];
    case Kind::Table: return values_[static_cast<size_t>(m - lo_) * table_size_ + (n - lo_)];
  }
  return 0.0;
}

double ZMetric::diameter_bound() const {
  return values_.empty() ? 0.0 : *std::max_element(values_.begin(), values_.end());
}

WeightSeq default_weights(const ZMetric& metric, const Window& window) {
  WeightSeq w;
  w.lo = window.lo();
  w.c.resize(static_cast<size_t>(window.size()));
  for (int n = window.lo(); n <= window.hi(); ++n) {
    // The leftmost site has no gap inside the window; borrow its neighbour's.
    const int g = n == window.lo() ? n + 1 : n;
    const double delta = metric.gap(g);
    w.c[static_cast<size_t>(n - w.lo)] = std::max(1.0, std::abs(static_cast<double>(n))) / std::min(delta, 1.0);
  }
  // Monotone outward from the origin.
  for (int n = 1; n <= window.hi(); ++n) {
    auto& cur = w.c[static_cast<size_t>(n - w.lo)];
    cur = std::max(cur, w.c[static_cast<size_t>(n - 1 - w.lo)]);
  }
  for (int n = -1; n >= window.lo(); --n) {
    auto& cur = w.c[static_cast<size_t>(n - w.lo)];
    cur = std::max(cur, w.c[static_cast<size_t>(n + 1 - w.lo)]);
  }
  return w;
}

void validate_weights(const WeightSeq& weights, const ZMetric& metric, const Window& window) {
  if (weights.lo != window.lo() || weights.c.size() != static_cast<size_t>(window.size()))
    fail(ErrorCode::WeightViolation, "weights do not cover the window");
  for (int n = window.lo(); n <= window.hi(); ++n) {
    const double c = weights.at(n);
    if (!(c > 0.0)) fail(ErrorCode::WeightViolation, "weights must be positive");
    if (n > window.lo() && c * metric.gap(n) < 1.0 - 1e-12)
      fail(ErrorCode::WeightViolation, "c_n * delta_n < 1 at n = " + std::to_string(n));
    if (n > 0 && c < weights.at(n - 1)) fail(ErrorCode::WeightViolation, "weights must grow toward the right edge");
    if (n < 0 && c < weights.at(n + 1)) fail(ErrorCode::WeightViolation, "weights must grow toward the left edge");
  }
}

double path_metric(int m, int n, const ZMetric& metric) {
  if (!metric.covers(m, n)) fail(ErrorCode::OutOfWindow, "path_metric endpoints outside the metric's range");
  const int a = std::min(m, n);
  const int b = std::max(m, n);
  double sum = 0.0;
  for (int k = a + 1; k <= b; ++k) sum += metric.gap(k);
  return sum;
}

namespace {

double x_weight(const WeightSeq& w, const Window& window, int n, int r) {
  // c_{n+r} is clamped at the right edge of the window.
  return w.at(n) * w.at(std::min(n + r, window.hi()));
}

}  // namespace

TruncatedOperator build_dirac_lambda(const ZMetric& metric, const Window& window, const WeightSeq& weights,
                                     double lambda) {
  if (lambda == 0.0) fail(ErrorCode::ZeroLambda, "D_lambda needs lambda != 0");
  validate_weights(weights, metric, window);

  const int sites = window.size();
  // (nabla f)_n = (f_n - f_{n-1}) / (i delta_n); row -N is dropped.
  CMatrix nabla = CMatrix::Zero(sites, sites);
  for (int n = window.lo() + 1; n <= window.hi(); ++n) {
    const Complex coef = 1.0 / (kI * metric.gap(n));
    nabla(window.slot(n), window.slot(n)) += coef;
    nabla(window.slot(n), window.slot(n - 1)) -= coef;
  }
  const CMatrix up = (spin::sigma1() + kI * spin::sigma2()) / 2.0;    // |+><-|
  const CMatrix down = (spin::sigma1() - kI * spin::sigma2()) / 2.0;  // |-><+|
  CMatrix d = kron(nabla, up) + kron(CMatrix(nabla.adjoint()), down);
  for (int n = window.lo(); n <= window.hi(); ++n) {
    const double x = lambda * x_weight(weights, window, n, 1);
    const int s = window.slot(n);
    d(2 * s, 2 * s) += x;
    d(2 * s + 1, 2 * s + 1) -= x;
  }
  return {std::move(d), {{"site", sites, window.lo()}, {"spin", 2, 0}}};
}

double resolvent_bound_ratio(const ZMetric& metric, const Window& window, const WeightSeq& weights) {
  double worst = 0.0;
  for (int n = window.lo() + 1; n < window.hi(); ++n) {
    const double cc = weights.at(n) * weights.at(n + 1);
    const double delta = metric.gap(n);
    const double lhs = 1.0 / ((1.0 + cc * cc) * delta * delta);  // |i - cc|^2 = 1 + cc^2
    const double c_next = weights.at(n + 1);
    worst = std::max(worst, lhs * c_next * c_next);
  }
  return worst;
}

namespace {

void require_window_sequence(const Sequence& a, const Window& window) {
  if (a.size() != static_cast<size_t>(window.size()))
    fail(ErrorCode::ShapeMismatch, "sequence length does not match the window");
}

}  // namespace

double lipschitz_seminorm_consecutive(const Sequence& a, const ZMetric& metric, const Window& window) {
  require_window_sequence(a, window);
  double sup = 0.0;
  for (int n = window.lo(); n < window.hi(); ++n) {
    const double diff = std::abs(a[window.slot(n)] - a[window.slot(n + 1)]);
    sup = std::max(sup, diff / metric(n, n + 1));
  }
  return sup;
}

double lipschitz_seminorm_allpairs(const Sequence& a, const ZMetric& metric, const Window& window) {
  require_window_sequence(a, window);
  double sup = 0.0;
  for (int m = window.lo(); m <= window.hi(); ++m)
    for (int n = m + 1; n <= window.hi(); ++n)
      sup = std::max(sup, std::abs(a[window.slot(m)] - a[window.slot(n)]) / metric(m, n));
  return sup;
}

TruncatedOperator build_dirac_K(const ZMetric& metric, const Window& window, int rmax, double lambda) {
  if (lambda == 0.0) fail(ErrorCode::ZeroLambda, "D_K needs lambda != 0");
  if (rmax < 1 || rmax > 2 * window.half_width())
    fail(ErrorCode::RangeTooLarge, "rmax must lie in 1..2N");
  const WeightSeq weights = default_weights(metric, window);

  const int sites = window.size();
  const int dim = sites * rmax;
  auto idx = [&](int n, int r) { return window.slot(n) * rmax + (r - 1); };

  // (nabla f)_{n,r} = (f_{n,r} - f_{n-r,r}) / d(n, n-r); rows with n - r
  // outside the window are dropped.
  CMatrix nabla = CMatrix::Zero(dim, dim);
  for (int n = window.lo(); n <= window.hi(); ++n)
    for (int r = 1; r <= rmax; ++r) {
      if (!window.contains(n - r)) continue;
      const double inv = 1.0 / metric(n, n - r);
      nabla(idx(n, r), idx(n, r)) += inv;
      nabla(idx(n, r), idx(n - r, r)) -= inv;
    }

  const CMatrix p = (spin::gamma(1) + kI * spin::gamma(2)) / 2.0;
  const CMatrix p_adj = (spin::gamma(1) - kI * spin::gamma(2)) / 2.0;
  CMatrix d = kron(nabla, p) + kron(CMatrix(nabla.adjoint()), p_adj);
  const CMatrix g3 = spin::gamma(3);
  const CMatrix g4 = spin::gamma(4);
  for (int n = window.lo(); n <= window.hi(); ++n)
    for (int r = 1; r <= rmax; ++r) {
      const int b = 4 * idx(n, r);
      d.block(b, b, 4, 4) += lambda * (x_weight(weights, window, n, r) * g3 + static_cast<double>(r) * g4);
    }
  return {std::move(d), {{"site", sites, window.lo()}, {"range", rmax, 1}, {"spin", 4, 0}}};
}

CMatrix multiplication_operator(const Sequence& a, const TruncatedOperator& op) {
  if (op.layout.empty() || op.layout.front().name != "site")
    fail(ErrorCode::BadLayout, "operator has no outer site factor");
  const int sites = op.layout.front().dim;
  if (a.size() != static_cast<size_t>(sites)) fail(ErrorCode::ShapeMismatch, "sequence does not match site factor");
  const int inner = op.dim() / sites;
  CMatrix m = CMatrix::Zero(op.dim(), op.dim());
  for (int s = 0; s < sites; ++s)
    for (int k = 0; k < inner; ++k) m(s * inner + k, s * inner + k) = a[s];
  return m;
}

Sequence ball_witness(const ZMetric& metric, const Window& window, int ramp, WitnessVariant variant) {
  if (ramp < 1) fail(ErrorCode::ConfigInvalid, "witness ramp must be >= 1");
  if (window.hi() < 2 * ramp + 1)
    fail(ErrorCode::WindowTooSmall, "window must reach 2N + 1 to hold the witness");
  Sequence a(static_cast<size_t>(window.size()), 0.0);
  if (variant == WitnessVariant::Path) {
    double height = 0.0;
    for (int n = 1; n <= ramp; ++n) {
      height += metric.gap(n);
      a[window.slot(n)] = height;
    }
    double down = 0.0;
    for (int n = ramp + 1; n <= window.hi(); ++n) {
      down += metric.gap(n);
      a[window.slot(n)] = std::max(height - down, 0.0);
    }
  } else {
    for (int n = 1; n <= ramp; ++n) a[window.slot(n)] = metric(0, n);
    const double height = metric(0, ramp);
    for (int n = ramp + 1; n <= window.hi(); ++n) a[window.slot(n)] = std::max(height - metric(ramp, n), 0.0);
  }
  return a;
}

double sup_norm(const Sequence& a) {
  double s = 0.0;
  for (double x : a) s = std::max(s, std::abs(x));
  return s;
}

std::vector<double> sorted_abs_spectrum(const TruncatedOperator& op) {
  const RVector ev = hermitian_eigenvalues(op.matrix);
  std::vector<double> out(static_cast<size_t>(ev.size()));
  for (Eigen::Index i = 0; i < ev.size(); ++i) out[static_cast<size_t>(i)] = std::abs(ev(i));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace smlab::zline

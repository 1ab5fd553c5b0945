#pragma once

// Metrics on the integers and the Dirac operators over c0(Z) built from them:
// the nearest-neighbour operator D_lambda on l2(Z) (x) C^2 and the all-ranges
// operator D_K on l2(Z x {1..rmax}) (x) C^4, both truncated to a window -N..N
// with open boundary (difference terms that leave the window are dropped).

#include <functional>
#include <vector>

#include "smlab/operator_core.hpp"

namespace smlab::zline {

class Window {
 public:
  explicit Window(int half_width);

  int half_width() const { return n_; }
  int lo() const { return -n_; }
  int hi() const { return n_; }
  int size() const { return 2 * n_ + 1; }
  bool contains(int n) const { return n >= -n_ && n <= n_; }
  int slot(int n) const;  // n + N, throws OutOfWindow

 private:
  int n_;
};

/// Real sequence on a window; entry k is the value at site lo + k.
using Sequence = std::vector<double>;

class ZMetric {
 public:
  enum class Kind { PathGaps, ShiftInvariant, Table };

  /// gaps[k] = d(lo + k + 1, lo + k); the metric covers sites lo..lo+gaps.size().
  static ZMetric path_gaps(int lo, std::vector<double> gaps);
  /// Path gaps delta_n = gap(n) for n in lo+1..hi.
  static ZMetric path_gaps(int lo, int hi, const std::function<double(int)>& gap);
  /// d(m, n) = profile[|m - n|]; profile[0] must be 0.
  static ZMetric shift_invariant(std::vector<double> profile);
  /// d(m, n) = tanh(|m - n|) for |m - n| <= jmax.
  static ZMetric tanh_metric(int jmax);
  /// Full symmetric table over sites lo..lo+rows-1.
  static ZMetric table(int lo, std::vector<std::vector<double>> rows);

  Kind kind() const { return kind_; }
  bool covers(int m, int n) const;
  double operator()(int m, int n) const;
  /// d(n, n - 1).
  double gap(int n) const { return (*this)(n, n - 1); }
  /// sup of the profile for ShiftInvariant metrics, max entry otherwise.
  double diameter_bound() const;
  const std::vector<double>& profile() const { return values_; }

 private:
  ZMetric() = default;

  Kind kind_ = Kind::PathGaps;
  int lo_ = 0;
  std::vector<double> values_;   // gaps, profile, or row-major table
  std::vector<double> prefix_;   // PathGaps cumulative sums
  int table_size_ = 0;
};

struct WeightSeq {
  int lo = 0;
  std::vector<double> c;  // c[k] = weight at site lo + k

  double at(int n) const { return c.at(static_cast<size_t>(n - lo)); }
};

/// c_n = max(1, |n|) / min(delta_n, 1), then made nondecreasing outward from 0.
WeightSeq default_weights(const ZMetric& metric, const Window& window);

/// Throws WeightViolation unless c_n > 0, c_n delta_n >= 1 and c_n is
/// nondecreasing toward both edges of the window.
void validate_weights(const WeightSeq& weights, const ZMetric& metric, const Window& window);

/// Sum of consecutive gaps between m and n.
double path_metric(int m, int n, const ZMetric& metric);

TruncatedOperator build_dirac_lambda(const ZMetric& metric, const Window& window,
                                     const WeightSeq& weights, double lambda);

/// max over n of |i - c_n c_{n+1}|^-2 delta_n^-2 * c_{n+1}^2; the resolvent
/// estimate holds iff this is <= 1.
double resolvent_bound_ratio(const ZMetric& metric, const Window& window, const WeightSeq& weights);

/// sup_n |a_n - a_{n+1}| / d(n, n+1) over consecutive window pairs.
double lipschitz_seminorm_consecutive(const Sequence& a, const ZMetric& metric, const Window& window);

/// sup_{m != n} |a_m - a_n| / d(m, n) over window pairs.
double lipschitz_seminorm_allpairs(const Sequence& a, const ZMetric& metric, const Window& window);

/// D_K with ranges 1..rmax. Requires rmax <= 2N and lambda != 0.
TruncatedOperator build_dirac_K(const ZMetric& metric, const Window& window, int rmax, double lambda);

/// diag(a) (x) 1 on an operator whose outermost factor is the window.
CMatrix multiplication_operator(const Sequence& a, const TruncatedOperator& op);

enum class WitnessVariant { Path, AllPairs };

/// Ramp-up / ramp-down Lipschitz witness of height sum_{j<=N} delta_j (Path) or
/// d(0, N) (AllPairs). The window must reach 2N + 1.
Sequence ball_witness(const ZMetric& metric, const Window& window, int ramp, WitnessVariant variant);

double sup_norm(const Sequence& a);

/// Absolute eigenvalues, ascending.
std::vector<double> sorted_abs_spectrum(const TruncatedOperator& op);

}  // namespace smlab::zline

#pragma once

// The metric bundle B = A (x) c0(Z) over a finite base triple: the Dirac
// operator D_B = P nabla + P* nabla* + lambda (gamma_3 n + gamma_4 / d_r^2)
// + gamma_5 D on H (x) l2(window x {1..rmax}) (x) C^4, the bundle shift u,
// and the partial-trace extraction of Lipschitz conditions.
//
// Index layout is (n, r, h, spin) with n outermost and spin innermost.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "smlab/crossed.hpp"

namespace smlab::bundle {

using crossed::BaseTriple;

/// Element of B on the window: entry k is b at site -N + k.
using BSequence = std::vector<CMatrix>;

struct BundleConfig {
  int N = 8;
  int rmax = 4;
  double lambda = 1.0;
  /// d_1..d_rmax; empty means tanh(r) / tanh(rmax).
  std::vector<double> profile;
};

class BundleTriple {
 public:
  BundleTriple(const BaseTriple& base, BundleConfig cfg);

  const BaseTriple& base() const { return *base_; }
  int N() const { return cfg_.N; }
  int rmax() const { return cfg_.rmax; }
  int sites() const { return 2 * cfg_.N + 1; }
  double lambda() const { return cfg_.lambda; }
  double d(int r) const { return profile_.at(static_cast<size_t>(r - 1)); }
  const TruncatedOperator& dirac() const { return dirac_; }
  int dim() const { return static_cast<int>(dirac_.matrix.rows()); }
  /// Flat index of (n, r, h, spin).
  int index(int n, int r, int h, int s) const;

  /// Block (n, r) carries alpha^{-n}(b_n) (x) 1_4.
  CMatrix represent(const BSequence& b) const;
  /// (alpha_* b)_n = alpha(b_{n-1}); the entry at -N becomes 0.
  BSequence alpha_star(const BSequence& b) const;
  /// Cyclic shift (u f)_{n,r} = f_{n-1,r} as a permutation of flat indices:
  /// u e_j = e_{shift_target(j)}.
  int shift_target(int j) const;
  CMatrix u_matrix() const;
  /// Truncated shift power (u^l f)_n = f_{n-l}, dropped off the window.
  CMatrix u_truncated(int l) const;

  /// u^-1 X u for any X on the bundle space, by index permutation.
  CMatrix conjugate_by_u(const CMatrix& x) const;
  /// Rows with n in [-N + rmax, N - rmax - 1]: every difference term of D_B
  /// and its u-conjugate stays inside the window there.
  bool interior_row(int n) const { return n >= -cfg_.N + cfg_.rmax && n <= cfg_.N - cfg_.rmax - 1; }

  BSequence zero_sequence() const;
  BSequence constant_sequence(const CMatrix& a) const;

 private:
  const BaseTriple* base_;
  BundleConfig cfg_;
  std::vector<double> profile_;
  TruncatedOperator dirac_;
};

struct UIdentityReport {
  double identity_defect = 0.0;     // max |u^-1[D_B,u] - lambda gamma_3| over interior rows
  double commutation_defect = 0.0;  // max |[u^-1[D_B,u], b]| over interior rows and sampled b
  double alpha_star_defect = 0.0;   // max |u b u^-1 - alpha_*(b)| over interior rows
  int interior_rows = 0;
};

UIdentityReport bundle_u_identity(const BundleTriple& bt, const std::vector<BSequence>& samples);

/// c = sum_l c_l u^l with c_l in B.
using BundleCrossed = std::map<int, BSequence>;

CMatrix represent_crossed(const BundleTriple& bt, const BundleCrossed& c);

struct Witness {
  int n = 0, l = 0, r = 0;
};

struct LipschitzReport {
  double difference_ratio = 0.0;  // sup ||alpha^-n(c_{n,l}) - alpha^{-n+r}(c_{n-r,l})|| / d_r
  double base_seminorm = 0.0;     // sup ||[D, alpha^-n(c_{n,l})]||
  double derivation_norm = 0.0;   // ||dc|| from the gamma_3 component
  bool difference_ok = true, seminorm_ok = true, derivation_ok = true;
  std::optional<Witness> difference_witness;
  std::optional<Witness> seminorm_witness;
  bool all_ok() const { return difference_ok && seminorm_ok && derivation_ok; }
};

/// Reads the three necessary Lipschitz conditions off the Clifford components
/// of [D_B, pi(c)]. Only blocks whose difference stencil lies inside the window
/// are inspected.
LipschitzReport lipschitz_extract(const BundleCrossed& c, const BundleTriple& bt, double tol = 1e-10);

struct ContrastReport {
  double uncompressed = 0.0;  // ||[nabla_k - nabla_k', b]||
  double compressed = 0.0;    // ||h [nabla_k - nabla_k', b] h||
};

/// (nabla_k f)_{n,r} = (f_{n,r} - e^{ikr} f_{n-r,r}) / d_r; h is the
/// multiplication by h_n (default 1 / (1 + |n|)).
ContrastReport dual_action_continuity_contrast(const BundleTriple& bt, const BSequence& b, double k, double k2,
                                               const std::vector<double>& h = {});

struct CompactnessProfile {
  double sup_norm = 0.0;
  std::vector<int> net_size_coarse;  // per site, eps = 0.1
  std::vector<int> net_size_fine;    // per site, eps = 0.01
  double tail = 0.0;                 // sup ||b_n|| over |n| > N/2
  bool tail_flagged = false;
};

CompactnessProfile compactness_profile(const std::vector<BSequence>& family, const BundleTriple& bt,
                                       double tail_threshold);

}  // namespace smlab::bundle

#pragma once

// Noncommutative tori with real multiplication: the lattice
// Lambda = {(n + m theta, n + m theta')}, the twisted translations R_lam on
// l2(Lambda), the unit action (n, m) -> (n, m) phi_eps, and the crossed
// assembly on l2(Lambda) (x) l2(window) (x) C^2.

#include <map>
#include <utility>
#include <vector>

#include <Eigen/SparseCore>

#include "smlab/operator_core.hpp"

namespace smlab::rm {

using Mode = std::pair<long long, long long>;
using SparseC = Eigen::SparseMatrix<Complex>;

struct RMField {
  int D = 0;
  double theta = 0.0, theta_conj = 0.0;
  double eps = 0.0, eps_conj = 0.0;
  long long a = 0, b = 0, c = 0, d = 0;  // phi_eps = [[a, b], [c, d]]

  /// (n, m) phi_eps^k as a row vector.
  Mode act(Mode v, int k = 1) const;
  /// (n + m theta, n + m theta').
  std::pair<double, double> embed(Mode v) const;
  long long det() const { return a * d - b * c; }
};

/// theta = sqrt(D) for D = 2, 3 mod 4 and (1 + sqrt(D)) / 2 for D = 1 mod 4;
/// eps is the smallest unit a + b theta > 1 of norm +1.
RMField rm_setup(int D);

struct TwistedProduct {
  long long wedge = 0;  // eta_1 lam_2 - eta_2 lam_1
  Complex phase;        // exp(-pi i theta wedge)
  Mode sum;
};

TwistedProduct twisted_mode_product(Mode eta, Mode lam, double theta);

/// Square mode box |n|, |m| <= M.
class ModeBox {
 public:
  explicit ModeBox(long long M);
  long long M() const { return M_; }
  int size() const { return static_cast<int>(side_ * side_); }
  bool contains(Mode v) const;
  int index(Mode v) const;
  Mode mode(int i) const;

 private:
  long long M_, side_;
};

/// R_eta e_lam = sigma(eta, lam) e_{lam + eta}, dropped outside the box.
SparseC twisted_translation(Mode eta, const ModeBox& box, double theta);

/// delta_theta' sigma_1 + delta_theta sigma_2 on box (x) C^2.
TruncatedOperator rm_dirac(const ModeBox& box, const RMField& f);

/// ||[D_theta theta', R_eta]|| on the box. Throws ModeEscape unless eta fits.
double rm_commutator_norm(Mode eta, const ModeBox& box, const RMField& f);

/// |A_eps^k lam| = |embed((n, m) phi^k)| for k = 0..kmax, by orbit evaluation.
std::vector<double> rm_orbit_norms(Mode lam, const RMField& f, int kmax);

/// b_n = sum c_{n, lam} R_lam; entry i is site -N + i.
using RMSequence = std::vector<std::map<Mode, Complex>>;

class RMCrossed {
 public:
  RMCrossed(const RMField& f, int N, long long M);

  const RMField& field() const { return field_; }
  int N() const { return N_; }
  const ModeBox& box() const { return box_; }
  int dim() const { return (2 * N_ + 1) * box_.size() * 2; }
  int index(int n, Mode v, int s) const;

  /// sigma_3 n log(eps) + D_theta theta' blockwise.
  const SparseC& dhat() const { return dhat_; }
  /// upsilon psi_{lam, n} = psi_{lam, n-1}, dropped below -N.
  const SparseC& upsilon() const { return upsilon_; }
  /// Block n carries alpha^-n(b_n) (x) 1_2.
  SparseC represent(const RMSequence& b) const;
  /// [D_theta theta', alpha^-n(b_n)] in block n.
  SparseC blockwise_base_commutator(const RMSequence& b) const;
  /// (alpha_* b)_n = alpha(b_{n-1}); the site -N gets 0.
  RMSequence alpha_star(const RMSequence& b) const;

 private:
  RMField field_;
  int N_;
  ModeBox box_;
  TruncatedOperator base_dirac_;
  SparseC dhat_, upsilon_;
};

struct RMCrossedReport {
  double upsilon_defect = 0.0;      // |[Dhat, ups] + sigma_3 log(eps) ups|
  double covariance_defect = 0.0;   // |ups^-1 b ups - alpha_*(b)|
  double inverse_covariance_defect = 0.0;  // |ups b ups^-1 - alpha_*(b)|
  double blockwise_defect = 0.0;    // |[Dhat, b] - blockwise [D, alpha^-n(b_n)]|
};

RMCrossedReport rm_crossed_check(const RMCrossed& rc, const RMSequence& b);

struct OrbitDecomposition {
  Mode mu;
  int k = 0;
  double t = 0.0;     // log(|mu_1| / |mu_2|) / (2 log eps), in [0, 1)
  double norm = 0.0;  // mu_1 mu_2
};

/// lam = A_eps^k(mu) with mu in the logarithmic sector t in [0, 1).
OrbitDecomposition orbit_decompose(Mode lam, const RMField& f);

/// sign(N(mu)) |N(mu)|^{1/2} (eps^k sigma_1 + eps^-k sigma_2).
CMatrix rm_dmu_block(Mode mu, int k, const RMField& f);

}  // namespace smlab::rm

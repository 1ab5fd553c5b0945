#pragma once

// Crossed products of a finite-dimensional base triple (A, H, D) by an
// automorphism alpha = Ad(W), their regular representation on
// H (x) l2(-N..N) (x) C^2, and the Fourier/Fejer toolkit on A x Z.

#include <map>
#include <string>
#include <vector>

#include "smlab/operator_core.hpp"
#include "smlab/rng.hpp"

namespace smlab::crossed {

class BaseTriple {
 public:
  /// Diagonal algebra C^d, alpha permuting the points: alpha(a)_{perm[i]} = a_i.
  static BaseTriple diagonal(std::string name, CMatrix D, std::vector<int> perm);
  /// Full matrix algebra M_d, alpha = conjugation by the unitary W.
  static BaseTriple matrix_algebra(std::string name, CMatrix D, CMatrix W);

  const std::string& name() const { return name_; }
  int dim() const { return static_cast<int>(D_.rows()); }
  const CMatrix& D() const { return D_; }
  const CMatrix& W() const { return W_; }
  bool is_diagonal() const { return diagonal_; }
  const std::vector<CMatrix>& algebra_basis() const { return basis_; }

  /// alpha^p(a) = W^p a W^-p for any integer p.
  CMatrix alpha(const CMatrix& a, int p = 1) const;
  /// Coefficients of alpha on the algebra basis: alpha(e_j) = sum_i M_ij e_i.
  CMatrix alpha_matrix() const;
  /// Random element of the algebra (Gaussian coefficients on the basis).
  CMatrix random_element(Rng& rng, bool self_adjoint = false) const;
  /// Projection of a matrix onto the algebra (zeroes off-diagonal entries
  /// for diagonal algebras).
  CMatrix project(const CMatrix& a) const;

 private:
  BaseTriple() = default;
  void validate() const;
  CMatrix power(int p) const;

  std::string name_;
  CMatrix D_;
  CMatrix W_;
  bool diagonal_ = false;
  std::vector<CMatrix> basis_;
};

/// Bases used by the acceptance checks: dims 2, 3, 4.
std::vector<BaseTriple> standard_bases();

/// Finite sum b = sum_l b_l u^l.
struct CrossedElement {
  std::map<int, CMatrix> coeffs;

  static CrossedElement base(const CMatrix& a) { return {{{0, a}}}; }
  static CrossedElement monomial(const CMatrix& a, int l) { return {{{l, a}}}; }

  int support_radius() const;
  CMatrix coefficient(int l, int dim) const;
};

CrossedElement add(const CrossedElement& b, const CrossedElement& c, double sign = 1.0);
CrossedElement scale(const CrossedElement& b, Complex s);
/// (bc)_l = sum_m b_m alpha^m(c_{l-m}).
CrossedElement product(const CrossedElement& b, const CrossedElement& c, const BaseTriple& base);
/// (b*)_l = alpha^l(b_{-l}^*).
CrossedElement adjoint(const CrossedElement& b, const BaseTriple& base);
/// E(b) = b_0.
CMatrix conditional_expectation(const CrossedElement& b, const BaseTriple& base);
/// b_l = E(b u^-l).
CMatrix fourier_coefficient(const CrossedElement& b, int l, const BaseTriple& base);
/// (db)_l = i l b_l.
CrossedElement derivation(const CrossedElement& b);
/// eta_k(b)_l = e^{ilk} b_l.
CrossedElement dual_rotate(const CrossedElement& b, double k);
double max_coeff_difference(const CrossedElement& b, const CrossedElement& c, int dim);

CrossedElement random_element(const BaseTriple& base, Rng& rng, int max_support, int radius);

/// Regular representation truncated to the window -N..N. Index layout is
/// (n, h, spin) with n outermost. The stored shift u_hat is the cyclic
/// permutation of the window (exactly unitary); crossed elements are
/// represented through the truncated shift, i.e. as compressions.
class RegularRep {
 public:
  RegularRep(const BaseTriple& base, int N);

  int N() const { return N_; }
  int sites() const { return 2 * N_ + 1; }
  const BaseTriple& base() const { return *base_; }
  int dim() const { return sites() * base_->dim() * 2; }

  const TruncatedOperator& dhat() const { return dhat_; }
  const CMatrix& u_hat() const { return u_cyclic_; }
  /// Truncated shift (u f)_n = f_{n-1}, zero at n = -N.
  const CMatrix& u_truncated() const { return u_trunc_; }

  /// pi(a) on H (x) l2 (no spin factor); block n is alpha^{-n}(a).
  CMatrix pi_base_core(const CMatrix& a) const;
  /// pi(b) = sum_l pi(b_l) u^l on H (x) l2, truncated shift.
  CMatrix pi_core(const CrossedElement& b) const;
  /// Same with the spin factor: pi(b) (x) 1_2.
  CMatrix pi(const CrossedElement& b) const;
  CMatrix u_hat_spin() const;
  /// (v_k f)_n = e^{ink} f_n.
  CMatrix dual_unitary(double k) const;
  /// Compressed C*-norm ||pi(b)||.
  double norm(const CrossedElement& b) const;

 private:
  CMatrix shift_core(int l) const;

  const BaseTriple* base_;
  int N_;
  TruncatedOperator dhat_;
  CMatrix u_cyclic_;
  CMatrix u_trunc_;
};

/// D (x) sigma_1 + n 1 (x) sigma_2 on each block n.
TruncatedOperator assemble_dhat(const BaseTriple& base, int N);

struct SpectrumCheck {
  double max_rel_error = 0.0;
  size_t count = 0;
};
/// Compares the eigenvalues of D-hat against {+-sqrt(lambda_k^2 + n^2)}.
SpectrumCheck dhat_spectrum_check(const BaseTriple& base, int N);

/// [D-hat, pi(b)].
CMatrix commutator_dhat(const CrossedElement& b, const RegularRep& rep);

/// max_{|n| <= N} ||[D, alpha^{-n}(a)]||.
double blockwise_commutator_norm(const CMatrix& a, const BaseTriple& base, int N);

/// u^-1 [D-hat, u] restricted to blocks n = -N..N-1 (the cyclic wrap at n = N
/// is excluded), compared entrywise with 1 (x) 1 (x) sigma_2. Returns the
/// maximum absolute deviation; 0 means exact agreement.
double shift_identity_defect(const RegularRep& rep);

double fejer_kernel(int N, double k);
double fejer_kernel_cosine_form(int N, double k);
/// int_{-pi}^{pi} F_N dk / 2pi by the periodic trapezoid rule on m points.
double fejer_mean(int N, int m = 4096);
/// int_{|k| >= pi/sqrt(N)} F_N dk / 2pi in closed form.
double fejer_tail_mass(int N);
/// b^(N) = sum_{|l| < N} (1 - |l|/N) b_l u^l.
CrossedElement fejer_approximant(const CrossedElement& b, int N);

/// b_0 = 0, ||b_l|| <= 1/|l|, then rescaled so that ||db|| <= 1 at the window.
CrossedElement project_to_bk(const CrossedElement& b, const RegularRep& rep);

struct BoundCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack() const { return rhs - lhs; }
};

struct ApproximationReport {
  std::vector<BoundCheck> checks;
  double window_delta = 0.0;  // max change of the norms when the window doubles
  double min_slack() const;
};

/// Sobolev, Fejer (orders in fejer_orders), and the two B(K) corollaries
/// (the latter on project_to_bk(b)). Throws WindowTooSmall if N < 4 L.
ApproximationReport verify_approximation_bounds(const CrossedElement& b, const BaseTriple& base, int N,
                                      const std::vector<int>& fejer_orders, bool with_doubling = false);

/// Number of singular values below 1e-8 of the map x -> [D-hat, x] on
/// span{pi(e_i u^l) : |l| <= L} at window N.
int dhat_commutant_dimension(const BaseTriple& base, int N, int L);

struct MetricEquivalence {
  double K = 0.0;           // sup over directions of max_n seminorm ratio
  double worst_lower = 0.0;  // max of d_Y - d_X over sampled pairs (<= 0 expected)
  double worst_upper = 0.0;  // max of d_X - K d_Y over sampled pairs (<= 0 expected)
  size_t pairs = 0;
};

/// Connes distances d_X (base seminorm) and d_Y (sup over the alpha-orbit)
/// between sampled states of a diagonal base, where alpha has finite order.
MetricEquivalence metric_equivalence_witness(const BaseTriple& base, Rng& rng, int samples);

}  // namespace smlab::crossed

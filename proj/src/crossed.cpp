#include "smlab/crossed.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace smlab::crossed {

namespace {

constexpr double kPi = std::numbers::pi;

CMatrix unit(int d, int i, int j) {
  CMatrix e = CMatrix::Zero(d, d);
  e(i, j) = 1.0;
  return e;
}

}  // namespace

BaseTriple BaseTriple::diagonal(std::string name, CMatrix D, std::vector<int> perm) {
  const int d = static_cast<int>(D.rows());
  if (perm.size() != static_cast<size_t>(d)) fail(ErrorCode::ShapeMismatch, "permutation length must equal dim");
  std::vector<int> seen(perm);
  std::sort(seen.begin(), seen.end());
  for (int i = 0; i < d; ++i)
    if (seen[i] != i) fail(ErrorCode::ConfigInvalid, "not a permutation of 0..dim-1");
  BaseTriple b;
  b.name_ = std::move(name);
  b.D_ = std::move(D);
  b.W_ = CMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) b.W_(perm[i], i) = 1.0;
  b.diagonal_ = true;
  for (int i = 0; i < d; ++i) b.basis_.push_back(unit(d, i, i));
  b.validate();
  return b;
}

BaseTriple BaseTriple::matrix_algebra(std::string name, CMatrix D, CMatrix W) {
  const int d = static_cast<int>(D.rows());
  BaseTriple b;
  b.name_ = std::move(name);
  b.D_ = std::move(D);
  b.W_ = std::move(W);
  b.diagonal_ = false;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) b.basis_.push_back(unit(d, i, j));
  b.validate();
  return b;
}

void BaseTriple::validate() const {
  const int d = dim();
  if (d < 1 || D_.cols() != d) fail(ErrorCode::NonSquare, "base D must be square");
  require_finite(D_, "base D");
  if (hermiticity_defect(D_) > 1e-12 * std::max(1.0, max_abs(D_))) fail(ErrorCode::NotHermitian, "base D");
  if (W_.rows() != d || W_.cols() != d) fail(ErrorCode::ShapeMismatch, "implementing unitary has wrong size");
  if (max_abs(W_.adjoint() * W_ - CMatrix::Identity(d, d)) > 1e-12)
    fail(ErrorCode::ConfigInvalid, "implementing operator is not unitary");
  for (const auto& e : basis_) {
    const CMatrix img = alpha(e);
    if (max_abs(img - project(img)) > 1e-12) fail(ErrorCode::ConfigInvalid, "alpha leaves the algebra");
  }
}

CMatrix BaseTriple::power(int p) const {
  const CMatrix step = p >= 0 ? W_ : CMatrix(W_.adjoint());
  CMatrix out = CMatrix::Identity(dim(), dim());
  for (int k = 0; k < std::abs(p); ++k) out = step * out;
  return out;
}

CMatrix BaseTriple::alpha(const CMatrix& a, int p) const {
  const CMatrix w = power(p);
  return w * a * w.adjoint();
}

CMatrix BaseTriple::alpha_matrix() const {
  const int m = static_cast<int>(basis_.size());
  CMatrix out(m, m);
  for (int j = 0; j < m; ++j) {
    const CMatrix img = alpha(basis_[j]);
    for (int i = 0; i < m; ++i)
      out(i, j) = (basis_[i].adjoint() * img).trace() / (basis_[i].adjoint() * basis_[i]).trace();
  }
  return out;
}

CMatrix BaseTriple::random_element(Rng& rng, bool self_adjoint) const {
  CMatrix a = CMatrix::Zero(dim(), dim());
  for (const auto& e : basis_) {
    const double re = rng.normal();
    const double im = rng.normal();
    a += Complex(re, im) * e;
  }
  if (self_adjoint) a = 0.5 * (a + a.adjoint());
  return a;
}

CMatrix BaseTriple::project(const CMatrix& a) const {
  if (!diagonal_) return a;
  return CMatrix(a.diagonal().asDiagonal());
}

std::vector<BaseTriple> standard_bases() {
  std::vector<BaseTriple> out;
  {
    CMatrix D(2, 2);
    D << 1.0, 0.5, 0.5, -1.0;
    out.push_back(BaseTriple::matrix_algebra("qubit", D, spin::sigma1()));
  }
  {
    CMatrix D(3, 3);
    D << 0.0, 1.0, 0.5, 1.0, 0.0, 2.0, 0.5, 2.0, 0.0;
    out.push_back(BaseTriple::diagonal("triangle", D, {1, 2, 0}));
  }
  {
    const Complex i = kI;
    CMatrix D(4, 4);
    D << 0.5, 1.0, 0.0, -0.25 * i,
         1.0, -0.5, 0.75 + 0.5 * i, 0.0,
         0.0, 0.75 - 0.5 * i, 1.5, 1.0,
         0.25 * i, 0.0, 1.0, -1.0;
    out.push_back(BaseTriple::diagonal("square", D, {1, 2, 3, 0}));
  }
  return out;
}

int CrossedElement::support_radius() const {
  int r = 0;
  for (const auto& [l, c] : coeffs) r = std::max(r, std::abs(l));
  return r;
}

CMatrix CrossedElement::coefficient(int l, int dim) const {
  const auto it = coeffs.find(l);
  return it == coeffs.end() ? CMatrix(CMatrix::Zero(dim, dim)) : it->second;
}

CrossedElement add(const CrossedElement& b, const CrossedElement& c, double sign) {
  CrossedElement out = b;
  for (const auto& [l, m] : c.coeffs) {
    auto it = out.coeffs.find(l);
    if (it == out.coeffs.end())
      out.coeffs.emplace(l, sign * m);
    else
      it->second += sign * m;
  }
  return out;
}

CrossedElement scale(const CrossedElement& b, Complex s) {
  CrossedElement out = b;
  for (auto& [l, m] : out.coeffs) m *= s;
  return out;
}

CrossedElement product(const CrossedElement& b, const CrossedElement& c, const BaseTriple& base) {
  CrossedElement out;
  for (const auto& [m, bm] : b.coeffs)
    for (const auto& [j, cj] : c.coeffs) {
      const CMatrix term = bm * base.alpha(cj, m);
      auto it = out.coeffs.find(m + j);
      if (it == out.coeffs.end())
        out.coeffs.emplace(m + j, term);
      else
        it->second += term;
    }
  return out;
}

CrossedElement adjoint(const CrossedElement& b, const BaseTriple& base) {
  CrossedElement out;
  for (const auto& [l, bl] : b.coeffs) out.coeffs.emplace(-l, base.alpha(CMatrix(bl.adjoint()), -l));
  return out;
}

CMatrix conditional_expectation(const CrossedElement& b, const BaseTriple& base) {
  return b.coefficient(0, base.dim());
}

CMatrix fourier_coefficient(const CrossedElement& b, int l, const BaseTriple& base) {
  const CrossedElement shifted =
      product(b, CrossedElement::monomial(CMatrix::Identity(base.dim(), base.dim()), -l), base);
  return conditional_expectation(shifted, base);
}

CrossedElement derivation(const CrossedElement& b) {
  CrossedElement out;
  for (const auto& [l, bl] : b.coeffs) out.coeffs.emplace(l, Complex(0.0, static_cast<double>(l)) * bl);
  return out;
}

CrossedElement dual_rotate(const CrossedElement& b, double k) {
  CrossedElement out;
  for (const auto& [l, bl] : b.coeffs) out.coeffs.emplace(l, std::polar(1.0, l * k) * bl);
  return out;
}

double max_coeff_difference(const CrossedElement& b, const CrossedElement& c, int dim) {
  double worst = 0.0;
  for (const auto& [l, m] : b.coeffs) worst = std::max(worst, max_abs(m - c.coefficient(l, dim)));
  for (const auto& [l, m] : c.coeffs) worst = std::max(worst, max_abs(m - b.coefficient(l, dim)));
  return worst;
}

CrossedElement random_element(const BaseTriple& base, Rng& rng, int max_support, int radius) {
  const int size = static_cast<int>(rng.uniform_int(1, std::min(max_support, 2 * radius + 1)));
  CrossedElement b;
  while (static_cast<int>(b.coeffs.size()) < size) {
    const int l = static_cast<int>(rng.uniform_int(-radius, radius));
    if (b.coeffs.count(l)) continue;
    b.coeffs.emplace(l, base.random_element(rng) / std::sqrt(static_cast<double>(base.dim())));
  }
  return b;
}

TruncatedOperator assemble_dhat(const BaseTriple& base, int N) {
  if (N < 0) fail(ErrorCode::ConfigInvalid, "window must be >= 0");
  const int d = base.dim();
  const int sites = 2 * N + 1;
  const int block = 2 * d;
  const CMatrix dpart = kron(base.D(), spin::sigma1());
  const CMatrix npart = kron(CMatrix::Identity(d, d), spin::sigma2());
  CMatrix m = CMatrix::Zero(sites * block, sites * block);
  for (int n = -N; n <= N; ++n) {
    const int s = (n + N) * block;
    m.block(s, s, block, block) = dpart + static_cast<double>(n) * npart;
  }
  return {std::move(m), {{"site", sites, -N}, {"h", d, 0}, {"spin", 2, 0}}};
}

RegularRep::RegularRep(const BaseTriple& base, int N) : base_(&base), N_(N), dhat_(assemble_dhat(base, N)) {
  const int d = base.dim();
  const int core = sites() * d;
  u_cyclic_ = CMatrix::Zero(2 * core, 2 * core);
  for (int n = -N; n <= N; ++n) {
    const int from = n == -N ? N : n - 1;
    const int r = (n + N) * 2 * d;
    const int c = (from + N) * 2 * d;
    u_cyclic_.block(r, c, 2 * d, 2 * d) = CMatrix::Identity(2 * d, 2 * d);
  }
  u_trunc_ = kron(shift_core(1), spin::identity2());
}

CMatrix RegularRep::shift_core(int l) const {
  const int d = base_->dim();
  CMatrix s = CMatrix::Zero(sites() * d, sites() * d);
  for (int n = -N_; n <= N_; ++n) {
    const int from = n - l;
    if (from < -N_ || from > N_) continue;
    s.block((n + N_) * d, (from + N_) * d, d, d) = CMatrix::Identity(d, d);
  }
  return s;
}

CMatrix RegularRep::pi_base_core(const CMatrix& a) const {
  const int d = base_->dim();
  CMatrix m = CMatrix::Zero(sites() * d, sites() * d);
  for (int n = -N_; n <= N_; ++n) m.block((n + N_) * d, (n + N_) * d, d, d) = base_->alpha(a, -n);
  return m;
}

CMatrix RegularRep::pi_core(const CrossedElement& b) const {
  const int d = base_->dim();
  CMatrix m = CMatrix::Zero(sites() * d, sites() * d);
  for (const auto& [l, bl] : b.coeffs) m += pi_base_core(bl) * shift_core(l);
  return m;
}

CMatrix RegularRep::pi(const CrossedElement& b) const { return kron(pi_core(b), spin::identity2()); }

CMatrix RegularRep::u_hat_spin() const { return u_cyclic_; }

CMatrix RegularRep::dual_unitary(double k) const {
  const int inner = 2 * base_->dim();
  CMatrix v = CMatrix::Zero(dim(), dim());
  for (int n = -N_; n <= N_; ++n) {
    const Complex phase = std::polar(1.0, n * k);
    for (int j = 0; j < inner; ++j) v((n + N_) * inner + j, (n + N_) * inner + j) = phase;
  }
  return v;
}

double RegularRep::norm(const CrossedElement& b) const { return operator_norm(pi_core(b)); }

SpectrumCheck dhat_spectrum_check(const BaseTriple& base, int N) {
  const TruncatedOperator dhat = assemble_dhat(base, N);
  const RVector got = hermitian_eigenvalues(dhat.matrix);
  const RVector lambda = hermitian_eigenvalues(base.D());
  std::vector<double> expected;
  for (int n = -N; n <= N; ++n)
    for (Eigen::Index k = 0; k < lambda.size(); ++k) {
      const double r = std::sqrt(lambda(k) * lambda(k) + static_cast<double>(n) * n);
      expected.push_back(r);
      expected.push_back(-r);
    }
  std::sort(expected.begin(), expected.end());
  SpectrumCheck out;
  out.count = expected.size();
  for (size_t i = 0; i < expected.size(); ++i) {
    const double err = std::abs(got(static_cast<Eigen::Index>(i)) - expected[i]) / std::max(1.0, std::abs(expected[i]));
    out.max_rel_error = std::max(out.max_rel_error, err);
  }
  return out;
}

CMatrix commutator_dhat(const CrossedElement& b, const RegularRep& rep) {
  return commutator(rep.dhat().matrix, rep.pi(b));
}

double blockwise_commutator_norm(const CMatrix& a, const BaseTriple& base, int N) {
  double worst = 0.0;
  for (int n = -N; n <= N; ++n) worst = std::max(worst, operator_norm(commutator(base.D(), base.alpha(a, -n))));
  return worst;
}

double shift_identity_defect(const RegularRep& rep) {
  const CMatrix& u = rep.u_hat();
  const CMatrix& dh = rep.dhat().matrix;
  const CMatrix x = u.adjoint() * (dh * u - u * dh);
  const int inner = 2 * rep.base().dim();
  const CMatrix expected = kron(CMatrix::Identity(rep.base().dim(), rep.base().dim()), spin::sigma2());
  double worst = 0.0;
  for (int n = -rep.N(); n < rep.N(); ++n) {
    const int r = (n + rep.N()) * inner;
    for (int c = 0; c < x.cols(); c += inner) {
      const CMatrix blk = x.block(r, c, inner, inner);
      worst = std::max(worst, max_abs(c == r ? CMatrix(blk - expected) : blk));
    }
  }
  return worst;
}

double fejer_kernel(int N, double k) {
  const double s = std::sin(k / 2.0);
  if (std::abs(s) < 1e-6) return fejer_kernel_cosine_form(N, k);
  const double t = std::sin(N * k / 2.0);
  return t * t / (N * s * s);
}

double fejer_kernel_cosine_form(int N, double k) {
  double f = 1.0;
  for (int n = 1; n < N; ++n) f += 2.0 * (1.0 - static_cast<double>(n) / N) * std::cos(n * k);
  return f;
}

double fejer_mean(int N, int m) {
  double s = 0.0;
  for (int j = 0; j < m; ++j) s += fejer_kernel(N, -kPi + 2.0 * kPi * j / m);
  return s / m;
}

double fejer_tail_mass(int N) {
  const double a = kPi / std::sqrt(static_cast<double>(N));
  double inner = a / kPi;
  for (int n = 1; n < N; ++n) inner += 2.0 / kPi * (1.0 - static_cast<double>(n) / N) * std::sin(n * a) / n;
  return 1.0 - inner;
}

CrossedElement fejer_approximant(const CrossedElement& b, int N) {
  if (N < 1) fail(ErrorCode::ConfigInvalid, "Fejer order must be >= 1");
  CrossedElement out;
  for (const auto& [l, bl] : b.coeffs)
    if (std::abs(l) < N) out.coeffs.emplace(l, (1.0 - static_cast<double>(std::abs(l)) / N) * bl);
  return out;
}

CrossedElement project_to_bk(const CrossedElement& b, const RegularRep& rep) {
  CrossedElement out;
  for (const auto& [l, bl] : b.coeffs) {
    if (l == 0) continue;
    const double cap = 1.0 / std::abs(l);
    const double nrm = operator_norm(bl);
    out.coeffs.emplace(l, nrm > cap ? CMatrix(bl * (cap / nrm)) : bl);
  }
  const double d = rep.norm(derivation(out));
  return d > 1.0 ? scale(out, 1.0 / d) : out;
}

double ApproximationReport::min_slack() const {
  double s = std::numeric_limits<double>::infinity();
  for (const auto& c : checks) s = std::min(s, c.slack());
  return s;
}

ApproximationReport verify_approximation_bounds(const CrossedElement& b, const BaseTriple& base, int N,
                                      const std::vector<int>& fejer_orders, bool with_doubling) {
  const int L = b.support_radius();
  if (N < 4 * L) fail(ErrorCode::WindowTooSmall, "window must be at least 4x the support radius");
  const RegularRep rep(base, N);
  ApproximationReport r;

  const CrossedElement db = derivation(b);
  const CMatrix e_dd = conditional_expectation(product(db, adjoint(db, base), base), base);
  const double centered = rep.norm(add(b, CrossedElement::base(conditional_expectation(b, base)), -1.0));
  r.checks.push_back({"sobolev", centered * centered, kPi * kPi / 3.0 * operator_norm(e_dd)});

  const double nb = rep.norm(b);
  const double ndb = rep.norm(db);
  for (int order : fejer_orders) {
    const double s = std::sqrt(static_cast<double>(order));
    r.checks.push_back({"fejer_" + std::to_string(order), rep.norm(add(b, fejer_approximant(b, order), -1.0)),
                        kPi / s * ndb + 2.0 / s * nb});
  }

  const CrossedElement bk = project_to_bk(b, rep);
  r.checks.push_back({"bk_norm", rep.norm(bk), kPi / std::sqrt(3.0)});
  for (int order : fejer_orders) {
    const double s = std::sqrt(static_cast<double>(order));
    r.checks.push_back({"bk_fejer_" + std::to_string(order), rep.norm(add(bk, fejer_approximant(bk, order), -1.0)),
                        2.2 * kPi / s});
  }

  if (with_doubling) {
    const RegularRep wide(base, 2 * N);
    r.window_delta = std::max({std::abs(wide.norm(b) - nb), std::abs(wide.norm(db) - ndb),
                               std::abs(wide.norm(bk) - rep.norm(bk))});
  }
  return r;
}

int dhat_commutant_dimension(const BaseTriple& base, int N, int L) {
  const RegularRep rep(base, N);
  const CMatrix& dh = rep.dhat().matrix;
  const auto& basis = base.algebra_basis();
  const Eigen::Index rows = static_cast<Eigen::Index>(rep.dim()) * rep.dim();
  CMatrix m(rows, static_cast<Eigen::Index>(basis.size()) * (2 * L + 1));
  Eigen::Index col = 0;
  for (int l = -L; l <= L; ++l)
    for (const auto& e : basis) {
      CrossedElement x = CrossedElement::monomial(e, l);
      const CMatrix c = commutator(dh, rep.pi(x));
      Eigen::Map<const Eigen::VectorXcd> v(c.data(), rows);
      const double nrm = v.norm();
      m.col(col++) = nrm > 0.0 ? Eigen::VectorXcd(v / nrm) : Eigen::VectorXcd(v);
    }
  Eigen::JacobiSVD<CMatrix> svd(m);
  int small = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) < 1e-8) ++small;
  return small;
}

MetricEquivalence metric_equivalence_witness(const BaseTriple& base, Rng& rng, int samples) {
  if (!base.is_diagonal() || base.dim() != 3)
    fail(ErrorCode::ConfigInvalid, "metric equivalence witness needs a 3-point diagonal base");
  // Order of alpha.
  int order = 1;
  for (CMatrix w = base.W(); max_abs(w - CMatrix::Identity(3, 3)) != 0.0; w = base.W() * w) ++order;

  // Real self-adjoint elements modulo constants form a plane; scan its circle.
  const Eigen::Vector3d e1 = Eigen::Vector3d(1.0, -1.0, 0.0) / std::sqrt(2.0);
  const Eigen::Vector3d e2 = Eigen::Vector3d(1.0, 1.0, -2.0) / std::sqrt(6.0);
  constexpr int kGrid = 7200;
  std::vector<Eigen::Vector3d> dirs(kGrid);
  std::vector<double> sx(kGrid), sy(kGrid);
  MetricEquivalence out;
  for (int g = 0; g < kGrid; ++g) {
    const double th = 2.0 * kPi * g / kGrid;
    dirs[g] = std::cos(th) * e1 + std::sin(th) * e2;
    const CMatrix a = CMatrix(dirs[g].cast<Complex>().asDiagonal());
    sx[g] = operator_norm(commutator(base.D(), a));
    sy[g] = sx[g];
    for (int n = 1; n < order; ++n) sy[g] = std::max(sy[g], operator_norm(commutator(base.D(), base.alpha(a, n))));
    out.K = std::max(out.K, sy[g] / sx[g]);
  }

  auto distances = [&](const Eigen::Vector3d& p, const Eigen::Vector3d& q) {
    double dx = 0.0, dy = 0.0;
    for (int g = 0; g < kGrid; ++g) {
      const double f = (p - q).dot(dirs[g]);
      dx = std::max(dx, f / sx[g]);
      dy = std::max(dy, f / sy[g]);
    }
    return std::pair{dx, dy};
  };
  auto record = [&](const Eigen::Vector3d& p, const Eigen::Vector3d& q) {
    const auto [dx, dy] = distances(p, q);
    out.worst_lower = std::max(out.worst_lower, dy - dx);
    out.worst_upper = std::max(out.worst_upper, dx - out.K * dy);
    ++out.pairs;
  };
  out.worst_lower = -std::numeric_limits<double>::infinity();
  out.worst_upper = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) record(Eigen::Vector3d::Unit(i), Eigen::Vector3d::Unit(j));
  for (int s = 0; s < samples; ++s) {
    Eigen::Vector3d p, q;
    for (int i = 0; i < 3; ++i) {
      p(i) = -std::log(1.0 - rng.uniform());
      q(i) = -std::log(1.0 - rng.uniform());
    }
    record(p / p.sum(), q / q.sum());
  }
  return out;
}

}  // namespace smlab::crossed

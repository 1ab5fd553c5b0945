#include "smlab/bundle.hpp"

#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>

#include "smlab/zline.hpp"

namespace smlab::bundle {

namespace {

using SparseC = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

SparseC to_sparse(const CMatrix& m) { return m.sparseView(Complex(0.0), 0.0); }

}  // namespace

BundleTriple::BundleTriple(const BaseTriple& base, BundleConfig cfg) : base_(&base), cfg_(std::move(cfg)) {
  if (cfg_.N < 1) fail(ErrorCode::ConfigInvalid, "bundle window must be >= 1");
  if (cfg_.rmax < 1 || cfg_.rmax > 2 * cfg_.N) fail(ErrorCode::ConfigInvalid, "rmax must lie in 1..2N");
  if (cfg_.lambda == 0.0) fail(ErrorCode::ZeroLambda, "D_B needs lambda != 0");
  if (cfg_.profile.empty()) {
    for (int r = 1; r <= cfg_.rmax; ++r) profile_.push_back(std::tanh(r) / std::tanh(cfg_.rmax));
  } else {
    profile_ = cfg_.profile;
  }
  if (profile_.size() != static_cast<size_t>(cfg_.rmax))
    fail(ErrorCode::ConfigInvalid, "profile must list d_1..d_rmax");
  std::vector<double> full{0.0};
  full.insert(full.end(), profile_.begin(), profile_.end());
  try {
    (void)zline::ZMetric::shift_invariant(full);
  } catch (const LabError& e) {
    fail(ErrorCode::ConfigInvalid, std::string("bundle profile: ") + e.what());
  }
  if (std::abs(*std::max_element(profile_.begin(), profile_.end()) - 1.0) > 1e-12)
    fail(ErrorCode::ConfigInvalid, "bundle profile must have sup d_r = 1");

  const int d = base.dim();
  const int total = sites() * cfg_.rmax * d * 4;
  CMatrix m = CMatrix::Zero(total, total);
  const CMatrix p = (spin::gamma(1) + kI * spin::gamma(2)) / 2.0;
  const CMatrix g3 = spin::gamma(3);
  const CMatrix g4 = spin::gamma(4);
  const CMatrix g5 = spin::gamma(5);
  const int N = cfg_.N;

  // P nabla + (P nabla)^*; nabla rows with n - r off the window are dropped.
  for (int n = -N; n <= N; ++n)
    for (int r = 1; r <= cfg_.rmax; ++r) {
      if (n - r < -N) continue;
      const double inv = 1.0 / profile_[r - 1];
      for (int h = 0; h < d; ++h)
        for (int s = 0; s < 4; ++s)
          for (int t = 0; t < 4; ++t) {
            if (p(s, t) == Complex(0.0)) continue;
            const Complex diag = inv * p(s, t);
            const Complex off = -inv * p(s, t);
            m(index(n, r, h, s), index(n, r, h, t)) += diag;
            m(index(n, r, h, t), index(n, r, h, s)) += std::conj(diag);
            m(index(n, r, h, s), index(n - r, r, h, t)) += off;
            m(index(n - r, r, h, t), index(n, r, h, s)) += std::conj(off);
          }
    }
  // lambda (gamma_3 n + gamma_4 / d_r^2) + gamma_5 D.
  for (int n = -N; n <= N; ++n)
    for (int r = 1; r <= cfg_.rmax; ++r) {
      const CMatrix x = cfg_.lambda * (static_cast<double>(n) * g3 + g4 / (profile_[r - 1] * profile_[r - 1]));
      for (int h = 0; h < d; ++h)
        for (int s = 0; s < 4; ++s)
          for (int t = 0; t < 4; ++t) {
            if (x(s, t) != Complex(0.0)) m(index(n, r, h, s), index(n, r, h, t)) += x(s, t);
            for (int h2 = 0; h2 < d; ++h2)
              if (base.D()(h, h2) != Complex(0.0) && g5(s, t) != Complex(0.0))
                m(index(n, r, h, s), index(n, r, h2, t)) += base.D()(h, h2) * g5(s, t);
          }
    }
  dirac_ = {std::move(m), {{"site", sites(), -N}, {"range", cfg_.rmax, 1}, {"h", d, 0}, {"spin", 4, 0}}};
}

int BundleTriple::index(int n, int r, int h, int s) const {
  return (((n + cfg_.N) * cfg_.rmax + (r - 1)) * base_->dim() + h) * 4 + s;
}

CMatrix BundleTriple::represent(const BSequence& b) const {
  if (b.size() != static_cast<size_t>(sites())) fail(ErrorCode::ShapeMismatch, "sequence does not cover the window");
  const int d = base_->dim();
  CMatrix m = CMatrix::Zero(dim(), dim());
  for (int n = -cfg_.N; n <= cfg_.N; ++n) {
    const CMatrix a = base_->alpha(b[n + cfg_.N], -n);
    for (int r = 1; r <= cfg_.rmax; ++r)
      for (int h = 0; h < d; ++h)
        for (int h2 = 0; h2 < d; ++h2)
          for (int s = 0; s < 4; ++s) m(index(n, r, h, s), index(n, r, h2, s)) = a(h, h2);
  }
  return m;
}

BSequence BundleTriple::alpha_star(const BSequence& b) const {
  BSequence out(b.size(), CMatrix::Zero(base_->dim(), base_->dim()));
  for (size_t k = 1; k < b.size(); ++k) out[k] = base_->alpha(b[k - 1]);
  return out;
}

int BundleTriple::shift_target(int j) const {
  const int inner = cfg_.rmax * base_->dim() * 4;
  const int slot = j / inner;
  const int next = slot == sites() - 1 ? 0 : slot + 1;
  return next * inner + j % inner;
}

CMatrix BundleTriple::u_matrix() const {
  CMatrix u = CMatrix::Zero(dim(), dim());
  for (int j = 0; j < dim(); ++j) u(shift_target(j), j) = 1.0;
  return u;
}

CMatrix BundleTriple::u_truncated(int l) const {
  const int inner = cfg_.rmax * base_->dim() * 4;
  CMatrix u = CMatrix::Zero(dim(), dim());
  for (int n = -cfg_.N; n <= cfg_.N; ++n) {
    const int from = n - l;
    if (from < -cfg_.N || from > cfg_.N) continue;
    for (int k = 0; k < inner; ++k) u((n + cfg_.N) * inner + k, (from + cfg_.N) * inner + k) = 1.0;
  }
  return u;
}

CMatrix BundleTriple::conjugate_by_u(const CMatrix& x) const {
  const int n = dim();
  std::vector<int> t(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) t[j] = shift_target(j);
  CMatrix out(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) out(a, b) = x(t[a], t[b]);
  return out;
}

BSequence BundleTriple::zero_sequence() const {
  return BSequence(static_cast<size_t>(sites()), CMatrix::Zero(base_->dim(), base_->dim()));
}

BSequence BundleTriple::constant_sequence(const CMatrix& a) const {
  // b_n = alpha^n(a), so that every block of the representation carries a.
  BSequence out;
  for (int n = -cfg_.N; n <= cfg_.N; ++n) out.push_back(base_->alpha(a, n));
  return out;
}

UIdentityReport bundle_u_identity(const BundleTriple& bt, const std::vector<BSequence>& samples) {
  const CMatrix& dB = bt.dirac().matrix;
  const CMatrix y = bt.conjugate_by_u(dB) - dB;  // u^-1 [D_B, u]
  const int inner = bt.rmax() * bt.base().dim() * 4;
  // Interior sites -N + rmax .. N - rmax - 1 occupy slots rmax .. 2N - rmax - 1.
  const int row_lo = bt.rmax() * inner;
  const int row_hi = (2 * bt.N() - bt.rmax()) * inner;
  UIdentityReport out;
  if (row_hi <= row_lo) fail(ErrorCode::WindowTooSmall, "no interior rows: need N > rmax");
  out.interior_rows = row_hi - row_lo;

  const CMatrix g3 = spin::gamma(3);
  for (int a = row_lo; a < row_hi; ++a)
    for (int b = 0; b < y.cols(); ++b) {
      const Complex expected = a == b ? bt.lambda() * g3(a % 4, a % 4) : Complex(0.0);
      out.identity_defect = std::max(out.identity_defect, std::abs(y(a, b) - expected));
    }

  const SparseC ys = to_sparse(y);
  // u X u^-1 (x) = X(t^-1(a), t^-1(b)); compare on interior rows.
  std::vector<int> tinv(static_cast<size_t>(bt.dim()));
  for (int j = 0; j < bt.dim(); ++j) tinv[bt.shift_target(j)] = j;
  for (const auto& b : samples) {
    const CMatrix rep = bt.represent(b);
    const SparseC rs = to_sparse(rep);
    const CMatrix comm = CMatrix(ys * rs) - CMatrix(rs * ys);
    out.commutation_defect = std::max(out.commutation_defect, max_abs(comm.middleRows(row_lo, row_hi - row_lo)));

    const CMatrix moved = bt.represent(bt.alpha_star(b));
    for (int a = row_lo; a < row_hi; ++a)
      for (int c = 0; c < bt.dim(); ++c)
        out.alpha_star_defect = std::max(out.alpha_star_defect, std::abs(rep(tinv[a], tinv[c]) - moved(a, c)));
  }
  return out;
}

CMatrix represent_crossed(const BundleTriple& bt, const BundleCrossed& c) {
  const int d = bt.base().dim();
  const int N = bt.N();
  CMatrix m = CMatrix::Zero(bt.dim(), bt.dim());
  for (const auto& [l, seq] : c) {
    if (seq.size() != static_cast<size_t>(bt.sites())) fail(ErrorCode::ShapeMismatch, "coefficient sequence size");
    for (int n = -N; n <= N; ++n) {
      if (n - l < -N || n - l > N) continue;
      const CMatrix a = bt.base().alpha(seq[n + N], -n);
      for (int r = 1; r <= bt.rmax(); ++r)
        for (int h = 0; h < d; ++h)
          for (int h2 = 0; h2 < d; ++h2)
            for (int s = 0; s < 4; ++s) m(bt.index(n, r, h, s), bt.index(n - l, r, h2, s)) += a(h, h2);
    }
  }
  return m;
}

LipschitzReport lipschitz_extract(const BundleCrossed& c, const BundleTriple& bt, double tol) {
  const SparseC ds = to_sparse(bt.dirac().matrix);
  const SparseC cs = to_sparse(represent_crossed(bt, c));
  const CMatrix comm = CMatrix(ds * cs) - CMatrix(cs * ds);
  const std::vector<CMatrix> comps = partial_trace_spin(comm, spin::clifford_basis());
  const CMatrix nabla_c = comps[1] - kI * comps[2];
  const CMatrix& d5 = comps[5];
  const CMatrix& d3 = comps[3];

  const int d = bt.base().dim();
  const int N = bt.N();
  auto outer = [&](int n, int r) { return ((n + N) * bt.rmax() + (r - 1)) * d; };

  LipschitzReport rep;
  for (const auto& [l, seq] : c) {
    for (int n = -N; n <= N; ++n) {
      // Condition 2: gamma_5 block (n, n - l) is [D, alpha^-n(c_{n,l})].
      if (n - l >= -N && n - l <= N) {
        const double s = operator_norm(d5.block(outer(n, 1), outer(n - l, 1), d, d));
        if (s > rep.base_seminorm) rep.base_seminorm = s;
        if (s > 1.0 + tol && rep.seminorm_ok) {
          rep.seminorm_ok = false;
          rep.seminorm_witness = Witness{n, l, 0};
        }
      }
      // Condition 1: [nabla, c] block ((n,r), (n-r-l, r)) is the r-difference over d_r.
      for (int r = 1; r <= bt.rmax(); ++r) {
        if (n - std::abs(l) - 2 * r < -N || n + std::abs(l) > N) continue;
        const double ratio = operator_norm(nabla_c.block(outer(n, r), outer(n - r - l, r), d, d));
        if (ratio > rep.difference_ratio) rep.difference_ratio = ratio;
        if (ratio > 1.0 + tol && rep.difference_ok) {
          rep.difference_ok = false;
          rep.difference_witness = Witness{n, l, r};
        }
      }
    }
  }
  rep.derivation_norm = operator_norm(d3) / std::abs(bt.lambda());
  rep.derivation_ok = rep.derivation_norm <= 1.0 + tol;
  return rep;
}

ContrastReport dual_action_continuity_contrast(const BundleTriple& bt, const BSequence& b, double k, double k2,
                                               const std::vector<double>& h) {
  const int d = bt.base().dim();
  const int N = bt.N();
  const int size = bt.sites() * d;
  std::vector<double> weight(static_cast<size_t>(bt.sites()));
  for (int n = -N; n <= N; ++n)
    weight[n + N] = h.empty() ? 1.0 / (1.0 + std::abs(n)) : h.at(static_cast<size_t>(n + N));

  CMatrix rep = CMatrix::Zero(size, size);
  for (int n = -N; n <= N; ++n) rep.block((n + N) * d, (n + N) * d, d, d) = bt.base().alpha(b.at(n + N), -n);
  CMatrix hm = CMatrix::Zero(size, size);
  for (int n = -N; n <= N; ++n)
    for (int j = 0; j < d; ++j) hm((n + N) * d + j, (n + N) * d + j) = weight[n + N];

  // Both nabla_k and b are diagonal in r, so the norm is the max over r-blocks.
  ContrastReport out;
  for (int r = 1; r <= bt.rmax(); ++r) {
    auto nabla = [&](double kk) {
      CMatrix m = CMatrix::Zero(size, size);
      for (int n = -N; n <= N; ++n) {
        if (n - r < -N) continue;
        for (int j = 0; j < d; ++j) {
          m((n + N) * d + j, (n + N) * d + j) = 1.0 / bt.d(r);
          m((n + N) * d + j, (n - r + N) * d + j) = -std::polar(1.0, kk * r) / bt.d(r);
        }
      }
      return m;
    };
    const CMatrix diff = nabla(k) - nabla(k2);
    const CMatrix comm = commutator(diff, rep);
    out.uncompressed = std::max(out.uncompressed, operator_norm(comm));
    out.compressed = std::max(out.compressed, operator_norm(hm * comm * hm));
  }
  return out;
}

CompactnessProfile compactness_profile(const std::vector<BSequence>& family, const BundleTriple& bt,
                                       double tail_threshold) {
  CompactnessProfile out;
  const int N = bt.N();
  auto net_size = [&](int slot, double eps) {
    std::vector<const CMatrix*> centers;
    for (const auto& b : family) {
      const CMatrix& x = b.at(static_cast<size_t>(slot));
      bool covered = false;
      for (const CMatrix* c : centers)
        if (operator_norm(x - *c) <= eps) {
          covered = true;
          break;
        }
      if (!covered) centers.push_back(&x);
    }
    return static_cast<int>(centers.size());
  };
  for (int n = -N; n <= N; ++n) {
    out.net_size_coarse.push_back(net_size(n + N, 0.1));
    out.net_size_fine.push_back(net_size(n + N, 0.01));
    for (const auto& b : family) {
      const double nb = operator_norm(b.at(static_cast<size_t>(n + N)));
      out.sup_norm = std::max(out.sup_norm, nb);
      if (2 * std::abs(n) > N) out.tail = std::max(out.tail, nb);
    }
  }
  out.tail_flagged = out.tail > tail_threshold;
  return out;
}

}  // namespace smlab::bundle

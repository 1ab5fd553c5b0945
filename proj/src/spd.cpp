#include "smlab/spd.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

#include "smlab/error.hpp"

namespace smlab::spd {

void require_spd(const RMatrix& Q) {
  if (Q.rows() == 0 || Q.rows() != Q.cols()) fail(ErrorCode::NotSPD, "SPD matrix must be square and nonempty");
  if (!Q.allFinite()) fail(ErrorCode::NotSPD, "non-finite entry");
  if (Q != Q.transpose()) fail(ErrorCode::NotSPD, "matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<RMatrix> es(Q, Eigen::EigenvaluesOnly);
  if (!(es.eigenvalues()(0) > 1e-12)) fail(ErrorCode::NotSPD, "matrix is not positive definite");
}

namespace {

template <class F>
RMatrix spectral_map(const RMatrix& A, F&& f) {
  Eigen::SelfAdjointEigenSolver<RMatrix> es(A);
  const Eigen::VectorXd v = es.eigenvalues().unaryExpr(f);
  RMatrix out = es.eigenvectors() * v.asDiagonal() * es.eigenvectors().transpose();
  return 0.5 * (out + out.transpose());
}

}  // namespace

RMatrix sym_exp(const RMatrix& H) { return spectral_map(H, [](double x) { return std::exp(x); }); }

RMatrix sym_log(const RMatrix& Q) {
  require_spd(Q);
  return spectral_map(Q, [](double x) { return std::log(x); });
}

double spd_line_element(const RMatrix& Q, const RMatrix& dQ) {
  require_spd(Q);
  const RMatrix m = Q.ldlt().solve(dQ);
  return (m * m).trace() / static_cast<double>(Q.rows());
}

double spd_power_distance(const RMatrix& Q, int m, int n) {
  const RMatrix L = sym_log(Q);
  return std::abs(m - n) * std::sqrt((L * L).trace() / static_cast<double>(Q.rows()));
}

double geodesic_residual(const RMatrix& H, double s, double h) {
  if (!(h > 0.0)) fail(ErrorCode::ConfigInvalid, "finite-difference step must be > 0");
  const RMatrix q = sym_exp(s * H);
  const RMatrix qp = sym_exp((s + h) * H);
  const RMatrix qm = sym_exp((s - h) * H);
  const RMatrix d1 = (qp - qm) / (2.0 * h);
  const RMatrix d2 = (qp - 2.0 * q + qm) / (h * h);
  const auto solver = q.ldlt();
  const RMatrix a = solver.solve(d1);  // Q^-1 Q'
  const double denom = (a * a).trace();
  if (denom < 1e-14) return 0.0;
  const double numer = (a * a * a).trace() - (a * solver.solve(d2)).trace();
  const RMatrix r = d2 - d1 * a - (numer / denom) * d1;
  return r.norm();
}

double discrete_path_length(const std::vector<RMatrix>& curve) {
  if (curve.size() < 2) fail(ErrorCode::ConfigInvalid, "a path needs at least two points");
  for (const auto& q : curve) require_spd(q);
  double len = 0.0;
  for (size_t k = 0; k + 1 < curve.size(); ++k) {
    const RMatrix mid = 0.5 * (curve[k] + curve[k + 1]);
    len += std::sqrt(std::max(0.0, spd_line_element(mid, curve[k + 1] - curve[k])));
  }
  return len;
}

std::vector<RMatrix> exponential_curve(const RMatrix& H, int segments) {
  std::vector<RMatrix> out;
  for (int k = 0; k <= segments; ++k) out.push_back(sym_exp((static_cast<double>(k) / segments) * H));
  return out;
}

}  // namespace smlab::spd

#pragma once

// The Riemannian manifold of Euclidean metrics on R^d: real symmetric
// positive definite matrices with ds^2 = Tr(Q^-1 dQ Q^-1 dQ) / d.

#include <vector>

#include <Eigen/Dense>

namespace smlab::spd {

using RMatrix = Eigen::MatrixXd;

/// Throws NotSPD unless Q is square, exactly symmetric, finite, and its
/// smallest eigenvalue exceeds 1e-12.
void require_spd(const RMatrix& Q);

RMatrix sym_exp(const RMatrix& H);
RMatrix sym_log(const RMatrix& Q);

/// (1/d) Tr(Q^-1 dQ Q^-1 dQ), i.e. ds^2.
double spd_line_element(const RMatrix& Q, const RMatrix& dQ);

/// |m - n| (Tr((ln Q)^2) / d)^{1/2}.
double spd_power_distance(const RMatrix& Q, int m, int n);

/// Frobenius norm of the geodesic-equation residual along Q(s) = e^{sH},
/// derivatives by central differences of step h. Returns 0 when
/// Tr((Q^-1 Q')^2) < 1e-14.
double geodesic_residual(const RMatrix& H, double s, double h);

/// sum_k sqrt(ds^2) with the line element taken at segment midpoints.
double discrete_path_length(const std::vector<RMatrix>& curve);

/// e^{sH} sampled at s = k / segments, k = 0..segments.
std::vector<RMatrix> exponential_curve(const RMatrix& H, int segments);

}  // namespace smlab::spd

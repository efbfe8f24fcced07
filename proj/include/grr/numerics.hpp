#pragma once

#include <limits>

#include <Eigen/Dense>

namespace grr {

inline constexpr double kDefaultGapThreshold = 1e3;

// Result of splitting a descending singular spectrum at its largest multiplicative jump.
struct GapSplit {
  int n_small = 0;
  double gap_ratio = std::numeric_limits<double>::infinity();
  double sigma_min_nonzero = 0;  // smallest value above the gap
  bool resolved = true;
};

// No value below sigma_max/threshold means no small values (gap_ratio = inf). Otherwise the
// split is at the largest jump, which must reach the threshold to count as resolved.
GapSplit split_at_gap(const Eigen::VectorXd& sv_desc, double threshold = kDefaultGapThreshold);

Eigen::VectorXd singular_values(const Eigen::MatrixXcd& A);

// Orthonormal basis of the column span, rank decided by the gap rule (throws RankDeficient).
Eigen::MatrixXcd column_space(const Eigen::MatrixXcd& A, double threshold = kDefaultGapThreshold);

// Orthonormal basis of the null space, dimension decided by the gap rule (throws RankDeficient).
Eigen::MatrixXcd null_space(const Eigen::MatrixXcd& A, double threshold = kDefaultGapThreshold);

// Thin Q factor; assumes full column rank.
Eigen::MatrixXcd orthonormalize(const Eigen::MatrixXcd& A);


// Spectral norm of a real matrix by power iteration on A^T A.
double power_iteration_norm(const Eigen::MatrixXd& A, double tol = 1e-10, int max_iter = 100000);

}  // namespace grr

#include <grr/numerics.hpp>

#include <grr/errors.hpp>

namespace grr {

GapSplit split_at_gap(const Eigen::VectorXd& s, double threshold) {
  GapSplit g;
  const int k = int(s.size());
  if (k == 0) return g;
  const double smax = s(0);
  if (!(smax > 0)) {
    g.n_small = k;
    return g;
  }
  if (s(k - 1) >= smax / threshold) {
    g.sigma_min_nonzero = s(k - 1);
    return g;
  }
  // values at roundoff level are all treated as zero, so exact zeros cannot fake a jump
  const double floor = smax * 64 * std::numeric_limits<double>::epsilon();
  auto at = [&](int i) { return std::max(s(i), floor); };
  int best = -1;
  double best_ratio = 0;
  for (int i = 0; i + 1 < k; ++i) {
    double r = at(i) / at(i + 1);
    if (r > best_ratio) {
      best_ratio = r;
      best = i;
    }
  }
  g.n_small = k - (best + 1);
  g.gap_ratio = best_ratio;
  g.sigma_min_nonzero = s(best);
  g.resolved = best_ratio >= threshold;
  return g;
}

Eigen::VectorXd singular_values(const Eigen::MatrixXcd& A) {
  if (A.size() == 0) return Eigen::VectorXd();
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(A);
  return svd.singularValues();
}

Eigen::MatrixXcd column_space(const Eigen::MatrixXcd& A, double threshold) {
  if (A.cols() == 0) return Eigen::MatrixXcd(A.rows(), 0);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinU);
  GapSplit g = split_at_gap(svd.singularValues(), threshold);
  if (!g.resolved) throw Error(ErrorKind::RankDeficient, "ambiguous numerical rank");
  int rank = int(svd.singularValues().size()) - g.n_small;
  return svd.matrixU().leftCols(rank);
}

Eigen::MatrixXcd null_space(const Eigen::MatrixXcd& A, double threshold) {
  const int n = int(A.cols());
  if (n == 0) return Eigen::MatrixXcd(0, 0);
  if (A.rows() == 0) return Eigen::MatrixXcd::Identity(n, n);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeFullV);
  Eigen::VectorXd s = Eigen::VectorXd::Zero(n);
  s.head(svd.singularValues().size()) = svd.singularValues();
  GapSplit g = split_at_gap(s, threshold);
  if (!g.resolved) throw Error(ErrorKind::RankDeficient, "ambiguous null space dimension");
  return svd.matrixV().rightCols(g.n_small);
}

Eigen::MatrixXcd orthonormalize(const Eigen::MatrixXcd& A) {
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(A);
  return qr.householderQ() * Eigen::MatrixXcd::Identity(A.rows(), A.cols());
}

double power_iteration_norm(const Eigen::MatrixXd& A, double tol, int max_iter) {
  if (A.size() == 0 || A.cwiseAbs().maxCoeff() == 0) return 0;
  Eigen::VectorXd v = Eigen::VectorXd::Ones(A.cols()).normalized();
  double prev = 0;
  for (int it = 0; it < max_iter; ++it) {
    Eigen::VectorXd w = A.transpose() * (A * v);
    double n = w.norm();
    if (n == 0) return 0;
    double est = std::sqrt(v.dot(w));
    v = w / n;
    if (it > 0 && std::abs(est - prev) <= tol * est) return std::sqrt(v.dot(A.transpose() * (A * v)));
    prev = est;
  }
  return std::sqrt(v.dot(A.transpose() * (A * v)));
}

}  // namespace grr

#include <grr/bar_projector.hpp>

#include <cmath>

#include <grr/numerics.hpp>

namespace grr {

namespace {

// Taylor coefficients 0..n of (c z + d) / (a z + b).
Eigen::VectorXcd ratio_series(const Moebius& T, int n) {
  Eigen::VectorXcd h(n + 1);
  cplx rho = -T.a / T.b;
  cplx pw(1.0);
  h(0) = T.d / T.b;
  for (int k = 1; k <= n; ++k) {
    h(k) = (T.d * pw * rho + T.c * pw) / T.b;
    pw *= rho;
  }
  return h;
}

void check_pair(const Disk& source, const Disk& target) {
  conformal_distance(source, target);  // throws DisksOverlap
}

cplx chart_value(const Moebius& chart, const SpherePoint& p, bool& infinite) {
  auto w = chart.apply(p);
  infinite = w.infinite;
  return w.value;
}

}  // namespace

Eigen::MatrixXcd bar_block(const Disk& source, const Disk& target, int n_plus, int n_minus) {
  check_pair(source, target);
  // zeta_l as a function of zeta_j; the source mode zeta_l^{-m} is h^m with h = 1/T
  Moebius T = local_chart(source) * local_chart(target).inverse();
  Eigen::VectorXcd h = ratio_series(T, n_plus);
  Eigen::VectorXcd p = h;
  Eigen::MatrixXcd B(n_plus, n_minus);
  for (int m = 1; m <= n_minus; ++m) {
    for (int n = 1; n <= n_plus; ++n) B(n - 1, m - 1) = p(n) * std::sqrt(double(n) / m);
    if (m == n_minus) break;
    Eigen::VectorXcd q = Eigen::VectorXcd::Zero(n_plus + 1);
    for (int i = 0; i <= n_plus; ++i) {
      if (p(i) == cplx(0)) continue;
      q.segment(i, n_plus + 1 - i) += p(i) * h.head(n_plus + 1 - i);
    }
    p = q;
  }
  return B;
}

BlockMatrix bar_block_closed_form(const Disk& source, const Disk& target, int N) {
  return {CircleModeSpace(source, N), CircleModeSpace(target, N), bar_block(source, target, N, N)};
}

double mode_decay_rate(const Disk& source, const Disk& target) {
  auto cs = local_chart(source), ct = local_chart(target);
  bool inf = false;
  double q = 0;
  // singular point of the source modes seen from the target, and vice versa
  cplx pj = chart_value(ct, cs.inverse().apply(cplx(0)), inf);
  if (!inf) q = std::max(q, 1.0 / std::abs(pj));
  cplx pl = chart_value(cs, ct.inverse().apply(cplx(0)), inf);
  if (!inf) q = std::max(q, 1.0 / std::abs(pl));
  return q;
}

int alias_free_samples(double q, int n_out, int n_in) {
  long K = n_in + 1;
  if (q > 0) {
    // tail of a degree-n_in pole expansion: binom(K + n_in, n_in) q^K below 1e-18
    const double target = std::log(1e-18);
    for (K = n_in + 1; K < (1L << 22); K += 8) {
      double lg = std::lgamma(double(K + n_in + 1)) - std::lgamma(double(K + 1)) -
                  std::lgamma(double(n_in + 1));
      if (lg + K * std::log(q) < target) break;
    }
  }
  return next_pow2(std::max<long>(4L * std::max(n_out, n_in), 2L * (n_out + K) + 2));
}

BlockMatrix bar_block_quadrature(const Disk& source, const Disk& target, int N, int M) {
  check_pair(source, target);
  if (M == 0) M = alias_free_samples(mode_decay_rate(source, target), N, N);
  if (M < 4 * N) throw Error(ErrorKind::TooFewSamples, "quadrature needs M >= 4N");
  CircleModeSpace tspace(target, N);
  Eigen::VectorXcd z = sample_points(target, M);
  Moebius cs = local_chart(source);
  Eigen::VectorXcd zeta(M);
  for (int t = 0; t < M; ++t) zeta(t) = cs(z(t));
  Eigen::MatrixXcd B(N, N);
  for (int m = 1; m <= N; ++m) {
    Eigen::VectorXcd f(M);
    for (int t = 0; t < M; ++t) f(t) = std::pow(zeta(t), -m);
    ModeVector v = sample_to_modes(f, tspace);
    for (int n = 1; n <= N; ++n) B(n - 1, m - 1) = v[n] * std::sqrt(double(n) / m);
  }
  return {CircleModeSpace(source, N), tspace, B};
}

double bar_norm(const Disk& source, const Disk& target, int N) {
  return bar_singular_values(source, target, N)(0);
}

Eigen::VectorXd bar_singular_values(const Disk& source, const Disk& target, int N) {
  return singular_values(bar_block(source, target, N, N));
}

double symmetric_model_mode_norm(double b, double lambda, int n) {
  if (!(b > 0 && b < 1) || !(lambda >= 0) || n < 1 || !std::isfinite(lambda))
    throw Error(ErrorKind::BadParameters, "need 0 < b < 1, lambda >= 0, n >= 1");
  return std::sqrt(-std::expm1(4.0 * n * std::log(b))) * std::exp(-n * lambda);
}

DeltaBlocks delta_projector_block(const Disk& source, const Disk& target, int N, int M) {
  check_pair(source, target);
  if (M == 0) M = alias_free_samples(mode_decay_rate(source, target), N, N);
  if (M < 4 * N) throw Error(ErrorKind::TooFewSamples, "need M >= 4N");
  CircleModeSpace tspace(target, N);
  Eigen::VectorXcd z = sample_points(target, M);
  Moebius cs = local_chart(source);
  DeltaBlocks D;
  D.plus_plus.resize(N, N);
  D.plus_minus.resize(N, N);
  D.minus_plus.resize(N, N);
  D.minus_minus.resize(N, N);
  Eigen::VectorXcd f(M), g(M);
  for (int m = 1; m <= N; ++m) {
    // Outside the source disk the minus mode extends holomorphically as zeta^{-m} and the
    // plus mode antiholomorphically as conj(zeta)^{-m}; both are evaluated on the target circle.
    for (int t = 0; t < M; ++t) {
      cplx w = std::pow(cs(z(t)), -m);
      f(t) = w;
      g(t) = std::conj(w);
    }
    ModeVector vm = sample_to_modes(f, tspace);
    ModeVector vp = sample_to_modes(g, tspace);
    for (int n = 1; n <= N; ++n) {
      double s = std::sqrt(double(n) / m);
      D.minus_plus(n - 1, m - 1) = vm[n] * s;
      D.minus_minus(n - 1, m - 1) = vm[-n] * s;
      D.plus_plus(n - 1, m - 1) = vp[n] * s;
      D.plus_minus(n - 1, m - 1) = vp[-n] * s;
    }
  }
  return D;
}

BlockOperator assemble_C(const GluingModel& model, int n_plus, int n_minus) {
  const int J = model.circle_count();
  BlockOperator C;
  C.n_circles = J;
  C.rows_per = n_plus;
  C.cols_per = n_minus;
  C.mat = Eigen::MatrixXcd::Zero(J * n_plus, J * n_minus);
  std::vector<int> piece(J);
  for (int j = 0; j < J; ++j) piece[j] = model.piece_of(j);
  for (int j = 0; j < J; ++j)
    for (int l = 0; l < J; ++l) {
      if (j == l || piece[j] != piece[l]) continue;
      try {
        C.block(j, l) = bar_block(model.circle(l), model.circle(j), n_plus, n_minus);
      } catch (const Error& e) {
        throw Error(ErrorKind::InvalidModel, std::string("same-piece disks: ") + e.what());
      }
    }
  return C;
}

BlockOperator assemble_C(const GluingModel& model, int N) { return assemble_C(model, N, N); }

}  // namespace grr

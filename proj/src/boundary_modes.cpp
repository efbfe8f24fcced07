#include <grr/boundary_modes.hpp>

#include <unsupported/Eigen/FFT>

namespace grr {

ModeVector::ModeVector(const CircleModeSpace& s, Eigen::VectorXcd c) : space(s), coeffs(std::move(c)) {
  if (coeffs.size() != s.dim()) throw Error(ErrorKind::BadParameters, "coefficient count does not match space");
}

double h12_norm(const ModeVector& v, double skew) {
  const int N = v.space.n_modes;
  double s = 0;
  for (int i = 0; i < v.space.dim(); ++i) {
    int k = position_mode(i, N);
    s += (k > 0 ? skew : 1.0) * mode_weight(k) * std::norm(v.coeffs(i));
  }
  return std::sqrt(s);
}

std::pair<ModeVector, ModeVector> split_pm(const ModeVector& v) {
  const int N = v.space.n_modes;
  ModeVector plus(v.space), minus(v.space);
  plus.coeffs.head(N) = v.coeffs.head(N);
  minus.coeffs.tail(N) = v.coeffs.tail(N);
  return {plus, minus};
}

Eigen::VectorXcd to_orthonormal(const ModeVector& v) {
  Eigen::VectorXcd x = v.coeffs;
  for (int i = 0; i < x.size(); ++i) x(i) *= std::sqrt(mode_weight(position_mode(i, v.space.n_modes)));
  return x;
}

ModeVector from_orthonormal(const CircleModeSpace& s, const Eigen::VectorXcd& x) {
  ModeVector v(s, x);
  for (int i = 0; i < x.size(); ++i) v.coeffs(i) /= std::sqrt(mode_weight(position_mode(i, s.n_modes)));
  return v;
}

Eigen::VectorXcd sample_points(const Disk& D, int M) {
  Eigen::VectorXcd z(M);
  for (int t = 0; t < M; ++t) z(t) = D.boundary_point(2 * std::numbers::pi * t / M);
  return z;
}

Eigen::VectorXcd local_fourier(const Eigen::VectorXcd& samples, const Disk& D, int K) {
  const long M = samples.size();
  Eigen::FFT<double> fft;
  Eigen::VectorXcd X(M);
  fft.fwd(X, samples);
  Eigen::VectorXcd out(2 * K + 1);
  // zeta = exp(i theta) inside, exp(-i theta) for an exterior disk
  for (int k = -K; k <= K; ++k) {
    long idx = D.is_interior() ? k : -k;
    idx = ((idx % M) + M) % M;
    out(k + K) = X(idx) / double(M);
  }
  return out;
}

ModeVector sample_to_modes(const Eigen::VectorXcd& samples, const CircleModeSpace& space) {
  const int N = space.n_modes;
  if (samples.size() < 2 * N + 2)
    throw Error(ErrorKind::TooFewSamples, "need at least 2N+2 samples");
  Eigen::VectorXcd F = local_fourier(samples, space.circle, N);
  ModeVector v(space);
  for (int k = 1; k <= N; ++k) {
    v[k] = F(N + k);
    v[-k] = F(N - k);
  }
  return v;
}

Eigen::VectorXcd modes_to_samples(const ModeVector& v, int M) {
  const int N = v.space.n_modes;
  Eigen::VectorXcd X = Eigen::VectorXcd::Zero(M);
  for (int k = -N; k <= N; ++k) {
    if (k == 0) continue;
    long idx = v.space.circle.is_interior() ? k : -k;
    idx = ((idx % M) + M) % M;
    X(idx) += v[k] * double(M);
  }
  Eigen::FFT<double> fft;
  Eigen::VectorXcd s(M);
  fft.inv(s, X);
  return s;
}

int next_pow2(long n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace grr

#pragma once

#include <Eigen/Dense>

#include <grr/sphere_geom.hpp>

namespace grr {

// Truncated H^{1/2}(gamma)/const on the boundary circle of a disk. Modes are powers of the
// disk's local coordinate zeta (see local_chart), k in {-N..-1, 1..N}; k >= 1 are the
// plus modes, holomorphic inside the removed disk.
struct CircleModeSpace {
  Disk circle;
  int n_modes = 1;

  CircleModeSpace() = default;
  CircleModeSpace(const Disk& D, int N) : circle(D), n_modes(N) {
    if (N < 1) throw Error(ErrorKind::BadParameters, "mode count must be at least 1");
  }
  int dim() const { return 2 * n_modes; }
};

// Storage order: plus modes 1..N, then minus modes -1..-N.
inline int mode_position(int k, int N) { return k > 0 ? k - 1 : N - k - 1; }
inline int position_mode(int i, int N) { return i < N ? i + 1 : -(i - N + 1); }

// Raw coefficients c_k of f = sum c_k zeta^k.
struct ModeVector {
  CircleModeSpace space;
  Eigen::VectorXcd coeffs;

  explicit ModeVector(const CircleModeSpace& s)
      : space(s), coeffs(Eigen::VectorXcd::Zero(s.dim())) {}
  ModeVector(const CircleModeSpace& s, Eigen::VectorXcd c);

  cplx& operator[](int k) { return coeffs(mode_position(k, space.n_modes)); }
  cplx operator[](int k) const { return coeffs(mode_position(k, space.n_modes)); }
};

// pi |k|, the Dirichlet energy of zeta^k on the unit disk.
inline double mode_weight(int k) { return std::numbers::pi * std::abs(k); }

// sqrt(sum pi|k| |c_k|^2); skew rescales the plus-mode weights.
double h12_norm(const ModeVector& v, double skew = 1.0);

std::pair<ModeVector, ModeVector> split_pm(const ModeVector& v);

// Coordinates in the orthonormal basis zeta^k / sqrt(pi|k|), and back.
Eigen::VectorXcd to_orthonormal(const ModeVector& v);
ModeVector from_orthonormal(const CircleModeSpace& s, const Eigen::VectorXcd& x);

// Sample t sits at center + r exp(2 pi i t / M).
Eigen::VectorXcd sample_points(const Disk& D, int M);
ModeVector sample_to_modes(const Eigen::VectorXcd& samples, const CircleModeSpace& space);
Eigen::VectorXcd modes_to_samples(const ModeVector& v, int M);

// Discrete Fourier coefficients in the disk's local coordinate, indices -K..K (position k + K),
// including k = 0. Used where a wider window than a CircleModeSpace is needed.
Eigen::VectorXcd local_fourier(const Eigen::VectorXcd& samples, const Disk& D, int K);

int next_pow2(long n);

}  // namespace grr

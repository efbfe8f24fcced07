#pragma once

#include <grr/boundary_modes.hpp>
#include <grr/model.hpp>

namespace grr {

// Rows: target plus modes n >= 1. Columns: source minus modes m >= 1 (k = -m).
// Orthonormal (pi|k|) coordinates on both sides.
struct BlockMatrix {
  CircleModeSpace source;
  CircleModeSpace target;
  Eigen::MatrixXcd entries;
};

// Re-expansion of the source exterior modes zeta_l^{-m} in powers of zeta_j around the target.
Eigen::MatrixXcd bar_block(const Disk& source, const Disk& target, int n_plus, int n_minus);

BlockMatrix bar_block_closed_form(const Disk& source, const Disk& target, int N);

// Sampling oracle. M = 0 picks the sample count from the decay rate of the source modes.
BlockMatrix bar_block_quadrature(const Disk& source, const Disk& target, int N, int M = 0);

double bar_norm(const Disk& source, const Disk& target, int N);
Eigen::VectorXd bar_singular_values(const Disk& source, const Disk& target, int N);

// Per-mode norm sqrt(1 - b^{4n}) e^{-n lambda} of the projector component on the model where
// the rational curve has its boundary circles identified.
double symmetric_model_mode_norm(double b, double lambda, int n);

// Geometric decay rate of block entries along either index (0 when a side is polynomial).
double mode_decay_rate(const Disk& source, const Disk& target);

// Sample count making aliasing of the first n_out coefficients of the source modes up to
// degree n_in negligible in double precision.
int alias_free_samples(double decay_rate, int n_out, int n_in);

// Blocks of the projector between the spaces attached to two disks, named from->to.
// Built by sampling the harmonic extensions, not from the bar-block formula.
struct DeltaBlocks {
  Eigen::MatrixXcd plus_plus, plus_minus, minus_plus, minus_minus;
};
DeltaBlocks delta_projector_block(const Disk& source, const Disk& target, int N, int M = 0);

// Dense operator with a uniform block layout over circles.
struct BlockOperator {
  int n_circles = 0;
  int rows_per = 0;
  int cols_per = 0;
  Eigen::MatrixXcd mat;

  auto block(int j, int l) { return mat.block(j * rows_per, l * cols_per, rows_per, cols_per); }
  auto block(int j, int l) const { return mat.block(j * rows_per, l * cols_per, rows_per, cols_per); }
};

// Minus modes of every circle -> plus modes of every circle; zero on the diagonal and across pieces.
BlockOperator assemble_C(const GluingModel& model, int N);
BlockOperator assemble_C(const GluingModel& model, int n_plus, int n_minus);

}  // namespace grr

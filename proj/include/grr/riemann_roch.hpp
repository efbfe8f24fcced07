#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <grr/gluing.hpp>

namespace grr {

// (e^{-lambda_jl}) for distinct circles of one piece, 0 elsewhere.
Eigen::MatrixXd criterion_matrix(const GluingModel& model);

struct HSCheck {
  std::vector<double> row_sums;  // sum over m != j of e^{-2 lambda_mj}
  double total = 0;
  double max_row = 0;
  bool finite = true;
  std::optional<double> weighted_total;  // rows weighted by |psi of the partner circle|^2
};
HSCheck check_hs(const GluingModel& model);

// Operator norm of a nonnegative matrix by power iteration.
double majorant_norm(const Eigen::MatrixXd& A);

// Truncated mismatch problem at N modes per circle.
//   mu:   orthonormal basis of W_an (graph of C over the minus modes, plus images kept to
//         window B) -> per-pair mismatch in window B2 with the allowance directions dropped.
//   dual: orthonormal basis of W_an's complement (graph of -C^* over the plus modes) ->
//         conditions for lying in the span of W_phi_psi_V; its kernel is the cokernel of mu.
struct Mismatch {
  int N = 0, B = 0, B2 = 0;
  Eigen::MatrixXcd domain;   // columns: W_an basis, rows: circles with 2B coordinates each
  Eigen::MatrixXcd mu;
  Eigen::MatrixXcd codomain; // columns: W_an complement basis, rows: circles with 2N each
  Eigen::MatrixXcd dual;
};
Mismatch assemble_mismatch(const GluingModel& model, int N);

struct IndexResult {
  int h0 = 0, h1 = 0, index = 0;
  double gap_ratio = 0;  // smaller of the two gaps; inf when neither side has small values
  double sigma_min_nonzero = 0;
  bool resolved = true;
};
IndexResult extract_index(const Mismatch& m, double gap_threshold = kDefaultGapThreshold);

// Singular value of R C at three quarters of its sorted spectrum, R sending plus data on each
// circle to minus data on its partner through the gluing.
double rc_tail(const GluingModel& model, int N);
inline constexpr double kTailThreshold = 1e-6;

enum class Verdict { Pass, Fail, Unresolved };
const char* to_string(Verdict v);

struct Truncation {
  int N = 0;
  int h0 = 0, h1 = 0;
  double gap_ratio = 0;
  double sigma_min_nonzero = 0;
  bool resolved = true;
  double rc_tail = 0;
  bool operator==(const Truncation&) const = default;
};

struct Criteria {
  double hs_sum = 0;
  double majorant_norm = 0;
  std::optional<double> weighted_hs_sum;
  bool operator==(const Criteria&) const = default;
};

struct RRReport {
  int degree = 0;
  int components = 1;
  int expected_index = 0;
  int h0 = 0, h1 = 0, index = 0;
  double gap_ratio = 0;
  double sigma_min_nonzero = 0;
  Criteria criteria;
  std::vector<Truncation> truncations;
  Verdict verdict = Verdict::Unresolved;
  std::string note;
  bool operator==(const RRReport&) const = default;
};

RRReport rr_verdict(const GluingModel& model, const std::vector<int>& n_list,
                    double gap_threshold = kDefaultGapThreshold);

struct Excess {
  int dim_intersection = 0;
  int codim_sum = 0;
  int excess = 0;
};
Excess subspace_excess(const Eigen::MatrixXcd& U, const Eigen::MatrixXcd& V, int ambient_dim,
                       double gap_threshold = kDefaultGapThreshold);

struct LabTrial {
  int expected = 0;
  Excess measured;
  bool pass = false;
};
// Graphs of random A1: C^n1 -> C^n2 and A2: C^n2 -> C^n1, each made comparable of relative
// dimension d1 (resp. d2) by adding random vectors or dropping basis vectors.
LabTrial fredholm_lab_trial(int n1, int n2, int d1, int d2, std::uint64_t seed);

}  // namespace grr

#pragma once

#include <string>
#include <vector>

#include <grr/bar_projector.hpp>
#include <grr/model.hpp>
#include <grr/numerics.hpp>

namespace grr {

enum class Issue { DisksOverlap, BadPairing, BadIdentification, BadPsi, BadAllowance, Disconnected };
const char* to_string(Issue issue);

struct Violation {
  Issue kind;
  std::string message;
  double value = 0;      // e.g. max sample deviation for BadIdentification
  bool warning = false;  // reported but does not invalidate the model
};

struct Diagnostics {
  std::vector<Violation> items;
  bool ok() const {
    for (const auto& v : items)
      if (!v.warning) return false;
    return true;
  }
  bool has(Issue k) const {
    for (const auto& v : items)
      if (v.kind == k) return true;
    return false;
  }
};

Diagnostics validate(const GluingModel& model);
void require_valid(const GluingModel& model);  // throws InvalidModel listing the violations

// Connected components of the glued curve (pieces joined by pairs).
int component_count(const GluingModel& model);

// sum over pairs of (winding of psi + dim V - 1)
int degree(const GluingModel& model);

// Non-constant allowance directions of V_j as local-coordinate modes on circle j:
// the psi direction -n first, then 1, 2, ... as needed.
std::vector<int> allowance_modes(const GluingPair& pair);
std::vector<ModeVector> allowance_basis(const GluingModel& model, int pair_index, int N);

// psi_{j2} at a point of circle j2, derived from psi_j as 1/(psi_j o phi^{-1}).
cplx partner_psi_value(const GluingModel& model, int pair_index, cplx w);

// Matrix of f -> psi * (f o phi) in orthonormal mode coordinates, phi mapping the source
// circle onto the target circle; psi is evaluated on the source circle. Rows are source
// modes, columns target modes.
Eigen::MatrixXcd pullback_matrix(const Moebius& phi, const Psi& psi, const CircleModeSpace& source,
                                 const CircleModeSpace& target);

double distortion_phi(const Moebius& phi, const Disk& source, const Disk& target, int N);

// Compatible pairs (f_j, f_j2) with f_j - psi phi^* f_j2 in V_j, in the pair space
// [circle j (2N), circle j2 (2N)] of orthonormal coordinates.
struct GraphBlock {
  Eigen::MatrixXcd A;      // (plus_j, plus_j2) -> (minus_j, minus_j2); empty for winding psi
  Eigen::MatrixXcd basis;  // orthonormal basis of the truncated compatible subspace plus V
  int defect = 0;          // reldim against a graph: ind psi + 1 for non-constant psi
  double gap_ratio = 0;
};
GraphBlock gluing_graph_block(const GluingModel& model, int pair_index, int N,
                              double threshold = kDefaultGapThreshold);

struct PhiPsiSubspace {
  Eigen::MatrixXcd basis;       // rows: circles in order, 2N orthonormal coordinates each
  std::vector<int> pair_of_column;
};
PhiPsiSubspace assemble_W_phi_psi_V(const GluingModel& model, int N);

// Reroutes every pair through a new annulus piece {e^{-L} < |z| < 1}.
GluingModel blackwhite_expand(const GluingModel& model, const std::vector<double>& tube_lengths);

}  // namespace grr

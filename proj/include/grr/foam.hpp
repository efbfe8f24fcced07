#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <grr/model.hpp>

namespace grr {

enum class DustMode { FinitePoints, DenseSequence };
enum class SequenceKind { Spiral, RationalGrid };

// Dust target and the sequence a_n the greedy construction draws centers from. Everything
// lives in the plane inside a bounding disk, which keeps infinity uncovered.
struct DustSpec {
  DustMode mode = DustMode::FinitePoints;
  std::vector<cplx> dust;
  SequenceKind sequence = SequenceKind::Spiral;
  cplx bound_center{0.0};
  double bound_radius = 1.0;
  // spiral: a_n = dust[n mod K] + spiral_radius / sqrt(1 + n/K) * exp(i (phase + n * golden angle))
  double spiral_radius = 0.25;
  double phase = 0.0;
  long max_sequence = 2000000;  // generator budget before GeneratorExhausted
  bool operator==(const DustSpec&) const = default;
};

void validate_dust(const DustSpec& spec);

// Lazily enumerates a_0, a_1, ...
class SequenceGenerator {
 public:
  explicit SequenceGenerator(const DustSpec& spec);
  cplx next();
  long index() const { return n_; }  // index of the next point

 private:
  DustSpec spec_;
  long n_ = 0;
  // rational grid state
  long q_ = 1;
  std::vector<cplx> pending_;
  std::size_t pos_ = 0;
  void refill();
};

struct FoamStep {
  long sequence_index = 0;
  double r_tilde = 0;
  int iterations = 0;
  bool cap_active = false;
  bool operator==(const FoamStep&) const = default;
};

struct FoamState {
  std::vector<Disk> disks;
  std::vector<double> sums;  // s_j = sum_{i<j} e^{-2 lambda_ij}, enforced <= 2^{-(j+1)}
  std::vector<FoamStep> log;
  DustSpec dust;
  std::uint64_t seed = 0;
  double radius_tol = 1e-12;
  double shrink = 1e-9;
  bool operator==(const FoamState&) const = default;
};

// Seed sets the spiral phase; the rational grid ignores it.
FoamState build_foam(DustSpec dust, int count, std::uint64_t seed = 0);

// Sum of e^{-2 lambda} between disk j and the disks before it.
double foam_prefix_sum(const std::vector<Disk>& disks, int j);

enum class FoamIssue { DisksOverlap, ConstraintExceeded, DustCovered, HSSumTooLarge, CoveringViolated, OutsideBound };
const char* to_string(FoamIssue issue);
struct FoamViolation {
  FoamIssue kind;
  std::string message;
};
// covering_points: how many initial sequence points to check for the covering property (only
// points the construction actually drew are checked).
std::vector<FoamViolation> verify_foam(const FoamState& state, int covering_points = 200);

enum class Pairing { Consecutive, Random };
GluingModel foam_to_model(const FoamState& state, Pairing pairing = Pairing::Consecutive, std::uint64_t seed = 0,
                          int limit = -1);

}  // namespace grr

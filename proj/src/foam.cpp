#include <grr/foam.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace grr {

namespace {

constexpr double kMaxRelativeDrift = 1e-8;
const double kGoldenAngle = std::numbers::pi * (3.0 - std::sqrt(5.0));

double e2l(const Disk& a, const Disk& b) { return std::exp(-2 * conformal_distance(a, b)); }

double prefix_sum_with(const std::vector<Disk>& disks, const Disk& D) {
  double s = 0;
  for (const auto& E : disks) s += e2l(E, D);
  return s;
}

}  // namespace

void validate_dust(const DustSpec& spec) {
  if (!(spec.bound_radius > 0) || !std::isfinite(spec.bound_radius))
    throw Error(ErrorKind::BadParameters, "bounding radius must be positive");
  if (spec.mode == DustMode::DenseSequence && !spec.dust.empty())
    throw Error(ErrorKind::BadParameters, "dense-sequence mode has an empty dust target");
  if (spec.sequence == SequenceKind::Spiral) {
    if (spec.dust.empty()) throw Error(ErrorKind::BadParameters, "spiral sequence needs dust points to wind around");
    if (!(spec.spiral_radius > 0)) throw Error(ErrorKind::BadParameters, "spiral radius must be positive");
  }
  for (cplx d : spec.dust)
    if (!(std::abs(d - spec.bound_center) < spec.bound_radius))
      throw Error(ErrorKind::BadParameters, "dust points must lie inside the bounding disk");
  if (spec.max_sequence < 1) throw Error(ErrorKind::BadParameters, "sequence budget must be positive");
}

SequenceGenerator::SequenceGenerator(const DustSpec& spec) : spec_(spec) { validate_dust(spec); }

void SequenceGenerator::refill() {
  // all points a/q + i b/q inside the bounding disk not already listed with a smaller denominator
  pending_.clear();
  pos_ = 0;
  while (pending_.empty()) {
    const long q = q_++;
    const double R = spec_.bound_radius;
    long lo_a = long(std::floor((spec_.bound_center.real() - R) * q)), hi_a = long(std::ceil((spec_.bound_center.real() + R) * q));
    long lo_b = long(std::floor((spec_.bound_center.imag() - R) * q)), hi_b = long(std::ceil((spec_.bound_center.imag() + R) * q));
    for (long b = lo_b; b <= hi_b; ++b)
      for (long a = lo_a; a <= hi_a; ++a) {
        if (std::gcd(std::gcd(std::abs(a), std::abs(b)), q) != 1) continue;
        cplx z(double(a) / q, double(b) / q);
        if (std::abs(z - spec_.bound_center) < R) pending_.push_back(z);
      }
  }
}

cplx SequenceGenerator::next() {
  const long n = n_++;
  if (spec_.sequence == SequenceKind::Spiral) {
    const long K = long(spec_.dust.size());
    double rho = spec_.spiral_radius / std::sqrt(1.0 + double(n) / K);
    return spec_.dust[n % K] + std::polar(rho, spec_.phase + n * kGoldenAngle);
  }
  if (pos_ >= pending_.size()) refill();
  return pending_[pos_++];
}

double foam_prefix_sum(const std::vector<Disk>& disks, int j) {
  double s = 0;
  for (int i = 0; i < j; ++i) s += e2l(disks[i], disks[j]);
  return s;
}

FoamState build_foam(DustSpec dust, int count, std::uint64_t seed) {
  if (count < 0) throw Error(ErrorKind::BadParameters, "count must be nonnegative");
  if (dust.sequence == SequenceKind::Spiral) {
    std::mt19937_64 rng(seed);
    dust.phase = std::uniform_real_distribution<double>(0.0, 2 * std::numbers::pi)(rng);
  }
  validate_dust(dust);
  FoamState st;
  st.dust = dust;
  st.seed = seed;
  SequenceGenerator gen(dust);

  while (int(st.disks.size()) < count) {
    if (gen.index() >= dust.max_sequence) {
      std::ostringstream msg;
      msg << "only " << st.disks.size() << " of " << count << " disks placed within " << dust.max_sequence
          << " sequence points";
      throw Error(ErrorKind::GeneratorExhausted, msg.str());
    }
    long idx = gen.index();
    cplx c = gen.next();
    if (!(std::abs(c - dust.bound_center) < dust.bound_radius)) continue;
    bool covered = false;
    for (const auto& D : st.disks)
      if (D.contains_closed(c)) {
        covered = true;
        break;
      }
    if (covered) continue;
    bool on_dust = false;
    double rt = dust.bound_radius - std::abs(c - dust.bound_center);
    for (cplx d : dust.dust) {
      if (c == d) on_dust = true;
      rt = std::min(rt, std::abs(c - d));
    }
    if (on_dust) continue;
    for (const auto& D : st.disks) rt = std::min(rt, std::abs(c - D.center) - D.radius);

    const int j0 = int(st.disks.size()) + 1;
    const double bound = std::ldexp(1.0, -j0);
    FoamStep step;
    step.sequence_index = idx;
    step.r_tilde = rt;
    double r = rt / 2;
    double s = prefix_sum_with(st.disks, Disk(c, r));
    if (s <= bound) {
      step.cap_active = true;
    } else {
      // the sum increases with r; keep the largest radius meeting the bound
      double lo = 0, hi = r;
      while (hi - lo > st.radius_tol * hi) {
        double mid = 0.5 * (lo + hi);
        if (prefix_sum_with(st.disks, Disk(c, mid)) <= bound)
          lo = mid;
        else
          hi = mid;
        ++step.iterations;
      }
      r = lo * (1 - st.shrink);
      s = prefix_sum_with(st.disks, Disk(c, r));
    }
    st.disks.emplace_back(c, r);
    st.sums.push_back(s);
    st.log.push_back(step);
  }
  return st;
}

const char* to_string(FoamIssue issue) {
  switch (issue) {
    case FoamIssue::DisksOverlap: return "DisksOverlap";
    case FoamIssue::ConstraintExceeded: return "ConstraintExceeded";
    case FoamIssue::DustCovered: return "DustCovered";
    case FoamIssue::HSSumTooLarge: return "HSSumTooLarge";
    case FoamIssue::CoveringViolated: return "CoveringViolated";
    case FoamIssue::OutsideBound: return "OutsideBound";
  }
  return "?";
}

std::vector<FoamViolation> verify_foam(const FoamState& st, int covering_points) {
  std::vector<FoamViolation> out;
  auto add = [&](FoamIssue k, const std::string& m) { out.push_back({k, m}); };
  const int M = int(st.disks.size());
  double total = 0;
  for (int j = 0; j < M; ++j) {
    const Disk& D = st.disks[j];
    if (!(std::abs(D.center - st.dust.bound_center) + D.radius < st.dust.bound_radius))
      add(FoamIssue::OutsideBound, "disk " + std::to_string(j) + " leaves the bounding disk");
    for (cplx d : st.dust.dust)
      if (D.contains_closed(d)) add(FoamIssue::DustCovered, "disk " + std::to_string(j) + " covers a dust point");
    double s = 0;
    bool overlap = false;
    for (int i = 0; i < j; ++i) {
      double lambda = 0;
      try {
        lambda = conformal_distance(st.disks[i], D);
      } catch (const Error&) {
        lambda = 0;
      }
      if (!(lambda > 0)) {
        add(FoamIssue::DisksOverlap, "disks " + std::to_string(i) + " and " + std::to_string(j) + " are not disjoint");
        overlap = true;
        continue;
      }
      s += std::exp(-2 * lambda);
    }
    total += s;
    if (!overlap && !(s <= std::ldexp(1.0, -(j + 1)))) {
      std::ostringstream msg;
      msg << "disk " << j << ": sum " << s << " exceeds 2^-" << j + 1;
      add(FoamIssue::ConstraintExceeded, msg.str());
    }
  }
  if (!(total < 1)) add(FoamIssue::HSSumTooLarge, "total e^{-2 lambda} sum is not below 1");

  if (M > 0 && covering_points > 0) {
    // each of the first points is a center or lies in a closed disk placed before it was drawn
    SequenceGenerator gen(st.dust);
    long last = st.log.back().sequence_index;
    // points past the last center were never drawn, so the property says nothing about them
    for (long n = 0; n < std::min<long>(covering_points, last + 1); ++n) {
      cplx a = gen.next();
      if (!(std::abs(a - st.dust.bound_center) < st.dust.bound_radius)) continue;
      bool ok = false;
      for (int j = 0; j < M && !ok; ++j) {
        if (st.log[j].sequence_index == n) ok = st.disks[j].center == a;
        else if (st.log[j].sequence_index < n) ok = st.disks[j].contains_closed(a);
      }
      if (!ok) add(FoamIssue::CoveringViolated, "sequence point " + std::to_string(n) + " is neither a center nor covered");
    }
  }
  return out;
}

GluingModel foam_to_model(const FoamState& st, Pairing pairing, std::uint64_t seed, int limit) {
  int M = limit < 0 ? int(st.disks.size()) : std::min(limit, int(st.disks.size()));
  if (M % 2 != 0) throw Error(ErrorKind::OddDiskCount, "need an even number of disks to pair");
  GluingModel model;
  model.pieces.push_back(std::vector<Disk>(st.disks.begin(), st.disks.begin() + M));
  std::vector<int> order(M);
  std::iota(order.begin(), order.end(), 0);
  if (pairing == Pairing::Random) {
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
  }
  auto unrepresentable = [](int j, int k) {
    return Error(ErrorKind::InvalidModel, "identification of disks " + std::to_string(j) + " and " +
                                              std::to_string(k) + " is not representable in double precision");
  };
  for (int i = 0; i < M; i += 2) {
    int j = order[i], k = order[i + 1];
    Moebius phi;
    try {
      phi = canonical_identification(st.disks[j], st.disks[k]);
    } catch (const Error&) {
      throw unrepresentable(j, k);
    }
    // Plane coefficients carry r_j r_k next to c_j c_k, so for small far-apart disks the stored
    // map drifts off the target circle by a fraction of its radius. Also keep within the
    // absolute tolerance validate applies.
    const Disk& to = st.disks[k];
    for (int t = 0; t < 16; ++t) {
      cplx w = phi(st.disks[j].boundary_point(2 * std::numbers::pi * t / 16));
      double dev = std::abs(std::abs(w - to.center) - to.radius);
      if (!(dev <= std::min(1e-10, kMaxRelativeDrift * to.radius))) throw unrepresentable(j, k);
    }
    model.pairs.push_back({j, k, phi, PsiConst{}, 1});
  }
  return model;
}

}  // namespace grr

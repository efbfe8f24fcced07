#include <grr/gluing.hpp>

#include <cmath>
#include <numeric>
#include <sstream>

namespace grr {

const char* to_string(Issue issue) {
  switch (issue) {
    case Issue::DisksOverlap: return "DisksOverlap";
    case Issue::BadPairing: return "BadPairing";
    case Issue::BadIdentification: return "BadIdentification";
    case Issue::BadPsi: return "BadPsi";
    case Issue::BadAllowance: return "BadAllowance";
    case Issue::Disconnected: return "Disconnected";
  }
  return "?";
}

namespace {

constexpr int kIdentificationSamples = 64;
constexpr double kIdentificationTol = 1e-10;

// Largest distance of phi(gamma_from) from gamma_to over equispaced samples, in plane units.
// A relative measure would sit above the tolerance for small disks from coefficient rounding alone.
double identification_deviation(const Moebius& phi, const Disk& from, const Disk& to) {
  double worst = 0;
  for (int t = 0; t < kIdentificationSamples; ++t) {
    auto w = phi.apply(from.boundary_point(2 * std::numbers::pi * t / kIdentificationSamples));
    if (w.infinite) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, std::abs(std::abs(w.value - to.center) - to.radius));
  }
  return worst;
}

bool in_closed(const Disk& D, const SpherePoint& p) {
  if (p.infinite) return !D.is_interior();
  return D.contains_closed(p.value);
}

// The chart center of `from` (a point of the removed disk) must land off the closed removed disk of `to`.
bool sides_swapped(const Moebius& phi, const Disk& from, const Disk& to) {
  SpherePoint inside = local_chart(from).inverse().apply(cplx(0));
  return !in_closed(to, phi.apply(inside));
}

Eigen::MatrixXcd embed_rows(const Eigen::MatrixXcd& X, int N, int B) {
  // window-N orthonormal coordinates into window B >= N
  Eigen::MatrixXcd Y = Eigen::MatrixXcd::Zero(2 * B, X.cols());
  Y.topRows(N) = X.topRows(N);
  Y.middleRows(B, N) = X.bottomRows(N);
  return Y;
}

}  // namespace

Diagnostics validate(const GluingModel& model) {
  Diagnostics diag;
  auto add = [&](Issue k, std::string msg, double value = 0, bool warning = false) {
    diag.items.push_back({k, std::move(msg), value, warning});
  };
  const int J = model.circle_count();

  int offset = 0;
  for (std::size_t p = 0; p < model.pieces.size(); ++p) {
    const auto& disks = model.pieces[p];
    for (std::size_t a = 0; a < disks.size(); ++a)
      for (std::size_t b = a + 1; b < disks.size(); ++b) {
        std::ostringstream msg;
        msg << "circles " << offset + a << " and " << offset + b << " in piece " << p;
        try {
          if (conformal_distance(disks[a], disks[b]) <= 0) {
            add(Issue::DisksOverlap, msg.str() + " are tangent");
          }
        } catch (const Error&) {
          add(Issue::DisksOverlap, msg.str() + " overlap");
        }
      }
    offset += int(disks.size());
  }

  std::vector<int> partner(J, -1);
  for (std::size_t i = 0; i < model.pairs.size(); ++i) {
    const auto& pr = model.pairs[i];
    std::ostringstream tag;
    tag << "pair " << i << " (" << pr.j << ", " << pr.j2 << ")";
    if (pr.j < 0 || pr.j >= J || pr.j2 < 0 || pr.j2 >= J || pr.j == pr.j2) {
      add(Issue::BadPairing, tag.str() + ": circle indices invalid");
      continue;
    }
    for (int e : {pr.j, pr.j2}) {
      if (partner[e] != -1) add(Issue::BadPairing, tag.str() + ": circle " + std::to_string(e) + " glued twice");
    }
    partner[pr.j] = pr.j2;
    partner[pr.j2] = pr.j;

    const Disk& from = model.circle(pr.j);
    const Disk& to = model.circle(pr.j2);
    double dev = identification_deviation(pr.phi, from, to);
    if (!(dev <= kIdentificationTol)) {
      std::ostringstream msg;
      msg << tag.str() << ": phi misses the target circle, max deviation " << dev;
      add(Issue::BadIdentification, msg.str(), dev);
    } else if (!sides_swapped(pr.phi, from, to)) {
      add(Issue::BadIdentification, tag.str() + ": phi must send the removed disk to the outside of the partner disk", dev);
    }

    cplx c = psi_coefficient(pr.psi);
    if (!(std::isfinite(c.real()) && std::isfinite(c.imag())) || std::abs(c) == 0)
      add(Issue::BadPsi, tag.str() + ": psi coefficient must be finite and nonzero");

    if (pr.allowance_dim < 1)
      add(Issue::BadAllowance, tag.str() + ": allowance must contain the constants");
    else if (!psi_is_constant(pr.psi) && pr.allowance_dim < 2)
      add(Issue::BadAllowance, tag.str() + ": non-constant psi requires psi in the allowance (dim >= 2)");
  }
  for (int j = 0; j < J; ++j)
    if (partner[j] == -1) add(Issue::BadPairing, "circle " + std::to_string(j) + " is not glued");

  if (diag.ok() && J > 0 && component_count(model) > 1)
    add(Issue::Disconnected, "glued curve is disconnected", component_count(model), true);
  return diag;
}

void require_valid(const GluingModel& model) {
  Diagnostics d = validate(model);
  if (d.ok()) return;
  std::ostringstream msg;
  msg << "invalid model:";
  for (const auto& v : d.items)
    if (!v.warning) msg << " [" << to_string(v.kind) << "] " << v.message << ";";
  throw Error(ErrorKind::InvalidModel, msg.str());
}

int component_count(const GluingModel& model) {
  const int P = int(model.pieces.size());
  std::vector<int> parent(P);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int comps = P;
  for (const auto& pr : model.pairs) {
    int a = find(model.piece_of(pr.j)), b = find(model.piece_of(pr.j2));
    if (a != b) {
      parent[a] = b;
      --comps;
    }
  }
  return comps;
}

int degree(const GluingModel& model) {
  require_valid(model);
  int d = 0;
  for (const auto& pr : model.pairs) d += psi_winding(pr.psi) + pr.allowance_dim - 1;
  return d;
}

std::vector<int> allowance_modes(const GluingPair& pair) {
  std::vector<int> modes;
  const int want = pair.allowance_dim - 1;
  int n = psi_winding(pair.psi);
  if (n != 0 && want > 0) modes.push_back(-n);
  for (int k = 1; int(modes.size()) < want; ++k)
    if (k != -n) modes.push_back(k);
  return modes;
}

std::vector<ModeVector> allowance_basis(const GluingModel& model, int pair_index, int N) {
  const auto& pr = model.pairs.at(pair_index);
  CircleModeSpace space(model.circle(pr.j), N);
  std::vector<ModeVector> out;
  for (int k : allowance_modes(pr)) {
    if (std::abs(k) > N) continue;
    ModeVector v(space);
    v[k] = 1.0;
    out.push_back(v);
  }
  return out;
}

cplx partner_psi_value(const GluingModel& model, int pair_index, cplx w) {
  const auto& pr = model.pairs.at(pair_index);
  return 1.0 / psi_value(pr.psi, model.circle(pr.j), pr.phi.inverse()(w));
}

Eigen::MatrixXcd pullback_matrix(const Moebius& phi, const Psi& psi, const CircleModeSpace& source,
                                 const CircleModeSpace& target) {
  const Disk& S = source.circle;
  const Disk& T = target.circle;
  if (!(identification_deviation(phi, S, T) <= kIdentificationTol))
    throw Error(ErrorKind::BadIdentification, "phi does not map the source circle onto the target circle");
  const int ns = source.n_modes, nt = target.n_modes;
  const int n = psi_winding(psi);

  // Target modes pulled to the source unit circle are powers of a disk automorphism A;
  // their Fourier tails decay like the modulus of A's zero (or its reciprocal).
  Moebius A = local_chart(T) * phi * local_chart(S).inverse();
  SpherePoint zero = A.inverse().apply(cplx(0));
  double q = 0;
  if (!zero.infinite && std::abs(zero.value) > 0) {
    double r = std::abs(zero.value);
    q = std::min(r, 1.0 / r);
  }
  const int M = alias_free_samples(q, ns + std::abs(n), nt);

  Eigen::VectorXcd z = sample_points(S, M);
  Eigen::VectorXcd w(M), psiv(M);
  Moebius ct = local_chart(T);
  for (int t = 0; t < M; ++t) {
    w(t) = ct(phi(z(t)));
    psiv(t) = psi_value(psi, S, z(t));
  }
  Eigen::MatrixXcd P(2 * ns, 2 * nt);
  Eigen::VectorXcd up = psiv, down = psiv;
  for (int k = 1; k <= nt; ++k) {
    up = up.cwiseProduct(w);
    down = down.cwiseQuotient(w);
    for (int sgn : {1, -1}) {
      Eigen::VectorXcd c = local_fourier(sgn > 0 ? up : down, S, ns);
      int col = mode_position(sgn * k, nt);
      for (int i = 0; i < 2 * ns; ++i) {
        int ks = position_mode(i, ns);
        P(i, col) = c(ks + ns) * std::sqrt(double(std::abs(ks)) / k);
      }
    }
  }
  return P;
}

double distortion_phi(const Moebius& phi, const Disk& source, const Disk& target, int N) {
  Eigen::MatrixXcd P = pullback_matrix(phi, PsiConst{}, CircleModeSpace(source, N), CircleModeSpace(target, N));
  return singular_values(P)(0);
}

GraphBlock gluing_graph_block(const GluingModel& model, int pair_index, int N, double threshold) {
  const auto& pr = model.pairs.at(pair_index);
  const Disk& Dj = model.circle(pr.j);
  const Disk& Dk = model.circle(pr.j2);
  GraphBlock out;
  std::vector<int> extras;
  for (int k : allowance_modes(pr))
    if (std::abs(k) <= N) extras.push_back(k);

  if (psi_is_constant(pr.psi)) {
    Eigen::MatrixXcd T = pullback_matrix(pr.phi, pr.psi, CircleModeSpace(Dj, N), CircleModeSpace(Dk, N));
    Eigen::MatrixXcd Tpp = T.topLeftCorner(N, N), Tpm = T.topRightCorner(N, N);
    Eigen::MatrixXcd Tmp = T.bottomLeftCorner(N, N), Tmm = T.bottomRightCorner(N, N);
    GapSplit g = split_at_gap(singular_values(Tpm), threshold);
    if (g.n_small > 0 || !g.resolved)
      throw Error(ErrorKind::RankDeficient, "plus-to-minus block of the pullback is singular");
    out.gap_ratio = g.gap_ratio;
    // f = T g with f_+ and g_+ free: solve g_- from the plus rows, then read off f_-
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(Tpm);
    Eigen::MatrixXcd X = lu.inverse();
    Eigen::MatrixXcd XTpp = X * Tpp;
    out.A.resize(2 * N, 2 * N);
    out.A.topLeftCorner(N, N) = Tmm * X;
    out.A.topRightCorner(N, N) = Tmp - Tmm * XTpp;
    out.A.bottomLeftCorner(N, N) = X;
    out.A.bottomRightCorner(N, N) = -XTpp;

    Eigen::MatrixXcd L = Eigen::MatrixXcd::Zero(4 * N, 2 * N + int(extras.size()));
    for (int i = 0; i < N; ++i) {
      L(i, i) = 1.0;              // f_+
      L(2 * N + i, N + i) = 1.0;  // g_+
    }
    L.block(N, 0, N, 2 * N) = out.A.topRows(N);
    L.block(3 * N, 0, N, 2 * N) = out.A.bottomRows(N);
    for (std::size_t e = 0; e < extras.size(); ++e) L(mode_position(extras[e], N), 2 * N + e) = 1.0;
    out.basis = orthonormalize(L);
    out.defect = 0;
    return out;
  }

  // Non-constant psi: compatibility is imposed on a wider window of circle j so that the
  // shifted image of g is not cut off, then the allowance rows are dropped.
  const int n = psi_winding(pr.psi);
  const int B = N + std::abs(n) + 8;
  Eigen::MatrixXcd Tw = pullback_matrix(pr.phi, pr.psi, CircleModeSpace(Dj, B), CircleModeSpace(Dk, N));
  Eigen::MatrixXcd F(2 * B, 4 * N);
  F.leftCols(2 * N) = embed_rows(Eigen::MatrixXcd::Identity(2 * N, 2 * N), N, B);
  F.rightCols(2 * N) = -Tw;
  for (int k : allowance_modes(pr))
    if (std::abs(k) <= B) F.row(mode_position(k, B)).setZero();
  Eigen::VectorXd sv = singular_values(F);
  // null space dimension = columns minus rank
  Eigen::VectorXd full = Eigen::VectorXd::Zero(4 * N);
  full.head(sv.size()) = sv;
  GapSplit g = split_at_gap(full, threshold);
  if (!g.resolved) throw Error(ErrorKind::RankDeficient, "compatibility spectrum has no clear gap");
  out.gap_ratio = g.gap_ratio;
  out.basis = null_space(F, threshold);
  out.defect = n + 1;
  return out;
}

PhiPsiSubspace assemble_W_phi_psi_V(const GluingModel& model, int N) {
  require_valid(model);
  const int J = model.circle_count();
  std::vector<Eigen::MatrixXcd> blocks;
  int cols = 0;
  for (int p = 0; p < int(model.pairs.size()); ++p) {
    blocks.push_back(gluing_graph_block(model, p, N).basis);
    cols += int(blocks.back().cols());
  }
  PhiPsiSubspace W;
  W.basis = Eigen::MatrixXcd::Zero(2 * N * J, cols);
  int c = 0;
  for (int p = 0; p < int(model.pairs.size()); ++p) {
    const auto& pr = model.pairs[p];
    const auto& Bp = blocks[p];
    W.basis.block(2 * N * pr.j, c, 2 * N, Bp.cols()) = Bp.topRows(2 * N);
    W.basis.block(2 * N * pr.j2, c, 2 * N, Bp.cols()) = Bp.bottomRows(2 * N);
    for (int i = 0; i < Bp.cols(); ++i) W.pair_of_column.push_back(p);
    c += int(Bp.cols());
  }
  return W;
}

GluingModel blackwhite_expand(const GluingModel& model, const std::vector<double>& tube_lengths) {
  require_valid(model);
  if (tube_lengths.size() != model.pairs.size())
    throw Error(ErrorKind::InvalidModel, "need one tube length per pair");
  GluingModel out;
  out.pieces = model.pieces;
  int next = model.circle_count();
  for (std::size_t p = 0; p < model.pairs.size(); ++p) {
    double L = tube_lengths[p];
    if (!(L > 0) || !std::isfinite(L)) throw Error(ErrorKind::InvalidModel, "tube lengths must be positive");
    const auto& pr = model.pairs[p];
    Disk inner(cplx(0), std::exp(-L), Side::interior);
    Disk outer(cplx(0), 1.0, Side::exterior);
    out.pieces.push_back({inner, outer});
    int a = next++, b = next++;
    const Disk& Dj = model.circle(pr.j);
    Moebius in_map = canonical_identification(Dj, inner);
    // across the tube: |w| = 1 -> e^{-L} w, back to gamma_j, then the original phi, so the
    // composite gluing differs from phi only by the inserted annulus
    Moebius squeeze(cplx(std::exp(-L / 2)), cplx(0), cplx(0), cplx(std::exp(L / 2)));
    Moebius out_map = pr.phi * in_map.inverse() * squeeze;
    out.pairs.push_back({pr.j, a, in_map, pr.psi, pr.allowance_dim});
    out.pairs.push_back({b, pr.j2, Moebius(out_map.a, out_map.b, out_map.c, out_map.d), PsiConst{}, 1});
  }
  return out;
}

}  // namespace grr

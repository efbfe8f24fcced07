#include <grr/riemann_roch.hpp>

#include <cmath>
#include <random>
#include <sstream>

namespace grr {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Unresolved: return "UNRESOLVED";
  }
  return "?";
}

Eigen::MatrixXd criterion_matrix(const GluingModel& model) {
  require_valid(model);
  const int J = model.circle_count();
  Eigen::MatrixXd E = Eigen::MatrixXd::Zero(J, J);
  for (int j = 0; j < J; ++j)
    for (int l = j + 1; l < J; ++l) {
      if (model.piece_of(j) != model.piece_of(l)) continue;
      E(j, l) = E(l, j) = std::exp(-conformal_distance(model.circle(j), model.circle(l)));
    }
  return E;
}

HSCheck check_hs(const GluingModel& model) {
  Eigen::MatrixXd E = criterion_matrix(model);
  const int J = int(E.rows());
  HSCheck h;
  h.row_sums.resize(J);
  Eigen::VectorXd weight = Eigen::VectorXd::Ones(J);
  bool weighted = false;
  for (const auto& pr : model.pairs) {
    double c2 = std::norm(psi_coefficient(pr.psi));
    if (c2 != 1.0) weighted = true;
    weight(pr.j) = 1.0 / c2;  // |psi_{j2}|^2 on the partner circle
    weight(pr.j2) = c2;
  }
  double wsum = 0;
  for (int j = 0; j < J; ++j) {
    double s = E.col(j).squaredNorm();
    h.row_sums[j] = s;
    h.total += s;
    h.max_row = std::max(h.max_row, s);
    wsum += weight(j) * s;
  }
  h.finite = std::isfinite(h.total);
  if (weighted) h.weighted_total = wsum;
  return h;
}

double majorant_norm(const Eigen::MatrixXd& A) { return power_iteration_norm(A, 1e-10); }

namespace {

// Extra plus modes needed before the images of N minus modes fall below roundoff.
int window_pad(double q, int N) {
  if (!(q > 0)) return 0;
  const double target = std::log(1e-14);
  const int cap = N;
  for (int K = 0; K < cap; K += 2) {
    double lg = std::lgamma(2.0 * N + K + 1) - std::lgamma(N + 1.0) - std::lgamma(N + K + 1.0) +
                (N + K) * std::log(q);
    if (lg < target) return K;
  }
  return cap;
}

double model_decay_rate(const GluingModel& model) {
  const int J = model.circle_count();
  double q = 0;
  for (int j = 0; j < J; ++j)
    for (int l = 0; l < J; ++l)
      if (j != l && model.piece_of(j) == model.piece_of(l))
        q = std::max(q, mode_decay_rate(model.circle(l), model.circle(j)));
  return q;
}

// Rows of window-n coordinates inside window w >= n.
Eigen::MatrixXcd widen(const Eigen::MatrixXcd& X, int n, int w) {
  Eigen::MatrixXcd Y = Eigen::MatrixXcd::Zero(2 * w, X.cols());
  Y.topRows(n) = X.topRows(n);
  Y.middleRows(w, n) = X.bottomRows(n);
  return Y;
}

std::vector<int> kept_rows(const GluingPair& pr, int W) {
  std::vector<bool> drop(2 * W, false);
  for (int k : allowance_modes(pr))
    if (std::abs(k) <= W) drop[mode_position(k, W)] = true;
  std::vector<int> rows;
  for (int i = 0; i < 2 * W; ++i)
    if (!drop[i]) rows.push_back(i);
  return rows;
}

// Orthonormal basis of the graph {(X u, u)} as the pair (X U^{-1}, U^{-1}), U^* U = I + X^* X.
std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> graph_basis(const Eigen::MatrixXcd& X) {
  const Eigen::Index n = X.cols();
  Eigen::MatrixXcd gram = Eigen::MatrixXcd::Identity(n, n);
  gram.selfadjointView<Eigen::Lower>().rankUpdate(X.adjoint());
  Eigen::LLT<Eigen::MatrixXcd> llt(gram);
  Eigen::MatrixXcd Uinv = llt.matrixU().solve(Eigen::MatrixXcd::Identity(n, n));
  Eigen::MatrixXcd XU = X * Uinv.triangularView<Eigen::Upper>();
  return {std::move(XU), std::move(Uinv)};
}

GapSplit kernel_split(const Eigen::MatrixXcd& A, double threshold) {
  Eigen::VectorXd s = Eigen::VectorXd::Zero(A.cols());
  Eigen::VectorXd sv = singular_values(A);
  s.head(sv.size()) = sv;
  return split_at_gap(s, threshold);
}

int numerical_rank(const Eigen::MatrixXcd& A, double threshold) {
  if (A.cols() == 0 || A.rows() == 0) return 0;
  Eigen::VectorXd sv = singular_values(A);
  GapSplit g = split_at_gap(sv, threshold);
  if (!g.resolved) throw Error(ErrorKind::RankDeficient, "ambiguous numerical rank");
  return int(sv.size()) - g.n_small;
}

}  // namespace

Mismatch assemble_mismatch(const GluingModel& model, int N) {
  require_valid(model);
  if (N < 1) throw Error(ErrorKind::BadParameters, "mode count must be at least 1");
  const int J = model.circle_count();
  int max_shift = 0;
  for (const auto& pr : model.pairs) max_shift = std::max(max_shift, std::abs(psi_winding(pr.psi)));

  Mismatch m;
  m.N = N;
  m.B = N + window_pad(model_decay_rate(model), N);
  m.B2 = m.B + max_shift + 8;
  const int B = m.B, B2 = m.B2;

  // W_an: minus modes free, plus modes determined by the other disks of the piece
  BlockOperator C = assemble_C(model, B, N);
  auto [plus, minus] = graph_basis(C.mat);
  m.domain = Eigen::MatrixXcd::Zero(2 * B * J, N * J);
  for (int j = 0; j < J; ++j) {
    m.domain.middleRows(2 * B * j, B) = plus.middleRows(B * j, B);
    m.domain.middleRows(2 * B * j + B, N) = minus.middleRows(N * j, N);
  }

  // complement of W_an: plus modes free, minus modes -C^* of them
  BlockOperator Cn = assemble_C(model, N, N);
  auto [cminus, cplus] = graph_basis(-Cn.mat.adjoint());
  m.codomain.resize(2 * N * J, N * J);
  for (int j = 0; j < J; ++j) {
    m.codomain.middleRows(2 * N * j, N) = cplus.middleRows(N * j, N);
    m.codomain.middleRows(2 * N * j + N, N) = cminus.middleRows(N * j, N);
  }

  std::vector<Eigen::MatrixXcd> primal, dual;
  int primal_rows = 0, dual_rows = 0;
  for (const auto& pr : model.pairs) {
    const Disk& Dj = model.circle(pr.j);
    const Disk& Dk = model.circle(pr.j2);
    std::vector<int> keep = kept_rows(pr, B2);

    Eigen::MatrixXcd T = pullback_matrix(pr.phi, pr.psi, CircleModeSpace(Dj, B2), CircleModeSpace(Dk, B));
    Eigen::MatrixXcd mis = widen(m.domain.middleRows(2 * B * pr.j, 2 * B), B, B2) -
                           T * m.domain.middleRows(2 * B * pr.j2, 2 * B);
    primal.push_back(mis(keep, Eigen::all));
    primal_rows += int(keep.size());

    // y on circle j orthogonal to V_j, with (y, -T^* y) in the complement of W_an
    Eigen::MatrixXcd T2 = pullback_matrix(pr.phi, pr.psi, CircleModeSpace(Dj, B2), CircleModeSpace(Dk, B2));
    Eigen::MatrixXcd wj = widen(m.codomain.middleRows(2 * N * pr.j, 2 * N), N, B2);
    Eigen::MatrixXcd wk = widen(m.codomain.middleRows(2 * N * pr.j2, 2 * N), N, B2);
    std::vector<int> vrows;
    for (int k : allowance_modes(pr))
      if (std::abs(k) <= N) vrows.push_back(mode_position(k, B2));
    Eigen::MatrixXcd cond(vrows.size() + 2 * B2, wj.cols());
    if (!vrows.empty()) cond.topRows(vrows.size()) = wj(vrows, Eigen::all);
    cond.bottomRows(2 * B2) = wk + T2.adjoint() * wj;
    dual.push_back(std::move(cond));
    dual_rows += int(dual.back().rows());
  }
  m.mu.resize(primal_rows, m.domain.cols());
  m.dual.resize(dual_rows, m.codomain.cols());
  int r = 0;
  for (const auto& X : primal) {
    m.mu.middleRows(r, X.rows()) = X;
    r += int(X.rows());
  }
  r = 0;
  for (const auto& X : dual) {
    m.dual.middleRows(r, X.rows()) = X;
    r += int(X.rows());
  }
  return m;
}

IndexResult extract_index(const Mismatch& m, double threshold) {
  GapSplit g0 = kernel_split(m.mu, threshold);
  GapSplit g1 = kernel_split(m.dual, threshold);
  IndexResult r;
  r.h0 = g0.n_small;
  r.h1 = g1.n_small;
  r.index = r.h0 - r.h1;
  r.gap_ratio = std::min(g0.gap_ratio, g1.gap_ratio);
  r.sigma_min_nonzero = std::min(g0.sigma_min_nonzero, g1.sigma_min_nonzero);
  r.resolved = g0.resolved && g1.resolved;
  return r;
}

double rc_tail(const GluingModel& model, int N) {
  require_valid(model);
  const int J = model.circle_count();
  BlockOperator C = assemble_C(model, N, N);
  // R: plus data on circle j -> minus data on its partner, through the constant part of psi
  Eigen::MatrixXcd R = Eigen::MatrixXcd::Zero(N * J, N * J);
  for (const auto& pr : model.pairs) {
    const Disk& Dj = model.circle(pr.j);
    const Disk& Dk = model.circle(pr.j2);
    cplx c = psi_coefficient(pr.psi);
    Eigen::MatrixXcd to_j = pullback_matrix(pr.phi, PsiConst{c}, CircleModeSpace(Dj, N), CircleModeSpace(Dk, N));
    Eigen::MatrixXcd to_k = pullback_matrix(pr.phi.inverse(), PsiConst{1.0 / c}, CircleModeSpace(Dk, N),
                                            CircleModeSpace(Dj, N));
    R.block(N * pr.j2, N * pr.j, N, N) = to_k.bottomLeftCorner(N, N);
    R.block(N * pr.j, N * pr.j2, N, N) = to_j.bottomLeftCorner(N, N);
  }
  Eigen::VectorXd sv = singular_values(R * C.mat);
  return sv((3 * sv.size()) / 4);
}

RRReport rr_verdict(const GluingModel& model, const std::vector<int>& n_list, double threshold) {
  require_valid(model);
  if (n_list.empty()) throw Error(ErrorKind::BadParameters, "need at least one truncation");
  RRReport rep;
  rep.degree = degree(model);
  rep.components = component_count(model);
  rep.expected_index = rep.degree + rep.components - 1;

  HSCheck hs = check_hs(model);
  rep.criteria.hs_sum = hs.total;
  rep.criteria.majorant_norm = majorant_norm(criterion_matrix(model));
  rep.criteria.weighted_hs_sum = hs.weighted_total;

  std::vector<int> ns = n_list;
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  for (int N : ns) {
    IndexResult ir = extract_index(assemble_mismatch(model, N), threshold);
    Truncation t;
    t.N = N;
    t.h0 = ir.h0;
    t.h1 = ir.h1;
    t.gap_ratio = ir.gap_ratio;
    t.sigma_min_nonzero = ir.sigma_min_nonzero;
    t.resolved = ir.resolved;
    t.rc_tail = rc_tail(model, N);
    rep.truncations.push_back(t);
  }
  const Truncation& last = rep.truncations.back();
  rep.h0 = last.h0;
  rep.h1 = last.h1;
  rep.index = last.h0 - last.h1;
  rep.gap_ratio = last.gap_ratio;
  rep.sigma_min_nonzero = last.sigma_min_nonzero;

  std::ostringstream note;
  bool settled = last.resolved;
  if (!last.resolved) note << "no clear spectral gap at N=" << last.N << "; ";
  if (rep.truncations.size() >= 2) {
    const Truncation& prev = rep.truncations[rep.truncations.size() - 2];
    if (!prev.resolved || prev.h0 != last.h0 || prev.h1 != last.h1) {
      settled = false;
      note << "(h0,h1) changes between N=" << prev.N << " and N=" << last.N << "; ";
    }
  }
  if (!(last.rc_tail < kTailThreshold)) {
    settled = false;
    note << "R C spectrum has not decayed below " << kTailThreshold << " at N=" << last.N << "; ";
  }
  if (!settled)
    rep.verdict = Verdict::Unresolved;
  else
    rep.verdict = rep.index == rep.expected_index ? Verdict::Pass : Verdict::Fail;
  rep.note = note.str();
  return rep;
}

Excess subspace_excess(const Eigen::MatrixXcd& U, const Eigen::MatrixXcd& V, int ambient_dim, double threshold) {
  if (U.rows() != ambient_dim || V.rows() != ambient_dim)
    throw Error(ErrorKind::BadParameters, "bases must live in the ambient space");
  int ru = numerical_rank(U, threshold);
  int rv = numerical_rank(V, threshold);
  Eigen::MatrixXcd S(ambient_dim, ru + rv);
  if (ru > 0) S.leftCols(ru) = column_space(U, threshold);
  if (rv > 0) S.rightCols(rv) = column_space(V, threshold);
  int rs = numerical_rank(S, threshold);
  Excess e;
  e.dim_intersection = ru + rv - rs;
  e.codim_sum = ambient_dim - rs;
  e.excess = e.dim_intersection - e.codim_sum;
  return e;
}

LabTrial fredholm_lab_trial(int n1, int n2, int d1, int d2, std::uint64_t seed) {
  if (n1 < 1 || n2 < 1 || d1 <= -n1 || d2 <= -n2)
    throw Error(ErrorKind::BadParameters, "relative dimensions must leave each graph nonempty");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  auto random = [&](int r, int c, double scale) {
    Eigen::MatrixXcd X(r, c);
    for (int i = 0; i < r; ++i)
      for (int k = 0; k < c; ++k) X(i, k) = cplx(gauss(rng), gauss(rng)) * scale;
    return X;
  };
  const int n = n1 + n2;
  Eigen::MatrixXcd A1 = random(n2, n1, 1.0 / std::sqrt(2.0 * n));
  Eigen::MatrixXcd A2 = random(n1, n2, 1.0 / std::sqrt(2.0 * n));

  auto comparable = [&](Eigen::MatrixXcd graph, int d) {
    if (d < 0) return Eigen::MatrixXcd(graph.leftCols(graph.cols() + d));
    Eigen::MatrixXcd out(graph.rows(), graph.cols() + d);
    out << graph, random(int(graph.rows()), d, 1.0);
    return out;
  };
  Eigen::MatrixXcd V1(n, n1), V2(n, n2);
  V1 << Eigen::MatrixXcd::Identity(n1, n1), A1;
  V2 << A2, Eigen::MatrixXcd::Identity(n2, n2);

  LabTrial t;
  t.expected = d1 + d2;
  t.measured = subspace_excess(comparable(V1, d1), comparable(V2, d2), n);
  t.pass = t.measured.excess == t.expected;
  return t;
}

}  // namespace grr

#pragma once

#include <variant>
#include <vector>

#include <grr/sphere_geom.hpp>

namespace grr {

struct PsiConst {
  cplx c{1.0};
  bool operator==(const PsiConst&) const = default;
};

// psi = c * zeta^(-n) on the representative circle, zeta its local coordinate. With the circle
// oriented as the boundary of its piece the winding number of psi is n. On an exterior disk
// this is c ((z - center)/r)^n.
struct PsiWinding {
  cplx c{1.0};
  int n = 0;
  bool operator==(const PsiWinding&) const = default;
};

using Psi = std::variant<PsiConst, PsiWinding>;

inline cplx psi_coefficient(const Psi& p) {
  return std::visit([](const auto& v) { return v.c; }, p);
}
inline int psi_winding(const Psi& p) {
  if (auto w = std::get_if<PsiWinding>(&p)) return w->n;
  return 0;
}
inline bool psi_is_constant(const Psi& p) { return psi_winding(p) == 0; }

inline cplx psi_value(const Psi& p, const Disk& circle, cplx z) {
  int n = psi_winding(p);
  cplx c = psi_coefficient(p);
  if (n == 0) return c;
  return c * std::pow(local_chart(circle)(z), -n);
}

// Circle j is glued to circle j2 by phi; psi lives on circle j.
struct GluingPair {
  int j = 0;
  int j2 = 1;
  Moebius phi;
  Psi psi = PsiConst{};
  int allowance_dim = 1;
  bool operator==(const GluingPair& o) const {
    return j == o.j && j2 == o.j2 && phi.a == o.phi.a && phi.b == o.phi.b && phi.c == o.phi.c &&
           phi.d == o.phi.d && psi == o.psi && allowance_dim == o.allowance_dim;
  }
};

// Each piece is a sphere with the listed disks removed. Circles are numbered globally in
// piece order.
struct GluingModel {
  std::vector<std::vector<Disk>> pieces;
  std::vector<GluingPair> pairs;

  int circle_count() const {
    int n = 0;
    for (const auto& p : pieces) n += int(p.size());
    return n;
  }
  const Disk& circle(int j) const {
    for (const auto& p : pieces) {
      if (j < int(p.size())) return p[j];
      j -= int(p.size());
    }
    throw Error(ErrorKind::InvalidModel, "circle index out of range");
  }
  int piece_of(int j) const {
    for (int k = 0; k < int(pieces.size()); ++k) {
      if (j < int(pieces[k].size())) return k;
      j -= int(pieces[k].size());
    }
    throw Error(ErrorKind::InvalidModel, "circle index out of range");
  }
  bool operator==(const GluingModel&) const = default;
};

// zeta_to = 1/zeta_from: sends the removed disk `from` onto the complement of `to`, reversing
// boundary orientation, and pulls modes back to modes exactly.
inline Moebius canonical_identification(const Disk& from, const Disk& to) {
  // unit-determinant factors keep the product well scaled for tiny disks
  auto unit = [](const Moebius& m) { return Moebius(m.a, m.b, m.c, m.d); };
  Moebius flip(0, 1, 1, 0);
  Moebius m = unit(local_chart(to)).inverse() * flip * unit(local_chart(from));
  return unit(m);
}

}  // namespace grr

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include <grr/errors.hpp>

namespace grr {

template <typename Real>
struct BasicSpherePoint {
  std::complex<Real> value{};
  bool infinite = false;

  static BasicSpherePoint at(std::complex<Real> z) { return {z, false}; }
  static BasicSpherePoint at_infinity() { return {{}, true}; }

  bool operator==(const BasicSpherePoint&) const = default;
};

enum class Side { interior, exterior };

// Open round disk on the sphere. An exterior disk is {|z - center| > radius} together with infinity.
template <typename Real>
struct BasicDisk {
  std::complex<Real> center{};
  Real radius = 1;
  Side side = Side::interior;

  BasicDisk() = default;
  BasicDisk(std::complex<Real> c, Real r, Side s = Side::interior) : center(c), radius(r), side(s) {
    if (!(r > 0) || !std::isfinite(r) || !std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw Error(ErrorKind::BadParameters, "disk radius must be positive and finite");
  }

  bool is_interior() const { return side == Side::interior; }

  bool contains(const BasicSpherePoint<Real>& p) const {
    if (p.infinite) return side == Side::exterior;
    Real d = std::abs(p.value - center);
    return side == Side::interior ? d < radius : d > radius;
  }
  // Closed disk membership; a point on the circle counts as inside.
  bool contains_closed(std::complex<Real> z) const {
    Real d = std::abs(z - center);
    return side == Side::interior ? d <= radius : d >= radius;
  }

  std::complex<Real> boundary_point(Real angle) const { return center + std::polar(radius, angle); }

  bool operator==(const BasicDisk&) const = default;
};

// z -> (a z + b) / (c z + d). The public constructor normalizes to ad - bc = 1.
template <typename Real>
struct BasicMoebius {
  using C = std::complex<Real>;
  C a{1}, b{0}, c{0}, d{1};

  BasicMoebius() = default;
  BasicMoebius(C a_, C b_, C c_, C d_) : a(a_), b(b_), c(c_), d(d_) {
    check();
    C s = std::sqrt(det());
    a /= s; b /= s; c /= s; d /= s;
  }

  // Takes coefficients as given (used when reading stored maps, so they round-trip unchanged).
  static BasicMoebius raw(C a_, C b_, C c_, C d_) {
    BasicMoebius m;
    m.a = a_; m.b = b_; m.c = c_; m.d = d_;
    m.check();
    return m;
  }

  C det() const { return a * d - b * c; }

  BasicSpherePoint<Real> apply(const BasicSpherePoint<Real>& p) const {
    if (p.infinite) {
      if (c == C(0)) return BasicSpherePoint<Real>::at_infinity();
      return BasicSpherePoint<Real>::at(a / c);
    }
    C den = c * p.value + d;
    if (den == C(0)) return BasicSpherePoint<Real>::at_infinity();
    return BasicSpherePoint<Real>::at((a * p.value + b) / den);
  }
  BasicSpherePoint<Real> apply(C z) const { return apply(BasicSpherePoint<Real>::at(z)); }

  // Finite-valued evaluation for points known to avoid the pole.
  C operator()(C z) const { return (a * z + b) / (c * z + d); }

  BasicMoebius inverse() const { return raw(d, -b, -c, a); }

  // Preimage of infinity.
  BasicSpherePoint<Real> pole() const {
    if (c == C(0)) return BasicSpherePoint<Real>::at_infinity();
    return BasicSpherePoint<Real>::at(-d / c);
  }

  friend BasicMoebius operator*(const BasicMoebius& m, const BasicMoebius& n) {
    return raw(m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d, m.c * n.a + m.d * n.c,
               m.c * n.b + m.d * n.d);
  }

 private:
  void check() const {
    // degenerate when ad - bc cancels to roundoff, independent of overall scale
    Real mag = std::abs(a * d) + std::abs(b * c);
    Real dt = std::abs(det());
    if (!std::isfinite(mag) || !(dt > 0) || dt <= 64 * std::numeric_limits<Real>::epsilon() * mag)
      throw Error(ErrorKind::BadParameters, "Moebius coefficients are degenerate (ad - bc = 0)");
  }
};

template <typename Real>
BasicSpherePoint<Real> mobius_apply(const BasicMoebius<Real>& m, const BasicSpherePoint<Real>& z) {
  return m.apply(z);
}

// Local coordinate of a disk: (z - c)/r inside, r/(z - c) for an exterior disk.
// Either way the removed disk becomes the unit disk.
template <typename Real>
BasicMoebius<Real> local_chart(const BasicDisk<Real>& D) {
  using C = std::complex<Real>;
  if (D.is_interior()) return BasicMoebius<Real>::raw(C(1), -D.center, C(0), C(D.radius));
  return BasicMoebius<Real>::raw(C(0), C(D.radius), C(1), -D.center);
}

template <typename Real>
BasicDisk<Real> mobius_image_disk(const BasicMoebius<Real>& m, const BasicDisk<Real>& D) {
  using C = std::complex<Real>;
  auto pole = m.pole();
  if (!pole.infinite) {
    Real gap = std::abs(std::abs(pole.value - D.center) - D.radius);
    if (gap <= Real(1e-12) * D.radius)
      throw Error(ErrorKind::DegenerateImage, "image of the boundary circle passes through infinity");
  }
  // Hermitian form of the circle, |z - c|^2 - r^2 = [z 1]^* H [z 1], pushed through m^{-1}.
  C A(1), beta = -D.center, Cc(std::norm(D.center) - D.radius * D.radius);
  auto inv = m.inverse();
  // [z;1] ~ inv [w;1]: z = (p w + q)/(s w + t)
  C p = inv.a, q = inv.b, s = inv.c, t = inv.d;
  // H' = K^* H K with K = [[p, q], [s, t]]
  C h00 = std::conj(p) * (A * p + beta * s) + std::conj(s) * (std::conj(beta) * p + Cc * s);
  C h01 = std::conj(p) * (A * q + beta * t) + std::conj(s) * (std::conj(beta) * q + Cc * t);
  C h11 = std::conj(q) * (A * q + beta * t) + std::conj(t) * (std::conj(beta) * q + Cc * t);
  Real A2 = h00.real();
  C center = -h01 / A2;
  Real r2 = std::norm(center) - h11.real() / A2;
  Real radius = std::sqrt(std::max(r2, Real(0)));
  bool keep = (A2 > 0) == D.is_interior();
  return BasicDisk<Real>(center, radius, keep ? Side::interior : Side::exterior);
}

namespace detail {

// Distance formula for two finite interior disks with disjoint closures.
template <typename Real>
Real finite_pair_distance(const BasicDisk<Real>& D1, const BasicDisk<Real>& D2) {
  Real d = std::abs(D1.center - D2.center);
  Real r1 = D1.radius, r2 = D2.radius;
  // (d^2 - r1^2 - r2^2) / (2 r1 r2) - 1, written to avoid cancellation near tangency
  Real excess = (d - r1 - r2) * (d + r1 + r2) / (2 * r1 * r2);
  if (excess <= 0) return 0;
  // acosh(1 + x) = log1p(x + sqrt(x (x + 2)))
  return std::log1p(excess + std::sqrt(excess * (excess + 2)));
}

template <typename Real>
void require_disjoint(const BasicDisk<Real>& D1, const BasicDisk<Real>& D2) {
  constexpr Real tol = Real(1e-12);
  if (!D1.is_interior() && !D2.is_interior())
    throw Error(ErrorKind::DisksOverlap, "two exterior disks always share infinity");
  Real d = std::abs(D1.center - D2.center);
  if (D1.is_interior() && D2.is_interior()) {
    if (d < (D1.radius + D2.radius) * (1 - tol))
      throw Error(ErrorKind::DisksOverlap, "disk closures intersect");
    return;
  }
  const auto& in = D1.is_interior() ? D1 : D2;
  const auto& ex = D1.is_interior() ? D2 : D1;
  if (d + in.radius > ex.radius * (1 + tol))
    throw Error(ErrorKind::DisksOverlap, "interior disk is not inside the complement of the exterior disk");
}

// Inversion about a point outside both closures; sends an (interior, exterior) pair to two finite disks.
template <typename Real>
BasicMoebius<Real> separating_inversion(const BasicDisk<Real>& D1, const BasicDisk<Real>& D2) {
  using C = std::complex<Real>;
  const auto& in = D1.is_interior() ? D1 : D2;
  const auto& ex = D1.is_interior() ? D2 : D1;
  Real d = std::abs(in.center - ex.center);
  C u = d > 0 ? (in.center - ex.center) / d : C(1);
  C q = in.center + u * (in.radius + (ex.radius - d - in.radius) / 2);
  return BasicMoebius<Real>::raw(C(0), C(1), C(1), -q);
}

}  // namespace detail

// Conformal distance: the length of the unit-radius cylinder conformally equivalent to the
// annulus between the two disks. Tangent disks give 0.
template <typename Real>
Real conformal_distance(const BasicDisk<Real>& D1, const BasicDisk<Real>& D2) {
  detail::require_disjoint(D1, D2);
  if (D1.is_interior() && D2.is_interior()) return detail::finite_pair_distance(D1, D2);
  const auto& in = D1.is_interior() ? D1 : D2;
  const auto& ex = D1.is_interior() ? D2 : D1;
  if (ex.radius - std::abs(in.center - ex.center) - in.radius <= Real(1e-12) * ex.radius) return 0;
  auto inv = detail::separating_inversion(D1, D2);
  return detail::finite_pair_distance(mobius_image_disk(inv, D1), mobius_image_disk(inv, D2));
}

template <typename Real>
struct BasicConcentricNormalization {
  BasicMoebius<Real> map;
  Real inner_radius;
};

// Moebius map sending D1 to {|w| < a} and D2 to {|w| > 1}.
template <typename Real>
BasicConcentricNormalization<Real> normalize_to_concentric(const BasicDisk<Real>& D1,
                                                           const BasicDisk<Real>& D2) {
  using C = std::complex<Real>;
  detail::require_disjoint(D1, D2);
  BasicMoebius<Real> pre;
  BasicDisk<Real> E1 = D1, E2 = D2;
  if (!D1.is_interior() || !D2.is_interior()) {
    pre = detail::separating_inversion(D1, D2);
    E1 = mobius_image_disk(pre, D1);
    E2 = mobius_image_disk(pre, D2);
  }
  Real d = std::abs(E2.center - E1.center);
  Real r1 = E1.radius, r2 = E2.radius;
  Real gap = (d - r1 - r2) * (d + r1 + r2);
  if (!(gap > 0)) throw Error(ErrorKind::DisksOverlap, "tangent disks cannot be normalized");
  // common symmetric points on the line of centers, measured from E1's center
  C u = (E2.center - E1.center) / d;
  Real s = (d * d + r1 * r1 - r2 * r2) / d;
  Real root = std::sqrt(gap * (d - r1 + r2) * (d + r1 - r2)) / d;
  Real t_far = (s + root) / 2;
  Real t_near = r1 * r1 / t_far;
  C p = E1.center + u * t_near;
  C q = E1.center + u * t_far;
  auto m = BasicMoebius<Real>::raw(C(1), -p, C(1), -q);
  Real b = std::abs(m(E2.boundary_point(0)));
  auto scaled = BasicMoebius<Real>::raw(C(1), -p, C(b), -q * b) * pre;
  Real a = std::abs(scaled(D1.boundary_point(0)));
  return {BasicMoebius<Real>(scaled.a, scaled.b, scaled.c, scaled.d), a};
}

// Area of a round disk inside the unit disk in the metric 4|dz|^2/(1-|z|^2)^2.
template <typename Real>
Real hyperbolic_area(const BasicDisk<Real>& R) {
  if (!R.is_interior() || std::abs(R.center) + R.radius >= 1)
    throw Error(ErrorKind::NotContained, "disk closure must lie inside the unit disk");
  BasicDisk<Real> outside(std::complex<Real>(0), Real(1), Side::exterior);
  Real lambda = conformal_distance(R, outside);
  return 4 * std::numbers::pi_v<Real> / std::expm1(2 * lambda);
}

using SpherePoint = BasicSpherePoint<double>;
using Disk = BasicDisk<double>;
using Moebius = BasicMoebius<double>;
using ConcentricNormalization = BasicConcentricNormalization<double>;
using cplx = std::complex<double>;

}  // namespace grr

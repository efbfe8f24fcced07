#include <doctest.h>

#include <random>

#include <grr/bar_projector.hpp>
#include <grr/numerics.hpp>

#include "oracles.hpp"

using namespace grr;

namespace {

double binom(int n, int k) { return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)); }

// Coefficient of zeta_j^n in zeta_l^{-m}, orthonormal scaling, two interior disks.
cplx entry_interior(const Disk& src, const Disk& tgt, int n, int m) {
  cplx delta = tgt.center - src.center;
  double sign = n % 2 ? -1 : 1;
  return std::pow(src.radius / delta, m) * sign * binom(m + n - 1, n) * std::pow(tgt.radius / delta, n) *
         std::sqrt(double(n) / m);
}

// Same with an exterior source, where zeta_l^{-m} = ((z - c_l)/r_l)^m is a polynomial.
cplx entry_exterior_source(const Disk& src, const Disk& tgt, int n, int m) {
  if (n > m) return 0;
  cplx delta = tgt.center - src.center;
  return binom(m, n) * std::pow(delta, m - n) * std::pow(tgt.radius, n) / std::pow(src.radius, m) *
         std::sqrt(double(n) / m);
}

}  // namespace

TEST_CASE("concentric pair is diagonal with entries e^{-k lambda}") {
  for (double lam : {0.5, 1.0, 2.0}) {
    Disk target(0, std::exp(-lam)), source(0, 1, Side::exterior);
    auto B = bar_block(source, target, 10, 10);
    for (int n = 0; n < 10; ++n)
      for (int m = 0; m < 10; ++m) {
        cplx want = n == m ? cplx(std::exp(-(n + 1) * lam)) : cplx(0);
        CHECK(std::abs(B(n, m) - want) < 1e-14);
      }
  }
}

TEST_CASE("closed form matches binomial expansions") {
  Disk a(cplx(0.2, 0.1), 0.3), b(cplx(1.5, -0.6), 0.5), out(cplx(0.4, 0), 4, Side::exterior);
  const int N = 9;
  auto Bab = bar_block(a, b, N, N);
  auto Bba = bar_block(b, a, N, N);
  auto Bout = bar_block(out, a, N, N);
  for (int n = 1; n <= N; ++n)
    for (int m = 1; m <= N; ++m) {
      CHECK(std::abs(Bab(n - 1, m - 1) - entry_interior(a, b, n, m)) < 1e-13);
      CHECK(std::abs(Bba(n - 1, m - 1) - entry_interior(b, a, n, m)) < 1e-13);
      CHECK(std::abs(Bout(n - 1, m - 1) - entry_exterior_source(out, a, n, m)) < 1e-13);
    }
}

TEST_CASE("closed form matches quadrature") {
  std::mt19937_64 rng(41);
  auto disks = oracle::random_disks(rng, 5);
  disks.emplace_back(0, 3, Side::exterior);
  for (std::size_t i = 0; i < disks.size(); ++i)
    for (std::size_t k = 0; k < disks.size(); ++k) {
      if (i == k || (!disks[i].is_interior() && !disks[k].is_interior())) continue;
      auto cf = bar_block_closed_form(disks[i], disks[k], 12);
      auto qd = bar_block_quadrature(disks[i], disks[k], 12);
      CHECK((cf.entries - qd.entries).cwiseAbs().maxCoeff() < 1e-11);
    }
  CHECK_THROWS_AS(bar_block_quadrature(disks[0], disks[1], 12, 16), Error);
}

TEST_CASE("operator norm is e^{-lambda}") {
  std::mt19937_64 rng(43);
  auto disks = oracle::random_disks(rng, 6, 0.05, 0.15, 0.3);
  for (std::size_t i = 0; i + 1 < disks.size(); ++i) {
    double lam = oracle::distance(disks[i], disks[i + 1]);
    CHECK(bar_norm(disks[i], disks[i + 1], 32) == doctest::Approx(std::exp(-lam)).epsilon(1e-9));
  }
  Disk small(cplx(0.1, 0.2), 0.05), outside(0, 1, Side::exterior);
  auto sv = bar_singular_values(outside, small, 16);
  double lam = oracle::distance(small, outside);
  for (int k = 1; k <= 6; ++k) CHECK(sv(k - 1) == doctest::Approx(std::exp(-k * lam)).epsilon(1e-10));
  CHECK_THROWS_AS(bar_norm(Disk(0, 1), Disk(cplx(1.5), 1), 8), Error);
}

TEST_CASE("Hilbert-Schmidt norm over hyperbolic area is 1/(4 pi)") {
  Disk outside(0, 1, Side::exterior);
  for (auto [c, r] : {std::pair{cplx(0.2, 0.1), 0.05}, std::pair{cplx(-0.5, 0.3), 0.15},
                      std::pair{cplx(0, 0.7), 0.1}}) {
    Disk R(c, r);
    double hs = bar_singular_values(outside, R, 40).squaredNorm();
    CHECK(hs / hyperbolic_area(R) == doctest::Approx(1 / (4 * M_PI)).epsilon(1e-8));
  }
}

TEST_CASE("symmetric model per-mode norm against direct integrals") {
  for (double b : {0.3, 0.7, 0.95})
    for (double lam : {0.25, 1.0})
      for (int n : {1, 2, 5}) {
        double a = b * std::exp(-lam);
        double e1 = 2 * M_PI * n * n * std::pow(b, -4 * n) *
                    oracle::simpson([&](double r) { return (std::pow(r, 2 * n) + std::pow(r, -2 * n)) / r; }, b, 1);
        double e2 = 2 * M_PI * n * n * std::pow(std::pow(b, -4 * n) - 1, 2) *
                    oracle::simpson([&](double r) { return std::pow(r, 2 * n - 1); }, 0, a);
        CHECK(symmetric_model_mode_norm(b, lam, n) == doctest::Approx(std::sqrt(e2 / e1)).epsilon(1e-9));
      }
  CHECK_THROWS_AS(symmetric_model_mode_norm(1.0, 1, 1), Error);
  CHECK_THROWS_AS(symmetric_model_mode_norm(0.5, -1, 1), Error);
  CHECK_THROWS_AS(symmetric_model_mode_norm(0.5, 1, 0), Error);
}

TEST_CASE("delta projector blocks") {
  std::mt19937_64 rng(47);
  auto disks = oracle::random_disks(rng, 4, 0.05, 0.2, 0.2);
  for (std::size_t i = 0; i + 1 < disks.size(); ++i) {
    auto D = delta_projector_block(disks[i], disks[i + 1], 12);
    CHECK(D.plus_plus.cwiseAbs().maxCoeff() < 1e-12);
    CHECK(D.minus_minus.cwiseAbs().maxCoeff() < 1e-12);
    auto bar = bar_block(disks[i], disks[i + 1], 12, 12);
    CHECK((D.minus_plus - bar).cwiseAbs().maxCoeff() < 1e-11);
    CHECK((D.plus_minus - bar.conjugate()).cwiseAbs().maxCoeff() < 1e-11);
  }
}

TEST_CASE("assembled C has the expected block structure") {
  GluingModel m;
  m.pieces = {{Disk(cplx(0), 0.2), Disk(cplx(1), 0.3)}, {Disk(cplx(0), 0.5), Disk(cplx(0), 2, Side::exterior)}};
  auto C = assemble_C(m, 6);
  CHECK(C.mat.rows() == 24);
  for (int j = 0; j < 4; ++j)
    for (int l = 0; l < 4; ++l) {
      if (j == l || m.piece_of(j) != m.piece_of(l))
        CHECK(C.block(j, l).norm() == 0);
      else
        CHECK((C.block(j, l) - bar_block(m.circle(l), m.circle(j), 6, 6)).norm() == 0);
    }
  m.pieces[0][1] = Disk(cplx(0.3), 0.3);
  CHECK_THROWS_AS(assemble_C(m, 6), Error);
}

TEST_CASE("sample counts") {
  CHECK(alias_free_samples(0, 8, 8) == 64);
  CHECK(alias_free_samples(0.5, 8, 8) >= 64);
  CHECK(alias_free_samples(0.9, 8, 8) > alias_free_samples(0.5, 8, 8));
  // concentric disks: modes re-expand as monomials, no decay to track
  CHECK(mode_decay_rate(Disk(0, 1, Side::exterior), Disk(0, 0.25)) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(mode_decay_rate(Disk(cplx(2), 0.5), Disk(0, 0.5)) == doctest::Approx(0.25));
}

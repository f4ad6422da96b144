#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "fweno/flux_models.hpp"

using namespace fweno;

namespace {

ConservationLawSpec euler1d() { return {LawKind::Euler1D, 1.0, 1.4}; }
ConservationLawSpec euler2d() { return {LawKind::Euler2D, 1.0, 1.4}; }

// Conserved state from primitives; the energy closure here is the test's own.
void conserved(const ConservationLawSpec& law, double rho, double vx, double vy, double p,
               double* u) {
  const int m = law.components();
  u[0] = rho;
  u[1] = rho * vx;
  if (m == 4) u[2] = rho * vy;
  u[m - 1] = p / (law.gamma - 1.0) + 0.5 * rho * (vx * vx + vy * vy);
}

template <class Rng>
void random_state(const ConservationLawSpec& law, Rng& rng, double* u) {
  std::uniform_real_distribution<double> rho(0.1, 3.0), vel(-2.0, 2.0), pr(0.1, 5.0);
  const double vy = law.components() == 4 ? vel(rng) : 0.0;
  conserved(law, rho(rng), vel(rng), vy, pr(rng), u);
}

void fd_jacobian(const ConservationLawSpec& law, const double* u, int dir, double* J) {
  const int m = law.components();
  double up[4], um[4], fp[4], fm[4];
  for (int j = 0; j < m; ++j) {
    std::copy(u, u + m, up);
    std::copy(u, u + m, um);
    const double h = 1e-6 * std::max(1.0, std::abs(u[j]));
    up[j] += h;
    um[j] -= h;
    flux(law, up, dir, fp);
    flux(law, um, dir, fm);
    for (int i = 0; i < m; ++i) J[i * m + j] = (fp[i] - fm[i]) / (2.0 * h);
  }
}

void assemble_jacobian(const Eigensystem& e, double* A) {
  const int m = e.m;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      double s = 0.0;
      for (int p = 0; p < m; ++p) s += e.right[i * m + p] * e.lambda[p] * e.left[p * m + j];
      A[i * m + j] = s;
    }
}

double identity_defect(const Eigensystem& e) {
  const int m = e.m;
  double worst = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      double s = 0.0;
      for (int p = 0; p < m; ++p) s += e.left[i * m + p] * e.right[p * m + j];
      worst = std::max(worst, std::abs(s - (i == j ? 1.0 : 0.0)));
    }
  return worst;
}

}  // namespace

TEST_CASE("pressure, flux and wave speed match hand values") {
  const auto l1 = euler1d();
  const double u0[3] = {1.0, 0.0, 2.5};
  CHECK(pressure(l1, u0) == doctest::Approx(1.0).epsilon(1e-14));
  double f[4];
  flux(l1, u0, 0, f);
  CHECK(f[0] == 0.0);
  CHECK(f[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(f[2] == 0.0);
  CHECK(max_wave_speed(l1, u0, 0) == doctest::Approx(std::sqrt(1.4)).epsilon(1e-14));

  ConservationLawSpec burgers{LawKind::Burgers, 1.0, 1.4};
  const double ub = 3.0;
  flux(burgers, &ub, 0, f);
  CHECK(f[0] == doctest::Approx(4.5));
  CHECK(max_wave_speed(burgers, &ub, 0) == 3.0);

  ConservationLawSpec adv{LawKind::Advection, 2.0, 1.4};
  const double ua = 7.0;
  flux(adv, &ua, 0, f);
  CHECK(f[0] == doctest::Approx(14.0));
  CHECK(max_wave_speed(adv, &ua, 0) == 2.0);

  const auto l2 = euler2d();
  double u2[4];
  conserved(l2, 1.0, 2.0, 3.0, 1.4, u2);
  CHECK(pressure(l2, u2) == doctest::Approx(1.4).epsilon(1e-14));
  flux(l2, u2, 0, f);
  CHECK(f[0] == doctest::Approx(2.0));
  CHECK(f[1] == doctest::Approx(5.4));
  CHECK(f[2] == doctest::Approx(6.0));
  CHECK(f[3] == doctest::Approx(22.8));
  flux(l2, u2, 1, f);
  CHECK(f[0] == doctest::Approx(3.0));
  CHECK(f[1] == doctest::Approx(6.0));
  CHECK(f[2] == doctest::Approx(10.4));
  CHECK(f[3] == doctest::Approx(34.2));
}

TEST_CASE("admissibility requires positive density and pressure") {
  const auto law = euler1d();
  const double good[3] = {1.0, 0.0, 2.5};
  const double neg_rho[3] = {-1.0, 0.0, 2.5};
  const double zero_p[3] = {1.0, 0.0, 0.0};
  const double kinetic_only[3] = {1.0, 2.0, 2.0};  // E == rho v^2 / 2
  CHECK(admissible(law, good));
  CHECK_FALSE(admissible(law, neg_rho));
  CHECK_FALSE(admissible(law, zero_p));
  CHECK_FALSE(admissible(law, kinetic_only));
  ConservationLawSpec burgers{LawKind::Burgers, 1.0, 1.4};
  CHECK(admissible(burgers, neg_rho));
}

TEST_CASE("left and right eigenvector matrices are mutual inverses") {
  std::mt19937 rng(2024);
  double u[4], v[4];
  for (int it = 0; it < 1000; ++it) {
    const auto l1 = euler1d();
    random_state(l1, rng, u);
    CHECK(identity_defect(eigensystem_at(l1, u, 0)) < 1e-11);

    const auto l2 = euler2d();
    random_state(l2, rng, u);
    random_state(l2, rng, v);
    for (int dir = 0; dir < 2; ++dir) {
      CHECK(identity_defect(eigensystem_at(l2, u, dir)) < 1e-11);
      CHECK(identity_defect(roe_eigensystem(l2, u, v, dir)) < 1e-11);
    }
  }
}

TEST_CASE("eigendecomposition reproduces the flux Jacobian") {
  std::mt19937 rng(7);
  double u[4], A[16], J[16];
  for (const auto kind : {LawKind::Euler1D, LawKind::Euler2D}) {
    ConservationLawSpec law{kind, 1.0, 1.4};
    const int m = law.components();
    for (int it = 0; it < 200; ++it) {
      random_state(law, rng, u);
      for (int dir = 0; dir < law.dimensions(); ++dir) {
        assemble_jacobian(eigensystem_at(law, u, dir), A);
        fd_jacobian(law, u, dir, J);
        double scale = 1.0;
        for (int k = 0; k < m * m; ++k) scale = std::max(scale, std::abs(A[k]));
        for (int k = 0; k < m * m; ++k) CHECK(std::abs(A[k] - J[k]) < 1e-6 * scale);
      }
    }
  }
}

TEST_CASE("Roe average linearizes the flux jump exactly") {
  std::mt19937 rng(99);
  double ul[4], ur[4], fl[4], fr[4], A[16];
  for (const auto kind : {LawKind::Burgers, LawKind::Euler1D, LawKind::Euler2D}) {
    ConservationLawSpec law{kind, 1.0, 1.4};
    const int m = law.components();
    for (int it = 0; it < 300; ++it) {
      if (kind == LawKind::Burgers) {
        std::uniform_real_distribution<double> d(-3.0, 3.0);
        ul[0] = d(rng);
        ur[0] = d(rng);
      } else {
        random_state(law, rng, ul);
        random_state(law, rng, ur);
      }
      for (int dir = 0; dir < law.dimensions(); ++dir) {
        flux(law, ul, dir, fl);
        flux(law, ur, dir, fr);
        assemble_jacobian(roe_eigensystem(law, ul, ur, dir), A);
        double scale = 1.0;
        for (int i = 0; i < m; ++i) scale = std::max(scale, std::abs(fr[i] - fl[i]));
        for (int i = 0; i < m; ++i) {
          double s = 0.0;
          for (int j = 0; j < m; ++j) s += A[i * m + j] * (ur[j] - ul[j]);
          CHECK(std::abs(s - (fr[i] - fl[i])) < 1e-10 * scale);
        }
      }
    }
  }
}

TEST_CASE("velocity reflection flips the odd flux components") {
  const auto law = euler1d();
  std::mt19937 rng(5);
  double u[3], m[3], fu[3], fm[3];
  for (int it = 0; it < 100; ++it) {
    random_state(law, rng, u);
    m[0] = u[0];
    m[1] = -u[1];
    m[2] = u[2];
    flux(law, u, 0, fu);
    flux(law, m, 0, fm);
    CHECK(fm[0] == doctest::Approx(-fu[0]).epsilon(1e-13));
    CHECK(fm[1] == doctest::Approx(fu[1]).epsilon(1e-13));
    CHECK(fm[2] == doctest::Approx(-fu[2]).epsilon(1e-13));
    const auto eu = eigensystem_at(law, u, 0);
    const auto em = eigensystem_at(law, m, 0);
    for (int p = 0; p < 3; ++p)
      CHECK(em.lambda[p] == doctest::Approx(-eu.lambda[2 - p]).epsilon(1e-12));
  }
}

TEST_CASE("characteristic speeds are ascending and match the eigensystem") {
  std::mt19937 rng(31);
  double u[4], lam[4];
  for (const auto kind : {LawKind::Euler1D, LawKind::Euler2D}) {
    ConservationLawSpec law{kind, 1.0, 1.4};
    const int m = law.components();
    for (int it = 0; it < 100; ++it) {
      random_state(law, rng, u);
      for (int dir = 0; dir < law.dimensions(); ++dir) {
        eigenvalues(law, u, dir, lam);
        for (int p = 0; p + 1 < m; ++p) CHECK(lam[p] <= lam[p + 1]);
        const auto e = eigensystem_at(law, u, dir);
        for (int p = 0; p < m; ++p) CHECK(lam[p] == doctest::Approx(e.lambda[p]).epsilon(1e-13));
        CHECK(max_wave_speed(law, u, dir) ==
              doctest::Approx(std::max(std::abs(lam[0]), std::abs(lam[m - 1]))).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("lax-friedrichs split recombines and is one-signed") {
  ConservationLawSpec burgers{LawKind::Burgers, 1.0, 1.4};
  const double alpha = 2.0;
  double prev_p = -1e300, prev_m = 1e300;
  for (int k = 0; k <= 100; ++k) {
    const double u = -2.0 + 4.0 * k / 100.0;
    double fp, fm, f;
    lf_split(burgers, &u, 0, alpha, &fp, &fm);
    flux(burgers, &u, 0, &f);
    CHECK(fp + fm == doctest::Approx(f).epsilon(1e-15));
    CHECK(fp >= prev_p);  // d(fp)/du = (u + alpha)/2 >= 0 on [-2, 2]
    CHECK(fm <= prev_m);
    prev_p = fp;
    prev_m = fm;
  }
}

TEST_CASE("interface flux is consistent on constant data") {
  std::mt19937 rng(11);
  double state[4], f[4], fhat[4];
  for (const auto kind : {LawKind::Burgers, LawKind::Euler1D, LawKind::Euler2D}) {
    ConservationLawSpec law{kind, 1.0, 1.4};
    const int m = law.components();
    random_state(law, rng, state);
    for (int r = 2; r <= 5; ++r) {
      const auto& tab = lowered_table(r, DiscretizationMode::CellAverage);
      std::vector<double> cells(2 * r * m), fluxes(2 * r * m);
      for (int k = 0; k < 2 * r; ++k) {
        std::copy(state, state + m, &cells[k * m]);
        flux(law, state, 0, &fluxes[k * m]);
      }
      flux(law, state, 0, f);
      for (const auto v : {WenoVariant::JS, WenoVariant::YC, WenoVariant::FWENO}) {
        NoCount nc;
        donat_marquina_interface_flux(law, tab, v, default_params(r), cells.data(),
                                      fluxes.data(), 0, fhat, nc);
        for (int c = 0; c < m; ++c)
          CHECK(fhat[c] == doctest::Approx(f[c]).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("interface flux reduces to upwind reconstruction for advection") {
  const int r = 3;
  const auto& tab = lowered_table(r, DiscretizationMode::CellAverage);
  const auto params = default_params(r);
  std::vector<double> cells = {1.0, 1.4, 2.1, 2.2, 1.7, 0.9};
  for (const double a : {1.5, -1.5}) {
    ConservationLawSpec adv{LawKind::Advection, a, 1.4};
    std::vector<double> fluxes(cells.size());
    for (size_t k = 0; k < cells.size(); ++k) fluxes[k] = a * cells[k];

    std::vector<double> window(2 * r - 1);
    if (a > 0.0) {
      for (int k = 0; k < 2 * r - 1; ++k) window[k] = fluxes[k];
    } else {
      for (int k = 0; k < 2 * r - 1; ++k) window[k] = fluxes[2 * r - 1 - k];
    }
    for (const auto v : {WenoVariant::JS, WenoVariant::YC, WenoVariant::FWENO}) {
      NoCount nc;
      double fhat = 0.0;
      donat_marquina_interface_flux(adv, tab, v, params, cells.data(), fluxes.data(), 0,
                                    &fhat, nc);
      const double direct = reconstruct(window.data(), tab, v, params, nc);
      CHECK(fhat == doctest::Approx(direct).epsilon(1e-14));
    }
  }
}

TEST_CASE("sonic interfaces fall back to the split form") {
  const int r = 3;
  const auto& tab = lowered_table(r, DiscretizationMode::CellAverage);
  const auto params = default_params(r);
  ConservationLawSpec burgers{LawKind::Burgers, 1.0, 1.4};
  // Speeds change sign between the middle cells, so the entropy-fix branch
  // must engage with alpha = max |u| over all six cells.
  std::vector<double> cells = {-1.1, -0.7, -0.2, 0.3, 0.8, 1.3};
  std::vector<double> fluxes(cells.size());
  for (size_t k = 0; k < cells.size(); ++k) fluxes[k] = 0.5 * cells[k] * cells[k];
  const double alpha = 1.3;

  std::vector<double> wp(2 * r - 1), wm(2 * r - 1);
  for (int k = 0; k < 2 * r - 1; ++k) {
    wp[k] = 0.5 * (fluxes[k] + alpha * cells[k]);
    wm[k] = 0.5 * (fluxes[2 * r - 1 - k] - alpha * cells[2 * r - 1 - k]);
  }
  for (const auto v : {WenoVariant::JS, WenoVariant::YC, WenoVariant::FWENO}) {
    NoCount nc;
    double fhat = 0.0;
    donat_marquina_interface_flux(burgers, tab, v, params, cells.data(), fluxes.data(), 0,
                                  &fhat, nc);
    const double expected =
        reconstruct(wp.data(), tab, v, params, nc) + reconstruct(wm.data(), tab, v, params, nc);
    CHECK(fhat == doctest::Approx(expected).epsilon(1e-14));
  }
}

TEST_CASE("splitting names round-trip") {
  for (const auto s : {SplittingScheme::GlobalLaxFriedrichs, SplittingScheme::LocalLaxFriedrichs,
                       SplittingScheme::DonatMarquina})
    CHECK(parse_splitting(splitting_name(s)) == s);
  CHECK_THROWS_AS(parse_splitting("roe"), std::invalid_argument);
}

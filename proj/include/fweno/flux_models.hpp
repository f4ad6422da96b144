#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include "fweno/coeff_tables.hpp"
#include "fweno/kernels.hpp"

namespace fweno {

enum class LawKind { Advection, Burgers, Euler1D, Euler2D };

constexpr int kMaxComponents = 4;

/// A hyperbolic conservation law u_t + div f(u) = 0. `speed` is only read by
/// the advection law, `gamma` only by the Euler laws.
struct ConservationLawSpec {
  LawKind kind = LawKind::Advection;
  double speed = 1.0;
  double gamma = 1.4;

  int components() const {
    switch (kind) {
      case LawKind::Advection:
      case LawKind::Burgers:
        return 1;
      case LawKind::Euler1D:
        return 3;
      case LawKind::Euler2D:
        return 4;
    }
    return 1;
  }
  int dimensions() const { return kind == LawKind::Euler2D ? 2 : 1; }
};

enum class SplittingScheme { GlobalLaxFriedrichs, LocalLaxFriedrichs, DonatMarquina };

std::string splitting_name(SplittingScheme s);
SplittingScheme parse_splitting(const std::string& name);  // "glf" | "llf" | "dm"

/// Pressure from a conserved Euler state; scalar laws return 0.
double pressure(const ConservationLawSpec& law, const double* u);

/// Strictly positive density and pressure (vacuously true for scalar laws).
bool admissible(const ConservationLawSpec& law, const double* u);

/// Physical flux along direction dir (0 = x, 1 = y).
void flux(const ConservationLawSpec& law, const double* u, int dir, double* f);

/// Spectral radius of df/du at u along dir.
double max_wave_speed(const ConservationLawSpec& law, const double* u, int dir);

/// Characteristic speeds at u along dir, in the fixed field order used by the
/// eigensystems below (acoustic-, entropy/shear, acoustic+ for Euler).
void eigenvalues(const ConservationLawSpec& law, const double* u, int dir, double* lam);

/// Split fluxes fp = (f + alpha u) / 2, fm = (f - alpha u) / 2, so that
/// fp + fm = f and fp (fm) has a nonnegative (nonpositive) Jacobian whenever
/// alpha dominates the local spectral radius.
void lf_split(const ConservationLawSpec& law, const double* u, int dir, double alpha,
              double* fp, double* fm);

/// Characteristic decomposition df/du = right * diag(lambda) * left with
/// left * right = I. Matrices are row-major m x m; row p of `left` and column
/// p of `right` belong to lambda[p]. Scalar laws get the trivial system.
struct Eigensystem {
  int m = 1;
  std::array<double, kMaxComponents> lambda{};
  std::array<double, kMaxComponents * kMaxComponents> left{};
  std::array<double, kMaxComponents * kMaxComponents> right{};
};

Eigensystem eigensystem_at(const ConservationLawSpec& law, const double* u, int dir);

/// Eigensystem at the Roe average of two states. For the Euler laws it
/// satisfies f(ur) - f(ul) = right diag(lambda) left (ur - ul) exactly.
Eigensystem roe_eigensystem(const ConservationLawSpec& law, const double* ul,
                            const double* ur, int dir);

/// Donat-Marquina numerical flux at the interface between cells[r-1] and
/// cells[r]. `cells` holds 2r conserved states (row-major, m components each)
/// and `fluxes` their physical fluxes along dir. Fields whose speed keeps one
/// sign on both sides of the interface are upwinded through the eigensystem of
/// that side; a field crossing a sonic point falls back to a Lax-Friedrichs
/// split with the field speed maximized over the whole stencil.
template <class Ops>
void donat_marquina_interface_flux(const ConservationLawSpec& law, const LoweredTable& t,
                                   WenoVariant v, const WenoParams& p, const double* cells,
                                   const double* fluxes, int dir, double* fhat, Ops& ops) {
  const int r = t.r;
  const int n = 2 * r - 1;
  const int m = law.components();
  const Eigensystem el = eigensystem_at(law, cells + (r - 1) * m, dir);
  const Eigensystem er = eigensystem_at(law, cells + r * m, dir);

  std::array<std::array<double, kMaxComponents>, 2 * kMaxOrderR> lam;
  for (int k = 0; k < 2 * r; ++k) eigenvalues(law, cells + k * m, dir, lam[k].data());

  for (int c = 0; c < m; ++c) fhat[c] = 0.0;

  // Plus-side window covers cells[0 .. 2r-2]; the minus side uses
  // cells[1 .. 2r-1] mirrored so the same left-biased kernel reconstructs the
  // right-biased value at the interface.
  std::array<double, 2 * kMaxOrderR - 1> wp, wm;
  for (int q = 0; q < m; ++q) {
    const double sl = el.lambda[q];
    const double sr = er.lambda[q];
    if (sl > 0.0 && sr > 0.0) {
      for (int k = 0; k < n; ++k) {
        double a = 0.0;
        for (int c = 0; c < m; ++c) a += el.left[q * m + c] * fluxes[k * m + c];
        wp[k] = a;
      }
      const double g = reconstruct(wp.data(), t, v, p, ops);
      for (int c = 0; c < m; ++c) fhat[c] += g * el.right[c * m + q];
    } else if (sl < 0.0 && sr < 0.0) {
      for (int k = 0; k < n; ++k) {
        const double* f = fluxes + (2 * r - 1 - k) * m;
        double a = 0.0;
        for (int c = 0; c < m; ++c) a += er.left[q * m + c] * f[c];
        wm[k] = a;
      }
      const double g = reconstruct(wm.data(), t, v, p, ops);
      for (int c = 0; c < m; ++c) fhat[c] += g * er.right[c * m + q];
    } else {
      double alpha = 0.0;
      for (int k = 0; k < 2 * r; ++k) alpha = std::max(alpha, std::abs(lam[k][q]));
      for (int k = 0; k < n; ++k) {
        double a = 0.0;
        for (int c = 0; c < m; ++c)
          a += el.left[q * m + c] * (fluxes[k * m + c] + alpha * cells[k * m + c]);
        wp[k] = 0.5 * a;
        const double* f = fluxes + (2 * r - 1 - k) * m;
        const double* u = cells + (2 * r - 1 - k) * m;
        double b = 0.0;
        for (int c = 0; c < m; ++c) b += er.left[q * m + c] * (f[c] - alpha * u[c]);
        wm[k] = 0.5 * b;
      }
      const double gp = reconstruct(wp.data(), t, v, p, ops);
      const double gm = reconstruct(wm.data(), t, v, p, ops);
      for (int c = 0; c < m; ++c)
        fhat[c] += gp * el.right[c * m + q] + gm * er.right[c * m + q];
    }
  }
}

}  // namespace fweno

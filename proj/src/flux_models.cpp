#include "fweno/flux_models.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fweno {

std::string splitting_name(SplittingScheme s) {
  switch (s) {
    case SplittingScheme::GlobalLaxFriedrichs:
      return "glf";
    case SplittingScheme::LocalLaxFriedrichs:
      return "llf";
    case SplittingScheme::DonatMarquina:
      return "dm";
  }
  return "?";
}

SplittingScheme parse_splitting(const std::string& name) {
  if (name == "glf") return SplittingScheme::GlobalLaxFriedrichs;
  if (name == "llf") return SplittingScheme::LocalLaxFriedrichs;
  if (name == "dm") return SplittingScheme::DonatMarquina;
  throw std::invalid_argument("unknown flux splitting: " + name);
}

double pressure(const ConservationLawSpec& law, const double* u) {
  switch (law.kind) {
    case LawKind::Euler1D:
      return (law.gamma - 1.0) * (u[2] - 0.5 * u[1] * u[1] / u[0]);
    case LawKind::Euler2D:
      return (law.gamma - 1.0) * (u[3] - 0.5 * (u[1] * u[1] + u[2] * u[2]) / u[0]);
    default:
      return 0.0;
  }
}

bool admissible(const ConservationLawSpec& law, const double* u) {
  if (law.kind == LawKind::Advection || law.kind == LawKind::Burgers) return true;
  return u[0] > 0.0 && pressure(law, u) > 0.0;
}

void flux(const ConservationLawSpec& law, const double* u, int dir, double* f) {
  switch (law.kind) {
    case LawKind::Advection:
      f[0] = law.speed * u[0];
      return;
    case LawKind::Burgers:
      f[0] = 0.5 * u[0] * u[0];
      return;
    case LawKind::Euler1D: {
      const double v = u[1] / u[0];
      const double p = pressure(law, u);
      f[0] = u[1];
      f[1] = p + u[1] * v;
      f[2] = v * (u[2] + p);
      return;
    }
    case LawKind::Euler2D: {
      const double vn = u[1 + dir] / u[0];
      const double p = pressure(law, u);
      f[0] = u[1 + dir];
      f[1] = u[1] * vn;
      f[2] = u[2] * vn;
      f[1 + dir] += p;
      f[3] = vn * (u[3] + p);
      return;
    }
  }
}

namespace {

double sound_speed(const ConservationLawSpec& law, const double* u) {
  return std::sqrt(law.gamma * pressure(law, u) / u[0]);
}

// Eigensystem of the Euler Jacobian from the velocity, total enthalpy and
// sound speed, in the component order (rho, rho*vn, [rho*vt,] E). For the
// y sweep of the 2D law the caller permutes components 1 and 2 afterwards.
Eigensystem euler_eigensystem(int m, double gamma, double vn, double vt, double h,
                              double c) {
  Eigensystem e;
  e.m = m;
  const double b1 = (gamma - 1.0) / (c * c);
  const double q2 = vn * vn + vt * vt;
  const double b2 = 0.5 * b1 * q2;
  auto L = [&e, m](int i, int j) -> double& { return e.left[i * m + j]; };
  auto R = [&e, m](int i, int j) -> double& { return e.right[i * m + j]; };
  if (m == 3) {
    e.lambda = {vn - c, vn, vn + c, 0.0};
    R(0, 0) = 1.0;       R(0, 1) = 1.0;      R(0, 2) = 1.0;
    R(1, 0) = vn - c;    R(1, 1) = vn;       R(1, 2) = vn + c;
    R(2, 0) = h - vn * c; R(2, 1) = 0.5 * q2; R(2, 2) = h + vn * c;
    L(0, 0) = 0.5 * (b2 + vn / c);
    L(0, 1) = -0.5 * (b1 * vn + 1.0 / c);
    L(0, 2) = 0.5 * b1;
    L(1, 0) = 1.0 - b2;
    L(1, 1) = b1 * vn;
    L(1, 2) = -b1;
    L(2, 0) = 0.5 * (b2 - vn / c);
    L(2, 1) = -0.5 * (b1 * vn - 1.0 / c);
    L(2, 2) = 0.5 * b1;
  } else {
    e.lambda = {vn - c, vn, vn, vn + c};
    R(0, 0) = 1.0;        R(0, 1) = 1.0;      R(0, 2) = 0.0; R(0, 3) = 1.0;
    R(1, 0) = vn - c;     R(1, 1) = vn;       R(1, 2) = 0.0; R(1, 3) = vn + c;
    R(2, 0) = vt;         R(2, 1) = vt;       R(2, 2) = 1.0; R(2, 3) = vt;
    R(3, 0) = h - vn * c; R(3, 1) = 0.5 * q2; R(3, 2) = vt;  R(3, 3) = h + vn * c;
    L(0, 0) = 0.5 * (b2 + vn / c);
    L(0, 1) = -0.5 * (b1 * vn + 1.0 / c);
    L(0, 2) = -0.5 * b1 * vt;
    L(0, 3) = 0.5 * b1;
    L(1, 0) = 1.0 - b2;
    L(1, 1) = b1 * vn;
    L(1, 2) = b1 * vt;
    L(1, 3) = -b1;
    L(2, 0) = -vt;
    L(2, 1) = 0.0;
    L(2, 2) = 1.0;
    L(2, 3) = 0.0;
    L(3, 0) = 0.5 * (b2 - vn / c);
    L(3, 1) = -0.5 * (b1 * vn - 1.0 / c);
    L(3, 2) = -0.5 * b1 * vt;
    L(3, 3) = 0.5 * b1;
  }
  return e;
}

// The 2D system above lives in (rho, rho*vn, rho*vt, E) ordering; for the
// y sweep the physical state is (rho, rho*vx, rho*vy, E) with vn = vy, so
// conjugate by the permutation swapping components 1 and 2: columns of the
// left matrix, rows of the right one.
void swap_normal_tangential(Eigensystem& e) {
  const int m = e.m;
  for (int i = 0; i < m; ++i) std::swap(e.left[i * m + 1], e.left[i * m + 2]);
  for (int j = 0; j < m; ++j) std::swap(e.right[1 * m + j], e.right[2 * m + j]);
}

Eigensystem scalar_eigensystem(double lambda) {
  Eigensystem e;
  e.m = 1;
  e.lambda[0] = lambda;
  e.left[0] = 1.0;
  e.right[0] = 1.0;
  return e;
}

}  // namespace

double max_wave_speed(const ConservationLawSpec& law, const double* u, int dir) {
  switch (law.kind) {
    case LawKind::Advection:
      return std::abs(law.speed);
    case LawKind::Burgers:
      return std::abs(u[0]);
    case LawKind::Euler1D:
      return std::abs(u[1] / u[0]) + sound_speed(law, u);
    case LawKind::Euler2D:
      return std::abs(u[1 + dir] / u[0]) + sound_speed(law, u);
  }
  return 0.0;
}

void eigenvalues(const ConservationLawSpec& law, const double* u, int dir, double* lam) {
  switch (law.kind) {
    case LawKind::Advection:
      lam[0] = law.speed;
      return;
    case LawKind::Burgers:
      lam[0] = u[0];
      return;
    case LawKind::Euler1D: {
      const double v = u[1] / u[0];
      const double c = sound_speed(law, u);
      lam[0] = v - c;
      lam[1] = v;
      lam[2] = v + c;
      return;
    }
    case LawKind::Euler2D: {
      const double vn = u[1 + dir] / u[0];
      const double c = sound_speed(law, u);
      lam[0] = vn - c;
      lam[1] = vn;
      lam[2] = vn;
      lam[3] = vn + c;
      return;
    }
  }
}

void lf_split(const ConservationLawSpec& law, const double* u, int dir, double alpha,
              double* fp, double* fm) {
  const int m = law.components();
  double f[kMaxComponents];
  flux(law, u, dir, f);
  for (int c = 0; c < m; ++c) {
    fp[c] = 0.5 * (f[c] + alpha * u[c]);
    fm[c] = 0.5 * (f[c] - alpha * u[c]);
  }
}

Eigensystem eigensystem_at(const ConservationLawSpec& law, const double* u, int dir) {
  switch (law.kind) {
    case LawKind::Advection:
      return scalar_eigensystem(law.speed);
    case LawKind::Burgers:
      return scalar_eigensystem(u[0]);
    case LawKind::Euler1D: {
      const double v = u[1] / u[0];
      const double p = pressure(law, u);
      const double h = (u[2] + p) / u[0];
      return euler_eigensystem(3, law.gamma, v, 0.0, h, sound_speed(law, u));
    }
    case LawKind::Euler2D: {
      const double vn = u[1 + dir] / u[0];
      const double vt = u[2 - dir] / u[0];
      const double p = pressure(law, u);
      const double h = (u[3] + p) / u[0];
      Eigensystem e = euler_eigensystem(4, law.gamma, vn, vt, h, sound_speed(law, u));
      if (dir == 1) swap_normal_tangential(e);
      return e;
    }
  }
  return scalar_eigensystem(0.0);
}

Eigensystem roe_eigensystem(const ConservationLawSpec& law, const double* ul,
                            const double* ur, int dir) {
  if (law.kind == LawKind::Advection) return scalar_eigensystem(law.speed);
  if (law.kind == LawKind::Burgers) return scalar_eigensystem(0.5 * (ul[0] + ur[0]));
  const int m = law.components();
  const double sl = std::sqrt(ul[0]);
  const double sr = std::sqrt(ur[0]);
  const double wl = sl / (sl + sr);
  const double wr = 1.0 - wl;
  const double pl = pressure(law, ul);
  const double pr = pressure(law, ur);
  const double h = wl * (ul[m - 1] + pl) / ul[0] + wr * (ur[m - 1] + pr) / ur[0];
  double v[2] = {0.0, 0.0};
  for (int d = 0; d + 1 < m - 1; ++d)
    v[d] = wl * ul[1 + d] / ul[0] + wr * ur[1 + d] / ur[0];
  const double q2 = v[0] * v[0] + v[1] * v[1];
  const double c = std::sqrt((law.gamma - 1.0) * (h - 0.5 * q2));
  if (m == 3) return euler_eigensystem(3, law.gamma, v[0], 0.0, h, c);
  Eigensystem e = euler_eigensystem(4, law.gamma, v[dir], v[1 - dir], h, c);
  if (dir == 1) swap_normal_tangential(e);
  return e;
}

}  // namespace fweno

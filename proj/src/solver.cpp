#include "fweno/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <thread>

namespace fweno {

double dt_from_speed(double alpha, double h, const SolverConfig& cfg) {
  const double eff =
      cfg.dt_rule == DtRule::OrderMatched ? std::pow(h, (2.0 * cfg.r - 1.0) / 3.0) : h;
  return cfg.cfl * eff / alpha;
}

namespace {

constexpr double kSplitSpeedMargin = 1.1;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Component that flips sign when mirroring across a boundary with normal
// direction dir; -1 for plain-copy laws.
int normal_momentum_component(const ConservationLawSpec& law, int dir) {
  if (law.kind == LawKind::Euler1D) return 1;
  if (law.kind == LawKind::Euler2D) return 1 + dir;
  return -1;
}

const BcSegment& pick_segment(const SideBC& side, double coord) {
  for (const auto& s : side.segments)
    if (coord <= s.limit) return s;
  return side.segments.back();
}

void check_side(const SideBC& side, const char* name) {
  if (side.segments.empty())
    throw std::invalid_argument(std::string("boundary side '") + name + "' has no segments");
  for (const auto& s : side.segments) {
    if (s.kind == BcKind::TimeDependent && !s.fn)
      throw std::invalid_argument(std::string("time-dependent segment on '") + name +
                                  "' lacks a function");
    if (s.kind == BcKind::Periodic && side.segments.size() != 1)
      throw std::invalid_argument("periodic sides cannot be segmented");
  }
}

bool is_periodic(const SideBC& side) { return side.segments.front().kind == BcKind::Periodic; }

void check_axis_pair(const SideBC& lo, const SideBC& hi, const char* axis) {
  if (is_periodic(lo) != is_periodic(hi))
    throw std::invalid_argument(std::string("periodic wrap on axis ") + axis +
                                " must be set on both sides");
}

void validate_common(const SolverConfig& cfg, int g, int nmin) {
  if (cfg.r < kMinOrderR || cfg.r > kMaxOrderR) throw std::invalid_argument("order r out of range");
  if (g != cfg.r) throw std::invalid_argument("ghost width must equal the stencil radius r");
  if (!(cfg.cfl > 0.0) || cfg.cfl > 1.0) throw std::invalid_argument("cfl must lie in (0, 1]");
  if (!(cfg.t_final >= 0.0)) throw std::invalid_argument("t_final must be nonnegative");
  if (cfg.threads < 1) throw std::invalid_argument("threads must be at least 1");
  if (nmin < g) throw std::invalid_argument("grid too coarse for the ghost width");
}

// Writes one ghost state at mirror depth k (k = 0 is closest to the boundary).
// `inner` points at the interior cell the segment reads from (mirror cell for
// Reflect, wrap source for Periodic, edge cell for Outflow).
void ghost_state(const ConservationLawSpec& law, const BcSegment& seg, int dir, double coord,
                 double t, const double* inner, double* dst, int m) {
  switch (seg.kind) {
    case BcKind::Periodic:
    case BcKind::OutflowExtrapolate:
      std::copy(inner, inner + m, dst);
      return;
    case BcKind::InflowFixed:
      std::copy(seg.value.begin(), seg.value.begin() + m, dst);
      return;
    case BcKind::Reflect: {
      std::copy(inner, inner + m, dst);
      const int nc = normal_momentum_component(law, dir);
      if (nc >= 0) dst[nc] = -dst[nc];
      return;
    }
    case BcKind::TimeDependent:
      seg.fn(coord, t, dst);
      return;
  }
}

}  // namespace

void fill_ghosts_1d(const ConservationLawSpec& law, const Grid1D& grid,
                    const BoundaryConditions& bc, double t, std::vector<double>& u) {
  const int m = law.components();
  const int g = grid.g, n = grid.n;
  const BcSegment& ls = bc.left.segments.front();
  const BcSegment& rs = bc.right.segments.front();
  for (int k = 0; k < g; ++k) {
    const double* linner = ls.kind == BcKind::Periodic          ? &u[(g + n - 1 - k) * m]
                           : ls.kind == BcKind::Reflect         ? &u[(g + k) * m]
                                                                : &u[g * m];
    ghost_state(law, ls, 0, grid.center(-1 - k), t, linner, &u[(g - 1 - k) * m], m);
    const double* rinner = rs.kind == BcKind::Periodic          ? &u[(g + k) * m]
                           : rs.kind == BcKind::Reflect         ? &u[(g + n - 1 - k) * m]
                                                                : &u[(g + n - 1) * m];
    ghost_state(law, rs, 0, grid.center(n + k), t, rinner, &u[(g + n + k) * m], m);
  }
}

void fill_ghosts_2d(const ConservationLawSpec& law, const Grid2D& grid,
                    const BoundaryConditions& bc, double t, std::vector<double>& u) {
  const int m = law.components();
  const int g = grid.g, nx = grid.nx, ny = grid.ny, ex = grid.extx();
  auto at = [&](int ix, int iy) { return &u[((iy + g) * ex + (ix + g)) * m]; };
  // x sides, interior rows only; corner blocks stay unused.
  for (int iy = 0; iy < ny; ++iy) {
    const double y = grid.cy(iy);
    const BcSegment& ls = pick_segment(bc.left, y);
    const BcSegment& rs = pick_segment(bc.right, y);
    for (int k = 0; k < g; ++k) {
      const double* li = ls.kind == BcKind::Periodic  ? at(nx - 1 - k, iy)
                         : ls.kind == BcKind::Reflect ? at(k, iy)
                                                      : at(0, iy);
      ghost_state(law, ls, 0, y, t, li, at(-1 - k, iy), m);
      const double* ri = rs.kind == BcKind::Periodic  ? at(k, iy)
                         : rs.kind == BcKind::Reflect ? at(nx - 1 - k, iy)
                                                      : at(nx - 1, iy);
      ghost_state(law, rs, 0, y, t, ri, at(nx + k, iy), m);
    }
  }
  // y sides, interior columns only.
  for (int ix = 0; ix < nx; ++ix) {
    const double x = grid.cx(ix);
    const BcSegment& bs = pick_segment(bc.bottom, x);
    const BcSegment& ts = pick_segment(bc.top, x);
    for (int k = 0; k < g; ++k) {
      const double* bi = bs.kind == BcKind::Periodic  ? at(ix, ny - 1 - k)
                         : bs.kind == BcKind::Reflect ? at(ix, k)
                                                      : at(ix, 0);
      ghost_state(law, bs, 1, x, t, bi, at(ix, -1 - k), m);
      const double* ti = ts.kind == BcKind::Periodic  ? at(ix, k)
                         : ts.kind == BcKind::Reflect ? at(ix, ny - 1 - k)
                                                      : at(ix, ny - 1);
      ghost_state(law, ts, 1, x, t, ti, at(ix, ny + k), m);
    }
  }
}

namespace {

// Numerical fluxes for all nfaces interfaces of one line. Window for face j is
// cells[j .. j+2r-1]; fx holds the matching physical fluxes. lam carries
// per-cell characteristic speeds and is only read by the local split;
// alpha_global only by the global one.
template <class Ops>
void line_fluxes(const ConservationLawSpec& law, const LoweredTable& tab,
                 const SolverConfig& cfg, const double* cells, const double* fx,
                 const double* lam, int nfaces, int dir, double alpha_global, double* fhat,
                 Ops& ops) {
  const int r = tab.r;
  const int m = law.components();
  const int n = 2 * r - 1;
  std::array<double, 2 * kMaxOrderR - 1> wp, wm;
  for (int j = 0; j < nfaces; ++j) {
    const double* c = cells + j * m;
    const double* f = fx + j * m;
    double* out = fhat + j * m;
    if (cfg.splitting == SplittingScheme::DonatMarquina) {
      donat_marquina_interface_flux(law, tab, cfg.variant, cfg.params, c, f, dir, out, ops);
      continue;
    }
    if (m == 1) {
      double alpha = alpha_global;
      if (cfg.splitting == SplittingScheme::LocalLaxFriedrichs) {
        alpha = 0.0;
        for (int k = 0; k < 2 * r; ++k) alpha = std::max(alpha, std::abs(lam[j + k]));
      }
      for (int k = 0; k < n; ++k) {
        wp[k] = 0.5 * (f[k] + alpha * c[k]);
        const int kk = n - k;
        wm[k] = 0.5 * (f[kk] - alpha * c[kk]);
      }
      out[0] = reconstruct(wp.data(), tab, cfg.variant, cfg.params, ops) +
               reconstruct(wm.data(), tab, cfg.variant, cfg.params, ops);
      continue;
    }
    const Eigensystem e = roe_eigensystem(law, c + (r - 1) * m, c + r * m, dir);
    for (int cc = 0; cc < m; ++cc) out[cc] = 0.0;
    for (int p = 0; p < m; ++p) {
      double alpha = alpha_global;
      if (cfg.splitting == SplittingScheme::LocalLaxFriedrichs) {
        alpha = 0.0;
        for (int k = 0; k < 2 * r; ++k)
          alpha = std::max(alpha, std::abs(lam[(j + k) * m + p]));
      }
      const double* L = &e.left[p * m];
      for (int k = 0; k < n; ++k) {
        double af = 0.0, au = 0.0;
        for (int cc = 0; cc < m; ++cc) {
          af += L[cc] * f[k * m + cc];
          au += L[cc] * c[k * m + cc];
        }
        wp[k] = 0.5 * (af + alpha * au);
        const int kk = 2 * r - 1 - k;
        af = au = 0.0;
        for (int cc = 0; cc < m; ++cc) {
          af += L[cc] * f[kk * m + cc];
          au += L[cc] * c[kk * m + cc];
        }
        wm[k] = 0.5 * (af - alpha * au);
      }
      const double gp = reconstruct(wp.data(), tab, cfg.variant, cfg.params, ops);
      const double gm = reconstruct(wm.data(), tab, cfg.variant, cfg.params, ops);
      for (int cc = 0; cc < m; ++cc) out[cc] += (gp + gm) * e.right[cc * m + p];
    }
  }
}

struct Work {
  std::vector<double> line, fx, lam, fhat;
};

void merge_ops(NoCount&, const NoCount&) {}
void merge_ops(OpCounter& into, const OpCounter& part) { into += part; }

// Runs job(line, work, ops) for every line index. Threads take lines in a
// strided pattern; per-thread op counts are integers merged in thread order,
// so the distribution never changes any result.
template <class Ops, class Job>
void for_each_line(int count, std::vector<Work>& works, Ops& ops, Job&& job) {
  const int nt = static_cast<int>(works.size());
  if (nt <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) job(i, works[0], ops);
    return;
  }
  std::vector<Ops> parts(nt);
  std::vector<std::thread> crew;
  crew.reserve(nt - 1);
  for (int tid = 1; tid < nt; ++tid)
    crew.emplace_back([&, tid] {
      for (int i = tid; i < count; i += nt) job(i, works[tid], parts[tid]);
    });
  for (int i = 0; i < count; i += nt) job(i, works[0], parts[0]);
  for (auto& th : crew) th.join();
  for (const auto& p : parts) merge_ops(ops, p);
}

template <class Ops>
void rhs_1d_core(const ConservationLawSpec& law, const Grid1D& grid,
                 const BoundaryConditions& bc, const SolverConfig& cfg,
                 const LoweredTable& tab, double t, std::vector<double>& u,
                 std::vector<double>& rhs, Work& w, Ops& ops, double& kernel_seconds) {
  const int m = law.components();
  const int n = grid.n, g = grid.g, ext = grid.ext();
  fill_ghosts_1d(law, grid, bc, t, u);
  const auto t0 = Clock::now();
  w.fx.resize(ext * m);
  for (int i = 0; i < ext; ++i) flux(law, &u[i * m], 0, &w.fx[i * m]);
  const bool llf = cfg.splitting == SplittingScheme::LocalLaxFriedrichs;
  if (llf) {
    w.lam.resize(ext * m);
    for (int i = 0; i < ext; ++i) eigenvalues(law, &u[i * m], 0, &w.lam[i * m]);
  }
  double alpha = 0.0;
  if (cfg.splitting == SplittingScheme::GlobalLaxFriedrichs) {
    for (int i = 0; i < ext; ++i) alpha = std::max(alpha, max_wave_speed(law, &u[i * m], 0));
    // Strict margin keeps both split fluxes one-signed and keeps the split
    // speed away from solution extrema, where alpha == max|f'| would pin a
    // high-order critical point onto the minus flux and degrade the order.
    alpha *= kSplitSpeedMargin;
  }
  w.fhat.resize((n + 1) * m);
  line_fluxes(law, tab, cfg, u.data(), w.fx.data(), w.lam.data(), n + 1, 0, alpha,
              w.fhat.data(), ops);
  const double inv_h = 1.0 / grid.h();
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < m; ++c)
      rhs[(g + i) * m + c] = -(w.fhat[(i + 1) * m + c] - w.fhat[i * m + c]) * inv_h;
  kernel_seconds += seconds_since(t0);
}

template <class Ops>
void rhs_2d_core(const ConservationLawSpec& law, const Grid2D& grid,
                 const BoundaryConditions& bc, const SolverConfig& cfg,
                 const LoweredTable& tab, double t, std::vector<double>& u,
                 std::vector<double>& rhs, std::vector<Work>& works, Ops& ops,
                 double& kernel_seconds) {
  const int m = law.components();
  const int nx = grid.nx, ny = grid.ny, g = grid.g, ex = grid.extx(), ey = grid.exty();
  fill_ghosts_2d(law, grid, bc, t, u);
  const auto t0 = Clock::now();
  const bool llf = cfg.splitting == SplittingScheme::LocalLaxFriedrichs;
  const bool glf = cfg.splitting == SplittingScheme::GlobalLaxFriedrichs;

  double alpha[2] = {0.0, 0.0};
  if (glf) {
    // Scan every cell a sweep can read: interior rows across the full x
    // extent plus the ghost rows above and below the interior columns.
    auto absorb = [&](int ix, int iy) {
      const double* c = &u[((iy + g) * ex + (ix + g)) * m];
      alpha[0] = std::max(alpha[0], max_wave_speed(law, c, 0));
      alpha[1] = std::max(alpha[1], max_wave_speed(law, c, 1));
    };
    for (int iy = 0; iy < ny; ++iy)
      for (int ix = -g; ix < nx + g; ++ix) absorb(ix, iy);
    for (int k = 0; k < g; ++k)
      for (int ix = 0; ix < nx; ++ix) {
        absorb(ix, -1 - k);
        absorb(ix, ny + k);
      }
    alpha[0] *= kSplitSpeedMargin;
    alpha[1] *= kSplitSpeedMargin;
  }

  for (auto& w : works) {
    w.fx.resize(std::max(ex, ey) * m);
    if (llf) w.lam.resize(std::max(ex, ey) * m);
    w.fhat.resize((std::max(nx, ny) + 1) * m);
    w.line.resize(ey * m);
  }

  const double inv_hx = 1.0 / grid.hx(), inv_hy = 1.0 / grid.hy();
  for_each_line(ny, works, ops, [&](int iy, Work& w, Ops& o) {
    const double* row = &u[(iy + g) * ex * m];
    for (int i = 0; i < ex; ++i) flux(law, row + i * m, 0, &w.fx[i * m]);
    if (llf)
      for (int i = 0; i < ex; ++i) eigenvalues(law, row + i * m, 0, &w.lam[i * m]);
    line_fluxes(law, tab, cfg, row, w.fx.data(), w.lam.data(), nx + 1, 0, alpha[0],
                w.fhat.data(), o);
    for (int ix = 0; ix < nx; ++ix)
      for (int c = 0; c < m; ++c)
        rhs[((iy + g) * ex + (ix + g)) * m + c] =
            -(w.fhat[(ix + 1) * m + c] - w.fhat[ix * m + c]) * inv_hx;
  });
  // The Euler y flux is the x flux conjugated by the momentum swap, so the
  // vertical sweep gathers each line in (rho, m_normal, m_tangential, E)
  // order, runs the dir=0 machinery, and scatters back through the same swap.
  // Both sweeps then execute one instruction stream over mirrored data:
  // transposing the initial state transposes the solution bitwise.
  std::array<int, kMaxComponents> phys{};
  for (int c = 0; c < m; ++c) phys[c] = c;
  if (law.kind == LawKind::Euler2D) std::swap(phys[1], phys[2]);
  for_each_line(nx, works, ops, [&](int ix, Work& w, Ops& o) {
    for (int j = 0; j < ey; ++j) {
      const double* src = &u[(j * ex + (ix + g)) * m];
      for (int c = 0; c < m; ++c) w.line[j * m + c] = src[phys[c]];
    }
    for (int j = 0; j < ey; ++j) flux(law, &w.line[j * m], 0, &w.fx[j * m]);
    if (llf)
      for (int j = 0; j < ey; ++j) eigenvalues(law, &w.line[j * m], 0, &w.lam[j * m]);
    line_fluxes(law, tab, cfg, w.line.data(), w.fx.data(), w.lam.data(), ny + 1, 0, alpha[1],
                w.fhat.data(), o);
    for (int iy = 0; iy < ny; ++iy)
      for (int c = 0; c < m; ++c)
        rhs[((iy + g) * ex + (ix + g)) * m + phys[c]] -=
            (w.fhat[(iy + 1) * m + c] - w.fhat[iy * m + c]) * inv_hy;
  });
  kernel_seconds += seconds_since(t0);
}

[[noreturn]] void report_bad_state(const ConservationLawSpec& law, long step, double t,
                                   double x, double y, const double* u, int m) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "solution left the admissible set at step %ld, t=%.6g, x=%.6g, y=%.6g "
                "(rho=%.6g, p=%.6g, u0=%.6g)",
                step, t, x, y, m > 1 ? u[0] : 0.0, m > 1 ? pressure(law, u) : 0.0, u[0]);
  throw SolverError(buf);
}

// One shared driver for both dimensions: Dim supplies grid geometry, ghost
// fill, rhs evaluation and interior iteration.
template <class Ops, class RhsFn, class SpeedFn, class CheckFn>
void integrate(const SolverConfig& cfg, double h_min, std::vector<double>& u,
               std::vector<double>& us, std::vector<double>& rhs,
               const std::vector<int>& interior, int m, RhsFn&& eval_rhs, SpeedFn&& speed,
               CheckFn&& check, RunResult& res, Ops& ops) {
  double t = 0.0;
  long steps = 0;
  const double t_end = cfg.t_final;
  while (t < t_end * (1.0 - 1e-14) || (t == 0.0 && t_end > 0.0)) {
    if (steps > 100000000L) throw SolverError("step limit exceeded");
    const double alpha = speed();
    if (!std::isfinite(alpha)) throw SolverError("nonfinite wave speed in time step control");
    double dt = alpha > 0.0 ? dt_from_speed(alpha, h_min, cfg) : t_end - t;
    if (t + dt >= t_end) dt = t_end - t;

    eval_rhs(u, t, ops);
    for (const int i : interior)
      for (int c = 0; c < m; ++c) us[i * m + c] = u[i * m + c] + dt * rhs[i * m + c];
    eval_rhs(us, t + dt, ops);
    for (const int i : interior)
      for (int c = 0; c < m; ++c)
        us[i * m + c] = 0.75 * u[i * m + c] + 0.25 * (us[i * m + c] + dt * rhs[i * m + c]);
    eval_rhs(us, t + 0.5 * dt, ops);
    for (const int i : interior)
      for (int c = 0; c < m; ++c)
        u[i * m + c] =
            (u[i * m + c] + 2.0 * (us[i * m + c] + dt * rhs[i * m + c])) / 3.0;

    t += dt;
    ++steps;
    check(u, steps, t);
  }
  res.t = t;
  res.steps = steps;
}

}  // namespace

void spatial_rhs_1d(const ConservationLawSpec& law, const Grid1D& grid,
                    const BoundaryConditions& bc, const SolverConfig& cfg, double t,
                    std::vector<double>& u, std::vector<double>& rhs, OpCounter* ops) {
  const auto& tab = lowered_table(cfg.r, DiscretizationMode::CellAverage);
  Work w;
  double ksec = 0.0;
  rhs.assign(u.size(), 0.0);
  if (ops) {
    rhs_1d_core(law, grid, bc, cfg, tab, t, u, rhs, w, *ops, ksec);
  } else {
    NoCount nc;
    rhs_1d_core(law, grid, bc, cfg, tab, t, u, rhs, w, nc, ksec);
  }
}

namespace {

template <class Ops>
RunResult run_1d_impl(const ConservationLawSpec& law, const Grid1D& grid,
                      const BoundaryConditions& bc, const InitFn1D& init,
                      const SolverConfig& cfg, Ops& ops) {
  const int m = law.components();
  const int n = grid.n, g = grid.g;
  const auto& tab = lowered_table(cfg.r, DiscretizationMode::CellAverage);
  const auto t0 = Clock::now();

  std::vector<double> u(grid.ext() * m, 0.0), us(u.size(), 0.0), rhs(u.size(), 0.0);
  for (int i = 0; i < n; ++i) init(grid.center(i), &u[(g + i) * m]);

  std::vector<int> interior(n);
  for (int i = 0; i < n; ++i) interior[i] = g + i;

  RunResult res;
  Work w;
  integrate(
      cfg, grid.h(), u, us, rhs, interior, m,
      [&](std::vector<double>& v, double t, Ops& o) {
        rhs_1d_core(law, grid, bc, cfg, tab, t, v, rhs, w, o, res.kernel_seconds);
      },
      [&] {
        double a = 0.0;
        for (int i = 0; i < n; ++i)
          a = std::max(a, max_wave_speed(law, &u[(g + i) * m], 0));
        return a;
      },
      [&](const std::vector<double>& v, long step, double t) {
        for (int i = 0; i < n; ++i) {
          const double* c = &v[(g + i) * m];
          bool ok = admissible(law, c);
          for (int cc = 0; cc < m; ++cc) ok = ok && std::isfinite(c[cc]);
          if (!ok) report_bad_state(law, step, t, grid.center(i), 0.0, c, m);
        }
      },
      res, ops);

  res.u.resize(n * m);
  for (int i = 0; i < n; ++i)
    std::copy(&u[(g + i) * m], &u[(g + i) * m] + m, &res.u[i * m]);
  res.total_seconds = seconds_since(t0);
  return res;
}

template <class Ops>
RunResult run_2d_impl(const ConservationLawSpec& law, const Grid2D& grid,
                      const BoundaryConditions& bc, const InitFn2D& init,
                      const SolverConfig& cfg, Ops& ops) {
  const int m = law.components();
  const int nx = grid.nx, ny = grid.ny, g = grid.g, ex = grid.extx();
  const auto& tab = lowered_table(cfg.r, DiscretizationMode::CellAverage);
  const auto t0 = Clock::now();

  std::vector<double> u(ex * grid.exty() * m, 0.0), us(u.size(), 0.0), rhs(u.size(), 0.0);
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix) init(grid.cx(ix), grid.cy(iy), &u[((iy + g) * ex + (ix + g)) * m]);

  std::vector<int> interior(nx * ny);
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix) interior[iy * nx + ix] = (iy + g) * ex + (ix + g);

  RunResult res;
  std::vector<Work> works(static_cast<size_t>(std::max(1, cfg.threads)));
  // dt from directional speeds: cfl / (ax/hx + ay/hy); reuse the 1D rule by
  // folding both directions into one effective speed over hx.
  const double hx = grid.hx(), hy = grid.hy();
  integrate(
      cfg, hx, u, us, rhs, interior, m,
      [&](std::vector<double>& v, double t, Ops& o) {
        rhs_2d_core(law, grid, bc, cfg, tab, t, v, rhs, works, o, res.kernel_seconds);
      },
      [&] {
        double ax = 0.0, ay = 0.0;
        for (const int i : interior) {
          ax = std::max(ax, max_wave_speed(law, &u[i * m], 0));
          ay = std::max(ay, max_wave_speed(law, &u[i * m], 1));
        }
        return ax + ay * hx / hy;
      },
      [&](const std::vector<double>& v, long step, double t) {
        for (int iy = 0; iy < ny; ++iy)
          for (int ix = 0; ix < nx; ++ix) {
            const double* c = &v[((iy + g) * ex + (ix + g)) * m];
            bool ok = admissible(law, c);
            for (int cc = 0; cc < m; ++cc) ok = ok && std::isfinite(c[cc]);
            if (!ok) report_bad_state(law, step, t, grid.cx(ix), grid.cy(iy), c, m);
          }
      },
      res, ops);

  res.u.resize(nx * ny * m);
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix)
      std::copy(&u[((iy + g) * ex + (ix + g)) * m], &u[((iy + g) * ex + (ix + g)) * m] + m,
                &res.u[(iy * nx + ix) * m]);
  res.total_seconds = seconds_since(t0);
  return res;
}

}  // namespace

RunResult run_1d(const ConservationLawSpec& law, const Grid1D& grid,
                 const BoundaryConditions& bc, const InitFn1D& init, const SolverConfig& cfg) {
  check_side(bc.left, "left");
  check_side(bc.right, "right");
  check_axis_pair(bc.left, bc.right, "x");
  validate_common(cfg, grid.g, grid.n);
  if (cfg.instrument) {
    OpCounter ops;
    RunResult res = run_1d_impl(law, grid, bc, init, cfg, ops);
    res.ops = ops;
    return res;
  }
  NoCount nc;
  return run_1d_impl(law, grid, bc, init, cfg, nc);
}

RunResult run_2d(const ConservationLawSpec& law, const Grid2D& grid,
                 const BoundaryConditions& bc, const InitFn2D& init, const SolverConfig& cfg) {
  if (law.dimensions() != 2 && law.components() != 1)
    throw std::invalid_argument("law is one-dimensional");
  check_side(bc.left, "left");
  check_side(bc.right, "right");
  check_side(bc.bottom, "bottom");
  check_side(bc.top, "top");
  check_axis_pair(bc.left, bc.right, "x");
  check_axis_pair(bc.bottom, bc.top, "y");
  validate_common(cfg, grid.g, std::min(grid.nx, grid.ny));
  if (cfg.instrument) {
    OpCounter ops;
    RunResult res = run_2d_impl(law, grid, bc, init, cfg, ops);
    res.ops = ops;
    return res;
  }
  NoCount nc;
  return run_2d_impl(law, grid, bc, init, cfg, nc);
}

}  // namespace fweno

#pragma once

#include <array>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "fweno/flux_models.hpp"

namespace fweno {

/// Uniform grid with cell centers x_i = xmin + (i + 1/2) h and g ghost cells
/// per side; g must be at least the stencil radius r.
struct Grid1D {
  double xmin = 0.0, xmax = 1.0;
  int n = 0;
  int g = 0;
  double h() const { return (xmax - xmin) / n; }
  double center(int i) const { return xmin + (i + 0.5) * h(); }
  int ext() const { return n + 2 * g; }
};

struct Grid2D {
  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
  int nx = 0, ny = 0;
  int g = 0;
  double hx() const { return (xmax - xmin) / nx; }
  double hy() const { return (ymax - ymin) / ny; }
  double cx(int i) const { return xmin + (i + 0.5) * hx(); }
  double cy(int j) const { return ymin + (j + 0.5) * hy(); }
  int extx() const { return nx + 2 * g; }
  int exty() const { return ny + 2 * g; }
};

enum class BcKind { Periodic, InflowFixed, OutflowExtrapolate, Reflect, TimeDependent };

/// One piece of a side's boundary condition, active where the coordinate
/// running along that side is <= limit. A side is described by segments
/// scanned in order; the first match wins. 1D sides use a single segment.
///
/// Time-dependent segments receive the coordinate running along the side in
/// 2D and the ghost cell's own center in 1D, so 1D callers can prescribe an
/// exact solution profile across the whole ghost band.
struct BcSegment {
  BcKind kind = BcKind::OutflowExtrapolate;
  double limit = std::numeric_limits<double>::infinity();
  std::array<double, kMaxComponents> value{};
  std::function<void(double coord, double t, double* u)> fn;
};

struct SideBC {
  std::vector<BcSegment> segments;
};

inline SideBC bc_periodic() { return {{BcSegment{BcKind::Periodic, std::numeric_limits<double>::infinity(), {}, {}}}}; }
inline SideBC bc_outflow() { return {{BcSegment{}}}; }
inline SideBC bc_reflect() { return {{BcSegment{BcKind::Reflect, std::numeric_limits<double>::infinity(), {}, {}}}}; }
inline SideBC bc_inflow(const std::array<double, kMaxComponents>& v) {
  return {{BcSegment{BcKind::InflowFixed, std::numeric_limits<double>::infinity(), v, {}}}};
}
inline SideBC bc_time_dependent(std::function<void(double, double, double*)> fn) {
  return {{BcSegment{BcKind::TimeDependent, std::numeric_limits<double>::infinity(), {}, std::move(fn)}}};
}

/// left/right bound the x axis, bottom/top the y axis (unused in 1D).
struct BoundaryConditions {
  SideBC left, right, bottom, top;
};

enum class DtRule { Standard, OrderMatched };

struct SolverConfig {
  int r = 3;
  WenoVariant variant = WenoVariant::FWENO;
  WenoParams params = default_params(3);
  SplittingScheme splitting = SplittingScheme::GlobalLaxFriedrichs;
  DtRule dt_rule = DtRule::Standard;
  double cfl = 0.4;
  double t_final = 0.0;
  bool instrument = false;
  // 2D sweeps distribute whole lines over this many threads. Lines write
  // disjoint slices and no sum crosses a line, so results are bitwise
  // identical for any value. 1D runs are serial.
  int threads = 1;
};

struct RunResult {
  std::vector<double> u;  // interior cells, m components each; 2D rows run fastest in x
  double t = 0.0;
  long steps = 0;
  double kernel_seconds = 0.0;
  double total_seconds = 0.0;
  OpCounter ops;  // populated when config.instrument is set
};

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Time step from the spectral radius: cfl h / alpha, except that the
/// OrderMatched rule uses cfl h^((2r-1)/3) / alpha so the third-order time
/// error refines at least as fast as the space error.
double dt_from_speed(double alpha, double h, const SolverConfig& cfg);

void fill_ghosts_1d(const ConservationLawSpec& law, const Grid1D& grid,
                    const BoundaryConditions& bc, double t, std::vector<double>& u);
void fill_ghosts_2d(const ConservationLawSpec& law, const Grid2D& grid,
                    const BoundaryConditions& bc, double t, std::vector<double>& u);

/// Semidiscrete right side -d/dx fhat on the interior cells. Fills ghosts of
/// u at time t first. rhs uses the same extended layout as u; ghost entries
/// are left untouched.
void spatial_rhs_1d(const ConservationLawSpec& law, const Grid1D& grid,
                    const BoundaryConditions& bc, const SolverConfig& cfg, double t,
                    std::vector<double>& u, std::vector<double>& rhs,
                    OpCounter* ops = nullptr);

using InitFn1D = std::function<void(double x, double* u)>;
using InitFn2D = std::function<void(double x, double y, double* u)>;

RunResult run_1d(const ConservationLawSpec& law, const Grid1D& grid,
                 const BoundaryConditions& bc, const InitFn1D& init, const SolverConfig& cfg);
RunResult run_2d(const ConservationLawSpec& law, const Grid2D& grid,
                 const BoundaryConditions& bc, const InitFn2D& init, const SolverConfig& cfg);

}  // namespace fweno

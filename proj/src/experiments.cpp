#include "fweno/experiments.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "fweno/flux_models.hpp"
#include "fweno/kernels.hpp"

namespace fweno {

namespace {

const double kPi = std::acos(-1.0);

struct IdName {
  ExperimentId id;
  const char* name;
};

constexpr IdName kIds[] = {
    {ExperimentId::Advection, "advection"},
    {ExperimentId::BurgersSmooth, "burgers-smooth"},
    {ExperimentId::BurgersShock, "burgers-shock"},
    {ExperimentId::ShuOsher, "shu-osher"},
    {ExperimentId::Sod, "sod"},
    {ExperimentId::DoubleMach, "dmr"},
    {ExperimentId::Riemann2D, "riemann2d"},
    {ExperimentId::BenchKernels, "bench-kernels"},
    {ExperimentId::Convergence, "convergence"},
};

}  // namespace

std::string experiment_name(ExperimentId id) {
  for (const auto& e : kIds)
    if (e.id == id) return e.name;
  return "?";
}

ExperimentId parse_experiment(const std::string& name) {
  for (const auto& e : kIds)
    if (name == e.name) return e.id;
  throw ConfigError("unknown experiment '" + name + "'");
}

namespace {

// ---------------------------------------------------------------------------
// Config parsing

[[noreturn]] void fail_line(int line, const std::string& msg) {
  throw ConfigError("config line " + std::to_string(line) + ": " + msg);
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

int parse_int(const std::string& s, int line, const char* key) {
  size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(s, &pos);
  } catch (const std::exception&) {
    fail_line(line, std::string(key) + ": '" + s + "' is not an integer");
  }
  if (pos != s.size()) fail_line(line, std::string(key) + ": '" + s + "' is not an integer");
  return v;
}

double parse_double(const std::string& s, int line, const char* key) {
  size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    fail_line(line, std::string(key) + ": '" + s + "' is not a number");
  }
  if (pos != s.size()) fail_line(line, std::string(key) + ": '" + s + "' is not a number");
  return v;
}

}  // namespace

ExperimentSpec parse_config_text(const std::string& text) {
  ExperimentSpec spec;
  bool have_experiment = false;
  std::vector<std::string> seen;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const size_t hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string s = trim(raw);
    if (s.empty()) continue;
    const size_t eq = s.find('=');
    if (eq == std::string::npos) fail_line(line, "expected key = value");
    const std::string key = trim(s.substr(0, eq));
    const std::string val = trim(s.substr(eq + 1));
    if (key.empty()) fail_line(line, "empty key");
    if (val.empty()) fail_line(line, "empty value for '" + key + "'");
    if (std::find(seen.begin(), seen.end(), key) != seen.end())
      fail_line(line, "duplicate key '" + key + "'");
    seen.push_back(key);

    if (key == "experiment") {
      try {
        spec.experiment = parse_experiment(val);
      } catch (const ConfigError& e) {
        fail_line(line, e.what());
      }
      have_experiment = true;
    } else if (key == "variant") {
      for (const auto& item : split_list(val)) {
        try {
          spec.variants.push_back(parse_variant(item));
        } catch (const std::exception&) {
          fail_line(line, "variant: '" + item + "' is not js, yc or fweno");
        }
      }
    } else if (key == "r") {
      for (const auto& item : split_list(val)) {
        const int r = parse_int(item, line, "r");
        if (r < kMinOrderR || r > kMaxOrderR)
          fail_line(line, "r must lie in [" + std::to_string(kMinOrderR) + ", " +
                              std::to_string(kMaxOrderR) + "]");
        spec.orders.push_back(r);
      }
    } else if (key == "N") {
      for (const auto& item : split_list(val)) {
        const int n = parse_int(item, line, "N");
        if (n < 4) fail_line(line, "N must be at least 4");
        spec.grids.push_back(n);
      }
    } else if (key == "cfl") {
      const double c = parse_double(val, line, "cfl");
      if (!(c > 0.0) || c > 1.0) fail_line(line, "cfl must lie in (0, 1]");
      spec.cfl = c;
    } else if (key == "t_final") {
      const double t = parse_double(val, line, "t_final");
      if (!(t >= 0.0)) fail_line(line, "t_final must be nonnegative");
      spec.t_final = t;
    } else if (key == "eps") {
      const double e = parse_double(val, line, "eps");
      if (!(e > 0.0)) fail_line(line, "eps must be positive");
      spec.eps = e;
    } else if (key == "s1") {
      const int v = parse_int(val, line, "s1");
      if (v < 1) fail_line(line, "s1 must be at least 1");
      spec.s1 = v;
    } else if (key == "s2") {
      const int v = parse_int(val, line, "s2");
      if (v < 1) fail_line(line, "s2 must be at least 1");
      spec.s2 = v;
    } else if (key == "splitting") {
      try {
        spec.splitting = parse_splitting(val);
      } catch (const std::exception&) {
        fail_line(line, "splitting: '" + val + "' is not glf, llf or dm");
      }
    } else if (key == "dt_rule") {
      if (val == "standard")
        spec.dt_rule = DtRule::Standard;
      else if (val == "order-matched")
        spec.dt_rule = DtRule::OrderMatched;
      else
        fail_line(line, "dt_rule: '" + val + "' is not standard or order-matched");
    } else {
      fail_line(line, "unknown key '" + key + "'");
    }
  }
  if (!have_experiment) throw ConfigError("config is missing the 'experiment' key");
  return spec;
}

ExperimentSpec load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

// ---------------------------------------------------------------------------
// Exact profiles for the convergence studies

namespace {

double wave_profile(double x) { return 0.25 + 0.5 * std::sin(kPi * x); }

}  // namespace

double advection_exact(double x, double t) { return wave_profile(x - t); }

double burgers_exact(double x, double t) {
  // Characteristic foot point: xi + t * u0(xi) = x. |t u0'| < 1 before the
  // wave breaks, so Newton from xi = x converges quadratically.
  double xi = x;
  for (int it = 0; it < 100; ++it) {
    const double f = xi + t * wave_profile(xi) - x;
    const double fp = 1.0 + t * 0.5 * kPi * std::cos(kPi * xi);
    const double step = f / fp;
    xi -= step;
    if (std::abs(step) < 1e-15) break;
  }
  return wave_profile(xi);
}

// ---------------------------------------------------------------------------
// Problem setups and per-experiment defaults

namespace {

struct Defaults {
  std::vector<int> grids;
  std::vector<int> orders{3};
  std::vector<WenoVariant> variants{WenoVariant::FWENO};
  double cfl = 0.4;
  double t_final = 0.0;
  SplittingScheme splitting = SplittingScheme::GlobalLaxFriedrichs;
  DtRule dt_rule = DtRule::Standard;
  int ref_n = 0;  // fixed desk-scale reference resolution for shock studies
};

Defaults defaults_for(ExperimentId id) {
  Defaults d;
  switch (id) {
    case ExperimentId::Advection:
      d.grids = {10, 20, 40, 80, 160, 320, 640};
      d.t_final = 1.0;
      d.dt_rule = DtRule::OrderMatched;
      break;
    case ExperimentId::BurgersSmooth:
      d.grids = {20, 40, 80, 160, 320, 640, 1280};
      d.t_final = 0.3;
      d.dt_rule = DtRule::OrderMatched;
      break;
    case ExperimentId::BurgersShock:
      d.grids = {80};
      d.t_final = 12.0;
      d.splitting = SplittingScheme::DonatMarquina;
      d.ref_n = 800;
      break;
    case ExperimentId::ShuOsher:
      d.grids = {100, 200, 400};
      d.t_final = 1.8;
      d.ref_n = 4000;
      break;
    case ExperimentId::Sod:
      d.grids = {200};
      d.orders = {5};
      d.t_final = 0.1;
      d.ref_n = 8000;
      break;
    case ExperimentId::DoubleMach:
      d.grids = {512};
      d.t_final = 0.2;
      break;
    case ExperimentId::Riemann2D:
      d.grids = {256};
      d.t_final = 0.3;
      break;
    case ExperimentId::BenchKernels:
      d.grids = {100, 200, 400};
      d.orders = {3, 4, 5};
      d.variants = {WenoVariant::JS, WenoVariant::YC, WenoVariant::FWENO};
      d.t_final = 1.8;  // efficiency study runs the shock-acoustic problem
      d.ref_n = 4000;
      break;
    case ExperimentId::Convergence:
      break;
  }
  return d;
}

// Spec with defaults applied for one concrete experiment id.
struct Resolved {
  ExperimentId id;
  std::vector<WenoVariant> variants;
  std::vector<int> orders;
  std::vector<int> grids;
  bool grids_are_default = false;
  double cfl, t_final;
  std::optional<double> eps;
  std::optional<int> s1, s2;
  SplittingScheme splitting;
  DtRule dt_rule;
  int ref_n;

  WenoParams params(int r) const {
    WenoParams p = default_params(r);
    if (eps) p.eps = *eps;
    if (s1) p.s = p.s1 = *s1;
    if (s2) p.s2 = *s2;
    return p;
  }
  SolverConfig config(int r, WenoVariant v) const {
    SolverConfig c;
    c.r = r;
    c.variant = v;
    c.params = params(r);
    c.splitting = splitting;
    c.dt_rule = dt_rule;
    c.cfl = cfl;
    c.t_final = t_final;
    return c;
  }
};

Resolved resolve(const ExperimentSpec& spec, ExperimentId id) {
  const Defaults d = defaults_for(id);
  Resolved r;
  r.id = id;
  r.variants = spec.variants.empty() ? d.variants : spec.variants;
  r.orders = spec.orders.empty() ? d.orders : spec.orders;
  r.grids = spec.grids.empty() ? d.grids : spec.grids;
  r.grids_are_default = spec.grids.empty();
  r.cfl = spec.cfl.value_or(d.cfl);
  r.t_final = spec.t_final.value_or(d.t_final);
  r.eps = spec.eps;
  r.s1 = spec.s1;
  r.s2 = spec.s2;
  if (id == ExperimentId::Riemann2D && !r.s2) r.s2 = 2;
  r.splitting = spec.splitting.value_or(d.splitting);
  r.dt_rule = spec.dt_rule.value_or(d.dt_rule);
  r.ref_n = d.ref_n;
  return r;
}

struct Setup1D {
  ConservationLawSpec law;
  double xmin = 0.0, xmax = 1.0;
  BoundaryConditions bc;
  InitFn1D init;
};

Setup1D setup_1d(ExperimentId id) {
  Setup1D s;
  switch (id) {
    case ExperimentId::Advection:
      s.law = {LawKind::Advection, 1.0, 1.4};
      s.xmin = -1.0;
      s.xmax = 1.0;
      s.bc.left = bc_periodic();
      s.bc.right = bc_periodic();
      s.init = [](double x, double* u) { u[0] = wave_profile(x); };
      return s;
    case ExperimentId::BurgersSmooth:
    case ExperimentId::BurgersShock:
      s.law = {LawKind::Burgers, 1.0, 1.4};
      s.xmin = -1.0;
      s.xmax = 1.0;
      s.bc.left = bc_periodic();
      s.bc.right = bc_periodic();
      s.init = [](double x, double* u) { u[0] = wave_profile(x); };
      return s;
    case ExperimentId::ShuOsher: {
      s.law = {LawKind::Euler1D, 1.0, 1.4};
      s.xmin = -5.0;
      s.xmax = 5.0;
      const double rho = 27.0 / 7.0;
      const double v = 4.0 * std::sqrt(35.0) / 9.0;
      const double p = 31.0 / 3.0;
      const std::array<double, kMaxComponents> left = {rho, rho * v,
                                                       p / 0.4 + 0.5 * rho * v * v, 0.0};
      s.bc.left = bc_inflow(left);
      s.bc.right = bc_outflow();
      s.init = [left](double x, double* u) {
        if (x <= -4.0) {
          u[0] = left[0];
          u[1] = left[1];
          u[2] = left[2];
        } else {
          u[0] = 1.0 + std::sin(5.0 * x) / 5.0;
          u[1] = 0.0;
          u[2] = 1.0 / 0.4;
        }
      };
      return s;
    }
    case ExperimentId::Sod: {
      s.law = {LawKind::Euler1D, 1.0, 1.4};
      const std::array<double, kMaxComponents> left = {1.0, 0.0, 1.0 / 0.4, 0.0};
      const std::array<double, kMaxComponents> right = {0.125, 0.0, 0.1 / 0.4, 0.0};
      s.bc.left = bc_inflow(left);
      s.bc.right = bc_inflow(right);
      s.init = [left, right](double x, double* u) {
        const auto& c = x <= 0.5 ? left : right;
        u[0] = c[0];
        u[1] = c[1];
        u[2] = c[2];
      };
      return s;
    }
    default:
      throw ConfigError("experiment '" + experiment_name(id) + "' is not one-dimensional");
  }
}

struct Setup2D {
  ConservationLawSpec law;
  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
  BoundaryConditions bc;
  InitFn2D init;
};

std::array<double, 4> conserved_from_primitive(double rho, double vx, double vy, double p,
                                               double gamma) {
  return {rho, rho * vx, rho * vy, p / (gamma - 1.0) + 0.5 * rho * (vx * vx + vy * vy)};
}

Setup2D setup_2d(ExperimentId id) {
  Setup2D s;
  s.law = {LawKind::Euler2D, 1.0, 1.4};
  if (id == ExperimentId::DoubleMach) {
    s.xmax = 4.0;
    // Post-shock state left of the inclined shock; energy is given directly.
    const std::array<double, 4> c1 = {8.0, 8.0 * 8.25 * std::cos(kPi / 6.0),
                                      -8.0 * 8.25 * std::sin(kPi / 6.0), 563.5};
    const std::array<double, 4> c2 = {1.4, 0.0, 0.0, 2.5};
    s.bc.left = bc_inflow({c1[0], c1[1], c1[2], c1[3]});
    s.bc.right = bc_outflow();
    BcSegment ahead_of_wall{};  // outflow below the shock's initial foot
    ahead_of_wall.limit = 0.25;
    BcSegment wall{};
    wall.kind = BcKind::Reflect;
    s.bc.bottom.segments = {ahead_of_wall, wall};
    s.bc.top = bc_time_dependent([c1, c2](double x, double t, double* u) {
      const auto& c = x <= 0.25 + (1.0 + 20.0 * t) / std::sqrt(3.0) ? c1 : c2;
      std::copy(c.begin(), c.end(), u);
    });
    s.init = [c1, c2](double x, double y, double* u) {
      const auto& c = y <= 0.25 + x / std::sqrt(3.0) ? c1 : c2;
      std::copy(c.begin(), c.end(), u);
    };
    return s;
  }
  if (id == ExperimentId::Riemann2D) {
    s.bc.left = s.bc.right = s.bc.bottom = s.bc.top = bc_outflow();
    s.init = [](double x, double y, double* u) {
      std::array<double, 4> c;
      if (x > 0.5 && y > 0.5)
        c = conserved_from_primitive(1.5, 0.0, 0.0, 1.5, 1.4);
      else if (x <= 0.5 && y > 0.5)
        c = conserved_from_primitive(0.5323, 1.206, 0.0, 0.3, 1.4);
      else if (x <= 0.5 && y <= 0.5)
        c = conserved_from_primitive(0.138, 1.206, 1.206, 0.029, 1.4);
      else
        c = conserved_from_primitive(0.5323, 0.0, 1.206, 0.3, 1.4);
      std::copy(c.begin(), c.end(), u);
    };
    return s;
  }
  throw ConfigError("experiment '" + experiment_name(id) + "' is not two-dimensional");
}

// ---------------------------------------------------------------------------
// Output helpers

std::string out_path(const RunOptions& opt, const std::string& file) {
  std::filesystem::create_directories(opt.out_dir);
  return (std::filesystem::path(opt.out_dir) / file).string();
}

std::string run_stem(ExperimentId id, WenoVariant v, int r) {
  return experiment_name(id) + "_" + variant_name(v) + "_r" + std::to_string(r);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // byte-exact output on any host
  if (!out) throw ConfigError("cannot write '" + path + "'");
  return out;
}

void write_convergence_csv(const std::string& path, const std::vector<ConvergenceRow>& rows) {
  auto out = open_out(path);
  out << "N,L1,L1_order,Linf,Linf_order\n";
  char buf[160];
  for (const auto& row : rows) {
    if (std::isnan(row.l1_order))
      std::snprintf(buf, sizeof buf, "%d,%.6e,,%.6e,\n", row.n, row.l1, row.linf);
    else
      std::snprintf(buf, sizeof buf, "%d,%.6e,%.2f,%.6e,%.2f\n", row.n, row.l1, row.l1_order,
                    row.linf, row.linf_order);
    out << buf;
  }
}

void dump_1d(const std::string& path, const ConservationLawSpec& law, const Grid1D& grid,
             const std::vector<double>& u) {
  auto out = open_out(path);
  const int m = law.components();
  char buf[200];
  if (m == 1) {
    out << "# x u\n";
    for (int i = 0; i < grid.n; ++i) {
      std::snprintf(buf, sizeof buf, "%.10e %.10e\n", grid.center(i), u[i]);
      out << buf;
    }
    return;
  }
  out << "# x rho v p\n";
  for (int i = 0; i < grid.n; ++i) {
    const double* c = &u[i * m];
    std::snprintf(buf, sizeof buf, "%.10e %.10e %.10e %.10e\n", grid.center(i), c[0],
                  c[1] / c[0], pressure(law, c));
    out << buf;
  }
}

void dump_2d_density(const std::string& path, const Grid2D& grid, const std::vector<double>& u,
                     int m) {
  auto out = open_out(path);
  out << "# x y rho\n";
  char buf[120];
  for (int iy = 0; iy < grid.ny; ++iy) {
    for (int ix = 0; ix < grid.nx; ++ix) {
      std::snprintf(buf, sizeof buf, "%.10e %.10e %.10e\n", grid.cx(ix), grid.cy(iy),
                    u[(iy * grid.nx + ix) * m]);
      out << buf;
    }
    out << "\n";  // gnuplot block separator between rows
  }
}

// Grayscale Schlieren: exp(-15 |grad rho| / max |grad rho|), dark at shocks.
void write_schlieren_pgm(const std::string& path, const Grid2D& grid,
                         const std::vector<double>& u, int m) {
  const int nx = grid.nx, ny = grid.ny;
  auto rho = [&](int ix, int iy) { return u[(iy * nx + ix) * m]; };
  std::vector<double> mag(static_cast<size_t>(nx) * ny);
  double peak = 0.0;
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix) {
      const int xl = std::max(ix - 1, 0), xr = std::min(ix + 1, nx - 1);
      const int yl = std::max(iy - 1, 0), yr = std::min(iy + 1, ny - 1);
      const double gx = (rho(xr, iy) - rho(xl, iy)) / ((xr - xl) * grid.hx());
      const double gy = (rho(ix, yr) - rho(ix, yl)) / ((yr - yl) * grid.hy());
      const double g = std::sqrt(gx * gx + gy * gy);
      mag[iy * nx + ix] = g;
      peak = std::max(peak, g);
    }
  const double scale = peak > 0.0 ? 15.0 / peak : 0.0;
  auto out = open_out(path);
  out << "P5\n" << nx << " " << ny << "\n255\n";
  std::vector<unsigned char> row(nx);
  for (int iy = ny - 1; iy >= 0; --iy) {  // image rows top-down
    for (int ix = 0; ix < nx; ++ix)
      row[ix] = static_cast<unsigned char>(
          std::lround(255.0 * std::exp(-scale * mag[iy * nx + ix])));
    out.write(reinterpret_cast<const char*>(row.data()), nx);
  }
}

// Reference comparison: point values live at cell centers, so the coarse
// center falls between two fine centers; interpolate linearly.
double sample_ref(const std::vector<double>& ref, int nref, int m, int comp, double xmin,
                  double xmax, double x) {
  const double hr = (xmax - xmin) / nref;
  const double f = (x - xmin) / hr - 0.5;
  if (f <= 0.0) return ref[comp];
  if (f >= nref - 1.0) return ref[(nref - 1) * m + comp];
  const int j = static_cast<int>(f);
  const double w = f - j;
  return (1.0 - w) * ref[j * m + comp] + w * ref[(j + 1) * m + comp];
}

void maybe_print_ops(const RunOptions& opt, const std::string& label, const RunResult& res) {
  if (!opt.instrument) return;
  std::printf("# ops %s adds=%llu mults=%llu divs=%llu\n", label.c_str(),
              static_cast<unsigned long long>(res.ops.adds),
              static_cast<unsigned long long>(res.ops.mults),
              static_cast<unsigned long long>(res.ops.divs));
}

void require_one_of(ExperimentId id, std::initializer_list<ExperimentId> accepted,
                    const char* command) {
  for (const auto a : accepted)
    if (id == a) return;
  std::string names;
  for (const auto a : accepted) names += (names.empty() ? "" : ", ") + experiment_name(a);
  throw ConfigError("experiment '" + experiment_name(id) + "' is not handled by '" + command +
                    "' (expected one of: " + names + ")");
}

}  // namespace

// ---------------------------------------------------------------------------
// convergence

namespace {

ConvergenceResult convergence_one(const Resolved& res, WenoVariant v, int r,
                                  const RunOptions& opt) {
  const Setup1D setup = setup_1d(res.id);
  const bool burgers = res.id == ExperimentId::BurgersSmooth;
  if (burgers && res.t_final >= 2.0 / kPi)
    throw ConfigError("burgers-smooth needs t_final below 2/pi; the exact profile "
                      "breaks at that time");

  ConvergenceResult result;
  result.experiment = res.id;
  result.variant = v;
  result.r = r;
  auto cfg = res.config(r, v);
  cfg.instrument = opt.instrument;

  const double nan = std::numeric_limits<double>::quiet_NaN();
  double prev_l1 = 0.0, prev_linf = 0.0;
  for (const int n : res.grids) {
    Grid1D grid{setup.xmin, setup.xmax, n, r};
    const RunResult run = run_1d(setup.law, grid, setup.bc, setup.init, cfg);
    maybe_print_ops(opt, run_stem(res.id, v, r) + "_N" + std::to_string(n), run);
    double l1 = 0.0, linf = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = grid.center(i);
      const double exact =
          burgers ? burgers_exact(x, res.t_final) : advection_exact(x, res.t_final);
      const double e = std::abs(run.u[i] - exact);
      l1 += e;
      linf = std::max(linf, e);
    }
    l1 /= n;
    ConvergenceRow row;
    row.n = n;
    row.l1 = l1;
    row.linf = linf;
    row.l1_order = result.rows.empty() ? nan : std::log2(prev_l1 / l1);
    row.linf_order = result.rows.empty() ? nan : std::log2(prev_linf / linf);
    result.rows.push_back(row);
    prev_l1 = l1;
    prev_linf = linf;
  }
  // The default grid list leads with one warm-up resolution so the first
  // reported row already carries an order; drop it from the table.
  if (burgers && res.grids_are_default && result.rows.size() > 1)
    result.rows.erase(result.rows.begin());

  const double target = 2.0 * r - 1.0 - 0.5;
  result.order_ok = true;
  if (result.rows.size() > 1) {
    const auto& last = result.rows.back();
    result.order_ok = last.l1_order >= target && last.linf_order >= target;
  }
  result.csv_path = out_path(opt, run_stem(res.id, v, r) + ".csv");
  write_convergence_csv(result.csv_path, result.rows);
  return result;
}

}  // namespace

std::vector<ConvergenceResult> cmd_convergence(const ExperimentSpec& spec,
                                               const RunOptions& options) {
  require_one_of(spec.experiment,
                 {ExperimentId::Advection, ExperimentId::BurgersSmooth,
                  ExperimentId::Convergence},
                 "convergence");
  std::vector<ExperimentId> ids;
  if (spec.experiment == ExperimentId::Convergence)
    ids = {ExperimentId::Advection, ExperimentId::BurgersSmooth};
  else
    ids = {spec.experiment};

  std::vector<ConvergenceResult> out;
  for (const auto id : ids) {
    const Resolved res = resolve(spec, id);
    for (const auto v : res.variants)
      for (const int r : res.orders) out.push_back(convergence_one(res, v, r, options));
  }
  return out;
}

// ---------------------------------------------------------------------------
// shock studies

std::vector<ShockResult> cmd_shock(const ExperimentSpec& spec, const RunOptions& options) {
  require_one_of(spec.experiment,
                 {ExperimentId::BurgersShock, ExperimentId::ShuOsher, ExperimentId::Sod},
                 "shock");
  const Resolved res = resolve(spec, spec.experiment);
  const Setup1D setup = setup_1d(res.id);
  const int m = setup.law.components();

  // One shared reference per invocation: the classical weights at r=3 with
  // the sided characteristic flux, on the fixed fine grid. Its parameters
  // stay at the defaults so overrides only affect the runs under study.
  SolverConfig ref_cfg = res.config(3, WenoVariant::JS);
  ref_cfg.params = default_params(3);
  ref_cfg.splitting = SplittingScheme::DonatMarquina;
  ref_cfg.dt_rule = DtRule::Standard;
  Grid1D ref_grid{setup.xmin, setup.xmax, res.ref_n, 3};
  const RunResult ref = run_1d(setup.law, ref_grid, setup.bc, setup.init, ref_cfg);
  dump_1d(out_path(options, experiment_name(res.id) + "_reference_N" +
                                std::to_string(res.ref_n) + ".dat"),
          setup.law, ref_grid, ref.u);

  std::vector<ShockResult> out;
  for (const auto v : res.variants)
    for (const int r : res.orders) {
      auto cfg = res.config(r, v);
      cfg.instrument = options.instrument;
      auto csv = open_out(out_path(options, run_stem(res.id, v, r) + ".csv"));
      csv << "N,L1_vs_ref,kernel_seconds,total_seconds\n";
      for (const int n : res.grids) {
        Grid1D grid{setup.xmin, setup.xmax, n, r};
        const RunResult run = run_1d(setup.law, grid, setup.bc, setup.init, cfg);
        maybe_print_ops(options, run_stem(res.id, v, r) + "_N" + std::to_string(n), run);
        ShockResult sr;
        sr.experiment = res.id;
        sr.variant = v;
        sr.r = r;
        sr.n = n;
        sr.kernel_seconds = run.kernel_seconds;
        sr.total_seconds = run.total_seconds;
        double l1 = 0.0;
        sr.field_min = run.u[0];
        sr.field_max = run.u[0];
        for (int i = 0; i < n; ++i) {
          const double val = run.u[i * m];
          sr.field_min = std::min(sr.field_min, val);
          sr.field_max = std::max(sr.field_max, val);
          l1 += std::abs(val - sample_ref(ref.u, res.ref_n, m, 0, setup.xmin, setup.xmax,
                                          grid.center(i)));
        }
        sr.l1_vs_ref = l1 / n;
        sr.dat_path = out_path(options, run_stem(res.id, v, r) + "_N" + std::to_string(n) +
                                            ".dat");
        dump_1d(sr.dat_path, setup.law, grid, run.u);
        char buf[160];
        std::snprintf(buf, sizeof buf, "%d,%.6e,%.6e,%.6e\n", n, sr.l1_vs_ref,
                      sr.kernel_seconds, sr.total_seconds);
        csv << buf;
        out.push_back(std::move(sr));
      }
    }
  return out;
}

// ---------------------------------------------------------------------------
// 2D runs

std::vector<Field2DResult> cmd_2d(const ExperimentSpec& spec, const RunOptions& options) {
  require_one_of(spec.experiment, {ExperimentId::DoubleMach, ExperimentId::Riemann2D},
                 "run2d");
  const Resolved res = resolve(spec, spec.experiment);
  const Setup2D setup = setup_2d(res.id);
  const int m = setup.law.components();
  const bool dmr = res.id == ExperimentId::DoubleMach;

  std::vector<Field2DResult> out;
  for (const auto v : res.variants)
    for (const int r : res.orders) {
      auto cfg = res.config(r, v);
      cfg.instrument = options.instrument;
      cfg.threads = options.threads;
      auto csv = open_out(out_path(options, run_stem(res.id, v, r) + ".csv"));
      csv << "nx,ny,rho_min,p_min,kernel_seconds,total_seconds\n";
      for (const int n : res.grids) {
        if (dmr && n % 4 != 0)
          throw ConfigError("dmr resolutions must be divisible by 4 (domain is 4 x 1)");
        const int ny = dmr ? n / 4 : n;
        Grid2D grid{setup.xmin, setup.xmax, setup.ymin, setup.ymax, n, ny, r};
        const RunResult run = run_2d(setup.law, grid, setup.bc, setup.init, cfg);
        maybe_print_ops(options, run_stem(res.id, v, r) + "_" + std::to_string(n), run);
        Field2DResult fr;
        fr.experiment = res.id;
        fr.variant = v;
        fr.r = r;
        fr.nx = n;
        fr.ny = ny;
        fr.kernel_seconds = run.kernel_seconds;
        fr.total_seconds = run.total_seconds;
        fr.rho.resize(static_cast<size_t>(n) * ny);
        fr.rho_min = run.u[0];
        fr.p_min = pressure(setup.law, run.u.data());
        for (int i = 0; i < n * ny; ++i) {
          const double* c = &run.u[i * m];
          fr.rho[i] = c[0];
          fr.rho_min = std::min(fr.rho_min, c[0]);
          fr.p_min = std::min(fr.p_min, pressure(setup.law, c));
        }
        const std::string stem =
            run_stem(res.id, v, r) + "_" + std::to_string(n) + "x" + std::to_string(ny);
        fr.dat_path = out_path(options, stem + ".dat");
        fr.pgm_path = out_path(options, stem + ".pgm");
        dump_2d_density(fr.dat_path, grid, run.u, m);
        write_schlieren_pgm(fr.pgm_path, grid, run.u, m);
        char buf[200];
        std::snprintf(buf, sizeof buf, "%d,%d,%.6e,%.6e,%.6e,%.6e\n", n, ny, fr.rho_min,
                      fr.p_min, fr.kernel_seconds, fr.total_seconds);
        csv << buf;
        out.push_back(std::move(fr));
      }
    }
  return out;
}

// ---------------------------------------------------------------------------
// benchmark: op counts, kernel timing, end-to-end efficiency

namespace {

// Instrumented advection run whose reconstruct-call count is known exactly:
// two reconstructions per interface, per stage, per step.
BenchOpRow pipeline_ops(WenoVariant v, int r, int s2) {
  const int n = 20;
  ConservationLawSpec law{LawKind::Advection, 1.0, 1.4};
  Grid1D grid{-1.0, 1.0, n, r};
  BoundaryConditions bc;
  bc.left = bc_periodic();
  bc.right = bc_periodic();
  SolverConfig cfg;
  cfg.r = r;
  cfg.variant = v;
  cfg.params = default_params(r);
  cfg.params.s2 = s2;
  cfg.splitting = SplittingScheme::GlobalLaxFriedrichs;
  cfg.cfl = 0.4;
  cfg.t_final = 0.05;
  cfg.instrument = true;
  const RunResult run =
      run_1d(law, grid, bc, [](double x, double* u) { u[0] = wave_profile(x); }, cfg);
  const std::uint64_t calls = 2ULL * (n + 1) * 3ULL * run.steps;
  const OpCountModel model = expected_ops(v, r, cfg.params);
  BenchOpRow row;
  row.variant = v;
  row.r = r;
  row.s2 = s2;
  row.counted_total = run.ops.adds + run.ops.mults;
  row.model_total = calls * model.total;
  row.counted_divs = run.ops.divs;
  row.model_divs = calls * model.divs;
  row.match = row.counted_total == row.model_total && row.counted_divs == row.model_divs;
  return row;
}

// Seconds per window for one indicator pipeline, repetitions doubled until
// the sample rises above the clock floor.
template <class Body>
double time_per_window(std::uint64_t windows, Body&& body) {
  using Clock = std::chrono::steady_clock;
  double sink = 0.0;
  for (std::uint64_t reps = 1;; reps *= 2) {
    const auto t0 = Clock::now();
    for (std::uint64_t rep = 0; rep < reps; ++rep) sink += body();
    const double dt = std::chrono::duration<double>(Clock::now() - t0).count();
    if (dt >= 0.25) {
      // keep the accumulated value alive without printing garbage
      if (sink == -1.0) std::fputc(' ', stderr);
      return dt / (static_cast<double>(reps) * windows);
    }
  }
}

BenchTiming run_timing(int r) {
  const std::uint64_t windows = 1u << 20;  // > 1e6 random windows
  const int w = 2 * r - 1;
  std::vector<double> data(windows * w);
  std::mt19937_64 rng(0x5eedf00dULL);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  for (auto& x : data) x = dist(rng);

  const auto& tab = lowered_table(r, DiscretizationMode::CellAverage);
  NoCount nc;
  IndicatorVector ind;

  BenchTiming t;
  t.r = r;
  t.windows = windows;
  t.js_seconds = time_per_window(windows, [&] {
    double acc = 0.0;
    for (std::uint64_t i = 0; i < windows; ++i) {
      js_indicators(&data[i * w], tab, ind.data(), nc);
      acc += ind[0];
    }
    return acc;
  });
  t.yc_seconds = time_per_window(windows, [&] {
    double acc = 0.0;
    for (std::uint64_t i = 0; i < windows; ++i) {
      js_indicators(&data[i * w], tab, ind.data(), nc);
      acc += ind[0] + undivided_diff_sq(&data[i * w], tab, nc);
    }
    return acc;
  });
  t.fweno_seconds = time_per_window(windows, [&] {
    double acc = 0.0;
    for (std::uint64_t i = 0; i < windows; ++i) {
      fast_indicators(&data[i * w], r, ind.data(), nc);
      acc += ind[0] + undivided_diff_sq(&data[i * w], tab, nc);
    }
    return acc;
  });
  t.speedup_vs_js = t.js_seconds / t.fweno_seconds;
  t.speedup_vs_yc = t.yc_seconds / t.fweno_seconds;
  return t;
}

}  // namespace

BenchReport cmd_bench(const ExperimentSpec& spec, const RunOptions& options) {
  require_one_of(spec.experiment, {ExperimentId::BenchKernels}, "bench");
  const Resolved res = resolve(spec, spec.experiment);

  BenchReport report;

  // (1) exact op accounting for every order and both ratio exponents
  report.ops_ok = true;
  for (int r = kMinOrderR; r <= kMaxOrderR; ++r)
    for (const int s2 : {1, 2})
      for (const auto v : {WenoVariant::JS, WenoVariant::YC, WenoVariant::FWENO}) {
        report.op_rows.push_back(pipeline_ops(v, r, s2));
        report.ops_ok = report.ops_ok && report.op_rows.back().match;
      }
  report.ops_csv = out_path(options, "bench-kernels_ops.csv");
  {
    auto out = open_out(report.ops_csv);
    out << "variant,r,s2,counted_total,model_total,counted_divs,model_divs,match\n";
    char buf[200];
    for (const auto& row : report.op_rows) {
      std::snprintf(buf, sizeof buf, "%s,%d,%d,%llu,%llu,%llu,%llu,%d\n",
                    variant_name(row.variant).c_str(), row.r, row.s2,
                    static_cast<unsigned long long>(row.counted_total),
                    static_cast<unsigned long long>(row.model_total),
                    static_cast<unsigned long long>(row.counted_divs),
                    static_cast<unsigned long long>(row.model_divs), row.match ? 1 : 0);
      out << buf;
    }
  }

  // (2) isolated indicator timing at the largest requested order
  report.timing = run_timing(*std::max_element(res.orders.begin(), res.orders.end()));
  report.timing_csv = out_path(options, "bench-kernels_timing.csv");
  {
    auto out = open_out(report.timing_csv);
    out << "r,windows,js_sec_per_window,yc_sec_per_window,fweno_sec_per_window,"
           "speedup_vs_js,speedup_vs_yc\n";
    char buf[240];
    std::snprintf(buf, sizeof buf, "%d,%llu,%.4e,%.4e,%.4e,%.3f,%.3f\n", report.timing.r,
                  static_cast<unsigned long long>(report.timing.windows),
                  report.timing.js_seconds, report.timing.yc_seconds,
                  report.timing.fweno_seconds, report.timing.speedup_vs_js,
                  report.timing.speedup_vs_yc);
    out << buf;
  }

  // (3) end-to-end efficiency on the shock-acoustic interaction problem,
  // single-threaded and uninstrumented for honest timings
  const Setup1D setup = setup_1d(ExperimentId::ShuOsher);
  const int m = setup.law.components();
  SolverConfig ref_cfg;
  ref_cfg.r = 3;
  ref_cfg.variant = WenoVariant::JS;
  ref_cfg.params = default_params(3);
  ref_cfg.splitting = SplittingScheme::DonatMarquina;
  ref_cfg.cfl = res.cfl;
  ref_cfg.t_final = res.t_final;
  Grid1D ref_grid{setup.xmin, setup.xmax, res.ref_n, 3};
  const RunResult ref = run_1d(setup.law, ref_grid, setup.bc, setup.init, ref_cfg);

  report.efficiency_csv = out_path(options, "bench-kernels_efficiency.csv");
  auto out = open_out(report.efficiency_csv);
  out << "variant,r,N,L1,kernel_seconds,total_seconds\n";
  char buf[200];
  bool first_block = true;
  for (const auto v : res.variants)
    for (const int r : res.orders) {
      if (!first_block) out << "\n";  // block per (variant, r) for plotting
      first_block = false;
      auto cfg = res.config(r, v);
      for (const int n : res.grids) {
        Grid1D grid{setup.xmin, setup.xmax, n, r};
        const RunResult run = run_1d(setup.law, grid, setup.bc, setup.init, cfg);
        EfficiencyRow er;
        er.variant = v;
        er.r = r;
        er.n = n;
        er.kernel_seconds = run.kernel_seconds;
        er.total_seconds = run.total_seconds;
        double l1 = 0.0;
        for (int i = 0; i < n; ++i)
          l1 += std::abs(run.u[i * m] - sample_ref(ref.u, res.ref_n, m, 0, setup.xmin,
                                                   setup.xmax, grid.center(i)));
        er.l1 = l1 / n;
        report.efficiency.push_back(er);
        std::snprintf(buf, sizeof buf, "%s,%d,%d,%.6e,%.6e,%.6e\n",
                      variant_name(v).c_str(), r, n, er.l1, er.kernel_seconds,
                      er.total_seconds);
        out << buf;
      }
    }
  out.close();

  report.plot_script = out_path(options, "bench-kernels_efficiency.gp");
  auto gp = open_out(report.plot_script);
  gp << "set terminal pngcairo size 900,600\n"
     << "set output 'bench-kernels_efficiency.png'\n"
     << "set datafile separator ','\n"
     << "set logscale xy\n"
     << "set xlabel 'kernel CPU seconds'\n"
     << "set ylabel 'L1 error vs reference'\n"
     << "set key bottom left\n"
     << "plot \\\n";
  int block = 0;
  for (const auto v : res.variants)
    for (const int r : res.orders) {
      gp << "  'bench-kernels_efficiency.csv' index " << block << " using 5:4 "
         << "with linespoints title '" << variant_name(v) << " r=" << r << "'";
      ++block;
      gp << (block < static_cast<int>(res.variants.size() * res.orders.size()) ? ", \\\n"
                                                                                : "\n");
    }
  return report;
}

}  // namespace fweno

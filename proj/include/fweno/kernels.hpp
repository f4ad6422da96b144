#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "fweno/coeff_tables.hpp"

namespace fweno {

enum class WenoVariant { JS, YC, FWENO };

std::string variant_name(WenoVariant v);
WenoVariant parse_variant(const std::string& name);  // "js" | "yc" | "fweno"

/// Counting policy for the kernels. NoCount compiles to nothing; OpCounter
/// tallies floating-point additions/subtractions, multiplications and
/// divisions actually executed.
struct NoCount {
  void add(unsigned) {}
  void mul(unsigned) {}
  void div(unsigned) {}
};

struct OpCounter {
  std::uint64_t adds = 0;
  std::uint64_t mults = 0;
  std::uint64_t divs = 0;
  void add(unsigned n) { adds += n; }
  void mul(unsigned n) { mults += n; }
  void div(unsigned n) { divs += n; }
  OpCounter& operator+=(const OpCounter& o) {
    adds += o.adds;
    mults += o.mults;
    divs += o.divs;
    return *this;
  }
};

/// Contiguous window f_{-r+1}, ..., f_{r-1} feeding one reconstruction at the
/// half point; entry k holds f_{-r+1+k}.
struct StencilWindow {
  const double* f = nullptr;
  int r = 0;
  double operator[](int k) const { return f[k]; }
};

using IndicatorVector = std::array<double, kMaxOrderR>;
using WeightVector = std::array<double, kMaxOrderR>;

/// Nonlinear-weight parameters. s drives the classical weights, (s1, s2) the
/// ratio-based ones. Powers are evaluated by repeated multiplication.
struct WenoParams {
  double eps = 1e-100;
  int s = 2;
  int s1 = 2;
  int s2 = 1;
};

inline WenoParams default_params(int r) {
  WenoParams p;
  p.s = (r + 1) / 2;
  p.s1 = (r + 1) / 2;
  return p;
}

namespace detail {
// All kernels require 2 <= r <= 8; tables can't be built outside that range.
inline void assume_valid_order(int r) {
  if (r < kMinOrderR || r > kMaxOrderR) __builtin_unreachable();
}
}  // namespace detail

// The scratch arrays below are written before every read (r >= 2), but the
// runtime-dependent trip counts defeat gcc's -Wmaybe-uninitialized analysis.
#if defined(__GNUC__) && !defined(__clang__)
#pragma GCC diagnostic push
#pragma GCC diagnostic ignored "-Wmaybe-uninitialized"
#endif

/// Linear-cost smoothness indicators: squares of first differences shared
/// across substencils through a sliding sum.
/// I_i = sum_{j=1}^{r-1} (f_{-r+i+j+1} - f_{-r+i+j})^2.
template <class Ops>
inline void fast_indicators(const double* w, int r, double* ind, Ops& ops) {
  detail::assume_valid_order(r);
  double theta[2 * kMaxOrderR];
  for (int j = 1; j <= 2 * r - 2; ++j) {
    const double d = w[j] - w[j - 1];
    theta[j] = d * d;
  }
  ops.add(2 * r - 2);
  ops.mul(2 * r - 2);

  double acc = theta[1];
  for (int j = 2; j <= r - 1; ++j) acc += theta[j];
  ops.add(r - 2);
  ind[0] = acc;
  for (int i = 1; i <= r - 1; ++i) {
    acc = acc - theta[i] + theta[i + r - 1];
    ind[i] = acc;
  }
  ops.add(2 * (r - 1));
}

/// Same values as fast_indicators, summed independently per substencil.
template <class Ops>
inline void fast_indicators_naive(const double* w, int r, double* ind, Ops& ops) {
  detail::assume_valid_order(r);
  for (int i = 0; i < r; ++i) {
    double d = w[i + 1] - w[i];
    double acc = d * d;
    for (int j = 2; j <= r - 1; ++j) {
      d = w[i + j] - w[i + j - 1];
      acc += d * d;
    }
    ind[i] = acc;
    ops.add(2 * (r - 1) - 1);
    ops.mul(r - 1);
  }
}

/// Classical smoothness indicators evaluated through the pivoted
/// sum-of-squares factorization of each quadratic form.
template <class Ops>
inline void js_indicators(const double* w, const LoweredTable& t, double* ind, Ops& ops) {
  detail::assume_valid_order(t.r);
  const int r = t.r;
  for (int i = 0; i < r; ++i) {
    const LoweredSos& s = t.sos[i];
    const double* f = w + i;
    double acc = 0.0;
    for (int j = 0; j < r - 1; ++j) {
      double lin = f[s.perm[j]];
      for (int m = j + 1; m < r; ++m) lin += s.gamma[j][m] * f[s.perm[m]];
      const double sq = s.beta[j] * (lin * lin);
      acc = (j == 0) ? sq : acc + sq;
      ops.add(r - 1 - j + (j > 0 ? 1 : 0));
      ops.mul(r - 1 - j + 2);
    }
    ind[i] = acc;
  }
}

/// Squared undivided difference of order 2r-2 over the whole window.
template <class Ops>
inline double undivided_diff_sq(const double* w, const LoweredTable& t, Ops& ops) {
  detail::assume_valid_order(t.r);
  const int r = t.r;
  double acc = t.ud[0] * w[0];
  for (int k = 1; k <= 2 * r - 2; ++k) acc += t.ud[k] * w[k];
  ops.add(2 * r - 2);
  ops.mul(2 * r - 1);
  ops.mul(1);
  return acc * acc;
}

/// Unnormalized weights. JS: ideal / (I + eps)^s. The ratio-based designs
/// (YC and the fast indicators) use ideal * (1 + dsq^s1 / (I^s1 + eps))^s2.
template <class Ops>
inline void alphas(WenoVariant v, const LoweredTable& t, const double* ind, double dsq,
                   const WenoParams& p, double* alpha, Ops& ops) {
  const int r = t.r;
  detail::assume_valid_order(r);
  if (v == WenoVariant::JS) {
    for (int i = 0; i < r; ++i) {
      const double base = ind[i] + p.eps;
      double pw = base;
      for (int k = 1; k < p.s; ++k) pw *= base;
      alpha[i] = t.ideal[i] / pw;
      ops.add(1);
      ops.mul(p.s - 1);
      ops.div(1);
    }
    return;
  }
  for (int i = 0; i < r; ++i) {
    double dpow = dsq;
    for (int k = 1; k < p.s1; ++k) dpow *= dsq;
    double ipow = ind[i];
    for (int k = 1; k < p.s1; ++k) ipow *= ind[i];
    const double base = 1.0 + dpow / (ipow + p.eps);
    double pw = base;
    for (int k = 1; k < p.s2; ++k) pw *= base;
    alpha[i] = t.ideal[i] * pw;
    ops.add(2);
    ops.mul(2 * p.s1 + p.s2 - 2);
    ops.div(1);
  }
}

template <class Ops>
inline void weights(const double* alpha, int r, double* w, Ops& ops) {
  detail::assume_valid_order(r);
  double sum = alpha[0];
  for (int i = 1; i < r; ++i) sum += alpha[i];
  ops.add(r - 1);
  const double inv = 1.0 / sum;
  ops.div(1);
  for (int i = 0; i < r; ++i) w[i] = alpha[i] * inv;
  ops.mul(r);
}

template <class Ops>
inline void substencil_values(const double* w, const LoweredTable& t, double* p, Ops& ops) {
  detail::assume_valid_order(t.r);
  const int r = t.r;
  for (int i = 0; i < r; ++i) {
    const double* c = &t.substencil[i * r];
    double acc = c[0] * w[i];
    for (int k = 1; k < r; ++k) acc += c[k] * w[i + k];
    p[i] = acc;
    ops.add(r - 1);
    ops.mul(r);
  }
}

/// Full weighted reconstruction at the half point.
template <class Ops>
inline double reconstruct(const double* w, const LoweredTable& t, WenoVariant v,
                          const WenoParams& p, Ops& ops) {
  const int r = t.r;
  detail::assume_valid_order(r);
  IndicatorVector ind;
  std::array<double, kMaxOrderR> al, om, pv;
  if (v == WenoVariant::FWENO)
    fast_indicators(w, r, ind.data(), ops);
  else
    js_indicators(w, t, ind.data(), ops);
  const double dsq = v == WenoVariant::JS ? 0.0 : undivided_diff_sq(w, t, ops);
  alphas(v, t, ind.data(), dsq, p, al.data(), ops);
  weights(al.data(), r, om.data(), ops);
  substencil_values(w, t, pv.data(), ops);
  double q = om[0] * pv[0];
  for (int i = 1; i < r; ++i) q += om[i] * pv[i];
  ops.add(r - 1);
  ops.mul(r);
  return q;
}

#if defined(__GNUC__) && !defined(__clang__)
#pragma GCC diagnostic pop
#endif

inline double reconstruct(const StencilWindow& w, const LoweredTable& t, WenoVariant v,
                          const WenoParams& p) {
  NoCount nc;
  return reconstruct(w.f, t, v, p, nc);
}

/// Expected operation counts for one reconstruct() call; total = adds + mults
/// (divisions are reported separately). Used by the benchmark verifier.
struct OpCountModel {
  std::uint64_t adds = 0, mults = 0, divs = 0, total = 0;
};
OpCountModel expected_ops(WenoVariant v, int r, const WenoParams& p);

}  // namespace fweno

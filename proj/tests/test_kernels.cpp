#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "fweno/kernels.hpp"

using namespace fweno;

namespace {

const LoweredTable& ca(int r) { return lowered_table(r, DiscretizationMode::CellAverage); }
const LoweredTable& pv(int r) { return lowered_table(r, DiscretizationMode::PointValue); }

std::vector<double> random_window(int r, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  std::vector<double> w(2 * r - 1);
  for (auto& x : w) x = dist(rng);
  return w;
}

double rel_diff(double a, double b) {
  double m = std::max(std::abs(a), std::abs(b));
  return m == 0 ? 0 : std::abs(a - b) / m;
}

}  // namespace

TEST_CASE("fast indicators, frozen values") {
  // Squares 0,1,4,9,16: first differences 1,3,5,7, squared 1,9,25,49.
  const double w[5] = {0, 1, 4, 9, 16};
  double ind[8], ind2[8];
  NoCount nc;
  fast_indicators(w, 3, ind, nc);
  CHECK(ind[0] == 10.0);
  CHECK(ind[1] == 34.0);
  CHECK(ind[2] == 74.0);
  fast_indicators_naive(w, 3, ind2, nc);
  CHECK(ind2[0] == 10.0);
  CHECK(ind2[1] == 34.0);
  CHECK(ind2[2] == 74.0);

  const double step[5] = {0, 0, 0, 1, 1};
  fast_indicators(step, 3, ind, nc);
  CHECK(ind[0] == 0.0);
  CHECK(ind[1] == 1.0);
  CHECK(ind[2] == 1.0);
  CHECK(undivided_diff_sq(step, ca(3), nc) == 9.0);  // (0-0+0-4+1)^2

  // r=2 fast indicators coincide with the classical ones: both are the squared
  // first difference of the two-point substencil.
  std::mt19937_64 rng(3);
  for (int it = 0; it < 50; ++it) {
    auto v = random_window(2, rng, 10.0);
    double a[8], b[8];
    fast_indicators(v.data(), 2, a, nc);
    js_indicators(v.data(), ca(2), b, nc);
    CHECK(a[0] == doctest::Approx(b[0]).epsilon(1e-14));
    CHECK(a[1] == doctest::Approx(b[1]).epsilon(1e-14));
  }
}

TEST_CASE("recurrence matches naive summation") {
  std::mt19937_64 rng(11);
  NoCount nc;
  for (int r = 2; r <= 8; ++r) {
    for (int it = 0; it < 400; ++it) {
      auto w = random_window(r, rng, 100.0);
      double a[8], b[8];
      fast_indicators(w.data(), r, a, nc);
      fast_indicators_naive(w.data(), r, b, nc);
      for (int i = 0; i < r; ++i) CHECK(rel_diff(a[i], b[i]) <= 1e-13);
    }
    // Integer data keeps every intermediate exact, so the sliding sums must be
    // bit-identical to the direct ones.
    std::uniform_int_distribution<long> idist(-(1L << 20), 1L << 20);
    for (int it = 0; it < 200; ++it) {
      std::vector<double> w(2 * r - 1);
      for (auto& x : w) x = static_cast<double>(idist(rng));
      double a[8], b[8];
      fast_indicators(w.data(), r, a, nc);
      fast_indicators_naive(w.data(), r, b, nc);
      for (int i = 0; i < r; ++i) CHECK(a[i] == b[i]);
    }
  }
}

TEST_CASE("substencil values, frozen") {
  NoCount nc;
  const double lin[3] = {0, 1, 2};
  double p[8];
  substencil_values(lin, ca(2), p, nc);
  CHECK(p[0] == 1.5);
  CHECK(p[1] == 1.5);

  // Point samples of x^2 at -2..2: every substencil interpolates to 1/4.
  const double sq[5] = {4, 1, 0, 1, 4};
  substencil_values(sq, pv(3), p, nc);
  CHECK(p[0] == 0.25);
  CHECK(p[1] == 0.25);
  CHECK(p[2] == 0.25);
}

TEST_CASE("weights on a step: the smooth substencil dominates") {
  NoCount nc;
  const double step[5] = {0, 0, 0, 1, 1};
  double ind[8], al[8], om[8];
  const auto& t = ca(3);
  auto prm = default_params(3);

  // Classical design: indicator of the smooth substencil is exactly zero.
  js_indicators(step, t, ind, nc);
  CHECK(ind[0] == 0.0);
  alphas(WenoVariant::JS, t, ind, 0.0, prm, al, nc);
  weights(al, 3, om, nc);
  CHECK(om[0] >= 1.0 - 1e-90);

  // Ratio design: alpha_1 = 0.6 * (1 + 81/1), alpha_2 = 0.3 * (1 + 81/1).
  fast_indicators(step, 3, ind, nc);
  double dsq = undivided_diff_sq(step, t, nc);
  CHECK(dsq == 9.0);
  alphas(WenoVariant::FWENO, t, ind, dsq, prm, al, nc);
  CHECK(al[1] == doctest::Approx(0.6 * 82.0).epsilon(1e-14));
  CHECK(al[2] == doctest::Approx(0.3 * 82.0).epsilon(1e-14));
  weights(al, 3, om, nc);
  CHECK(om[0] >= 1.0 - 1e-90);
}

TEST_CASE("weights are a convex combination for any data") {
  std::mt19937_64 rng(23);
  NoCount nc;
  for (int r = 2; r <= 8; ++r) {
    const auto& t = ca(r);
    for (double scale : {1e-5, 1.0, 1e5}) {
      for (auto v : {WenoVariant::JS, WenoVariant::YC, WenoVariant::FWENO}) {
        auto prm = default_params(r);
        for (int it = 0; it < 60; ++it) {
          auto w = random_window(r, rng, scale);
          if (it % 3 == 0)  // add a jump
            for (int k = r; k < 2 * r - 1; ++k) w[k] += 7.5 * scale;
          double ind[8], al[8], om[8];
          if (v == WenoVariant::FWENO)
            fast_indicators(w.data(), r, ind, nc);
          else
            js_indicators(w.data(), t, ind, nc);
          double dsq = v == WenoVariant::JS ? 0.0 : undivided_diff_sq(w.data(), t, nc);
          alphas(v, t, ind, dsq, prm, al, nc);
          weights(al, r, om, nc);
          double sum = 0;
          for (int i = 0; i < r; ++i) {
            CHECK(om[i] >= 0.0);
            sum += om[i];
          }
          CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));

          double q = reconstruct(w.data(), t, v, prm, nc);
          double lo = q, hi = q;
          double pvals[8];
          substencil_values(w.data(), t, pvals, nc);
          for (int i = 0; i < r; ++i) {
            lo = std::min(lo, pvals[i]);
            hi = std::max(hi, pvals[i]);
          }
          CHECK(q >= lo - 1e-12 * (std::abs(lo) + 1));
          CHECK(q <= hi + 1e-12 * (std::abs(hi) + 1));
        }
      }
    }
  }
}

TEST_CASE("translation invariance") {
  std::mt19937_64 rng(31);
  NoCount nc;
  // Dyadic data plus a dyadic shift: sums stay exact, so the first differences
  // and everything derived from them are bit-identical.
  const double c = 371.25;
  for (int r = 2; r <= 8; ++r) {
    std::uniform_int_distribution<long> idist(-(1L << 24), 1L << 24);
    for (int it = 0; it < 100; ++it) {
      std::vector<double> w(2 * r - 1), ws(2 * r - 1);
      for (int k = 0; k < 2 * r - 1; ++k) {
        w[k] = static_cast<double>(idist(rng)) / 64.0;
        ws[k] = w[k] + c;
      }
      double a[8], b[8];
      fast_indicators(w.data(), r, a, nc);
      fast_indicators(ws.data(), r, b, nc);
      for (int i = 0; i < r; ++i) CHECK(a[i] == b[i]);
      fast_indicators_naive(w.data(), r, a, nc);
      fast_indicators_naive(ws.data(), r, b, nc);
      for (int i = 0; i < r; ++i) CHECK(a[i] == b[i]);
    }
  }
  // The full reconstruction commutes with shifts to rounding accuracy.
  for (int r : {3, 5}) {
    const auto& t = ca(r);
    auto prm = default_params(r);
    for (auto v : {WenoVariant::JS, WenoVariant::YC, WenoVariant::FWENO}) {
      for (int it = 0; it < 50; ++it) {
        auto w = random_window(r, rng, 2.0);
        auto ws = w;
        for (auto& x : ws) x += c;
        double q = reconstruct(w.data(), t, v, prm, nc);
        double qs = reconstruct(ws.data(), t, v, prm, nc);
        CHECK(std::abs(qs - (q + c)) <= 1e-12 * (std::abs(c) + std::abs(q) + 1));
      }
    }
  }
}

TEST_CASE("scale equivariance") {
  std::mt19937_64 rng(37);
  NoCount nc;
  const double lam = 1024.0;  // power of two: scaling is exact
  for (int r : {2, 4, 7}) {
    const auto& t = pv(r);
    auto prm = default_params(r);
    for (int it = 0; it < 50; ++it) {
      auto w = random_window(r, rng, 3.0);
      auto wl = w;
      for (auto& x : wl) x *= lam;
      double a[8], b[8];
      fast_indicators(w.data(), r, a, nc);
      fast_indicators(wl.data(), r, b, nc);
      for (int i = 0; i < r; ++i) CHECK(b[i] == lam * lam * a[i]);
      js_indicators(w.data(), t, a, nc);
      js_indicators(wl.data(), t, b, nc);
      for (int i = 0; i < r; ++i) CHECK(b[i] == lam * lam * a[i]);
      CHECK(undivided_diff_sq(wl.data(), t, nc) ==
            lam * lam * undivided_diff_sq(w.data(), t, nc));
      for (auto v : {WenoVariant::JS, WenoVariant::YC, WenoVariant::FWENO}) {
        double q = reconstruct(w.data(), t, v, prm, nc);
        double ql = reconstruct(wl.data(), t, v, prm, nc);
        CHECK(rel_diff(ql, lam * q) <= 1e-14);
      }
    }
  }
}

TEST_CASE("operation counts are exact") {
  std::mt19937_64 rng(41);
  for (int r = 2; r <= 8; ++r) {
    const auto& t = ca(r);
    auto w = random_window(r, rng);

    OpCounter c;
    double ind[8];
    fast_indicators(w.data(), r, ind, c);
    CHECK(c.adds == static_cast<std::uint64_t>(5 * r - 6));
    CHECK(c.mults == static_cast<std::uint64_t>(2 * r - 2));
    CHECK(c.divs == 0);

    c = OpCounter{};
    js_indicators(w.data(), t, ind, c);
    CHECK(c.adds == static_cast<std::uint64_t>(r) * (r * r + r - 4) / 2);
    CHECK(c.mults == static_cast<std::uint64_t>(r) * (r * r + 3 * r - 4) / 2);

    c = OpCounter{};
    undivided_diff_sq(w.data(), t, c);
    CHECK(c.adds == static_cast<std::uint64_t>(2 * r - 2));
    CHECK(c.mults == static_cast<std::uint64_t>(2 * r));

    c = OpCounter{};
    double al[8], om[8];
    weights(al, r, om, c);
    CHECK(c.adds == static_cast<std::uint64_t>(r - 1));
    CHECK(c.mults == static_cast<std::uint64_t>(r));
    CHECK(c.divs == 1);

    for (int s2 : {1, 2}) {
      auto prm = default_params(r);
      prm.s2 = s2;
      for (auto v : {WenoVariant::JS, WenoVariant::YC, WenoVariant::FWENO}) {
        OpCounter run;
        reconstruct(w.data(), t, v, prm, run);
        auto want = expected_ops(v, r, prm);
        CHECK(run.adds == want.adds);
        CHECK(run.mults == want.mults);
        CHECK(run.divs == want.divs);
        CHECK(want.total == want.adds + want.mults);

        // Closed forms for the grand totals.
        std::uint64_t R = r, s = prm.s, s1 = prm.s1;
        std::uint64_t total = v == WenoVariant::JS ? R * R * R + 4 * R * R + (s - 1) * R - 2
                              : v == WenoVariant::YC
                                  ? R * R * R + 4 * R * R + (2 * s1 + s2 + 3) * R - 4
                                  : 2 * R * R + (2 * s1 + s2 + 14) * R - 12;
        CHECK(want.total == total);
      }
    }
  }

  // Reference points: order nine with default exponents.
  auto p5 = default_params(5);
  CHECK(expected_ops(WenoVariant::JS, 5, p5).total == 233);
  CHECK(expected_ops(WenoVariant::YC, 5, p5).total == 271);
  CHECK(expected_ops(WenoVariant::FWENO, 5, p5).total == 143);
}

TEST_CASE("weights converge to the ideal ones on smooth data") {
  NoCount nc;
  const int r = 3;
  const auto& t = ca(r);
  auto prm = default_params(r);  // s1 = 2
  auto deviation = [&](WenoVariant v, double h) {
    // Cell averages of sin over cells of width h around x0 = 0.4:
    // avg = (cos(x_l) - cos(x_r)) / h.
    const double x0 = 0.4;
    double w[5];
    for (int k = 0; k < 5; ++k) {
      double xl = x0 + (k - r + 1) * h - h / 2, xr = xl + h;
      w[k] = (std::cos(xl) - std::cos(xr)) / h;
    }
    double ind[8], al[8], om[8];
    if (v == WenoVariant::FWENO)
      fast_indicators(w, r, ind, nc);
    else
      js_indicators(w, t, ind, nc);
    double dsq = v == WenoVariant::JS ? 0.0 : undivided_diff_sq(w, t, nc);
    alphas(v, t, ind, dsq, prm, al, nc);
    weights(al, r, om, nc);
    double dev = 0;
    for (int i = 0; i < r; ++i) dev = std::max(dev, std::abs(om[i] - t.ideal[i]));
    return dev;
  };

  for (auto v : {WenoVariant::YC, WenoVariant::FWENO}) {
    double d2 = deviation(v, 0.25), d3 = deviation(v, 0.125);
    CHECK(d3 > 0);
    // Deviation scales like h^(2*(2r-3)*s1) = h^12 here; demand at least 11.
    CHECK(std::log2(d2 / d3) >= 11.0);
  }
  CHECK(deviation(WenoVariant::JS, 0.125) < deviation(WenoVariant::JS, 0.25));
}

TEST_CASE("variant names round-trip") {
  for (auto v : {WenoVariant::JS, WenoVariant::YC, WenoVariant::FWENO})
    CHECK(parse_variant(variant_name(v)) == v);
  CHECK_THROWS_AS(parse_variant("weno-z"), std::invalid_argument);
  StencilWindow win{nullptr, 3};
  CHECK(win.r == 3);
}

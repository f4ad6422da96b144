#include "fweno/coeff_tables.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace fweno {
namespace {

// Dense polynomial over the rationals, coefficients in ascending degree.
// Degrees here stay small (at most 2r-2 <= 14), so no sparsity tricks.
using Poly = std::vector<Rational>;

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

Poly poly_deriv(const Poly& p) {
  if (p.size() <= 1) return Poly{Rational(0)};
  Poly out(p.size() - 1);
  for (std::size_t k = 1; k < p.size(); ++k) out[k - 1] = p[k] * Rational(static_cast<long>(k));
  return out;
}

Rational poly_eval(const Poly& p, const Rational& x) {
  Rational acc;
  for (std::size_t k = p.size(); k-- > 0;) acc = acc * x + p[k];
  return acc;
}

Rational poly_integral(const Poly& p, const Rational& lo, const Rational& hi) {
  Rational acc_hi, acc_lo;
  for (std::size_t k = p.size(); k-- > 0;) {
    Rational c = p[k] / Rational(static_cast<long>(k + 1));
    acc_hi = acc_hi * hi + c;
    acc_lo = acc_lo * lo + c;
  }
  return acc_hi * hi - acc_lo * lo;
}

// Lagrange basis polynomial for node k over the given nodes.
Poly lagrange(const std::vector<Rational>& nodes, std::size_t k) {
  Poly out{Rational(1)};
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    if (j == k) continue;
    Rational scale = Rational(1) / (nodes[k] - nodes[j]);
    out = poly_mul(out, Poly{-nodes[j] * scale, scale});
  }
  return out;
}

// Basis polynomials B_k such that the interpolant/reconstruction polynomial of
// data f over `count` consecutive cells starting at cell index `first` is
// sum_k f_k B_k(x). Unit spacing; cell j is centered at integer j.
std::vector<Poly> basis_polys(DiscretizationMode mode, long first, int count) {
  if (mode == DiscretizationMode::PointValue) {
    std::vector<Rational> nodes(count);
    for (int m = 0; m < count; ++m) nodes[m] = Rational(first + m);
    std::vector<Poly> b(count);
    for (int k = 0; k < count; ++k) b[k] = lagrange(nodes, k);
    return b;
  }
  // Cell averages: interpolate the primitive at the count+1 cell edges and
  // differentiate. f_k enters every edge value from edge k+1 rightward, so
  // B_k = sum_{m=k+1}^{count} L_m'.
  std::vector<Rational> edges(count + 1);
  for (int m = 0; m <= count; ++m) edges[m] = Rational(2 * first - 1 + 2 * m, 2);
  std::vector<Poly> dl(count + 1);
  for (int m = 0; m <= count; ++m) dl[m] = poly_deriv(lagrange(edges, m));
  std::vector<Poly> b(count, Poly{Rational(0)});
  for (int k = 0; k < count; ++k) {
    Poly acc(dl[k + 1].size());
    for (int m = k + 1; m <= count; ++m)
      for (std::size_t c = 0; c < dl[m].size(); ++c) acc[c] += dl[m][c];
    b[k] = std::move(acc);
  }
  return b;
}

RationalMatrix smoothness_form(int r, DiscretizationMode mode, int i) {
  std::vector<Poly> b = basis_polys(mode, -r + 1 + i, r);
  RationalMatrix a(r, std::vector<Rational>(r));
  const Rational lo(-1, 2), hi(1, 2);
  std::vector<Poly> d = b;
  for (int order = 1; order <= r - 1; ++order) {
    for (int k = 0; k < r; ++k) d[k] = poly_deriv(d[k]);
    for (int k = 0; k < r; ++k)
      for (int l = k; l < r; ++l) a[k][l] += poly_integral(poly_mul(d[k], d[l]), lo, hi);
  }
  for (int k = 0; k < r; ++k)
    for (int l = 0; l < k; ++l) a[k][l] = a[l][k];
  return a;
}

std::string fmt(double x) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void check_order(int r) {
  if (r < kMinOrderR || r > kMaxOrderR)
    throw std::invalid_argument("generate_table: r must be in [2, 8], got " + std::to_string(r));
}

}  // namespace

RationalMatrix js_quadratic_form(int r, DiscretizationMode mode, int substencil) {
  check_order(r);
  if (substencil < 0 || substencil >= r)
    throw std::invalid_argument("js_quadratic_form: substencil out of range");
  return smoothness_form(r, mode, substencil);
}

SumOfSquares ldl_sum_of_squares(const RationalMatrix& a) {
  const int n = static_cast<int>(a.size());
  for (const auto& row : a)
    if (static_cast<int>(row.size()) != n)
      throw std::domain_error("ldl_sum_of_squares: matrix not square");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      if (a[i][j] != a[j][i]) throw std::domain_error("ldl_sum_of_squares: matrix not symmetric");

  RationalMatrix b = a;
  SumOfSquares out;
  out.perm.resize(n);
  for (int i = 0; i < n; ++i) out.perm[i] = i;

  for (int t = 0; t < n; ++t) {
    // Largest remaining diagonal entry becomes the next pivot; first maximal
    // entry wins on ties, which keeps the factorization deterministic.
    int p = t;
    for (int m = t + 1; m < n; ++m)
      if (b[m][m] > b[p][p]) p = m;
    if (p != t) {
      std::swap(out.perm[t], out.perm[p]);
      // Rows already recorded live in the permuted coordinates too.
      for (auto& row : out.gamma) std::swap(row[t], row[p]);
      for (int m = 0; m < n; ++m) std::swap(b[t][m], b[p][m]);
      for (int m = 0; m < n; ++m) std::swap(b[m][t], b[m][p]);
    }
    const Rational& piv = b[t][t];
    if (piv.sign() < 0) throw std::domain_error("ldl_sum_of_squares: negative pivot, matrix not PSD");
    if (piv.sign() == 0) {
      // PSD with an all-zero diagonal tail forces the whole tail to vanish.
      for (int i = t; i < n; ++i)
        for (int j = t; j < n; ++j)
          if (b[i][j] != Rational(0))
            throw std::domain_error("ldl_sum_of_squares: zero pivot with nonzero remainder");
      break;
    }
    std::vector<Rational> row(n);
    for (int m = t; m < n; ++m) row[m] = b[t][m] / piv;
    out.beta.push_back(piv);
    out.gamma.push_back(std::move(row));
    for (int i = t + 1; i < n; ++i)
      for (int j = t + 1; j < n; ++j) b[i][j] -= b[i][t] * b[t][j] / piv;
  }
  return out;
}

ReconstructionTable generate_table(int r, DiscretizationMode mode) {
  check_order(r);
  ReconstructionTable t;
  t.r = r;
  t.mode = mode;
  const Rational half(1, 2);

  t.substencil.resize(r);
  for (int i = 0; i < r; ++i) {
    std::vector<Poly> b = basis_polys(mode, -r + 1 + i, r);
    t.substencil[i].resize(r);
    for (int k = 0; k < r; ++k) t.substencil[i][k] = poly_eval(b[k], half);
  }

  {
    std::vector<Poly> b = basis_polys(mode, -r + 1, 2 * r - 1);
    t.full.resize(2 * r - 1);
    for (int k = 0; k < 2 * r - 1; ++k) t.full[k] = poly_eval(b[k], half);
  }

  // Ideal weights: the convex combination of substencil reconstructions that
  // reproduces the full-window coefficients. Window position k only sees
  // substencils i <= k, so the first r equations are triangular; the remaining
  // r-1 are consistency checks and must hold exactly.
  t.ideal.resize(r);
  for (int k = 0; k < 2 * r - 1; ++k) {
    Rational acc;
    for (int i = std::max(0, k - r + 1); i <= std::min(k - 1, r - 1); ++i)
      acc += t.ideal[i] * t.substencil[i][k - i];
    if (k < r) {
      t.ideal[k] = (t.full[k] - acc) / t.substencil[k][0];
      if (t.ideal[k].sign() <= 0) throw std::logic_error("generate_table: nonpositive ideal weight");
    } else if (acc != t.full[k]) {
      throw std::logic_error("generate_table: ideal weight system inconsistent");
    }
  }

  t.ud.resize(2 * r - 1);
  for (int k = 0; k < 2 * r - 1; ++k) {
    mpz_class c;
    mpz_bin_uiui(c.get_mpz_t(), 2 * r - 2, k);
    t.ud[k] = Rational(mpq_class(k % 2 == 0 ? c : -c));
  }

  t.js_form.resize(r);
  t.js_sos.resize(r);
  for (int i = 0; i < r; ++i) {
    t.js_form[i] = smoothness_form(r, mode, i);
    t.js_sos[i] = ldl_sum_of_squares(t.js_form[i]);
    const SumOfSquares& s = t.js_sos[i];
    if (static_cast<int>(s.beta.size()) != r - 1)
      throw std::logic_error("generate_table: smoothness form rank != r-1");
    // Exact reassembly: sum_j beta_j g_j g_j^T must equal the permuted form.
    for (int a = 0; a < r; ++a)
      for (int c = 0; c < r; ++c) {
        Rational acc;
        for (std::size_t j = 0; j < s.beta.size(); ++j) acc += s.beta[j] * s.gamma[j][a] * s.gamma[j][c];
        if (acc != t.js_form[i][s.perm[a]][s.perm[c]])
          throw std::logic_error("generate_table: sum-of-squares reassembly mismatch");
      }
  }
  return t;
}

LoweredTable lower(const ReconstructionTable& t) {
  LoweredTable out;
  out.r = t.r;
  out.mode = t.mode;
  const int r = t.r;
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < r; ++k) out.substencil[i * r + k] = t.substencil[i][k].to_double();
  for (int i = 0; i < r; ++i) out.ideal[i] = t.ideal[i].to_double();
  for (int k = 0; k < 2 * r - 1; ++k) out.ud[k] = t.ud[k].to_double();
  for (int i = 0; i < r; ++i) {
    const SumOfSquares& s = t.js_sos[i];
    LoweredSos& d = out.sos[i];
    for (int m = 0; m < r; ++m) d.perm[m] = s.perm[m];
    for (std::size_t j = 0; j < s.beta.size(); ++j) {
      d.beta[j] = s.beta[j].to_double();
      for (int m = 0; m < r; ++m) d.gamma[j][m] = s.gamma[j][m].to_double();
    }
  }
  return out;
}

const LoweredTable& lowered_table(int r, DiscretizationMode mode) {
  check_order(r);
  static std::mutex mu;
  static std::map<int, std::unique_ptr<LoweredTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  const int key = 2 * r + (mode == DiscretizationMode::CellAverage ? 1 : 0);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_unique<LoweredTable>(lower(generate_table(r, mode)))).first;
  return *it->second;
}

std::string dump_table(const ReconstructionTable& t) {
  std::ostringstream os;
  os << "reconstruction table r=" << t.r << " mode="
     << (t.mode == DiscretizationMode::CellAverage ? "cell-average" : "point-value") << "\n";
  os << "substencil coefficients:\n";
  for (int i = 0; i < t.r; ++i) {
    os << "  [" << i << "]";
    for (const Rational& c : t.substencil[i]) os << " " << c.str() << " (" << fmt(c.to_double()) << ")";
    os << "\n";
  }
  os << "ideal weights:";
  for (const Rational& c : t.ideal) os << " " << c.str() << " (" << fmt(c.to_double()) << ")";
  os << "\nfull-window coefficients:";
  for (const Rational& c : t.full) os << " " << c.str();
  os << "\nundivided-difference coefficients:";
  for (const Rational& c : t.ud) os << " " << c.str();
  os << "\n";
  for (int i = 0; i < t.r; ++i) {
    os << "smoothness form [" << i << "]:\n";
    for (int a = 0; a < t.r; ++a) {
      os << " ";
      for (int b = 0; b < t.r; ++b) os << " " << t.js_form[i][a][b].str();
      os << "\n";
    }
    const SumOfSquares& s = t.js_sos[i];
    os << "  perm:";
    for (int m = 0; m < t.r; ++m) os << " " << s.perm[m];
    os << "\n";
    for (std::size_t j = 0; j < s.beta.size(); ++j) {
      os << "  square " << j << ": beta=" << s.beta[j].str() << " (" << fmt(s.beta[j].to_double())
         << ") gamma:";
      for (int m = 0; m < t.r; ++m) os << " " << s.gamma[j][m].str();
      os << "\n";
    }
  }
  return os.str();
}

}  // namespace fweno

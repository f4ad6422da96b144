#pragma once

#include <array>
#include <string>
#include <vector>

#include "fweno/rational.hpp"

namespace fweno {

inline constexpr int kMinOrderR = 2;
inline constexpr int kMaxOrderR = 8;

/// How the stencil data samples the function: nodal values (interpolation) or
/// cell averages (reconstruction of the point value from mean values).
enum class DiscretizationMode { PointValue, CellAverage };

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Pivoted factorization of a symmetric PSD matrix A as
///   x^T A x = sum_j beta[j] * (sum_{m>=j} gamma[j][m] * x[perm[m]])^2
/// with gamma[j][j] == 1 and beta[j] > 0. rank(A) == beta.size().
struct SumOfSquares {
  std::vector<int> perm;
  std::vector<Rational> beta;
  std::vector<std::vector<Rational>> gamma;  // row j: entries below j are zero
};

/// Exact coefficients for reconstruction of order 2r-1 at the half point from
/// the window f_{-r+1}, ..., f_{r-1} (window index k holds f_{-r+1+k}).
/// Substencil i uses window entries i, ..., i+r-1.
struct ReconstructionTable {
  int r = 0;
  DiscretizationMode mode = DiscretizationMode::CellAverage;
  std::vector<std::vector<Rational>> substencil;  // [r][r] low-order coefficients
  std::vector<Rational> ideal;                    // [r] ideal weights, sum to 1
  std::vector<Rational> full;                     // [2r-1] full-window coefficients
  std::vector<Rational> ud;                       // [2r-1] undivided-difference coefficients
  std::vector<RationalMatrix> js_form;            // [r] smoothness quadratic forms, r x r
  std::vector<SumOfSquares> js_sos;               // [r] factored forms
};

/// Double-precision copy for the kernels. Every entry is the nearest double to
/// the exact rational. Fixed-capacity arrays; only the leading r (or 2r-1)
/// entries are meaningful.
struct LoweredSos {
  std::array<int, kMaxOrderR> perm{};
  std::array<double, kMaxOrderR> beta{};
  std::array<std::array<double, kMaxOrderR>, kMaxOrderR> gamma{};
};

struct LoweredTable {
  int r = 0;
  DiscretizationMode mode = DiscretizationMode::CellAverage;
  std::array<double, kMaxOrderR * kMaxOrderR> substencil{};  // row-major, stride r
  std::array<double, kMaxOrderR> ideal{};
  std::array<double, 2 * kMaxOrderR - 1> ud{};
  std::array<LoweredSos, kMaxOrderR> sos{};
};

/// Builds the full table for 2 <= r <= 8. Throws std::invalid_argument outside
/// that range. All internal consistency checks (ideal weights reproduce the
/// full-window coefficients, factorizations reassemble) are exact; a failure
/// throws std::logic_error.
ReconstructionTable generate_table(int r, DiscretizationMode mode);

/// Smoothness quadratic form of substencil i: the sum over derivative orders
/// 1..r-1 of the integral over the central cell of the squared scaled
/// derivative of the substencil polynomial.
RationalMatrix js_quadratic_form(int r, DiscretizationMode mode, int substencil);

/// Largest-remaining-diagonal pivoted LDL^T of a symmetric PSD matrix,
/// expressed as a sum of squares. Throws std::domain_error if the matrix is
/// not symmetric PSD.
SumOfSquares ldl_sum_of_squares(const RationalMatrix& a);

LoweredTable lower(const ReconstructionTable& t);

/// Cached lowered table, built on first use. Thread-safe.
const LoweredTable& lowered_table(int r, DiscretizationMode mode);

/// Human-readable dump: rationals as p/q, doubles with shortest round-trip
/// formatting.
std::string dump_table(const ReconstructionTable& t);

}  // namespace fweno

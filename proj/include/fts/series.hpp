#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fts {

/// The pair of fractional orders (α in time, β in space), both in (0, 1].
class FracOrders {
 public:
  /// Throws DomainError unless 0 < alpha ≤ 1 and 0 < beta ≤ 1.
  FracOrders(double alpha, double beta);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }

  friend bool operator==(const FracOrders&, const FracOrders&) = default;

 private:
  double alpha_;
  double beta_;
};

/// Univariate spatial series Σ a_j x^{jβ}/Γ(jβ+1).
struct XSeries {
  double beta = 1.0;
  std::vector<double> coeffs;

  std::size_t size() const noexcept { return coeffs.size(); }
  /// Coefficient j, zero past the stored length.
  double at(std::size_t j) const noexcept { return j < coeffs.size() ? coeffs[j] : 0.0; }
};

/// Univariate temporal series Σ m_i t^{iα}/Γ(iα+1).
struct TSeries {
  double alpha = 1.0;
  std::vector<double> coeffs;

  std::size_t size() const noexcept { return coeffs.size(); }
  double at(std::size_t i) const noexcept { return i < coeffs.size() ? coeffs[i] : 0.0; }
};

/// Truncated bivariate series Σ a_{i,j} t^{iα}/Γ(iα+1) x^{jβ}/Γ(jβ+1).
///
/// Coefficients live in the gamma-normalized basis, stored densely per time
/// level i. Each level carries its own width Jmax(i) = levels[i].size() − 1,
/// so the trapezoid produced by forward marching is explicit and nothing
/// outside it can be read.
class BiFracSeries {
 public:
  using Level = std::vector<double>;

  /// Throws DomainError on an empty level list, an empty level, or a
  /// non-finite coefficient.
  BiFracSeries(FracOrders orders, std::vector<Level> levels);

  /// Rectangular series of zeros with nt+1 levels of width jmax.
  static BiFracSeries zeros(FracOrders orders, std::size_t nt, std::size_t jmax);

  const FracOrders& orders() const noexcept { return orders_; }
  std::size_t nt() const noexcept { return levels_.size() - 1; }
  std::size_t width(std::size_t i) const { return levels_.at(i).size() - 1; }
  std::size_t min_width() const noexcept;
  std::span<const double> level(std::size_t i) const { return levels_.at(i); }
  const std::vector<Level>& levels() const noexcept { return levels_; }
  double operator()(std::size_t i, std::size_t j) const { return levels_.at(i).at(j); }

 private:
  FracOrders orders_;
  std::vector<Level> levels_;
};

/// Raw-basis coefficients g_{i,j} of Σ g_{i,j} t^{iα} x^{jβ}, same shape as
/// the normalized levels.
using RawCoeffs = std::vector<std::vector<double>>;

/// Σ a_{i,j} t^{iα}/Γ(iα+1) x^{jβ}/Γ(jβ+1) over the stored index set, with
/// 0⁰ = 1. Throws DomainError for negative x or t.
double eval_series(const BiFracSeries& s, double x, double t);
double eval_series(const XSeries& s, double x);
double eval_series(const TSeries& s, double t);

/// D_t^{rα}. On the normalized basis the factor Γ((i+r)α+1)/Γ(iα+1) of the
/// raw-basis rule is exactly absorbed by the basis normalization, so the
/// operation is the pure index shift a'_{i,j} = a_{i+r,j}. Throws WidthError
/// if r > nt.
BiFracSeries dt_shift(const BiFracSeries& s, std::size_t r);

/// D_x^{rβ}: a'_{i,j} = a_{i,j+r}, the normalized form of the factor
/// Γ((j+r)β+1)/Γ(jβ+1). Shifts compose additively. Throws WidthError if r
/// exceeds the width of any level.
BiFracSeries dx_shift(const BiFracSeries& s, std::size_t r);

/// Product q(x)·s(x,t) truncated at spatial index jcap:
/// c_{i,j} = Σ_{k≤j} q_k B_β(k, j−k) a_{i,j−k}. Throws WidthError if jcap
/// exceeds the width of any level.
BiFracSeries mul_x(const BiFracSeries& s, const XSeries& q, std::size_t jcap);

/// One level of mul_x: c_j = Σ_{k≤min(j,|q|−1)} q_k B_β(k, j−k) a_{j−k} for j ≤ jcap.
/// Requires jcap < a.size().
std::vector<double> mul_level(std::span<const double> a, std::span<const double> q,
                              double beta, std::size_t jcap);

/// Cauchy-type product of two spatial series in the normalized basis, truncated
/// to the shorter length.
XSeries mul(const XSeries& a, const XSeries& b);

BiFracSeries operator+(const BiFracSeries& a, const BiFracSeries& b);
BiFracSeries operator*(double c, const BiFracSeries& s);

RawCoeffs raw_from_normalized(const BiFracSeries& s);
BiFracSeries normalized_from_raw(FracOrders orders, const RawCoeffs& raw);

}  // namespace fts

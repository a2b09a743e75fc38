#include "fts/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fts/errors.hpp"
#include "fts/special_fn.hpp"

namespace fts {

FracOrders::FracOrders(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in (0, 1], got " + std::to_string(alpha));
  if (!(beta > 0.0 && beta <= 1.0)) throw DomainError("beta must lie in (0, 1], got " + std::to_string(beta));
}

BiFracSeries::BiFracSeries(FracOrders orders, std::vector<Level> levels)
    : orders_(orders), levels_(std::move(levels)) {
  if (levels_.empty()) throw DomainError("BiFracSeries: at least one time level required");
  for (const auto& lv : levels_) {
    if (lv.empty()) throw DomainError("BiFracSeries: empty time level");
    for (double v : lv)
      if (!std::isfinite(v)) throw DomainError("BiFracSeries: non-finite coefficient");
  }
}

BiFracSeries BiFracSeries::zeros(FracOrders orders, std::size_t nt, std::size_t jmax) {
  return BiFracSeries(orders, std::vector<Level>(nt + 1, Level(jmax + 1, 0.0)));
}

std::size_t BiFracSeries::min_width() const noexcept {
  std::size_t w = levels_.front().size();
  for (const auto& lv : levels_) w = std::min(w, lv.size());
  return w - 1;
}

namespace {

// Values of y^{nγ}/Γ(nγ+1) for n = 0..count−1, with 0⁰ = 1.
std::vector<double> basis_values(double y, double order, std::size_t count) {
  std::vector<double> b(count, 0.0);
  if (count == 0) return b;
  b[0] = 1.0;
  if (y == 0.0) return b;
  const double log_y = std::log(y);
  for (std::size_t n = 1; n < count; ++n) {
    const double e = static_cast<double>(n) * order;
    b[n] = std::exp(e * log_y - log_gamma(e + 1.0));
  }
  return b;
}

void require_nonnegative(double v, const char* name) {
  if (!(v >= 0.0)) throw DomainError(std::string("eval_series: ") + name + " must be nonnegative");
}

}  // namespace

double eval_series(const BiFracSeries& s, double x, double t) {
  require_nonnegative(x, "x");
  require_nonnegative(t, "t");
  std::size_t max_len = 0;
  for (const auto& lv : s.levels()) max_len = std::max(max_len, lv.size());
  const auto bx = basis_values(x, s.orders().beta(), max_len);
  const auto bt = basis_values(t, s.orders().alpha(), s.nt() + 1);
  double total = 0.0;
  for (std::size_t i = 0; i <= s.nt(); ++i) {
    if (bt[i] == 0.0) continue;
    const auto lv = s.level(i);
    double row = 0.0;
    for (std::size_t j = 0; j < lv.size(); ++j) row += lv[j] * bx[j];
    total += bt[i] * row;
  }
  return total;
}

double eval_series(const XSeries& s, double x) {
  require_nonnegative(x, "x");
  const auto b = basis_values(x, s.beta, s.size());
  double total = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j) total += s.coeffs[j] * b[j];
  return total;
}

double eval_series(const TSeries& s, double t) {
  require_nonnegative(t, "t");
  const auto b = basis_values(t, s.alpha, s.size());
  double total = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) total += s.coeffs[i] * b[i];
  return total;
}

BiFracSeries dt_shift(const BiFracSeries& s, std::size_t r) {
  if (r > s.nt()) throw WidthError("dt_shift: shift exceeds time depth");
  std::vector<BiFracSeries::Level> out(s.levels().begin() + static_cast<std::ptrdiff_t>(r),
                                       s.levels().end());
  return BiFracSeries(s.orders(), std::move(out));
}

BiFracSeries dx_shift(const BiFracSeries& s, std::size_t r) {
  std::vector<BiFracSeries::Level> out;
  out.reserve(s.nt() + 1);
  for (const auto& lv : s.levels()) {
    if (r >= lv.size()) throw WidthError("dx_shift: shift exceeds stored width");
    out.emplace_back(lv.begin() + static_cast<std::ptrdiff_t>(r), lv.end());
  }
  return BiFracSeries(s.orders(), std::move(out));
}

std::vector<double> mul_level(std::span<const double> a, std::span<const double> q,
                              double beta, std::size_t jcap) {
  if (jcap >= a.size()) throw WidthError("mul_x: jcap exceeds stored width");
  std::vector<double> c(jcap + 1, 0.0);
  for (std::size_t j = 0; j <= jcap; ++j) {
    if (q.empty()) break;
    const std::size_t kmax = std::min(j, q.size() - 1);
    double acc = 0.0;
    for (std::size_t k = 0; k <= kmax; ++k) {
      if (q[k] == 0.0) continue;
      acc += q[k] * frac_binom(k, j - k, beta) * a[j - k];
    }
    c[j] = acc;
  }
  return c;
}

BiFracSeries mul_x(const BiFracSeries& s, const XSeries& q, std::size_t jcap) {
  std::vector<BiFracSeries::Level> out;
  out.reserve(s.nt() + 1);
  for (const auto& lv : s.levels()) out.push_back(mul_level(lv, q.coeffs, s.orders().beta(), jcap));
  return BiFracSeries(s.orders(), std::move(out));
}

XSeries mul(const XSeries& a, const XSeries& b) {
  const std::size_t n = std::min(a.size(), b.size());
  if (n == 0) return XSeries{a.beta, {}};
  return XSeries{a.beta, mul_level(std::span(b.coeffs).first(n), a.coeffs, a.beta, n - 1)};
}

BiFracSeries operator+(const BiFracSeries& a, const BiFracSeries& b) {
  if (!(a.orders() == b.orders())) throw DomainError("series addition: orders differ");
  const std::size_t nt = std::min(a.nt(), b.nt());
  std::vector<BiFracSeries::Level> out(nt + 1);
  for (std::size_t i = 0; i <= nt; ++i) {
    const auto la = a.level(i);
    const auto lb = b.level(i);
    out[i].resize(std::min(la.size(), lb.size()));
    for (std::size_t j = 0; j < out[i].size(); ++j) out[i][j] = la[j] + lb[j];
  }
  return BiFracSeries(a.orders(), std::move(out));
}

BiFracSeries operator*(double c, const BiFracSeries& s) {
  auto levels = s.levels();
  for (auto& lv : levels)
    for (double& v : lv) v *= c;
  return BiFracSeries(s.orders(), std::move(levels));
}

RawCoeffs raw_from_normalized(const BiFracSeries& s) {
  RawCoeffs raw(s.nt() + 1);
  const double alpha = s.orders().alpha();
  const double beta = s.orders().beta();
  for (std::size_t i = 0; i <= s.nt(); ++i) {
    const double lt = log_gamma(static_cast<double>(i) * alpha + 1.0);
    const auto lv = s.level(i);
    raw[i].resize(lv.size());
    for (std::size_t j = 0; j < lv.size(); ++j) {
      const double lx = log_gamma(static_cast<double>(j) * beta + 1.0);
      raw[i][j] = lv[j] * std::exp(-(lt + lx));
    }
  }
  return raw;
}

BiFracSeries normalized_from_raw(FracOrders orders, const RawCoeffs& raw) {
  std::vector<BiFracSeries::Level> levels(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const double lt = log_gamma(static_cast<double>(i) * orders.alpha() + 1.0);
    levels[i].resize(raw[i].size());
    for (std::size_t j = 0; j < raw[i].size(); ++j) {
      const double lx = log_gamma(static_cast<double>(j) * orders.beta() + 1.0);
      levels[i][j] = raw[i][j] * std::exp(lt + lx);
    }
  }
  return BiFracSeries(orders, std::move(levels));
}

}  // namespace fts

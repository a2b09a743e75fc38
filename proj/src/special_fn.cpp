#include "fts/special_fn.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "fts/errors.hpp"

namespace fts {

namespace {

// ζ(k) − 1 for k = 2..31.
constexpr std::array<double, 30> kZetaMinusOne = {
    6.44934066848226406e-01, 2.02056903159594292e-01, 8.23232337111381857e-02,
    3.69277551433699266e-02, 1.73430619844491402e-02, 8.34927738192282713e-03,
    4.07735619794433960e-03, 2.00839282608221426e-03, 9.94575127818085256e-04,
    4.94188604119464529e-04, 2.46086553308048320e-04, 1.22713347578489145e-04,
    6.12481350587048277e-05, 3.05882363070204933e-05, 1.52822594086518710e-05,
    7.63719763789976257e-06, 3.81729326499984022e-06, 1.90821271655393897e-06,
    9.53962033872796212e-07, 4.76932986787806447e-07, 2.38450502727733004e-07,
    1.19219925965311064e-07, 5.96081890512594801e-08, 2.98035035146522793e-08,
    1.49015548283650427e-08, 7.45071178983543006e-09, 3.72533402478845728e-09,
    1.86265972351304914e-09, 9.31327432419668166e-10, 4.65662906503378366e-10,
};

// ln Γ(2+z) = (1−γ) z + Σ_{k≥2} (−1)^k (ζ(k)−1) z^k / k, valid for |z| < 2.
// Only called with |z| ≤ 0.5, where 30 terms are well past double precision.
double log_gamma_near_two(double z) {
  double sum = 0.0;
  for (std::size_t n = kZetaMinusOne.size(); n-- > 0;) {
    const double k = static_cast<double>(n + 2);
    const double term = (n % 2 == 0 ? 1.0 : -1.0) * kZetaMinusOne[n] / k;
    sum = sum * z + term;
  }
  return z * ((1.0 - std::numbers::egamma) + z * sum);
}

// Stirling series with Bernoulli terms through B_16; used for a ≥ 10.
double log_gamma_stirling(double a) {
  constexpr std::array<double, 8> kCoef = {
      1.0 / 12.0,      -1.0 / 360.0,  1.0 / 1260.0,     -1.0 / 1680.0,
      1.0 / 1188.0,    -691.0 / 360360.0, 1.0 / 156.0, -3617.0 / 122400.0,
  };
  const double inv = 1.0 / a;
  const double inv2 = inv * inv;
  double series = 0.0;
  for (std::size_t n = kCoef.size(); n-- > 0;) series = series * inv2 + kCoef[n];
  series *= inv;
  return (a - 0.5) * std::log(a) - a + 0.5 * std::log(2.0 * std::numbers::pi) + series;
}

// Integer-valued arguments where Γ is a factorial representable in double.
bool factorial_arg(double a) { return a >= 1.0 && a <= 171.0 && a == std::floor(a); }

// Γ(a)/Γ(b) for integer a, b as a product of integers; exact while the
// partial products stay below 2^53.
double factorial_ratio(double a, double b) {
  double lo = std::min(a, b);
  const double hi = std::max(a, b);
  double prod = 1.0;
  for (; lo < hi; lo += 1.0) prod *= lo;
  return a >= b ? prod : 1.0 / prod;
}

// C(n, k) by the multiplicative rule; every partial result is itself a
// binomial coefficient, so the value is exact while it fits in 53 bits.
double binomial(double n, double k) {
  k = std::min(k, n - k);
  double c = 1.0;
  for (double i = 1.0; i <= k; i += 1.0) c = c * (n - k + i) / i;
  return c;
}

}  // namespace

double log_gamma(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("log_gamma: argument must be positive and finite");
  if (a == 1.0 || a == 2.0) return 0.0;
  if (a < 0.5) return log_gamma(a + 1.0) - std::log(a);
  if (a < 1.5) return log_gamma_near_two(a - 1.0) - std::log1p(a - 1.0);
  if (a <= 2.5) return log_gamma_near_two(a - 2.0);
  if (a < 10.0) {
    double shifted = a;
    double product = 1.0;
    while (shifted > 2.5) {
      shifted -= 1.0;
      product *= shifted;
    }
    return log_gamma_near_two(shifted - 2.0) + std::log(product);
  }
  return log_gamma_stirling(a);
}

double gamma_ratio(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("gamma_ratio: arguments must be positive");
  if (a == b) return 1.0;
  if (factorial_arg(a) && factorial_arg(b)) return factorial_ratio(a, b);
  return std::exp(log_gamma(a) - log_gamma(b));
}

double frac_binom(std::size_t k, std::size_t m, double beta) {
  if (!(beta > 0.0 && beta <= 1.0)) throw DomainError("frac_binom: beta must lie in (0, 1]");
  if (k == 0 || m == 0) return 1.0;
  const double kb = static_cast<double>(k) * beta;
  const double mb = static_cast<double>(m) * beta;
  const double nb = static_cast<double>(k + m) * beta;
  if (factorial_arg(kb + 1.0) && factorial_arg(mb + 1.0) && factorial_arg(nb + 1.0)) {
    return binomial(nb, std::min(kb, mb));
  }
  const double lk = log_gamma(kb + 1.0);
  const double lm = log_gamma(mb + 1.0);
  // lk + lm commutes exactly, so the result is symmetric in (k, m).
  return std::exp(log_gamma(nb + 1.0) - (lk + lm));
}

std::vector<double> ml_power_coeffs(double beta, std::size_t m, std::size_t jmax, double lambda) {
  if (!(beta > 0.0 && beta <= 1.0)) throw DomainError("ml_power_coeffs: beta must lie in (0, 1]");
  if (m == 0) throw DomainError("ml_power_coeffs: power m must be ≥ 1");
  std::vector<double> a(jmax + 1, 0.0);
  double lambda_pow = 1.0;
  for (std::size_t j = 0; m * j <= jmax; ++j) {
    const double jb = static_cast<double>(j) * beta;
    const double mjb = static_cast<double>(m * j) * beta;
    a[m * j] = lambda_pow * gamma_ratio(mjb + 1.0, jb + 1.0);
    lambda_pow *= lambda;
  }
  return a;
}

}  // namespace fts

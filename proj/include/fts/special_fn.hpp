#pragma once

#include <cstddef>
#include <vector>

namespace fts {

/// ln Γ(a) for a > 0. Relative error below 1e-13 on [1, 200]; exact zeros at
/// a = 1 and a = 2.
double log_gamma(double a);

/// Γ(a)/Γ(b) evaluated in log space.
double gamma_ratio(double a, double b);

/// B_β(k, m) = Γ((k+m)β+1) / (Γ(kβ+1) Γ(mβ+1)). Symmetric in (k, m) bit for
/// bit, and exactly 1 when either index is zero.
double frac_binom(std::size_t k, std::size_t m, double beta);

/// Coefficients of E_β(λ x^{mβ}) = Σ_j λ^j x^{mjβ}/Γ(jβ+1) in the normalized
/// basis x^{nβ}/Γ(nβ+1), indices n = 0..jmax.
std::vector<double> ml_power_coeffs(double beta, std::size_t m, std::size_t jmax,
                                    double lambda = 1.0);

}  // namespace fts

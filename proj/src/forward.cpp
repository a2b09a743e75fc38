#include "fts/forward.hpp"

#include <algorithm>
#include <cmath>

#include "fts/errors.hpp"
#include "fts/special_fn.hpp"

namespace fts {

ForwardResult forward_march(const ProblemSpec& spec, const XSeries& p) {
  if (p.size() > spec.kmax + 1) throw DomainError("forward_march: p has more than kmax + 1 coefficients");
  const std::size_t nt = spec.nt;
  const double beta = spec.orders.beta();
  if (spec.phi.size() < 2 * nt + 2) throw WidthError("forward_march: trapezoid collapses before the last level");

  std::vector<BiFracSeries::Level> levels;
  levels.reserve(nt + 1);
  levels.push_back(spec.phi.coeffs);
  const auto* known = std::get_if<KnownSource>(&spec.f_mode);

  for (std::size_t i = 0; i < nt; ++i) {
    const auto& cur = levels.back();
    const std::size_t jnext = cur.size() - 1 - 2;
    std::span<const double> f = known ? known->f.level(i) : std::span<const double>(cur);
    if (f.size() < jnext + 1) throw WidthError("forward_march: source level too narrow");
    // p·f on level i, truncated to the next level's width.
    auto next = mul_level(f, p.coeffs, beta, jnext);
    for (std::size_t j = 0; j <= jnext; ++j) next[j] += cur[j + 2];
    levels.push_back(std::move(next));
  }

  // 1/Γ(jβ+1) weights for the x = 1 trace.
  std::vector<double> inv_gamma(levels.front().size());
  for (std::size_t j = 0; j < inv_gamma.size(); ++j) {
    inv_gamma[j] = std::exp(-log_gamma(static_cast<double>(j) * beta + 1.0));
  }

  ForwardResult out{BiFracSeries(spec.orders, std::move(levels)), TSeries{spec.orders.alpha(), {}},
                    TSeries{spec.orders.alpha(), {}}};
  for (std::size_t i = 0; i <= nt; ++i) {
    const auto lv = out.u.level(i);
    out.bc_trace_x0.coeffs.push_back(lv[1]);
    double m2 = 0.0;
    for (std::size_t j = 0; j + 1 < lv.size(); ++j) m2 += lv[j + 1] * inv_gamma[j];
    out.bc_trace_x1.coeffs.push_back(m2);
  }
  return out;
}

double residual_check(const ForwardResult& result, const ProblemSpec& spec) {
  const std::size_t depth = std::min({result.bc_trace_x0.size(), result.bc_trace_x1.size(), spec.mu1.size(),
                                      spec.mu2.size()});
  if (depth == 0) throw SolverError("residual_check: no boundary level to compare");
  double worst = 0.0;
  for (std::size_t i = 0; i < depth; ++i) {
    const double e1 = std::abs(result.bc_trace_x0.coeffs[i] - spec.mu1.coeffs[i]) /
                      std::max(1.0, std::abs(spec.mu1.coeffs[i]));
    const double e2 = std::abs(result.bc_trace_x1.coeffs[i] - spec.mu2.coeffs[i]) /
                      std::max(1.0, std::abs(spec.mu2.coeffs[i]));
    worst = std::max({worst, e1, e2});
  }
  return worst;
}

}  // namespace fts

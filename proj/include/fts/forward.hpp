#pragma once

#include "fts/problem.hpp"
#include "fts/series.hpp"

namespace fts {

/// Marched solution and its Neumann-like traces: m1_i = D_x^β u at x = 0,
/// m2_i = D_x^β u at x = 1, one entry per time level.
struct ForwardResult {
  BiFracSeries u;
  TSeries bc_trace_x0;
  TSeries bc_trace_x1;
};

/// Marches a_{i+1,j} = a_{i,j+2} + Σ_{k≤min(j,kmax)} p_k B_β(k,j−k) f_{i,j−k}
/// from level 0 = φ, over the trapezoid Jmax(i+1) = Jmax(i) − 2 with
/// Jmax(0) = |φ| − 1. Throws WidthError if Jmax(nt) < 1, DomainError if p is
/// longer than kmax + 1.
ForwardResult forward_march(const ProblemSpec& spec, const XSeries& p);

/// Max over reported levels of |m·_i − μ·_i| / max(1, |μ·_i|), both traces.
/// Throws SolverError if no level can be compared.
double residual_check(const ForwardResult& result, const ProblemSpec& spec);

}  // namespace fts

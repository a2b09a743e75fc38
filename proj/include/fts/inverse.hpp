#pragma once

#include <cstddef>
#include <optional>

#include "fts/problem.hpp"
#include "fts/series.hpp"

namespace fts {

enum class RecoveryMode { Separable, Newton };

struct RecoveryReport {
  XSeries p;
  RecoveryMode mode = RecoveryMode::Separable;
  std::optional<double> lambda;
  double forward_residual = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  /// Newton only: numerical rank of the trace Jacobian at the returned p is
  /// below kmax + 1.
  bool rank_deficient = false;
};

struct SeparableOptions {
  double tol_sep = 1e-9;
  /// converged is reported when the re-solved forward residual is within this.
  double residual_tol = 1e-6;
};

struct NewtonOptions {
  std::size_t max_iter = 100;
  double tol = 1e-10;
  double fd_step = 1e-6;
  std::size_t max_halvings = 30;
};

/// Triangular solve for data consistent with u = E_α(λt^α)·Φ(x):
/// p_m = [λφ_m − φ_{m+2} − Σ_{k<m} p_k B_β(k,m−k) φ_{m−k}] / φ₀, m = 0..kmax,
/// with λ read off the geometric ratio of μ₂.
///
/// Throws SolverError for a non-self-coupled source, DegenerateData when
/// φ₀ = 0 or μ₂ carries no ratio, NotSeparable when μ₂ fails the ratio test.
RecoveryReport recover_separable(const ProblemSpec& spec, const SeparableOptions& opts = {});

/// Damped Gauss-Newton on the stacked, scaled trace mismatches of levels
/// 1..nt, started at p = 0 with a forward-difference Jacobian.
///
/// Levels are brought in one at a time, each stage warm-started from the
/// previous one; the first stages are underdetermined and take the
/// minimum-norm step. Non-convergence is reported, not thrown. Throws
/// SolverError when 2·nt < kmax + 1.
RecoveryReport recover_newton(const ProblemSpec& spec, const NewtonOptions& opts = {});

/// Separable solve, falling back to Newton on NotSeparable or a non-self-coupled source.
RecoveryReport recover_auto(const ProblemSpec& spec, const SeparableOptions& sep = {},
                            const NewtonOptions& newton = {});

}  // namespace fts

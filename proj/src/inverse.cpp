#include "fts/inverse.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "fts/errors.hpp"
#include "fts/forward.hpp"
#include "fts/special_fn.hpp"

namespace fts {

RecoveryReport recover_separable(const ProblemSpec& spec, const SeparableOptions& opts) {
  if (!spec.self_coupled()) throw SolverError("recover_separable: requires a self-coupled source (f = u)");
  const auto& phi = spec.phi.coeffs;
  if (phi.empty() || phi[0] == 0.0) throw DegenerateData("recover_separable: phi_0 is zero");

  const auto& mu2 = spec.mu2.coeffs;
  const std::size_t depth = std::min(mu2.size(), spec.nt + 1);
  std::size_t first = depth;
  for (std::size_t i = 0; i < depth; ++i) {
    if (mu2[i] != 0.0) {
      first = i;
      break;
    }
  }
  if (first + 1 >= depth) throw DegenerateData("recover_separable: mu2 has no nonzero ratio to estimate lambda");
  const double lambda = mu2[first + 1] / mu2[first];
  for (std::size_t i = first; i + 1 < depth; ++i) {
    if (std::abs(mu2[i + 1] - lambda * mu2[i]) > opts.tol_sep * std::max(1.0, std::abs(mu2[i]))) {
      throw NotSeparable("recover_separable: mu2 is not geometric at index " + std::to_string(i + 1));
    }
  }

  const double beta = spec.orders.beta();
  if (phi.size() < spec.kmax + 3) throw WidthError("recover_separable: phi too short for kmax");
  std::vector<double> p(spec.kmax + 1, 0.0);
  for (std::size_t m = 0; m <= spec.kmax; ++m) {
    double rhs = lambda * phi[m] - phi[m + 2];
    for (std::size_t k = 0; k < m; ++k) rhs -= p[k] * frac_binom(k, m - k, beta) * phi[m - k];
    p[m] = rhs / phi[0];
  }

  RecoveryReport report;
  report.p = XSeries{beta, std::move(p)};
  report.mode = RecoveryMode::Separable;
  report.lambda = lambda;
  report.forward_residual = residual_check(forward_march(spec, report.p), spec);
  report.converged = report.forward_residual <= opts.residual_tol;
  return report;
}

namespace {

// Scaled trace mismatches of levels 1..levels, interleaved (m1_i, m2_i).
Eigen::VectorXd trace_residual(const ProblemSpec& spec, const Eigen::VectorXd& p, std::size_t levels) {
  const XSeries q{spec.orders.beta(), std::vector<double>(p.data(), p.data() + p.size())};
  const auto fr = forward_march(spec, q);
  Eigen::VectorXd r(2 * levels);
  for (std::size_t i = 1; i <= levels; ++i) {
    const double mu1 = spec.mu1.coeffs[i];
    const double mu2 = spec.mu2.coeffs[i];
    r(static_cast<Eigen::Index>(2 * (i - 1))) = (fr.bc_trace_x0.coeffs[i] - mu1) / std::max(1.0, std::abs(mu1));
    r(static_cast<Eigen::Index>(2 * i - 1)) = (fr.bc_trace_x1.coeffs[i] - mu2) / std::max(1.0, std::abs(mu2));
  }
  return r;
}

Eigen::MatrixXd fd_jacobian(const ProblemSpec& spec, const Eigen::VectorXd& p, const Eigen::VectorXd& r,
                            std::size_t levels, double step) {
  Eigen::MatrixXd jac(r.size(), p.size());
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    Eigen::VectorXd q = p;
    const double h = step * std::max(1.0, std::abs(p(k)));
    q(k) += h;
    jac.col(k) = (trace_residual(spec, q, levels) - r) / h;
  }
  return jac;
}

}  // namespace

RecoveryReport recover_newton(const ProblemSpec& spec, const NewtonOptions& opts) {
  const std::size_t unknowns = spec.kmax + 1;
  const std::size_t depth = spec.nt;
  if (2 * depth < unknowns) {
    throw SolverError("recover_newton: " + std::to_string(2 * depth) + " trace equations for " +
                      std::to_string(unknowns) + " unknowns; raise nt");
  }

  Eigen::VectorXd p = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(unknowns));
  std::size_t iterations = 0;

  for (std::size_t levels = 1; levels <= depth && iterations < opts.max_iter; ++levels) {
    Eigen::VectorXd r = trace_residual(spec, p, levels);
    while (iterations < opts.max_iter && r.lpNorm<Eigen::Infinity>() > opts.tol) {
      ++iterations;
      const Eigen::MatrixXd jac = fd_jacobian(spec, p, r, levels, opts.fd_step);
      const Eigen::VectorXd step = jac.completeOrthogonalDecomposition().solve(-r);
      const double norm0 = r.norm();
      double scale = 1.0;
      bool improved = false;
      for (std::size_t h = 0; h <= opts.max_halvings; ++h, scale *= 0.5) {
        const Eigen::VectorXd trial = p + scale * step;
        Eigen::VectorXd rt = trace_residual(spec, trial, levels);
        if (rt.norm() < norm0) {
          p = trial;
          r = std::move(rt);
          improved = true;
          break;
        }
      }
      if (!improved) break;  // stalled at this stage; bring in the next level
    }
  }

  const Eigen::VectorXd r = trace_residual(spec, p, depth);
  RecoveryReport report;
  report.p = XSeries{spec.orders.beta(), std::vector<double>(p.data(), p.data() + p.size())};
  report.mode = RecoveryMode::Newton;
  report.iterations = iterations;
  report.converged = r.lpNorm<Eigen::Infinity>() <= opts.tol;

  const Eigen::MatrixXd jac = fd_jacobian(spec, p, r, depth, opts.fd_step);
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
  const auto& sv = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv(k) > 1e-9 * sv(0)) ++rank;
  report.rank_deficient = sv.size() == 0 || sv(0) == 0.0 || static_cast<std::size_t>(rank) < unknowns;

  report.forward_residual = residual_check(forward_march(spec, report.p), spec);
  return report;
}

RecoveryReport recover_auto(const ProblemSpec& spec, const SeparableOptions& sep, const NewtonOptions& newton) {
  if (spec.self_coupled()) {
    try {
      return recover_separable(spec, sep);
    } catch (const NotSeparable&) {
    }
  }
  return recover_newton(spec, newton);
}

}  // namespace fts

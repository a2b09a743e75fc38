#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fts/problem.hpp"

namespace fts {

enum class TableFormat { csv, text };

struct TableRequest {
  /// Built-in example (1 or 2); ignored when config_text is set.
  int example = 1;
  /// Custom config contents. Its p provides the reference column, computed
  /// at the config's own orders.
  std::optional<std::string> config_text;
  std::vector<double> alphas;
  std::vector<double> betas;
  double x_eval = 0.5;
  double t_start = 0.05;
  double t_step = 0.05;
  std::size_t rows = 10;
  std::optional<std::size_t> nt;
  std::optional<std::size_t> nx;
  std::optional<std::size_t> kmax;
  TableFormat format = TableFormat::csv;
  /// Worker threads for the (α, β) sweep; 0 = hardware concurrency.
  std::size_t jobs = 0;

  /// Throws ValidationError.
  void validate() const;
};

struct ErrorTable {
  std::vector<double> t;
  std::vector<double> exact;
  /// (α, β) per error column, alphas outer, betas inner.
  std::vector<std::pair<double, double>> cells;
  /// errors[row][column] = |u_method − exact|.
  std::vector<std::vector<double>> errors;
  /// Decimal places for the t column.
  int t_decimals = 2;
};

/// Closed-form classical solutions: e^{2t+x²} (example 1), e^{t+x³} (example 2).
double example_exact(int which, double x, double t);

/// Runs invert-then-forward at every grid cell. Output is independent of
/// the worker count.
ErrorTable compute_table(const TableRequest& req);

std::string render_csv(const ErrorTable& table);
std::string render_text(const ErrorTable& table);
std::string render(const ErrorTable& table, TableFormat format);

}  // namespace fts

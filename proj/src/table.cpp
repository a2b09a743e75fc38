#include "fts/table.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "fts/errors.hpp"
#include "fts/forward.hpp"
#include "fts/inverse.hpp"

namespace fts {

namespace {

bool in_unit_order(double v) { return v > 0.0 && v <= 1.0; }

int decimals_for(double start, double step) {
  for (int d = 2; d <= 8; ++d) {
    const double scale = std::pow(10.0, d);
    const auto exact = [scale](double v) { return std::abs(v * scale - std::round(v * scale)) < 1e-6; };
    if (exact(start) && exact(step)) return d;
  }
  return 8;
}

ProblemDocument base_document(const TableRequest& req) {
  ProblemDocument doc = req.config_text ? parse_document(*req.config_text) : example_document(req.example);
  if (req.nt) doc.nt = *req.nt;
  if (req.nx) doc.nx = *req.nx;
  if (req.kmax) doc.kmax = *req.kmax;
  return doc;
}

std::string order_label(double v) { return fmt::format("{}", v); }

}  // namespace

void TableRequest::validate() const {
  if (!config_text && example != 1 && example != 2) throw ValidationError("example", "expected 1 or 2");
  if (alphas.empty()) throw ValidationError("alphas", "at least one value required");
  if (betas.empty()) throw ValidationError("betas", "at least one value required");
  for (double a : alphas)
    if (!in_unit_order(a)) throw ValidationError("alphas", fmt::format("{} is outside (0, 1]", a));
  for (double b : betas)
    if (!in_unit_order(b)) throw ValidationError("betas", fmt::format("{} is outside (0, 1]", b));
  if (rows < 1) throw ValidationError("rows", "must be at least 1");
  if (!(x_eval >= 0.0)) throw ValidationError("x-eval", "must be nonnegative");
  const double t_last = t_start + static_cast<double>(rows - 1) * t_step;
  if (!(t_start >= 0.0 && t_start <= 1.0) || !(t_last >= 0.0 && t_last <= 1.0 + 1e-12)) {
    throw ValidationError("t", "t values must lie within [0, 1]");
  }
}

double example_exact(int which, double x, double t) {
  switch (which) {
    case 1:
      return std::exp(2.0 * t + x * x);
    case 2:
      return std::exp(t + x * x * x);
    default:
      throw ValidationError("example", "expected 1 or 2");
  }
}

ErrorTable compute_table(const TableRequest& req) {
  req.validate();
  const ProblemDocument base = base_document(req);

  ErrorTable table;
  table.t_decimals = decimals_for(req.t_start, req.t_step);
  for (std::size_t r = 0; r < req.rows; ++r) table.t.push_back(req.t_start + static_cast<double>(r) * req.t_step);

  if (req.config_text) {
    const ProblemSpec ref = materialize(base);
    if (!ref.p_known) throw ValidationError("p", "a custom table config must supply p for the reference column");
    const auto fr = forward_march(ref, *ref.p_known);
    for (double t : table.t) table.exact.push_back(eval_series(fr.u, req.x_eval, t));
  } else {
    for (double t : table.t) table.exact.push_back(example_exact(req.example, req.x_eval, t));
  }

  for (double a : req.alphas)
    for (double b : req.betas) table.cells.emplace_back(a, b);

  // Column-major scratch, one slot per cell; workers only write their own slot.
  std::vector<std::vector<double>> columns(table.cells.size());
  std::vector<std::exception_ptr> failures(table.cells.size());
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t c = next++; c < table.cells.size(); c = next++) {
      try {
        ProblemDocument doc = base;
        doc.alpha = table.cells[c].first;
        doc.beta = table.cells[c].second;
        const ProblemSpec spec = materialize(doc);
        const auto report = recover_auto(spec);
        const auto fr = forward_march(spec, report.p);
        auto& col = columns[c];
        for (std::size_t r = 0; r < table.t.size(); ++r) {
          col.push_back(std::abs(eval_series(fr.u, req.x_eval, table.t[r]) - table.exact[r]));
        }
      } catch (...) {
        failures[c] = std::current_exception();
      }
    }
  };

  std::size_t jobs = req.jobs ? req.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, table.cells.size());
  if (jobs <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < jobs; ++w) pool.emplace_back(work);
  }
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);

  table.errors.assign(table.t.size(), std::vector<double>(table.cells.size()));
  for (std::size_t c = 0; c < table.cells.size(); ++c)
    for (std::size_t r = 0; r < table.t.size(); ++r) table.errors[r][c] = columns[c][r];
  return table;
}

std::string render_csv(const ErrorTable& table) {
  // Column labels contain a comma, so they are quoted.
  std::string out = "t,exact";
  for (const auto& [a, b] : table.cells) out += fmt::format(",\"E({},{})\"", order_label(a), order_label(b));
  out += '\n';
  for (std::size_t r = 0; r < table.t.size(); ++r) {
    out += fmt::format("{:.{}f},{:.5f}", table.t[r], table.t_decimals, table.exact[r]);
    for (double e : table.errors[r]) out += fmt::format(",{:.2e}", e);
    out += '\n';
  }
  return out;
}

std::string render_text(const ErrorTable& table) {
  std::vector<std::string> header{"t", "Exact"};
  for (const auto& [a, b] : table.cells) header.push_back(fmt::format("E({},{})", order_label(a), order_label(b)));
  std::vector<std::vector<std::string>> body;
  for (std::size_t r = 0; r < table.t.size(); ++r) {
    std::vector<std::string> row{fmt::format("{:.{}f}", table.t[r], table.t_decimals),
                                 fmt::format("{:.5f}", table.exact[r])};
    for (double e : table.errors[r]) row.push_back(fmt::format("{:.2e}", e));
    body.push_back(std::move(row));
  }
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    width[c] = header[c].size();
    for (const auto& row : body) width[c] = std::max(width[c], row[c].size());
  }
  const auto line = [&](const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      s += fmt::format("{:>{}}", cells[c], width[c]);
      s += c + 1 < cells.size() ? "  " : "\n";
    }
    return s;
  };
  std::string out = line(header);
  std::size_t total = 0;
  for (std::size_t w : width) total += w;
  out += std::string(total + 2 * (width.size() - 1), '-') + '\n';
  for (const auto& row : body) out += line(row);
  return out;
}

std::string render(const ErrorTable& table, TableFormat format) {
  return format == TableFormat::csv ? render_csv(table) : render_text(table);
}

}  // namespace fts

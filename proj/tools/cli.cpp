#include "cli.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "fts/errors.hpp"
#include "fts/forward.hpp"
#include "fts/inverse.hpp"
#include "fts/problem.hpp"
#include "fts/special_fn.hpp"
#include "fts/table.hpp"

namespace fts::cli {

namespace {

struct Truncation {
  std::optional<std::size_t> nt;
  std::optional<std::size_t> nx;
  std::optional<std::size_t> kmax;

  void add_to(CLI::App& app) {
    app.add_option("--nt", nt, "Time levels");
    app.add_option("--nx", nx, "Spatial width guaranteed at the last level");
    app.add_option("--kmax", kmax, "Truncation index of p");
  }
  void apply(ProblemDocument& doc) const {
    if (nt) doc.nt = *nt;
    if (nx) doc.nx = *nx;
    if (kmax) doc.kmax = *kmax;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ProblemSpec load_spec(const std::string& path, const Truncation& trunc) {
  ProblemDocument doc = parse_document(read_file(path));
  trunc.apply(doc);
  return materialize(doc);
}

RecoveryReport invert(const ProblemSpec& spec, const std::string& mode) {
  if (mode == "separable") return recover_separable(spec);
  if (mode == "newton") return recover_newton(spec);
  return recover_auto(spec);
}

std::string format_report(const RecoveryReport& report, double beta) {
  std::string s;
  s += fmt::format("mode: {}\n", report.mode == RecoveryMode::Separable ? "separable" : "newton");
  if (report.lambda) s += fmt::format("lambda: {:.10g}\n", *report.lambda);
  s += fmt::format("{:>3}  {:>18}  {:>18}\n", "k", "p_k", "monomial");
  for (std::size_t k = 0; k < report.p.size(); ++k) {
    const double pk = report.p.coeffs[k];
    const double mono = pk * std::exp(-log_gamma(static_cast<double>(k) * beta + 1.0));
    s += fmt::format("{:>3}  {:>18.10g}  {:>18.10g}\n", k, pk, mono);
  }
  s += fmt::format("forward_residual: {:.3e}\n", report.forward_residual);
  s += fmt::format("iterations: {}\n", report.iterations);
  s += fmt::format("converged: {}\n", report.converged ? "true" : "false");
  if (report.rank_deficient) s += "rank_deficient: true\n";
  return s;
}

std::vector<double> parse_list(const std::string& csv, const std::string& field) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ValidationError(field, "cannot parse '" + item + "' as a number");
    }
  }
  return out;
}

struct Check {
  std::string name;
  std::function<bool()> run;
};

int selfcheck(std::ostream& out) {
  const auto near = [](const std::vector<double>& got, const std::vector<double>& want, double tol) {
    if (got.size() != want.size()) return false;
    for (std::size_t k = 0; k < got.size(); ++k)
      if (std::abs(got[k] - want[k]) > tol) return false;
    return true;
  };
  const std::vector<Check> checks{
      {"log_gamma(5) = ln 24", [] { return std::abs(log_gamma(5.0) - std::log(24.0)) < 1e-14; }},
      {"frac_binom(2, 2, 1) = 6", [] { return std::abs(frac_binom(2, 2, 1.0) - 6.0) < 1e-12; }},
      {"example 1 recovers p = -4x^2",
       [&] {
         const auto spec = materialize(example_document(1));
         return near(recover_separable(spec).p.coeffs, {0, 0, -8, 0, 0, 0, 0}, 1e-9);
       }},
      {"example 2 recovers p = 1 - 6x - 9x^4",
       [&] {
         const auto spec = materialize(example_document(2));
         return near(recover_separable(spec).p.coeffs, {1, -6, 0, 0, -216, 0, 0}, 1e-9);
       }},
      {"example 1 forward solution matches exp(2t + x^2)",
       [] {
         const auto spec = materialize(example_document(1));
         const auto fr = forward_march(spec, recover_separable(spec).p);
         for (int r = 1; r <= 10; ++r) {
           const double t = 0.05 * r;
           if (std::abs(eval_series(fr.u, 0.5, t) - std::exp(2 * t + 0.25)) > 1e-5) return false;
         }
         return true;
       }},
  };
  bool all = true;
  for (const auto& c : checks) {
    bool ok = false;
    try {
      ok = c.run();
    } catch (const std::exception&) {
      ok = false;
    }
    all = all && ok;
    out << (ok ? "[ok]   " : "[FAIL] ") << c.name << '\n';
  }
  return all ? kOk : kSolver;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fractional Taylor series solver for space-time fractional diffusion"};
  app.require_subcommand(1);

  std::string output;
  Truncation trunc;

  auto* fwd = app.add_subcommand("forward", "Evaluate the solution series at (x, t)");
  std::string fwd_config;
  double x = 0.0;
  double t = 0.0;
  bool do_invert = false;
  std::string fwd_mode = "auto";
  fwd->add_option("--config", fwd_config, "Problem config (JSON)")->required();
  fwd->add_option("--x", x, "Spatial point")->required();
  fwd->add_option("--t", t, "Time point")->required();
  fwd->add_flag("--invert", do_invert, "Recover p from the boundary data first");
  fwd->add_option("--mode", fwd_mode, "Inversion mode")->check(CLI::IsMember({"auto", "separable", "newton"}));
  fwd->add_option("--output", output, "Output file");
  trunc.add_to(*fwd);

  auto* inv = app.add_subcommand("invert", "Recover p(x) from initial and boundary data");
  std::string inv_config;
  std::string inv_mode = "auto";
  inv->add_option("--config", inv_config, "Problem config (JSON)")->required();
  inv->add_option("--mode", inv_mode, "Inversion mode")->check(CLI::IsMember({"auto", "separable", "newton"}));
  inv->add_option("--output", output, "Output file");
  trunc.add_to(*inv);

  auto* tab = app.add_subcommand("table", "Sweep (alpha, beta) and emit an absolute-error table");
  TableRequest req;
  std::string tab_config;
  std::string alphas = "1,0.9,0.7";
  std::string betas = "1,0.9,0.7";
  std::optional<double> x_eval;
  std::optional<double> t_start;
  std::optional<double> t_step;
  std::string format = "csv";
  auto* ex_opt = tab->add_option("--example", req.example, "Built-in example")->check(CLI::IsMember({1, 2}));
  tab->add_option("--config", tab_config, "Custom problem config (JSON, must include p)")->excludes(ex_opt);
  tab->add_option("--alphas", alphas, "Comma-separated time orders");
  tab->add_option("--betas", betas, "Comma-separated space orders");
  tab->add_option("--x-eval", x_eval, "Spatial evaluation point");
  tab->add_option("--t-start", t_start, "First t value");
  tab->add_option("--t-step", t_step, "t increment");
  tab->add_option("--rows", req.rows, "Number of t rows");
  tab->add_option("--format", format, "csv or text")->check(CLI::IsMember({"csv", "text"}));
  tab->add_option("--jobs", req.jobs, "Worker threads (0 = all cores)");
  tab->add_option("--output", output, "Output file");
  trunc.add_to(*tab);

  auto* chk = app.add_subcommand("selfcheck", "Run built-in sanity checks");
  chk->add_option("--output", output, "Output file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfig;
  }

  std::ostringstream buffer;
  int code = kOk;
  try {
    if (*fwd) {
      const ProblemSpec spec = load_spec(fwd_config, trunc);
      XSeries p;
      if (do_invert) {
        const auto report = invert(spec, fwd_mode);
        if (report.mode == RecoveryMode::Newton && !report.converged) {
          err << "error: Newton recovery did not converge\n";
          return kNotConverged;
        }
        p = report.p;
      } else if (spec.p_known) {
        p = *spec.p_known;
      } else {
        throw ValidationError("p", "config has no p; pass --invert to recover it");
      }
      const auto fr = forward_march(spec, p);
      buffer << fmt::format("{:.8g}\n", eval_series(fr.u, x, t));
    } else if (*inv) {
      const ProblemSpec spec = load_spec(inv_config, trunc);
      const auto report = invert(spec, inv_mode);
      buffer << format_report(report, spec.orders.beta());
      if (report.mode == RecoveryMode::Newton && !report.converged) code = kNotConverged;
    } else if (*tab) {
      if (!tab_config.empty()) req.config_text = read_file(tab_config);
      const bool ex2 = !req.config_text && req.example == 2;
      req.alphas = parse_list(alphas, "alphas");
      req.betas = parse_list(betas, "betas");
      req.x_eval = x_eval.value_or(ex2 ? 1.0 : 0.5);
      req.t_start = t_start.value_or(ex2 ? 0.005 : 0.05);
      req.t_step = t_step.value_or(ex2 ? 0.005 : 0.05);
      req.nt = trunc.nt;
      req.nx = trunc.nx;
      req.kmax = trunc.kmax;
      req.format = format == "text" ? TableFormat::text : TableFormat::csv;
      buffer << render(compute_table(req), req.format);
    } else if (*chk) {
      code = selfcheck(buffer);
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const Error& e) {
    err << "solver error: " << e.what() << '\n';
    return kSolver;
  }

  if (output.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(output, std::ios::binary);
    if (!file) {
      err << "error: cannot write '" << output << "'\n";
      return kConfig;
    }
    file << buffer.str();
  }
  return code;
}

}  // namespace fts::cli

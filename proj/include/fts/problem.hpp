#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fts/series.hpp"

namespace fts {

/// f = u: the source term is the solution itself.
struct SelfCoupled {};

/// f given as a bivariate series, one level per time index.
struct KnownSource {
  BiFracSeries f;
};

using SourceMode = std::variant<SelfCoupled, KnownSource>;

/// Fully materialized problem instance. Boundary data are coefficient
/// sequences in the normalized t-basis, indices 0..nt.
struct ProblemSpec {
  FracOrders orders{1.0, 1.0};
  std::size_t nt = 0;
  std::size_t nx = 1;
  std::size_t kmax = 0;
  XSeries phi;
  TSeries mu1;
  TSeries mu2;
  SourceMode f_mode = SelfCoupled{};
  std::optional<XSeries> p_known;

  bool self_coupled() const noexcept { return std::holds_alternative<SelfCoupled>(f_mode); }
  /// Throws ValidationError naming the first violated invariant.
  void validate() const;
};

// Declarative generators for φ, μ₁, μ₂.
struct ZeroGen {};
/// E_β(λ x^{mβ}).
struct MLPowerGen {
  std::size_t m = 1;
  double lambda = 1.0;
};
/// Separable boundary data λ^i·c synthesized from φ.
struct SeparableGen {
  double lambda = 1.0;
};
struct CoeffsGen {
  std::vector<double> values;
};
using GeneratorSpec = std::variant<ZeroGen, MLPowerGen, SeparableGen, CoeffsGen>;

/// A parsed but not yet expanded config document.
struct ProblemDocument {
  double alpha = 1.0;
  double beta = 1.0;
  std::size_t nt = 0;
  std::size_t nx = 0;
  std::size_t kmax = 0;
  GeneratorSpec phi;
  GeneratorSpec mu1;
  GeneratorSpec mu2;
  std::optional<std::vector<std::vector<double>>> f;  // nullopt = "self"
  std::optional<std::vector<double>> p;
};

enum class BoundarySide { x0, x1 };

/// Syntax and schema check only. Throws ConfigError with line/column for
/// malformed JSON, ValidationError for missing, unknown, or mistyped fields.
ProblemDocument parse_document(std::string_view text);

/// Expands generators and validates invariants.
ProblemSpec materialize(const ProblemDocument& doc);

ProblemSpec parse_problem(std::string_view text);

/// Serializes a document back to the config schema.
std::string dump_document(const ProblemDocument& doc);

/// m_i = λ^i·c with c = Σ_j φ_{j+1}/Γ(jβ+1) over the stored width of φ
/// (x1) or c = φ₁ (x0), for i = 0..nt.
TSeries synthesize_boundary(const XSeries& phi, double lambda, std::size_t nt, BoundarySide at,
                            double alpha = 1.0);

/// The two worked examples: E_β(x^{2β}) with λ = 2, and E_β(x^{3β}) with λ = 1,
/// self-coupled source, homogeneous data at x = 0.
ProblemDocument example_document(int which, double alpha = 1.0, double beta = 1.0);

}  // namespace fts

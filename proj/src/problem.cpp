#include "fts/problem.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <json.hpp>
#include <set>

#include "fts/errors.hpp"
#include "fts/special_fn.hpp"

namespace fts {

using nlohmann::json;

namespace {

void require_object(const json& j, const std::string& field) {
  if (!j.is_object()) throw ValidationError(field, "expected an object");
}

void reject_unknown(const json& j, const std::string& field, std::initializer_list<const char*> allowed) {
  const std::set<std::string> names(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items()) {
    if (!names.contains(key)) {
      throw ValidationError(field.empty() ? key : field + "." + key, "unknown field");
    }
  }
}

const json& member(const json& j, const std::string& parent, const char* key) {
  const auto it = j.find(key);
  const std::string field = parent.empty() ? key : parent + "." + key;
  if (it == j.end()) throw ValidationError(field, "required field is missing");
  return *it;
}

std::string path(const std::string& parent, const char* key) {
  return parent.empty() ? key : parent + "." + key;
}

double real_field(const json& j, const std::string& parent, const char* key) {
  const json& v = member(j, parent, key);
  if (!v.is_number()) throw ValidationError(path(parent, key), "expected a number");
  return v.get<double>();
}

std::size_t count_field(const json& j, const std::string& parent, const char* key) {
  const json& v = member(j, parent, key);
  if (!v.is_number_integer()) throw ValidationError(path(parent, key), "expected an integer");
  if (v.is_number_unsigned()) return v.get<std::size_t>();
  const auto s = v.get<std::int64_t>();
  if (s < 0) throw ValidationError(path(parent, key), "must be nonnegative");
  return static_cast<std::size_t>(s);
}

std::vector<double> real_array(const json& v, const std::string& field) {
  if (!v.is_array()) throw ValidationError(field, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw ValidationError(field + "[" + std::to_string(i) + "]", "expected a number");
    const double x = v[i].get<double>();
    if (!std::isfinite(x)) throw ValidationError(field + "[" + std::to_string(i) + "]", "must be finite");
    out.push_back(x);
  }
  return out;
}

std::string kind_of(const json& j, const std::string& field) {
  const json& k = member(j, field, "kind");
  if (!k.is_string()) throw ValidationError(field + ".kind", "expected a string");
  return k.get<std::string>();
}

GeneratorSpec parse_phi(const json& j) {
  const std::string field = "phi";
  require_object(j, field);
  const std::string kind = kind_of(j, field);
  if (kind == "ml_power") {
    reject_unknown(j, field, {"kind", "m"});
    const std::size_t m = count_field(j, field, "m");
    if (m < 1) throw ValidationError("phi.m", "must be ≥ 1");
    return MLPowerGen{m, 1.0};
  }
  if (kind == "coeffs") {
    reject_unknown(j, field, {"kind", "values"});
    return CoeffsGen{real_array(member(j, field, "values"), "phi.values")};
  }
  throw ValidationError("phi.kind", "expected \"ml_power\" or \"coeffs\", got \"" + kind + "\"");
}

GeneratorSpec parse_mu(const json& j, const std::string& field) {
  require_object(j, field);
  const std::string kind = kind_of(j, field);
  if (kind == "zero") {
    reject_unknown(j, field, {"kind"});
    return ZeroGen{};
  }
  if (kind == "separable") {
    reject_unknown(j, field, {"kind", "lambda"});
    return SeparableGen{real_field(j, field, "lambda")};
  }
  if (kind == "coeffs") {
    reject_unknown(j, field, {"kind", "values"});
    return CoeffsGen{real_array(member(j, field, "values"), field + ".values")};
  }
  throw ValidationError(field + ".kind", "expected \"zero\", \"separable\" or \"coeffs\", got \"" + kind + "\"");
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  const std::size_t end = std::min(byte == 0 ? 0 : byte - 1, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

TSeries expand_mu(const GeneratorSpec& gen, const XSeries& phi, std::size_t nt, BoundarySide side,
                  double alpha) {
  if (std::holds_alternative<ZeroGen>(gen)) return TSeries{alpha, std::vector<double>(nt + 1, 0.0)};
  if (const auto* s = std::get_if<SeparableGen>(&gen)) return synthesize_boundary(phi, s->lambda, nt, side, alpha);
  if (const auto* c = std::get_if<CoeffsGen>(&gen)) return TSeries{alpha, c->values};
  throw ValidationError(side == BoundarySide::x0 ? "mu1" : "mu2", "ml_power is not a boundary generator");
}

json generator_json(const GeneratorSpec& gen) {
  return std::visit(
      [](const auto& g) -> json {
        using G = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<G, ZeroGen>) return json{{"kind", "zero"}};
        else if constexpr (std::is_same_v<G, MLPowerGen>) return json{{"kind", "ml_power"}, {"m", g.m}};
        else if constexpr (std::is_same_v<G, SeparableGen>) return json{{"kind", "separable"}, {"lambda", g.lambda}};
        else return json{{"kind", "coeffs"}, {"values", g.values}};
      },
      gen);
}

}  // namespace

void ProblemSpec::validate() const {
  const std::size_t need = nx + 2 * nt + 1;
  if (phi.size() < need) {
    throw ValidationError("phi", "width " + std::to_string(phi.size()) + " is below the required nx + 2*nt + 1 = " +
                                     std::to_string(need));
  }
  if (mu1.size() < nt + 1) {
    throw ValidationError("mu1", "needs at least nt + 1 = " + std::to_string(nt + 1) + " coefficients");
  }
  if (mu2.size() < nt + 1) {
    throw ValidationError("mu2", "needs at least nt + 1 = " + std::to_string(nt + 1) + " coefficients");
  }
  if (kmax > nx) throw ValidationError("kmax", "must not exceed nx");
  if (p_known && p_known->size() > kmax + 1) {
    throw ValidationError("p", "has more than kmax + 1 coefficients");
  }
  if (const auto* src = std::get_if<KnownSource>(&f_mode)) {
    if (src->f.nt() + 1 < nt) throw ValidationError("f", "needs at least nt time levels");
    for (std::size_t i = 0; i < nt; ++i) {
      const std::size_t w = phi.size() - 1 - 2 * (i + 1);
      if (src->f.width(i) < w) {
        throw ValidationError("f", "level " + std::to_string(i) + " needs width " + std::to_string(w + 1));
      }
    }
  }
}

ProblemDocument parse_document(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte);
    throw ConfigError(std::string("malformed config: ") + e.what(), line, column);
  }
  require_object(root, "<root>");
  reject_unknown(root, "", {"alpha", "beta", "nt", "nx", "kmax", "phi", "mu1", "mu2", "f", "p"});

  ProblemDocument doc;
  doc.alpha = real_field(root, "", "alpha");
  doc.beta = real_field(root, "", "beta");
  doc.nt = count_field(root, "", "nt");
  doc.nx = count_field(root, "", "nx");
  doc.kmax = count_field(root, "", "kmax");
  doc.phi = parse_phi(member(root, "", "phi"));
  doc.mu1 = parse_mu(member(root, "", "mu1"), "mu1");
  doc.mu2 = parse_mu(member(root, "", "mu2"), "mu2");

  const json& f = member(root, "", "f");
  if (f.is_string()) {
    if (f.get<std::string>() != "self") throw ValidationError("f", "expected \"self\" or a coeffs2d object");
  } else {
    require_object(f, "f");
    if (kind_of(f, "f") != "coeffs2d") throw ValidationError("f.kind", "expected \"coeffs2d\"");
    reject_unknown(f, "f", {"kind", "values"});
    const json& rows = member(f, "f", "values");
    if (!rows.is_array() || rows.empty()) throw ValidationError("f.values", "expected a nonempty array of arrays");
    std::vector<std::vector<double>> levels;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      levels.push_back(real_array(rows[i], "f.values[" + std::to_string(i) + "]"));
      if (levels.back().empty()) throw ValidationError("f.values[" + std::to_string(i) + "]", "empty level");
    }
    doc.f = std::move(levels);
  }

  if (const auto it = root.find("p"); it != root.end()) {
    require_object(*it, "p");
    if (kind_of(*it, "p") != "coeffs") throw ValidationError("p.kind", "expected \"coeffs\"");
    reject_unknown(*it, "p", {"kind", "values"});
    doc.p = real_array(member(*it, "p", "values"), "p.values");
  }
  return doc;
}

ProblemSpec materialize(const ProblemDocument& doc) {
  if (!(doc.alpha > 0.0 && doc.alpha <= 1.0)) throw ValidationError("alpha", "must lie in (0, 1]");
  if (!(doc.beta > 0.0 && doc.beta <= 1.0)) throw ValidationError("beta", "must lie in (0, 1]");

  ProblemSpec spec;
  spec.orders = FracOrders(doc.alpha, doc.beta);
  spec.nt = doc.nt;
  spec.nx = doc.nx;
  spec.kmax = doc.kmax;

  if (const auto* g = std::get_if<MLPowerGen>(&doc.phi)) {
    spec.phi = XSeries{doc.beta, ml_power_coeffs(doc.beta, g->m, doc.nx + 2 * doc.nt, g->lambda)};
  } else if (const auto* c = std::get_if<CoeffsGen>(&doc.phi)) {
    spec.phi = XSeries{doc.beta, c->values};
  } else {
    throw ValidationError("phi", "expected an ml_power or coeffs generator");
  }
  spec.mu1 = expand_mu(doc.mu1, spec.phi, doc.nt, BoundarySide::x0, doc.alpha);
  spec.mu2 = expand_mu(doc.mu2, spec.phi, doc.nt, BoundarySide::x1, doc.alpha);

  if (doc.f) {
    try {
      spec.f_mode = KnownSource{BiFracSeries(spec.orders, *doc.f)};
    } catch (const DomainError& e) {
      throw ValidationError("f", e.what());
    }
  }
  if (doc.p) spec.p_known = XSeries{doc.beta, *doc.p};
  spec.validate();
  return spec;
}

ProblemSpec parse_problem(std::string_view text) { return materialize(parse_document(text)); }

std::string dump_document(const ProblemDocument& doc) {
  nlohmann::ordered_json j;
  j["alpha"] = doc.alpha;
  j["beta"] = doc.beta;
  j["nt"] = doc.nt;
  j["nx"] = doc.nx;
  j["kmax"] = doc.kmax;
  j["phi"] = generator_json(doc.phi);
  j["mu1"] = generator_json(doc.mu1);
  j["mu2"] = generator_json(doc.mu2);
  if (doc.f) j["f"] = {{"kind", "coeffs2d"}, {"values", *doc.f}};
  else j["f"] = "self";
  if (doc.p) j["p"] = {{"kind", "coeffs"}, {"values", *doc.p}};
  return j.dump(2) + "\n";
}

TSeries synthesize_boundary(const XSeries& phi, double lambda, std::size_t nt, BoundarySide at, double alpha) {
  double c = 0.0;
  if (at == BoundarySide::x0) {
    c = phi.at(1);
  } else {
    // D_x^β φ evaluated at x = 1: the shifted series summed against 1/Γ(jβ+1).
    for (std::size_t j = 0; j + 1 < phi.size(); ++j) {
      c += phi.coeffs[j + 1] * std::exp(-log_gamma(static_cast<double>(j) * phi.beta + 1.0));
    }
  }
  TSeries m{alpha, std::vector<double>(nt + 1, 0.0)};
  m.coeffs[0] = c;
  for (std::size_t i = 1; i <= nt; ++i) m.coeffs[i] = m.coeffs[i - 1] * lambda;
  return m;
}

ProblemDocument example_document(int which, double alpha, double beta) {
  ProblemDocument doc;
  doc.alpha = alpha;
  doc.beta = beta;
  doc.mu1 = ZeroGen{};
  doc.kmax = 6;
  switch (which) {
    case 1:
      doc.nt = 12;
      doc.nx = 30;
      doc.phi = MLPowerGen{2, 1.0};
      doc.mu2 = SeparableGen{2.0};
      break;
    case 2:
      doc.nt = 6;
      doc.nx = 30;
      doc.phi = MLPowerGen{3, 1.0};
      doc.mu2 = SeparableGen{1.0};
      break;
    default:
      throw ValidationError("example", "expected 1 or 2");
  }
  return doc;
}

}  // namespace fts

#include <doctest.h>

#include <cmath>
#include <random>

#include "fts/errors.hpp"
#include "fts/series.hpp"
#include "fts/special_fn.hpp"
#include "oracles.hpp"

using namespace fts;

namespace {

BiFracSeries random_series(std::mt19937& rng, FracOrders o, std::size_t nt, std::size_t width) {
  std::vector<BiFracSeries::Level> lv;
  for (std::size_t i = 0; i <= nt; ++i) lv.push_back(oracle::uniform(rng, width + 1, -10, 10));
  return BiFracSeries(o, std::move(lv));
}

/// Truncated E_α(λt^α) as a one-column bivariate series.
BiFracSeries ml_time(FracOrders o, double lambda, std::size_t nt) {
  std::vector<BiFracSeries::Level> lv;
  double v = 1.0;
  for (std::size_t i = 0; i <= nt; ++i, v *= lambda) lv.push_back({v});
  return BiFracSeries(o, std::move(lv));
}

}  // namespace

TEST_CASE("FracOrders bounds") {
  CHECK_NOTHROW(FracOrders(1.0, 1.0));
  CHECK_NOTHROW(FracOrders(0.01, 0.7));
  CHECK_THROWS_AS(FracOrders(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(FracOrders(1.2, 1.0), DomainError);
  CHECK_THROWS_AS(FracOrders(1.0, -0.1), DomainError);
  CHECK_THROWS_AS(FracOrders(std::nan(""), 1.0), DomainError);
}

TEST_CASE("BiFracSeries rejects empty or non-finite data") {
  const FracOrders o(1, 1);
  CHECK_THROWS_AS(BiFracSeries(o, {}), DomainError);
  CHECK_THROWS_AS(BiFracSeries(o, {{1.0}, {}}), DomainError);
  CHECK_THROWS_AS(BiFracSeries(o, {{1.0, INFINITY}}), DomainError);
  const BiFracSeries s(o, {{1, 2, 3, 4}, {5, 6}});
  CHECK(s.nt() == 1);
  CHECK(s.width(0) == 3);
  CHECK(s.min_width() == 1);
  CHECK(s(1, 1) == 6);
  CHECK_THROWS(s(1, 2));
}

TEST_CASE("eval_series examples") {
  const FracOrders o(0.8, 0.6);
  const BiFracSeries one(o, {{1.0}});
  CHECK(eval_series(one, 0.3, 0.9) == 1.0);
  CHECK(eval_series(one, 0.0, 0.0) == 1.0);

  const BiFracSeries t_only(FracOrders(1, 1), {{0.0}, {1.0}});
  CHECK(eval_series(t_only, 0.3, 0.0) == 0.0);

  CHECK_THROWS_AS(eval_series(one, -0.1, 0.5), DomainError);
  CHECK_THROWS_AS(eval_series(one, 0.1, -0.5), DomainError);
}

TEST_CASE("truncated e^{2t} e^{x^2} evaluates to e^{0.35}") {
  const std::size_t nt = 12, width = 24;
  std::vector<BiFracSeries::Level> lv(nt + 1, BiFracSeries::Level(width + 1, 0.0));
  for (std::size_t i = 0; i <= nt; ++i)
    for (std::size_t j = 0; 2 * j <= width; ++j)
      lv[i][2 * j] = std::pow(2.0, double(i)) * oracle::factorial(2 * j) / oracle::factorial(j);
  const BiFracSeries s(FracOrders(1, 1), lv);
  const double v = eval_series(s, 0.5, 0.05);
  CHECK(std::abs(v - std::exp(0.35)) < 1e-5);
  CHECK(v == doctest::Approx(1.4190675).epsilon(1e-7));
}

TEST_CASE("eval_series at t = 0 is the level-0 trace") {
  std::mt19937 rng(11);
  for (double beta : {1.0, 0.9, 0.7}) {
    const auto s = random_series(rng, FracOrders(0.9, beta), 3, 8);
    const XSeries lvl0{beta, std::vector<double>(s.level(0).begin(), s.level(0).end())};
    double direct = 0.0;
    for (std::size_t j = 0; j <= 8; ++j)
      direct += s(0, j) * std::pow(0.4, j * beta) / std::tgamma(j * beta + 1.0);
    CHECK(eval_series(s, 0.4, 0.0) == doctest::Approx(direct).epsilon(1e-13));
    CHECK(eval_series(lvl0, 0.4) == doctest::Approx(direct).epsilon(1e-13));
  }
}

TEST_CASE("dt_shift examples") {
  const FracOrders o(1, 1);
  const BiFracSeries c(o, {{3.0}, {0.0}});
  const auto d = dt_shift(c, 1);
  CHECK(d.nt() == 0);
  CHECK(d(0, 0) == 0.0);

  const auto s = BiFracSeries(o, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  const auto s2 = dt_shift(s, 2);
  REQUIRE(s2.nt() == 1);
  CHECK(s2.levels()[0] == std::vector<double>{2, 3});
  CHECK(s2.levels()[1] == std::vector<double>{3, 4});
  CHECK(dt_shift(s, 3).nt() == 0);
  CHECK_THROWS_AS(dt_shift(s, 4), WidthError);
}

TEST_CASE("dt_shift eigenproperty of E_alpha(lambda t^alpha)") {
  for (double alpha : {1.0, 0.9, 0.7})
    for (double lambda : {1.0, 2.0}) {
      const auto e = ml_time(FracOrders(alpha, 1.0), lambda, 10);
      const auto d = dt_shift(e, 1);
      REQUIRE(d.nt() == 9);
      for (std::size_t i = 0; i <= 9; ++i) CHECK(oracle::rel_err(d(i, 0), lambda * e(i, 0)) <= 1e-12);
    }
}

TEST_CASE("dt_shift agrees with the raw-basis derivative rule") {
  // Raw rule: D_t^α Σ g t^{iα} x^{jβ} has g'_{i,j} = g_{i+1,j} Γ((i+1)α+1)/Γ(iα+1).
  std::mt19937 rng(3);
  for (double alpha : {1.0, 0.9, 0.7}) {
    const FracOrders o(alpha, 0.8);
    const auto s = random_series(rng, o, 6, 5);
    const auto g = raw_from_normalized(s);
    RawCoeffs gd(6);
    for (std::size_t i = 0; i < 6; ++i) {
      gd[i].resize(g[i + 1].size());
      for (std::size_t j = 0; j < gd[i].size(); ++j)
        gd[i][j] = g[i + 1][j] * std::tgamma((i + 1) * alpha + 1.0) / std::tgamma(i * alpha + 1.0);
    }
    const auto back = normalized_from_raw(o, gd);
    const auto d = dt_shift(s, 1);
    for (std::size_t i = 0; i <= d.nt(); ++i)
      for (std::size_t j = 0; j <= d.width(i); ++j) CHECK(oracle::rel_err(back(i, j), d(i, j)) <= 1e-12);
  }
}

TEST_CASE("dx_shift examples") {
  const FracOrders o(1, 1);
  const auto phi = ml_power_coeffs(1.0, 2, 10);
  const BiFracSeries s(o, {phi});
  const auto d = dx_shift(s, 2);
  // (e^{x^2})'' = (2 + 4x^2) e^{x^2}; compare against the truncated polynomial differentiated twice.
  const auto mono = oracle::to_monomial(phi);
  std::vector<double> dd(mono.size() - 2);
  for (std::size_t n = 0; n < dd.size(); ++n) dd[n] = mono[n + 2] * double((n + 2) * (n + 1));
  const auto want = oracle::to_normalized(dd);
  REQUIRE(d.width(0) + 1 == want.size());
  for (std::size_t j = 0; j < want.size(); ++j) CHECK(d(0, j) == doctest::Approx(want[j]).epsilon(1e-14));
  CHECK(d(0, 0) == 2.0);
  CHECK(d(0, 2) == 12.0);

  const BiFracSeries c(o, {{5.0, 0.0}});
  CHECK(dx_shift(c, 1)(0, 0) == 0.0);
  CHECK_THROWS_AS(dx_shift(c, 2), WidthError);
}

TEST_CASE("dx_shift composes additively") {
  std::mt19937 rng(5);
  const auto s = random_series(rng, FracOrders(0.9, 0.7), 3, 9);
  const auto a = dx_shift(dx_shift(s, 1), 1);
  const auto b = dx_shift(s, 2);
  CHECK(a.levels() == b.levels());
}

TEST_CASE("mul_x examples") {
  const FracOrders o(1, 1);
  std::mt19937 rng(9);
  const auto s = random_series(rng, o, 2, 6);
  const auto id = mul_x(s, XSeries{1.0, {1.0}}, 6);
  CHECK(id.levels() == s.levels());

  const auto z = mul_x(s, XSeries{1.0, {0, 0, 0}}, 4);
  for (const auto& lv : z.levels())
    for (double v : lv) CHECK(v == 0.0);

  const BiFracSeries x(o, {{0, 1, 0}});
  const auto x2 = mul_x(x, XSeries{1.0, {0, 1}}, 2);
  CHECK(x2(0, 2) == 2.0);
  CHECK(x2(0, 0) == 0.0);
  CHECK(x2(0, 1) == 0.0);

  CHECK_THROWS_AS(mul_x(s, XSeries{1.0, {1.0}}, 7), WidthError);
}

TEST_CASE("mul_x at beta = 1 matches polynomial multiplication") {
  std::mt19937 rng(13);
  const FracOrders o(1, 1);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = random_series(rng, o, 2, 10);
    const XSeries q{1.0, oracle::uniform(rng, 5, -3, 3)};
    const auto c = mul_x(s, q, 10);
    for (std::size_t i = 0; i <= 2; ++i) {
      const auto want = oracle::to_normalized(oracle::poly_mul(
          oracle::to_monomial({s.levels()[i].begin(), s.levels()[i].end()}), oracle::to_monomial(q.coeffs), 11));
      for (std::size_t j = 0; j <= 10; ++j) {
        const double scale = std::max(1.0, std::abs(want[j]));
        CHECK(std::abs(c(i, j) - want[j]) / scale <= 1e-12);
      }
    }
  }
}

TEST_CASE("mul_x is bilinear and associates with the spatial product") {
  std::mt19937 rng(17);
  for (double beta : {1.0, 0.9, 0.7}) {
    const FracOrders o(0.8, beta);
    const auto s1 = random_series(rng, o, 2, 7);
    const auto s2 = random_series(rng, o, 2, 7);
    const XSeries q1{beta, oracle::uniform(rng, 8, -2, 2)};
    const XSeries q2{beta, oracle::uniform(rng, 8, -2, 2)};

    const auto lhs = mul_x(s1 + 3.0 * s2, q1, 7);
    const auto rhs = mul_x(s1, q1, 7) + 3.0 * mul_x(s2, q1, 7);
    const auto chained = mul_x(mul_x(s1, q1, 7), q2, 7);
    const auto fused = mul_x(s1, mul(q1, q2), 7);
    for (std::size_t i = 0; i <= 2; ++i)
      for (std::size_t j = 0; j <= 7; ++j) {
        CHECK(std::abs(lhs(i, j) - rhs(i, j)) <= 1e-11 * std::max(1.0, std::abs(rhs(i, j))));
        CHECK(std::abs(chained(i, j) - fused(i, j)) <= 1e-11 * std::max(1.0, std::abs(fused(i, j))));
      }
  }
}

TEST_CASE("mul_x uses the fractional binomial weights") {
  // x^{β}·x^{β} = x^{2β}: normalized coefficient Γ(2β+1)/Γ(β+1)^2.
  const double beta = 0.6;
  const BiFracSeries s(FracOrders(1, beta), {{0, 1, 0}});
  const auto c = mul_x(s, XSeries{beta, {0, 1}}, 2);
  const double want = std::tgamma(2 * beta + 1) / std::pow(std::tgamma(beta + 1), 2);
  CHECK(oracle::rel_err(c(0, 2), want) < 1e-13);
}

TEST_CASE("raw and normalized conversions") {
  const FracOrders o(1, 1);
  const BiFracSeries unit(o, {{1.0}});
  CHECK(raw_from_normalized(unit)[0][0] == 1.0);

  for (double beta : {1.0, 0.9, 0.7}) {
    const auto phi = ml_power_coeffs(beta, 2, 12);
    const auto g = raw_from_normalized(BiFracSeries(FracOrders(1, beta), {phi}));
    for (std::size_t j = 0; 2 * j <= 12; ++j) {
      CHECK(oracle::rel_err(g[0][2 * j], 1.0 / std::tgamma(j * beta + 1.0)) < 1e-12);
      if (2 * j + 1 <= 12) CHECK(g[0][2 * j + 1] == 0.0);
    }
  }

  std::mt19937 rng(19);
  for (double a : {1.0, 0.75})
    for (double b : {1.0, 0.6}) {
      const FracOrders ob(a, b);
      RawCoeffs g(5);
      for (auto& lv : g) lv = oracle::uniform(rng, 9, -10, 10);
      const auto back = raw_from_normalized(normalized_from_raw(ob, g));
      for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g[i].size(); ++j) CHECK(oracle::rel_err(back[i][j], g[i][j]) <= 1e-14);
    }
}

TEST_CASE("addition and scaling") {
  const FracOrders o(1, 1);
  const BiFracSeries a(o, {{1, 2, 3}, {4}});
  const BiFracSeries b(o, {{1, 1}, {1, 1}});
  const auto c = a + b;
  CHECK(c.levels() == std::vector<BiFracSeries::Level>{{2, 3}, {5}});
  CHECK((2.0 * a).levels() == std::vector<BiFracSeries::Level>{{2, 4, 6}, {8}});
  CHECK_THROWS_AS(a + BiFracSeries(FracOrders(0.5, 1), {{1}}), DomainError);
}

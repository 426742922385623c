#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "expg/model.hpp"
#include "expg/quadrature.hpp"
#include "expg/transform.hpp"

using namespace expg;

TEST_CASE("lambda = 0 recovers the base distribution") {
  auto base = BaseDistribution::weibull(2.0, 1.5);
  ExpGModel m(0.0, base);
  for (double x : {0.2, 0.9, 2.0}) {
    CHECK(m.cdf(x) == doctest::Approx(base.cdf(x)).epsilon(1e-15));
    CHECK(m.pdf(x) == doctest::Approx(base.pdf(x)).epsilon(1e-15));
  }
}

TEST_CASE("cdf composition and density normalization") {
  struct Case {
    ExpGModel m;
    double scale;
  } cases[] = {{ExpGModel(2.5, BaseDistribution::weibull(2.0, 1.5)), 3.0},
               {ExpGModel(-4.0, BaseDistribution::beta(2.0, 3.0)), 1.0},
               {ExpGModel(1.0, BaseDistribution::frechet(3.0, 1.0)), 2.0}};
  for (const auto& c : cases) {
    const auto& b = c.m.base();
    for (double u : {0.1, 0.5, 0.9}) {
      double x = b.quantile(u);
      CHECK(c.m.cdf(x) ==
            doctest::Approx(texp_cdf(c.m.lambda(), u)).epsilon(1e-13));
    }
    double hi = b.support_hi();
    auto r = integrate([&](double x) { return c.m.pdf(x); }, b.support_lo(),
                       hi, 1e-11, 1e-12, c.scale);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("quantile inverts cdf") {
  ExpGModel m(-3.0, BaseDistribution::weibull(1.7, 2.0));
  for (double u : {1e-4, 0.2, 0.5, 0.8, 1.0 - 1e-4})
    CHECK(m.cdf(m.quantile(u)) == doctest::Approx(u).epsilon(1e-11));
}

TEST_CASE("hazard = pdf / survival") {
  ExpGModel m(2.0, BaseDistribution::weibull(2.0, 1.0));
  for (double x : {0.3, 1.0, 2.2}) {
    CHECK(m.survival(x) == doctest::Approx(1.0 - m.cdf(x)).epsilon(1e-12));
    CHECK(m.hazard(x) ==
          doctest::Approx(m.pdf(x) / m.survival(x)).epsilon(1e-12));
  }
  // closed form: lambda g / (1 - e^{-lambda S_G}) with S_G = 1 - G
  double lam = 2.0, x = 1.0;
  const auto& b = m.base();
  double hz = lam * b.pdf(x) / (1.0 - std::exp(-lam * (1.0 - b.cdf(x))));
  CHECK(m.hazard(x) == doctest::Approx(hz).epsilon(1e-12));
}

TEST_CASE("logpdf agrees with log(pdf) and handles deep tails") {
  ExpGModel m(5.0, BaseDistribution::weibull(2.0, 1.0));
  for (double x : {0.1, 1.0, 3.0})
    CHECK(m.logpdf(x) == doctest::Approx(std::log(m.pdf(x))).epsilon(1e-12));
  CHECK(std::isfinite(m.logpdf(8.0)));  // pdf underflows around here
}

TEST_CASE("sampling is deterministic and matches the cdf") {
  ExpGModel m(1.5, BaseDistribution::weibull(2.0, 1.5));
  auto a = m.sample(1000, 42);
  auto b = m.sample(1000, 42);
  auto c = m.sample(1000, 43);
  CHECK(a == b);
  CHECK(a != c);
  // empirical cdf at the median within a few sigma of 1/2
  double med = m.quantile(0.5);
  double below = 0.0;
  for (double v : a) below += (v <= med);
  CHECK(below / 1000.0 == doctest::Approx(0.5).epsilon(0.12));
  // empirical mean against numeric mean
  double mean = std::accumulate(a.begin(), a.end(), 0.0) / a.size();
  auto r = integrate([&](double x) { return x * m.pdf(x); }, 0.0,
                     std::numeric_limits<double>::infinity(), 1e-10, 1e-11,
                     3.0);
  CHECK(mean == doctest::Approx(r.value).epsilon(0.05));
}

TEST_CASE("discrete branch: exp-Bernoulli pmf telescopes to 1") {
  for (double lam : {-3.0, 0.0, 2.0}) {
    ExpGModel m(lam, BaseDistribution::bernoulli(0.3));
    double p0 = m.pmf(0.0), p1 = m.pmf(1.0);
    CHECK(p0 + p1 == doctest::Approx(1.0).epsilon(1e-14));
    // pmf(x) = F(G(x)) - F(G(x^-)) with F the transform
    CHECK(p0 == doctest::Approx(texp_cdf(lam, 0.7)).epsilon(1e-14));
  }
  // lambda = 0 recovers the base pmf
  ExpGModel m0(0.0, BaseDistribution::bernoulli(0.3));
  CHECK(m0.pmf(1.0) == doctest::Approx(0.3).epsilon(1e-15));
}

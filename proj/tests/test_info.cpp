#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "expg/info.hpp"
#include "expg/quadrature.hpp"
#include "expg/transform.hpp"

using namespace expg;

TEST_CASE("KL closed forms agree with quadrature in both directions") {
  struct Case {
    ExpGModel m;
  } cases[] = {{ExpGModel(1.0, BaseDistribution::weibull(1.0, 1.0))},
               {ExpGModel(-3.0, BaseDistribution::beta(2.0, 3.0))},
               {ExpGModel(5.0, BaseDistribution::frechet(3.0, 1.0))}};
  for (const auto& c : cases) {
    for (auto dir : {KLDirection::G_vs_expG, KLDirection::expG_vs_G}) {
      DivergenceResult d = kl_divergence(c.m, dir);
      CHECK(d.discrepancy <= 1e-9);
      CHECK(d.closed_form >= 0.0);
    }
  }
}

TEST_CASE("KL closed-form values depend on lambda only") {
  // D(exp-G || G) at lambda = 1
  DivergenceResult d =
      kl_divergence(ExpGModel(1.0, BaseDistribution::weibull(2.0, 1.5)),
                    KLDirection::expG_vs_G);
  CHECK(d.closed_form == doctest::Approx(0.0406518523).epsilon(1e-9));
  // same lambda, different base: identical closed form
  DivergenceResult d2 = kl_divergence(
      ExpGModel(1.0, BaseDistribution::beta(2.0, 3.0)), KLDirection::expG_vs_G);
  CHECK(d.closed_form == doctest::Approx(d2.closed_form).epsilon(1e-15));
  // forward direction closed form lambda/2 - log rate
  DivergenceResult f =
      kl_divergence(ExpGModel(1.0, BaseDistribution::weibull(2.0, 1.5)),
                    KLDirection::G_vs_expG);
  CHECK(f.closed_form ==
        doctest::Approx(0.5 - log_rate_constant(1.0)).epsilon(1e-14));
  // both vanish at lambda = 0
  for (auto dir : {KLDirection::G_vs_expG, KLDirection::expG_vs_G})
    CHECK(kl_divergence(ExpGModel(0.0, BaseDistribution::weibull(1.0, 1.0)),
                        dir)
              .closed_form == doctest::Approx(0.0));
}

TEST_CASE("constraint expectations") {
  ExpGModel m(1.0, BaseDistribution::weibull(1.0, 1.0));
  auto [c1, c2] = constraint_expectations(m);
  CHECK(c2 == doctest::Approx(dlog_rate(1.0)).epsilon(1e-15));
  // C2 is also E{G(X)} by direct quadrature
  auto r = integrate([&](double x) { return m.base().cdf(x) * m.pdf(x); },
                     0.0, std::numeric_limits<double>::infinity(), 1e-11,
                     1e-12, 2.0);
  CHECK(c2 == doctest::Approx(r.value).epsilon(1e-9));
  // C1 = E{log g(X)}
  auto r1 = integrate(
      [&](double x) { return m.base().logpdf(x) * m.pdf(x); }, 0.0,
      std::numeric_limits<double>::infinity(), 1e-11, 1e-12, 2.0);
  CHECK(c1 == doctest::Approx(r1.value).epsilon(1e-8));
}

TEST_CASE("entropy formula matches the direct integral") {
  struct Case {
    ExpGModel m;
    double scale;
  } cases[] = {{ExpGModel(1.0, BaseDistribution::weibull(1.0, 1.0)), 2.0},
               {ExpGModel(-2.0, BaseDistribution::beta(2.0, 3.0)), 1.0},
               {ExpGModel(3.0, BaseDistribution::weibull(2.0, 1.5)), 3.0}};
  for (const auto& c : cases) {
    double h = shannon_entropy(c.m);
    auto r = integrate(
        [&](double x) {
          double p = c.m.pdf(x);
          return p > 0.0 ? -p * c.m.logpdf(x) : 0.0;
        },
        c.m.base().support_lo(), c.m.base().support_hi(), 1e-11, 1e-12,
        c.scale);
    CHECK(h == doctest::Approx(r.value).epsilon(1e-7));
  }
  CHECK(shannon_entropy(ExpGModel(1.0, BaseDistribution::weibull(1.0, 1.0))) ==
        doctest::Approx(0.7263365013532952).epsilon(1e-9));
}

TEST_CASE("entropy drop from the base equals the reverse KL divergence") {
  // H(G) - H(exp-G) = D(exp-G || G) + (C1(lambda) - C1(0)) adjustments
  // cancel for the uniform base; use Beta(1,1) where g = 1 so C1 = 0.
  ExpGModel m(2.0, BaseDistribution::beta(1.0, 1.0));
  ExpGModel m0(0.0, BaseDistribution::beta(1.0, 1.0));
  double drop = shannon_entropy(m0) - shannon_entropy(m);
  DivergenceResult d = kl_divergence(m, KLDirection::expG_vs_G);
  CHECK(drop == doctest::Approx(d.closed_form).epsilon(1e-10));
}

TEST_CASE("maximum-entropy dominance under the constraint set") {
  for (auto m : {ExpGModel(1.0, BaseDistribution::weibull(1.0, 1.0)),
                 ExpGModel(2.0, BaseDistribution::beta(2.0, 2.0))}) {
    MaxEntReport rep = maxent_dominance_check(m, 10, 1);
    CHECK(rep.ok);
    CHECK(rep.dominated == rep.tested - rep.skipped);
    CHECK(rep.max_excess <= 1e-7);
  }
}

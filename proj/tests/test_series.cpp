#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "expg/series.hpp"

using namespace expg;

namespace {
// Brute-force coefficients of (sum_k a_k x^{k+c})^n by repeated polynomial
// multiplication, truncated to K terms.
std::vector<double> brute_power(const std::vector<double>& a, int n, int K) {
  std::vector<double> acc{1.0};
  for (int rep = 0; rep < n; ++rep) {
    std::vector<double> next(std::min<std::size_t>(K, acc.size() + a.size() - 1),
                             0.0);
    for (std::size_t i = 0; i < acc.size(); ++i)
      for (std::size_t j = 0; j < a.size(); ++j)
        if (i + j < next.size()) next[i + j] += acc[i] * a[j];
    acc = std::move(next);
  }
  acc.resize(K, 0.0);
  return acc;
}
}  // namespace

TEST_CASE("power_coeffs matches brute-force polynomial powers") {
  PowerSeries s;
  s.coeffs = {2.0, -1.0, 0.5, 0.25, -0.125};
  s.offset = 1.5;
  for (int n = 1; n <= 6; ++n) {
    PowerSeries p = power_coeffs(s, n);
    CHECK(p.offset == doctest::Approx(1.5 * n));
    auto ref = brute_power(s.coeffs, n, static_cast<int>(s.coeffs.size()));
    REQUIRE(p.coeffs.size() == ref.size());
    for (std::size_t k = 0; k < ref.size(); ++k)
      CHECK(p.coeffs[k] == doctest::Approx(ref[k]).epsilon(1e-12));
  }
  // longer series, higher power
  PowerSeries s2;
  s2.coeffs.resize(20);
  for (int k = 0; k < 20; ++k) s2.coeffs[k] = 1.0 / (1.0 + k * k);
  s2.offset = 2.0;
  PowerSeries p2 = power_coeffs(s2, 5);
  auto ref2 = brute_power(s2.coeffs, 5, 20);
  for (std::size_t k = 0; k < ref2.size(); ++k)
    CHECK(p2.coeffs[k] == doctest::Approx(ref2[k]).epsilon(1e-11));
}

TEST_CASE("exp-Weibull closed-form moment vs quadrature") {
  CHECK(expweibull_moment(0.0, 1.5, 2.0, 1.0) ==
        doctest::Approx(1.5 * std::tgamma(1.5)).epsilon(1e-14));
  CHECK(expweibull_moment(1.0, 1.0, 1.0, 1.0) ==
        doctest::Approx(0.76698835407943425).epsilon(1e-13));
  for (double lam : {-10.0, -3.0, -1.0, 0.0, 1.0, 3.0, 10.0}) {
    for (int r : {1, 2}) {
      ExpGModel m(lam, BaseDistribution::weibull(2.0, 1.5));
      double cf = expweibull_moment(lam, 1.5, 2.0, r);
      CHECK(cf == doctest::Approx(quadrature_moment(m, r)).epsilon(1e-10));
    }
  }
}

TEST_CASE("exp-Weibull moment extreme-lambda branches") {
  // lambda < -10: integral representation of the alternating sum
  ExpGModel m_neg(-40.0, BaseDistribution::weibull(1.0, 1.0));
  CHECK(expweibull_moment(-40.0, 1.0, 1.0, 1.0) ==
        doctest::Approx(quadrature_moment(m_neg, 1)).epsilon(1e-9));
  // lambda > 700: log-domain summation (direct sum would overflow)
  double v = expweibull_moment(800.0, 1.0, 1.0, 1.0);
  CHECK(std::isfinite(v));
  ExpGModel m_pos(800.0, BaseDistribution::weibull(1.0, 1.0));
  CHECK(v == doctest::Approx(quadrature_moment(m_pos, 1)).epsilon(1e-8));
}

TEST_CASE("exp-Frechet moment via the reciprocal identity") {
  for (double lam : {-3.0, 0.0, 2.0}) {
    ExpGModel m(lam, BaseDistribution::frechet(3.0, 1.2));
    CHECK(expfrechet_moment(lam, 1.2, 3.0, 1.0) ==
          doctest::Approx(quadrature_moment(m, 1)).epsilon(1e-9));
  }
  // r >= alpha has no finite moment
  CHECK_THROWS(expfrechet_moment(1.0, 1.0, 2.0, 2.0));
}

TEST_CASE("PWM series route for Weibull") {
  ExpGModel m(3.0, BaseDistribution::weibull(2.0, 1.5));
  MomentResult r = moment_pwm_series(m, 1);
  CHECK(r.route == MomentRoute::Series);
  CHECK(r.converged);
  CHECK(r.value ==
        doctest::Approx(expweibull_moment(3.0, 1.5, 2.0, 1.0)).epsilon(1e-10));
  // |lambda| beyond the alternating-sum budget falls back, value still good
  ExpGModel m2(40.0, BaseDistribution::weibull(2.0, 1.5));
  MomentResult r2 = moment_pwm_series(m2, 1);
  CHECK(r2.route == MomentRoute::Quadrature);
  CHECK(r2.value ==
        doctest::Approx(expweibull_moment(40.0, 1.5, 2.0, 1.0))
            .epsilon(1e-9));
}

TEST_CASE("beta-base power-series route: genuine series where conditioned") {
  // terminating base series (integer b): series holds across the grid
  for (double lam : {-10.0, -3.0, 0.0, 3.0, 10.0}) {
    ExpGModel m(lam, BaseDistribution::beta(2.0, 1.0));
    MomentResult r = moment_powerseries(m, 1);
    CHECK(r.route == MomentRoute::Series);
    CHECK(r.value == doctest::Approx(quadrature_moment(m, 1)).epsilon(1e-8));
  }
  // Beta(2,3): well-conditioned at moderate lambda
  for (double lam : {-3.0, -1.0, 1.0}) {
    ExpGModel m(lam, BaseDistribution::beta(2.0, 3.0));
    MomentResult r = moment_powerseries(m, 1);
    CHECK(r.route == MomentRoute::Series);
    CHECK(r.value == doctest::Approx(quadrature_moment(m, 1)).epsilon(1e-6));
  }
  // severely ill-conditioned cases must take the recorded fallback and
  // still return an accurate value
  for (double lam : {-10.0, 10.0}) {
    ExpGModel m(lam, BaseDistribution::beta(2.0, 3.0));
    MomentResult r = moment_powerseries(m, 1);
    CHECK(r.route == MomentRoute::Quadrature);
    CHECK(r.value == doctest::Approx(quadrature_moment(m, 1)).epsilon(1e-10));
  }
}

TEST_CASE("moment dispatch picks the documented route per family") {
  CHECK(moment(ExpGModel(1.0, BaseDistribution::weibull(1.0, 1.0)), 1).route ==
        MomentRoute::ClosedForm);
  CHECK(moment(ExpGModel(1.0, BaseDistribution::frechet(3.0, 1.0)), 1).route ==
        MomentRoute::ClosedForm);
  CHECK(moment(ExpGModel(1.0, BaseDistribution::beta(2.0, 3.0)), 1).route ==
        MomentRoute::Series);
  MomentResult rb =
      moment(ExpGModel(1.0, BaseDistribution::bernoulli(0.3)), 1);
  CHECK(rb.route == MomentRoute::Discrete);
  ExpGModel mb(1.0, BaseDistribution::bernoulli(0.3));
  CHECK(rb.value == doctest::Approx(mb.pmf(1.0)).epsilon(1e-15));
}

TEST_CASE("order-statistic mixture weights") {
  for (double lam : {-2.0, 0.7, 5.0}) {
    for (int n : {2, 4, 6}) {
      for (int i = 1; i <= n; ++i) {
        auto w = order_stat_weights(lam, i, n);
        CHECK(static_cast<int>(w.size()) == n);
        double tot = 0.0;
        for (const auto& c : w) tot += c.weight;
        CHECK(tot == doctest::Approx(1.0).epsilon(1e-11));
        for (int j = 0; j < n; ++j)
          CHECK(w[j].lambda == doctest::Approx(lam * (j + 1)));
      }
    }
  }
  CHECK(order_stat_weights(0.0, 1, 3).empty());
}

TEST_CASE("order-statistic density: two routes agree") {
  ExpGModel m(1.5, BaseDistribution::weibull(2.0, 1.5));
  for (int n : {2, 5}) {
    for (int i = 1; i <= n; ++i) {
      for (double x : {0.4, 1.0, 2.0}) {
        double d = order_stat_pdf(m, i, n, x, OrderStatRoute::Direct);
        double e = order_stat_pdf(m, i, n, x, OrderStatRoute::Expansion);
        CHECK(std::fabs(d - e) <= 1e-10 * std::max(1.0, std::fabs(d)));
      }
    }
  }
}

TEST_CASE("order-statistic moments against quadrature of the direct pdf") {
  struct Case {
    ExpGModel m;
    int i, n;
    double expect;
  } cases[] = {
      {ExpGModel(1.0, BaseDistribution::weibull(1.0, 1.0)), 1, 2,
       0.35497710094634},
      {ExpGModel(2.0, BaseDistribution::beta(2.0, 2.0)), 2, 2,
       0.49534965091134},
  };
  for (const auto& c : cases) {
    MomentResult r = order_stat_moment(c.m, c.i, c.n, 1);
    CHECK(r.value == doctest::Approx(c.expect).epsilon(1e-9));
  }
  // lambda = 0 path (degenerate mixture) still works
  MomentResult r0 = order_stat_moment(
      ExpGModel(0.0, BaseDistribution::weibull(1.0, 1.0)), 1, 2, 1);
  CHECK(r0.value == doctest::Approx(0.5).epsilon(1e-9));  // min of two Exp(1)
}

TEST_CASE("skewness/kurtosis: symmetric base at lambda=0, monotone trend") {
  auto [sk0, ku0] =
      skewness_kurtosis(ExpGModel(0.0, BaseDistribution::beta(2.0, 2.0)));
  CHECK(std::fabs(sk0) < 1e-12);
  CHECK(ku0 == doctest::Approx(15.0 / 7.0).epsilon(1e-10));
  // concentration reduces the right tail of a heavy-ish Weibull
  auto [skA, kuA] =
      skewness_kurtosis(ExpGModel(2.0, BaseDistribution::weibull(4.0, 0.5)));
  auto [skB, kuB] =
      skewness_kurtosis(ExpGModel(10.0, BaseDistribution::weibull(4.0, 0.5)));
  CHECK(skA > skB);
  CHECK(std::isfinite(kuA));
  CHECK(std::isfinite(kuB));
}

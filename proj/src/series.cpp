#include "expg/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "expg/quadrature.hpp"
#include "expg/special.hpp"
#include "expg/transform.hpp"

namespace expg {

namespace {

constexpr long double kEpsLong = 1.1e-19L;  // unit roundoff, 80-bit extended

// Roundoff budget: when the estimated relative roundoff of a series exceeds
// this, the value is recomputed by quadrature and the route records it.
constexpr double kRoundoffBudget = 1e-6;

// Gradshteyn-Ryzhik powering recurrence for (sum_k a_k x^k)^n, to L terms.
// err tracks a first-order forward roundoff bound per coefficient; the
// recurrence cancels heavily for sign-alternating inputs, so the bound must
// be propagated through it rather than read off the final magnitudes.
struct PowCoeffs {
  std::vector<long double> c, err;
};

PowCoeffs power_coeffs_impl(const std::vector<long double>& a, int n,
                            int L) {
  if (a.empty() || a[0] == 0.0L)
    throw std::invalid_argument("power_coeffs: leading coefficient is zero");
  PowCoeffs out;
  out.c.assign(L, 0.0L);
  out.err.assign(L, 0.0L);
  out.c[0] = std::pow(a[0], static_cast<long double>(n));
  out.err[0] = std::fabs(out.c[0]) * kEpsLong;
  int amax = static_cast<int>(a.size()) - 1;
  for (int m = 1; m < L; ++m) {
    long double s = 0.0L, e = 0.0L;
    int kmax = std::min(m, amax);
    for (int k = 1; k <= kmax; ++k) {
      long double f = (static_cast<long double>(n) * k - m + k) * a[k];
      s += f * out.c[m - k];
      e += std::fabs(f) *
           (out.err[m - k] + std::fabs(out.c[m - k]) * kEpsLong);
    }
    long double d = static_cast<long double>(m) * a[0];
    out.c[m] = s / d;
    out.err[m] = e / std::fabs(d) + std::fabs(out.c[m]) * kEpsLong;
  }
  return out;
}

double binom(int n, int k) {
  double v = 1.0;
  for (int j = 1; j <= k; ++j) v *= static_cast<double>(n - k + j) / j;
  return v;
}

double quad_scale(const BaseDistribution& base) {
  switch (base.family()) {
    case Family::Weibull:
    case Family::Frechet:
      return 2.0 * base.theta()[1];
    default:
      return 1.0;
  }
}

MomentResult quadrature_fallback(const ExpGModel& m, int r, int terms,
                                 double roundoff) {
  MomentResult res;
  res.value = quadrature_moment(m, r);
  res.route = MomentRoute::Quadrature;
  res.terms = terms;
  res.converged = true;
  res.roundoff = roundoff;
  return res;
}

// log of sum_{k>=0} lambda^k/(k!(k+1)^p) for lambda > 700: log-domain
// summation over a window around the peak at k ~ lambda.
double texp_moment_logsum(double lambda, double p) {
  auto log_term = [&](double k) {
    return k * std::log(lambda) - std::lgamma(k + 1.0) -
           p * std::log(k + 1.0);
  };
  long long kstar = static_cast<long long>(lambda);
  double m = log_term(static_cast<double>(kstar));
  long double acc = 0.0L;
  for (long long k = kstar; k >= 0; --k) {
    double lt = log_term(static_cast<double>(k));
    if (lt - m < -45.0) break;
    acc += std::exp(lt - m);
  }
  for (long long k = kstar + 1;; ++k) {
    double lt = log_term(static_cast<double>(k));
    if (lt - m < -45.0) break;
    acc += std::exp(lt - m);
  }
  return m + std::log(static_cast<double>(acc));
}

// sum_{k>=0} lambda^k / (k! (k+1)^p), for p > 0, stable over all lambda.
double texp_moment_sum(double lambda, double p) {
  if (!(p > 0.0))
    throw std::domain_error("expweibull_moment: moment does not exist");
  if (lambda == 0.0) return 1.0;
  if (lambda > 700.0) return std::exp(texp_moment_logsum(lambda, p));
  if (lambda < -10.0) {
    // Alternating series loses ~ e^{|lambda|} digits; use the
    // cancellation-free integral representation with t = u^{1/p}:
    // S = 1/(p Gamma(p)) \int_0^inf exp(-u^{1/p} + lambda e^{-u^{1/p}}) du
    double inv_p = 1.0 / p;
    auto f = [&](double u) {
      double t = std::pow(u, inv_p);
      return std::exp(-t + lambda * std::exp(-t));
    };
    QuadResult q =
        integrate(f, 0.0, std::numeric_limits<double>::infinity(), 1e-300,
                  1e-12, std::max(1.0, p));
    return q.value / (p * std::exp(std::lgamma(p)));
  }
  long double s = 0.0L, lampow = 1.0L;  // lambda^k / k!
  for (int k = 0; k < 20000; ++k) {
    long double t =
        lampow / std::pow(static_cast<long double>(k + 1),
                          static_cast<long double>(p));
    s += t;
    lampow *= lambda / (k + 1);
    if (k > std::fabs(lambda) + 5 &&
        std::fabs(lampow) < 1e-18L * std::fabs(s))
      break;
  }
  return static_cast<double>(s);
}

}  // namespace

const char* route_name(MomentRoute r) {
  switch (r) {
    case MomentRoute::Series:
      return "series";
    case MomentRoute::ClosedForm:
      return "closed-form";
    case MomentRoute::Quadrature:
      return "quadrature";
    case MomentRoute::Discrete:
      return "discrete";
  }
  return "?";
}

PowerSeries power_coeffs(const PowerSeries& s, int n) {
  if (n < 1) throw std::invalid_argument("power_coeffs: n >= 1");
  std::vector<long double> a(s.coeffs.begin(), s.coeffs.end());
  PowCoeffs pc =
      power_coeffs_impl(a, n, static_cast<int>(s.coeffs.size()));
  PowerSeries out;
  out.offset = s.offset * n;
  out.complete = s.complete;
  out.coeffs.assign(pc.c.begin(), pc.c.end());
  return out;
}

MomentResult moment_pwm_series(const ExpGModel& m, int r,
                               TruncationPolicy pol) {
  Family fam = m.base().family();
  if (fam != Family::Weibull && fam != Family::Frechet)
    throw std::invalid_argument(
        "moment_pwm_series: closed-form-cdf base (Weibull/Frechet) required");
  if (r < 1) throw std::invalid_argument("moment_pwm_series: r >= 1");
  if (fam == Family::Frechet && r >= m.base().theta()[0])
    throw std::domain_error("moment_pwm_series: moment does not exist (r >= "
                            "alpha for Frechet base)");
  double lambda = m.lambda();
  if (std::fabs(lambda) > 30.0) return quadrature_fallback(m, r, 0, 0.0);

  const BaseDistribution& base = m.base();
  double scale = quad_scale(base);
  auto pwm = [&](int j) {
    auto f = [&](double y) {
      double g = base.pdf(y);
      if (g == 0.0) return 0.0;
      return std::pow(y, static_cast<double>(r)) *
             std::pow(base.cdf(y), static_cast<double>(j)) * g;
    };
    QuadResult q =
        integrate(f, base.support_lo(),
                  std::numeric_limits<double>::infinity(), 1e-300, 1e-13,
                  scale);
    return q.value;
  };

  double i0 = pwm(0);  // base r-th moment, scale reference
  long double tot = i0, sumabs = std::fabs(i0), w = 1.0L;
  MomentResult res;
  res.terms = 1;
  if (lambda != 0.0) {
    res.converged = false;
    for (int j = 1; j < pol.max_terms; ++j) {
      w *= -static_cast<long double>(lambda) / j;
      long double t = w * static_cast<long double>(pwm(j));
      tot += t;
      sumabs += std::fabs(t);
      ++res.terms;
      if (j > std::fabs(lambda) + 5 &&
          std::fabs(t) < pol.rel_tol * std::fabs(tot)) {
        res.converged = true;
        break;
      }
    }
  }
  // per-term quadrature carries ~1e-13 relative error; cancellation in the
  // alternating sum amplifies it by sumabs/|tot|
  res.roundoff =
      static_cast<double>(sumabs / std::max(std::fabs(tot), 1e-300L)) * 1e-13;
  if (res.roundoff > kRoundoffBudget || !res.converged)
    return quadrature_fallback(m, r, res.terms, res.roundoff);
  res.value = rate_constant(lambda) * static_cast<double>(tot);
  res.route = MomentRoute::Series;
  return res;
}

MomentResult moment_powerseries(const ExpGModel& m, int r,
                                TruncationPolicy pol) {
  if (m.base().family() != Family::Beta)
    throw std::invalid_argument("moment_powerseries: beta base required");
  if (r < 1) throw std::invalid_argument("moment_powerseries: r >= 1");
  double a = m.base().theta()[0], b = m.base().theta()[1];
  double lambda = m.lambda();
  // E(Y^v) = B(v+a,b)/B(a,b), in extended precision: these factors multiply
  // the huge alternating power-series coefficients, so their relative error
  // sets the noise floor of the whole double series
  const long double al = a, bl = b;
  const long double lbab_l = lgammal(al) + lgammal(bl) - lgammal(al + bl);
  auto base_moment = [&](double v) {
    long double vl = v;
    return expl(lgammal(vl + al) + lgammal(bl) - lgammal(vl + al + bl) -
                lbab_l);
  };
  constexpr long double kEpsBm = 5e-18L;  // lgammal-based moment accuracy
  MomentResult res;
  if (lambda == 0.0) {
    res.value = base_moment(r);
    res.terms = 1;
    return res;
  }
  if (std::fabs(lambda) > 30.0) return quadrature_fallback(m, r, 0, 0.0);

  bool b_integer = (b == std::floor(b));
  int K0 = b_integer ? static_cast<int>(b) : std::min(pol.max_terms, 120);
  PowerSeries s = beta_series_coeffs(a, b, K0);
  std::vector<long double> ac(s.coeffs.begin(), s.coeffs.end());

  const long double ey_r = base_moment(r);
  long double tot = ey_r;  // j = 0 term
  long double w = 1.0L;
  long double acc_noise = 0.0L;  // accumulated summation roundoff
  res.terms = 1;
  res.converged = false;
  double tail_rel = 0.0;
  for (int j = 1; j < pol.max_terms; ++j) {
    w *= -static_cast<long double>(lambda) / j;
    // remaining true tail: |term_true| <= |lambda|^j/j! E(Y^r) since
    // G <= 1, and the tail is geometrically dominated once j > |lambda|
    long double tail = std::fabs(w) * ey_r;
    if (j > std::fabs(lambda))
      tail /= 1.0L - std::fabs(lambda) / (j + 1.0L);
    tail_rel = static_cast<double>(tail / std::fabs(tot));

    int len = std::min((K0 - 1) * j + 1, pol.max_terms);
    if (len < 1) len = 1;
    PowCoeffs pc = power_coeffs_impl(ac, j, len);
    long double inner = 0.0L, inner_err = 0.0L;
    for (int k = 0; k < len; ++k) {
      long double bmk = base_moment(r + k + static_cast<double>(j) * a);
      long double t = pc.c[k] * bmk;
      inner += t;
      inner_err += pc.err[k] * bmk + std::fabs(t) * kEpsBm;
    }
    long double term = w * inner;
    long double noise = std::fabs(w) * inner_err;
    if (j > std::fabs(lambda) + 5 &&
        acc_noise + noise > 0.1 * kRoundoffBudget * std::fabs(tot)) {
      // roundoff wall: past this point computed terms are increasingly
      // noise; accept the partial sum only if the certified true tail is
      // already negligible
      res.converged = tail_rel < kRoundoffBudget;
      break;
    }
    tot += term;
    acc_noise += noise;
    ++res.terms;
    if (j > std::fabs(lambda) + 5 &&
        std::fabs(term) < pol.rel_tol * std::fabs(tot) &&
        tail_rel < 10.0 * pol.rel_tol) {
      res.converged = true;
      break;
    }
  }
  res.roundoff = std::max(
      static_cast<double>(acc_noise / std::fabs(tot)), tail_rel);
  if (!res.converged || res.roundoff > kRoundoffBudget)
    return quadrature_fallback(m, r, res.terms, res.roundoff);
  res.value = rate_constant(lambda) * static_cast<double>(tot);
  res.route = MomentRoute::Series;
  return res;
}

double expweibull_moment(double lambda, double beta, double alpha, double r) {
  if (!(alpha > 0.0 && beta > 0.0))
    throw std::invalid_argument("expweibull_moment: alpha, beta > 0");
  double p = r / alpha + 1.0;
  if (!(p > 0.0))
    throw std::domain_error("expweibull_moment: moment does not exist");
  double log_base = r * std::log(beta) + std::lgamma(p);
  if (lambda == 0.0) return std::exp(log_base);
  if (lambda > 700.0) {
    // rate(-lambda) = lambda/(e^lambda - 1); log = log(lambda) - lambda here
    double logv = std::log(lambda) - lambda + log_base +
                  texp_moment_logsum(lambda, p);
    return std::exp(logv);
  }
  return rate_constant(-lambda) * std::exp(log_base) *
         texp_moment_sum(lambda, p);
}

double expfrechet_moment(double lambda, double beta, double alpha, double r) {
  if (!(alpha > 0.0 && beta > 0.0))
    throw std::invalid_argument("expfrechet_moment: alpha, beta > 0");
  if (r >= alpha)
    throw std::domain_error("expfrechet_moment: moment requires r < alpha");
  // reciprocal property: X ~ exp-Frechet(lambda, beta, alpha) iff
  // 1/X ~ exp-Weibull(-lambda, 1/beta, alpha), and E(X^r) = E((1/X)^{-r})
  return expweibull_moment(-lambda, 1.0 / beta, alpha, -r);
}

double quadrature_moment(const ExpGModel& m, double r) {
  const BaseDistribution& base = m.base();
  if (base.discrete()) {
    double s = 0.0;
    for (double x : base.support_points())
      s += std::pow(x, r) * m.pmf(x);
    return s;
  }
  auto f = [&](double x) { return std::pow(x, r) * m.pdf(x); };
  double hi = base.support_hi();
  QuadResult q = integrate(f, base.support_lo(), hi, 1e-300, 1e-11,
                           quad_scale(base));
  return q.value;
}

MomentResult moment(const ExpGModel& m, int r, TruncationPolicy pol) {
  if (r < 1) throw std::invalid_argument("moment: r >= 1");
  const BaseDistribution& base = m.base();
  MomentResult res;
  switch (base.family()) {
    case Family::Weibull:
      res.value = expweibull_moment(m.lambda(), base.theta()[1],
                                    base.theta()[0], r);
      res.route = MomentRoute::ClosedForm;
      return res;
    case Family::Frechet:
      res.value = expfrechet_moment(m.lambda(), base.theta()[1],
                                    base.theta()[0], r);
      res.route = MomentRoute::ClosedForm;
      return res;
    case Family::Beta:
      return moment_powerseries(m, r, pol);
    case Family::Bernoulli:
      res.value = quadrature_moment(m, r);
      res.route = MomentRoute::Discrete;
      return res;
  }
  throw std::logic_error("moment: unknown family");
}

std::vector<OrderStatComponent> order_stat_weights(double lambda, int i,
                                                   int n) {
  if (!(1 <= i && i <= n))
    throw std::invalid_argument("order_stat_weights: 1 <= i <= n");
  std::vector<OrderStatComponent> out;
  if (lambda == 0.0) return out;  // degenerate; callers use the direct route
  // f F^{i-1+k} expands over e^{-lambda(j+1)G}; collect weights on the
  // component concentrations lambda*(j+1), j = 0..n-1
  std::vector<double> w(n, 0.0);
  double inv_b = std::exp(-lbeta(i, n - i + 1));
  double denom = -std::expm1(-lambda);  // 1 - e^{-lambda}
  for (int k = 0; k <= n - i; ++k) {
    int mth = i - 1 + k;
    double outer = binom(n - i, k) * ((k % 2) ? -1.0 : 1.0) * inv_b *
                   std::pow(denom, -static_cast<double>(mth));
    for (int j = 0; j <= mth; ++j) {
      double coef = outer * binom(mth, j) * ((j % 2) ? -1.0 : 1.0);
      w[j] += coef * rate_constant(lambda) /
              rate_constant(lambda * (j + 1));
    }
  }
  out.reserve(n);
  for (int j = 0; j < n; ++j)
    out.push_back({lambda * (j + 1), w[j]});
  return out;
}

double order_stat_pdf(const ExpGModel& m, int i, int n, double x,
                      OrderStatRoute route) {
  if (!(1 <= i && i <= n))
    throw std::invalid_argument("order_stat_pdf: 1 <= i <= n");
  if (route == OrderStatRoute::Expansion && m.lambda() != 0.0) {
    double s = 0.0;
    for (const auto& comp : order_stat_weights(m.lambda(), i, n)) {
      ExpGModel cm(comp.lambda, m.base());
      s += comp.weight * cm.pdf(x);
    }
    return s;
  }
  double F = m.cdf(x);
  return std::exp(-lbeta(i, n - i + 1)) * m.pdf(x) *
         std::pow(F, i - 1.0) * std::pow(1.0 - F, static_cast<double>(n - i));
}

MomentResult order_stat_moment(const ExpGModel& m, int i, int n, int r,
                               TruncationPolicy pol) {
  if (!(1 <= i && i <= n))
    throw std::invalid_argument("order_stat_moment: 1 <= i <= n");
  MomentResult res;
  if (m.lambda() == 0.0) {
    auto f = [&](double x) {
      return std::pow(x, static_cast<double>(r)) *
             order_stat_pdf(m, i, n, x);
    };
    QuadResult q = integrate(f, m.base().support_lo(), m.base().support_hi(),
                             1e-300, 1e-11, quad_scale(m.base()));
    res.value = q.value;
    res.route = MomentRoute::Quadrature;
    res.converged = q.converged;
    return res;
  }
  double s = 0.0;
  for (const auto& comp : order_stat_weights(m.lambda(), i, n)) {
    ExpGModel cm(comp.lambda, m.base());
    MomentResult inner = moment(cm, r, pol);
    s += comp.weight * inner.value;
    res.terms += std::max(inner.terms, 1);
    res.converged = res.converged && inner.converged;
    res.roundoff = std::max(res.roundoff, inner.roundoff);
  }
  res.value = s;
  res.route = MomentRoute::Series;
  return res;
}

std::pair<double, double> skewness_kurtosis(const ExpGModel& m,
                                            TruncationPolicy pol) {
  double mu[5] = {1.0};
  for (int r = 1; r <= 4; ++r) mu[r] = moment(m, r, pol).value;
  double var = mu[2] - mu[1] * mu[1];
  if (!(var > 0.0))
    throw std::domain_error("skewness_kurtosis: nonpositive variance");
  double m3 = mu[3] - 3.0 * mu[1] * mu[2] + 2.0 * mu[1] * mu[1] * mu[1];
  double m4 = mu[4] - 4.0 * mu[1] * mu[3] + 6.0 * mu[1] * mu[1] * mu[2] -
              3.0 * mu[1] * mu[1] * mu[1] * mu[1];
  return {m3 / std::pow(var, 1.5), m4 / (var * var)};
}

}  // namespace expg

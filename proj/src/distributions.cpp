#include "expg/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "expg/special.hpp"

namespace expg {

namespace {
const double kInf = std::numeric_limits<double>::infinity();

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw std::invalid_argument(std::string(what) +
                                " must be strictly positive and finite");
}
}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::Weibull: return "weibull";
    case Family::Beta: return "beta";
    case Family::Frechet: return "frechet";
    case Family::Bernoulli: return "bernoulli";
  }
  return "?";
}

Family family_from_name(const std::string& name) {
  if (name == "weibull") return Family::Weibull;
  if (name == "beta") return Family::Beta;
  if (name == "frechet") return Family::Frechet;
  if (name == "bernoulli") return Family::Bernoulli;
  throw std::invalid_argument("unknown family: " + name);
}

BaseDistribution::BaseDistribution(Family f, std::vector<double> theta)
    : family_(f), theta_(std::move(theta)) {
  if (f == Family::Bernoulli) points_ = {0.0, 1.0};
}

BaseDistribution BaseDistribution::weibull(double alpha, double beta) {
  require_positive(alpha, "weibull alpha");
  require_positive(beta, "weibull beta");
  return BaseDistribution(Family::Weibull, {alpha, beta});
}

BaseDistribution BaseDistribution::beta(double a, double b) {
  require_positive(a, "beta a");
  require_positive(b, "beta b");
  return BaseDistribution(Family::Beta, {a, b});
}

BaseDistribution BaseDistribution::frechet(double alpha, double beta) {
  require_positive(alpha, "frechet alpha");
  require_positive(beta, "frechet beta");
  return BaseDistribution(Family::Frechet, {alpha, beta});
}

BaseDistribution BaseDistribution::bernoulli(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("bernoulli p must lie strictly inside (0,1)");
  return BaseDistribution(Family::Bernoulli, {p});
}

BaseDistribution BaseDistribution::with_theta(
    const std::vector<double>& theta) const {
  switch (family_) {
    case Family::Weibull: return weibull(theta.at(0), theta.at(1));
    case Family::Beta: return beta(theta.at(0), theta.at(1));
    case Family::Frechet: return frechet(theta.at(0), theta.at(1));
    case Family::Bernoulli: return bernoulli(theta.at(0));
  }
  throw std::logic_error("bad family");
}

double BaseDistribution::support_lo() const { return 0.0; }

double BaseDistribution::support_hi() const {
  switch (family_) {
    case Family::Weibull:
    case Family::Frechet: return kInf;
    case Family::Beta: return 1.0;
    case Family::Bernoulli: return 1.0;
  }
  return kInf;
}

bool BaseDistribution::in_support(double x) const {
  if (family_ == Family::Bernoulli) return x == 0.0 || x == 1.0;
  return x > support_lo() && x < support_hi();
}

std::vector<std::string> BaseDistribution::param_names() const {
  switch (family_) {
    case Family::Weibull:
    case Family::Frechet: return {"alpha", "beta"};
    case Family::Beta: return {"a", "b"};
    case Family::Bernoulli: return {"p"};
  }
  return {};
}

double BaseDistribution::cdf(double x) const {
  if (std::isnan(x)) throw std::domain_error("cdf: x is NaN");
  switch (family_) {
    case Family::Weibull: {
      if (x <= 0.0) return 0.0;
      double t = std::pow(x / theta_[1], theta_[0]);
      return -std::expm1(-t);
    }
    case Family::Beta: {
      if (x <= 0.0) return 0.0;
      if (x >= 1.0) return 1.0;
      return inc_beta(x, theta_[0], theta_[1]);
    }
    case Family::Frechet: {
      if (x <= 0.0) return 0.0;
      return std::exp(-std::pow(theta_[1] / x, theta_[0]));
    }
    case Family::Bernoulli: {
      if (x < 0.0) return 0.0;
      if (x < 1.0) return 1.0 - theta_[0];
      return 1.0;
    }
  }
  return 0.0;
}

double BaseDistribution::logpdf(double x) const {
  if (!in_support(x)) throw std::domain_error("logpdf: x outside support");
  switch (family_) {
    case Family::Weibull: {
      double alpha = theta_[0], beta = theta_[1];
      double t = std::pow(x / beta, alpha);
      return std::log(alpha) - alpha * std::log(beta) +
             (alpha - 1.0) * std::log(x) - t;
    }
    case Family::Beta: {
      double a = theta_[0], b = theta_[1];
      return (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) -
             lbeta(a, b);
    }
    case Family::Frechet: {
      double alpha = theta_[0], beta = theta_[1];
      double s = std::pow(beta / x, alpha);
      return std::log(alpha) + alpha * std::log(beta) -
             (alpha + 1.0) * std::log(x) - s;
    }
    case Family::Bernoulli:
      throw std::logic_error("logpdf unsupported for discrete base");
  }
  return 0.0;
}

double BaseDistribution::pdf(double x) const {
  if (family_ == Family::Bernoulli)
    throw std::logic_error("pdf unsupported for discrete base");
  if (!in_support(x)) return 0.0;
  return std::exp(logpdf(x));
}

double BaseDistribution::quantile(double u) const {
  if (std::isnan(u) || u < 0.0 || u > 1.0)
    throw std::domain_error("quantile: u outside [0,1]");
  switch (family_) {
    case Family::Weibull: {
      if (u <= 0.0) return 0.0;
      if (u >= 1.0) return kInf;
      return theta_[1] * std::pow(-std::log1p(-u), 1.0 / theta_[0]);
    }
    case Family::Frechet: {
      if (u <= 0.0) return 0.0;
      if (u >= 1.0) return kInf;
      return theta_[1] * std::pow(-std::log(u), -1.0 / theta_[0]);
    }
    case Family::Beta: {
      if (u <= 0.0) return 0.0;
      if (u >= 1.0) return 1.0;
      // bracketed Newton on I_x(a,b) = u
      double a = theta_[0], b = theta_[1];
      double lo = 0.0, hi = 1.0, x = a / (a + b);
      for (int it = 0; it < 200; ++it) {
        double fu = inc_beta(x, a, b) - u;
        if (fu > 0.0) hi = x; else lo = x;
        double dens = (x > 0.0 && x < 1.0)
                          ? std::exp((a - 1.0) * std::log(x) +
                                     (b - 1.0) * std::log1p(-x) - lbeta(a, b))
                          : 0.0;
        double step = dens > 0.0 ? fu / dens : 0.0;
        double xn = x - step;
        if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
        if (std::fabs(xn - x) < 1e-15 * std::max(1.0, std::fabs(x))) {
          x = xn;
          break;
        }
        x = xn;
      }
      return x;
    }
    case Family::Bernoulli:
      return (u <= 1.0 - theta_[0]) ? 0.0 : 1.0;
  }
  return 0.0;
}

const std::vector<double>& BaseDistribution::support_points() const {
  if (family_ != Family::Bernoulli)
    throw std::logic_error("support_points: continuous base");
  return points_;
}

double BaseDistribution::pmf_point(double x) const {
  if (family_ != Family::Bernoulli)
    throw std::logic_error("pmf_point: continuous base");
  if (x == 0.0) return 1.0 - theta_[0];
  if (x == 1.0) return theta_[0];
  throw std::domain_error("pmf_point: x outside support");
}

std::vector<double> BaseDistribution::score(double x) const {
  if (!in_support(x)) throw std::domain_error("score: x outside support");
  switch (family_) {
    case Family::Weibull: {
      double alpha = theta_[0], beta = theta_[1];
      double L = std::log(x / beta);
      double t = std::pow(x / beta, alpha);
      return {1.0 / alpha + L * (1.0 - t), (alpha / beta) * (t - 1.0)};
    }
    case Family::Beta: {
      double a = theta_[0], b = theta_[1];
      double psum = digamma(a + b);
      return {-digamma(a) + psum + std::log(x),
              -digamma(b) + psum + std::log1p(-x)};
    }
    case Family::Frechet: {
      double alpha = theta_[0], beta = theta_[1];
      double M = std::log(beta / x);
      double s = std::pow(beta / x, alpha);
      return {1.0 / alpha + M * (1.0 - s), (alpha / beta) * (1.0 - s)};
    }
    case Family::Bernoulli:
      throw std::logic_error("score unsupported for discrete base");
  }
  return {};
}

std::vector<double> BaseDistribution::cdf_grad(double x) const {
  if (!in_support(x)) throw std::domain_error("cdf_grad: x outside support");
  switch (family_) {
    case Family::Weibull: {
      double alpha = theta_[0], beta = theta_[1];
      double L = std::log(x / beta);
      double t = std::pow(x / beta, alpha);
      double e = std::exp(-t);
      return {e * t * L, -e * alpha * t / beta};
    }
    case Family::Beta: {
      auto [da, db] = inc_beta_partials(x, theta_[0], theta_[1]);
      return {da, db};
    }
    case Family::Frechet: {
      double alpha = theta_[0], beta = theta_[1];
      double M = std::log(beta / x);
      double s = std::pow(beta / x, alpha);
      double e = std::exp(-s);
      return {-e * s * M, -e * alpha * s / beta};
    }
    case Family::Bernoulli:
      throw std::logic_error("cdf_grad unsupported for discrete base");
  }
  return {};
}

std::vector<std::vector<double>> BaseDistribution::cdf_hess(double x) const {
  int d = dim();
  std::vector<std::vector<double>> h(d, std::vector<double>(d, 0.0));
  for (int j = 0; j < d; ++j) {
    double step = 1e-5 * std::max(1.0, std::fabs(theta_[j]));
    auto tp = theta_, tm = theta_;
    tp[j] += step;
    tm[j] -= step;
    auto gp = with_theta(tp).cdf_grad(x);
    auto gm = with_theta(tm).cdf_grad(x);
    for (int i = 0; i < d; ++i) h[i][j] = (gp[i] - gm[i]) / (2.0 * step);
  }
  // symmetrize
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      h[i][j] = h[j][i] = 0.5 * (h[i][j] + h[j][i]);
  return h;
}

std::vector<std::vector<double>> BaseDistribution::score_jac(double x) const {
  int d = dim();
  std::vector<std::vector<double>> jac(d, std::vector<double>(d, 0.0));
  for (int j = 0; j < d; ++j) {
    double step = 1e-5 * std::max(1.0, std::fabs(theta_[j]));
    auto tp = theta_, tm = theta_;
    tp[j] += step;
    tm[j] -= step;
    auto sp = with_theta(tp).score(x);
    auto sm = with_theta(tm).score(x);
    for (int i = 0; i < d; ++i) jac[i][j] = (sp[i] - sm[i]) / (2.0 * step);
  }
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      jac[i][j] = jac[j][i] = 0.5 * (jac[i][j] + jac[j][i]);
  return jac;
}

PowerSeries beta_series_coeffs(double a, double b, int K) {
  if (!(a > 0.0 && b > 0.0))
    throw std::invalid_argument("beta_series_coeffs: a,b > 0");
  if (K < 1) throw std::invalid_argument("beta_series_coeffs: K >= 1");
  PowerSeries s;
  s.offset = a;
  s.coeffs.resize(K, 0.0);
  double inv_beta = std::exp(-lbeta(a, b));
  // binom_k = coefficient of x^k in (1-x)^{b-1}
  double binom = 1.0;
  bool b_integer = (b == std::floor(b));
  for (int k = 0; k < K; ++k) {
    s.coeffs[k] = inv_beta * binom / (a + k);
    binom *= (k + 1.0 - b) / (k + 1.0);
    if (b_integer && k + 1 >= b) binom = 0.0;
  }
  if (b_integer) {
    s.complete = K >= static_cast<int>(b);
  } else {
    // tail term at x=0.9 as a convergence proxy
    double last = std::fabs(s.coeffs[K - 1]) * std::pow(0.9, K - 1.0);
    s.complete = last < 1e-12;
  }
  return s;
}

}  // namespace expg

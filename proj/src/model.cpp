#include "expg/model.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "expg/transform.hpp"

namespace expg {

ExpGModel::ExpGModel(double lambda, BaseDistribution base)
    : lambda_(lambda), base_(std::move(base)) {
  if (!std::isfinite(lambda_))
    throw std::invalid_argument("ExpGModel: lambda must be finite");
}

double ExpGModel::cdf(double x) const {
  return texp_cdf(lambda_, base_.cdf(x));
}

double ExpGModel::logpdf(double x) const {
  if (base_.discrete())
    throw std::logic_error("logpdf: discrete base, use pmf");
  return log_rate_constant(lambda_) + base_.logpdf(x) -
         lambda_ * base_.cdf(x);
}

double ExpGModel::pdf(double x) const {
  if (base_.discrete())
    throw std::logic_error("pdf: discrete base, use pmf");
  if (!base_.in_support(x)) return 0.0;
  return std::exp(logpdf(x));
}

double ExpGModel::survival(double x) const { return 1.0 - cdf(x); }

double ExpGModel::hazard(double x) const {
  if (base_.discrete())
    throw std::logic_error("hazard: discrete base");
  double S = 1.0 - base_.cdf(x);
  if (!(S > 0.0))
    throw std::domain_error("hazard undefined: base survival is zero");
  double g = base_.pdf(x);
  if (lambda_ == 0.0) return g / S;
  // lambda g / (1 - e^{-lambda S})
  return lambda_ * g / -std::expm1(-lambda_ * S);
}

double ExpGModel::quantile(double u) const {
  return base_.quantile(texp_quantile(lambda_, u));
}

std::vector<double> ExpGModel::sample(std::size_t n,
                                      std::uint64_t seed) const {
  if (n < 1) throw std::invalid_argument("sample: n >= 1");
  std::mt19937_64 rng(seed);
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    // 53-bit uniform in (0,1); bit-identical across platforms
    double u;
    do {
      u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    } while (u <= 0.0);
    out.push_back(quantile(u));
  }
  return out;
}

double ExpGModel::pmf(double x) const {
  if (!base_.discrete())
    throw std::logic_error("pmf: continuous base, use pdf");
  const auto& pts = base_.support_points();
  double g_prev = 0.0;
  for (double p : pts) {
    double g = base_.cdf(p);
    if (p == x) return texp_cdf(lambda_, g) - texp_cdf(lambda_, g_prev);
    g_prev = g;
  }
  throw std::domain_error("pmf: x not a support point");
}

}  // namespace expg

#include "expg/info.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>

#include "expg/quadrature.hpp"
#include "expg/transform.hpp"

namespace expg {

namespace {

double support_scale(const BaseDistribution& base) {
  switch (base.family()) {
    case Family::Weibull:
    case Family::Frechet:
      return 2.0 * base.theta()[1];
    default:
      return 1.0;
  }
}

double base_integral(const ExpGModel& m,
                     const std::function<double(double)>& f) {
  const BaseDistribution& base = m.base();
  QuadResult q = integrate(f, base.support_lo(), base.support_hi(), 1e-12,
                           1e-11, support_scale(base));
  return q.value;
}

void require_continuous(const ExpGModel& m, const char* what) {
  if (m.base().discrete())
    throw std::invalid_argument(std::string(what) +
                                ": continuous base required");
}

}  // namespace

DivergenceResult kl_divergence(const ExpGModel& m, KLDirection direction) {
  require_continuous(m, "kl_divergence");
  double lambda = m.lambda();
  double lr = log_rate_constant(lambda);
  DivergenceResult res;
  res.direction = direction;
  // log density ratio: log(f/g)(x) = log rate - lambda G(x)
  auto log_ratio = [&](double x) {
    return lr - lambda * m.base().cdf(x);
  };
  if (direction == KLDirection::G_vs_expG) {
    res.closed_form = 0.5 * lambda - lr;
    res.quadrature_value = base_integral(
        m, [&](double x) { return -m.base().pdf(x) * log_ratio(x); });
  } else {
    // lambda/(e^lambda - 1) = rate_constant(-lambda)
    res.closed_form = lr - 1.0 + rate_constant(-lambda);
    res.quadrature_value =
        base_integral(m, [&](double x) { return m.pdf(x) * log_ratio(x); });
  }
  res.discrepancy = std::fabs(res.closed_form - res.quadrature_value);
  return res;
}

std::pair<double, double> constraint_expectations(const ExpGModel& m) {
  require_continuous(m, "constraint_expectations");
  double lambda = m.lambda();
  double c2 = dlog_rate(lambda);
  // C1 = \int_0^1 log g(G^{-1}(u)) rate e^{-lambda u} du
  double rate = rate_constant(lambda);
  auto f = [&](double u) {
    double x = m.base().quantile(u);
    return m.base().logpdf(x) * rate * std::exp(-lambda * u);
  };
  QuadResult q = integrate(f, 0.0, 1.0, 1e-12, 1e-10);
  if (!q.converged && q.abs_error_estimate > 1e-6)
    throw std::runtime_error("constraint_expectations: C1 quadrature failed");
  return {q.value, c2};
}

double shannon_entropy(const ExpGModel& m) {
  double lambda = m.lambda();
  double c1 = constraint_expectations(m).first;
  return 1.0 - rate_constant(-lambda) - log_rate_constant(lambda) - c1;
}

MaxEntReport maxent_dominance_check(const ExpGModel& m, int n_tilts,
                                    std::uint64_t seed) {
  require_continuous(m, "maxent_dominance_check");
  double h_model = shannon_entropy(m);
  auto [c1, c2] = constraint_expectations(m);

  const BaseDistribution& base = m.base();
  auto logg = [&](double x) { return base.logpdf(x); };
  auto G = [&](double x) { return base.cdf(x); };

  MaxEntReport rep;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  for (int t = 0; t < n_tilts + 1; ++t) {
    // t = 0 is the identity perturbation (equality case); the rest are
    // random bounded tilt directions phi(x) = sin(w G(x) + phase)
    double amp = (t == 0) ? 0.0 : 0.3;
    double w = 1.0 + 5.0 * unif(rng);
    double phase = 6.283185307179586 * unif(rng);
    auto phi = [&, w, phase](double x) {
      return std::sin(w * G(x) + phase);
    };

    // density h_{s,u} propto f * exp(amp*phi + s*log g + u*G); Newton on
    // (s,u) to restore E_h[log g] = C1, E_h[G] = C2
    double s = 0.0, u = 0.0;
    bool solved = false;
    for (int it = 0; it < 60; ++it) {
      auto wgt = [&](double x) {
        double lw = amp * phi(x) + s * logg(x) + u * G(x);
        return m.pdf(x) * std::exp(lw);
      };
      double z = base_integral(m, wgt);
      if (!(z > 0.0) || !std::isfinite(z)) break;
      auto mean_of = [&](const std::function<double(double)>& a) {
        return base_integral(
                   m, [&](double x) { return a(x) * wgt(x); }) / z;
      };
      double e_lg = mean_of(logg);
      double e_g = mean_of(G);
      double r1 = e_lg - c1, r2 = e_g - c2;
      if (std::fabs(r1) < 1e-8 && std::fabs(r2) < 1e-8) {
        solved = true;
        // entropy of the normalized tilt
        double h = base_integral(m, [&](double x) {
          double v = wgt(x);
          if (v <= 0.0) return 0.0;
          double hz = v / z;
          return -hz * std::log(hz);
        });
        ++rep.tested;
        double excess = h - h_model;
        if (excess > rep.max_excess) rep.max_excess = excess;
        if (excess <= 1e-7) ++rep.dominated;
        break;
      }
      // Jacobian entries are tilt-family covariances
      double e_lg2 = mean_of([&](double x) { double v = logg(x); return v * v; });
      double e_g2 = mean_of([&](double x) { double v = G(x); return v * v; });
      double e_lgg = mean_of([&](double x) { return logg(x) * G(x); });
      double j11 = e_lg2 - e_lg * e_lg;   // d r1 / d s
      double j12 = e_lgg - e_lg * e_g;    // d r1 / d u
      double j21 = j12;                   // d r2 / d s
      double j22 = e_g2 - e_g * e_g;      // d r2 / d u
      double det = j11 * j22 - j12 * j21;
      if (!(std::fabs(det) > 1e-14)) break;
      double ds = (r1 * j22 - r2 * j12) / det;
      double du = (r2 * j11 - r1 * j21) / det;
      // damped step to keep the tilt weights bounded
      double len = std::hypot(ds, du);
      if (len > 1.0) { ds /= len; du /= len; }
      s -= ds;
      u -= du;
    }
    if (!solved) ++rep.skipped;
  }
  rep.ok = rep.tested > 0 && rep.dominated == rep.tested;
  return rep;
}

}  // namespace expg

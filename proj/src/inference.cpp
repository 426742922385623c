#include "expg/inference.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

#include "expg/optim.hpp"
#include "expg/quadrature.hpp"
#include "expg/transform.hpp"

namespace expg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kEulerGamma = 0.5772156649015329;

double support_scale(const BaseDistribution& base) {
  switch (base.family()) {
    case Family::Weibull:
    case Family::Frechet:
      return 2.0 * base.theta()[1];
    default:
      return 1.0;
  }
}

// score vector of a single observation, lambda component first
std::vector<double> unit_score(const ExpGModel& m, double x) {
  const BaseDistribution& base = m.base();
  double lambda = m.lambda();
  double G = base.cdf(x);
  std::vector<double> u(1 + base.dim());
  u[0] = dlog_rate(lambda) - G;
  std::vector<double> us = base.score(x);
  std::vector<double> dG = base.cdf_grad(x);
  for (int j = 0; j < base.dim(); ++j) u[1 + j] = us[j] - lambda * dG[j];
  return u;
}

struct Moments {
  double mean = 0.0, var = 0.0, mean_log = 0.0, sd_log = 0.0;
};

Moments data_moments(const Dataset& d) {
  Moments m;
  double n = static_cast<double>(d.n());
  for (double v : d.values) m.mean += v / n;
  for (double v : d.values) m.var += (v - m.mean) * (v - m.mean) / n;
  bool pos = true;
  for (double v : d.values)
    if (!(v > 0.0)) pos = false;
  if (pos) {
    for (double v : d.values) m.mean_log += std::log(v) / n;
    double s = 0.0;
    for (double v : d.values)
      s += (std::log(v) - m.mean_log) * (std::log(v) - m.mean_log) / n;
    m.sd_log = std::sqrt(std::max(s, 1e-12));
  }
  return m;
}

std::vector<double> seed_theta(const BaseDistribution& fam,
                               const Dataset& data) {
  Moments m = data_moments(data);
  switch (fam.family()) {
    case Family::Weibull: {
      double alpha = std::clamp(1.2825498301618641 / m.sd_log, 0.05, 100.0);
      double beta = std::exp(m.mean_log + kEulerGamma / alpha);
      return {alpha, beta};
    }
    case Family::Frechet: {
      double alpha = std::clamp(1.2825498301618641 / m.sd_log, 0.05, 100.0);
      double beta = std::exp(m.mean_log - kEulerGamma / alpha);
      return {alpha, beta};
    }
    case Family::Beta: {
      double mu = std::clamp(m.mean, 1e-3, 1.0 - 1e-3);
      double v = std::max(m.var, 1e-6);
      double common = std::max(mu * (1.0 - mu) / v - 1.0, 0.02);
      return {std::max(mu * common, 0.02),
              std::max((1.0 - mu) * common, 0.02)};
    }
    case Family::Bernoulli:
      return {std::clamp(m.mean, 0.02, 0.98)};
  }
  throw std::logic_error("seed_theta: unknown family");
}

// natural <-> unconstrained parameterization of theta
std::vector<double> theta_to_z(const BaseDistribution& fam,
                               const std::vector<double>& theta) {
  std::vector<double> z(theta.size());
  for (std::size_t j = 0; j < theta.size(); ++j) {
    if (fam.family() == Family::Bernoulli)
      z[j] = std::log(theta[j] / (1.0 - theta[j]));
    else
      z[j] = std::log(theta[j]);
  }
  return z;
}

std::vector<double> z_to_theta(const BaseDistribution& fam,
                               const std::vector<double>& z) {
  std::vector<double> th(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) {
    double c = std::clamp(z[j], -30.0, 30.0);
    if (fam.family() == Family::Bernoulli)
      th[j] = 1.0 / (1.0 + std::exp(-c));
    else
      th[j] = std::exp(c);
  }
  return th;
}

}  // namespace

void validate_dataset(const Dataset& data, const BaseDistribution& base) {
  if (data.n() < 1)
    throw std::invalid_argument("dataset: no observations");
  for (std::size_t i = 0; i < data.n(); ++i) {
    double v = data.values[i];
    if (!std::isfinite(v))
      throw std::invalid_argument("dataset: non-finite value at index " +
                                  std::to_string(i));
    if (!base.in_support(v))
      throw std::invalid_argument(
          "dataset: value " + std::to_string(v) + " at index " +
          std::to_string(i) + " outside the " +
          family_name(base.family()) + " support");
  }
}

const char* test_name(TestKind k) {
  switch (k) {
    case TestKind::LR:
      return "lr";
    case TestKind::Wald:
      return "wald";
    case TestKind::Score:
      return "score";
  }
  return "?";
}

double loglik(const ExpGModel& m, const Dataset& data) {
  validate_dataset(data, m.base());
  double s = 0.0;
  if (m.base().discrete()) {
    for (double x : data.values) s += std::log(m.pmf(x));
    return s;
  }
  double lr = log_rate_constant(m.lambda());
  for (double x : data.values)
    s += lr + m.base().logpdf(x) - m.lambda() * m.base().cdf(x);
  return s;
}

std::vector<double> score_vec(const ExpGModel& m, const Dataset& data) {
  if (m.base().discrete())
    throw std::invalid_argument("score_vec: continuous base required");
  validate_dataset(data, m.base());
  std::vector<double> s(1 + m.base().dim(), 0.0);
  for (double x : data.values) {
    std::vector<double> u = unit_score(m, x);
    for (std::size_t j = 0; j < s.size(); ++j) s[j] += u[j];
  }
  return s;
}

Matrix fisher_info(const ExpGModel& m) {
  if (m.base().discrete())
    throw std::invalid_argument("fisher_info: continuous base required");
  int d = 1 + m.base().dim();
  Matrix K(d, std::vector<double>(d, 0.0));
  K[0][0] = texp_curvature(m.lambda());
  const BaseDistribution& base = m.base();
  for (int i = 0; i < d; ++i) {
    for (int j = std::max(i, 1); j < d; ++j) {
      auto f = [&](double x) {
        double fx = m.pdf(x);
        if (fx == 0.0) return 0.0;
        std::vector<double> u = unit_score(m, x);
        return u[i] * u[j] * fx;
      };
      QuadResult q = integrate(f, base.support_lo(), base.support_hi(),
                               1e-9, 1e-9, support_scale(base));
      if (!q.converged && q.abs_error_estimate > 1e-6)
        throw std::runtime_error(
            "fisher_info: quadrature failed for entry (" +
            std::to_string(i) + "," + std::to_string(j) + ")");
      K[i][j] = K[j][i] = q.value;
    }
  }
  return K;
}

bool invert_matrix(const Matrix& in, Matrix& out) {
  int n = static_cast<int>(in.size());
  Matrix a = in;
  out.assign(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) out[i][i] = 1.0;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
    if (!(std::fabs(a[piv][col]) > 1e-300)) return false;
    std::swap(a[piv], a[col]);
    std::swap(out[piv], out[col]);
    double p = a[col][col];
    for (int c = 0; c < n; ++c) {
      a[col][c] /= p;
      out[col][c] /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      double f = a[r][col];
      if (f == 0.0) continue;
      for (int c = 0; c < n; ++c) {
        a[r][c] -= f * a[col][c];
        out[r][c] -= f * out[col][c];
      }
    }
  }
  for (const auto& row : out)
    for (double v : row)
      if (!std::isfinite(v)) return false;
  return true;
}

FitReport mle_fit(const BaseDistribution& seed_family, const Dataset& data,
                  std::optional<double> fix_lambda, double level) {
  validate_dataset(data, seed_family);
  const bool lam_free = !fix_lambda.has_value();
  const bool discrete = seed_family.discrete();
  std::vector<double> theta0 = seed_theta(seed_family, data);
  BaseDistribution fam = seed_family.with_theta(theta0);
  const int kdim = fam.dim();
  const int d = (lam_free ? 1 : 0) + kdim;

  auto unpack = [&](const std::vector<double>& z) {
    double lambda = lam_free ? z[0] : *fix_lambda;
    std::vector<double> zt(z.begin() + (lam_free ? 1 : 0), z.end());
    return ExpGModel(lambda, fam.with_theta(z_to_theta(fam, zt)));
  };
  auto objective = [&](const std::vector<double>& z) {
    if (lam_free && std::fabs(z[0]) > 300.0) return kInf;
    try {
      return -loglik(unpack(z), data);
    } catch (const std::exception&) {
      return kInf;
    }
  };
  std::function<std::vector<double>(const std::vector<double>&)> gradient;
  if (!discrete) {
    gradient = [&](const std::vector<double>& z) {
      ExpGModel m = unpack(z);
      std::vector<double> s = score_vec(m, data);
      std::vector<double> g(d, 0.0);
      int off = 0;
      if (lam_free) g[off++] = -s[0];
      const std::vector<double>& th = m.base().theta();
      for (int j = 0; j < kdim; ++j) {
        double jac = (fam.family() == Family::Bernoulli)
                         ? th[j] * (1.0 - th[j])
                         : th[j];
        g[off + j] = -s[1 + j] * jac;
      }
      return g;
    };
  }

  std::vector<double> lam_seeds =
      lam_free ? std::vector<double>{-10.0, -1.0, 0.0, 1.0, 10.0}
               : std::vector<double>{};
  std::vector<double> zt0 = theta_to_z(fam, theta0);
  OptimResult best;
  best.f = kInf;
  int total_iter = 0;
  auto run_from = [&](const std::vector<double>& z0) {
    OptimResult r = bfgs_minimize(objective, gradient, z0, 1e-7, 400);
    total_iter += r.iterations;
    if (r.f < best.f) best = r;
  };
  if (lam_free) {
    for (double l0 : lam_seeds) {
      std::vector<double> z0;
      z0.push_back(l0);
      z0.insert(z0.end(), zt0.begin(), zt0.end());
      run_from(z0);
    }
  } else {
    run_from(zt0);
  }
  if (std::isfinite(best.f)) run_from(best.x);  // polish the winner

  FitReport rep;
  rep.family = fam.family();
  rep.n = data.n();
  rep.level = level;
  rep.lambda_fixed = !lam_free;
  rep.converged = std::isfinite(best.f) && best.grad_norm <= 1e-6;
  rep.iterations = total_iter;
  rep.grad_norm = best.grad_norm;
  rep.loglik = -best.f;

  ExpGModel mhat = unpack(best.x);
  rep.param_names.push_back("lambda");
  for (const auto& nm : fam.param_names()) rep.param_names.push_back(nm);
  rep.estimates.push_back(mhat.lambda());
  for (double t : mhat.base().theta()) rep.estimates.push_back(t);

  // per-observation information over the free parameters
  Matrix K;
  if (!discrete) {
    Matrix full = fisher_info(mhat);
    if (lam_free) {
      K = full;
    } else {
      K.assign(kdim, std::vector<double>(kdim, 0.0));
      for (int i = 0; i < kdim; ++i)
        for (int j = 0; j < kdim; ++j) K[i][j] = full[1 + i][1 + j];
    }
  } else {
    // discrete base: observed information per observation
    auto negmean = [&](const std::vector<double>& th) {
      try {
        return -loglik(ExpGModel(lam_free ? rep.estimates[0] : *fix_lambda,
                                 fam.with_theta(th)),
                       data) /
               static_cast<double>(data.n());
      } catch (const std::exception&) {
        return kInf;
      }
    };
    std::vector<double> th = mhat.base().theta();
    K = fd_hessian(negmean, th, 1e-4);
  }
  rep.info_matrix = K;
  Matrix nk = K;
  for (auto& row : nk)
    for (double& v : row) v *= static_cast<double>(data.n());
  Matrix cov;
  rep.ci_valid = invert_matrix(nk, cov);
  if (rep.ci_valid) {
    for (int i = 0; i < d; ++i)
      if (!(cov[i][i] > 0.0)) rep.ci_valid = false;
  }
  if (rep.ci_valid) {
    rep.covariance = cov;
    double zq = normal_quantile(0.5 + level / 2.0);
    std::size_t np = rep.estimates.size();
    rep.std_errors.assign(np, kNaN);
    rep.ci.assign(np, {kNaN, kNaN});
    for (std::size_t p = 0; p < np; ++p) {
      if (!lam_free && p == 0) continue;  // pinned lambda: no interval
      int idx = lam_free ? static_cast<int>(p) : static_cast<int>(p) - 1;
      double se = std::sqrt(cov[idx][idx]);
      rep.std_errors[p] = se;
      rep.ci[p] = {rep.estimates[p] - zq * se, rep.estimates[p] + zq * se};
    }
  }
  return rep;
}

TestReport lr_test(const BaseDistribution& family, const Dataset& data) {
  FitReport full = mle_fit(family, data);
  FitReport null = mle_fit(family, data, 0.0);
  TestReport t;
  t.kind = TestKind::LR;
  t.df = 1;
  t.statistic = std::max(0.0, 2.0 * (full.loglik - null.loglik));
  t.p_value = chi2_sf(t.statistic, t.df);
  return t;
}

TestReport wald_test(const BaseDistribution& family, const Dataset& data) {
  FitReport full = mle_fit(family, data);
  if (!full.ci_valid)
    throw std::runtime_error("wald_test: singular information at the MLE");
  double lam = full.estimates[0];
  double var = full.covariance[0][0];
  TestReport t;
  t.kind = TestKind::Wald;
  t.df = 1;
  t.statistic = lam * lam / var;
  t.p_value = chi2_sf(t.statistic, t.df);
  return t;
}

TestReport score_test(const BaseDistribution& family, const Dataset& data) {
  FitReport null = mle_fit(family, data, 0.0);
  std::vector<double> theta(null.estimates.begin() + 1,
                            null.estimates.end());
  ExpGModel m0(0.0, family.with_theta(theta));
  double u1 = score_vec(m0, data)[0];  // sum_i (1/2 - G(x_i))
  Matrix K = fisher_info(m0);
  for (auto& row : K)
    for (double& v : row) v *= static_cast<double>(data.n());
  Matrix inv;
  if (!invert_matrix(K, inv))
    throw std::runtime_error("score_test: singular information under H0");
  TestReport t;
  t.kind = TestKind::Score;
  t.df = 1;
  t.statistic = u1 * inv[0][0] * u1;
  t.p_value = chi2_sf(t.statistic, t.df);
  return t;
}

FitReport modified_profile_fit(const BaseDistribution& seed_family,
                               const Dataset& data, bool diagonal_hessian) {
  if (seed_family.discrete())
    throw std::invalid_argument(
        "modified_profile_fit: continuous base required");
  validate_dataset(data, seed_family);
  const int k = seed_family.dim();

  // sum of per-observation modified profile terms and its exact gradient
  auto eval = [&](const std::vector<double>& theta, bool want_grad,
                  std::vector<double>* grad_out) {
    BaseDistribution base = seed_family.with_theta(theta);
    double total = 0.0;
    if (want_grad) grad_out->assign(k, 0.0);
    for (double x : data.values) {
      std::vector<double> dG = base.cdf_grad(x);
      std::vector<double> us = base.score(x);
      double den = 0.0, num = 0.0;
      for (int l = 0; l < k; ++l) {
        den += dG[l] * dG[l];
        num += dG[l] * us[l];
      }
      if (!(den > 1e-300))
        throw std::runtime_error(
            "modified_profile_fit: dG'dG vanishes at an observation");
      double lam = num / den;
      double G = base.cdf(x);
      total += log_rate_constant(lam) + base.logpdf(x) - lam * G;
      if (!want_grad) continue;
      Matrix H = base.cdf_hess(x);
      Matrix J = base.score_jac(x);
      if (diagonal_hessian) {
        for (int l = 0; l < k; ++l)
          for (int j = 0; j < k; ++j)
            if (l != j) H[l][j] = 0.0;
      }
      for (int j = 0; j < k; ++j) {
        double dnum = 0.0, dden = 0.0;
        for (int l = 0; l < k; ++l) {
          dnum += H[l][j] * us[l] + dG[l] * J[l][j];
          dden += 2.0 * dG[l] * H[l][j];
        }
        double dlam = (dnum * den - num * dden) / (den * den);
        (*grad_out)[j] +=
            (us[j] - lam * dG[j]) + (dlog_rate(lam) - G) * dlam;
      }
    }
    return total;
  };

  FitReport base_fit = mle_fit(seed_family, data, 0.0);
  std::vector<double> theta0(base_fit.estimates.begin() + 1,
                             base_fit.estimates.end());
  auto objective = [&](const std::vector<double>& z) {
    try {
      return -eval(z_to_theta(seed_family, z), false, nullptr);
    } catch (const std::exception&) {
      return kInf;
    }
  };
  auto gradient = [&](const std::vector<double>& z) {
    std::vector<double> theta = z_to_theta(seed_family, z);
    std::vector<double> g;
    eval(theta, true, &g);
    for (int j = 0; j < k; ++j) g[j] = -g[j] * theta[j];
    return g;
  };
  OptimResult r = bfgs_minimize(objective, gradient,
                                theta_to_z(seed_family, theta0), 1e-7, 400);

  FitReport rep;
  rep.family = seed_family.family();
  rep.n = data.n();
  rep.lambda_fixed = true;
  rep.param_names = seed_family.param_names();
  rep.estimates = z_to_theta(seed_family, r.x);
  rep.loglik = -r.f;
  rep.converged = r.converged;
  rep.iterations = r.iterations;
  rep.grad_norm = r.grad_norm;
  return rep;
}

}  // namespace expg
